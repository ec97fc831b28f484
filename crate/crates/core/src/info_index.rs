//! Information index of intuitionistic fuzzy grades and choice from lists.
//!
//! Each list element carries a membership `mu` and a non-membership `nu`.
//! Its information index is the two-outcome entropy
//! `H = -(mu log2 mu + nu log2 nu)`, and the list choice is the element with
//! the largest `H`. Ties go to the smaller indeterminacy `1 - mu - nu`, then
//! to the earlier position.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const GRADE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IfsElement {
    pub id: String,
    pub mu: f64,
    pub nu: f64,
}

impl IfsElement {
    pub fn new(id: impl Into<String>, mu: f64, nu: f64) -> Result<Self> {
        let e = Self {
            id: id.into(),
            mu,
            nu,
        };
        e.validate()?;
        Ok(e)
    }

    pub fn validate(&self) -> Result<()> {
        let in_unit = |x: f64| (0.0..=1.0).contains(&x);
        if !in_unit(self.mu) || !in_unit(self.nu) || self.mu + self.nu > 1.0 + GRADE_TOLERANCE {
            return Err(Error::InvalidGrade {
                id: self.id.clone(),
                mu: self.mu,
                nu: self.nu,
            });
        }
        Ok(())
    }

    /// Indeterminacy `1 - mu - nu`.
    pub fn pi(&self) -> f64 {
        (1.0 - self.mu - self.nu).max(0.0)
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct IfsList {
    pub elements: Vec<IfsElement>,
}

impl IfsList {
    pub fn new(elements: Vec<IfsElement>) -> Self {
        Self { elements }
    }

    pub fn validate(&self) -> Result<()> {
        self.elements.iter().try_for_each(IfsElement::validate)
    }
}

fn plogp(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x * x.log2()
    }
}

/// Base-2 entropy of the grades, with `0 log 0 = 0`.
pub fn entropy(e: &IfsElement) -> f64 {
    // summing in a fixed order keeps H(mu, nu) == H(nu, mu) bit-for-bit
    let (lo, hi) = if e.mu <= e.nu {
        (e.mu, e.nu)
    } else {
        (e.nu, e.mu)
    };
    -(plogp(lo) + plogp(hi))
}

/// `Less` when `a` is the better choice. Position is not considered.
fn compare(a: &IfsElement, b: &IfsElement) -> Ordering {
    entropy(b)
        .total_cmp(&entropy(a))
        .then_with(|| a.pi().total_cmp(&b.pi()))
}

/// The list element with the largest information index.
pub fn choose_from_list(list: &IfsList) -> Result<&IfsElement> {
    let mut best: Option<&IfsElement> = None;
    for e in &list.elements {
        best = match best {
            Some(b) if compare(e, b) != Ordering::Less => Some(b),
            _ => Some(e),
        };
    }
    best.ok_or(Error::EmptyList)
}

/// Every element tied with the choice on information index and indeterminacy.
pub fn choice_correspondence(list: &IfsList) -> Result<Vec<&IfsElement>> {
    let best = choose_from_list(list)?;
    Ok(list
        .elements
        .iter()
        .filter(|e| compare(e, best) == Ordering::Equal)
        .collect())
}

/// Binary choice; the left operand wins ties.
pub fn choose_pair<'a>(left: &'a IfsElement, right: &'a IfsElement) -> &'a IfsElement {
    if compare(right, left) == Ordering::Less {
        right
    } else {
        left
    }
}

/// Sequential pairwise comparison: the winner of the first two meets the
/// third, and so on.
pub fn fold_pairwise(list: &IfsList) -> Result<&IfsElement> {
    let mut it = list.elements.iter();
    let first = it.next().ok_or(Error::EmptyList)?;
    Ok(it.fold(first, |winner, e| choose_pair(winner, e)))
}
