//! The four-stage buying process: attainable set, wishlist, cart and final
//! choice, each nested in the one before.
//!
//! Stage sets keep the catalog order of the attainable set, which is what
//! makes the later pattern flattening deterministic.

use std::collections::HashSet;
use std::fmt;

use indexmap::IndexMap;
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ObjectId(pub String);

impl ObjectId {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for ObjectId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for ObjectId {
    fn from(s: &str) -> Self {
        ObjectId(s.to_owned())
    }
}

impl From<String> for ObjectId {
    fn from(s: String) -> Self {
        ObjectId(s)
    }
}

/// Builds a list of ids from string slices.
pub fn ids(names: &[&str]) -> Vec<ObjectId> {
    names.iter().map(|s| ObjectId::from(*s)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Stage {
    Attainable,
    Wishlist,
    Cart,
    Final,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Stage::Attainable => "attainable set",
            Stage::Wishlist => "wishlist",
            Stage::Cart => "cart",
            Stage::Final => "final set",
        };
        f.write_str(s)
    }
}

/// Non-negative integer attributes of one object.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AttributeVector(pub Vec<u64>);

impl AttributeVector {
    pub fn dim(&self) -> usize {
        self.0.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "=")]
    Eq,
    #[serde(rename = ">=")]
    Ge,
}

/// One linear row `coefficients · x  (<=|=|>=)  bound`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstraintRow {
    pub coefficients: Vec<BigRational>,
    pub relation: Relation,
    pub bound: BigRational,
}

impl ConstraintRow {
    pub fn new(coefficients: Vec<BigRational>, relation: Relation, bound: BigRational) -> Self {
        Self {
            coefficients,
            relation,
            bound,
        }
    }

    /// Integer-coefficient convenience constructor.
    pub fn from_integers(coefficients: &[i64], relation: Relation, bound: i64) -> Self {
        Self {
            coefficients: coefficients
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
            relation,
            bound: BigRational::from_integer(BigInt::from(bound)),
        }
    }

    fn satisfied_by(&self, x: &AttributeVector) -> bool {
        let lhs = self.coefficients.iter().zip(&x.0).fold(
            BigRational::from_integer(BigInt::from(0)),
            |acc, (c, &v)| acc + c * BigRational::from_integer(BigInt::from(v)),
        );
        match self.relation {
            Relation::Le => lhs <= self.bound,
            Relation::Eq => lhs == self.bound,
            Relation::Ge => lhs >= self.bound,
        }
    }
}

pub type Catalog = IndexMap<ObjectId, AttributeVector>;

/// Ids of the catalog entries satisfying every constraint row, in catalog order.
pub fn attainable_set(catalog: &Catalog, constraints: &[ConstraintRow]) -> Result<Vec<ObjectId>> {
    for (i, row) in constraints.iter().enumerate() {
        for (id, x) in catalog {
            if x.dim() != row.coefficients.len() {
                return Err(Error::DimensionMismatch {
                    context: format!("constraint row {i} against object {id}"),
                    expected: row.coefficients.len(),
                    found: x.dim(),
                });
            }
        }
    }
    Ok(catalog
        .iter()
        .filter(|(_, x)| constraints.iter().all(|row| row.satisfied_by(x)))
        .map(|(id, _)| id.clone())
        .collect())
}

/// One reviewer's recorded stage sets at one period.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChoiceEpisode {
    pub reviewer_id: String,
    pub period: u32,
    pub attainable: Vec<ObjectId>,
    pub wishlist: Vec<ObjectId>,
    pub cart: Vec<ObjectId>,
    #[serde(rename = "final")]
    pub final_set: Vec<ObjectId>,
}

impl ChoiceEpisode {
    pub fn new(
        reviewer_id: impl Into<String>,
        period: u32,
        attainable: Vec<ObjectId>,
        wishlist: Vec<ObjectId>,
        cart: Vec<ObjectId>,
        final_set: Vec<ObjectId>,
    ) -> Self {
        Self {
            reviewer_id: reviewer_id.into(),
            period,
            attainable,
            wishlist,
            cart,
            final_set,
        }
    }
}

/// An episode whose nesting `final ⊆ cart ⊆ wishlist ⊆ attainable` has been
/// checked. Stage ranks are cached in attainable-set order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidatedEpisode {
    episode: ChoiceEpisode,
    ranks: Vec<u8>,
}

impl ValidatedEpisode {
    pub fn episode(&self) -> &ChoiceEpisode {
        &self.episode
    }

    pub fn reviewer_id(&self) -> &str {
        &self.episode.reviewer_id
    }

    pub fn period(&self) -> u32 {
        self.episode.period
    }

    /// Attainable set in catalog order.
    pub fn objects(&self) -> &[ObjectId] {
        &self.episode.attainable
    }

    pub fn n(&self) -> usize {
        self.episode.attainable.len()
    }

    pub fn position(&self, object: &ObjectId) -> Option<usize> {
        self.episode.attainable.iter().position(|o| o == object)
    }

    /// Stage ranks aligned with [`Self::objects`].
    pub fn ranks(&self) -> &[u8] {
        &self.ranks
    }

    pub fn into_episode(self) -> ChoiceEpisode {
        self.episode
    }
}

fn check_unique(stage: Stage, items: &[ObjectId]) -> Result<HashSet<&ObjectId>> {
    let mut seen = HashSet::with_capacity(items.len());
    for item in items {
        if !seen.insert(item) {
            return Err(Error::DuplicateObject {
                stage,
                item: item.clone(),
            });
        }
    }
    Ok(seen)
}

pub fn validate_episode(episode: ChoiceEpisode) -> Result<ValidatedEpisode> {
    if episode.period == 0 {
        return Err(Error::Domain("period must be a positive integer".into()));
    }
    if episode.attainable.is_empty() {
        return Err(Error::EmptyAttainable);
    }
    if episode.final_set.is_empty() {
        return Err(Error::EmptyFinal);
    }

    let x = check_unique(Stage::Attainable, &episode.attainable)?;
    let w = check_unique(Stage::Wishlist, &episode.wishlist)?;
    let a = check_unique(Stage::Cart, &episode.cart)?;
    let s = check_unique(Stage::Final, &episode.final_set)?;

    let nested = [
        (Stage::Wishlist, &episode.wishlist, &x),
        (Stage::Cart, &episode.cart, &w),
        (Stage::Final, &episode.final_set, &a),
    ];
    for (stage, inner, outer) in nested {
        if let Some(item) = inner.iter().find(|i| !outer.contains(i)) {
            return Err(Error::Nesting {
                stage,
                item: item.clone(),
            });
        }
    }

    let ranks = episode
        .attainable
        .iter()
        .map(|o| {
            if s.contains(o) {
                3
            } else if a.contains(o) {
                2
            } else if w.contains(o) {
                1
            } else {
                0
            }
        })
        .collect();

    Ok(ValidatedEpisode { episode, ranks })
}

/// 3 for the final set, 2 for the cart, 1 for the wishlist, 0 otherwise.
pub fn stage_rank(episode: &ValidatedEpisode, object: &ObjectId) -> Result<u8> {
    episode
        .position(object)
        .map(|i| episode.ranks[i])
        .ok_or_else(|| Error::UnknownObject(object.clone()))
}
