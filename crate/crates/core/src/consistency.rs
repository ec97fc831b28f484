//! Brute-force consistency checks for small choice functions: Arrow's
//! contraction condition, rationalizability by a total order, and the
//! strong/weak classification of adjacent two-period runs.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use serde::Serialize;

use crate::choice_model::ObjectId;
use crate::error::{Error, Result};
use crate::pattern_runs::RunCount;

/// Largest ground set accepted; the order search is `n!`.
pub const MAX_GROUND_SET: usize = 6;

/// Subset of the ground set as a bitmask over ground-set positions.
pub type Subset = u32;

/// Choice function over the nonempty subsets of a small ground set. Tables
/// may be partial; checks only look at recorded subsets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChoiceFunctionTable {
    ground_set: Vec<ObjectId>,
    choices: BTreeMap<Subset, usize>,
}

impl ChoiceFunctionTable {
    pub fn new(ground_set: Vec<ObjectId>) -> Result<Self> {
        if ground_set.is_empty() || ground_set.len() > MAX_GROUND_SET {
            return Err(Error::Domain(format!(
                "ground set must have 1..={MAX_GROUND_SET} elements, got {}",
                ground_set.len()
            )));
        }
        if ground_set.iter().duplicates().next().is_some() {
            return Err(Error::Domain("ground set has duplicate ids".into()));
        }
        Ok(Self {
            ground_set,
            choices: BTreeMap::new(),
        })
    }

    /// Table of the maximizer of `order` (best first) on every subset.
    pub fn from_order(ground_set: Vec<ObjectId>, order: &[ObjectId]) -> Result<Self> {
        let mut t = Self::new(ground_set)?;
        let ranks = t.ranks_of(order)?;
        for s in 1..t.full() {
            let best = t.members(s).min_by_key(|&i| ranks[i]).expect("nonempty");
            t.choices.insert(s, best);
        }
        Ok(t)
    }

    pub fn ground_set(&self) -> &[ObjectId] {
        &self.ground_set
    }

    fn full(&self) -> Subset {
        1 << self.ground_set.len()
    }

    fn index(&self, id: &ObjectId) -> Result<usize> {
        self.ground_set
            .iter()
            .position(|g| g == id)
            .ok_or_else(|| Error::UnknownObject(id.clone()))
    }

    fn ranks_of(&self, order: &[ObjectId]) -> Result<Vec<usize>> {
        if order.len() != self.ground_set.len() {
            return Err(Error::Domain(
                "order must list every ground-set element once".into(),
            ));
        }
        let mut ranks = vec![usize::MAX; self.ground_set.len()];
        for (rank, id) in order.iter().enumerate() {
            let i = self.index(id)?;
            if ranks[i] != usize::MAX {
                return Err(Error::Domain(format!("{id} appears twice in the order")));
            }
            ranks[i] = rank;
        }
        Ok(ranks)
    }

    pub fn subset_of(&self, items: &[ObjectId]) -> Result<Subset> {
        let mut s = 0;
        for id in items {
            s |= 1 << self.index(id)?;
        }
        if s == 0 {
            return Err(Error::Domain("subset must be nonempty".into()));
        }
        Ok(s)
    }

    fn members(&self, s: Subset) -> impl Iterator<Item = usize> {
        (0..self.ground_set.len()).filter(move |i| s & (1 << i) != 0)
    }

    pub fn ids_of(&self, s: Subset) -> Vec<ObjectId> {
        self.members(s)
            .map(|i| self.ground_set[i].clone())
            .collect()
    }

    /// Records `choice` as the pick from `subset`.
    pub fn set(&mut self, subset: &[ObjectId], choice: &ObjectId) -> Result<()> {
        let s = self.subset_of(subset)?;
        let c = self.index(choice)?;
        if s & (1 << c) == 0 {
            return Err(Error::Domain(format!(
                "{choice} is not a member of its subset"
            )));
        }
        self.choices.insert(s, c);
        Ok(())
    }

    pub fn choice(&self, subset: &[ObjectId]) -> Option<&ObjectId> {
        let s = self.subset_of(subset).ok()?;
        self.choices.get(&s).map(|&i| &self.ground_set[i])
    }

    pub fn entries(&self) -> impl Iterator<Item = (Vec<ObjectId>, &ObjectId)> + '_ {
        self.choices
            .iter()
            .map(|(&s, &c)| (self.ids_of(s), &self.ground_set[c]))
    }

    pub fn missing_subsets(&self) -> Vec<Vec<ObjectId>> {
        (1..self.full())
            .filter(|s| !self.choices.contains_key(s))
            .map(|s| self.ids_of(s))
            .collect()
    }

    pub fn is_complete(&self) -> bool {
        self.choices.len() == (self.full() - 1) as usize
    }
}

/// A nested pair `smaller ⊆ larger` where the larger set's choice lies in the
/// smaller set but the smaller set picks something else.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub smaller: Vec<ObjectId>,
    pub larger: Vec<ObjectId>,
    pub smaller_choice: ObjectId,
    pub larger_choice: ObjectId,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let set = |v: &[ObjectId]| v.iter().map(|o| o.as_str()).join(",");
        write!(
            f,
            "C{{{}}}={} but C{{{}}}={}",
            set(&self.smaller),
            self.smaller_choice,
            set(&self.larger),
            self.larger_choice
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractionReport {
    pub consistent: bool,
    pub violations: Vec<Violation>,
}

/// For every recorded `X1 ⊆ X2`: if `C(X2) ∈ X1` then `C(X1) = C(X2)`.
pub fn check_contraction(c: &ChoiceFunctionTable) -> ContractionReport {
    let mut violations = Vec::new();
    for (&large, &lc) in &c.choices {
        for (&small, &sc) in &c.choices {
            let proper_subset = small & large == small && small != large;
            if proper_subset && small & (1 << lc) != 0 && sc != lc {
                violations.push(Violation {
                    smaller: c.ids_of(small),
                    larger: c.ids_of(large),
                    smaller_choice: c.ground_set[sc].clone(),
                    larger_choice: c.ground_set[lc].clone(),
                });
            }
        }
    }
    ContractionReport {
        consistent: violations.is_empty(),
        violations,
    }
}

/// First total order (best first, permutations in lexicographic order of
/// ground-set positions) whose maximizer reproduces every recorded choice.
pub fn rationalizable(c: &ChoiceFunctionTable) -> Option<Vec<ObjectId>> {
    let n = c.ground_set.len();
    (0..n).permutations(n).find_map(|perm| {
        let mut rank = vec![0; n];
        for (r, &i) in perm.iter().enumerate() {
            rank[i] = r;
        }
        let ok = c
            .choices
            .iter()
            .all(|(&s, &chosen)| c.members(s).min_by_key(|&i| rank[i]) == Some(chosen));
        ok.then(|| perm.iter().map(|&i| c.ground_set[i].clone()).collect())
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RunStep {
    Strong,
    Weak,
    Neither,
}

/// Ascending adjacent runs `(k, k+1)` are strong, descending `(k+1, k)` weak.
pub fn classify_run_step(first: RunCount, second: RunCount) -> Result<RunStep> {
    let (a, b) = match (first, second) {
        (RunCount::Run(a), RunCount::Run(b)) => (i64::from(a), i64::from(b)),
        _ => {
            return Err(Error::Domain(
                "strong/weak classification needs a run in both periods".into(),
            ))
        }
    };
    Ok(match b - a {
        1 => RunStep::Strong,
        -1 => RunStep::Weak,
        _ => RunStep::Neither,
    })
}
