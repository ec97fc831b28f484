//! Per-period preference matrices and their binary pattern vectors.

use std::fmt;

use crate::choice_model::{ObjectId, ValidatedEpisode};
use crate::error::{Error, Result};

/// Binary relation over one period's objects; entry `(i, j)` set means
/// `i` is preferred to `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreferenceMatrix {
    order: Vec<ObjectId>,
    bits: Vec<bool>,
}

impl PreferenceMatrix {
    /// Builds a matrix from row-major bits. The diagonal must be zero.
    pub fn from_bits(order: Vec<ObjectId>, bits: Vec<bool>) -> Result<Self> {
        let n = order.len();
        if bits.len() != n * n {
            return Err(Error::Shape(format!(
                "expected {} bits for {n} objects, got {}",
                n * n,
                bits.len()
            )));
        }
        if (0..n).any(|i| bits[i * n + i]) {
            return Err(Error::Shape("nonzero diagonal".into()));
        }
        Ok(Self { order, bits })
    }

    pub fn zero(order: Vec<ObjectId>) -> Self {
        let n = order.len();
        Self {
            order,
            bits: vec![false; n * n],
        }
    }

    pub fn n(&self) -> usize {
        self.order.len()
    }

    pub fn order(&self) -> &[ObjectId] {
        &self.order
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.n() + j]
    }

    pub fn row(&self, i: usize) -> &[bool] {
        let n = self.n();
        &self.bits[i * n..(i + 1) * n]
    }

    /// Rows rendered as `0111;0011;...`.
    pub fn rows_string(&self) -> String {
        (0..self.n())
            .map(|i| bits_to_string(self.row(i)))
            .collect::<Vec<_>>()
            .join(";")
    }
}

fn bits_to_string(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

/// Row-major flattening of one or more period matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternVector {
    bits: Vec<bool>,
    ns: Vec<usize>,
}

impl PatternVector {
    /// `ns` holds the object count of each period block.
    pub fn new(bits: Vec<bool>, ns: Vec<usize>) -> Result<Self> {
        let expected: usize = ns.iter().map(|n| n * n).sum();
        if bits.len() != expected {
            return Err(Error::Shape(format!(
                "pattern has {} bits, period sizes require {expected}",
                bits.len()
            )));
        }
        Ok(Self { bits, ns })
    }

    pub fn parse(s: &str, ns: Vec<usize>) -> Result<Self> {
        let bits = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Shape(format!("invalid pattern digit {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(bits, ns)
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Object count per period.
    pub fn period_sizes(&self) -> &[usize] {
        &self.ns
    }

    pub fn periods(&self) -> usize {
        self.ns.len()
    }

    /// Bits of each period block.
    pub fn blocks(&self) -> Vec<&[bool]> {
        let mut out = Vec::with_capacity(self.ns.len());
        let mut start = 0;
        for n in &self.ns {
            out.push(&self.bits[start..start + n * n]);
            start += n * n;
        }
        out
    }
}

impl fmt::Display for PatternVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&bits_to_string(&self.bits))
    }
}

/// Entry `(i, j)` is set iff `i` reached a strictly later stage than `j`.
pub fn derive_matrix(episode: &ValidatedEpisode) -> PreferenceMatrix {
    let ranks = episode.ranks();
    let n = ranks.len();
    let mut bits = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            bits.push(ranks[i] > ranks[j]);
        }
    }
    PreferenceMatrix {
        order: episode.objects().to_vec(),
        bits,
    }
}

pub fn outdegrees(m: &PreferenceMatrix) -> Vec<usize> {
    (0..m.n())
        .map(|i| m.row(i).iter().filter(|&&b| b).count())
        .collect()
}

pub fn flatten(m: &PreferenceMatrix) -> PatternVector {
    PatternVector {
        bits: m.bits.clone(),
        ns: vec![m.n()],
    }
}

/// Inverse of [`flatten`] for a single-period vector.
pub fn unflatten(p: &PatternVector, order: Vec<ObjectId>) -> Result<PreferenceMatrix> {
    if p.periods() != 1 || p.ns[0] != order.len() {
        return Err(Error::Shape(
            "unflatten needs a single period block matching the order".into(),
        ));
    }
    PreferenceMatrix::from_bits(order, p.bits.clone())
}

fn check_same_n(ms: &[PreferenceMatrix]) -> Result<usize> {
    let first = ms
        .first()
        .ok_or_else(|| Error::Shape("no matrices given".into()))?;
    if let Some(bad) = ms.iter().find(|m| m.n() != first.n()) {
        return Err(Error::Shape(format!(
            "matrices have {} and {} objects",
            first.n(),
            bad.n()
        )));
    }
    Ok(first.n())
}

/// Concatenates per-period flattenings in period order.
pub fn concat_patterns(ms: &[PreferenceMatrix]) -> Result<PatternVector> {
    let n = check_same_n(ms)?;
    Ok(PatternVector {
        bits: ms.iter().flat_map(|m| m.bits.iter().copied()).collect(),
        ns: vec![n; ms.len()],
    })
}

/// Entrywise OR of the period matrices. This loses the pairwise information
/// of the individual periods and is kept for diagnostics only.
pub fn union_matrix(ms: &[PreferenceMatrix]) -> Result<PreferenceMatrix> {
    check_same_n(ms)?;
    if let Some(bad) = ms.iter().find(|m| m.order != ms[0].order) {
        return Err(Error::Shape(format!(
            "object order differs: {:?} vs {:?}",
            ms[0].order, bad.order
        )));
    }
    let mut out = ms[0].clone();
    for m in &ms[1..] {
        for (o, &b) in out.bits.iter_mut().zip(&m.bits) {
            *o |= b;
        }
    }
    Ok(out)
}

/// Kahn's algorithm: acyclic iff every vertex can be removed.
pub fn is_acyclic(m: &PreferenceMatrix) -> bool {
    let n = m.n();
    let mut indeg: Vec<usize> = (0..n)
        .map(|j| (0..n).filter(|&i| m.get(i, j)).count())
        .collect();
    let mut queue: Vec<usize> = (0..n).filter(|&j| indeg[j] == 0).collect();
    let mut removed = 0;
    while let Some(i) = queue.pop() {
        removed += 1;
        for (j, &edge) in m.row(i).iter().enumerate() {
            if edge {
                indeg[j] -= 1;
                if indeg[j] == 0 {
                    queue.push(j);
                }
            }
        }
    }
    removed == n
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::choice_model::{ids, validate_episode, ChoiceEpisode};

    fn t1() -> PreferenceMatrix {
        derive_matrix(
            &validate_episode(ChoiceEpisode::new(
                "r",
                1,
                ids(&["M", "N", "V", "Z"]),
                ids(&["M", "N", "V"]),
                ids(&["M", "N"]),
                ids(&["M"]),
            ))
            .unwrap(),
        )
    }

    fn t2() -> PreferenceMatrix {
        derive_matrix(
            &validate_episode(ChoiceEpisode::new(
                "r",
                2,
                ids(&["M", "N", "V", "Z"]),
                ids(&["Z", "V", "N"]),
                ids(&["Z", "V"]),
                ids(&["Z"]),
            ))
            .unwrap(),
        )
    }

    fn zero4() -> PreferenceMatrix {
        PreferenceMatrix::zero(ids(&["M", "N", "V", "Z"]))
    }

    #[test]
    fn canonical_matrices() {
        assert_eq!(t1().rows_string(), "0111;0011;0001;0000");
        assert_eq!(t2().rows_string(), "0000;1000;1100;1110");
        assert_eq!(outdegrees(&t1()), vec![3, 2, 1, 0]);
        assert_eq!(outdegrees(&t2()), vec![0, 1, 2, 3]);
        assert_eq!(outdegrees(&zero4()), vec![0, 0, 0, 0]);
    }

    #[test]
    fn all_stages_equal_gives_zero_matrix() {
        let x = ids(&["a", "b", "c"]);
        let e = ChoiceEpisode::new("r", 1, x.clone(), x.clone(), x.clone(), x.clone());
        let m = derive_matrix(&validate_episode(e).unwrap());
        assert_eq!(m, PreferenceMatrix::zero(x));
    }

    #[test]
    fn flatten_and_concat() {
        assert_eq!(flatten(&t1()).to_string(), "0111001100010000");
        assert_eq!(flatten(&t2()).to_string(), "0000100011001110");
        let one = PreferenceMatrix::zero(ids(&["a"]));
        assert_eq!(flatten(&one).to_string(), "0");

        let joint = concat_patterns(&[t1(), t2()]).unwrap();
        assert_eq!(joint.to_string(), "01110011000100000000100011001110");
        assert_eq!(concat_patterns(&[t1()]).unwrap(), flatten(&t1()));
        let zz = concat_patterns(&[zero4(), zero4()]).unwrap();
        assert_eq!(zz.to_string(), "0".repeat(32));
    }

    #[test]
    fn concat_shape_error() {
        let small = PreferenceMatrix::zero(ids(&["a", "b"]));
        assert!(matches!(
            concat_patterns(&[t1(), small]),
            Err(Error::Shape(_))
        ));
        assert!(matches!(concat_patterns(&[]), Err(Error::Shape(_))));
    }

    #[test]
    fn union_and_cycles() {
        let u = union_matrix(&[t1(), t2()]).unwrap();
        assert_eq!(u.rows_string(), "0111;1011;1101;1110");
        assert_eq!(outdegrees(&u), vec![3, 3, 3, 3]);
        assert!(is_acyclic(&t1()));
        assert!(is_acyclic(&t2()));
        assert!(!is_acyclic(&u));
        assert!(is_acyclic(&zero4()));
        assert_eq!(union_matrix(&[t1()]).unwrap(), t1());
        assert_eq!(union_matrix(&[zero4(), zero4()]).unwrap(), zero4());
    }

    #[test]
    fn diagonal_must_be_zero() {
        assert!(PreferenceMatrix::from_bits(ids(&["a"]), vec![true]).is_err());
        assert!(PatternVector::parse("012", vec![1]).is_err());
    }

    #[test]
    fn unflatten_round_trip() {
        let p = flatten(&t2());
        assert_eq!(unflatten(&p, ids(&["M", "N", "V", "Z"])).unwrap(), t2());
    }
}
