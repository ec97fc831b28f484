//! The rationality outcome set τ: every admissible run-count tuple for the
//! given per-period catalog sizes, with its rank class and, for two periods,
//! its bar in the binomial frequency table.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::pattern_runs::{format_slots, RunCount};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RankClass {
    /// Same run count in every period; highest rank.
    Reflexive,
    /// Never decreasing, at least one increase.
    Increasing,
    /// Never increasing, at least one decrease.
    Decreasing,
    /// Both an increase and a decrease.
    Mixed,
}

impl fmt::Display for RankClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RankClass::Reflexive => "reflexive",
            RankClass::Increasing => "increasing",
            RankClass::Decreasing => "decreasing",
            RankClass::Mixed => "mixed",
        };
        f.write_str(s)
    }
}

/// Bar of a two-period pattern, keyed by the signed difference
/// `second - first` with ε counted as 0.
///
/// Differences -3..=3 carry the letters C B A D E F G; wider catalogs get
/// labels of the form `d-4` / `d+4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bar(pub i64);

impl Bar {
    pub fn difference(self) -> i64 {
        self.0
    }

    pub fn label(self) -> String {
        match self.0 {
            -3 => "C".into(),
            -2 => "B".into(),
            -1 => "A".into(),
            0 => "D".into(),
            1 => "E".into(),
            2 => "F".into(),
            3 => "G".into(),
            d => format!("d{d:+}"),
        }
    }

    pub fn from_label(label: &str) -> Option<Bar> {
        let d = match label {
            "C" => -3,
            "B" => -2,
            "A" => -1,
            "D" => 0,
            "E" => 1,
            "F" => 2,
            "G" => 3,
            other => other.strip_prefix('d')?.parse().ok()?,
        };
        Some(Bar(d))
    }
}

impl fmt::Display for Bar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl Serialize for Bar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TauPattern {
    pub slots: Vec<RunCount>,
    pub rank_class: RankClass,
    /// Only set for two-period patterns.
    pub bin: Option<Bar>,
}

impl TauPattern {
    pub fn new(slots: Vec<RunCount>) -> Self {
        let rank_class = classify_rank(&slots);
        let bin = (slots.len() == 2).then(|| Bar(slots[1].value() - slots[0].value()));
        Self {
            slots,
            rank_class,
            bin,
        }
    }
}

impl fmt::Display for TauPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_slots(&self.slots))
    }
}

fn alphabet(n: usize) -> Vec<RunCount> {
    std::iter::once(RunCount::Epsilon)
        .chain((1..n as u32).map(RunCount::Run))
        .collect()
}

fn check_periods(ns: &[usize]) -> Result<()> {
    if ns.is_empty() {
        return Err(Error::Domain("no periods given".into()));
    }
    if let Some(&n) = ns.iter().find(|&&n| n < 2) {
        return Err(Error::Domain(format!(
            "each period needs at least 2 objects, got {n}"
        )));
    }
    Ok(())
}

/// Cartesian product of the per-period alphabets `{ε, 1, …, n_k - 1}`,
/// in lexicographic order with ε first.
pub fn build_tau(ns: &[usize]) -> Result<Vec<TauPattern>> {
    check_periods(ns)?;
    let mut acc: Vec<Vec<RunCount>> = vec![Vec::new()];
    for &n in ns {
        let letters = alphabet(n);
        acc = acc
            .into_iter()
            .flat_map(|prefix| {
                letters.iter().map(move |&l| {
                    let mut p = prefix.clone();
                    p.push(l);
                    p
                })
            })
            .collect();
    }
    Ok(acc.into_iter().map(TauPattern::new).collect())
}

/// Size of τ for two periods over the same `n` objects, split into the
/// strictly decreasing pairs and the nondecreasing ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TauCount {
    pub decreasing: u64,
    pub nondecreasing: u64,
}

impl TauCount {
    pub fn total(&self) -> u64 {
        self.decreasing + self.nondecreasing
    }
}

/// Decreasing pairs number `C(n, 2)`; nondecreasing pairs are the rising
/// factorial `[n]^2 / 2! = n(n+1)/2`.
pub fn count_tau_two_periods(n: usize) -> Result<TauCount> {
    if n < 2 {
        return Err(Error::Domain(format!("need at least 2 objects, got {n}")));
    }
    let n = n as u64;
    Ok(TauCount {
        decreasing: n * (n - 1) / 2,
        nondecreasing: n * (n + 1) / 2,
    })
}

/// `(n-1)! + [n]^2 / 2!`. Agrees with the size of τ only for n = 2 and n = 4,
/// where `(n-1)!` happens to equal `C(n, 2)`.
pub fn factorial_count_formula(n: usize) -> Result<u64> {
    if n < 2 {
        return Err(Error::Domain(format!("need at least 2 objects, got {n}")));
    }
    let n = n as u64;
    let fact: u64 = (1..n).product();
    Ok(fact + n * (n + 1) / 2)
}

/// ε compares as 0.
pub fn classify_rank(slots: &[RunCount]) -> RankClass {
    let mut up = false;
    let mut down = false;
    for w in slots.windows(2) {
        match w[0].value().cmp(&w[1].value()) {
            std::cmp::Ordering::Less => up = true,
            std::cmp::Ordering::Greater => down = true,
            std::cmp::Ordering::Equal => {}
        }
    }
    match (up, down) {
        (false, false) => RankClass::Reflexive,
        (true, false) => RankClass::Increasing,
        (false, true) => RankClass::Decreasing,
        (true, true) => RankClass::Mixed,
    }
}

pub fn bin_pattern(slots: &[RunCount]) -> Result<Bar> {
    if slots.len() != 2 {
        return Err(Error::Domain(format!(
            "bars are defined for two periods, pattern has {}",
            slots.len()
        )));
    }
    Ok(Bar(slots[1].value() - slots[0].value()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinEntry {
    pub members: Vec<Vec<RunCount>>,
    pub frequency: u64,
}

/// Two-period τ partitioned into bars, ordered by signed difference.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinTable {
    pub bins: BTreeMap<Bar, BinEntry>,
}

impl BinTable {
    pub fn frequency(&self, bar: Bar) -> Option<u64> {
        self.bins.get(&bar).map(|e| e.frequency)
    }

    pub fn total(&self) -> u64 {
        self.bins.values().map(|e| e.frequency).sum()
    }

    fn min_max(&self) -> (u64, u64) {
        let freqs = self.bins.values().map(|e| e.frequency);
        let min = freqs.clone().min().unwrap_or(0);
        let max = freqs.max().unwrap_or(0);
        (min, max)
    }
}

/// Bar table over `build_tau(ns)` for two periods; the catalog sizes may differ.
pub fn bin_table(ns: &[usize]) -> Result<BinTable> {
    if ns.len() != 2 {
        return Err(Error::Domain(format!(
            "bar tables need exactly two periods, got {}",
            ns.len()
        )));
    }
    let mut bins: BTreeMap<Bar, BinEntry> = BTreeMap::new();
    for p in build_tau(ns)? {
        let bar = bin_pattern(&p.slots)?;
        let entry = bins.entry(bar).or_insert_with(|| BinEntry {
            members: Vec::new(),
            frequency: 0,
        });
        entry.members.push(p.slots);
        entry.frequency += 1;
    }
    Ok(BinTable { bins })
}

pub fn bin_frequencies(n: usize) -> Result<BinTable> {
    bin_table(&[n, n])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MembershipVariant {
    /// `(f - min) / (max - min)`.
    #[default]
    MinMax,
    /// `f / max`; strictly positive.
    Smoothed,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Membership {
    pub degree: f64,
    /// Set when every bar has the same frequency; the degree is then 1.
    pub degenerate: bool,
}

pub fn membership(bar: Bar, table: &BinTable, variant: MembershipVariant) -> Result<Membership> {
    let f = table
        .frequency(bar)
        .ok_or_else(|| Error::Domain(format!("bar {bar} is not in the table")))?;
    let (min, max) = table.min_max();
    if max == min {
        return Ok(Membership {
            degree: 1.0,
            degenerate: true,
        });
    }
    let degree = match variant {
        MembershipVariant::MinMax => (f - min) as f64 / (max - min) as f64,
        MembershipVariant::Smoothed => f as f64 / max as f64,
    };
    Ok(Membership {
        degree,
        degenerate: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use RunCount::{Epsilon as E, Run as R};

    fn freqs(t: &BinTable) -> Vec<(String, u64)> {
        t.bins
            .iter()
            .map(|(b, e)| (b.label(), e.frequency))
            .collect()
    }

    #[test]
    fn tau_sizes() {
        let t = build_tau(&[4, 4]).unwrap();
        assert_eq!(t.len(), 16);
        assert_eq!(t[0].slots, vec![E, E]);
        assert_eq!(t[15].slots, vec![R(3), R(3)]);

        let t = build_tau(&[2]).unwrap();
        let slots: Vec<_> = t.iter().map(|p| p.slots.clone()).collect();
        assert_eq!(slots, vec![vec![E], vec![R(1)]]);

        assert_eq!(build_tau(&[3, 4]).unwrap().len(), 12);
        assert!(build_tau(&[]).is_err());
        assert!(build_tau(&[4, 1]).is_err());
    }

    #[test]
    fn two_period_count() {
        let c = count_tau_two_periods(4).unwrap();
        assert_eq!((c.decreasing, c.nondecreasing, c.total()), (6, 10, 16));
        assert_eq!(factorial_count_formula(4).unwrap(), 16);
        assert_eq!(factorial_count_formula(2).unwrap(), 4);
        // the factorial form drifts away from n^2 elsewhere
        assert_eq!(factorial_count_formula(3).unwrap(), 8);
        assert_eq!(count_tau_two_periods(3).unwrap().total(), 9);
        assert!(count_tau_two_periods(1).is_err());
    }

    #[test]
    fn rank_classes() {
        assert_eq!(classify_rank(&[R(1), R(1)]), RankClass::Reflexive);
        assert_eq!(classify_rank(&[R(1), R(2)]), RankClass::Increasing);
        assert_eq!(classify_rank(&[R(3), E]), RankClass::Decreasing);
        assert_eq!(classify_rank(&[R(1), R(3), R(2)]), RankClass::Mixed);
        assert_eq!(classify_rank(&[R(2)]), RankClass::Reflexive);
    }

    #[test]
    fn bars() {
        assert_eq!(bin_pattern(&[R(3), E]).unwrap().label(), "C");
        assert_eq!(bin_pattern(&[E, R(3)]).unwrap().label(), "G");
        assert_eq!(bin_pattern(&[R(2), R(1)]).unwrap().label(), "A");
        assert_eq!(bin_pattern(&[R(1), R(2)]).unwrap().label(), "E");
        assert_eq!(bin_pattern(&[R(2), R(2)]).unwrap().label(), "D");
        assert_eq!(bin_pattern(&[R(2), E]).unwrap().label(), "B");
        assert_eq!(bin_pattern(&[R(1), E]).unwrap().label(), "A");
        assert!(bin_pattern(&[R(1)]).is_err());
        assert_eq!(Bar(-5).label(), "d-5");
        assert_eq!(Bar::from_label("d+4"), Some(Bar(4)));
        assert_eq!(Bar::from_label("F"), Some(Bar(2)));
    }

    #[test]
    fn frequency_table_n4() {
        let t = bin_frequencies(4).unwrap();
        let mut got: Vec<(String, u64)> = freqs(&t);
        got.sort();
        let want: Vec<(String, u64)> = [
            ("A", 3),
            ("B", 2),
            ("C", 1),
            ("D", 4),
            ("E", 3),
            ("F", 2),
            ("G", 1),
        ]
        .iter()
        .map(|(l, f)| (l.to_string(), *f))
        .collect();
        assert_eq!(got, want);
        assert_eq!(t.total(), 16);
    }

    #[test]
    fn frequency_table_n2() {
        let t = bin_frequencies(2).unwrap();
        assert_eq!(
            freqs(&t),
            vec![
                ("A".to_string(), 1),
                ("D".to_string(), 2),
                ("E".to_string(), 1)
            ]
        );
    }

    #[test]
    fn membership_n4() {
        let t = bin_frequencies(4).unwrap();
        let mu = |l: &str| {
            membership(Bar::from_label(l).unwrap(), &t, MembershipVariant::MinMax)
                .unwrap()
                .degree
        };
        assert_eq!(mu("D"), 1.0);
        assert!((mu("A") - 2.0 / 3.0).abs() < 1e-12);
        assert!((mu("E") - 2.0 / 3.0).abs() < 1e-12);
        assert!((mu("B") - 1.0 / 3.0).abs() < 1e-12);
        assert!((mu("F") - 1.0 / 3.0).abs() < 1e-12);
        assert_eq!(mu("C"), 0.0);
        assert_eq!(mu("G"), 0.0);

        let s = membership(Bar(-3), &t, MembershipVariant::Smoothed).unwrap();
        assert_eq!(s.degree, 0.25);
        assert!(membership(Bar(9), &t, MembershipVariant::MinMax).is_err());
    }

    #[test]
    fn membership_n2_and_degenerate() {
        let t = bin_frequencies(2).unwrap();
        assert_eq!(
            membership(Bar(0), &t, MembershipVariant::MinMax)
                .unwrap()
                .degree,
            1.0
        );
        assert_eq!(
            membership(Bar(1), &t, MembershipVariant::MinMax)
                .unwrap()
                .degree,
            0.0
        );
        assert_eq!(
            membership(Bar(-1), &t, MembershipVariant::MinMax)
                .unwrap()
                .degree,
            0.0
        );

        let mut bins = BTreeMap::new();
        bins.insert(
            Bar(0),
            BinEntry {
                members: vec![],
                frequency: 2,
            },
        );
        let flat = BinTable { bins };
        let m = membership(Bar(0), &flat, MembershipVariant::MinMax).unwrap();
        assert!(m.degenerate);
        assert_eq!(m.degree, 1.0);
    }
}
