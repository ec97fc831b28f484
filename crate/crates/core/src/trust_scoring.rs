//! Trust degrees for review comments, rationality zones and the binomial
//! overall-rationality distribution.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::choice_model::{validate_episode, ChoiceEpisode, ObjectId, ValidatedEpisode};
use crate::error::{Error, Result};
use crate::pattern_runs::{omegas, single_period_rationality_pattern, RunCount, RunPattern};
use crate::preference_graph::{derive_matrix, outdegrees};
use crate::rationality_outcomes::{
    bin_pattern, bin_table, build_tau, membership, Bar, MembershipVariant, RankClass, TauPattern,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarity {
    Positive,
    Neutral,
    Negative,
}

impl Polarity {
    /// Fallback when a review carries no polarity: 1-2 negative, 3 neutral,
    /// 4-5 positive.
    pub fn from_rating(rating: u8) -> Polarity {
        match rating {
            0..=2 => Polarity::Negative,
            3 => Polarity::Neutral,
            _ => Polarity::Positive,
        }
    }
}

impl fmt::Display for Polarity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Polarity::Positive => "positive",
            Polarity::Neutral => "neutral",
            Polarity::Negative => "negative",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Review {
    pub reviewer_id: String,
    pub object: ObjectId,
    pub rating: u8,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polarity: Option<Polarity>,
    #[serde(default)]
    pub comment: String,
}

impl Review {
    pub fn validate(&self) -> Result<()> {
        if !(1..=5).contains(&self.rating) {
            return Err(Error::Domain(format!(
                "rating {} for {} is outside 1..5",
                self.rating, self.object
            )));
        }
        Ok(())
    }

    pub fn effective_polarity(&self) -> Polarity {
        self.polarity
            .unwrap_or_else(|| Polarity::from_rating(self.rating))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Zone {
    Rational,
    Irrational,
    Reflexive,
}

impl fmt::Display for Zone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Zone::Rational => "rational",
            Zone::Irrational => "irrational",
            Zone::Reflexive => "reflexive",
        };
        f.write_str(s)
    }
}

/// Which side the zero-difference bar counts toward.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum D0Zone {
    #[default]
    Rational,
    Irrational,
}

impl D0Zone {
    fn resolve(self, zone: Zone) -> Zone {
        match (zone, self) {
            (Zone::Reflexive, D0Zone::Rational) => Zone::Rational,
            (Zone::Reflexive, D0Zone::Irrational) => Zone::Irrational,
            (z, _) => z,
        }
    }
}

pub fn zone(slots: &[RunCount]) -> Result<Zone> {
    let d = bin_pattern(slots)?.difference();
    Ok(match d.signum() {
        1 => Zone::Rational,
        -1 => Zone::Irrational,
        _ => Zone::Reflexive,
    })
}

/// `C(n, r) p^r (1-p)^(n-r)`, exact.
pub fn binomial_rationality(n: u64, r: u64, p: &BigRational) -> Result<BigRational> {
    if r > n {
        return Err(Error::Domain(format!("r={r} exceeds n={n}")));
    }
    if p < &BigRational::zero() || p > &BigRational::one() {
        return Err(Error::Domain(format!("probability {p} outside [0, 1]")));
    }
    let q = BigRational::one() - p;
    let c = BigInt::from(num_integer::binomial(BigUint::from(n), BigUint::from(r)));
    Ok(BigRational::from_integer(c) * pow(p, r) * pow(&q, n - r))
}

fn pow(x: &BigRational, k: u64) -> BigRational {
    (0..k).fold(BigRational::one(), |acc, _| acc * x)
}

/// Parses `0.5`, `1/2` or `1` into an exact rational.
pub fn parse_probability(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Domain(format!("cannot parse probability {s:?}"));
    let value = if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| bad())?;
        let den: BigInt = den.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        BigRational::new(num, den)
    } else {
        let (int, frac) = s.split_once('.').unwrap_or((s, ""));
        if !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let digits: BigInt = format!("{}{}", if int.is_empty() { "0" } else { int }, frac)
            .parse()
            .map_err(|_| bad())?;
        BigRational::new(digits, BigInt::from(10u32).pow(frac.len() as u32))
    };
    if value < BigRational::zero() || value > BigRational::one() {
        return Err(Error::Domain(format!("probability {s} outside [0, 1]")));
    }
    Ok(value)
}

pub fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Binomial model of how many of an agent's objects land in the rational zone.
#[derive(Debug, Clone, PartialEq)]
pub struct OverallRationality {
    pub n: u64,
    pub p: BigRational,
    /// `f(r)` for `r = 0..=n`.
    pub distribution: Vec<BigRational>,
    /// Objects actually observed in the rational zone.
    pub realized_r: u64,
}

impl OverallRationality {
    pub fn new(n: u64, p: BigRational, realized_r: u64) -> Result<Self> {
        let distribution = (0..=n)
            .map(|r| binomial_rationality(n, r, &p))
            .collect::<Result<Vec<_>>>()?;
        if realized_r > n {
            return Err(Error::Domain(format!(
                "realized r={realized_r} exceeds n={n}"
            )));
        }
        Ok(Self {
            n,
            p,
            distribution,
            realized_r,
        })
    }

    fn sum_where(&self, keep: impl Fn(u64) -> bool) -> BigRational {
        self.distribution
            .iter()
            .enumerate()
            .filter(|(r, _)| keep(*r as u64))
            .fold(BigRational::zero(), |acc, (_, f)| acc + f)
    }

    pub fn at(&self, r: u64) -> BigRational {
        self.sum_where(|k| k == r)
    }

    pub fn at_most(&self, r: u64) -> BigRational {
        self.sum_where(|k| k <= r)
    }

    pub fn less_than(&self, r: u64) -> BigRational {
        self.sum_where(|k| k < r)
    }

    pub fn more_than(&self, r: u64) -> BigRational {
        self.sum_where(|k| k > r)
    }

    pub fn at_least(&self, r: u64) -> BigRational {
        self.sum_where(|k| k >= r)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Narrative {
    /// Preferred in the first period, dropped entirely in the second.
    CompleteRejection,
    /// Still preferred to something, but to fewer objects than before.
    ContinuityMaintainedDown,
    /// Preferred to at least as many objects as before.
    ContinuityMaintainedUp,
    /// Not preferred to anything at first, then chosen over others.
    SuddenAdoption,
    /// The review polarity contradicts the pattern.
    Disputed,
}

impl fmt::Display for Narrative {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Narrative::CompleteRejection => "complete-rejection",
            Narrative::ContinuityMaintainedDown => "continuity-maintained-down",
            Narrative::ContinuityMaintainedUp => "continuity-maintained-up",
            Narrative::SuddenAdoption => "sudden-adoption",
            Narrative::Disputed => "disputed",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReviewMatch {
    pub zone: Zone,
    pub polarity: Polarity,
    pub polarity_match: bool,
    /// Neutral reviews match any zone, weakly.
    pub weak_match: bool,
    pub narrative: Narrative,
}

/// Checks a review against the object's two-period pattern.
pub fn match_review(review: &Review, pattern: &TauPattern, d0_zone: D0Zone) -> Result<ReviewMatch> {
    let raw = zone(&pattern.slots)?;
    let effective = d0_zone.resolve(raw);
    let polarity = review.effective_polarity();
    let (polarity_match, weak_match) = match polarity {
        Polarity::Positive => (effective == Zone::Rational, false),
        Polarity::Negative => (effective == Zone::Irrational, false),
        Polarity::Neutral => (true, true),
    };
    let (first, second) = (pattern.slots[0], pattern.slots[1]);
    let narrative = if !polarity_match {
        Narrative::Disputed
    } else if second.is_epsilon() {
        Narrative::CompleteRejection
    } else if first.is_epsilon() {
        Narrative::SuddenAdoption
    } else if second < first {
        Narrative::ContinuityMaintainedDown
    } else {
        Narrative::ContinuityMaintainedUp
    };
    Ok(ReviewMatch {
        zone: raw,
        polarity,
        polarity_match,
        weak_match,
        narrative,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScoringConfig {
    pub membership: MembershipVariant,
    pub d0_zone: D0Zone,
    pub p: BigRational,
}

impl Default for ScoringConfig {
    fn default() -> Self {
        Self {
            membership: MembershipVariant::MinMax,
            d0_zone: D0Zone::Rational,
            p: BigRational::new(BigInt::from(1), BigInt::from(2)),
        }
    }
}

/// Degrees listed in the reference worked example for four objects over two
/// periods. Only the outer bars C and G disagree with min-max scaling.
pub const REFERENCE_TRUST_TABLE: [(i64, f64); 7] = [
    (-3, 0.33),
    (-2, 0.33),
    (-1, 0.67),
    (0, 1.0),
    (1, 0.67),
    (2, 0.33),
    (3, 0.33),
];

fn reference_degree(ns: &[usize], bar: Bar) -> Option<f64> {
    if ns != [4, 4] {
        return None;
    }
    REFERENCE_TRUST_TABLE
        .iter()
        .find(|(d, _)| *d == bar.difference())
        .map(|&(_, v)| v)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReviewVerdict {
    pub rating: u8,
    pub comment: String,
    pub result: ReviewMatch,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrustAssessment {
    pub object: ObjectId,
    pub pattern: RunPattern,
    pub rank_class: RankClass,
    /// Two-period fields; `None` for other period counts.
    pub bar: Option<Bar>,
    pub degree: Option<f64>,
    pub degenerate: bool,
    pub zone: Option<Zone>,
    pub reviews: Vec<ReviewVerdict>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Annotation {
    pub object: ObjectId,
    pub computed: f64,
    pub reference: f64,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Issue {
    pub reviewer_id: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub object: Option<ObjectId>,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PeriodSummary {
    pub period: u32,
    pub n: usize,
    /// Whether the period's runs are exactly `n-1, …, 1`; `None` when `n < 2`.
    pub strict_chain: Option<bool>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReviewerReport {
    pub reviewer_id: String,
    pub periods: Vec<PeriodSummary>,
    pub tau_size: usize,
    pub assessments: Vec<TrustAssessment>,
    pub overall: Option<OverallRationality>,
    pub annotations: Vec<Annotation>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrustReport {
    pub reviewers: Vec<ReviewerReport>,
    pub issues: Vec<Issue>,
}

impl TrustReport {
    pub fn is_clean(&self) -> bool {
        self.issues.is_empty()
    }
}

fn period_summary(e: &ValidatedEpisode) -> PeriodSummary {
    let n = e.n();
    let strict_chain = single_period_rationality_pattern(n).ok().map(|lr| {
        let mut runs: Vec<u32> = outdegrees(&derive_matrix(e))
            .into_iter()
            .filter(|&d| d > 0)
            .map(|d| d as u32)
            .collect();
        runs.sort_unstable_by(|a, b| b.cmp(a));
        runs == lr
    });
    PeriodSummary {
        period: e.period(),
        n,
        strict_chain,
    }
}

fn score_reviewer(
    reviewer_id: &str,
    episodes: Vec<ChoiceEpisode>,
    reviews: &[&Review],
    config: &ScoringConfig,
) -> (Option<ReviewerReport>, Vec<Issue>) {
    let mut issues = Vec::new();
    let issue = |object: Option<ObjectId>, message: String| Issue {
        reviewer_id: reviewer_id.to_owned(),
        object,
        message,
    };

    let mut validated = Vec::with_capacity(episodes.len());
    for e in episodes {
        let period = e.period;
        match validate_episode(e) {
            Ok(v) => validated.push(v),
            Err(err) => issues.push(issue(None, format!("period {period}: {err}"))),
        }
    }
    if validated.is_empty() {
        issues.push(issue(None, "no valid episodes".into()));
        return (None, issues);
    }
    validated.sort_by_key(|e| e.period());
    if let Some(w) = validated
        .windows(2)
        .find(|w| w[0].period() == w[1].period())
    {
        issues.push(issue(None, format!("duplicate period {}", w[0].period())));
        return (None, issues);
    }

    let ns: Vec<usize> = validated.iter().map(|e| e.n()).collect();
    let periods = validated.iter().map(period_summary).collect();

    // A period with a single object has no runs; τ is only built when every
    // period has at least two objects.
    let tau = build_tau(&ns).unwrap_or_default();
    let table = if ns.len() == 2 {
        bin_table(&ns).ok()
    } else {
        None
    };

    let patterns = match omegas(&validated) {
        Ok(p) => p,
        Err(err) => {
            issues.push(issue(None, err.to_string()));
            return (None, issues);
        }
    };

    let mut assessments = Vec::with_capacity(patterns.len());
    let mut annotations = Vec::new();
    for pattern in patterns {
        let tau_pattern = TauPattern::new(pattern.slots.clone());
        if !tau.is_empty() && !tau.contains(&tau_pattern) {
            issues.push(issue(
                Some(pattern.object.clone()),
                format!("pattern {pattern} is not in the outcome set"),
            ));
        }

        let mut bar = None;
        let mut degree = None;
        let mut degenerate = false;
        let mut zone_label = None;
        if let (Some(table), Some(b)) = (&table, tau_pattern.bin) {
            bar = Some(b);
            zone_label = zone(&tau_pattern.slots).ok();
            match membership(b, table, config.membership) {
                Ok(m) => {
                    degree = Some(m.degree);
                    degenerate = m.degenerate;
                    if let Some(reference) = reference_degree(&ns, b) {
                        if (reference - round2(m.degree)).abs() > 1e-9 {
                            annotations.push(Annotation {
                                object: pattern.object.clone(),
                                computed: m.degree,
                                reference,
                                note: format!(
                                    "reference trust table lists {reference:.2} for bar {b}; \
                                     frequency scaling gives {:.2}",
                                    m.degree
                                ),
                            });
                        }
                    }
                }
                Err(err) => issues.push(issue(Some(pattern.object.clone()), err.to_string())),
            }
        }

        let mut verdicts = Vec::new();
        for review in reviews.iter().filter(|r| r.object == pattern.object) {
            if let Err(err) = review.validate() {
                issues.push(issue(Some(review.object.clone()), err.to_string()));
                continue;
            }
            if table.is_none() {
                continue;
            }
            match match_review(review, &tau_pattern, config.d0_zone) {
                Ok(result) => verdicts.push(ReviewVerdict {
                    rating: review.rating,
                    comment: review.comment.clone(),
                    result,
                }),
                Err(err) => issues.push(issue(Some(review.object.clone()), err.to_string())),
            }
        }

        assessments.push(TrustAssessment {
            object: pattern.object.clone(),
            rank_class: tau_pattern.rank_class,
            pattern,
            bar,
            degree,
            degenerate,
            zone: zone_label,
            reviews: verdicts,
        });
    }

    for review in reviews {
        if !assessments.iter().any(|a| a.object == review.object) {
            issues.push(issue(
                Some(review.object.clone()),
                format!("review references unknown object {}", review.object),
            ));
        }
    }

    let overall = if table.is_some() {
        let zones: Vec<Zone> = assessments.iter().filter_map(|a| a.zone).collect();
        let realized = zones
            .iter()
            .filter(|&&z| config.d0_zone.resolve(z) == Zone::Rational)
            .count() as u64;
        match OverallRationality::new(zones.len() as u64, config.p.clone(), realized) {
            Ok(o) => Some(o),
            Err(err) => {
                issues.push(issue(None, err.to_string()));
                None
            }
        }
    } else {
        None
    };

    let report = ReviewerReport {
        reviewer_id: reviewer_id.to_owned(),
        periods,
        tau_size: tau.len(),
        assessments,
        overall,
        annotations,
    };
    (Some(report), issues)
}

fn round2(x: f64) -> f64 {
    (x * 100.0).round() / 100.0
}

/// Runs the full pipeline for every reviewer: outcome set, joint patterns,
/// per-object run patterns, matching against τ and degree lookup, followed by
/// zones, review matching and the overall binomial distribution.
///
/// Per-reviewer and per-review problems are collected as issues; the rest of
/// the batch is still scored.
pub fn build_report(
    episodes: Vec<ChoiceEpisode>,
    reviews: &[Review],
    config: &ScoringConfig,
) -> TrustReport {
    let mut by_reviewer: BTreeMap<String, Vec<ChoiceEpisode>> = BTreeMap::new();
    for e in episodes {
        by_reviewer
            .entry(e.reviewer_id.clone())
            .or_default()
            .push(e);
    }
    let mut orphan_issues = Vec::new();
    for r in reviews {
        if !by_reviewer.contains_key(&r.reviewer_id) {
            orphan_issues.push(Issue {
                reviewer_id: r.reviewer_id.clone(),
                object: Some(r.object.clone()),
                message: "review from a reviewer with no episodes".into(),
            });
        }
    }

    let scored: Vec<(Option<ReviewerReport>, Vec<Issue>)> = by_reviewer
        .into_par_iter()
        .map(|(id, eps)| {
            let mine: Vec<&Review> = reviews.iter().filter(|r| r.reviewer_id == id).collect();
            score_reviewer(&id, eps, &mine, config)
        })
        .collect();

    let mut report = TrustReport {
        reviewers: Vec::new(),
        issues: Vec::new(),
    };
    for (r, issues) in scored {
        report.reviewers.extend(r);
        report.issues.extend(issues);
    }
    report.issues.extend(orphan_issues);
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::choice_model::ids;
    use RunCount::{Epsilon as E, Run as R};

    fn half() -> BigRational {
        BigRational::new(BigInt::from(1), BigInt::from(2))
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn review(object: &str, rating: u8, polarity: Option<Polarity>) -> Review {
        Review {
            reviewer_id: "r".into(),
            object: object.into(),
            rating,
            polarity,
            comment: String::new(),
        }
    }

    #[test]
    fn zones() {
        assert_eq!(zone(&[R(3), E]).unwrap(), Zone::Irrational);
        assert_eq!(zone(&[R(2), R(1)]).unwrap(), Zone::Irrational);
        assert_eq!(zone(&[R(1), R(2)]).unwrap(), Zone::Rational);
        assert_eq!(zone(&[E, R(3)]).unwrap(), Zone::Rational);
        assert_eq!(zone(&[R(2), R(2)]).unwrap(), Zone::Reflexive);
        assert!(zone(&[R(2)]).is_err());
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial_rationality(4, 1, &half()).unwrap(), rat(1, 4));
        assert_eq!(binomial_rationality(4, 0, &half()).unwrap(), rat(1, 16));
        let o = OverallRationality::new(4, half(), 2).unwrap();
        assert_eq!(o.at_most(1), rat(5, 16));
        assert_eq!(o.at_least(1), rat(15, 16));
        assert_eq!(o.more_than(1), rat(11, 16));
        assert_eq!(o.less_than(1), rat(1, 16));
        assert!(binomial_rationality(4, 5, &half()).is_err());
        assert!(binomial_rationality(4, 1, &rat(3, 2)).is_err());
    }

    #[test]
    fn probability_parsing() {
        assert_eq!(parse_probability("0.5").unwrap(), half());
        assert_eq!(parse_probability("1/2").unwrap(), half());
        assert_eq!(parse_probability("1").unwrap(), rat(1, 1));
        assert_eq!(parse_probability(".25").unwrap(), rat(1, 4));
        assert!(parse_probability("1.5").is_err());
        assert!(parse_probability("abc").is_err());
        assert!(parse_probability("1/0").is_err());
    }

    #[test]
    fn review_matching() {
        let m = TauPattern::new(vec![R(3), E]);
        let got = match_review(
            &review("M", 1, Some(Polarity::Negative)),
            &m,
            D0Zone::Rational,
        )
        .unwrap();
        assert!(got.polarity_match);
        assert_eq!(got.narrative, Narrative::CompleteRejection);

        let z = TauPattern::new(vec![E, R(3)]);
        let got = match_review(
            &review("Z", 5, Some(Polarity::Positive)),
            &z,
            D0Zone::Rational,
        )
        .unwrap();
        assert!(got.polarity_match);
        assert_eq!(got.narrative, Narrative::SuddenAdoption);

        let v = TauPattern::new(vec![R(1), R(2)]);
        let got = match_review(
            &review("V", 1, Some(Polarity::Negative)),
            &v,
            D0Zone::Rational,
        )
        .unwrap();
        assert!(!got.polarity_match);
        assert_eq!(got.narrative, Narrative::Disputed);

        let n = TauPattern::new(vec![R(2), R(1)]);
        let got = match_review(&review("N", 2, None), &n, D0Zone::Rational).unwrap();
        assert_eq!(got.polarity, Polarity::Negative);
        assert_eq!(got.narrative, Narrative::ContinuityMaintainedDown);

        let got = match_review(&review("V", 3, None), &v, D0Zone::Rational).unwrap();
        assert!(got.polarity_match && got.weak_match);
        assert_eq!(got.narrative, Narrative::ContinuityMaintainedUp);
    }

    #[test]
    fn d0_zone_switch() {
        let d = TauPattern::new(vec![R(2), R(2)]);
        let pos = review("X", 5, Some(Polarity::Positive));
        let neg = review("X", 1, Some(Polarity::Negative));
        assert!(
            match_review(&pos, &d, D0Zone::Rational)
                .unwrap()
                .polarity_match
        );
        assert!(
            !match_review(&neg, &d, D0Zone::Rational)
                .unwrap()
                .polarity_match
        );
        assert!(
            match_review(&neg, &d, D0Zone::Irrational)
                .unwrap()
                .polarity_match
        );
    }

    #[test]
    fn rating_fallback() {
        assert_eq!(Polarity::from_rating(1), Polarity::Negative);
        assert_eq!(Polarity::from_rating(3), Polarity::Neutral);
        assert_eq!(Polarity::from_rating(4), Polarity::Positive);
        assert!(review("M", 0, None).validate().is_err());
        assert!(review("M", 6, None).validate().is_err());
    }

    #[test]
    fn bad_episode_does_not_abort_batch() {
        let good = ChoiceEpisode::new(
            "a",
            1,
            ids(&["x", "y"]),
            ids(&["x"]),
            ids(&["x"]),
            ids(&["x"]),
        );
        let bad = ChoiceEpisode::new(
            "b",
            1,
            ids(&["x", "y"]),
            ids(&["x"]),
            ids(&["y"]),
            ids(&["y"]),
        );
        let report = build_report(vec![bad, good], &[], &ScoringConfig::default());
        assert_eq!(report.reviewers.len(), 1);
        assert_eq!(report.reviewers[0].reviewer_id, "a");
        assert_eq!(report.issues.len(), 2);
        assert!(report.issues.iter().all(|i| i.reviewer_id == "b"));
    }

    #[test]
    fn single_period_has_no_bars() {
        let e = ChoiceEpisode::new(
            "a",
            1,
            ids(&["M", "N", "V", "Z"]),
            ids(&["M", "N", "V"]),
            ids(&["M", "N"]),
            ids(&["M"]),
        );
        let mut rv = review("M", 1, None);
        rv.reviewer_id = "a".into();
        let report = build_report(vec![e], &[rv], &ScoringConfig::default());
        let r = &report.reviewers[0];
        assert_eq!(r.periods[0].strict_chain, Some(true));
        assert!(r.overall.is_none());
        assert!(r
            .assessments
            .iter()
            .all(|a| a.bar.is_none() && a.degree.is_none()));
        assert_eq!(r.assessments[0].pattern.to_string(), "{3}");
        assert!(report.is_clean());
    }
}
