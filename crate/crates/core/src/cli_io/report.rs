//! Report document and its JSON, CSV and text renderings.
//!
//! Field order is fixed by the struct definitions and every number is
//! printed with eight decimals, so identical inputs give identical bytes.

use std::fmt::Write as _;
use std::str::FromStr;

use num_rational::BigRational;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::rationality_outcomes::MembershipVariant;
use crate::trust_scoring::{
    to_f64, D0Zone, OverallRationality, ReviewerReport, ScoringConfig, TrustReport,
};

pub const TOOL_NAME: &str = "ratpat";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// A number always written with eight decimals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Fixed8(pub f64);

impl Fixed8 {
    pub fn render(self) -> String {
        format!("{:.8}", self.0)
    }
}

impl From<&BigRational> for Fixed8 {
    fn from(x: &BigRational) -> Self {
        Fixed8(to_f64(x))
    }
}

impl Serialize for Fixed8 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let n = serde_json::Number::from_str(&self.render()).map_err(serde::ser::Error::custom)?;
        n.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Fixed8 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        f64::deserialize(d).map(Fixed8)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigDoc {
    pub membership: String,
    pub d0_zone: String,
    pub p: Fixed8,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PeriodDoc {
    pub period: u32,
    pub n: usize,
    pub strict_chain: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReviewDoc {
    pub rating: u8,
    pub comment: String,
    pub polarity: String,
    pub polarity_match: bool,
    pub weak_match: bool,
    pub narrative: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AssessmentDoc {
    pub object: String,
    pub pattern: String,
    pub absent: Vec<bool>,
    pub rank_class: String,
    pub bar: Option<String>,
    pub degree: Option<Fixed8>,
    pub degenerate: bool,
    pub zone: Option<String>,
    pub reviews: Vec<ReviewDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbabilityDoc {
    pub r: u64,
    pub f: Fixed8,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CumulativeDoc {
    pub eq: Fixed8,
    pub le: Fixed8,
    pub lt: Fixed8,
    pub gt: Fixed8,
    pub ge: Fixed8,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OverallDoc {
    pub n: u64,
    pub p: Fixed8,
    pub realized_r: u64,
    pub distribution: Vec<ProbabilityDoc>,
    pub at_realized: CumulativeDoc,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnnotationDoc {
    pub object: String,
    pub computed: Fixed8,
    pub reference: Fixed8,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReviewerDoc {
    pub reviewer_id: String,
    pub periods: Vec<PeriodDoc>,
    pub tau_size: usize,
    pub assessments: Vec<AssessmentDoc>,
    pub overall: Option<OverallDoc>,
    pub annotations: Vec<AnnotationDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IssueDoc {
    pub reviewer_id: String,
    pub object: Option<String>,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub tool: String,
    pub version: String,
    pub config: ConfigDoc,
    pub reviewers: Vec<ReviewerDoc>,
    pub issues: Vec<IssueDoc>,
}

fn membership_name(v: MembershipVariant) -> &'static str {
    match v {
        MembershipVariant::MinMax => "minmax",
        MembershipVariant::Smoothed => "smoothed",
    }
}

fn d0_name(z: D0Zone) -> &'static str {
    match z {
        D0Zone::Rational => "rational",
        D0Zone::Irrational => "irrational",
    }
}

fn overall_doc(o: &OverallRationality) -> OverallDoc {
    let r = o.realized_r;
    OverallDoc {
        n: o.n,
        p: Fixed8::from(&o.p),
        realized_r: r,
        distribution: o
            .distribution
            .iter()
            .enumerate()
            .map(|(k, f)| ProbabilityDoc {
                r: k as u64,
                f: Fixed8::from(f),
            })
            .collect(),
        at_realized: CumulativeDoc {
            eq: Fixed8::from(&o.at(r)),
            le: Fixed8::from(&o.at_most(r)),
            lt: Fixed8::from(&o.less_than(r)),
            gt: Fixed8::from(&o.more_than(r)),
            ge: Fixed8::from(&o.at_least(r)),
        },
    }
}

fn reviewer_doc(r: &ReviewerReport) -> ReviewerDoc {
    ReviewerDoc {
        reviewer_id: r.reviewer_id.clone(),
        periods: r
            .periods
            .iter()
            .map(|p| PeriodDoc {
                period: p.period,
                n: p.n,
                strict_chain: p.strict_chain,
            })
            .collect(),
        tau_size: r.tau_size,
        assessments: r
            .assessments
            .iter()
            .map(|a| AssessmentDoc {
                object: a.object.to_string(),
                pattern: a.pattern.to_string(),
                absent: a.pattern.absent.clone(),
                rank_class: a.rank_class.to_string(),
                bar: a.bar.map(|b| b.label()),
                degree: a.degree.map(Fixed8),
                degenerate: a.degenerate,
                zone: a.zone.map(|z| z.to_string()),
                reviews: a
                    .reviews
                    .iter()
                    .map(|v| ReviewDoc {
                        rating: v.rating,
                        comment: v.comment.clone(),
                        polarity: v.result.polarity.to_string(),
                        polarity_match: v.result.polarity_match,
                        weak_match: v.result.weak_match,
                        narrative: v.result.narrative.to_string(),
                    })
                    .collect(),
            })
            .collect(),
        overall: r.overall.as_ref().map(overall_doc),
        annotations: r
            .annotations
            .iter()
            .map(|a| AnnotationDoc {
                object: a.object.to_string(),
                computed: Fixed8(a.computed),
                reference: Fixed8(a.reference),
                note: a.note.clone(),
            })
            .collect(),
    }
}

impl ReportDocument {
    pub fn new(report: &TrustReport, config: &ScoringConfig) -> Self {
        Self {
            tool: TOOL_NAME.into(),
            version: TOOL_VERSION.into(),
            config: ConfigDoc {
                membership: membership_name(config.membership).into(),
                d0_zone: d0_name(config.d0_zone).into(),
                p: Fixed8::from(&config.p),
            },
            reviewers: report.reviewers.iter().map(reviewer_doc).collect(),
            issues: report
                .issues
                .iter()
                .map(|i| IssueDoc {
                    reviewer_id: i.reviewer_id.clone(),
                    object: i.object.as_ref().map(|o| o.to_string()),
                    message: i.message.clone(),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// One row per review verdict, or per object when it has no review.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record([
            "reviewer_id",
            "object",
            "pattern",
            "rank_class",
            "bar",
            "degree",
            "zone",
            "rating",
            "polarity",
            "polarity_match",
            "narrative",
        ])
        .expect("csv write to memory");
        for r in &self.reviewers {
            for a in &r.assessments {
                let base = [
                    r.reviewer_id.clone(),
                    a.object.clone(),
                    a.pattern.clone(),
                    a.rank_class.clone(),
                    a.bar.clone().unwrap_or_default(),
                    a.degree.map(Fixed8::render).unwrap_or_default(),
                    a.zone.clone().unwrap_or_default(),
                ];
                if a.reviews.is_empty() {
                    let mut row = base.to_vec();
                    row.extend([String::new(), String::new(), String::new(), String::new()]);
                    w.write_record(&row).expect("csv write to memory");
                }
                for v in &a.reviews {
                    let mut row = base.to_vec();
                    row.extend([
                        v.rating.to_string(),
                        v.polarity.clone(),
                        v.polarity_match.to_string(),
                        v.narrative.clone(),
                    ]);
                    w.write_record(&row).expect("csv write to memory");
                }
            }
        }
        String::from_utf8(w.into_inner().expect("csv flush")).expect("utf8")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}", self.tool, self.version);
        let _ = writeln!(
            out,
            "membership={} d0-zone={} p={}",
            self.config.membership,
            self.config.d0_zone,
            self.config.p.render()
        );
        for r in &self.reviewers {
            let _ = writeln!(out, "\nreviewer {} (|tau|={})", r.reviewer_id, r.tau_size);
            for p in &r.periods {
                let chain = match p.strict_chain {
                    Some(true) => "strict chain",
                    Some(false) => "not a strict chain",
                    None => "-",
                };
                let _ = writeln!(out, "  period {} n={} {}", p.period, p.n, chain);
            }
            let _ = writeln!(
                out,
                "  {:<8} {:<10} {:<11} {:<4} {:<10} {:<11} review",
                "object", "pattern", "rank", "bar", "degree", "zone"
            );
            for a in &r.assessments {
                let review = a
                    .reviews
                    .iter()
                    .map(|v| {
                        format!(
                            "{}★ {} {} {}",
                            v.rating,
                            v.polarity,
                            if v.polarity_match {
                                "match"
                            } else {
                                "mismatch"
                            },
                            v.narrative
                        )
                    })
                    .collect::<Vec<_>>()
                    .join("; ");
                let _ = writeln!(
                    out,
                    "  {:<8} {:<10} {:<11} {:<4} {:<10} {:<11} {}",
                    a.object,
                    a.pattern,
                    a.rank_class,
                    a.bar.as_deref().unwrap_or("-"),
                    a.degree.map(Fixed8::render).as_deref().unwrap_or("-"),
                    a.zone.as_deref().unwrap_or("-"),
                    review
                );
            }
            if let Some(o) = &r.overall {
                let _ = writeln!(
                    out,
                    "  overall: n={} p={} realized r={}",
                    o.n,
                    o.p.render(),
                    o.realized_r
                );
                for d in &o.distribution {
                    let _ = writeln!(out, "    f({}) = {}", d.r, d.f.render());
                }
                let c = &o.at_realized;
                let _ = writeln!(
                    out,
                    "    f(r<={r})={} f(r<{r})={} f(r>{r})={} f(r>={r})={}",
                    c.le.render(),
                    c.lt.render(),
                    c.gt.render(),
                    c.ge.render(),
                    r = o.realized_r
                );
            }
            for a in &r.annotations {
                let _ = writeln!(out, "  note [{}]: {}", a.object, a.note);
            }
        }
        if !self.issues.is_empty() {
            let _ = writeln!(out, "\nissues:");
            for i in &self.issues {
                let _ = writeln!(
                    out,
                    "  {}{}: {}",
                    i.reviewer_id,
                    i.object
                        .as_ref()
                        .map(|o| format!("/{o}"))
                        .unwrap_or_default(),
                    i.message
                );
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_rendering() {
        let s = serde_json::to_string(&Fixed8(2.0 / 3.0)).unwrap();
        assert_eq!(s, "0.66666667");
        let s = serde_json::to_string(&Some(Fixed8(1.0))).unwrap();
        assert_eq!(s, "1.00000000");
        let back: Fixed8 = serde_json::from_str("0.31250000").unwrap();
        assert_eq!(back, Fixed8(0.3125));
    }
}
