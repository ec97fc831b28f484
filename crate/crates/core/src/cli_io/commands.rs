use std::fmt::Write as _;
use std::fs::File;
use std::io::BufReader;
use std::path::Path;

use serde::Serialize;

use super::report::{Fixed8, ReportDocument, TOOL_NAME, TOOL_VERSION};
use super::wire::{parse_choice_table, parse_ifs_list, parse_reviews, read_episodes};
use crate::consistency::{check_contraction, rationalizable, Violation};
use crate::error::{Error, Result};
use crate::info_index::{choose_from_list, entropy};
use crate::rationality_outcomes::{bin_table, build_tau, membership, MembershipVariant};
use crate::trust_scoring::{build_report, Issue, ScoringConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
    Text,
}

/// Rendered output plus whether every record was processed cleanly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutput {
    pub body: String,
    pub clean: bool,
}

impl CommandOutput {
    fn clean(body: String) -> Self {
        Self { body, clean: true }
    }
}

fn read_to_string(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializes");
    s.push('\n');
    s
}

fn csv_rows(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("csv write to memory");
    for row in rows {
        w.write_record(&row).expect("csv write to memory");
    }
    String::from_utf8(w.into_inner().expect("csv flush")).expect("utf8")
}

/// Scores an episode stream against an optional reviews document.
pub fn cmd_score(
    episodes_path: &Path,
    reviews_path: Option<&Path>,
    config: &ScoringConfig,
    format: OutputFormat,
) -> Result<CommandOutput> {
    let file = File::open(episodes_path)
        .map_err(|e| Error::Io(format!("{}: {e}", episodes_path.display())))?;
    let stream = read_episodes(BufReader::new(file))?;
    let reviews = match reviews_path {
        Some(p) => parse_reviews(&read_to_string(p)?)?,
        None => Vec::new(),
    };

    let mut report = build_report(stream.episodes, &reviews, config);
    let parse_issues = stream.errors.iter().map(|e| Issue {
        reviewer_id: String::new(),
        object: None,
        message: format!("{}: {e}", episodes_path.display()),
    });
    report.issues.splice(0..0, parse_issues);

    let doc = ReportDocument::new(&report, config);
    let body = match format {
        OutputFormat::Json => doc.to_json(),
        OutputFormat::Csv => doc.to_csv(),
        OutputFormat::Text => doc.to_text(),
    };
    Ok(CommandOutput {
        body,
        clean: report.is_clean(),
    })
}

#[derive(Debug, Serialize)]
struct TauRow {
    pattern: String,
    rank_class: String,
    bar: Option<String>,
    frequency: Option<u64>,
    membership: Option<Fixed8>,
}

#[derive(Debug, Serialize)]
struct TauListing {
    n: usize,
    t: usize,
    size: usize,
    rows: Vec<TauRow>,
}

/// Lists τ for `t` periods over `n` objects in lexicographic order, with
/// bar, bar frequency and membership for two periods.
pub fn cmd_tau(
    n: usize,
    t: usize,
    variant: MembershipVariant,
    format: OutputFormat,
) -> Result<CommandOutput> {
    if t == 0 {
        return Err(Error::Domain("need at least one period".into()));
    }
    let ns = vec![n; t];
    let tau = build_tau(&ns)?;
    let table = if t == 2 { Some(bin_table(&ns)?) } else { None };
    let mut rows = Vec::with_capacity(tau.len());
    for p in &tau {
        let (frequency, degree) = match (&table, p.bin) {
            (Some(table), Some(bar)) => (
                table.frequency(bar),
                Some(Fixed8(membership(bar, table, variant)?.degree)),
            ),
            _ => (None, None),
        };
        rows.push(TauRow {
            pattern: p.to_string(),
            rank_class: p.rank_class.to_string(),
            bar: p.bin.map(|b| b.label()),
            frequency,
            membership: degree,
        });
    }
    let listing = TauListing {
        n,
        t,
        size: rows.len(),
        rows,
    };

    let body = match format {
        OutputFormat::Json => to_json(&listing),
        OutputFormat::Csv => csv_rows(
            &["pattern", "rank_class", "bar", "frequency", "membership"],
            listing.rows.iter().map(|r| {
                vec![
                    r.pattern.clone(),
                    r.rank_class.clone(),
                    r.bar.clone().unwrap_or_default(),
                    r.frequency.map(|f| f.to_string()).unwrap_or_default(),
                    r.membership.map(Fixed8::render).unwrap_or_default(),
                ]
            }),
        ),
        OutputFormat::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "tau for n={n} t={t}: {} patterns", listing.size);
            let _ = writeln!(
                out,
                "{:<14} {:<11} {:<4} {:>9} {:>11}",
                "pattern", "rank", "bar", "frequency", "membership"
            );
            for r in &listing.rows {
                let _ = writeln!(
                    out,
                    "{:<14} {:<11} {:<4} {:>9} {:>11}",
                    r.pattern,
                    r.rank_class,
                    r.bar.as_deref().unwrap_or("-"),
                    r.frequency.map(|f| f.to_string()).as_deref().unwrap_or("-"),
                    r.membership.map(Fixed8::render).as_deref().unwrap_or("-"),
                );
            }
            out
        }
    };
    Ok(CommandOutput::clean(body))
}

#[derive(Debug, Serialize)]
struct InfoRow {
    id: String,
    mu: Fixed8,
    nu: Fixed8,
    pi: Fixed8,
    h: Fixed8,
}

#[derive(Debug, Serialize)]
struct InfoListing {
    chosen: String,
    elements: Vec<InfoRow>,
}

/// Information index of every list element and the chosen element.
pub fn cmd_info_index(path: &Path, format: OutputFormat) -> Result<CommandOutput> {
    let list = parse_ifs_list(&read_to_string(path)?)?;
    let chosen = choose_from_list(&list)?.id.clone();
    let listing = InfoListing {
        chosen,
        elements: list
            .elements
            .iter()
            .map(|e| InfoRow {
                id: e.id.clone(),
                mu: Fixed8(e.mu),
                nu: Fixed8(e.nu),
                pi: Fixed8(e.pi()),
                h: Fixed8(entropy(e)),
            })
            .collect(),
    };
    let body = match format {
        OutputFormat::Json => to_json(&listing),
        OutputFormat::Csv => csv_rows(
            &["id", "mu", "nu", "pi", "h", "chosen"],
            listing.elements.iter().map(|r| {
                vec![
                    r.id.clone(),
                    r.mu.render(),
                    r.nu.render(),
                    r.pi.render(),
                    r.h.render(),
                    (r.id == listing.chosen).to_string(),
                ]
            }),
        ),
        OutputFormat::Text => {
            let mut out = String::new();
            for r in &listing.elements {
                let _ = writeln!(
                    out,
                    "{:<10} mu={} nu={} H={}",
                    r.id,
                    r.mu.render(),
                    r.nu.render(),
                    r.h.render()
                );
            }
            let _ = writeln!(out, "chosen: {}", listing.chosen);
            out
        }
    };
    Ok(CommandOutput::clean(body))
}

#[derive(Debug, Serialize)]
struct CheckResult {
    tool: &'static str,
    version: &'static str,
    contraction_consistent: bool,
    violations: Vec<Violation>,
    rationalizing_order: Option<Vec<String>>,
}

/// Contraction verdict, violations and a rationalizing order for a complete
/// choice table.
pub fn cmd_check(path: &Path, format: OutputFormat) -> Result<CommandOutput> {
    let table = parse_choice_table(&read_to_string(path)?)?;
    if !table.is_complete() {
        let missing = table
            .missing_subsets()
            .iter()
            .map(|s| {
                format!(
                    "{{{}}}",
                    s.iter().map(|o| o.as_str()).collect::<Vec<_>>().join(",")
                )
            })
            .collect();
        return Err(Error::IncompleteTable { missing });
    }
    let contraction = check_contraction(&table);
    let result = CheckResult {
        tool: TOOL_NAME,
        version: TOOL_VERSION,
        contraction_consistent: contraction.consistent,
        violations: contraction.violations,
        rationalizing_order: rationalizable(&table).map(|o| o.into_iter().map(|id| id.0).collect()),
    };
    let order_text = result
        .rationalizing_order
        .as_ref()
        .map(|o| o.join(" > "))
        .unwrap_or_else(|| "none".into());
    let body = match format {
        OutputFormat::Json => to_json(&result),
        OutputFormat::Csv => csv_rows(
            &["smaller", "smaller_choice", "larger", "larger_choice"],
            result.violations.iter().map(|v| {
                let set = |s: &[crate::choice_model::ObjectId]| {
                    s.iter().map(|o| o.as_str()).collect::<Vec<_>>().join(" ")
                };
                vec![
                    set(&v.smaller),
                    v.smaller_choice.to_string(),
                    set(&v.larger),
                    v.larger_choice.to_string(),
                ]
            }),
        ),
        OutputFormat::Text => {
            let mut out = String::new();
            let verdict = if result.contraction_consistent {
                "consistent"
            } else {
                "violated"
            };
            let _ = writeln!(out, "contraction: {verdict}");
            for v in &result.violations {
                let _ = writeln!(out, "  {v}");
            }
            let _ = writeln!(out, "rationalizing order: {order_text}");
            out
        }
    };
    Ok(CommandOutput::clean(body))
}
