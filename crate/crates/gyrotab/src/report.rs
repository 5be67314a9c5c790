//! Run reports: one machine-readable payload per command invocation.
//!
//! The JSON form is the source of truth and round-trips through serde;
//! the human rendering is a projection of the same payload. For table
//! payloads the projection is the raw table document, so piping a
//! `double` or `fixture --emit` run to a file reproduces the canonical
//! format byte for byte.

use crate::doubling::{Clause, CorollaryReport};
use crate::gyrogroup::ValidationReport;
use crate::subset::ElementSubset;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    /// A checked property holds.
    Pass,
    /// A checked property fails; the process exits 1.
    Fail,
    /// Informational output with nothing to pass or fail.
    List,
}

/// One enumerated set with its induced-structure flag.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SetEntry {
    pub set: ElementSubset,
    pub nondegenerate: bool,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct GyrMismatch {
    pub a: usize,
    pub b: usize,
    pub derived: Vec<usize>,
    pub expected: Vec<usize>,
}

/// Derived gyrations compared against an expected listing.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct GyrComparison {
    pub matches: bool,
    pub mismatch: Option<GyrMismatch>,
}

/// Clause memberships of one subset of a double.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ClassificationEntry {
    pub subject: ElementSubset,
    pub subgyrogroup_clauses: Vec<Clause>,
    /// None when the subject is a subgyrogroup but not normal.
    pub normal_clauses: Option<Vec<Clause>>,
    pub plus_part: ElementSubset,
    pub minus_part: ElementSubset,
    pub pulled_back: ElementSubset,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Payload {
    Verification {
        order: usize,
        report: ValidationReport,
        /// Present only for valid tables.
        degenerate: Option<bool>,
        gyr_comparison: Option<GyrComparison>,
    },
    Table {
        document: String,
    },
    Sets {
        entries: Vec<SetEntry>,
        possibly_incomplete: bool,
    },
    GoldenDiff {
        golden: String,
        entries: Vec<SetEntry>,
        missing: Vec<ElementSubset>,
        unexpected: Vec<ElementSubset>,
        flag_mismatches: Vec<ElementSubset>,
    },
    Quotient {
        cosets: Vec<ElementSubset>,
        kernel: ElementSubset,
        degenerate: bool,
        table_document: String,
    },
    Classification {
        entries: Vec<ClassificationEntry>,
        possibly_incomplete: bool,
    },
    Corollary {
        report: CorollaryReport,
    },
    FixtureSummary {
        name: String,
        order: usize,
        identity: usize,
        degenerate: bool,
        provenance: String,
        distinct_gyrations: usize,
    },
    Failure {
        reason: String,
    },
}

/// Everything one invocation produced.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub outcome: Outcome,
    pub payload: Payload,
}

fn labels(clauses: &[Clause], label: fn(Clause) -> &'static str) -> String {
    if clauses.is_empty() {
        "-".to_string()
    } else {
        clauses.iter().map(|&c| label(c)).collect()
    }
}

fn set_lines(out: &mut Vec<String>, entries: &[SetEntry], possibly_incomplete: bool) {
    for e in entries {
        let star = if e.nondegenerate { "*" } else { "" };
        out.push(format!("{}{}", e.set, star));
    }
    if possibly_incomplete {
        out.push("# generator-closure mode; list may be incomplete".to_string());
    }
}

impl RunReport {
    pub fn exit_code(&self) -> u8 {
        match self.outcome {
            Outcome::Pass | Outcome::List => 0,
            Outcome::Fail => 1,
        }
    }

    /// Human projection of the payload. Table payloads render as the
    /// bare document; everything else as newline-terminated lines.
    pub fn render_human(&self) -> String {
        let mut lines: Vec<String> = Vec::new();
        match &self.payload {
            Payload::Table { document } => return document.clone(),
            Payload::Verification {
                order,
                report,
                degenerate,
                gyr_comparison,
            } => {
                if report.valid {
                    let suffix = match degenerate {
                        Some(true) => ", degenerate (a group)",
                        Some(false) => ", nondegenerate",
                        None => "",
                    };
                    lines.push(format!("valid gyrogroup of order {order}{suffix}"));
                } else {
                    lines.push(format!("not a gyrogroup (order {order})"));
                    for v in &report.violations {
                        lines.push(format!("violation: {v}"));
                    }
                }
                if let Some(c) = gyr_comparison {
                    if c.matches {
                        lines.push("gyrations match the expected listing".to_string());
                    } else {
                        let m = c
                            .mismatch
                            .as_ref()
                            .expect("mismatch details accompany a failure");
                        lines.push(format!("gyration mismatch at ({},{})", m.a, m.b));
                        lines.push(format!("derived:  {}", join(&m.derived)));
                        lines.push(format!("expected: {}", join(&m.expected)));
                    }
                }
            }
            Payload::Sets {
                entries,
                possibly_incomplete,
            } => {
                set_lines(&mut lines, entries, *possibly_incomplete);
            }
            Payload::GoldenDiff {
                golden,
                entries,
                missing,
                unexpected,
                flag_mismatches,
            } => {
                set_lines(&mut lines, entries, false);
                if missing.is_empty() && unexpected.is_empty() && flag_mismatches.is_empty() {
                    lines.push(format!("golden {golden}: exact match"));
                } else {
                    lines.push(format!("golden {golden}: MISMATCH"));
                    for s in missing {
                        lines.push(format!("missing: {s}"));
                    }
                    for s in unexpected {
                        lines.push(format!("unexpected: {s}"));
                    }
                    for s in flag_mismatches {
                        lines.push(format!("flag mismatch: {s}"));
                    }
                }
            }
            Payload::Quotient {
                cosets,
                kernel,
                degenerate,
                table_document,
            } => {
                for (i, c) in cosets.iter().enumerate() {
                    lines.push(format!("coset {i}: {c}"));
                }
                lines.push(format!("kernel: {kernel}"));
                lines.push(format!("degenerate: {degenerate}"));
                let mut out = lines.join("\n");
                out.push('\n');
                out.push_str(table_document);
                return out;
            }
            Payload::Classification {
                entries,
                possibly_incomplete,
            } => {
                for e in entries {
                    let normal = match &e.normal_clauses {
                        Some(c) => labels(c, Clause::normal_label),
                        None => "-".to_string(),
                    };
                    lines.push(format!(
                        "{} sub={} normal={} plus={} minus={} pulled={}",
                        e.subject,
                        labels(&e.subgyrogroup_clauses, Clause::subgyrogroup_label),
                        normal,
                        e.plus_part,
                        e.minus_part,
                        e.pulled_back
                    ));
                }
                if *possibly_incomplete {
                    lines.push("# generator-closure mode; list may be incomplete".to_string());
                }
            }
            Payload::Corollary { report } => {
                for e in &report.entries {
                    if e.passed {
                        lines.push(format!("ok: {}", e.description));
                    } else {
                        let w = match e.witness {
                            Some((a, b)) => format!(" (witness ({a},{b}))"),
                            None => String::new(),
                        };
                        lines.push(format!("FAIL: {}{}", e.description, w));
                    }
                }
                lines.push(
                    if report.passed() {
                        "corollary holds"
                    } else {
                        "corollary fails"
                    }
                    .to_string(),
                );
            }
            Payload::FixtureSummary {
                name,
                order,
                identity,
                degenerate,
                provenance,
                distinct_gyrations,
            } => {
                lines.push(format!("name: {name}"));
                lines.push(format!("order: {order}"));
                lines.push(format!("identity: {identity}"));
                lines.push(format!("degenerate: {degenerate}"));
                lines.push(format!("provenance: {provenance}"));
                lines.push(format!("distinct gyrations: {distinct_gyrations}"));
            }
            Payload::Failure { reason } => {
                lines.push(reason.clone());
            }
        }
        let mut out = lines.join("\n");
        out.push('\n');
        out
    }
}

fn join(values: &[usize]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}
