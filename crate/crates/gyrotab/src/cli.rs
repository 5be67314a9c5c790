//! Command-line surface. Every subcommand reads a table file or a
//! built-in fixture, computes, and emits one `RunReport` as text or
//! (with `--json`) as JSON. Exit codes: 0 for pass/list, 1 when a
//! checked property fails, 2 for usage, file, or parse problems.
//!
//! `double`, `classify`, and `corollary` take the BASE gyrogroup and
//! double it internally; subsets passed to `classify --subset` index
//! the double, so they live in [0, 2n).

use crate::catalog::{self, CatalogError};
use crate::doubling::{
    check_corollary, classify_normal, classify_subgyrogroup, double, DoubledGyrogroup,
    DoublingError,
};
use crate::format::{
    parse_gyrations, parse_indices, parse_table, serialize_table, ParseError, TableDocument,
};
use crate::gyrogroup::{verify_axioms, CoreError, FiniteGyrogroup, ValidationReport};
use crate::report::{
    ClassificationEntry, GyrComparison, GyrMismatch, Outcome, Payload, RunReport, SetEntry,
};
use crate::subalgebra::{
    self, enumerate_normals, enumerate_normals_generated, enumerate_subgyrogroups,
    enumerate_subgyrogroups_generated, induced_subgyrogroup, quotient, try_quotient,
    SubalgebraError, FULL_ENUMERATION_MAX,
};
use crate::subset::ElementSubset;
use clap::{Args, Parser, Subcommand};
use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use thiserror::Error;

#[derive(Parser, Debug)]
#[command(
    name = "gyrotab",
    version,
    about = "Finite gyrogroup toolkit: verify axioms, double orders, enumerate and classify subgyrogroups"
)]
pub struct Cli {
    /// Emit the machine-readable JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

/// A table file or a built-in fixture; exactly one must be given.
#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct InputSource {
    /// Table file in `gyro 1` format.
    #[arg(value_name = "FILE")]
    pub file: Option<PathBuf>,
    /// Built-in fixture name (K1..K6).
    #[arg(long, value_name = "NAME")]
    pub fixture: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the gyrogroup axioms of a table.
    Verify {
        #[command(flatten)]
        input: InputSource,
        /// Compare the derived gyrations against a listing file
        /// (lines "a b: i0 i1 ... i(n-1)").
        #[arg(long, value_name = "FILE")]
        expect_gyr: Option<PathBuf>,
    },
    /// Emit the order-doubled table of a base gyrogroup.
    Double {
        #[command(flatten)]
        input: InputSource,
        /// Pairing file: n integers in [n,2n), the minus partner of
        /// each base element. Default pairing is k -> k+n.
        #[arg(long, value_name = "FILE")]
        phi: Option<PathBuf>,
    },
    /// Enumerate subgyrogroups.
    Subs {
        #[command(flatten)]
        input: InputSource,
    },
    /// Enumerate normal subgyrogroups.
    Normals {
        #[command(flatten)]
        input: InputSource,
        /// Diff the result against embedded golden data (K1 or K2).
        #[arg(long, value_name = "NAME")]
        golden: Option<String>,
    },
    /// Quotient by a normal subgyrogroup.
    Quotient {
        #[command(flatten)]
        input: InputSource,
        /// The subgyrogroup, as comma-separated element indices.
        #[arg(long, value_name = "SET")]
        by: String,
    },
    /// Clause classification in the double of the input: every normal
    /// subgyrogroup of the double, or one chosen subset of it.
    Classify {
        #[command(flatten)]
        input: InputSource,
        /// Subset of the double (indices in [0,2n)), comma-separated.
        #[arg(long, value_name = "SET")]
        subset: Option<String>,
    },
    /// Check that the plus copy and every embedded base normal are
    /// normal in the double of the input.
    Corollary {
        #[command(flatten)]
        input: InputSource,
    },
    /// Show a built-in fixture, or emit its table with --emit.
    Fixture {
        /// Fixture name (K1..K6).
        name: String,
        /// Print the table document instead of a summary.
        #[arg(long)]
        emit: bool,
    },
}

#[derive(Error, Debug)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    File {
        path: String,
        #[source]
        source: ParseError,
    },
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error("invalid subset '{arg}': {detail}")]
    SubsetArg { arg: String, detail: String },
    #[error("{path}: gyration listing has order {got}, table has order {expected}")]
    GyrOrder {
        path: String,
        expected: usize,
        got: usize,
    },
    #[error("{path}: {source}")]
    Phi {
        path: String,
        #[source]
        source: DoublingError,
    },
    #[error(transparent)]
    Subalgebra(#[from] SubalgebraError),
}

/// A loaded input: a validated gyrogroup, or a parsed table that failed
/// the axioms (a mathematical failure, not a usage error).
enum Loaded {
    Valid(FiniteGyrogroup),
    Invalid {
        order: usize,
        report: ValidationReport,
    },
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn load(input: &InputSource) -> Result<Loaded, CliError> {
    if let Some(name) = &input.fixture {
        return Ok(Loaded::Valid(catalog::fixture(name)?.into_gyrogroup()));
    }
    let path = input
        .file
        .as_ref()
        .expect("clap guarantees one input source");
    let text = read_file(path)?;
    let doc = parse_table(&text).map_err(|source| CliError::File {
        path: path.display().to_string(),
        source,
    })?;
    let order = doc.table.order();
    match FiniteGyrogroup::construct(doc.table, doc.labels) {
        Ok(g) => Ok(Loaded::Valid(g)),
        Err(CoreError::InvalidGyrogroup(report)) => Ok(Loaded::Invalid {
            order,
            report: *report,
        }),
        Err(other) => unreachable!("parsing enforces shape and label count: {other}"),
    }
}

fn invalid_input_report(command: String, order: usize, report: ValidationReport) -> RunReport {
    RunReport {
        command,
        outcome: Outcome::Fail,
        payload: Payload::Verification {
            order,
            report,
            degenerate: None,
            gyr_comparison: None,
        },
    }
}

fn fail(command: String, reason: String) -> RunReport {
    RunReport {
        command,
        outcome: Outcome::Fail,
        payload: Payload::Failure { reason },
    }
}

fn parse_subset_arg(arg: &str, universe: usize) -> Result<ElementSubset, CliError> {
    let bad = |detail: String| CliError::SubsetArg {
        arg: arg.to_string(),
        detail,
    };
    let mut set = ElementSubset::empty(universe);
    if arg.trim().is_empty() {
        return Err(bad("empty subset".to_string()));
    }
    for token in arg.split(',') {
        let token = token.trim();
        let value: usize = token
            .parse()
            .map_err(|_| bad(format!("'{token}' is not a non-negative integer")))?;
        if value >= universe {
            return Err(bad(format!(
                "element {value} out of range for order {universe}"
            )));
        }
        set.insert(value);
    }
    Ok(set)
}

/// Sets with their induced-structure flags; enumeration strategy picked
/// by order.
fn enumerate_marked(
    g: &FiniteGyrogroup,
    normals_only: bool,
) -> Result<(Vec<SetEntry>, bool), CliError> {
    let (sets, possibly_incomplete) = if g.order() <= FULL_ENUMERATION_MAX {
        let sets = if normals_only {
            enumerate_normals(g)?
        } else {
            enumerate_subgyrogroups(g)?
        };
        (sets, false)
    } else {
        let gen = if normals_only {
            enumerate_normals_generated(g, 3)?
        } else {
            enumerate_subgyrogroups_generated(g, 3)?
        };
        (gen.sets, gen.possibly_incomplete)
    };
    let entries = sets
        .into_iter()
        .map(|set| {
            let induced = induced_subgyrogroup(g, &set).expect("enumerated sets are subgyrogroups");
            SetEntry {
                nondegenerate: !induced.is_degenerate(),
                set,
            }
        })
        .collect();
    Ok((entries, possibly_incomplete))
}

fn table_payload(g: &FiniteGyrogroup) -> Payload {
    let doc = TableDocument {
        table: g.table().clone(),
        labels: g.labels().map(|l| l.to_vec()),
    };
    Payload::Table {
        document: serialize_table(&doc),
    }
}

fn double_of(g: &FiniteGyrogroup) -> DoubledGyrogroup {
    double(g, None).expect("doubling a validated gyrogroup succeeds")
}

fn classify_one(
    d: &DoubledGyrogroup,
    subject: &ElementSubset,
) -> Result<ClassificationEntry, DoublingError> {
    let sub = classify_subgyrogroup(d, subject)?;
    let normal_clauses = match subalgebra::is_normal(d.whole(), subject) {
        Ok(true) => Some(classify_normal(d, subject)?.clauses),
        _ => None,
    };
    Ok(ClassificationEntry {
        subject: subject.clone(),
        subgyrogroup_clauses: sub.clauses,
        normal_clauses,
        plus_part: sub.plus_part,
        minus_part: sub.minus_part,
        pulled_back: sub.pulled_back,
    })
}

pub fn execute(cli: &Cli, command_echo: String) -> Result<RunReport, CliError> {
    match &cli.command {
        Command::Verify { input, expect_gyr } => {
            let loaded = load(input)?;
            let (g, order, report) = match loaded {
                Loaded::Invalid { order, report } => {
                    let mut run = invalid_input_report(command_echo, order, report);
                    if expect_gyr.is_some() {
                        // Comparison is meaningless without valid gyrations.
                        run.outcome = Outcome::Fail;
                    }
                    return Ok(run);
                }
                Loaded::Valid(g) => {
                    let order = g.order();
                    let report = verify_axioms(g.table());
                    (g, order, report)
                }
            };
            let gyr_comparison = match expect_gyr {
                None => None,
                Some(path) => {
                    let text = read_file(path)?;
                    let expected = parse_gyrations(&text).map_err(|source| CliError::File {
                        path: path.display().to_string(),
                        source,
                    })?;
                    if expected.len() != order {
                        return Err(CliError::GyrOrder {
                            path: path.display().to_string(),
                            expected: order,
                            got: expected.len(),
                        });
                    }
                    let mut mismatch = None;
                    'scan: for (a, row) in expected.iter().enumerate() {
                        for (b, want) in row.iter().enumerate() {
                            let derived = g.gyration(a, b).expect("in range").images();
                            if derived != want.as_slice() {
                                mismatch = Some(GyrMismatch {
                                    a,
                                    b,
                                    derived: derived.to_vec(),
                                    expected: want.clone(),
                                });
                                break 'scan;
                            }
                        }
                    }
                    Some(GyrComparison {
                        matches: mismatch.is_none(),
                        mismatch,
                    })
                }
            };
            let pass = gyr_comparison.as_ref().is_none_or(|c| c.matches);
            Ok(RunReport {
                command: command_echo,
                outcome: if pass { Outcome::Pass } else { Outcome::Fail },
                payload: Payload::Verification {
                    order,
                    report,
                    degenerate: Some(g.is_degenerate()),
                    gyr_comparison,
                },
            })
        }

        Command::Double { input, phi } => {
            let g = match load(input)? {
                Loaded::Invalid { order, report } => {
                    return Ok(invalid_input_report(command_echo, order, report))
                }
                Loaded::Valid(g) => g,
            };
            let d = match phi {
                None => double_of(&g),
                Some(path) => {
                    let text = read_file(path)?;
                    let images = parse_indices(&text).map_err(|source| CliError::File {
                        path: path.display().to_string(),
                        source,
                    })?;
                    double(&g, Some(images)).map_err(|source| CliError::Phi {
                        path: path.display().to_string(),
                        source,
                    })?
                }
            };
            Ok(RunReport {
                command: command_echo,
                outcome: Outcome::List,
                payload: table_payload(d.whole()),
            })
        }

        Command::Subs { input } => {
            let g = match load(input)? {
                Loaded::Invalid { order, report } => {
                    return Ok(invalid_input_report(command_echo, order, report))
                }
                Loaded::Valid(g) => g,
            };
            let (entries, possibly_incomplete) = enumerate_marked(&g, false)?;
            Ok(RunReport {
                command: command_echo,
                outcome: Outcome::List,
                payload: Payload::Sets {
                    entries,
                    possibly_incomplete,
                },
            })
        }

        Command::Normals { input, golden } => {
            let g = match load(input)? {
                Loaded::Invalid { order, report } => {
                    return Ok(invalid_input_report(command_echo, order, report))
                }
                Loaded::Valid(g) => g,
            };
            let (entries, possibly_incomplete) = enumerate_marked(&g, true)?;
            match golden {
                None => Ok(RunReport {
                    command: command_echo,
                    outcome: Outcome::List,
                    payload: Payload::Sets {
                        entries,
                        possibly_incomplete,
                    },
                }),
                Some(name) => {
                    let golden_data = catalog::golden_normals(name)?;
                    let missing: Vec<ElementSubset> = golden_data
                        .sets
                        .iter()
                        .filter(|s| entries.iter().all(|e| &e.set != *s))
                        .cloned()
                        .collect();
                    let unexpected: Vec<ElementSubset> = entries
                        .iter()
                        .map(|e| &e.set)
                        .filter(|s| !golden_data.sets.contains(s))
                        .cloned()
                        .collect();
                    let flag_mismatches: Vec<ElementSubset> = entries
                        .iter()
                        .filter(|e| {
                            golden_data
                                .sets
                                .iter()
                                .position(|s| s == &e.set)
                                .is_some_and(|i| golden_data.nondegenerate[i] != e.nondegenerate)
                        })
                        .map(|e| e.set.clone())
                        .collect();
                    let clean =
                        missing.is_empty() && unexpected.is_empty() && flag_mismatches.is_empty();
                    Ok(RunReport {
                        command: command_echo,
                        outcome: if clean { Outcome::Pass } else { Outcome::Fail },
                        payload: Payload::GoldenDiff {
                            golden: golden_data.fixture,
                            entries,
                            missing,
                            unexpected,
                            flag_mismatches,
                        },
                    })
                }
            }
        }

        Command::Quotient { input, by } => {
            let g = match load(input)? {
                Loaded::Invalid { order, report } => {
                    return Ok(invalid_input_report(command_echo, order, report))
                }
                Loaded::Valid(g) => g,
            };
            let subset = parse_subset_arg(by, g.order())?;
            match quotient(&g, &subset) {
                Ok((q, projection)) => {
                    let cosets: Vec<ElementSubset> = (0..q.order())
                        .map(|i| {
                            ElementSubset::from_elements(
                                g.order(),
                                projection
                                    .map()
                                    .iter()
                                    .enumerate()
                                    .filter(|&(_, &c)| c == i)
                                    .map(|(a, _)| a),
                            )
                        })
                        .collect();
                    Ok(RunReport {
                        command: command_echo,
                        outcome: Outcome::List,
                        payload: Payload::Quotient {
                            cosets,
                            kernel: projection.kernel(),
                            degenerate: q.is_degenerate(),
                            table_document: match table_payload(&q) {
                                Payload::Table { document } => document,
                                _ => unreachable!(),
                            },
                        },
                    })
                }
                Err(SubalgebraError::NotASubgyrogroup(s)) => {
                    Ok(fail(command_echo, format!("{s} is not a subgyrogroup")))
                }
                Err(SubalgebraError::NotNormal(s)) => {
                    let detail = match try_quotient(&g, &subset) {
                        Err(e) => format!(": {e}"),
                        Ok(_) => String::new(),
                    };
                    Ok(fail(command_echo, format!("{s} is not normal{detail}")))
                }
                Err(other) => Err(other.into()),
            }
        }

        Command::Classify { input, subset } => {
            let g = match load(input)? {
                Loaded::Invalid { order, report } => {
                    return Ok(invalid_input_report(command_echo, order, report))
                }
                Loaded::Valid(g) => g,
            };
            let d = double_of(&g);
            match subset {
                Some(arg) => {
                    let subject = parse_subset_arg(arg, d.whole().order())?;
                    match classify_one(&d, &subject) {
                        Ok(entry) => Ok(RunReport {
                            command: command_echo,
                            outcome: Outcome::List,
                            payload: Payload::Classification {
                                entries: vec![entry],
                                possibly_incomplete: false,
                            },
                        }),
                        Err(DoublingError::NotASubgyrogroup(s)) => Ok(fail(
                            command_echo,
                            format!("{s} is not a subgyrogroup of the double"),
                        )),
                        Err(DoublingError::NoClauseApplies { subject }) => Ok(fail(
                            command_echo,
                            format!("{subject} satisfies no classification clause"),
                        )),
                        Err(DoublingError::Subalgebra(e)) => Err(e.into()),
                        Err(other) => Ok(fail(command_echo, other.to_string())),
                    }
                }
                None => {
                    let whole = d.whole().clone();
                    let (sets, possibly_incomplete) = if whole.order() <= FULL_ENUMERATION_MAX {
                        (enumerate_normals(&whole)?, false)
                    } else {
                        let gen = enumerate_normals_generated(&whole, 3)?;
                        (gen.sets, gen.possibly_incomplete)
                    };
                    let mut entries = Vec::with_capacity(sets.len());
                    for s in &sets {
                        match classify_one(&d, s) {
                            Ok(entry) => entries.push(entry),
                            Err(DoublingError::NoClauseApplies { subject }) => {
                                return Ok(fail(
                                    command_echo,
                                    format!("{subject} satisfies no classification clause"),
                                ))
                            }
                            Err(DoublingError::Subalgebra(e)) => return Err(e.into()),
                            Err(other) => return Ok(fail(command_echo, other.to_string())),
                        }
                    }
                    Ok(RunReport {
                        command: command_echo,
                        outcome: Outcome::List,
                        payload: Payload::Classification {
                            entries,
                            possibly_incomplete,
                        },
                    })
                }
            }
        }

        Command::Corollary { input } => {
            let g = match load(input)? {
                Loaded::Invalid { order, report } => {
                    return Ok(invalid_input_report(command_echo, order, report))
                }
                Loaded::Valid(g) => g,
            };
            let report = check_corollary(&double_of(&g));
            Ok(RunReport {
                command: command_echo,
                outcome: if report.passed() {
                    Outcome::Pass
                } else {
                    Outcome::Fail
                },
                payload: Payload::Corollary { report },
            })
        }

        Command::Fixture { name, emit } => {
            let f = catalog::fixture(name)?;
            if *emit {
                Ok(RunReport {
                    command: command_echo,
                    outcome: Outcome::List,
                    payload: table_payload(f.gyrogroup()),
                })
            } else {
                let g = f.gyrogroup();
                Ok(RunReport {
                    command: command_echo,
                    outcome: Outcome::List,
                    payload: Payload::FixtureSummary {
                        name: f.name().to_string(),
                        order: g.order(),
                        identity: g.identity(),
                        degenerate: g.is_degenerate(),
                        provenance: f.provenance().to_string(),
                        distinct_gyrations: g.distinct_gyration_count(),
                    },
                })
            }
        }
    }
}

/// Parses argv, executes, prints the report, and maps outcomes to exit
/// codes. Usage and parse problems exit 2.
pub fn run_from<I, T>(argv: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let command_echo = argv
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect::<Vec<_>>()
        .join(" ");
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders help/version on stdout (exit 0) and usage
            // errors on stderr (exit 2).
            let _ = e.print();
            return ExitCode::from(u8::try_from(e.exit_code()).unwrap_or(2));
        }
    };
    match execute(&cli, command_echo) {
        Ok(report) => {
            let text = if cli.json {
                let mut s = serde_json::to_string_pretty(&report).expect("reports serialize");
                s.push('\n');
                s
            } else {
                report.render_human()
            };
            if !emit(&text) {
                return ExitCode::from(2);
            }
            ExitCode::from(report.exit_code())
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

/// Writes the report to stdout. A reader that hangs up mid-stream
/// (broken pipe) is not a failure; any other write error is.
fn emit(text: &str) -> bool {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        Ok(()) => true,
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => true,
        Err(e) => {
            eprintln!("error: cannot write report: {e}");
            false
        }
    }
}
