//! The `gradus` command line. Every command builds a [`Report`]; `--format text` renders the
//! same object line by line.

use std::ffi::OsString;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::arith::FieldSpec;
use crate::classify::{cross_validate, CellStatus, CrossOptions, Verdict};
use crate::error::{Error, Result};
use crate::lie::chevalley::root_label;
use crate::lie::chevalley_algebra;
use crate::lie::exp::{is_algebraic, SampleMode};
use crate::report::{Report, Status};
use crate::roots::{GradingWidth, JSubset, RootSystem, RootType};
use crate::structurable::{kappa, SearchPolicy, StructurableAlgebra, StructurableJson};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(
    name = "gradus",
    version,
    about = "Graded Lie algebras, structurable algebras and Kantor pairs"
)]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the roots of a root system.
    Roots {
        #[arg(value_name = "TYPE")]
        root_type: RootType,
        rank: usize,
    },
    /// Summarize the grading defined by a set of simple roots.
    Grade {
        #[arg(value_name = "TYPE")]
        root_type: RootType,
        rank: usize,
        /// Comma list of 1-based simple roots.
        #[arg(long = "J", value_name = "LIST")]
        j: String,
        #[arg(long, default_value = "Q")]
        field: FieldSpec,
    },
    /// Build K(A) from a structurable algebra file and check it.
    Kappa {
        file: PathBuf,
        /// Reinterpret the file over another field.
        #[arg(long)]
        field: Option<FieldSpec>,
    },
    /// Regenerate the classification table for one type and test every entry with a unit-pair search.
    VerifyTable {
        #[arg(value_name = "TYPE")]
        root_type: RootType,
        rank: usize,
        #[arg(long, conflicts_with = "fields")]
        field: Option<FieldSpec>,
        /// Comma list; defaults to Q,GF5,GF7.
        #[arg(long, value_delimiter = ',')]
        fields: Vec<FieldSpec>,
        #[arg(long, default_value_t = 20)]
        attempts: u64,
        /// Enumerate every candidate pair; finite fields only.
        #[arg(long)]
        exhaustive: bool,
    },
    /// Check that truncated exponentials are automorphisms.
    Algebraic {
        #[arg(value_name = "TYPE")]
        root_type: RootType,
        rank: usize,
        #[arg(long = "J", value_name = "LIST")]
        j: String,
        #[arg(long, default_value = "Q")]
        field: FieldSpec,
        #[arg(short = 'n', long = "samples", default_value_t = 200)]
        samples: u64,
        #[arg(long, conflicts_with = "samples")]
        exhaustive: bool,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Roots { .. } => "roots",
            Command::Grade { .. } => "grade",
            Command::Kappa { .. } => "kappa",
            Command::VerifyTable { .. } => "verify-table",
            Command::Algebraic { .. } => "algebraic",
        }
    }
}

fn default_fields() -> Vec<FieldSpec> {
    vec![
        FieldSpec::Rationals,
        FieldSpec::Prime(5),
        FieldSpec::Prime(7),
    ]
}

fn field_names(fields: &[FieldSpec]) -> Vec<String> {
    fields.iter().map(|f| f.to_string()).collect()
}

fn joined(v: &[usize]) -> String {
    v.iter()
        .map(|d| d.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Failures of a well-formed input to satisfy the axioms, as opposed to malformed input.
fn is_verification_failure(e: &Error) -> bool {
    matches!(
        e,
        Error::StructIdFails(_)
            | Error::EqDefFails(_)
            | Error::NotUnital(_)
            | Error::NotInvolution(_)
            | Error::JacobiFails(..)
            | Error::NotAntisymmetric(..)
    )
}

type Outcome = (Status, Vec<FieldSpec>, Value);

fn cmd_roots(ty: RootType, rank: usize) -> Result<Outcome> {
    let rs = RootSystem::new(ty, rank)?;
    let roots: Vec<Value> = (0..rs.num_roots())
        .map(|i| {
            json!({
                "label": root_label(rs.root(i)),
                "coords": rs.root(i),
                "height": rs.height(i),
            })
        })
        .collect();
    let result = json!({
        "type": ty,
        "rank": rank,
        "num_roots": rs.num_roots(),
        "num_positive": rs.num_positive(),
        "cartan": rs.cartan(),
        "highest_root": rs.root(rs.highest_root()),
        "roots": roots,
    });
    Ok((Status::Ok, vec![], result))
}

fn cmd_grade(ty: RootType, rank: usize, j: &str, field: FieldSpec) -> Result<Outcome> {
    let rs = RootSystem::new(ty, rank)?;
    let subset = JSubset::parse(rank, j)?;
    let width = match rs.grading_width(&subset) {
        GradingWidth::ThreeGraded => "three-graded",
        GradingWidth::FiveGraded => "five-graded",
        GradingWidth::TooWide => return Err(Error::TooWideGrading(rs.max_level(&subset))),
    };
    let ch = chevalley_algebra(&rs, field)?;
    let g = ch.grading(&subset)?;
    let dims = g.dims_with_bound(2);
    let zeta = ch.grading_derivation(&subset);
    let result = json!({
        "type": ty,
        "rank": rank,
        "J": subset.labels(),
        "field": field.to_string(),
        "dim": ch.dim(),
        "num_roots": rs.num_roots(),
        "levels": rs.levels(&subset),
        "width": width,
        "dims": joined(&dims),
        "distinguished": rs.is_distinguished(&subset),
        "zeta": if zeta.is_in_algebra() { "in-algebra" } else { "outer" },
        "zeta_element": zeta.element(),
    });
    Ok((Status::Ok, vec![field], result))
}

fn cmd_kappa(file: &PathBuf, field: Option<FieldSpec>) -> Result<Outcome> {
    let text = std::fs::read_to_string(file)?;
    let parsed: StructurableJson = serde_json::from_str(&text)?;
    let field = field.unwrap_or(parsed.field);
    let a = match StructurableAlgebra::from_json(&parsed, Some(field)) {
        Ok(a) => a,
        Err(e) if is_verification_failure(&e) => {
            let result =
                json!({ "name": parsed.name, "validation": "failed", "error": e.to_string() });
            return Ok((Status::Failed, vec![field], result));
        }
        Err(e) => return Err(e),
    };
    let validation = a.validate()?;
    let k = kappa(&a)?;
    let jacobi = k.check_jacobi();
    let (u, v) = k.unit_pair();
    let bracket = k.algebra.bracket(&u, &v);
    let acts = k.unit_bracket_is_grading_derivation();
    let status = if jacobi.passed() && acts {
        Status::Ok
    } else {
        Status::Failed
    };
    let result = json!({
        "name": parsed.name,
        "validation": validation,
        "blocks": joined(&k.block_dims()),
        "instrl_dim": k.instrl().dim(),
        "jacobi": jacobi,
        "witness": {
            "u": u,
            "v": v,
            "bracket": bracket,
            "acts_as_grading_derivation": acts,
        },
        "kappa": k.to_json(),
    });
    Ok((status, vec![field], result))
}

fn cmd_verify_table(
    ty: RootType,
    rank: usize,
    fields: Vec<FieldSpec>,
    attempts: u64,
    exhaustive: bool,
    seed: u64,
) -> Result<Outcome> {
    let opts = CrossOptions {
        fields: fields.clone(),
        attempts,
        seed,
        policy: if exhaustive {
            SearchPolicy::Exhaustive
        } else {
            SearchPolicy::Auto
        },
    };
    let report = cross_validate(ty, rank, &opts)?;
    let count = |s: CellStatus| report.cells.iter().filter(|c| c.status == s).count();
    let witnessed = report
        .cells
        .iter()
        .filter(|c| {
            c.expected == Verdict::Structurable
                && c.search.as_ref().is_some_and(|s| s.found().is_some())
        })
        .count();
    let status = if report.consistent() {
        Status::Ok
    } else {
        Status::Failed
    };
    let result = json!({
        "type": ty,
        "rank": rank,
        "consistent": report.consistent(),
        "first_discrepancy": report.first_discrepancy(),
        "table": report.table.render(),
        "structurable_rows": report.table.generated.len(),
        "cells": {
            "total": report.cells.len(),
            "consistent": count(CellStatus::Consistent),
            "discrepancy": count(CellStatus::Discrepancy),
            "informational": count(CellStatus::Informational),
            "witnessed": witnessed,
        },
        "report": report,
    });
    Ok((status, fields, result))
}

fn cmd_algebraic(
    ty: RootType,
    rank: usize,
    j: &str,
    field: FieldSpec,
    mode: SampleMode,
) -> Result<Outcome> {
    let rs = RootSystem::new(ty, rank)?;
    let subset = JSubset::parse(rank, j)?;
    let ch = chevalley_algebra(&rs, field)?;
    let g = ch.grading(&subset)?;
    let report = is_algebraic(&ch.algebra, &g, mode)?;
    let status = if report.passed {
        Status::Ok
    } else {
        Status::Failed
    };
    let result = json!({
        "type": ty,
        "rank": rank,
        "J": subset.labels(),
        "passed": report.passed,
        "report": report,
    });
    Ok((status, vec![field], result))
}

fn execute(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Roots { root_type, rank } => cmd_roots(*root_type, *rank),
        Command::Grade {
            root_type,
            rank,
            j,
            field,
        } => cmd_grade(*root_type, *rank, j, *field),
        Command::Kappa { file, field } => cmd_kappa(file, *field),
        Command::VerifyTable {
            root_type,
            rank,
            field,
            fields,
            attempts,
            exhaustive,
        } => {
            let fields = match (field, fields.is_empty()) {
                (Some(f), _) => vec![*f],
                (None, true) => default_fields(),
                (None, false) => fields.clone(),
            };
            cmd_verify_table(*root_type, *rank, fields, *attempts, *exhaustive, cli.seed)
        }
        Command::Algebraic {
            root_type,
            rank,
            j,
            field,
            samples,
            exhaustive,
        } => {
            let mode = if *exhaustive {
                SampleMode::Exhaustive
            } else {
                SampleMode::Sampled {
                    samples: *samples,
                    seed: cli.seed,
                }
            };
            cmd_algebraic(*root_type, *rank, j, *field, mode)
        }
    }
}

/// Run a parsed command and produce its report. Input errors become a report with
/// [`Status::Error`].
pub fn run(cli: &Cli) -> Report {
    let start = Instant::now();
    let (status, fields, result) = match execute(cli) {
        Ok(out) => out,
        Err(e) => (Status::Error, vec![], json!({ "error": e.to_string() })),
    };
    let mut report = Report::new(
        cli.command.name(),
        cli.seed,
        field_names(&fields),
        status,
        result,
    );
    report.timing_ms = start.elapsed().as_millis() as u64;
    report
}

/// Parse command-line words (without the program name) and run them. A usage error is
/// returned as clap's message. `--out` and `--format` are accepted but ignored.
pub fn run_args<I, T>(args: I) -> std::result::Result<Report, String>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let words = std::iter::once(OsString::from("gradus")).chain(args.into_iter().map(Into::into));
    Cli::try_parse_from(words)
        .map(|cli| run(&cli))
        .map_err(|e| e.to_string())
}

/// Parse arguments, run, write the report, and return the exit code.
pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let report = run(&cli);
    if report.status == Status::Error {
        if let Some(msg) = report.result.get("error").and_then(Value::as_str) {
            eprintln!("error: {msg}");
        }
    }
    let rendered = match cli.format {
        Format::Json => report.to_json() + "\n",
        Format::Text => report.to_text(),
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, rendered) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{rendered}"),
    }
    ExitCode::from(report.status.exit_code())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("gradus").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn grade_g2() {
        let r = run(&parse(&["grade", "G", "2", "--J", "2", "--field", "Q"]));
        assert_eq!(r.status, Status::Ok);
        assert_eq!(r.result["dims"], "1 4 4 4 1");
        assert_eq!(r.result["zeta"], "in-algebra");
    }

    #[test]
    fn grade_too_wide() {
        let r = run(&parse(&["grade", "G", "2", "--J", "1"]));
        assert_eq!(r.status, Status::Error);
        assert_eq!(r.result["error"], "grading too wide (level 3)");
    }

    #[test]
    fn field_flags_are_exclusive() {
        let e = Cli::try_parse_from([
            "gradus",
            "verify-table",
            "G",
            "2",
            "--field",
            "Q",
            "--fields",
            "GF5",
        ]);
        assert!(e.is_err());
        assert!(
            Cli::try_parse_from(["gradus", "grade", "A", "2", "--J", "1", "--field", "GF4"])
                .is_err()
        );
        assert!(Cli::try_parse_from(["gradus", "roots", "H", "2"]).is_err());
    }

    #[test]
    fn seed_is_recorded() {
        let r = run(&parse(&["--seed", "42", "roots", "A", "2"]));
        assert_eq!(r.seed, 42);
        assert_eq!(r.result["num_roots"], 6);
    }
}
