//! Batch subcommands. Each returns the text for standard output.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use caseframe::engine::{self, export, Extras, PREFERRED_CAP};
use caseframe::frame::CanonClass;
use caseframe::problem::validate_problem;
use caseframe::{CaseBase, CaseBaseError, CaseQuery, ParseMode, ProblemFrame};
use chrono::NaiveDate;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

#[derive(Debug, Parser)]
#[command(name = "caseframe", version, about = "Case frames and appeal-to-a-prior-case arguments")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Semantics {
    Grounded,
    Preferred,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Load a case-base file and report validation findings.
    Validate {
        file: PathBuf,
        #[arg(long)]
        lenient: bool,
    },
    /// List cases matching all given filters, newest first.
    Query {
        #[arg(long)]
        base: PathBuf,
        #[arg(long)]
        interpretandum: Option<String>,
        #[arg(long)]
        jurisdiction: Option<String>,
        #[arg(long)]
        canon: Option<String>,
        #[arg(long)]
        document: Option<String>,
        /// Only cases decided before this date (YYYY-MM-DD).
        #[arg(long)]
        before: Option<NaiveDate>,
        #[arg(long)]
        lenient: bool,
    },
    /// Build and label the argument graph for a problem frame.
    Argue {
        #[arg(long)]
        base: PathBuf,
        #[arg(long)]
        problem: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long, value_enum, default_value = "grounded")]
        semantics: Semantics,
        #[arg(long)]
        lenient: bool,
    },
    /// Print every maximal chain of citations, newest case first.
    Lines {
        #[arg(long)]
        base: PathBuf,
        #[arg(long)]
        lenient: bool,
    },
    /// Serve the HTTP API.
    Serve {
        #[arg(long)]
        base: PathBuf,
        #[arg(long, default_value_t = 8080, value_parser = clap::value_parser!(u16).range(1..))]
        port: u16,
        #[arg(long)]
        lenient: bool,
        /// Allowed CORS origin; repeatable. Any origin when omitted.
        #[arg(long = "cors-origin")]
        cors_origins: Vec<String>,
        /// Directory of static files served under /ui.
        #[arg(long)]
        ui_dir: Option<PathBuf>,
        #[arg(long, default_value_t = 24)]
        session_ttl_hours: u64,
    },
}

fn mode(lenient: bool) -> ParseMode {
    if lenient {
        ParseMode::Lenient
    } else {
        ParseMode::Strict
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

pub fn load_base(path: &Path, lenient: bool) -> Result<CaseBase> {
    let src = read(path)?;
    CaseBase::load(&src, mode(lenient)).map_err(|e| describe(path, e))
}

fn describe(path: &Path, e: CaseBaseError) -> anyhow::Error {
    let mut msg = format!("{}: {e}", path.display());
    for i in e.issues() {
        msg.push_str(&format!("\n  {i}"));
    }
    anyhow!(msg)
}

fn plural(n: usize, word: &str) -> String {
    if n == 1 {
        format!("{n} {word}")
    } else {
        format!("{n} {word}s")
    }
}

/// Output of a subcommand: text for stdout, text for stderr, exit code.
#[derive(Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            stdout,
            ..Self::default()
        }
    }
}

pub fn validate(file: &Path, lenient: bool) -> Result<Outcome> {
    let src = read(file)?;
    match CaseBase::load(&src, mode(lenient)) {
        Ok(base) => {
            let mut stderr = String::new();
            for w in base.warnings() {
                stderr.push_str(&format!("warning: {w}\n"));
            }
            Ok(Outcome {
                stdout: format!("{}, 0 errors\n", plural(base.len(), "case")),
                stderr,
                code: 0,
            })
        }
        Err(CaseBaseError::Invalid(issues)) => {
            let cases = serde_json::from_str::<serde_json::Value>(&src)
                .ok()
                .and_then(|v| v.get("cases").and_then(|c| c.as_array()).map(|c| c.len()))
                .unwrap_or(0);
            let stderr = issues.iter().map(|i| format!("error: {i}\n")).collect();
            Ok(Outcome {
                stdout: format!("{}, {}\n", plural(cases, "case"), plural(issues.len(), "error")),
                stderr,
                code: 1,
            })
        }
        Err(e) => Err(describe(file, e)),
    }
}

pub fn query(base: &CaseBase, q: &CaseQuery) -> String {
    base.query(q)
        .into_iter()
        .map(|c| {
            let cd = &c.case_data;
            format!("{}\t{}\t{}\t{}\n", cd.identifier, cd.date, cd.jurisdiction, cd.court)
        })
        .collect()
}

pub fn parse_canon(term: &str) -> Result<CanonClass> {
    CanonClass::from_term(term).ok_or_else(|| anyhow!("unknown canon class {term:?}"))
}

pub fn load_problem(path: &Path, base: &CaseBase) -> Result<ProblemFrame> {
    let src = read(path)?;
    let p: ProblemFrame = serde_json::from_str(&src).with_context(|| format!("{}: malformed problem frame", path.display()))?;
    let report = validate_problem(&p, base.aliases());
    if !report.is_ok() {
        let issues: Vec<String> = report.errors.iter().map(|i| format!("  {i}")).collect();
        bail!("{}: invalid problem frame\n{}", path.display(), issues.join("\n"));
    }
    Ok(p)
}

pub fn argue(base: &CaseBase, p: &ProblemFrame, format: Format, semantics: Semantics) -> Result<String> {
    let analysis = engine::analyze(p, base, &Extras::default())?;
    let af = &analysis.framework;
    let preferred = match semantics {
        Semantics::Grounded => None,
        Semantics::Preferred => Some(af.preferred_labelings(PREFERRED_CAP)?),
    };
    Ok(match format {
        Format::Json => {
            let mut v = export::to_json(af);
            v["notes"] = json!(analysis.notes);
            if let Some(pl) = preferred {
                v["preferred"] = json!(pl);
            }
            let mut s = serde_json::to_string_pretty(&v)?;
            s.push('\n');
            s
        }
        Format::Dot => match preferred {
            None => export::to_dot(af),
            Some(pl) => pl
                .iter()
                .enumerate()
                .map(|(i, l)| export::to_dot_with(af, l, &format!("preferred_{}", i + 1)))
                .collect(),
        },
    })
}

pub fn lines(base: &CaseBase) -> Result<String> {
    Ok(base.lines_of_opinion()?.iter().map(|l| format!("{l}\n")).collect())
}

/// Runs every subcommand except `serve`.
pub fn run(cmd: &Command) -> Result<Outcome> {
    match cmd {
        Command::Validate { file, lenient } => validate(file, *lenient),
        Command::Query {
            base,
            interpretandum,
            jurisdiction,
            canon,
            document,
            before,
            lenient,
        } => {
            let canon_class = canon.as_deref().map(parse_canon).transpose()?;
            let base = load_base(base, *lenient)?;
            let q = CaseQuery {
                interpretandum: interpretandum.clone(),
                document_citation: document.clone(),
                jurisdiction: jurisdiction.clone(),
                canon_class,
                decided_before: *before,
            };
            Ok(Outcome::ok(query(&base, &q)))
        }
        Command::Argue {
            base,
            problem,
            format,
            semantics,
            lenient,
        } => {
            let base = load_base(base, *lenient)?;
            let p = load_problem(problem, &base)?;
            Ok(Outcome::ok(argue(&base, &p, *format, *semantics)?))
        }
        Command::Lines { base, lenient } => Ok(Outcome::ok(lines(&load_base(base, *lenient)?)?)),
        Command::Serve { .. } => bail!("serve is handled by the binary"),
    }
}
