//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage/I/O/parse, 2 input validation,
//! 3 cross-check failure.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::input::{parse_error, ManifoldSpec, Transversal};
use crate::render;
use crate::report::{assemble_report, CohomologyReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_CROSS_CHECK: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// `C_g × cofactor` for `g` in `--from..=--to`.
    CurveGenus,
    /// An explicit list of spec files given with `--input`.
    Specs,
}

#[derive(Debug, Parser)]
#[command(name = "vaisman", version, about = "Cohomology of compact Vaisman manifolds from their transversal")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute the full report for one manifold.
    Compute {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Cross-check model computations against the closed forms.
    Verify {
        #[arg(long)]
        input: PathBuf,
    },
    /// Summarise a family of manifolds, one row per instance.
    Sweep {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        from: Option<usize>,
        #[arg(long)]
        to: Option<usize>,
        /// Transversal multiplied onto each curve: inline JSON or a file path.
        #[arg(long)]
        cofactor: Option<String>,
        #[arg(long)]
        input: Vec<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = match cli.command {
        Command::Compute { input, format, output } => cmd_compute(&input, format, output.as_deref(), out),
        Command::Verify { input } => cmd_verify(&input, out),
        Command::Sweep { family, from, to, cofactor, input, format } => {
            cmd_sweep(family, from, to, cofactor.as_deref(), &input, format, out, err)
        }
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn read_spec(path: &Path) -> Result<ManifoldSpec> {
    let text = fs::read_to_string(path)?;
    ManifoldSpec::from_json(&text)
}

fn render_report(r: &CohomologyReport, format: OutputFormat) -> Result<String> {
    match format {
        OutputFormat::Text => Ok(render::text(r)),
        OutputFormat::Json => render::json(r),
        OutputFormat::Csv => render::csv(r),
    }
}

pub fn cmd_compute(input: &Path, format: OutputFormat, output: Option<&Path>, out: &mut dyn Write) -> Result<i32> {
    let spec = read_spec(input)?;
    let report = assemble_report(&spec)?;
    let rendered = render_report(&report, format)?;
    match output {
        Some(path) => fs::write(path, rendered)?,
        None => out.write_all(rendered.as_bytes())?,
    }
    Ok(EXIT_OK)
}

pub fn cmd_verify(input: &Path, out: &mut dyn Write) -> Result<i32> {
    let spec = read_spec(input)?;
    let report = assemble_report(&spec)?;
    verify_report(&report, out)
}

/// Prints printed-table warnings and the first model/formula difference, if any.
pub fn verify_report(report: &CohomologyReport, out: &mut dyn Write) -> Result<i32> {
    for d in &report.flags.printed_table_discrepancies {
        writeln!(
            out,
            "warning: printed {} case table differs from the model at ({},{}): model {}, printed {}",
            d.table.name(),
            d.p,
            d.q,
            d.model,
            d.printed
        )?;
    }
    match report.first_mismatch() {
        None => {
            writeln!(out, "{}: cross-checks passed (n = {})", report.name, report.n)?;
            Ok(EXIT_OK)
        }
        Some(m) => {
            writeln!(
                out,
                "{}: cross-check FAILED: table {} at {}: model {}, formula {}",
                report.name, m.table, m.index, m.model, m.formula
            )?;
            Ok(EXIT_CROSS_CHECK)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRow {
    pub name: String,
    pub n: usize,
    pub b1: usize,
    pub delta2: i64,
    pub delta3: i64,
    pub cohomologically_hopf: bool,
    pub cross_checks_passed: bool,
}

impl SweepRow {
    fn from_report(r: &CohomologyReport) -> Self {
        let delta = |k: usize| r.delta.get(k).copied().unwrap_or(0);
        SweepRow {
            name: r.name.clone(),
            n: r.n,
            b1: r.betti_model.get(1).copied().unwrap_or(0),
            delta2: delta(2),
            delta3: delta(3),
            cohomologically_hopf: r.flags.cohomologically_hopf,
            cross_checks_passed: r.flags.cross_checks_passed,
        }
    }
}

fn short_name(t: &Transversal) -> String {
    match t {
        Transversal::Curve { genus } => format!("C{genus}"),
        Transversal::ProjectiveSpace { dim } => format!("P{dim}"),
        Transversal::Product { factors } => factors.iter().map(short_name).collect::<Vec<_>>().join("x"),
        Transversal::Custom(_) => "custom".to_string(),
    }
}

/// Accepts inline JSON or a path, holding either a bare transversal or a full spec.
fn parse_cofactor(arg: &str) -> Result<Transversal> {
    let text = if arg.trim_start().starts_with('{') { arg.to_string() } else { fs::read_to_string(arg)? };
    if let Ok(spec) = serde_json::from_str::<ManifoldSpec>(&text) {
        return Ok(spec.transversal);
    }
    serde_json::from_str::<Transversal>(&text).map_err(parse_error)
}

pub fn sweep_specs(
    family: Family,
    from: Option<usize>,
    to: Option<usize>,
    cofactor: Option<&str>,
    inputs: &[PathBuf],
) -> Result<Vec<ManifoldSpec>> {
    match family {
        Family::CurveGenus => {
            let (Some(from), Some(to)) = (from, to) else {
                return Err(usage("curve-genus sweeps need --from and --to"));
            };
            if from > to {
                return Err(usage(&format!("empty genus range {from}..{to}")));
            }
            let cofactor = cofactor.map(parse_cofactor).transpose()?;
            Ok((from..=to)
                .map(|g| {
                    let t = match &cofactor {
                        Some(c) => Transversal::product(vec![Transversal::curve(g), c.clone()]),
                        None => Transversal::curve(g),
                    };
                    ManifoldSpec::new(short_name(&t), t)
                })
                .collect())
        }
        Family::Specs => {
            if inputs.is_empty() {
                return Err(usage("the specs family needs at least one --input"));
            }
            inputs.iter().map(|p| read_spec(p)).collect()
        }
    }
}

fn usage(msg: &str) -> Error {
    Error::Io(std::io::Error::new(std::io::ErrorKind::InvalidInput, format!("{msg}\n\n{}", SWEEP_USAGE)))
}

const SWEEP_USAGE: &str = "usage: vaisman sweep --family curve-genus --from <g0> --to <g1> [--cofactor <spec>] [--format text|json|csv]\n       vaisman sweep --family specs --input <path> [--input <path> ...] [--format text|json|csv]";

#[allow(clippy::too_many_arguments)]
pub fn cmd_sweep(
    family: Family,
    from: Option<usize>,
    to: Option<usize>,
    cofactor: Option<&str>,
    inputs: &[PathBuf],
    format: OutputFormat,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32> {
    let specs = sweep_specs(family, from, to, cofactor, inputs)?;
    let results: Vec<Result<SweepRow>> =
        specs.par_iter().map(|s| assemble_report(s).map(|r| SweepRow::from_report(&r))).collect();
    let mut rows = Vec::with_capacity(results.len());
    for r in results {
        rows.push(r?);
    }
    out.write_all(render_sweep(&rows, format)?.as_bytes())?;
    let failed: Vec<&str> = rows.iter().filter(|r| !r.cross_checks_passed).map(|r| r.name.as_str()).collect();
    if failed.is_empty() {
        Ok(EXIT_OK)
    } else {
        writeln!(err, "cross-checks failed for: {}", failed.join(", "))?;
        Ok(EXIT_CROSS_CHECK)
    }
}

pub fn render_sweep(rows: &[SweepRow], format: OutputFormat) -> Result<String> {
    match format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(rows).map_err(|e| Error::Io(e.into()))?;
            s.push('\n');
            Ok(s)
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in rows {
                w.serialize(r).map_err(|e| Error::Io(std::io::Error::other(e)))?;
            }
            let bytes = w.into_inner().map_err(|e| Error::Io(std::io::Error::other(e.to_string())))?;
            Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
        }
        OutputFormat::Text => {
            let width = rows.iter().map(|r| r.name.chars().count()).max().unwrap_or(4).max(4);
            let mut s = format!("{:<width$}  {:>2}  {:>4}  {:>4}  {:>4}  {:>5}  {}\n", "name", "n", "b1", "Δ2", "Δ3", "hopf", "cross-check");
            for r in rows {
                s.push_str(&format!(
                    "{:<width$}  {:>2}  {:>4}  {:>4}  {:>4}  {:>5}  {}\n",
                    r.name,
                    r.n,
                    r.b1,
                    r.delta2,
                    r.delta3,
                    r.cohomologically_hopf,
                    if r.cross_checks_passed { "ok" } else { "FAILED" }
                ));
            }
            Ok(s)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cofactor_forms() {
        assert_eq!(parse_cofactor(r#"{"type":"projective_space","dim":1}"#).unwrap(), Transversal::projective(1));
        let full = r#"{"name":"x","transversal":{"type":"curve","genus":2}}"#;
        assert_eq!(parse_cofactor(full).unwrap(), Transversal::curve(2));
        assert!(matches!(parse_cofactor("{not json"), Err(Error::Parse { .. })));
    }

    #[test]
    fn names() {
        let t = Transversal::product(vec![Transversal::curve(3), Transversal::projective(1)]);
        assert_eq!(short_name(&t), "C3xP1");
    }

    #[test]
    fn empty_range_is_usage_error() {
        let e = sweep_specs(Family::CurveGenus, Some(3), Some(1), None, &[]).unwrap_err();
        assert_eq!(e.exit_code(), 1);
        assert!(e.to_string().contains("usage"));
    }

    #[test]
    fn verify_reports_first_difference() {
        let mut r = assemble_report(&ManifoldSpec::new("k", Transversal::curve(1))).unwrap();
        let mut out = Vec::new();
        assert_eq!(verify_report(&r, &mut out).unwrap(), EXIT_OK);
        r.betti_formula[1] = 5;
        r.flags.cross_checks_passed = false;
        let mut out = Vec::new();
        assert_eq!(verify_report(&r, &mut out).unwrap(), EXIT_CROSS_CHECK);
        let text = String::from_utf8(out).unwrap();
        assert!(text.contains("table betti at 1: model 3, formula 5"), "{text}");
    }

    #[test]
    fn unknown_subcommand_exit_code() {
        let (mut o, mut e) = (Vec::new(), Vec::new());
        assert_eq!(run(["vaisman", "bogus"], &mut o, &mut e), 1);
        assert!(!e.is_empty());
        assert_eq!(run(["vaisman", "--help"], &mut o, &mut e), 0);
    }
}
