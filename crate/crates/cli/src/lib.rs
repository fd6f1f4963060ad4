//! Command-line driver: argument parsing, dispatch and report rendering.

pub mod corpus;

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use tropcoh_cohomology::io::load_cellsheaf;
use tropcoh_cohomology::{
    betti_tables, compact_cohomology, compact_table, ordinary_cohomology, ordinary_table, pd_report, BettiTable,
};
use tropcoh_core::error::{Error, Result};
use tropcoh_core::linalg::rational::{format_rational, parse_rational, rational_to_json, Rational};
use tropcoh_core::polyhedral::io::{complex_hash, content_hash};
use tropcoh_core::polyhedral::{balancing_report, complex_to_json, load_complex, PolyhedralComplex};
use tropcoh_matroids::io::{load_matroid, matroid_to_json};
use tropcoh_matroids::{bergman_fan, os_dims, Matroid};
use tropcoh_modifications::{
    closed_modification, complete_modification, load_plfunction, plfunction_to_json, project_modification,
    ModificationResult,
};
use tropcoh_superforms::integrate::{stokes_cell_residual, truncate};
use tropcoh_superforms::{balanced_face_cancellation, load_superform, superform_to_json};

#[derive(Parser, Debug)]
#[command(name = "tropcoh", version, about = "Exact tropical cohomology workbench")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Output {
    /// Print plain text instead of JSON.
    #[arg(long, global = true)]
    pub text: bool,
    /// Also write the report to this path.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct MatroidSource {
    /// Uniform matroid U(r, n).
    #[arg(long, num_args = 2, value_names = ["R", "N"])]
    pub uniform: Option<Vec<usize>>,
    /// Matroid file.
    #[arg(long, value_name = "FILE")]
    pub matroid: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse and validate a complex.
    Validate { complex: PathBuf, #[command(flatten)] out: Output },
    /// Check the balancing condition; exits 1 when it fails.
    Balanced { complex: PathBuf, #[command(flatten)] out: Output },
    /// Betti tables of a complex.
    Betti {
        complex: PathBuf,
        #[arg(long, conflicts_with_all = ["ordinary", "both"])]
        compact: bool,
        #[arg(long, conflicts_with = "both")]
        ordinary: bool,
        #[arg(long)]
        both: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Both tables, balancing, duality verdicts and the degree of a top class.
    PdReport { complex: PathBuf, #[command(flatten)] out: Output },
    /// Bergman fan of a matroid.
    Bergman { #[command(flatten)] source: MatroidSource, #[command(flatten)] out: Output },
    /// Orlik-Solomon dimensions of a matroid.
    OsDims { #[command(flatten)] source: MatroidSource, #[command(flatten)] out: Output },
    /// Open modification of a complex along a function.
    Modify { complex: PathBuf, function: PathBuf, #[command(flatten)] out: Output },
    /// Split a complex into base and divisor along a coordinate (1-based).
    Project {
        complex: PathBuf,
        #[arg(long)]
        coord: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Modification closed up in the new tropical coordinate.
    ClosedModify { complex: PathBuf, function: PathBuf, #[command(flatten)] out: Output },
    /// Per-cell Stokes residuals and face cancellation inside a box.
    Stokes {
        complex: PathBuf,
        form: PathBuf,
        /// Box as `lo:hi` for every coordinate, or a comma-separated list of `lo:hi`.
        #[arg(long = "box", value_name = "LO:HI", default_value = "-1:1", allow_hyphen_values = true)]
        bounds: String,
        #[command(flatten)]
        out: Output,
    },
    /// Cohomology of a cellular sheaf file.
    CellsheafBetti { file: PathBuf, #[command(flatten)] out: Output },
    /// Run the built-in regression suite.
    Corpus { #[command(flatten)] out: Output },
}

/// What a command produced: exit status and the rendered report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Report {
    code: i32,
    json: Value,
    text: String,
}

impl Report {
    fn ok(json: Value, text: String) -> Self {
        Report { code: 0, json, text }
    }
}

fn render(json: &Value) -> String {
    let mut s = serde_json::to_string_pretty(json).expect("JSON values serialize");
    s.push('\n');
    s
}

fn error_report(e: &Error) -> Report {
    let json = json!({"error": {"kind": e.kind(), "message": e.to_string()}});
    Report {
        code: if e.is_parse() { 2 } else { 1 },
        text: format!("error: {} ({})\n", e, e.kind()),
        json,
    }
}

fn with_hash(mut v: Value) -> Value {
    let h = content_hash(&v);
    if let Value::Object(m) = &mut v {
        m.insert("report_hash".into(), Value::String(h));
    }
    v
}

fn load_matroid_source(s: &MatroidSource) -> Result<Matroid> {
    match (&s.uniform, &s.matroid) {
        (Some(u), None) => Matroid::uniform(u[0], u[1]),
        (None, Some(p)) => load_matroid(p),
        _ => Err(Error::Parse("give exactly one of --uniform R N or --matroid FILE".into())),
    }
}

fn parse_box(spec: &str, r: usize) -> Result<Vec<(Rational, Rational)>> {
    let parts: Vec<&str> = spec.split(',').collect();
    let one = |s: &str| -> Result<(Rational, Rational)> {
        let (lo, hi) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("box entry {s:?} is not of the form lo:hi")))?;
        let (lo, hi) = (parse_rational(lo)?, parse_rational(hi)?);
        if lo > hi {
            return Err(Error::Parse(format!("empty box interval {s:?}")));
        }
        Ok((lo, hi))
    };
    match parts.len() {
        1 => Ok(vec![one(parts[0])?; r]),
        n if n == r => parts.into_iter().map(one).collect(),
        n => Err(Error::Parse(format!("box has {n} intervals, expected 1 or {r}"))),
    }
}

fn table_text(t: &BettiTable) -> String {
    t.to_text()
}

fn complex_summary(c: &PolyhedralComplex) -> Value {
    let counts: Vec<usize> = (0..=c.dim()).map(|d| c.cells_of_dim(d).len()).collect();
    json!({
        "ambient_dim": c.ambient_dim(),
        "dim": c.dim(),
        "pure": c.is_pure(),
        "cells_by_dim": counts,
        "complex_hash": complex_hash(c),
    })
}

fn modification_json(m: &ModificationResult) -> Value {
    json!({
        "V": complex_to_json(&m.v),
        "W": complex_to_json(&m.w),
        "divisor": m.divisor.as_ref().map(complex_to_json),
        "function": plfunction_to_json(&m.function),
        "projection_coordinate": m.projection_coordinate,
    })
}

fn modification_text(m: &ModificationResult) -> String {
    let facets = |c: &PolyhedralComplex| c.facets().len();
    let mut s = format!(
        "V: {} facets in R^{}\nW: {} facets in R^{}\n",
        facets(&m.v),
        m.v.ambient_dim(),
        facets(&m.w),
        m.w.ambient_dim()
    );
    match &m.divisor {
        Some(d) => s.push_str(&format!("divisor: {} facets of dimension {}\n", facets(d), d.dim())),
        None => s.push_str("divisor: empty\n"),
    }
    s.push_str(&format!("projection coordinate: {}\n", m.projection_coordinate));
    s
}

fn dispatch(cmd: &Command) -> Result<Report> {
    match cmd {
        Command::Validate { complex, .. } => {
            let c = load_complex(complex)?;
            let j = complex_summary(&c);
            let text = format!(
                "valid complex of dimension {} in ambient dimension {}, cells by dimension {}\n",
                c.dim(),
                c.ambient_dim(),
                j["cells_by_dim"]
            );
            Ok(Report::ok(json!({"valid": true, "complex": j}), text))
        }
        Command::Balanced { complex, .. } => {
            let c = load_complex(complex)?;
            let rep = balancing_report(&c)?;
            let failures: Vec<Value> = rep
                .failures
                .iter()
                .map(|f| {
                    json!({
                        "cell": c.describe_cell(f.cell),
                        "defect": f.defect.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                    })
                })
                .collect();
            let mut text = format!("balanced: {}\n", rep.balanced);
            for f in &failures {
                text.push_str(&format!("  fails at {} with defect {}\n", f["cell"], f["defect"]));
            }
            Ok(Report {
                code: if rep.balanced { 0 } else { 1 },
                json: json!({"balanced": rep.balanced, "failures": failures, "complex_hash": complex_hash(&c)}),
                text,
            })
        }
        Command::Betti { complex, compact, ordinary, .. } => {
            let c = load_complex(complex)?;
            let tables = if *compact {
                vec![compact_table(&c)?]
            } else if *ordinary {
                vec![ordinary_table(&c)?]
            } else {
                let (o, k) = betti_tables(&c)?;
                vec![o, k]
            };
            let mut j = serde_json::Map::new();
            let mut text = String::new();
            for t in &tables {
                j.insert(t.flavor.name().to_string(), t.to_json());
                text.push_str(&table_text(t));
            }
            Ok(Report::ok(Value::Object(j), text))
        }
        Command::PdReport { complex, .. } => {
            let c = load_complex(complex)?;
            let r = pd_report(&c)?;
            Ok(Report::ok(r.to_json(&c), r.to_text()))
        }
        Command::Bergman { source, .. } => {
            let m = load_matroid_source(source)?;
            let f = bergman_fan(&m)?;
            let j = complex_to_json(&f);
            Ok(Report::ok(j.clone(), render(&j)))
        }
        Command::OsDims { source, .. } => {
            let m = load_matroid_source(source)?;
            let d = os_dims(&m)?;
            let text = format!(
                "{}\n",
                d.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
            );
            Ok(Report::ok(json!({"matroid": matroid_to_json(&m), "os_dims": d}), text))
        }
        Command::Modify { complex, function, .. } => {
            let w = load_complex(complex)?;
            let p = load_plfunction(function)?;
            let m = complete_modification(&w, &p)?;
            Ok(Report::ok(modification_json(&m), modification_text(&m)))
        }
        Command::Project { complex, coord, .. } => {
            let v = load_complex(complex)?;
            let m = project_modification(&v, *coord)?;
            Ok(Report::ok(modification_json(&m), modification_text(&m)))
        }
        Command::ClosedModify { complex, function, .. } => {
            let w = load_complex(complex)?;
            let p = load_plfunction(function)?;
            let m = closed_modification(&w, &p)?;
            Ok(Report::ok(modification_json(&m), modification_text(&m)))
        }
        Command::Stokes { complex, form, bounds, .. } => stokes(complex, form, bounds),
        Command::CellsheafBetti { file, .. } => {
            let f = load_cellsheaf(file)?;
            let o = ordinary_cohomology(&f.datum)?;
            let k = compact_cohomology(&f.datum)?;
            let text = format!(
                "ordinary: {}\ncompact:  {}\n",
                o.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "),
                k.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
            );
            Ok(Report::ok(json!({"p": f.p, "ordinary": o, "compact": k}), text))
        }
        Command::Corpus { .. } => {
            let results = corpus::run_corpus();
            let all = results.iter().all(|r| r.passed);
            let mut text = String::new();
            for r in &results {
                let tag = if r.passed { "PASS" } else { "FAIL" };
                text.push_str(&format!("{tag} {} ({})\n", r.name, r.detail));
            }
            let passed = results.iter().filter(|r| r.passed).count();
            text.push_str(&format!("{passed}/{} cases passed\n", results.len()));
            Ok(Report {
                code: if all { 0 } else { 1 },
                json: json!({
                    "cases": results.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
                    "passed": passed,
                    "total": results.len(),
                }),
                text,
            })
        }
    }
}

fn stokes(complex: &Path, form: &Path, bounds: &str) -> Result<Report> {
    let c = load_complex(complex)?;
    let beta = load_superform(form)?;
    let b = parse_box(bounds, c.ambient_dim())?;
    if beta.ambient_dim() != c.ambient_dim() {
        return Err(Error::Dimension("form and complex live in different spaces".into()));
    }
    let mut residuals = Vec::new();
    let mut all_zero = true;
    for s in c.facets() {
        let cell = c.cell(s);
        if !cell.sedentarity().is_empty() {
            continue;
        }
        let Some(piece) = truncate(&cell.polyhedron, &b)? else { continue };
        let r = stokes_cell_residual(&beta, &piece)?;
        all_zero &= r == Rational::from_integer(0.into());
        residuals.push((c.describe_cell(s), r));
    }
    let cancel = balanced_face_cancellation(&c, &beta, &b)?;
    let cancels = cancel.values().all(|v| *v == Rational::from_integer(0.into()));
    let mut text = String::new();
    for (name, r) in &residuals {
        text.push_str(&format!("residual on {name}: {}\n", format_rational(r)));
    }
    for (t, v) in &cancel {
        text.push_str(&format!("face {}: {}\n", c.describe_cell(*t), format_rational(v)));
    }
    text.push_str(&format!("cell residuals vanish: {all_zero}\nface terms vanish: {cancels}\n"));
    let json = json!({
        "form": superform_to_json(&beta),
        "cell_residuals": residuals.iter().map(|(n, r)| json!({"cell": n, "residual": rational_to_json(r)})).collect::<Vec<_>>(),
        "face_terms": cancel.iter().map(|(t, v)| json!({"cell": c.describe_cell(*t), "value": rational_to_json(v)})).collect::<Vec<_>>(),
        "residuals_vanish": all_zero,
        "face_terms_vanish": cancels,
        "complex_hash": complex_hash(&c),
    });
    Ok(Report::ok(json, text))
}

fn output_of(cmd: &Command) -> &Output {
    match cmd {
        Command::Validate { out, .. }
        | Command::Balanced { out, .. }
        | Command::Betti { out, .. }
        | Command::PdReport { out, .. }
        | Command::Bergman { out, .. }
        | Command::OsDims { out, .. }
        | Command::Modify { out, .. }
        | Command::Project { out, .. }
        | Command::ClosedModify { out, .. }
        | Command::Stokes { out, .. }
        | Command::CellsheafBetti { out, .. }
        | Command::Corpus { out } => out,
    }
}

/// Parses `argv` (including the program name), runs the command, and returns the exit code
/// together with the rendered output. Writes `--out` when given.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let msg = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: msg, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: msg }
            };
        }
    };
    let out = output_of(&cli.command).clone();
    let report = match dispatch(&cli.command) {
        Ok(r) => r,
        Err(e) => error_report(&e),
    };
    let body = if out.text {
        report.text.clone()
    } else if report.json.get("error").is_some() || matches!(cli.command, Command::Bergman { .. }) {
        render(&report.json)
    } else {
        render(&with_hash(report.json.clone()))
    };
    let mut stderr = String::new();
    if let Some(path) = &out.out {
        if let Err(e) = std::fs::write(path, &body) {
            stderr = format!("cannot write {}: {e}\n", path.display());
            return Outcome { code: 2, stdout: body, stderr };
        }
    }
    if !out.text && report.json.get("error").is_some() {
        stderr = report.text.clone();
    }
    Outcome { code: report.code, stdout: body, stderr }
}
