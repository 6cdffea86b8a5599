//! Command-line front end: suite orchestration (`check`), q-series
//! expansion tables (`expand`), basis listings (`state`), and report
//! summaries (`report`).
//!
//! Exit codes for `check`: 0 all PASS, 1 at least one FAIL, 2 invalid
//! configuration, 3 degree-cap overflow inside a check.

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde::Deserialize;

use qcurrents::error::Error;
use qcurrents::fock::Perturbation;
use qcurrents::hopf;
use qcurrents::lattice::{Lattice, LatticeVector};
use qcurrents::qseries;
use qcurrents::relcheck::{config_for, run_suite, suites, CheckWindow};
use qcurrents::report::{RelationReport, ReportFile};
use qcurrents::scalars::{BigRational, ScalarCtx};

#[derive(Parser)]
#[command(name = "qcurrents", about = "Exact verification of twisted quantum current relations")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run relation suites and write a JSON report.
    Check(CheckArgs),
    /// Print exact expansion coefficients of a one-variable kernel.
    Expand(ExpandArgs),
    /// List canonical Fock basis states at a degree.
    State(StateArgs),
    /// Summarize an existing report file.
    Report { path: PathBuf },
}

#[derive(Args)]
struct CheckArgs {
    /// JSON config file; flags below override its keys.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Builtin name (A1, A2, A3, D4, KM2_a2, KM2_a3) or a JSON gram matrix.
    #[arg(long)]
    lattice: Option<String>,
    /// "symbolic" or "rational:p/q".
    #[arg(long)]
    scalar: Option<String>,
    /// Source-state degree cap D_src.
    #[arg(long)]
    degree: Option<i64>,
    /// Mode window M (|m|, |n| <= M).
    #[arg(long)]
    modes: Option<i64>,
    /// Suite name; repeatable.
    #[arg(long = "suite")]
    suites: Vec<String>,
    /// Report output path.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Negative control: none, vertex-coeff, heis-half, cocycle-sign.
    #[arg(long, default_value = "none")]
    perturb: String,
}

#[derive(Args)]
struct ExpandArgs {
    /// One of: G, qpow, twisted_qpow.
    series: String,
    #[arg(long, default_value_t = 0)]
    pairing: i64,
    #[arg(long, default_value_t = 0)]
    r: i64,
    #[arg(long, default_value_t = 8)]
    order: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct StateArgs {
    #[arg(long, default_value = "A1")]
    lattice: String,
    #[arg(long)]
    degree: i64,
    /// Group-sector label as comma-separated coordinates.
    #[arg(long)]
    beta: Option<String>,
}

/// File-backed configuration; flags override individual keys.
#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RunConfig {
    lattice: Option<serde_json::Value>,
    scalar: Option<serde_json::Value>,
    degree: Option<i64>,
    modes: Option<i64>,
    suites: Option<Vec<String>>,
    out: Option<String>,
}

fn parse_lattice(spec: &str) -> Result<Lattice, Error> {
    if spec.trim_start().starts_with('[') {
        let gram: Vec<Vec<i64>> = serde_json::from_str(spec)
            .map_err(|e| Error::InvalidConfig(format!("gram matrix: {e}")))?;
        Lattice::new(gram)
    } else {
        Lattice::builtin(spec)
    }
}

fn parse_scalar(spec: &str) -> Result<ScalarCtx, Error> {
    if spec == "symbolic" {
        return Ok(ScalarCtx::Symbolic);
    }
    if let Some(frac) = spec.strip_prefix("rational:") {
        let v0 = parse_fraction(frac)?;
        return ScalarCtx::numeric(v0);
    }
    Err(Error::InvalidConfig(format!(
        "scalar mode '{spec}' (expected 'symbolic' or 'rational:p/q')"
    )))
}

fn parse_fraction(s: &str) -> Result<BigRational, Error> {
    let bad = |_| Error::InvalidConfig(format!("rational point '{s}'"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(bad)?;
            let q = BigInt::from_str(q.trim()).map_err(bad)?;
            if q == BigInt::from(0) {
                return Err(Error::InvalidConfig(format!("rational point '{s}'")));
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(
            BigInt::from_str(s.trim()).map_err(bad)?,
        )),
    }
}

fn parse_perturbation(s: &str) -> Result<Perturbation, Error> {
    match s {
        "none" => Ok(Perturbation::None),
        "vertex-coeff" => Ok(Perturbation::VertexCoeff),
        "heis-half" => Ok(Perturbation::HeisHalf),
        "cocycle-sign" => Ok(Perturbation::CocycleSign),
        _ => Err(Error::InvalidConfig(format!("perturbation '{s}'"))),
    }
}

fn scalar_from_value(v: &serde_json::Value) -> Result<ScalarCtx, Error> {
    match v {
        serde_json::Value::String(s) => parse_scalar(s),
        serde_json::Value::Object(m) => match m.get("rational") {
            Some(serde_json::Value::String(f)) => ScalarCtx::numeric(parse_fraction(f)?),
            _ => Err(Error::InvalidConfig("scalar object needs 'rational'".into())),
        },
        _ => Err(Error::InvalidConfig("invalid scalar mode".into())),
    }
}

fn run_check(args: &CheckArgs) -> Result<bool, Error> {
    let file_cfg: RunConfig = match &args.config {
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| Error::InvalidConfig(format!("config {}: {e}", p.display())))?;
            serde_json::from_str(&text)
                .map_err(|e| Error::InvalidConfig(format!("config {}: {e}", p.display())))?
        }
        None => RunConfig::default(),
    };

    let lattice_spec = match (&args.lattice, &file_cfg.lattice) {
        (Some(s), _) => s.clone(),
        (None, Some(serde_json::Value::String(s))) => s.clone(),
        (None, Some(v @ serde_json::Value::Array(_))) => v.to_string(),
        (None, Some(_)) => return Err(Error::InvalidConfig("invalid lattice value".into())),
        (None, None) => "A1".to_string(),
    };
    let lattice = Arc::new(parse_lattice(&lattice_spec)?);

    let ctx = match (&args.scalar, &file_cfg.scalar) {
        (Some(s), _) => parse_scalar(s)?,
        (None, Some(v)) => scalar_from_value(v)?,
        (None, None) => ScalarCtx::Symbolic,
    };

    let degree = args.degree.or(file_cfg.degree).unwrap_or(3);
    let modes = args.modes.or(file_cfg.modes).unwrap_or(3);
    if degree < 0 || modes < 0 {
        return Err(Error::InvalidConfig(format!(
            "degree {degree} and modes {modes} must be nonnegative"
        )));
    }
    let suite_names = if !args.suites.is_empty() {
        args.suites.clone()
    } else {
        file_cfg
            .suites
            .unwrap_or_else(|| vec!["heis".into(), "qseries".into(), "delta".into()])
    };
    let known = suites();
    for s in &suite_names {
        if s != "hopf" && !known.contains_key(s.as_str()) {
            return Err(Error::InvalidConfig(format!("unknown suite '{s}'")));
        }
    }
    let out = args
        .out
        .clone()
        .or_else(|| file_cfg.out.map(PathBuf::from));

    let window = CheckWindow::new(degree, modes);
    let cfg = config_for(lattice.clone(), ctx, &window)
        .with_perturbation(parse_perturbation(&args.perturb)?);

    let mut checks: Vec<RelationReport> = Vec::new();
    let mut hopf_reports: Vec<hopf::HopfReport> = Vec::new();
    for name in &suite_names {
        if name == "hopf" {
            for g in hopf::generators(lattice.rank()) {
                hopf_reports.push(hopf::coassoc_check(&g));
                hopf_reports.push(hopf::counit_check(&g));
            }
            continue;
        }
        checks.extend(run_suite(&cfg, name, &window)?);
    }

    let config_echo = serde_json::json!({
        "lattice": lattice_spec,
        "scalar": match &cfg.ctx {
            ScalarCtx::Symbolic => "symbolic".to_string(),
            ScalarCtx::Numeric(v0) => format!("rational:{v0}"),
        },
        "degree": degree,
        "modes": modes,
        "suites": suite_names,
        "perturbation": args.perturb,
    });
    let hopf_ok = hopf_reports.iter().all(|r| r.passed());
    let report = ReportFile::new(config_echo, checks);
    for c in &report.checks {
        println!("{:16} {} cells={} ms={}", c.id, c.status, c.cells, c.millis);
        if let Some(w) = &c.witness {
            println!("  witness: state={} modes={:?}", w.state, w.modes);
            println!("    lhs = {}", w.lhs);
            println!("    rhs = {}", w.rhs);
        }
    }
    for h in &hopf_reports {
        println!("HOPF {:8} {:24} {}", h.axiom, h.generator, h.status);
        if let Some(m) = &h.mismatch {
            println!("  mismatch: {m}");
        }
    }
    println!(
        "summary: {}/{} relation checks passed{}",
        report.summary.passed,
        report.summary.total,
        if hopf_reports.is_empty() {
            String::new()
        } else {
            format!(
                ", {}/{} hopf axioms passed",
                hopf_reports.iter().filter(|r| r.passed()).count(),
                hopf_reports.len()
            )
        }
    );
    if let Some(path) = out {
        let mut value = serde_json::to_value(&report)
            .map_err(|e| Error::InvalidConfig(format!("serialize: {e}")))?;
        if !hopf_reports.is_empty() {
            value["hopf"] = serde_json::to_value(&hopf_reports)
                .map_err(|e| Error::InvalidConfig(format!("serialize: {e}")))?;
        }
        let text = serde_json::to_string_pretty(&value)
            .map_err(|e| Error::InvalidConfig(format!("serialize: {e}")))?;
        std::fs::write(&path, text + "\n")
            .map_err(|e| Error::InvalidConfig(format!("write {}: {e}", path.display())))?;
    }
    Ok(report.all_passed() && hopf_ok)
}

fn run_expand(args: &ExpandArgs) -> Result<(), Error> {
    let ctx = ScalarCtx::Symbolic;
    let (label, series) = match args.series.as_str() {
        "G" => (
            format!("G(pairing={})", args.pairing),
            qseries::g_series(&ctx, args.pairing, args.order),
        ),
        "qpow" => (format!("qpow(r={})", args.r), qseries::qpow(&ctx, args.r, args.order)),
        "twisted_qpow" => (
            format!("twisted_qpow(r={})", args.r),
            qseries::twisted_qpow(&ctx, args.r, args.order),
        ),
        other => return Err(Error::InvalidConfig(format!("unknown series '{other}'"))),
    };
    if args.json {
        let coeffs: Vec<String> = (0..=args.order as i64)
            .map(|k| series.coeff_checked(k).to_string())
            .collect();
        let v = serde_json::json!({ "series": label, "order": args.order, "coefficients": coeffs });
        println!("{}", serde_json::to_string_pretty(&v).unwrap());
    } else {
        println!("{label}, coefficients in v:");
        for k in 0..=args.order as i64 {
            println!("  c{k} = {}", series.coeff_checked(k));
        }
    }
    Ok(())
}

fn run_state(args: &StateArgs) -> Result<(), Error> {
    let lattice = Arc::new(parse_lattice(&args.lattice)?);
    let beta = match &args.beta {
        Some(s) => {
            let coords: Result<Vec<i64>, _> =
                s.split(',').map(|c| i64::from_str(c.trim())).collect();
            LatticeVector::new(
                coords.map_err(|e| Error::InvalidConfig(format!("beta '{s}': {e}")))?,
            )
        }
        None => lattice.zero(),
    };
    let cfg = qcurrents::fock::FockConfig::new(lattice, ScalarCtx::Symbolic, args.degree.max(0));
    let states = cfg.basis(args.degree, &beta)?;
    for s in &states {
        println!("{s}");
    }
    println!("dimension: {}", states.len());
    Ok(())
}

fn run_report(path: &PathBuf) -> Result<bool, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidConfig(format!("report {}: {e}", path.display())))?;
    let v: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| Error::InvalidConfig(format!("report {}: {e}", path.display())))?;
    let empty = Vec::new();
    let checks = v["checks"].as_array().unwrap_or(&empty);
    for c in checks {
        println!(
            "{:16} {} cells={}",
            c["id"].as_str().unwrap_or("?"),
            c["status"].as_str().unwrap_or("?"),
            c["cells"]
        );
    }
    let failed = v["summary"]["failed"].as_u64().unwrap_or(0);
    println!(
        "summary: {} total, {} failed",
        v["summary"]["total"], failed
    );
    Ok(failed == 0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.cmd {
        Cmd::Check(args) => run_check(args),
        Cmd::Expand(args) => run_expand(args).map(|()| true),
        Cmd::State(args) => run_state(args).map(|()| true),
        Cmd::Report { path } => run_report(path),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e @ Error::CapOverflow { .. }) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
