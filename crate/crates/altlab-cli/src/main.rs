//! Batch front-end: falsification campaigns (`check`), tightness probes
//! (`probe`), and single-case evaluation or witness replay (`case`).
//!
//! Exit status: 0 on success with no proven-regime violations, 1 when a
//! campaign records a violation outside exploratory cells, 2 on usage,
//! config, or parse errors.

use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};

use altlab::campaign::{run_campaign, CampaignConfig, OutputFormat};
use altlab::ineq::{evaluate_raw, IneqId, IneqParams, InputClass};
use altlab::matfile::{read_matrix, MatrixKind, WitnessFile};
use altlab::norms::SchattenIndex;
use altlab::probe::probe_tightness;

#[derive(Parser)]
#[command(name = "altlab", version, about = "Trace-inequality laboratory: campaigns, probes, single cases")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a seeded falsification campaign over a parameter grid.
    Check(CheckArgs),
    /// Hill-climb toward the tight edge of one inequality; write a witness.
    Probe(ProbeArgs),
    /// Evaluate one inequality on matrix files, or replay a witness file.
    Case(CaseArgs),
}

#[derive(Args)]
struct CheckArgs {
    /// Inequalities to run: "all" or comma-separated names.
    #[arg(long, default_value = "all", value_delimiter = ',')]
    ineq: Vec<String>,
    /// Dimensions, comma-separated.
    #[arg(long, value_delimiter = ',')]
    dims: Option<Vec<usize>>,
    /// r grid.
    #[arg(long, value_delimiter = ',')]
    r: Option<Vec<f64>>,
    /// q grid.
    #[arg(long, value_delimiter = ',')]
    q: Option<Vec<f64>>,
    /// Schatten index grid; "inf" allowed.
    #[arg(long, value_delimiter = ',')]
    p: Option<Vec<String>>,
    /// Interpolation-exponent grid for the t-family.
    #[arg(long, value_delimiter = ',')]
    t: Option<Vec<f64>>,
    /// Upper spectrum bound for spectrum-bounded cells.
    #[arg(long)]
    a: Option<f64>,
    /// Lower spectrum bound for spectrum-bounded cells.
    #[arg(long)]
    b: Option<f64>,
    /// Samples per cell.
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, env = "ALTLAB_SEED", default_value_t = 42)]
    seed: u64,
    /// Violation tolerance on relative slack.
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// Output format: jsonl or csv.
    #[arg(long, default_value = "jsonl")]
    format: String,
    /// Report file path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ProbeArgs {
    /// Inequality to probe.
    #[arg(long)]
    ineq: String,
    /// Dimension of the probed inputs.
    #[arg(long, default_value_t = 3)]
    dims: usize,
    #[arg(long)]
    r: Option<f64>,
    #[arg(long)]
    q: Option<f64>,
    #[arg(long)]
    p: Option<String>,
    #[arg(long)]
    t: Option<f64>,
    #[arg(long)]
    a: Option<f64>,
    #[arg(long)]
    b: Option<f64>,
    /// Iteration budget.
    #[arg(long, default_value_t = 20000)]
    budget: u64,
    #[arg(long, env = "ALTLAB_SEED", default_value_t = 42)]
    seed: u64,
    /// Witness file path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CaseArgs {
    /// One witness file to replay, or two matrix files (A then B).
    #[arg(required = true)]
    files: Vec<PathBuf>,
    /// Inequality to evaluate (required with two matrix files).
    #[arg(long)]
    ineq: Option<String>,
    #[arg(long)]
    r: Option<f64>,
    #[arg(long)]
    q: Option<f64>,
    #[arg(long)]
    p: Option<String>,
    #[arg(long)]
    t: Option<f64>,
    #[arg(long)]
    a: Option<f64>,
    #[arg(long)]
    b: Option<f64>,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
}

fn parse_ineqs(names: &[String]) -> anyhow::Result<Vec<IneqId>> {
    if names.iter().any(|n| n == "all") {
        return Ok(IneqId::ALL.to_vec());
    }
    names
        .iter()
        .map(|n| n.parse::<IneqId>().map_err(|e| anyhow!("{e}")))
        .collect()
}

fn parse_p_grid(raw: &[String]) -> anyhow::Result<Vec<SchattenIndex>> {
    raw.iter()
        .map(|s| s.parse::<SchattenIndex>().map_err(|e| anyhow!("{e}")))
        .collect()
}

/// Merges flag overrides into the default parameter set. The Hoelder
/// exponents stay pinned at (s, t, u) = (2, 2, 1) unless --t overrides t.
fn build_params(
    id: IneqId,
    r: Option<f64>,
    q: Option<f64>,
    p: Option<&String>,
    t: Option<f64>,
    a: Option<f64>,
    b: Option<f64>,
) -> anyhow::Result<IneqParams> {
    let mut params = IneqParams::default();
    if id == IneqId::Holder {
        params.s = 2.0;
        params.t = 2.0;
        params.u = 1.0;
    }
    if let Some(v) = r {
        params.r = v;
    }
    if let Some(v) = q {
        params.q = v;
    }
    if let Some(v) = p {
        params.p = v.parse::<SchattenIndex>().map_err(|e| anyhow!("{e}"))?;
    }
    if let Some(v) = t {
        params.t = v;
    }
    if let Some(v) = a {
        params.a = v;
    }
    if let Some(v) = b {
        params.b = v;
    }
    Ok(params)
}

fn run_check(args: &CheckArgs) -> anyhow::Result<i32> {
    let defaults = CampaignConfig::default();
    let config = CampaignConfig {
        ineqs: parse_ineqs(&args.ineq)?,
        dims: args.dims.clone().unwrap_or(defaults.dims),
        r_grid: args.r.clone().unwrap_or(defaults.r_grid),
        q_grid: args.q.clone().unwrap_or(defaults.q_grid),
        p_grid: match &args.p {
            Some(raw) => parse_p_grid(raw)?,
            None => defaults.p_grid,
        },
        t_grid: args.t.clone().unwrap_or(defaults.t_grid),
        bounds: vec![(args.a.unwrap_or(2.0), args.b.unwrap_or(1.0))],
        samples: args.samples.unwrap_or(defaults.samples),
        seed: args.seed,
        tol: args.tol,
        format: args.format.parse::<OutputFormat>().map_err(|e| anyhow!("{e}"))?,
    };

    let outcome = match &args.out {
        Some(path) => {
            let file = File::create(path)
                .with_context(|| format!("cannot create {}", path.display()))?;
            let mut writer = BufWriter::new(file);
            run_campaign(&config, &mut writer)?
        }
        None => {
            let stdout = std::io::stdout();
            let mut writer = BufWriter::new(stdout.lock());
            run_campaign(&config, &mut writer)?
        }
    };

    let exploratory_total: usize = outcome.summaries.iter().map(|s| s.exploratory).sum();
    if exploratory_total > 0 {
        eprintln!(
            "== exploratory regime: {exploratory_total} record(s) probe cells outside the \
             proven t-range; violations there are informative, not errors =="
        );
    }

    eprintln!(
        "{:<20} {:>8} {:>11} {:>11} {:>15}",
        "inequality", "count", "violations", "equalities", "min rel slack"
    );
    for s in &outcome.summaries {
        let flag = if s.min_relative_slack < 1e-6 { "  !" } else { "" };
        eprintln!(
            "{:<20} {:>8} {:>11} {:>11} {:>15.3e}{}",
            s.ineq.to_string(),
            s.count,
            s.violations,
            s.equalities,
            s.min_relative_slack,
            flag
        );
    }
    eprintln!(
        "{} records, {} proven-regime violation(s)",
        outcome.records, outcome.proven_violations
    );
    Ok(if outcome.proven_violations == 0 { 0 } else { 1 })
}

fn run_probe(args: &ProbeArgs) -> anyhow::Result<i32> {
    let id: IneqId = args.ineq.parse().map_err(|e| anyhow!("{e}"))?;
    let params = build_params(id, args.r, args.q, args.p.as_ref(), args.t, args.a, args.b)?;
    if args.budget == 0 {
        bail!("--budget must be >= 1");
    }
    let witness = probe_tightness(id, &params, args.dims, args.budget, args.seed)?;
    let file = WitnessFile::from_witness(&witness);
    let text = file.to_json();
    match &args.out {
        Some(path) => std::fs::write(path, text)
            .with_context(|| format!("cannot write {}", path.display()))?,
        None => println!("{text}"),
    }
    eprintln!(
        "{}: best ratio {:.12} after budget {}{}{}",
        id,
        witness.best_ratio,
        witness.budget,
        if witness.anomaly { " [ANOMALY]" } else { "" },
        if witness.exploratory { " [exploratory]" } else { "" },
    );
    Ok(0)
}

fn expected_kinds(class: InputClass) -> (&'static str, &'static str) {
    match class {
        InputClass::PsdPair | InputClass::PsdWithSpectrumBoundedB => ("psd", "psd"),
        InputClass::GeneralPair => ("general", "general"),
        InputClass::GeneralWithPsdB => ("general", "psd"),
        InputClass::GeneralWithHermitianB => ("general", "hermitian"),
    }
}

fn check_kind(slot: &str, declared: Option<MatrixKind>, expected: &str) -> anyhow::Result<()> {
    let Some(declared) = declared else {
        return Ok(());
    };
    let ok = match expected {
        "psd" => declared == MatrixKind::Psd,
        "hermitian" => matches!(declared, MatrixKind::Hermitian | MatrixKind::Psd),
        _ => true,
    };
    if !ok {
        bail!("input {slot} declares kind incompatible with this checker; expected class: {expected}");
    }
    Ok(())
}

fn run_case(args: &CaseArgs) -> anyhow::Result<i32> {
    match args.files.len() {
        1 => replay_witness(args),
        2 => evaluate_pair(args),
        n => bail!("expected one witness file or two matrix files, got {n} paths"),
    }
}

fn evaluate_pair(args: &CaseArgs) -> anyhow::Result<i32> {
    let name = args
        .ineq
        .as_ref()
        .ok_or_else(|| anyhow!("--ineq is required with two matrix files"))?;
    let id: IneqId = name.parse().map_err(|e| anyhow!("{e}"))?;
    let params = build_params(id, args.r, args.q, args.p.as_ref(), args.t, args.a, args.b)?;

    let (ma, kind_a) = read_matrix(&args.files[0])?;
    let (mb, kind_b) = read_matrix(&args.files[1])?;
    let (exp_a, exp_b) = expected_kinds(id.input_class());
    check_kind("A", kind_a, exp_a)?;
    check_kind("B", kind_b, exp_b)?;

    let report = evaluate_raw(id, &params, &ma, &mb)?.with_tol(args.tol);
    println!("{}", serde_json::to_string_pretty(&report)?);
    eprintln!(
        "{}: verdict {} (relative slack {:.3e})",
        id, report.verdict, report.relative_slack
    );
    Ok(0)
}

fn replay_witness(args: &CaseArgs) -> anyhow::Result<i32> {
    let text = std::fs::read_to_string(&args.files[0])
        .with_context(|| format!("cannot read {}", args.files[0].display()))?;
    let witness = WitnessFile::parse(&text)?;
    let ma = witness.a.to_matrix()?;
    let mb = witness.b.to_matrix()?;
    let report = evaluate_raw(witness.ineq, &witness.params, &ma, &mb)?.with_tol(args.tol);
    let replay_ratio = report.ratio();
    let deviation = (replay_ratio - witness.best_ratio).abs();
    println!("{}", serde_json::to_string_pretty(&report)?);
    eprintln!(
        "{}: replay ratio {:.12}, witness ratio {:.12}, deviation {:.3e}",
        witness.ineq, replay_ratio, witness.best_ratio, deviation
    );
    Ok(0)
}

fn main() {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Check(args) => run_check(args),
        Command::Probe(args) => run_probe(args),
        Command::Case(args) => run_case(args),
    };
    match result {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::exit(2);
        }
    }
}
