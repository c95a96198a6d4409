//! Command-line harness: reproducible suite runs, functional evaluation on
//! user matrices, instance generation and adversarial search.
//!
//! Exit codes: 0 all pass, 1 at least one fail verdict, 2 usage,
//! 3 I/O, 4 domain.

use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use opentropy::entropy::{
    f_divergence, furuta_entropy, generalized_entropy_term, natural_power_mean, perspective,
    relative_operator_entropy, OperatorTuple,
};
use opentropy::gen::{
    generate_thm28_pair, random_doubly_stochastic, random_hpd, random_resolution_of_identity,
    random_weight_function, trial_rng, THM28_DEFAULT_BUDGET,
};
use opentropy::matrix::MatrixJson;
use opentropy::suites::{
    adversarial_search, battery_configs, run_suite, SearchConfig, SuiteConfig, SuiteId,
    SuiteReport,
};
use opentropy::{Error, HermitianMatrix, ScalarFunction, ToleranceConfig};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_IO: u8 = 3;
const EXIT_DOMAIN: u8 = 4;

#[derive(Parser)]
#[command(
    name = "opentropy",
    version,
    about = "Operator entropy functionals and randomized certification of their inequalities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one inequality suite (or the full battery) and report slacks.
    Check(CheckArgs),
    /// Evaluate an entropy functional on matrices read from JSON files.
    Compute(ComputeArgs),
    /// Emit a reproducible generated object as JSON.
    Gen(GenArgs),
    /// Hunt for worst-case instances by slack minimization.
    Search(SearchArgs),
    /// List suites and scalar functions.
    Catalog,
}

#[derive(Args)]
struct CommonParams {
    /// Matrix dimension.
    #[arg(long)]
    dim: Option<usize>,
    /// Tuple length.
    #[arg(long)]
    n: Option<usize>,
    /// Power-mean parameter p.
    #[arg(long)]
    p: Option<f64>,
    /// Entropy / interpolation parameter q.
    #[arg(long)]
    q: Option<f64>,
    /// Shift point t0.
    #[arg(long)]
    t0: Option<f64>,
    /// Scalar function: log | pow_<r> | ratio | log1p | neg_entropy | identity.
    #[arg(long)]
    f: Option<String>,
    /// Positive map kind for the Jensen suites.
    #[arg(long)]
    map_kind: Option<String>,
    /// Override for the order tolerance (also settable via OPENTROPY_TOL).
    #[arg(long)]
    tol_order: Option<f64>,
}

impl CommonParams {
    fn apply(&self, cfg: &mut SuiteConfig) -> Result<(), Error> {
        if let Some(d) = self.dim {
            cfg.dim = d;
        }
        if let Some(n) = self.n {
            cfg.n = n;
        }
        if let Some(p) = self.p {
            cfg.p = p;
        }
        if let Some(q) = self.q {
            cfg.q = q;
        }
        if let Some(t0) = self.t0 {
            cfg.t0 = t0;
        }
        if let Some(f) = &self.f {
            ScalarFunction::lookup(f)?; // validate before any work starts
            cfg.function = f.clone();
        }
        if let Some(k) = &self.map_kind {
            cfg.map_kind = k.clone();
        }
        if let Some(t) = self.tol_order {
            cfg.tol = cfg.tol.with_order_tol(t);
        } else if let Some(t) = env_tol()? {
            cfg.tol = cfg.tol.with_order_tol(t);
        }
        cfg.tol.validate()?;
        Ok(())
    }
}

fn env_tol() -> Result<Option<f64>, Error> {
    match std::env::var("OPENTROPY_TOL") {
        Ok(v) => v
            .parse::<f64>()
            .map(Some)
            .map_err(|_| Error::InvalidKind(format!("OPENTROPY_TOL is not a number: {v}"))),
        Err(_) => Ok(None),
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Jsonl,
    Json,
    CsvSummary,
}

#[derive(Args)]
struct CheckArgs {
    /// Suite id, or "all" for the full battery.
    #[arg(long, default_value = "all")]
    suite: String,
    /// Trials per suite configuration.
    #[arg(long, default_value_t = 200)]
    trials: u64,
    /// Master seed.
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[command(flatten)]
    params: CommonParams,
    /// Rayon thread count (defaults to all cores).
    #[arg(long)]
    threads: Option<usize>,
    /// Output file for trial records (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output file for the summary (appended to the record stream when omitted).
    #[arg(long)]
    summary_out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Jsonl)]
    format: OutputFormat,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Functional {
    NaturalPowerMean,
    RelativeEntropy,
    Furuta,
    Generalized,
    Perspective,
    Divergence,
}

#[derive(Args)]
struct ComputeArgs {
    #[arg(long, value_enum)]
    functional: Functional,
    /// First operand file(s); divergence takes one per tuple entry.
    #[arg(long = "a", required = true)]
    a: Vec<PathBuf>,
    /// Second operand file(s).
    #[arg(long = "b", required = true)]
    b: Vec<PathBuf>,
    #[arg(long, default_value_t = 0.5)]
    q: f64,
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    #[arg(long, default_value = "log")]
    f: String,
    #[arg(long)]
    tol_order: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GenArgs {
    /// resolution | doubly-stochastic | hpd | weight-function | pair-e111
    #[arg(long)]
    object: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Trial index, so any recorded trial can be regenerated exactly.
    #[arg(long, default_value_t = 0)]
    trial: u64,
    #[arg(long, default_value_t = 3)]
    n: usize,
    #[arg(long, default_value_t = 3)]
    dim: usize,
    /// Permutation count for doubly stochastic matrices.
    #[arg(long, default_value_t = 4)]
    k: usize,
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    suite: String,
    /// Total evaluation budget, split across restarts.
    #[arg(long, default_value_t = 1600)]
    budget: u64,
    #[arg(long, default_value_t = 8)]
    restarts: u64,
    #[arg(long, default_value_t = 0.05)]
    step_scale: f64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[command(flatten)]
    params: CommonParams,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Check(args) => cmd_check(args),
        Command::Compute(args) => cmd_compute(args),
        Command::Gen(args) => cmd_gen(args),
        Command::Search(args) => cmd_search(args),
        Command::Catalog => cmd_catalog(),
    };
    match code {
        Ok(c) => ExitCode::from(c),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::UnknownSuite(_)
        | Error::UnknownFunction(_)
        | Error::InvalidKind(_)
        | Error::ParameterOutOfRange { .. } => EXIT_USAGE,
        Error::DomainViolation { .. } | Error::NotStrictlyPositive { .. } => EXIT_DOMAIN,
        _ => EXIT_IO,
    }
}

fn parse_suite(s: &str) -> Result<SuiteId, Error> {
    SuiteId::from_str(s).map_err(|e| {
        let list: Vec<&str> = SuiteId::all().iter().map(|id| id.as_str()).collect();
        eprintln!("available suites: {}", list.join(", "));
        e
    })
}

fn write_out(path: &Option<PathBuf>, content: &str) -> Result<(), Error> {
    match path {
        Some(p) => fs::write(p, content).map_err(Error::from),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(content.as_bytes()).map_err(Error::from)
        }
    }
}

#[derive(Serialize)]
struct RunHeader<'a> {
    schema: &'a str,
    timestamp_unix: u64,
    master_seed: u64,
    suites: usize,
}

fn cmd_check(args: CheckArgs) -> Result<u8, Error> {
    let mut configs = if args.suite == "all" {
        battery_configs(args.seed, args.trials)
    } else {
        let mut cfg = SuiteConfig::new(parse_suite(&args.suite)?);
        cfg.master_seed = args.seed;
        cfg.trials = args.trials;
        vec![cfg]
    };
    for cfg in &mut configs {
        args.params.apply(cfg)?;
    }

    let run_all = |configs: &[SuiteConfig]| -> Vec<SuiteReport> {
        configs.iter().map(run_suite).collect()
    };
    let reports = match args.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| Error::InvalidKind(e.to_string()))?
            .install(|| run_all(&configs)),
        None => run_all(&configs),
    };

    let fails: u64 = reports.iter().map(|r| r.summary.fail).sum();
    let errors: u64 = reports.iter().map(|r| r.summary.error).sum();

    match args.format {
        OutputFormat::Jsonl => {
            let header = RunHeader {
                schema: "opentropy.report/1",
                timestamp_unix: SystemTime::now()
                    .duration_since(UNIX_EPOCH)
                    .map(|d| d.as_secs())
                    .unwrap_or(0),
                master_seed: args.seed,
                suites: configs.len(),
            };
            let mut body = serde_json::to_string(&header)?;
            body.push('\n');
            for report in &reports {
                for record in &report.records {
                    body.push_str(&serde_json::to_string(record)?);
                    body.push('\n');
                }
            }
            let summaries: Vec<_> = reports.iter().map(|r| &r.summary).collect();
            let summary_json = serde_json::to_string(&summaries)?;
            match &args.summary_out {
                Some(p) => {
                    fs::write(p, summary_json + "\n")?;
                }
                None => {
                    body.push_str(&summary_json);
                    body.push('\n');
                }
            }
            write_out(&args.out, &body)?;
        }
        OutputFormat::Json => {
            let doc = serde_json::json!({ "suites": reports });
            write_out(&args.out, &(serde_json::to_string_pretty(&doc)? + "\n"))?;
        }
        OutputFormat::CsvSummary => {
            let mut csv = String::from(
                "suite_id,params,trials,records,pass,fail,hypothesis_unmet,error,worst_slack_min_eig\n",
            );
            for r in &reports {
                let s = &r.summary;
                csv.push_str(&format!(
                    "{},\"{}\",{},{},{},{},{},{},{:e}\n",
                    s.suite_id,
                    r.params,
                    s.trials,
                    s.records,
                    s.pass,
                    s.fail,
                    s.hypothesis_unmet,
                    s.error,
                    s.worst_slack_min_eig
                ));
            }
            write_out(&args.out, &csv)?;
        }
    }
    Ok(if fails > 0 || errors > 0 { EXIT_FAIL } else { 0 })
}

fn read_matrix(path: &PathBuf) -> Result<HermitianMatrix, Error> {
    let text = fs::read_to_string(path)?;
    let json: MatrixJson = serde_json::from_str(&text)?;
    json.to_matrix()
}

fn cmd_compute(args: ComputeArgs) -> Result<u8, Error> {
    let mut tol = ToleranceConfig::default();
    if let Some(t) = args.tol_order.map(Ok).or_else(|| env_tol().transpose()) {
        tol = tol.with_order_tol(t?);
    }
    tol.validate()?;
    let f = ScalarFunction::lookup(&args.f)?;
    let need_single = !matches!(args.functional, Functional::Divergence);
    if need_single && (args.a.len() != 1 || args.b.len() != 1) {
        return Err(Error::InvalidKind(
            "this functional takes exactly one --a and one --b".to_string(),
        ));
    }
    let result = match args.functional {
        Functional::NaturalPowerMean => {
            natural_power_mean(&read_matrix(&args.a[0])?, &read_matrix(&args.b[0])?, args.q, &tol)?
        }
        Functional::RelativeEntropy => {
            relative_operator_entropy(&read_matrix(&args.a[0])?, &read_matrix(&args.b[0])?, &tol)?
        }
        Functional::Furuta => {
            furuta_entropy(&read_matrix(&args.a[0])?, &read_matrix(&args.b[0])?, args.p, &tol)?
        }
        Functional::Generalized => generalized_entropy_term(
            &read_matrix(&args.a[0])?,
            &read_matrix(&args.b[0])?,
            args.q,
            &f,
            &tol,
        )?,
        Functional::Perspective => {
            perspective(&read_matrix(&args.b[0])?, &read_matrix(&args.a[0])?, &f, &tol)?
        }
        Functional::Divergence => {
            if args.a.len() != args.b.len() {
                return Err(Error::LengthMismatch {
                    left: args.a.len(),
                    right: args.b.len(),
                });
            }
            let tuple_a = OperatorTuple::new(
                args.a.iter().map(read_matrix).collect::<Result<_, _>>()?,
                &tol,
            )?;
            let bs: Vec<HermitianMatrix> =
                args.b.iter().map(read_matrix).collect::<Result<_, _>>()?;
            f_divergence(&bs, &tuple_a, &f, &tol)?
        }
    };
    let json = serde_json::to_string_pretty(&MatrixJson::from_matrix(&result))? + "\n";
    write_out(&args.out, &json)?;
    Ok(0)
}

fn cmd_gen(args: GenArgs) -> Result<u8, Error> {
    let tol = ToleranceConfig::default();
    let mut rng = trial_rng(args.seed, &format!("gen:{}", args.object), args.trial);
    let json = match args.object.as_str() {
        "resolution" => {
            let t = random_resolution_of_identity(args.n, args.dim, &mut rng, &tol)?;
            let mats: Vec<MatrixJson> = t.entries().iter().map(MatrixJson::from_matrix).collect();
            serde_json::json!({ "object": "resolution", "matrices": mats })
        }
        "doubly-stochastic" => {
            let m = random_doubly_stochastic(args.n, args.k, &mut rng);
            serde_json::json!({ "object": "doubly-stochastic", "entries": m.entries })
        }
        "hpd" => {
            let m = random_hpd(args.dim, (0.5, 2.0), &mut rng);
            serde_json::json!({ "object": "hpd", "matrix": MatrixJson::from_matrix(&m) })
        }
        "weight-function" => {
            let w = random_weight_function(args.n, args.n, &mut rng)?;
            serde_json::json!({ "object": "weight-function", "mu": w.mu, "lambda": w.lambda, "omega": w.omega })
        }
        "pair-e111" => {
            let (a, b, stats) =
                generate_thm28_pair(args.dim, args.p, &mut rng, &tol, THM28_DEFAULT_BUDGET)?;
            serde_json::json!({
                "object": "pair-e111",
                "a": MatrixJson::from_matrix(&a),
                "b": MatrixJson::from_matrix(&b),
                "attempts": stats.attempts,
            })
        }
        other => {
            return Err(Error::InvalidKind(format!(
                "unknown object `{other}`; expected resolution | doubly-stochastic | hpd | weight-function | pair-e111"
            )))
        }
    };
    write_out(&args.out, &(serde_json::to_string_pretty(&json)? + "\n"))?;
    Ok(0)
}

fn cmd_search(args: SearchArgs) -> Result<u8, Error> {
    let mut cfg = SuiteConfig::new(parse_suite(&args.suite)?);
    cfg.master_seed = args.seed;
    args.params.apply(&mut cfg)?;
    let restarts = args.restarts.max(1);
    let search = SearchConfig {
        restarts,
        steps: (args.budget / restarts).max(1),
        step_scale: args.step_scale,
    };
    let report = adversarial_search(&cfg, &search)?;
    let violation = report.hypothesis_satisfied
        && report.final_slack_min_eig < -cfg.tol.tol_order;
    write_out(&args.out, &(serde_json::to_string_pretty(&report)? + "\n"))?;
    Ok(if violation { EXIT_FAIL } else { 0 })
}

fn cmd_catalog() -> Result<u8, Error> {
    let mut out = String::from("suites:\n");
    for id in SuiteId::all() {
        out.push_str(&format!("  {:<12} {}\n", id.as_str(), id.describe()));
    }
    out.push_str("\nscalar functions (monotone / concave / nonnegative):\n");
    for f in ScalarFunction::catalog() {
        out.push_str(&format!(
            "  {:<12} {} / {} / {}\n",
            f.name(),
            f.is_operator_monotone(),
            f.is_operator_concave(),
            f.is_nonnegative_on_domain()
        ));
    }
    write_out(&None, &out)?;
    Ok(0)
}
