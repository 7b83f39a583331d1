//! Thin command-line driver over the experiment runners.
//!
//! Exit codes: 0 when every check passes, 1 when any check fails,
//! 2 on input or configuration errors.

use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;
use valdist::experiments::{
    run_aald, run_ahlfors, run_cartan, run_crofton, run_fmt, run_ideal_suite, run_points_smt,
    run_symbolic_suite, run_theorem_oxk1, ExperimentConfig, Report, RunError,
};

#[derive(Parser)]
#[command(
    name = "valdist",
    version,
    about = "Value-distribution experiments for rational curves in projective space"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// JSON experiment configuration; flags below override its fields.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Seed for every stochastic component.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Output CSV path (stdout when omitted).
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Also write a JSON mirror next to the CSV output.
    #[arg(long, global = true)]
    json: bool,

    #[arg(long, global = true)]
    r_min: Option<f64>,

    #[arg(long, global = true)]
    r_max: Option<f64>,

    #[arg(long, global = true)]
    r_count: Option<usize>,

    /// Logarithmic r spacing (default true; pass false for linear).
    #[arg(long, global = true)]
    r_log: Option<bool>,

    /// Monte-Carlo sample count.
    #[arg(long, global = true)]
    samples: Option<u64>,

    /// Epsilon values for the logarithmic-derivative checks (repeatable).
    #[arg(long = "epsilon", global = true)]
    epsilons: Vec<f64>,

    /// Worker threads (affects speed only, never results).
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// First-main-theorem residual flatness over the r-grid.
    Fmt,
    /// Hyperplane second main theorem with defect sums.
    Cartan,
    /// Point-target second main theorem, corollary and theorem forms.
    PointsSmt,
    /// Ahlfors logarithmic-derivative estimate.
    Ahlfors,
    /// Algebro-geometric logarithmic-derivative check for 1-jets.
    Aald,
    /// The jet-bundle characteristic bound for 1-jets.
    TheoremOxk1,
    /// Crofton averaging constants by Monte-Carlo.
    Crofton,
    /// Exact Wronskian-algebra identity battery.
    JetSuite,
    /// Exact jet-ideal identity battery.
    IdealSuite,
}

fn load_config(cli: &Cli) -> Result<ExperimentConfig, String> {
    let mut cfg = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            ExperimentConfig::from_json(&text).map_err(|e| e.to_string())?
        }
        None => ExperimentConfig::default(),
    };
    if let Some(seed) = cli.seed {
        cfg.seed = Some(seed);
    }
    if let Some(v) = cli.r_min {
        cfg.r_min = v;
    }
    if let Some(v) = cli.r_max {
        cfg.r_max = v;
    }
    if let Some(v) = cli.r_count {
        cfg.r_count = v;
    }
    if let Some(v) = cli.r_log {
        cfg.r_log = v;
    }
    if let Some(v) = cli.samples {
        cfg.samples = v;
    }
    if !cli.epsilons.is_empty() {
        cfg.epsilons = cli.epsilons.clone();
    }
    Ok(cfg)
}

fn emit(report: &Report, cli: &Cli) -> Result<(), String> {
    let csv = report.to_csv();
    match &cli.out {
        Some(path) => {
            std::fs::write(path, &csv).map_err(|e| format!("write {}: {e}", path.display()))?;
            if cli.json {
                let json_path = path.with_extension("json");
                std::fs::write(&json_path, report.to_json())
                    .map_err(|e| format!("write {}: {e}", json_path.display()))?;
            }
        }
        None => print!("{csv}"),
    }
    for line in report.summary_lines() {
        eprintln!("{line}");
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        // Thread count only affects wall time; all reductions are ordered.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    let mut cfg = match load_config(&cli) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    cfg.experiment = match cli.command {
        Command::Fmt => "fmt",
        Command::Cartan => "cartan",
        Command::PointsSmt => "points-smt",
        Command::Ahlfors => "ahlfors",
        Command::Aald => "aald",
        Command::TheoremOxk1 => "theorem-oxk1",
        Command::Crofton => "crofton",
        Command::JetSuite => "jet-suite",
        Command::IdealSuite => "ideal-suite",
    }
    .to_string();

    let result = match cli.command {
        Command::Fmt => run_fmt(&cfg),
        Command::Cartan => run_cartan(&cfg),
        Command::PointsSmt => run_points_smt(&cfg),
        Command::Ahlfors => run_ahlfors(&cfg),
        Command::Aald => run_aald(&cfg),
        Command::TheoremOxk1 => run_theorem_oxk1(&cfg),
        Command::Crofton => run_crofton(&cfg),
        Command::JetSuite => run_symbolic_suite(&cfg),
        Command::IdealSuite => run_ideal_suite(&cfg),
    };
    match result {
        Ok(report) => {
            if let Err(e) = emit(&report, &cli) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if report.all_pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(RunError::Config(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(RunError::Input(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
