//! Command-line front end.
//!
//! Exit codes: 0 success, 1 data or IO error, 2 usage or configuration error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use latentiv::corpus::{run_benchmark, ExclusionList};
use latentiv::io::{load_pair, write_sample};
use latentiv::pcurve::{curve_csv, run_pcurve};
use latentiv::report::{write_report, EnsembleSummary, InferOutput};
use latentiv_core::inference::{decide, ensemble_infer, gather_evidence};
use latentiv_core::synthetic::{generate, Scenario, ScmParams, Setting};
use latentiv_core::{Config, DecisionMode, RngStream, TestKind};
use log::info;

#[derive(Parser)]
#[command(name = "latentiv", version, about = "Causal direction between two variables via clustered latent instruments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Infer the causal direction of a two-column data file.
    Infer {
        input: PathBuf,
        #[command(flatten)]
        opts: ConfigArgs,
        /// Write the JSON verdict here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a synthetic sample and its latent variables.
    Simulate {
        #[arg(long, value_enum)]
        scenario: ScenarioArg,
        #[arg(long, value_enum)]
        setting: SettingArg,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output directory.
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the cause-effect pairs benchmark on a corpus directory.
    Benchmark {
        corpus: PathBuf,
        #[command(flatten)]
        opts: ConfigArgs,
        /// Exclusion list file (one id per line); defaults to the multivariate v1.0 pairs.
        #[arg(long)]
        exclusions: Option<PathBuf>,
        /// Output directory for report.json and report.csv.
        #[arg(long)]
        out: PathBuf,
    },
    /// p-values of the instrument tests against the sample size on simulated data.
    Pcurve {
        #[arg(long, value_enum)]
        scenario: ScenarioArg,
        #[arg(long, value_enum)]
        setting: SettingArg,
        /// Ascending sample sizes, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        n_grid: Vec<usize>,
        #[arg(long, default_value_t = 10)]
        replicates: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output CSV file.
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args, Clone)]
struct ConfigArgs {
    #[arg(long, default_value_t = 15)]
    k_clusters: usize,
    #[arg(long, default_value_t = 0.05)]
    alpha: f64,
    #[arg(long, default_value_t = 10)]
    folds: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Decision mode; `infer` defaults to strict, `benchmark` to forced.
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    #[arg(long, value_enum, default_value_t = TestArg::Cor)]
    test: TestArg,
    #[arg(long)]
    no_standardize: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Strict,
    Forced,
}

#[derive(Clone, Copy, ValueEnum)]
enum TestArg {
    Cor,
    Mi,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScenarioArg {
    Chain,
    Confounded,
}

#[derive(Clone, Copy, ValueEnum)]
enum SettingArg {
    Discrete,
    Continuous,
}

impl From<ScenarioArg> for Scenario {
    fn from(s: ScenarioArg) -> Self {
        match s {
            ScenarioArg::Chain => Scenario::Chain,
            ScenarioArg::Confounded => Scenario::Confounded,
        }
    }
}

impl From<SettingArg> for Setting {
    fn from(s: SettingArg) -> Self {
        match s {
            SettingArg::Discrete => Setting::DiscreteBinary,
            SettingArg::Continuous => Setting::ContinuousGaussian,
        }
    }
}

/// Errors that map to exit code 2.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
struct UsageError(String);

impl ConfigArgs {
    fn resolve(&self, default_mode: DecisionMode) -> Result<Config, UsageError> {
        let cfg = Config {
            k_clusters: self.k_clusters,
            alpha: self.alpha,
            n_folds: self.folds,
            seed: self.seed,
            test_kind: match self.test {
                TestArg::Cor => TestKind::PartialCorrelation,
                TestArg::Mi => TestKind::ConditionalMutualInformation,
            },
            standardize: !self.no_standardize,
            decision_mode: match self.mode {
                Some(ModeArg::Strict) => DecisionMode::StrictTree,
                Some(ModeArg::Forced) => DecisionMode::ForcedChoice,
                None => default_mode,
            },
            ..Config::default()
        };
        cfg.validate().map_err(|e| UsageError(e.to_string()))?;
        info!("resolved configuration: {}", serde_json::to_string(&cfg).unwrap_or_default());
        Ok(cfg)
    }
}

fn write_or_print(out: Option<&Path>, body: &str) -> anyhow::Result<()> {
    match out {
        Some(p) => std::fs::write(p, body).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn cmd_infer(input: &Path, cfg: &Config, out: Option<&Path>) -> anyhow::Result<()> {
    let data = load_pair(input)?;
    let rng = RngStream::new(cfg.seed);
    let evidence = gather_evidence(&data, cfg, &rng)?;
    let (direction, ensemble) = if cfg.n_folds > 1 {
        let e = ensemble_infer(&data, cfg, &rng)?;
        (e.majority, Some(EnsembleSummary::from(&e)))
    } else {
        (decide(&data, cfg, &rng)?.direction, None)
    };
    let output = InferOutput {
        direction,
        p_y_indep_ix_given_x: evidence.p_y_indep_ix_given_x,
        p_x_indep_iy_given_y: evidence.p_x_indep_iy_given_y,
        p_difference: evidence.p_x_indep_iy_given_y - evidence.p_y_indep_ix_given_x,
        ensemble,
        config: cfg.clone(),
    };
    write_or_print(out, &(serde_json::to_string_pretty(&output)? + "\n"))
}

fn cmd_simulate(scenario: Scenario, setting: Setting, n: usize, seed: u64, out: &Path) -> anyhow::Result<()> {
    let sample = generate(scenario, setting, n, &ScmParams::default(), &RngStream::new(seed))?;
    let manifest = write_sample(out, &sample, seed).with_context(|| format!("writing into {}", out.display()))?;
    println!("{}", serde_json::to_string_pretty(&manifest)?);
    Ok(())
}

fn cmd_benchmark(corpus: &Path, cfg: &Config, exclusions: Option<&Path>, out: &Path) -> anyhow::Result<()> {
    let exclusions = match exclusions {
        Some(p) => ExclusionList::from_file(p)?,
        None => ExclusionList::multivariate_default(),
    };
    let report = run_benchmark(corpus, cfg, &RngStream::new(cfg.seed), &exclusions)?;
    write_report(&report, out)?;
    println!("weighted_accuracy {:.4}", report.weighted_accuracy);
    println!("unweighted_accuracy {:.4}", report.unweighted_accuracy);
    println!("pairs {} excluded {}", report.per_pair.len(), report.excluded.len());
    Ok(())
}

fn cmd_pcurve(scenario: Scenario, setting: Setting, grid: &[usize], replicates: usize, seed: u64, out: &Path) -> anyhow::Result<()> {
    let rows = run_pcurve(scenario, setting, grid, replicates, seed, &ScmParams::default())?;
    std::fs::write(out, curve_csv(&rows)?).with_context(|| format!("writing {}", out.display()))?;
    println!("{} rows written to {}", rows.len(), out.display());
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Infer { input, opts, out } => {
            let cfg = opts.resolve(DecisionMode::StrictTree)?;
            cmd_infer(&input, &cfg, out.as_deref())
        }
        Command::Simulate { scenario, setting, n, seed, out } => {
            if n == 0 {
                return Err(UsageError("--n must be positive".into()).into());
            }
            cmd_simulate(scenario.into(), setting.into(), n, seed, &out)
        }
        Command::Benchmark { corpus, opts, exclusions, out } => {
            let cfg = opts.resolve(DecisionMode::ForcedChoice)?;
            cmd_benchmark(&corpus, &cfg, exclusions.as_deref(), &out)
        }
        Command::Pcurve { scenario, setting, n_grid, replicates, seed, out } => {
            if n_grid.contains(&0) || n_grid.windows(2).any(|w| w[0] >= w[1]) {
                return Err(UsageError("--n-grid must be ascending positive integers".into()).into());
            }
            if replicates == 0 {
                return Err(UsageError("--replicates must be positive".into()).into());
            }
            cmd_pcurve(scenario.into(), setting.into(), &n_grid, replicates, seed, &out)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.is::<UsageError>() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
