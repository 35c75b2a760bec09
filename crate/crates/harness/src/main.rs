use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mozeno_core::{exact_front_analytic, exact_front_oracle, MultiZenoConfig, ObjectiveMode, Tenths};
use mozeno_dae::StrategyWeights;
use mozeno_harness::{
    aggregate, comparison_table, load_config, load_runs, metadata_json, read_summary, run_experiment, write_run,
    Experiment, ExperimentConfig, HarnessError, InstanceSpec, StopCriterion,
};
use mozeno_moea::Scheme;

#[derive(Parser)]
#[command(name = "mozeno", version, about = "Multi-objective Divide-and-Evolve on MultiZeno instances")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write an instance file.
    Generate {
        #[command(flatten)]
        instance: InstanceArgs,
        /// Output file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the exact Pareto front as CSV.
    Front {
        #[command(flatten)]
        instance: InstanceArgs,
        /// Closed-form front (the default).
        #[arg(long, conflicts_with = "oracle")]
        analytic: bool,
        /// Exhaustive search over routings.
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a single seed.
    Run {
        #[command(flatten)]
        run: RunArgs,
        /// Seed; defaults to the configured base seed.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Run a campaign of seeds.
    Experiment {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long)]
        runs: Option<usize>,
        /// First seed of the campaign.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Summarize the runs of a campaign directory.
    Aggregate {
        #[arg(long)]
        out: PathBuf,
    },
    /// Pairwise signed-rank table of the campaigns below a directory.
    Stats {
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Cost,
    Risk,
}

#[derive(Args)]
struct InstanceArgs {
    /// Instance file; overrides --k, --mode and --alpha.
    #[arg(long)]
    instance: Option<PathBuf>,
    /// Number of bunches of three passengers [default: 1].
    #[arg(long)]
    k: Option<usize>,
    /// Second objective [default: cost].
    #[arg(long, value_enum)]
    mode: Option<Mode>,
    /// Landing tax of the middle central city.
    #[arg(long)]
    alpha: Option<String>,
}

impl InstanceArgs {
    fn given(&self) -> bool {
        self.instance.is_some() || self.k.is_some() || self.mode.is_some() || self.alpha.is_some()
    }

    fn build(&self) -> Result<MultiZenoConfig, HarnessError> {
        if let Some(path) = &self.instance {
            return MultiZenoConfig::load(path).map_err(|e| HarnessError::Config(format!("{}: {e}", path.display())));
        }
        let mode = match self.mode {
            Some(Mode::Risk) => ObjectiveMode::Risk,
            _ => ObjectiveMode::Cost,
        };
        let mut cfg = MultiZenoConfig::new(self.k.unwrap_or(1)).with_mode(mode);
        if let Some(a) = &self.alpha {
            let alpha: Tenths = a.parse().map_err(|e| HarnessError::Config(format!("--alpha: {e}")))?;
            cfg = cfg.with_alpha(alpha);
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Args)]
struct RunArgs {
    /// Experiment configuration file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Replaces the configured instance when given.
    #[command(flatten)]
    instance: InstanceArgs,
    /// nsga2, spea2, ibea-eps or ibea-hyp.
    #[arg(long)]
    scheme: Option<String>,
    /// Roulette weights "wM,wS" of the planner objectives.
    #[arg(long)]
    strategy_weights: Option<String>,
    /// Evaluation bound. With --max-seconds, either bound stops the run;
    /// giving only one of them drops the other.
    #[arg(long)]
    max_evals: Option<u64>,
    #[arg(long)]
    max_seconds: Option<f64>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl RunArgs {
    fn build(&self) -> Result<ExperimentConfig, HarnessError> {
        let mut cfg = match &self.config {
            Some(path) => load_config(path)?,
            None => ExperimentConfig::new(MultiZenoConfig::new(1)),
        };
        if let Some(path) = &self.instance.instance {
            cfg.instance = InstanceSpec::File(path.clone());
        } else if self.instance.given() {
            cfg.instance = InstanceSpec::Inline(self.instance.build()?);
        }
        if let Some(s) = &self.scheme {
            cfg.scheme = s.parse::<Scheme>().map_err(|e| HarnessError::Config(e.to_string()))?;
        }
        if let Some(w) = &self.strategy_weights {
            let w: StrategyWeights = w.parse().map_err(|e| HarnessError::Config(format!("--strategy-weights: {e}")))?;
            cfg.strategy_weights = [w.makespan(), w.secondary()];
        }
        if self.max_evals.is_some() || self.max_seconds.is_some() {
            cfg.stop = StopCriterion { max_seconds: self.max_seconds, max_evaluations: self.max_evals };
        }
        if let Some(out) = &self.out {
            cfg.output_dir = Some(out.clone());
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

/// Writes to stdout, ignoring a closed pipe.
fn say(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), HarnessError> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| HarnessError::Runtime(format!("{}: {e}", path.display()))),
        None => {
            say(text);
            Ok(())
        }
    }
}

fn execute(cli: Cli) -> Result<(), HarnessError> {
    match cli.command {
        Command::Generate { instance, out } => emit(out.as_deref(), &(instance.build()?.to_json() + "\n")),
        Command::Front { instance, analytic: _, oracle, out } => {
            let cfg = instance.build()?;
            let front = if oracle { exact_front_oracle(&cfg)? } else { exact_front_analytic(&cfg)? };
            emit(out.as_deref(), &front.to_csv())
        }
        Command::Run { run, seed } => {
            let mut cfg = run.build()?;
            cfg.runs = 1;
            let seed = seed.unwrap_or(cfg.base_seed);
            let experiment = Experiment::new(&cfg)?;
            let result = experiment.run(seed)?;
            if let Some(dir) = &cfg.output_dir {
                write_run(dir, &experiment, &result)?;
                std::fs::write(dir.join("metadata.json"), metadata_json(&experiment))
                    .map_err(|e| HarnessError::Runtime(e.to_string()))?;
            }
            say(&format!(
                "seed {seed}: {} evaluations, hypervolume deficit {:.6}, {}/{} front points attained\n",
                result.evaluations,
                result.final_hypervolume(),
                result.attainment.attained_count(),
                result.attainment.records().len()
            ));
            say(&mozeno_core::ParetoFront::new(result.front.clone())?.to_csv());
            Ok(())
        }
        Command::Experiment { run, runs, seed } => {
            let mut cfg = run.build()?;
            if let Some(n) = runs {
                cfg.runs = n;
            }
            if let Some(s) = seed {
                cfg.base_seed = s;
            }
            cfg.validate()?;
            let out = cfg.output_dir.clone();
            let results = run_experiment(&cfg, out.as_deref())?;
            let failed = results.iter().filter(|(_, r)| r.is_err()).count();
            for (seed, r) in &results {
                match r {
                    Ok(r) => say(&format!("seed {seed}: hypervolume deficit {:.6}\n", r.final_hypervolume())),
                    Err(e) => eprintln!("seed {seed}: {e}"),
                }
            }
            if failed == results.len() {
                return Err(HarnessError::Runtime("every run failed".into()));
            }
            Ok(())
        }
        Command::Aggregate { out } => {
            let runs = load_runs(&out)?;
            let agg = aggregate(&runs);
            agg.write(&out)?;
            say(&format!("aggregated {} runs into {}\n", runs.len(), out.display()));
            Ok(())
        }
        Command::Stats { out } => {
            let table = stats_table(&out)?;
            std::fs::write(out.join("wilcoxon.txt"), &table).map_err(|e| HarnessError::Runtime(e.to_string()))?;
            say(&table);
            Ok(())
        }
    }
}

/// Reads `<dir>/<scheme>/summary.csv` for every scheme present and pairs
/// the samples by seed.
fn stats_table(dir: &Path) -> Result<String, HarnessError> {
    let mut samples = Vec::new();
    for scheme in Scheme::ALL {
        let path = dir.join(scheme.to_string()).join("summary.csv");
        if path.exists() {
            samples.push((scheme.to_string(), read_summary(&path)?));
        }
    }
    if samples.len() < 2 {
        return Err(HarnessError::Config(format!(
            "{}: need campaign directories for at least two schemes",
            dir.display()
        )));
    }
    let common: Vec<u64> = samples[0]
        .1
        .iter()
        .map(|(s, _)| *s)
        .filter(|s| samples.iter().all(|(_, v)| v.iter().any(|(t, _)| t == s)))
        .collect();
    let paired: Vec<(String, Vec<f64>)> = samples
        .into_iter()
        .map(|(name, v)| {
            let vals = common.iter().map(|s| v.iter().find(|(t, _)| t == s).expect("common seed").1).collect();
            (name, vals)
        })
        .collect();
    comparison_table(&paired)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("mozeno: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
