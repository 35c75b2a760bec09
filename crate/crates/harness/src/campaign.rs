//! Multi-run campaigns and their output files.

use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use mozeno_moea::HV_REFERENCE;
use serde_json::json;

use crate::aggregate::{aggregate, write_file, RunRecord};
use crate::error::HarnessError;
use crate::run::{Experiment, RunResult};
use crate::ExperimentConfig;

/// Environment variable bounding the worker pool.
pub const WORKERS_ENV: &str = "MOZENO_WORKERS";

/// Worker count: `MOZENO_WORKERS` when set to a positive integer, else the
/// available parallelism.
pub fn worker_count() -> Result<usize, HarnessError> {
    match std::env::var(WORKERS_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(n),
            _ => Err(HarnessError::Config(format!("{WORKERS_ENV} must be a positive integer, got {v:?}"))),
        },
        Err(_) => Ok(std::thread::available_parallelism().map_or(1, |n| n.get())),
    }
}

/// Seed of a run with its result.
pub type RunOutcome = (u64, Result<RunResult, HarnessError>);

pub fn run_dir(out: &Path, seed: u64) -> PathBuf {
    out.join(format!("run-{seed}"))
}

fn trace_csv(r: &RunResult) -> String {
    let mut out = String::from("clock_evals,clock_seconds,hypervolume\n");
    for t in &r.trace {
        out.push_str(&format!("{},{:.3},{:.6}\n", t.evaluations, t.seconds, t.hypervolume));
    }
    out
}

fn front_csv(r: &RunResult) -> String {
    let mut out = String::from("makespan,secondary\n");
    for p in &r.front {
        out.push_str(&format!("{},{}\n", p.makespan, p.secondary));
    }
    out
}

fn population_csv(r: &RunResult) -> String {
    let mut out = String::from("makespan,secondary,feasible\n");
    for (p, feasible) in &r.population {
        out.push_str(&format!("{},{},{}\n", p.makespan, p.secondary, feasible));
    }
    out
}

/// Writes `front.csv`, `trace.csv`, `attainment.csv`, `population.csv` and,
/// when a feasible plan was found, `best_plan.csv` into `dir`.
pub fn write_run(dir: &Path, experiment: &Experiment, r: &RunResult) -> Result<(), HarnessError> {
    std::fs::create_dir_all(dir).map_err(|e| HarnessError::io(dir, e))?;
    write_file(&dir.join("front.csv"), &front_csv(r))?;
    write_file(&dir.join("trace.csv"), &trace_csv(r))?;
    write_file(&dir.join("attainment.csv"), &r.attainment.to_csv())?;
    write_file(&dir.join("population.csv"), &population_csv(r))?;
    if let Some(plan) = &r.best_plan {
        write_file(&dir.join("best_plan.csv"), &plan.to_csv(experiment.task()))?;
    }
    Ok(())
}

/// Campaign metadata, including the hypervolume normalization.
pub fn metadata_json(experiment: &Experiment) -> String {
    let cfg = experiment.config();
    let front: Vec<[String; 2]> =
        experiment.exact_front().points().iter().map(|p| [p.makespan.to_string(), p.secondary.to_string()]).collect();
    let value = json!({
        "scheme": cfg.scheme.to_string(),
        "config": serde_json::to_value(cfg).expect("config serializes"),
        "hypervolume": {
            "normalization": "bounding box of the exact front, clipped to [0,1]",
            "reference": HV_REFERENCE,
        },
        "exact_front": front,
    });
    serde_json::to_string_pretty(&value).expect("metadata serializes") + "\n"
}

fn summary_csv(results: &[(u64, Result<RunResult, HarnessError>)]) -> String {
    let mut out = String::from("seed,status,evaluations,generations,final_hypervolume,attained_points,front_points\n");
    for (seed, r) in results {
        match r {
            Ok(r) => out.push_str(&format!(
                "{},ok,{},{},{:.6},{},{}\n",
                seed,
                r.evaluations,
                r.generations,
                r.final_hypervolume(),
                r.attainment.attained_count(),
                r.attainment.records().len()
            )),
            Err(_) => out.push_str(&format!("{seed},failed,0,0,NaN,0,0\n")),
        }
    }
    out
}

/// Final hypervolume deficit per seed from a campaign `summary.csv`,
/// skipping failed runs.
pub fn read_summary(path: &Path) -> Result<Vec<(u64, f64)>, HarnessError> {
    let text = std::fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate().skip(1).filter(|(_, l)| !l.trim().is_empty()) {
        let f: Vec<&str> = line.split(',').collect();
        let malformed = || HarnessError::Runtime(format!("{}: malformed row {}", path.display(), i + 1));
        if f.len() != 7 {
            return Err(malformed());
        }
        if f[1] == "ok" {
            out.push((f[0].parse().map_err(|_| malformed())?, f[4].parse().map_err(|_| malformed())?));
        }
    }
    Ok(out)
}

/// Runs seeds `base_seed .. base_seed + runs` on a bounded worker pool.
///
/// When `out` is set, each run writes its files to `out/run-<seed>` and the
/// campaign writes `summary.csv`, `metadata.json`, `failures.txt` (if any
/// run failed) and the aggregate CSVs. A failed run does not stop the
/// campaign.
pub fn run_experiment(config: &ExperimentConfig, out: Option<&Path>) -> Result<Vec<RunOutcome>, HarnessError> {
    let experiment = Experiment::new(config)?;
    run_campaign(&experiment, out)
}

/// [`run_experiment`] on a prepared experiment.
pub fn run_campaign(experiment: &Experiment, out: Option<&Path>) -> Result<Vec<RunOutcome>, HarnessError> {
    let cfg = experiment.config();
    let seeds: Vec<u64> = (0..cfg.runs as u64).map(|i| cfg.base_seed + i).collect();
    let workers = worker_count()?.min(seeds.len());
    if let Some(dir) = out {
        std::fs::create_dir_all(dir).map_err(|e| HarnessError::io(dir, e))?;
    }

    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<Result<RunResult, HarnessError>>>> =
        Mutex::new((0..seeds.len()).map(|_| None).collect());
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(&seed) = seeds.get(i) else { break };
                let result = experiment.run(seed).and_then(|r| {
                    if let Some(dir) = out {
                        write_run(&run_dir(dir, seed), experiment, &r)?;
                    }
                    Ok(r)
                });
                slots.lock().expect("result slots")[i] = Some(result);
            });
        }
    });
    let results: Vec<(u64, Result<RunResult, HarnessError>)> = seeds
        .iter()
        .zip(slots.into_inner().expect("result slots"))
        .map(|(&s, r)| (s, r.expect("every seed ran")))
        .collect();

    if let Some(dir) = out {
        write_file(&dir.join("summary.csv"), &summary_csv(&results))?;
        write_file(&dir.join("metadata.json"), &metadata_json(experiment))?;
        let failures: Vec<String> =
            results.iter().filter_map(|(s, r)| r.as_ref().err().map(|e| format!("seed {s}: {e}"))).collect();
        if !failures.is_empty() {
            write_file(&dir.join("failures.txt"), &(failures.join("\n") + "\n"))?;
        }
        let records: Vec<RunRecord> =
            results.iter().filter_map(|(_, r)| r.as_ref().ok()).map(RunRecord::from).collect();
        if !records.is_empty() {
            aggregate(&records).write(dir)?;
        }
    }
    Ok(results)
}
