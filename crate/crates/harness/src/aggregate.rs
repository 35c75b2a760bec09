//! Cross-run summaries of hypervolume traces and attainment times.

use std::path::Path;

use mozeno_core::{ObjectivePoint, Tenths};

use crate::error::HarnessError;
use crate::run::{RunResult, TracePoint};

/// The parts of a run needed for aggregation.
#[derive(Clone, Debug, PartialEq)]
pub struct RunRecord {
    pub seed: u64,
    pub trace: Vec<TracePoint>,
    /// Each exact front point with its first attainment in evaluations.
    pub attainment: Vec<(ObjectivePoint, Option<u64>)>,
}

impl From<&RunResult> for RunRecord {
    fn from(r: &RunResult) -> Self {
        RunRecord {
            seed: r.seed,
            trace: r.trace.clone(),
            attainment: r.attainment.records().iter().map(|a| (a.point, a.attained.map(|c| c.evaluations))).collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HypervolumeRow {
    pub evaluations: u64,
    pub mean: f64,
    pub median: f64,
    /// Runs with a snapshot at or before this clock.
    pub runs: usize,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AttainmentRow {
    pub point: ObjectivePoint,
    pub evaluations: u64,
    /// Percentage of runs that attained the point by this clock.
    pub percent: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Aggregate {
    pub hypervolume: Vec<HypervolumeRow>,
    pub attainment: Vec<AttainmentRow>,
}

fn median(values: &mut [f64]) -> f64 {
    values.sort_by(f64::total_cmp);
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2]
    } else {
        (values[n / 2 - 1] + values[n / 2]) / 2.0
    }
}

/// Mean and median hypervolume deficit per snapshot clock, and attainment
/// percentages of every front point at the same clocks. Runs without a
/// snapshot at a clock contribute their latest earlier value.
pub fn aggregate(runs: &[RunRecord]) -> Aggregate {
    let mut clocks: Vec<u64> = runs.iter().flat_map(|r| r.trace.iter().map(|t| t.evaluations)).collect();
    clocks.sort_unstable();
    clocks.dedup();

    let mut hypervolume = Vec::with_capacity(clocks.len());
    for &c in &clocks {
        let mut values: Vec<f64> = runs
            .iter()
            .filter_map(|r| r.trace.iter().take_while(|t| t.evaluations <= c).last())
            .map(|t| t.hypervolume)
            .collect();
        if values.is_empty() {
            continue;
        }
        let mean = values.iter().sum::<f64>() / values.len() as f64;
        hypervolume.push(HypervolumeRow { evaluations: c, mean, median: median(&mut values), runs: values.len() });
    }

    let points: Vec<ObjectivePoint> =
        runs.first().map(|r| r.attainment.iter().map(|a| a.0).collect()).unwrap_or_default();
    let mut attainment = Vec::new();
    for (k, &point) in points.iter().enumerate() {
        for &c in &clocks {
            let hits = runs.iter().filter(|r| r.attainment.get(k).and_then(|a| a.1).is_some_and(|e| e <= c)).count();
            attainment.push(AttainmentRow { point, evaluations: c, percent: 100.0 * hits as f64 / runs.len() as f64 });
        }
    }
    Aggregate { hypervolume, attainment }
}

impl Aggregate {
    pub fn hypervolume_csv(&self) -> String {
        let mut out = String::from("clock_evals,mean_hypervolume,median_hypervolume,runs\n");
        for r in &self.hypervolume {
            out.push_str(&format!("{},{:.6},{:.6},{}\n", r.evaluations, r.mean, r.median, r.runs));
        }
        out
    }

    pub fn attainment_csv(&self) -> String {
        let mut out = String::from("point_makespan,point_secondary,clock_evals,percent\n");
        for r in &self.attainment {
            out.push_str(&format!("{},{},{},{:.1}\n", r.point.makespan, r.point.secondary, r.evaluations, r.percent));
        }
        out
    }

    pub fn write(&self, dir: &Path) -> Result<(), HarnessError> {
        write_file(&dir.join("aggregate_hypervolume.csv"), &self.hypervolume_csv())?;
        write_file(&dir.join("aggregate_attainment.csv"), &self.attainment_csv())
    }
}

pub(crate) fn write_file(path: &Path, text: &str) -> Result<(), HarnessError> {
    std::fs::write(path, text).map_err(|e| HarnessError::io(path, e))
}

fn read_file(path: &Path) -> Result<String, HarnessError> {
    std::fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))
}

fn rows<'a>(path: &Path, text: &'a str, header: &str) -> Result<Vec<Vec<&'a str>>, HarnessError> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    if lines.next().map(str::trim) != Some(header) {
        return Err(HarnessError::Runtime(format!("{}: expected header {header:?}", path.display())));
    }
    Ok(lines.map(|l| l.split(',').collect()).collect())
}

fn bad(path: &Path, row: usize) -> HarnessError {
    HarnessError::Runtime(format!("{}: malformed row {}", path.display(), row + 2))
}

pub fn read_trace(path: &Path) -> Result<Vec<TracePoint>, HarnessError> {
    let text = read_file(path)?;
    rows(path, &text, "clock_evals,clock_seconds,hypervolume")?
        .iter()
        .enumerate()
        .map(|(i, f)| match f.as_slice() {
            [e, s, h] => Ok(TracePoint {
                evaluations: e.parse().map_err(|_| bad(path, i))?,
                seconds: s.parse().map_err(|_| bad(path, i))?,
                hypervolume: h.parse().map_err(|_| bad(path, i))?,
            }),
            _ => Err(bad(path, i)),
        })
        .collect()
}

pub fn read_attainment(path: &Path) -> Result<Vec<(ObjectivePoint, Option<u64>)>, HarnessError> {
    let text = read_file(path)?;
    rows(path, &text, "point_makespan,point_secondary,attained_evals,attained_seconds")?
        .iter()
        .enumerate()
        .map(|(i, f)| match f.as_slice() {
            [m, s, e, _] => {
                let m: Tenths = m.parse().map_err(|_| bad(path, i))?;
                let s: Tenths = s.parse().map_err(|_| bad(path, i))?;
                let e: i64 = e.parse().map_err(|_| bad(path, i))?;
                Ok((ObjectivePoint::new(m, s), u64::try_from(e).ok()))
            }
            _ => Err(bad(path, i)),
        })
        .collect()
}

/// Loads every `run-*` directory below `dir`, sorted by seed.
pub fn load_runs(dir: &Path) -> Result<Vec<RunRecord>, HarnessError> {
    let entries = std::fs::read_dir(dir).map_err(|e| HarnessError::io(dir, e))?;
    let mut runs = Vec::new();
    for entry in entries {
        let path = entry.map_err(|e| HarnessError::io(dir, e))?.path();
        let Some(seed) = path
            .file_name()
            .and_then(|n| n.to_str())
            .and_then(|n| n.strip_prefix("run-"))
            .and_then(|s| s.parse::<u64>().ok())
        else {
            continue;
        };
        runs.push(RunRecord {
            seed,
            trace: read_trace(&path.join("trace.csv"))?,
            attainment: read_attainment(&path.join("attainment.csv"))?,
        });
    }
    runs.sort_by_key(|r| r.seed);
    if runs.is_empty() {
        return Err(HarnessError::Config(format!("{}: no run directories found", dir.display())));
    }
    Ok(runs)
}
