//! First-attainment times of the exact front points.

use mozeno_core::{ObjectivePoint, ParetoFront};

/// Position of a run in evaluations and elapsed seconds.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Clock {
    pub evaluations: u64,
    pub seconds: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AttainmentRecord {
    pub point: ObjectivePoint,
    /// First clock at which an evaluated point weakly dominated `point`.
    pub attained: Option<Clock>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AttainmentTracker {
    records: Vec<AttainmentRecord>,
}

impl AttainmentTracker {
    pub fn new(exact: &ParetoFront) -> Self {
        AttainmentTracker {
            records: exact.points().iter().map(|&point| AttainmentRecord { point, attained: None }).collect(),
        }
    }

    /// Marks every pending point weakly dominated by `evaluated`. Returns the
    /// number of newly attained points.
    pub fn update(&mut self, evaluated: &ObjectivePoint, clock: Clock) -> usize {
        let mut fresh = 0;
        for r in &mut self.records {
            if r.attained.is_none() && evaluated.weakly_dominates(&r.point) {
                r.attained = Some(clock);
                fresh += 1;
            }
        }
        fresh
    }

    pub fn records(&self) -> &[AttainmentRecord] {
        &self.records
    }

    pub fn attained_count(&self) -> usize {
        self.records.iter().filter(|r| r.attained.is_some()).count()
    }

    pub fn all_attained(&self) -> bool {
        self.attained_count() == self.records.len()
    }

    /// CSV with one row per front point; unattained points carry `-1` in
    /// both clock columns.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("point_makespan,point_secondary,attained_evals,attained_seconds\n");
        for r in &self.records {
            let (evals, secs) = match r.attained {
                Some(c) => (c.evaluations.to_string(), format!("{:.3}", c.seconds)),
                None => ("-1".into(), "-1".into()),
            };
            out.push_str(&format!("{},{},{},{}\n", r.point.makespan, r.point.secondary, evals, secs));
        }
        out
    }
}
