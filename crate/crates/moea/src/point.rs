use mozeno_core::ObjectivePoint;

/// An evaluated individual as seen by the selection schemes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScoredPoint {
    /// Objectives, penalized when infeasible.
    pub objectives: ObjectivePoint,
    pub feasible: bool,
    /// Caller-side identifier of the individual.
    pub owner: usize,
}

impl ScoredPoint {
    pub fn new(objectives: ObjectivePoint, feasible: bool, owner: usize) -> Self {
        ScoredPoint { objectives, feasible, owner }
    }

    pub fn dominates(&self, other: &ScoredPoint) -> bool {
        mozeno_core::dominates(&self.objectives, &other.objectives)
    }
}

/// Rescales every objective to `[0,1]` over the bounds of `points`.
/// A constant objective maps to 0.
///
/// Differences are taken on the exact tenths before dividing, so scaling all
/// inputs by a common factor yields bit-identical outputs.
pub fn normalize(points: &[ScoredPoint]) -> Vec<[f64; 2]> {
    if points.is_empty() {
        return Vec::new();
    }
    let raw = |p: &ScoredPoint| [p.objectives.makespan.raw(), p.objectives.secondary.raw()];
    let mut lo = raw(&points[0]);
    let mut hi = lo;
    for p in points {
        let r = raw(p);
        for i in 0..2 {
            lo[i] = lo[i].min(r[i]);
            hi[i] = hi[i].max(r[i]);
        }
    }
    points
        .iter()
        .map(|p| {
            let r = raw(p);
            let mut out = [0.0; 2];
            for i in 0..2 {
                if hi[i] > lo[i] {
                    out[i] = (r[i] - lo[i]) as f64 / (hi[i] - lo[i]) as f64;
                }
            }
            out
        })
        .collect()
}
