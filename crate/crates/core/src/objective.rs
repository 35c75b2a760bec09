//! Objective points, Pareto dominance and Pareto fronts.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::ModelError;
use crate::quantity::Tenths;

/// A (makespan, secondary) pair, both minimized.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ObjectivePoint {
    pub makespan: Tenths,
    pub secondary: Tenths,
}

impl ObjectivePoint {
    pub fn new(makespan: Tenths, secondary: Tenths) -> Self {
        ObjectivePoint { makespan, secondary }
    }

    /// Shorthand for whole-unit points.
    pub fn ints(makespan: i64, secondary: i64) -> Self {
        ObjectivePoint::new(Tenths::from_int(makespan), Tenths::from_int(secondary))
    }

    pub fn weakly_dominates(&self, other: &ObjectivePoint) -> bool {
        self.makespan <= other.makespan && self.secondary <= other.secondary
    }

    pub fn to_f64(&self) -> [f64; 2] {
        [self.makespan.to_f64(), self.secondary.to_f64()]
    }
}

impl fmt::Display for ObjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.makespan, self.secondary)
    }
}

/// Strict Pareto dominance under minimization.
pub fn dominates(p: &ObjectivePoint, q: &ObjectivePoint) -> bool {
    p.weakly_dominates(q) && p != q
}

/// Mutually non-dominated points sorted by increasing makespan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParetoFront {
    points: Vec<ObjectivePoint>,
}

impl ParetoFront {
    /// Wraps points that already satisfy the front invariant.
    pub fn new(points: Vec<ObjectivePoint>) -> Result<Self, ModelError> {
        let ok = points.windows(2).all(|w| w[0].makespan < w[1].makespan && w[0].secondary > w[1].secondary);
        if !ok {
            return Err(ModelError::InvalidConfig(
                "front points must have increasing makespan and decreasing secondary".into(),
            ));
        }
        Ok(ParetoFront { points })
    }

    pub fn points(&self) -> &[ObjectivePoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: &ObjectivePoint) -> bool {
        self.points.binary_search_by(|q| q.makespan.cmp(&p.makespan)).is_ok_and(|i| self.points[i] == *p)
    }

    /// Slope differences between consecutive segments, as exact fractions
    /// `(numerator, denominator)` with positive denominators.
    ///
    /// Positive values mean the front bends upward (convex), negative values
    /// that it bends downward (concave).
    pub fn second_differences(&self) -> Vec<(i128, i128)> {
        self.points
            .windows(3)
            .map(|w| {
                let dx1 = (w[1].makespan - w[0].makespan).raw() as i128;
                let dy1 = (w[1].secondary - w[0].secondary).raw() as i128;
                let dx2 = (w[2].makespan - w[1].makespan).raw() as i128;
                let dy2 = (w[2].secondary - w[1].secondary).raw() as i128;
                // dy2/dx2 - dy1/dx1
                (dy2 * dx1 - dy1 * dx2, dx1 * dx2)
            })
            .collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("makespan,secondary\n");
        for p in &self.points {
            out.push_str(&format!("{},{}\n", p.makespan, p.secondary));
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self, ModelError> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        match lines.next() {
            Some(h) if h.trim() == "makespan,secondary" => {}
            other => {
                return Err(ModelError::Parse(format!("unexpected front header {other:?}")));
            }
        }
        let mut points = Vec::new();
        for (i, line) in lines.enumerate() {
            let mut fields = line.split(',');
            let (Some(m), Some(s), None) = (fields.next(), fields.next(), fields.next()) else {
                return Err(ModelError::Parse(format!("row {}: expected two fields", i + 2)));
            };
            points.push(ObjectivePoint::new(m.parse()?, s.parse()?));
        }
        ParetoFront::new(points)
    }

    pub fn write_csv(&self, path: &Path) -> Result<(), ModelError> {
        std::fs::write(path, self.to_csv())?;
        Ok(())
    }

    pub fn read_csv(path: &Path) -> Result<Self, ModelError> {
        Self::from_csv(&std::fs::read_to_string(path)?)
    }
}

/// Keeps the non-dominated subset of `points`, deduplicated and sorted.
pub fn pareto_filter(points: &[ObjectivePoint]) -> Result<ParetoFront, ModelError> {
    if points.is_empty() {
        return Err(ModelError::EmptyFront);
    }
    let mut sorted = points.to_vec();
    sorted.sort();
    sorted.dedup();
    // Sorted by (makespan, secondary): a point survives when its secondary is
    // strictly below every earlier survivor.
    let mut front: Vec<ObjectivePoint> = Vec::new();
    for p in sorted {
        match front.last() {
            Some(last) if p.secondary >= last.secondary => {}
            _ => front.push(p),
        }
    }
    ParetoFront::new(front)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(m: i64, s: i64) -> ObjectivePoint {
        ObjectivePoint::ints(m, s)
    }

    #[test]
    fn dominance_examples() {
        assert!(dominates(&pt(8, 12), &pt(8, 13)));
        assert!(!dominates(&pt(8, 12), &pt(16, 8)));
        assert!(!dominates(&pt(16, 8), &pt(8, 12)));
        assert!(!dominates(&pt(8, 12), &pt(8, 12)));
    }

    #[test]
    fn filter_examples() {
        let f = pareto_filter(&[pt(8, 12), pt(9, 13), pt(16, 8)]).unwrap();
        assert_eq!(f.points(), &[pt(8, 12), pt(16, 8)]);

        let exact = vec![pt(8, 12), pt(12, 10), pt(16, 8), pt(20, 6), pt(24, 4)];
        assert_eq!(pareto_filter(&exact).unwrap().points(), exact.as_slice());

        assert_eq!(pareto_filter(&[pt(8, 12), pt(8, 12)]).unwrap().points(), &[pt(8, 12)]);
        assert_eq!(pareto_filter(&[]), Err(ModelError::EmptyFront));
    }

    #[test]
    fn filter_matches_pairwise_definition() {
        let pts: Vec<ObjectivePoint> = (0..40).map(|i| pt((i * 7) % 13, (i * 5) % 11)).collect();
        let front = pareto_filter(&pts).unwrap();
        for p in &pts {
            let nondominated = !pts.iter().any(|q| dominates(q, p));
            assert_eq!(front.contains(p), nondominated, "{p}");
        }
    }

    #[test]
    fn csv_round_trip() {
        let f = ParetoFront::new(vec![
            ObjectivePoint::new(Tenths::from_int(20), Tenths::from_raw(125)),
            ObjectivePoint::new(Tenths::from_int(24), Tenths::from_int(11)),
        ])
        .unwrap();
        let text = f.to_csv();
        assert_eq!(text, "makespan,secondary\n20,12.5\n24,11\n");
        assert_eq!(ParetoFront::from_csv(&text).unwrap(), f);
    }

    #[test]
    fn second_differences_of_a_line_vanish() {
        let f = ParetoFront::new(vec![pt(8, 12), pt(12, 10), pt(16, 8)]).unwrap();
        assert!(f.second_differences().iter().all(|(n, _)| *n == 0));
        let convex = ParetoFront::new(vec![pt(8, 12), pt(12, 8), pt(16, 6)]).unwrap();
        assert!(convex.second_differences().iter().all(|(n, _)| *n > 0));
    }
}
