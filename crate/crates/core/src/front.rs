//! Closed-form Pareto fronts of MultiZeno instances.

use crate::error::ModelError;
use crate::multizeno::MultiZenoConfig;
use crate::objective::{pareto_filter, ObjectivePoint, ParetoFront};
use crate::quantity::Tenths;
use crate::task::ObjectiveMode;

/// Number of sequential legs each plane flies in the idle-free routing of
/// `3k` passengers with two planes through a single central city.
fn single_city_legs(k: usize) -> i64 {
    6 * k as i64 - 2
}

/// Exact front from the closed-form expressions.
///
/// Cost instances are supported only with the default durations `(2,4,6)`
/// and taxes `(3,2,1)`; risk instances with two planes and any weights. Use
/// [`crate::oracle::exact_front_oracle`] for other configurations.
pub fn exact_front_analytic(cfg: &MultiZenoConfig) -> Result<ParetoFront, ModelError> {
    cfg.validate()?;
    if cfg.planes != 2 || cfg.central_cities() != 3 {
        return Err(ModelError::UnsupportedConfig("closed forms assume two planes and three central cities".into()));
    }
    let k = cfg.k as i64;
    match cfg.mode {
        ObjectiveMode::Risk => {
            let legs = single_city_legs(cfg.k);
            let points: Vec<ObjectivePoint> =
                cfg.durations.iter().zip(&cfg.risks).map(|(&d, &r)| ObjectivePoint::new(d * legs, r)).collect();
            pareto_filter(&points)
        }
        ObjectiveMode::Cost => {
            let ints = |v: [i64; 3]| v.map(Tenths::from_int).to_vec();
            if cfg.durations != ints([2, 4, 6]) || cfg.costs != ints([3, 2, 1]) {
                return Err(ModelError::UnsupportedConfig(
                    "cost fronts have a closed form only for durations (2,4,6) and taxes (3,2,1)".into(),
                ));
            }
            let points =
                (0..=(6 * k - 2)).map(|j| ObjectivePoint::ints(12 * k - 4 + 4 * j, 18 * k - 6 - 2 * j)).collect();
            ParetoFront::new(points)
        }
    }
}

/// Analytic worst-case makespan of the exact front: every passenger routed
/// through the slowest corridor.
pub fn worst_front_makespan(cfg: &MultiZenoConfig) -> Tenths {
    let slowest = cfg.durations.iter().copied().max().unwrap_or(Tenths::ZERO);
    slowest * single_city_legs(cfg.k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(m: i64, s: i64) -> ObjectivePoint {
        ObjectivePoint::ints(m, s)
    }

    #[test]
    fn k1_cost_front() {
        let f = exact_front_analytic(&MultiZenoConfig::new(1)).unwrap();
        assert_eq!(f.points(), &[pt(8, 12), pt(12, 10), pt(16, 8), pt(20, 6), pt(24, 4)]);
    }

    #[test]
    fn point_counts_and_endpoints() {
        for (k, n) in [(1, 5), (2, 11), (3, 17)] {
            let f = exact_front_analytic(&MultiZenoConfig::new(k)).unwrap();
            assert_eq!(f.len(), n);
            let k = k as i64;
            assert_eq!(f.points()[0], pt(12 * k - 4, 18 * k - 6));
            assert_eq!(*f.points().last().unwrap(), pt(36 * k - 12, 6 * k - 2));
        }
    }

    #[test]
    fn k2_cost_front_contains_reported_points() {
        let f = exact_front_analytic(&MultiZenoConfig::new(2)).unwrap();
        for p in [pt(20, 30), pt(24, 28), pt(28, 26), pt(48, 16), pt(56, 12)] {
            assert!(f.contains(&p), "{p}");
        }
        assert_eq!(f.points()[0], pt(20, 30));
        assert_eq!(*f.points().last().unwrap(), pt(60, 10));
    }

    #[test]
    fn risk_front() {
        let f = exact_front_analytic(&MultiZenoConfig::new(1).with_mode(ObjectiveMode::Risk)).unwrap();
        assert_eq!(f.points(), &[pt(8, 3), pt(16, 2), pt(24, 1)]);
        let f = exact_front_analytic(&MultiZenoConfig::new(3).with_mode(ObjectiveMode::Risk)).unwrap();
        assert_eq!(f.points(), &[pt(32, 3), pt(64, 2), pt(96, 1)]);
    }

    #[test]
    fn other_alpha_is_unsupported() {
        let cfg = MultiZenoConfig::new(1).with_alpha(Tenths::from_raw(11));
        assert!(matches!(exact_front_analytic(&cfg), Err(ModelError::UnsupportedConfig(_))));
    }

    #[test]
    fn worst_makespan() {
        assert_eq!(worst_front_makespan(&MultiZenoConfig::new(1)), Tenths::from_int(24));
        assert_eq!(worst_front_makespan(&MultiZenoConfig::new(2)), Tenths::from_int(60));
    }
}
