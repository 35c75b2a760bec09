use mozeno_planner::StrategyObjective;
use rand::Rng;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WeightsError {
    #[error("strategy weights must be finite and non-negative, got ({0}, {1})")]
    Negative(f64, f64),
    #[error("strategy weights must not both be zero")]
    Zero,
    #[error("expected two comma-separated weights, got {0:?}")]
    Parse(String),
}

/// Relative weights of the two planner objectives in the strategy roulette.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StrategyWeights {
    makespan: f64,
    secondary: f64,
}

impl StrategyWeights {
    pub fn new(makespan: f64, secondary: f64) -> Result<Self, WeightsError> {
        let ok = |w: f64| w.is_finite() && w >= 0.0;
        if !ok(makespan) || !ok(secondary) {
            return Err(WeightsError::Negative(makespan, secondary));
        }
        if makespan + secondary <= 0.0 {
            return Err(WeightsError::Zero);
        }
        Ok(StrategyWeights { makespan, secondary })
    }

    pub fn makespan(&self) -> f64 {
        self.makespan
    }

    pub fn secondary(&self) -> f64 {
        self.secondary
    }
}

impl Default for StrategyWeights {
    fn default() -> Self {
        StrategyWeights { makespan: 1.0, secondary: 1.0 }
    }
}

impl std::str::FromStr for StrategyWeights {
    type Err = WeightsError;

    /// Parses `"wM,wS"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |t: &str| t.trim().parse::<f64>().map_err(|_| WeightsError::Parse(s.to_string()));
        match s.split_once(',') {
            Some((m, w)) => StrategyWeights::new(parse(m)?, parse(w)?),
            None => Err(WeightsError::Parse(s.to_string())),
        }
    }
}

/// Roulette draw of the objective for one planner call.
pub fn choose_strategy<R: Rng + ?Sized>(w: &StrategyWeights, rng: &mut R) -> StrategyObjective {
    let x: f64 = rng.gen::<f64>() * (w.makespan + w.secondary);
    if x < w.makespan {
        StrategyObjective::Makespan
    } else {
        StrategyObjective::Secondary
    }
}
