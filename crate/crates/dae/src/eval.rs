use mozeno_core::{ModelError, ObjectivePoint, ScheduledPlan, Tenths};
use mozeno_planner::{compress, objectives_of, ActionSequence, Planner, PlannerBudget};
use rand::Rng;
use thiserror::Error;

use crate::individual::{DaeProblem, Individual};
use crate::strategy::{choose_strategy, StrategyWeights};

/// Outcome of decoding an individual.
#[derive(Clone, Debug, PartialEq)]
pub struct EvalResult {
    pub feasible: bool,
    pub objectives: ObjectivePoint,
    /// Number of subproblems solved before the first failure.
    pub solved: usize,
    pub subproblems: usize,
    pub plan: Option<ScheduledPlan>,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParamsError {
    #[error("{name} must lie in [0,1], got {value}")]
    Probability { name: &'static str, value: f64 },
    #[error("mutation weights must be finite, non-negative and not all zero")]
    MutationWeights,
    #[error("penalty base must be positive")]
    PenaltyBase,
}

/// Variation and decoding parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct DaeParams {
    pub crossover_probability: f64,
    pub mutation_probability: f64,
    /// Relative weights of addState, delState, addAtom, delAtom.
    pub mutation_weights: [f64; 4],
    pub budget: PlannerBudget,
    /// Overrides the instance penalty base when set.
    pub penalty_base: Option<Tenths>,
}

impl Default for DaeParams {
    fn default() -> Self {
        DaeParams {
            crossover_probability: 0.8,
            mutation_probability: 0.8,
            mutation_weights: [1.0, 1.0, 3.0, 3.0],
            budget: PlannerBudget::default(),
            penalty_base: None,
        }
    }
}

impl DaeParams {
    pub fn validate(&self) -> Result<(), ParamsError> {
        for (name, value) in
            [("crossover probability", self.crossover_probability), ("mutation probability", self.mutation_probability)]
        {
            if !(0.0..=1.0).contains(&value) {
                return Err(ParamsError::Probability { name, value });
            }
        }
        let w = &self.mutation_weights;
        if w.iter().any(|x| !x.is_finite() || *x < 0.0) || w.iter().sum::<f64>() <= 0.0 {
            return Err(ParamsError::MutationWeights);
        }
        if self.penalty_base.is_some_and(|p| !p.is_positive()) {
            return Err(ParamsError::PenaltyBase);
        }
        Ok(())
    }
}

/// Penalized objectives of an individual that solved `u` of `total`
/// subproblems: `W·(2 − u/total)` on both axes, rounded to the nearest tenth.
pub fn penalized_objectives(u: usize, total: usize, base: Tenths) -> ObjectivePoint {
    assert!(u < total, "penalty applies to unsolved individuals only");
    let (u, total) = (u as i64, total as i64);
    let num = base.raw() * (2 * total - u);
    let v = Tenths::from_raw((2 * num + total) / (2 * total));
    ObjectivePoint::new(v, v)
}

/// Decodes individuals with a dedicated planner instance.
pub struct Evaluator<'p> {
    problem: &'p DaeProblem,
    planner: Planner<'p>,
    weights: StrategyWeights,
    budget: PlannerBudget,
    penalty_base: Tenths,
}

impl<'p> Evaluator<'p> {
    pub fn new(problem: &'p DaeProblem, weights: StrategyWeights, params: &DaeParams) -> Self {
        Evaluator {
            problem,
            planner: Planner::new(problem.task()),
            weights,
            budget: params.budget,
            penalty_base: params.penalty_base.unwrap_or(problem.penalty_base()),
        }
    }

    pub fn problem(&self) -> &'p DaeProblem {
        self.problem
    }

    /// Solves the subproblems `I → S_1 → … → S_n → G` in turn, drawing the
    /// planner objective for every call. Stops at the first failure.
    pub fn evaluate<R: Rng + ?Sized>(&mut self, ind: &Individual, rng: &mut R) -> Result<EvalResult, ModelError> {
        let task = self.problem.task();
        let total = ind.len() + 1;
        let mut state = *task.initial();
        let mut seq = ActionSequence::default();
        for k in 0..total {
            let goal = match ind.states.get(k) {
                Some(s) => s.to_set(),
                None => *task.goal(),
            };
            let strategy = choose_strategy(&self.weights, rng);
            match self.planner.solve(&state, &goal, strategy, self.budget, rng) {
                Ok(sol) => {
                    state = mozeno_core::execute_sequence(task, &state, sol.plan.actions())?;
                    seq.extend_from(&sol.plan);
                }
                Err(_) => {
                    return Ok(EvalResult {
                        feasible: false,
                        objectives: penalized_objectives(k, total, self.penalty_base),
                        solved: k,
                        subproblems: total,
                        plan: None,
                    });
                }
            }
        }
        let plan = compress(task, &seq)?;
        let objectives = objectives_of(task, &plan)?;
        Ok(EvalResult { feasible: true, objectives, solved: total, subproblems: total, plan: Some(plan) })
    }
}
