//! Satisficing forward-search planner used to solve the subproblems produced
//! by the decomposition, plus plan compression and objective extraction.

mod compress;
mod relax;
mod search;

pub use compress::{compress, objectives_of};
pub use relax::Heuristic;
pub use search::{Planner, SearchFailure, Solution};

use mozeno_core::{ActionId, AtomSet, GroundTask};
use rand::Rng;

/// Objective the planner optimizes during one call.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StrategyObjective {
    Makespan,
    Secondary,
}

/// Maximal number of node expansions per call.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PlannerBudget {
    max_expanded: usize,
}

impl PlannerBudget {
    pub const DEFAULT_MAX_EXPANDED: usize = 1000;

    /// Returns `None` for a zero budget.
    pub fn new(max_expanded: usize) -> Option<Self> {
        (max_expanded >= 1).then_some(PlannerBudget { max_expanded })
    }

    pub fn max_expanded(self) -> usize {
        self.max_expanded
    }
}

impl Default for PlannerBudget {
    fn default() -> Self {
        PlannerBudget { max_expanded: Self::DEFAULT_MAX_EXPANDED }
    }
}

/// A totally ordered list of actions without timestamps.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ActionSequence(pub Vec<ActionId>);

impl ActionSequence {
    pub fn actions(&self) -> &[ActionId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn extend_from(&mut self, other: &ActionSequence) {
        self.0.extend_from_slice(&other.0);
    }
}

/// Additive relaxed heuristic of `goal` from `state`; see [`Planner::heuristic`].
pub fn heuristic(task: &GroundTask, state: &AtomSet, goal: &AtomSet, strategy: StrategyObjective) -> Heuristic {
    Planner::new(task).heuristic(state, goal, strategy)
}

/// Applies relaxed-plan actions greedily; see [`Planner::lookahead`].
pub fn lookahead(task: &GroundTask, state: &AtomSet, relaxed: &ActionSequence) -> (AtomSet, ActionSequence) {
    Planner::new(task).lookahead(state, relaxed)
}

/// One-shot planner call; see [`Planner::solve`].
pub fn solve_subproblem<R: Rng + ?Sized>(
    task: &GroundTask,
    initial: &AtomSet,
    goal: &AtomSet,
    strategy: StrategyObjective,
    budget: PlannerBudget,
    rng: &mut R,
) -> Result<Solution, SearchFailure> {
    Planner::new(task).solve(initial, goal, strategy, budget, rng)
}
