//! Divide-and-Evolve genotype: sequences of partial states that split a
//! planning task into subproblems for the embedded planner.

mod eval;
mod individual;
mod operators;
mod strategy;

pub use eval::{penalized_objectives, DaeParams, EvalResult, Evaluator, ParamsError};
pub use individual::{DaeProblem, Individual, PartialState, RepresentationError};
pub use operators::{crossover, crossover_at, init_individual, mutate, mutate_with, random_state, MutationKind};
pub use strategy::{choose_strategy, StrategyWeights, WeightsError};
