//! Ground temporal model of the MultiZeno benchmark.
//!
//! The crate provides the STRIPS-style atoms and durative actions, the
//! MultiZeno instance generator, timed plan validation, Pareto utilities and
//! two independent sources of exact Pareto fronts: closed forms for the
//! default instances and an exhaustive search for small ones.

pub mod atoms;
pub mod error;
pub mod front;
pub mod multizeno;
pub mod objective;
pub mod oracle;
pub mod plan;
pub mod quantity;
pub mod reach;
pub mod task;

pub use atoms::{mutex, Atom, AtomId, AtomSet, Predicate};
pub use error::ModelError;
pub use front::{exact_front_analytic, worst_front_makespan};
pub use multizeno::{ground_multizeno, MultiZenoConfig};
pub use objective::{dominates, pareto_filter, ObjectivePoint, ParetoFront};
pub use oracle::{exact_front_oracle, oracle_witnesses, Witness, WitnessFlight};
pub use plan::{secondary_of, validate_plan, ScheduledAction, ScheduledPlan};
pub use quantity::Tenths;
pub use reach::{earliest_start_times, EarliestStarts};
pub use task::{execute_sequence, step, ActionId, ActionKind, GroundAction, GroundTask, ObjectiveMode};
