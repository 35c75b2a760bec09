//! Multi-objective selection: NSGA-II, SPEA2 and IBEA, the unary
//! hypervolume metric and attainment tracking.
//!
//! Selection functions take a slice of [`ScoredPoint`]s and return indices
//! into it. Ties are always broken by the lower index.

mod attainment;
mod ibea;
mod indicator;
mod nsga2;
mod point;
mod select;
mod spea2;

pub use attainment::{AttainmentRecord, AttainmentTracker, Clock};
pub use ibea::{ibea_fitness, ibea_indicator, ibea_step, ibea_survivors, IbeaParams};
pub use indicator::{eps_indicator, hypdiff_indicator, hypervolume_2d, unary_hypervolume, HV_REFERENCE};
pub use nsga2::{crowding_distance, nondominated_sort, nsga2_survivors};
pub use point::{normalize, ScoredPoint};
pub use select::{
    binary_tournament, environmental_selection, mating_selection, IndicatorKind, MoeaError, MoeaParams, Scheme,
    Selection,
};
pub use spea2::{spea2_fitness, spea2_strengths, spea2_truncate, Spea2Fitness};
