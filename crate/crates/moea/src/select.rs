//! Scheme selection and the shared mating tournament.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ibea::{ibea_survivors, IbeaParams};
use crate::nsga2::{nsga2_survivors, rank_and_crowding};
use crate::point::ScoredPoint;
use crate::spea2::{spea2_fitness, spea2_truncate};

#[derive(Clone, Debug, Error, PartialEq)]
pub enum MoeaError {
    #[error("unknown scheme {0:?}; expected nsga2, spea2, ibea-eps or ibea-hyp")]
    UnknownScheme(String),
    #[error("invalid selection parameters: {0}")]
    InvalidParams(String),
}

/// Binary indicator driving IBEA.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IndicatorKind {
    EpsPlus,
    HypDiff,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Scheme {
    Nsga2,
    Spea2,
    Ibea(IndicatorKind),
}

impl Scheme {
    pub const ALL: [Scheme; 4] =
        [Scheme::Nsga2, Scheme::Ibea(IndicatorKind::EpsPlus), Scheme::Ibea(IndicatorKind::HypDiff), Scheme::Spea2];
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scheme::Nsga2 => "nsga2",
            Scheme::Spea2 => "spea2",
            Scheme::Ibea(IndicatorKind::EpsPlus) => "ibea-eps",
            Scheme::Ibea(IndicatorKind::HypDiff) => "ibea-hyp",
        })
    }
}

impl FromStr for Scheme {
    type Err = MoeaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "nsga2" => Ok(Scheme::Nsga2),
            "spea2" => Ok(Scheme::Spea2),
            "ibea-eps" => Ok(Scheme::Ibea(IndicatorKind::EpsPlus)),
            "ibea-hyp" => Ok(Scheme::Ibea(IndicatorKind::HypDiff)),
            other => Err(MoeaError::UnknownScheme(other.to_string())),
        }
    }
}

impl TryFrom<String> for Scheme {
    type Error = MoeaError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<Scheme> for String {
    fn from(s: Scheme) -> String {
        s.to_string()
    }
}

/// Selection scheme and its parameters.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct MoeaParams {
    pub scheme: Scheme,
    /// μ: parents kept and offspring produced per generation.
    pub population_size: usize,
    /// SPEA2 archive size; `None` means μ.
    pub archive_size: Option<usize>,
    /// IBEA fitness scaling κ.
    pub kappa: f64,
    /// IBEA hypervolume reference point, in normalized coordinates.
    pub reference: [f64; 2],
}

impl Default for MoeaParams {
    fn default() -> Self {
        let ibea = IbeaParams::default();
        MoeaParams {
            scheme: Scheme::Ibea(IndicatorKind::HypDiff),
            population_size: 100,
            archive_size: None,
            kappa: ibea.kappa,
            reference: ibea.reference,
        }
    }
}

impl MoeaParams {
    pub fn with_scheme(scheme: Scheme) -> Self {
        MoeaParams { scheme, ..MoeaParams::default() }
    }

    pub fn validate(&self) -> Result<(), MoeaError> {
        if self.population_size < 2 {
            return Err(MoeaError::InvalidParams("population_size must be at least 2".into()));
        }
        if self.archive_size == Some(0) {
            return Err(MoeaError::InvalidParams("archive_size must be positive".into()));
        }
        if !(self.kappa.is_finite() && self.kappa > 0.0) {
            return Err(MoeaError::InvalidParams("kappa must be positive".into()));
        }
        if !self.reference.iter().all(|r| r.is_finite() && *r > 1.0) {
            return Err(MoeaError::InvalidParams(
                "reference coordinates must exceed 1 to dominate normalized points".into(),
            ));
        }
        Ok(())
    }

    /// Number of individuals kept between generations.
    pub fn survivor_count(&self) -> usize {
        match self.scheme {
            Scheme::Spea2 => self.archive_size.unwrap_or(self.population_size),
            _ => self.population_size,
        }
    }

    pub fn ibea(&self) -> IbeaParams {
        let indicator = match self.scheme {
            Scheme::Ibea(kind) => kind,
            _ => IndicatorKind::HypDiff,
        };
        IbeaParams { indicator, kappa: self.kappa, reference: self.reference }
    }
}

/// Outcome of environmental selection.
#[derive(Clone, Debug, PartialEq)]
pub struct Selection {
    /// Sorted indices of the kept points.
    pub survivors: Vec<usize>,
    /// Mating key of each survivor; lower is better.
    pub keys: Vec<(f64, f64)>,
}

/// Reduces `points` (survivors of the previous generation plus offspring)
/// to [`MoeaParams::survivor_count`] points.
///
/// Mating keys are `(rank, −crowding)` for NSGA-II, the SPEA2 fitness, and
/// the negated IBEA fitness.
pub fn environmental_selection(points: &[ScoredPoint], params: &MoeaParams) -> Selection {
    let size = params.survivor_count().min(points.len());
    match params.scheme {
        Scheme::Nsga2 => {
            let survivors = nsga2_survivors(points, size);
            let (rank, crowd) = rank_and_crowding(points);
            let keys = survivors.iter().map(|&i| (rank[i] as f64, -crowd[i])).collect();
            Selection { survivors, keys }
        }
        Scheme::Spea2 => {
            let fit = spea2_fitness(points).fitness;
            let survivors = spea2_truncate(points, &fit, size);
            let keys = survivors.iter().map(|&i| (fit[i], 0.0)).collect();
            Selection { survivors, keys }
        }
        Scheme::Ibea(_) => {
            let (survivors, fit) = ibea_survivors(points, size, &params.ibea());
            let keys = fit.iter().map(|f| (-f, 0.0)).collect();
            Selection { survivors, keys }
        }
    }
}

/// Draws `count` parents by binary tournament on the selection keys.
/// Returns indices into the selected point slice.
pub fn mating_selection<R: Rng + ?Sized>(selection: &Selection, count: usize, rng: &mut R) -> Vec<usize> {
    (0..count).map(|_| selection.survivors[binary_tournament(&selection.keys, rng)]).collect()
}

/// Draws two indices uniformly with replacement and returns the one with
/// the lower key; the first draw wins ties.
///
/// # Panics
/// If `keys` is empty.
pub fn binary_tournament<T: PartialOrd, R: Rng + ?Sized>(keys: &[T], rng: &mut R) -> usize {
    let a = rng.gen_range(0..keys.len());
    let b = rng.gen_range(0..keys.len());
    if keys[b] < keys[a] {
        b
    } else {
        a
    }
}
