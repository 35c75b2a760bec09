use mozeno_core::{
    earliest_start_times, mutex, worst_front_makespan, AtomId, AtomSet, EarliestStarts, GroundTask, ModelError,
    MultiZenoConfig, Tenths,
};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::eval::EvalResult;

/// A task together with the atom restrictions used to build partial states.
#[derive(Clone, Debug)]
pub struct DaeProblem {
    task: GroundTask,
    est: EarliestStarts,
    buckets: Vec<Tenths>,
    allowed: Vec<Vec<AtomId>>,
    penalty_base: Tenths,
}

impl DaeProblem {
    /// `penalty_base` must exceed every feasible objective value.
    pub fn new(task: GroundTask, penalty_base: Tenths) -> Self {
        let est = earliest_start_times(&task);
        let buckets = est.distinct_times();
        let allowed = buckets.iter().map(|&b| est.allowed_at(b)).collect();
        DaeProblem { task, est, buckets, allowed, penalty_base }
    }

    /// Grounds a MultiZeno instance; the penalty base is ten times the
    /// worst makespan on its exact front.
    pub fn from_config(cfg: &MultiZenoConfig) -> Result<Self, ModelError> {
        let task = mozeno_core::ground_multizeno(cfg)?;
        Ok(DaeProblem::new(task, worst_front_makespan(cfg) * 10))
    }

    pub fn task(&self) -> &GroundTask {
        &self.task
    }

    pub fn earliest_starts(&self) -> &EarliestStarts {
        &self.est
    }

    /// Distinct finite earliest start times, increasing.
    pub fn buckets(&self) -> &[Tenths] {
        &self.buckets
    }

    /// Atoms whose earliest start time is at most `buckets()[i]`.
    pub fn allowed(&self, i: usize) -> &[AtomId] {
        &self.allowed[i]
    }

    pub fn bucket_index(&self, bucket: Tenths) -> Option<usize> {
        self.buckets.binary_search(&bucket).ok()
    }

    pub fn penalty_base(&self) -> Tenths {
        self.penalty_base
    }
}

/// A sorted, duplicate-free list of atoms tagged with the bucket it was drawn from.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PartialState {
    pub bucket: Tenths,
    pub atoms: Vec<AtomId>,
}

impl PartialState {
    pub fn new(bucket: Tenths, mut atoms: Vec<AtomId>) -> Self {
        atoms.sort();
        atoms.dedup();
        PartialState { bucket, atoms }
    }

    pub fn to_set(&self) -> AtomSet {
        AtomSet::from_ids(self.atoms.iter().copied())
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// True when `atom` is not already present and is not mutex with any atom.
    pub fn accepts(&self, task: &GroundTask, atom: AtomId) -> bool {
        let a = task.atom(atom);
        self.atoms.iter().all(|&b| b != atom && !mutex(a, task.atom(b)))
    }

    pub fn insert(&mut self, atom: AtomId) {
        if let Err(pos) = self.atoms.binary_search(&atom) {
            self.atoms.insert(pos, atom);
        }
    }
}

/// Broken representation invariant.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepresentationError {
    #[error("state {index} has bucket {bucket} after bucket {previous}")]
    Chronology { index: usize, bucket: Tenths, previous: Tenths },
    #[error("state {index} holds mutex atoms {a} and {b}")]
    Mutex { index: usize, a: String, b: String },
    #[error("state {index} holds {atom}, not allowed at bucket {bucket}")]
    NotAllowed { index: usize, atom: String, bucket: Tenths },
    #[error("state {index} is empty")]
    EmptyState { index: usize },
    #[error("state {index} has unsorted or duplicate atoms")]
    Unsorted { index: usize },
}

/// Variable-length sequence of partial states plus a cached evaluation.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Individual {
    pub states: Vec<PartialState>,
    pub evaluation: Option<EvalResult>,
}

impl Individual {
    pub fn new(states: Vec<PartialState>) -> Self {
        Individual { states, evaluation: None }
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// Checks chronology, pairwise non-mutex atoms and bucket restrictions.
    pub fn check(&self, problem: &DaeProblem) -> Result<(), RepresentationError> {
        let task = problem.task();
        for (index, s) in self.states.iter().enumerate() {
            if index > 0 && s.bucket < self.states[index - 1].bucket {
                return Err(RepresentationError::Chronology {
                    index,
                    bucket: s.bucket,
                    previous: self.states[index - 1].bucket,
                });
            }
            if s.atoms.is_empty() {
                return Err(RepresentationError::EmptyState { index });
            }
            if s.atoms.windows(2).any(|w| w[0] >= w[1]) {
                return Err(RepresentationError::Unsorted { index });
            }
            for (i, &a) in s.atoms.iter().enumerate() {
                match problem.earliest_starts().get(a) {
                    Some(t) if t <= s.bucket => {}
                    _ => {
                        return Err(RepresentationError::NotAllowed {
                            index,
                            atom: task.atom(a).to_string(),
                            bucket: s.bucket,
                        })
                    }
                }
                for &b in &s.atoms[i + 1..] {
                    if mutex(task.atom(a), task.atom(b)) {
                        return Err(RepresentationError::Mutex {
                            index,
                            a: task.atom(a).to_string(),
                            b: task.atom(b).to_string(),
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

impl Serialize for Individual {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.states.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Individual {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        Ok(Individual::new(Vec::deserialize(deserializer)?))
    }
}
