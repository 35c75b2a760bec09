//! Ground durative actions and planning tasks.

use std::fmt;

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::atoms::{Atom, AtomId, AtomSet, Predicate};
use crate::error::ModelError;
use crate::quantity::Tenths;

/// Which quantity plays the role of the second objective.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ObjectiveMode {
    /// Sum of landing taxes.
    #[default]
    Cost,
    /// Maximal landing risk met during execution.
    Risk,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ActionKind {
    Fly,
    Transport,
}

/// Index of an action in its task.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ActionId(pub u32);

impl ActionId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GroundAction {
    pub kind: ActionKind,
    pub plane: usize,
    pub passenger: Option<usize>,
    pub from: usize,
    pub to: usize,
    pub duration: Tenths,
    pub landing_cost: Tenths,
    pub landing_risk: Tenths,
    pub pre: AtomSet,
    pub add: AtomSet,
    pub del: AtomSet,
    /// Same atoms as `pre`, as a list.
    pub pre_ids: Vec<AtomId>,
    /// Same atoms as `add`, as a list.
    pub add_ids: Vec<AtomId>,
}

impl GroundAction {
    /// Weight of the action for the second objective.
    pub fn secondary_weight(&self, mode: ObjectiveMode) -> Tenths {
        match mode {
            ObjectiveMode::Cost => self.landing_cost,
            ObjectiveMode::Risk => self.landing_risk,
        }
    }

    pub fn shares_object(&self, other: &GroundAction) -> bool {
        self.plane == other.plane || matches!((self.passenger, other.passenger), (Some(a), Some(b)) if a == b)
    }

    pub fn name(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for GroundAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.passenger {
            None => write!(f, "fly(plane{},city{},city{})", self.plane, self.from, self.to),
            Some(q) => write!(f, "transport(plane{},person{},city{},city{})", self.plane, q, self.from, self.to),
        }
    }
}

/// A ground planning problem: atom universe, actions, initial and goal states.
#[derive(Clone, Debug)]
pub struct GroundTask {
    atoms: Vec<Atom>,
    index: FxHashMap<Atom, AtomId>,
    actions: Vec<GroundAction>,
    initial: AtomSet,
    goal: AtomSet,
    mode: ObjectiveMode,
    plane_count: usize,
    passenger_count: usize,
    city_count: usize,
}

impl GroundTask {
    /// Builds a task and checks its structural invariants.
    pub fn new(
        atoms: Vec<Atom>,
        actions: Vec<GroundAction>,
        initial: AtomSet,
        goal: AtomSet,
        mode: ObjectiveMode,
    ) -> Result<Self, ModelError> {
        if atoms.len() > AtomSet::CAPACITY {
            return Err(ModelError::InstanceTooLarge(format!(
                "{} atoms exceed the capacity of {}",
                atoms.len(),
                AtomSet::CAPACITY
            )));
        }
        let mut index = FxHashMap::default();
        for (i, atom) in atoms.iter().enumerate() {
            if index.insert(*atom, AtomId(i as u16)).is_some() {
                return Err(ModelError::InvalidConfig(format!("duplicate atom {atom}")));
            }
        }
        let plane_count =
            atoms.iter().filter(|a| a.predicate == Predicate::PlaneAt).map(|a| a.object + 1).max().unwrap_or(0);
        let passenger_count =
            atoms.iter().filter(|a| a.predicate == Predicate::PersonAt).map(|a| a.object + 1).max().unwrap_or(0);
        let city_count = atoms.iter().map(|a| a.city + 1).max().unwrap_or(0);

        let universe = AtomSet::from_ids((0..atoms.len()).map(|i| AtomId(i as u16)));
        if !goal.is_subset(&universe) || !initial.is_subset(&universe) {
            return Err(ModelError::InvalidConfig("state atoms outside the universe".into()));
        }
        for action in &actions {
            if action.add.intersects(&action.del) {
                return Err(ModelError::InvalidConfig(format!("{action}: add and delete effects overlap")));
            }
            if !action.duration.is_positive() {
                return Err(ModelError::InvalidConfig(format!("{action}: non-positive duration")));
            }
            if action.landing_cost.is_negative() || action.landing_risk.is_negative() {
                return Err(ModelError::InvalidConfig(format!("{action}: negative landing weight")));
            }
        }

        let task = GroundTask { atoms, index, actions, initial, goal, mode, plane_count, passenger_count, city_count };
        if !task.is_consistent_full_state(&initial) {
            return Err(ModelError::InvalidConfig("initial state must place every object in exactly one city".into()));
        }
        Ok(task)
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn atom(&self, id: AtomId) -> &Atom {
        &self.atoms[id.index()]
    }

    pub fn atom_id(&self, atom: &Atom) -> Option<AtomId> {
        self.index.get(atom).copied()
    }

    pub fn actions(&self) -> &[GroundAction] {
        &self.actions
    }

    pub fn action(&self, id: ActionId) -> &GroundAction {
        &self.actions[id.index()]
    }

    pub fn initial(&self) -> &AtomSet {
        &self.initial
    }

    pub fn goal(&self) -> &AtomSet {
        &self.goal
    }

    pub fn mode(&self) -> ObjectiveMode {
        self.mode
    }

    pub fn plane_count(&self) -> usize {
        self.plane_count
    }

    pub fn passenger_count(&self) -> usize {
        self.passenger_count
    }

    pub fn city_count(&self) -> usize {
        self.city_count
    }

    /// Looks up the action moving `plane` (and optionally `passenger`) from `from` to `to`.
    pub fn find_action(&self, plane: usize, passenger: Option<usize>, from: usize, to: usize) -> Option<ActionId> {
        self.actions
            .iter()
            .position(|a| a.plane == plane && a.passenger == passenger && a.from == from && a.to == to)
            .map(|i| ActionId(i as u32))
    }

    /// Returns a copy of the task with another goal.
    pub fn with_goal(&self, goal: AtomSet) -> GroundTask {
        GroundTask { goal, ..self.clone() }
    }

    /// Returns a copy of the task restricted to the actions kept by `keep`.
    pub fn filter_actions<F: FnMut(&GroundAction) -> bool>(&self, mut keep: F) -> GroundTask {
        GroundTask { actions: self.actions.iter().filter(|a| keep(a)).cloned().collect(), ..self.clone() }
    }

    /// True when every plane and passenger is in exactly one city.
    pub fn is_consistent_full_state(&self, state: &AtomSet) -> bool {
        let mut planes = vec![0usize; self.plane_count];
        let mut people = vec![0usize; self.passenger_count];
        for id in state.iter() {
            let atom = self.atom(id);
            match atom.predicate {
                Predicate::PlaneAt => planes[atom.object] += 1,
                Predicate::PersonAt => people[atom.object] += 1,
            }
        }
        planes.iter().chain(people.iter()).all(|&c| c == 1)
    }

    pub fn describe_state(&self, state: &AtomSet) -> String {
        let parts: Vec<String> = state.iter().map(|id| self.atom(id).to_string()).collect();
        format!("{{{}}}", parts.join(", "))
    }
}

/// Applies one action sequentially: `(state \ del) ∪ add`.
pub fn step(task: &GroundTask, state: &AtomSet, action: ActionId) -> Result<AtomSet, ModelError> {
    let a = task.action(action);
    if let Some(missing) = a.pre.difference(state).iter().next() {
        return Err(ModelError::Inapplicable { action: a.to_string(), missing: task.atom(missing).to_string() });
    }
    Ok(state.difference(&a.del).union(&a.add))
}

/// Applies a whole sequence, failing on the first inapplicable action.
pub fn execute_sequence(task: &GroundTask, state: &AtomSet, actions: &[ActionId]) -> Result<AtomSet, ModelError> {
    actions.iter().try_fold(*state, |s, &a| step(task, &s, a))
}
