//! The MultiZeno benchmark family.
//!
//! Planes and passengers start in `city0` and every passenger must reach the
//! destination city. The only links go from `city0` to each central city and
//! from each central city to the destination; both legs of corridor `i` take
//! `durations[i]`. Every landing in central city `i` pays `costs[i]` (cost
//! instances) or exposes the plan to `risks[i]` (risk instances).

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::atoms::{Atom, AtomId, AtomSet};
use crate::error::ModelError;
use crate::quantity::Tenths;
use crate::task::{ActionKind, GroundAction, GroundTask, ObjectiveMode};

pub const DEFAULT_PLANES: usize = 2;
pub const MAX_CENTRAL_CITIES: usize = 3;

fn default_planes() -> usize {
    DEFAULT_PLANES
}

fn default_durations() -> Vec<Tenths> {
    vec![Tenths::from_int(2), Tenths::from_int(4), Tenths::from_int(6)]
}

fn default_costs() -> Vec<Tenths> {
    vec![Tenths::from_int(3), Tenths::from_int(2), Tenths::from_int(1)]
}

fn default_risks() -> Vec<Tenths> {
    vec![Tenths::from_int(3), Tenths::from_int(2), Tenths::from_int(1)]
}

/// Parameters of a MultiZeno instance; also the instance-file schema.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MultiZenoConfig {
    /// Number of bunches of three passengers.
    pub k: usize,
    #[serde(default = "default_planes")]
    pub planes: usize,
    #[serde(default = "default_durations")]
    pub durations: Vec<Tenths>,
    #[serde(default = "default_costs")]
    pub costs: Vec<Tenths>,
    #[serde(default = "default_risks")]
    pub risks: Vec<Tenths>,
    #[serde(default)]
    pub mode: ObjectiveMode,
}

impl MultiZenoConfig {
    /// Default instance with `k` bunches, cost mode, `alpha = 2`.
    pub fn new(k: usize) -> Self {
        MultiZenoConfig {
            k,
            planes: DEFAULT_PLANES,
            durations: default_durations(),
            costs: default_costs(),
            risks: default_risks(),
            mode: ObjectiveMode::Cost,
        }
    }

    pub fn with_mode(mut self, mode: ObjectiveMode) -> Self {
        self.mode = mode;
        self
    }

    /// Sets the landing tax of the middle central city.
    pub fn with_alpha(mut self, alpha: Tenths) -> Self {
        if self.costs.len() >= 2 {
            self.costs[1] = alpha;
        }
        self
    }

    pub fn with_planes(mut self, planes: usize) -> Self {
        self.planes = planes;
        self
    }

    pub fn passengers(&self) -> usize {
        3 * self.k
    }

    pub fn central_cities(&self) -> usize {
        self.durations.len()
    }

    pub fn city_count(&self) -> usize {
        self.central_cities() + 2
    }

    /// Index of the destination city (`city4` by default).
    pub fn destination(&self) -> usize {
        self.central_cities() + 1
    }

    /// Landing weights of the central cities for the configured mode.
    pub fn secondary_weights(&self) -> &[Tenths] {
        match self.mode {
            ObjectiveMode::Cost => &self.costs,
            ObjectiveMode::Risk => &self.risks,
        }
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        let bad = |msg: String| Err(ModelError::InvalidConfig(msg));
        if self.k == 0 {
            return bad("k must be at least 1".into());
        }
        if self.planes == 0 {
            return bad("at least one plane is required".into());
        }
        if self.planes >= self.passengers() {
            return bad(format!(
                "plane count {} must be smaller than passenger count {}",
                self.planes,
                self.passengers()
            ));
        }
        let c = self.central_cities();
        if c == 0 || c > MAX_CENTRAL_CITIES {
            return bad(format!("between 1 and {MAX_CENTRAL_CITIES} central cities are supported"));
        }
        if self.costs.len() != c || self.risks.len() != c {
            return bad("durations, costs and risks must have the same length".into());
        }
        if self.durations.iter().any(|d| !d.is_positive()) {
            return bad("durations must be positive".into());
        }
        if self.costs.iter().chain(&self.risks).any(|v| v.is_negative()) {
            return bad("costs and risks must be non-negative".into());
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self, ModelError> {
        let cfg: MultiZenoConfig = serde_json::from_str(text)
            .map_err(|e| ModelError::Parse(format!("line {} column {}: {e}", e.line(), e.column())))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instance serializes")
    }

    pub fn load(path: &Path) -> Result<Self, ModelError> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text)
    }
}

/// Grounds a MultiZeno instance into a task.
pub fn ground_multizeno(cfg: &MultiZenoConfig) -> Result<GroundTask, ModelError> {
    cfg.validate()?;
    let cities = cfg.city_count();
    let planes = cfg.planes;
    let people = cfg.passengers();
    let dest = cfg.destination();

    let mut atoms = Vec::with_capacity((planes + people) * cities);
    for p in 0..planes {
        for c in 0..cities {
            atoms.push(Atom::plane_at(p, c));
        }
    }
    for q in 0..people {
        for c in 0..cities {
            atoms.push(Atom::person_at(q, c));
        }
    }
    if atoms.len() > AtomSet::CAPACITY {
        return Err(ModelError::InstanceTooLarge(format!(
            "{} atoms exceed the capacity of {}",
            atoms.len(),
            AtomSet::CAPACITY
        )));
    }
    let plane_atom = |p: usize, c: usize| AtomId((p * cities + c) as u16);
    let person_atom = |q: usize, c: usize| AtomId(((planes + q) * cities + c) as u16);

    // Directed edges with the central city index of their corridor.
    let mut edges = Vec::new();
    for i in 0..cfg.central_cities() {
        let central = i + 1;
        edges.push((0, central, i));
        edges.push((central, 0, i));
        edges.push((central, dest, i));
        edges.push((dest, central, i));
    }

    let landing = |to: usize, i: usize| {
        if to == i + 1 {
            (cfg.costs[i], cfg.risks[i])
        } else {
            (Tenths::ZERO, Tenths::ZERO)
        }
    };

    let mut actions = Vec::new();
    for p in 0..planes {
        for &(from, to, i) in &edges {
            let (cost, risk) = landing(to, i);
            let pre = vec![plane_atom(p, from)];
            let add = vec![plane_atom(p, to)];
            actions.push(GroundAction {
                kind: ActionKind::Fly,
                plane: p,
                passenger: None,
                from,
                to,
                duration: cfg.durations[i],
                landing_cost: cost,
                landing_risk: risk,
                pre: AtomSet::from_ids(pre.iter().copied()),
                add: AtomSet::from_ids(add.iter().copied()),
                del: AtomSet::from_ids(pre.iter().copied()),
                pre_ids: pre,
                add_ids: add,
            });
        }
    }
    for p in 0..planes {
        for q in 0..people {
            for &(from, to, i) in &edges {
                let (cost, risk) = landing(to, i);
                let pre = vec![plane_atom(p, from), person_atom(q, from)];
                let add = vec![plane_atom(p, to), person_atom(q, to)];
                actions.push(GroundAction {
                    kind: ActionKind::Transport,
                    plane: p,
                    passenger: Some(q),
                    from,
                    to,
                    duration: cfg.durations[i],
                    landing_cost: cost,
                    landing_risk: risk,
                    pre: AtomSet::from_ids(pre.iter().copied()),
                    add: AtomSet::from_ids(add.iter().copied()),
                    del: AtomSet::from_ids(pre.iter().copied()),
                    pre_ids: pre,
                    add_ids: add,
                });
            }
        }
    }

    let initial =
        AtomSet::from_ids((0..planes).map(|p| plane_atom(p, 0)).chain((0..people).map(|q| person_atom(q, 0))));
    let goal = AtomSet::from_ids((0..people).map(|q| person_atom(q, dest)));
    GroundTask::new(atoms, actions, initial, goal, cfg.mode)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::task::step;

    #[test]
    fn default_k1_counts() {
        let task = ground_multizeno(&MultiZenoConfig::new(1)).unwrap();
        assert_eq!(task.atoms().len(), 25);
        assert_eq!(task.actions().len(), 96);
        let fly = task.actions().iter().filter(|a| a.kind == ActionKind::Fly).count();
        assert_eq!(fly, 24);
    }

    #[test]
    fn default_k1_goal() {
        let task = ground_multizeno(&MultiZenoConfig::new(1)).unwrap();
        let goal: Vec<Atom> = task.goal().iter().map(|id| *task.atom(id)).collect();
        assert_eq!(goal, vec![Atom::person_at(0, 4), Atom::person_at(1, 4), Atom::person_at(2, 4)]);
    }

    #[test]
    fn rejects_as_many_planes_as_passengers() {
        let cfg = MultiZenoConfig::new(1).with_planes(3);
        assert!(matches!(ground_multizeno(&cfg), Err(ModelError::InvalidConfig(_))));
    }

    #[test]
    fn no_direct_edge_to_destination() {
        let task = ground_multizeno(&MultiZenoConfig::new(2)).unwrap();
        assert!(task.actions().iter().all(|a| {
            let pair = (a.from.min(a.to), a.from.max(a.to));
            pair != (0, 4) && a.from != a.to
        }));
    }

    #[test]
    fn landing_weights_only_on_central_cities() {
        let task = ground_multizeno(&MultiZenoConfig::new(1)).unwrap();
        for a in task.actions() {
            if a.to == 0 || a.to == 4 {
                assert_eq!(a.landing_cost, Tenths::ZERO);
                assert_eq!(a.landing_risk, Tenths::ZERO);
            } else {
                assert!(a.landing_cost.is_positive());
            }
        }
    }

    #[test]
    fn step_examples() {
        let task = ground_multizeno(&MultiZenoConfig::new(1)).unwrap();
        let find = |kind: ActionKind, plane: usize, person: Option<usize>, from: usize, to: usize| {
            let idx = task
                .actions()
                .iter()
                .position(|a| {
                    a.kind == kind && a.plane == plane && a.passenger == person && a.from == from && a.to == to
                })
                .unwrap();
            crate::task::ActionId(idx as u32)
        };
        let fly = find(ActionKind::Fly, 0, None, 0, 1);
        let carry = find(ActionKind::Transport, 0, Some(0), 1, 4);
        let s1 = step(&task, task.initial(), fly).unwrap();
        let p00 = task.atom_id(&Atom::plane_at(0, 0)).unwrap();
        let p01 = task.atom_id(&Atom::plane_at(0, 1)).unwrap();
        assert!(!s1.contains(p00) && s1.contains(p01));
        assert_eq!(s1.len(), task.initial().len());

        assert!(matches!(step(&task, task.initial(), carry), Err(ModelError::Inapplicable { .. })));

        // Chain: the passenger is still in city0, so carrying needs it in city1 first.
        assert!(step(&task, &s1, carry).is_err());
        let board = find(ActionKind::Transport, 1, Some(0), 0, 1);
        let s2 = step(&task, &s1, board).unwrap();
        let s3 = step(&task, &s2, find(ActionKind::Transport, 1, Some(0), 1, 4)).unwrap();
        assert!(task.is_consistent_full_state(&s2));
        assert!(task.is_consistent_full_state(&s3));
    }

    #[test]
    fn instance_json_round_trip_and_defaults() {
        let cfg = MultiZenoConfig::new(2).with_alpha(Tenths::from_raw(11));
        let back = MultiZenoConfig::from_json(&cfg.to_json()).unwrap();
        assert_eq!(back, cfg);

        let risk = MultiZenoConfig::from_json(r#"{"k":1,"costs":[3,2,1],"mode":"risk"}"#).unwrap();
        assert_eq!(risk.risks, default_risks());
        assert_eq!(risk.mode, ObjectiveMode::Risk);

        assert!(MultiZenoConfig::from_json(r#"{"k":1,"colour":"red"}"#).is_err());
        assert!(MultiZenoConfig::from_json(r#"{"k":1,"durations":[2,0,6]}"#).is_err());
    }
}
