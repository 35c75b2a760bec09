//! Additive delete relaxation: heuristic values and relaxed plans.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use mozeno_core::{ActionId, AtomSet, GroundTask, Tenths};

use crate::{ActionSequence, StrategyObjective};

/// Weight given to zero-weight actions so that plateaus still have a slope.
pub(crate) const EPSILON_WEIGHT: i64 = 1;

const INF: i64 = i64::MAX;

/// Heuristic estimate with its relaxed plan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Heuristic {
    /// Sum of additive costs of the goal atoms; `None` when the goal is
    /// unreachable even in the relaxation.
    pub value: Option<Tenths>,
    /// Supporting actions of the goal atoms, ordered by relaxed layer.
    pub relaxed: ActionSequence,
}

/// Static indices and scratch buffers of the relaxation.
pub(crate) struct Relaxation {
    consumers: Vec<Vec<u32>>,
    pre_len: Vec<u32>,
    no_pre: Vec<u32>,
    weights: [Vec<i64>; 2],
    cost: Vec<i64>,
    level: Vec<u32>,
    supporter: Vec<u32>,
    done: Vec<bool>,
    remaining: Vec<u32>,
    act_sum: Vec<i64>,
    act_level: Vec<u32>,
    selected: Vec<bool>,
    heap: BinaryHeap<Reverse<(i64, u32)>>,
}

impl Relaxation {
    pub(crate) fn new(task: &GroundTask) -> Self {
        let atoms = task.atoms().len();
        let actions = task.actions();
        let mut consumers = vec![Vec::new(); atoms];
        let mut no_pre = Vec::new();
        for (i, a) in actions.iter().enumerate() {
            for p in &a.pre_ids {
                consumers[p.index()].push(i as u32);
            }
            if a.pre_ids.is_empty() {
                no_pre.push(i as u32);
            }
        }
        let makespan = actions.iter().map(|a| a.duration.raw()).collect();
        let secondary = actions.iter().map(|a| a.secondary_weight(task.mode()).raw().max(EPSILON_WEIGHT)).collect();
        Relaxation {
            consumers,
            pre_len: actions.iter().map(|a| a.pre_ids.len() as u32).collect(),
            no_pre,
            weights: [makespan, secondary],
            cost: vec![INF; atoms],
            level: vec![0; atoms],
            supporter: vec![u32::MAX; atoms],
            done: vec![false; atoms],
            remaining: vec![0; actions.len()],
            act_sum: vec![0; actions.len()],
            act_level: vec![0; actions.len()],
            selected: vec![false; actions.len()],
            heap: BinaryHeap::new(),
        }
    }

    pub(crate) fn weights(&self, strategy: StrategyObjective) -> &[i64] {
        match strategy {
            StrategyObjective::Makespan => &self.weights[0],
            StrategyObjective::Secondary => &self.weights[1],
        }
    }

    /// Runs the additive relaxation until every goal atom has its final cost.
    /// Returns the heuristic value in raw tenths.
    pub(crate) fn value(
        &mut self,
        task: &GroundTask,
        state: &AtomSet,
        goal: &AtomSet,
        strategy: StrategyObjective,
    ) -> Option<i64> {
        let open_goals = goal.difference(state);
        if open_goals.is_empty() {
            return Some(0);
        }
        let mut goals_left = open_goals.len();
        let weights = match strategy {
            StrategyObjective::Makespan => &self.weights[0],
            StrategyObjective::Secondary => &self.weights[1],
        };
        self.cost.fill(INF);
        self.done.fill(false);
        self.act_sum.fill(0);
        self.act_level.fill(0);
        self.remaining.copy_from_slice(&self.pre_len);
        self.heap.clear();
        for id in state.iter() {
            self.cost[id.index()] = 0;
            self.level[id.index()] = 0;
            self.heap.push(Reverse((0, id.0 as u32)));
        }
        let actions = task.actions();
        let fire = |a: usize,
                    cost: &mut Vec<i64>,
                    level: &mut Vec<u32>,
                    supporter: &mut Vec<u32>,
                    heap: &mut BinaryHeap<Reverse<(i64, u32)>>,
                    sum: i64,
                    lvl: u32| {
            let c = sum + weights[a];
            for add in &actions[a].add_ids {
                let i = add.index();
                if c < cost[i] {
                    cost[i] = c;
                    level[i] = lvl + 1;
                    supporter[i] = a as u32;
                    heap.push(Reverse((c, i as u32)));
                }
            }
        };
        for &a in &self.no_pre {
            fire(a as usize, &mut self.cost, &mut self.level, &mut self.supporter, &mut self.heap, 0, 0);
        }
        while let Some(Reverse((c, atom))) = self.heap.pop() {
            let atom = atom as usize;
            if self.done[atom] || c > self.cost[atom] {
                continue;
            }
            self.done[atom] = true;
            if open_goals.contains(mozeno_core::AtomId(atom as u16)) {
                goals_left -= 1;
                if goals_left == 0 {
                    break;
                }
            }
            let lvl = self.level[atom];
            for &a in &self.consumers[atom] {
                let a = a as usize;
                self.remaining[a] -= 1;
                self.act_sum[a] += c;
                self.act_level[a] = self.act_level[a].max(lvl);
                if self.remaining[a] == 0 {
                    let (sum, alvl) = (self.act_sum[a], self.act_level[a]);
                    fire(a, &mut self.cost, &mut self.level, &mut self.supporter, &mut self.heap, sum, alvl);
                }
            }
        }
        let mut total: i64 = 0;
        for g in open_goals.iter() {
            let c = self.cost[g.index()];
            if c == INF {
                return None;
            }
            total += c;
        }
        Some(total)
    }

    /// Extracts the relaxed plan after a successful [`Relaxation::value`] call.
    pub(crate) fn relaxed_plan(&mut self, task: &GroundTask, state: &AtomSet, goal: &AtomSet) -> ActionSequence {
        self.selected.fill(false);
        let mut reached = *state;
        let mut stack: Vec<mozeno_core::AtomId> = goal.difference(state).iter().collect();
        stack.reverse();
        let mut picked: Vec<u32> = Vec::new();
        while let Some(atom) = stack.pop() {
            if reached.contains(atom) {
                continue;
            }
            reached.insert(atom);
            let a = self.supporter[atom.index()];
            if !self.selected[a as usize] {
                self.selected[a as usize] = true;
                picked.push(a);
                for p in task.actions()[a as usize].pre_ids.iter().rev() {
                    if !reached.contains(*p) {
                        stack.push(*p);
                    }
                }
            }
        }
        // Layer of an action: the deepest layer among its preconditions.
        let layer = |a: u32| {
            task.actions()[a as usize]
                .pre_ids
                .iter()
                .map(|p| if state.contains(*p) { 0 } else { self.level[p.index()] })
                .max()
                .unwrap_or(0)
        };
        let mut keyed: Vec<(u32, u32)> = picked.iter().map(|&a| (layer(a), a)).collect();
        keyed.sort_by_key(|&(l, _)| l);
        ActionSequence(keyed.into_iter().map(|(_, a)| ActionId(a)).collect())
    }
}
