//! Best-first forward search with relaxed-plan lookahead.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use mozeno_core::{ActionId, AtomSet, GroundTask, Tenths};
use rand::seq::SliceRandom;
use rand::Rng;
use rustc_hash::FxHashMap;
use thiserror::Error;

use crate::relax::{Heuristic, Relaxation};
use crate::{ActionSequence, PlannerBudget, StrategyObjective};

/// Successful planner call.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub plan: ActionSequence,
    pub expanded: usize,
}

/// Why a planner call returned no plan.
#[derive(Clone, Copy, Debug, Error, PartialEq, Eq)]
pub enum SearchFailure {
    #[error("node budget exhausted after {expanded} expansions")]
    BudgetExhausted { expanded: usize },
    #[error("open list emptied after {expanded} expansions")]
    Exhausted { expanded: usize },
}

#[derive(Clone, Copy)]
struct Node {
    state: AtomSet,
    g: i64,
    parent: u32,
    /// Range of `Planner::edges` holding the actions leading here.
    first: u32,
    count: u32,
}

const ROOT: u32 = u32::MAX;

/// Reusable planner bound to one task. Not meant to be shared between
/// threads mid-search; create one per worker.
pub struct Planner<'t> {
    task: &'t GroundTask,
    relax: Relaxation,
    /// Actions indexed by their first precondition.
    triggers: Vec<Vec<u32>>,
    no_pre: Vec<u32>,
    order: Vec<Vec<u32>>,
    nodes: Vec<Node>,
    edges: Vec<ActionId>,
    seen: FxHashMap<AtomSet, i64>,
    open: BinaryHeap<Reverse<(i64, i64, u64, u32)>>,
}

impl<'t> Planner<'t> {
    pub fn new(task: &'t GroundTask) -> Self {
        let mut triggers = vec![Vec::new(); task.atoms().len()];
        let mut no_pre = Vec::new();
        for (i, a) in task.actions().iter().enumerate() {
            match a.pre_ids.first() {
                Some(p) => triggers[p.index()].push(i as u32),
                None => no_pre.push(i as u32),
            }
        }
        Planner {
            task,
            relax: Relaxation::new(task),
            order: triggers.clone(),
            triggers,
            no_pre,
            nodes: Vec::new(),
            edges: Vec::new(),
            seen: FxHashMap::default(),
            open: BinaryHeap::new(),
        }
    }

    pub fn task(&self) -> &'t GroundTask {
        self.task
    }

    /// Additive delete-relaxation estimate of reaching `goal` from `state`.
    ///
    /// Action weights are durations under [`StrategyObjective::Makespan`] and
    /// landing cost or risk under [`StrategyObjective::Secondary`], with a
    /// weight of 0.1 for otherwise free actions.
    pub fn heuristic(&mut self, state: &AtomSet, goal: &AtomSet, strategy: StrategyObjective) -> Heuristic {
        match self.relax.value(self.task, state, goal, strategy) {
            Some(v) => {
                Heuristic { value: Some(Tenths::from_raw(v)), relaxed: self.relax.relaxed_plan(self.task, state, goal) }
            }
            None => Heuristic { value: None, relaxed: ActionSequence::default() },
        }
    }

    /// Applies relaxed-plan actions greedily.
    ///
    /// Repeatedly applies the first unused relaxed action that is applicable
    /// and stops when none is.
    pub fn lookahead(&self, state: &AtomSet, relaxed: &ActionSequence) -> (AtomSet, ActionSequence) {
        let actions = self.task.actions();
        let mut used = vec![false; relaxed.len()];
        let mut current = *state;
        let mut prefix = Vec::new();
        loop {
            let next = relaxed
                .actions()
                .iter()
                .enumerate()
                .find(|(i, a)| !used[*i] && actions[a.index()].pre.is_subset(&current))
                .map(|(i, &a)| (i, a));
            let Some((i, a)) = next else { break };
            used[i] = true;
            let act = &actions[a.index()];
            current = current.difference(&act.del).union(&act.add);
            prefix.push(a);
        }
        (current, ActionSequence(prefix))
    }

    /// Greedy best-first search on `h` from `initial` to any state
    /// containing `goal`.
    ///
    /// Ties are broken by lower `g`, then by insertion order; `rng` shuffles the order in which
    /// successors are generated, once per call. Every expansion first
    /// generates the lookahead successor, then the ordinary ones. Goal states
    /// are detected when generated.
    pub fn solve<R: Rng + ?Sized>(
        &mut self,
        initial: &AtomSet,
        goal: &AtomSet,
        strategy: StrategyObjective,
        budget: PlannerBudget,
        rng: &mut R,
    ) -> Result<Solution, SearchFailure> {
        if goal.is_subset(initial) {
            return Ok(Solution { plan: ActionSequence::default(), expanded: 0 });
        }
        for (dst, src) in self.order.iter_mut().zip(&self.triggers) {
            dst.clear();
            dst.extend_from_slice(src);
            dst.shuffle(rng);
        }
        self.nodes.clear();
        self.edges.clear();
        self.seen.clear();
        self.open.clear();
        let mut counter: u64 = 0;

        let Some(h) = self.relax.value(self.task, initial, goal, strategy) else {
            return Err(SearchFailure::Exhausted { expanded: 0 });
        };
        self.nodes.push(Node { state: *initial, g: 0, parent: ROOT, first: 0, count: 0 });
        self.seen.insert(*initial, 0);
        self.open.push(Reverse((h, 0, counter, 0)));

        let mut expanded = 0;
        let mut scratch: Vec<ActionId> = Vec::new();
        while let Some(Reverse((_, _, _, id))) = self.open.pop() {
            let node = self.nodes[id as usize];
            if self.seen.get(&node.state).is_some_and(|&g| g < node.g) {
                continue;
            }
            if expanded == budget.max_expanded() {
                return Err(SearchFailure::BudgetExhausted { expanded });
            }
            expanded += 1;

            if self.relax.value(self.task, &node.state, goal, strategy).is_none() {
                continue;
            }
            let relaxed = self.relax.relaxed_plan(self.task, &node.state, goal);
            let (ahead, prefix) = self.lookahead(&node.state, &relaxed);
            if !prefix.is_empty() {
                let weights = self.relax.weights(strategy);
                let g = node.g + prefix.actions().iter().map(|a| weights[a.index()]).sum::<i64>();
                if self.generate(ahead, g, id, prefix.actions(), goal, strategy, &mut counter) {
                    return Ok(self.solution(expanded));
                }
            }

            scratch.clear();
            for atom in node.state.iter() {
                for &a in &self.order[atom.index()] {
                    if self.task.actions()[a as usize].pre.is_subset(&node.state) {
                        scratch.push(ActionId(a));
                    }
                }
            }
            for &a in &self.no_pre {
                scratch.push(ActionId(a));
            }
            for &a in &scratch {
                let act = &self.task.actions()[a.index()];
                let next = node.state.difference(&act.del).union(&act.add);
                let g = node.g + self.relax.weights(strategy)[a.index()];
                if self.generate(next, g, id, &[a], goal, strategy, &mut counter) {
                    return Ok(self.solution(expanded));
                }
            }
        }
        Err(SearchFailure::Exhausted { expanded })
    }

    /// Adds a successor; returns true when it satisfies the goal.
    #[allow(clippy::too_many_arguments)]
    fn generate(
        &mut self,
        state: AtomSet,
        g: i64,
        parent: u32,
        via: &[ActionId],
        goal: &AtomSet,
        strategy: StrategyObjective,
        counter: &mut u64,
    ) -> bool {
        if let Some(&old) = self.seen.get(&state) {
            if old <= g {
                return false;
            }
        }
        let reached = goal.is_subset(&state);
        let h = if reached { Some(0) } else { self.relax.value(self.task, &state, goal, strategy) };
        let Some(h) = h else { return false };
        self.seen.insert(state, g);
        let first = self.edges.len() as u32;
        self.edges.extend_from_slice(via);
        let id = self.nodes.len() as u32;
        self.nodes.push(Node { state, g, parent, first, count: via.len() as u32 });
        if reached {
            return true;
        }
        *counter += 1;
        self.open.push(Reverse((h, g, *counter, id)));
        false
    }

    fn solution(&self, expanded: usize) -> Solution {
        let mut id = (self.nodes.len() - 1) as u32;
        let mut chunks = Vec::new();
        while id != ROOT {
            let n = &self.nodes[id as usize];
            chunks.push(&self.edges[n.first as usize..(n.first + n.count) as usize]);
            id = n.parent;
        }
        let plan = chunks.iter().rev().flat_map(|c| c.iter().copied()).collect();
        Solution { plan: ActionSequence(plan), expanded }
    }
}
