//! Time-stamped plans and their validation.

use crate::atoms::AtomSet;
use crate::error::ModelError;
use crate::objective::ObjectivePoint;
use crate::quantity::Tenths;
use crate::task::{ActionId, GroundTask, ObjectiveMode};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ScheduledAction {
    pub start: Tenths,
    pub action: ActionId,
}

/// A list of time-stamped actions.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ScheduledPlan {
    steps: Vec<ScheduledAction>,
    makespan: Tenths,
}

impl ScheduledPlan {
    pub fn new(task: &GroundTask, steps: Vec<ScheduledAction>) -> Self {
        let makespan = steps.iter().map(|s| s.start + task.action(s.action).duration).max().unwrap_or(Tenths::ZERO);
        ScheduledPlan { steps, makespan }
    }

    pub fn steps(&self) -> &[ScheduledAction] {
        &self.steps
    }

    pub fn makespan(&self) -> Tenths {
        self.makespan
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Debug dump with one `start,action` row per step.
    pub fn to_csv(&self, task: &GroundTask) -> String {
        let mut out = String::from("start,action\n");
        for s in &self.steps {
            out.push_str(&format!("{},{}\n", s.start, task.action(s.action)));
        }
        out
    }
}

/// Secondary objective of a set of executed actions.
pub fn secondary_of<I>(task: &GroundTask, actions: I) -> Tenths
where
    I: IntoIterator<Item = ActionId>,
{
    let weights = actions.into_iter().map(|a| task.action(a).secondary_weight(task.mode()));
    match task.mode() {
        ObjectiveMode::Cost => weights.sum(),
        ObjectiveMode::Risk => weights.max().unwrap_or(Tenths::ZERO),
    }
}

/// Simulates the timed execution of `plan` and returns its objectives.
///
/// At every start time the effects of all actions that ended at or before
/// that time are applied first; actions overlapping in time may not share a
/// plane or a passenger; the goal must hold once every action has ended.
pub fn validate_plan(task: &GroundTask, plan: &ScheduledPlan) -> Result<ObjectivePoint, ModelError> {
    let steps = plan.steps();
    for s in steps {
        if s.action.index() >= task.actions().len() {
            return Err(ModelError::InvalidPlan(format!("unknown action id {}", s.action.0)));
        }
        if s.start.is_negative() {
            return Err(ModelError::InvalidPlan(format!(
                "{} starts at negative time {}",
                task.action(s.action),
                s.start
            )));
        }
    }
    let end = |s: &ScheduledAction| s.start + task.action(s.action).duration;

    for (i, a) in steps.iter().enumerate() {
        for b in &steps[i + 1..] {
            let (ga, gb) = (task.action(a.action), task.action(b.action));
            if ga.shares_object(gb) && a.start < end(b) && b.start < end(a) {
                return Err(ModelError::InvalidPlan(format!(
                    "{ga} at {} overlaps {gb} at {} on a shared object",
                    a.start, b.start
                )));
            }
        }
    }

    let mut by_start: Vec<usize> = (0..steps.len()).collect();
    by_start.sort_by_key(|&i| (steps[i].start, i));
    let mut by_end: Vec<usize> = (0..steps.len()).collect();
    by_end.sort_by_key(|&i| (end(&steps[i]), i));

    let apply = |state: &mut AtomSet, i: usize| {
        let a = task.action(steps[i].action);
        *state = state.difference(&a.del).union(&a.add);
    };

    let mut state = *task.initial();
    let mut next_end = 0;
    for &i in &by_start {
        let t = steps[i].start;
        while next_end < by_end.len() && end(&steps[by_end[next_end]]) <= t {
            apply(&mut state, by_end[next_end]);
            next_end += 1;
        }
        let a = task.action(steps[i].action);
        if let Some(missing) = a.pre.difference(&state).iter().next() {
            return Err(ModelError::InvalidPlan(format!(
                "{a} at {t}: precondition {} does not hold",
                task.atom(missing)
            )));
        }
    }
    for &i in &by_end[next_end..] {
        apply(&mut state, i);
    }
    if let Some(missing) = task.goal().difference(&state).iter().next() {
        return Err(ModelError::InvalidPlan(format!(
            "goal atom {} does not hold at the end of the plan",
            task.atom(missing)
        )));
    }

    Ok(ObjectivePoint::new(plan.makespan(), secondary_of(task, steps.iter().map(|s| s.action))))
}
