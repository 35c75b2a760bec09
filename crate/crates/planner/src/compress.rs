//! Left-shift scheduling of sequential plans.

use mozeno_core::{validate_plan, GroundTask, ModelError, ObjectivePoint, ScheduledAction, ScheduledPlan, Tenths};

use crate::ActionSequence;

/// Schedules `seq`, executed from the task's initial state, as early as its
/// dependencies allow.
///
/// Each action starts once every earlier action it depends on has ended: one
/// sharing a plane or passenger, the achiever of one of its preconditions,
/// one whose precondition it deletes, or one whose effects interfere with
/// its own.
pub fn compress(task: &GroundTask, seq: &ActionSequence) -> Result<ScheduledPlan, ModelError> {
    let actions = task.actions();
    let mut state = *task.initial();
    let mut achiever: Vec<Option<usize>> = vec![None; task.atoms().len()];
    let mut ends: Vec<Tenths> = Vec::with_capacity(seq.len());
    let mut steps = Vec::with_capacity(seq.len());

    for (j, &b) in seq.actions().iter().enumerate() {
        let act = &actions[b.index()];
        let before = state;
        state = mozeno_core::step(task, &state, b).map_err(|e| match e {
            ModelError::Inapplicable { action, missing } => {
                ModelError::InvalidPlan(format!("step {j}: {action} needs {missing}"))
            }
            other => other,
        })?;
        let mut start = Tenths::ZERO;
        for p in &act.pre_ids {
            if let Some(i) = achiever[p.index()] {
                start = start.max(ends[i]);
            }
        }
        for (i, &a) in seq.actions()[..j].iter().enumerate() {
            let prev = &actions[a.index()];
            if prev.shares_object(act)
                || act.del.intersects(&prev.pre)
                || act.del.intersects(&prev.add)
                || act.add.intersects(&prev.del)
            {
                start = start.max(ends[i]);
            }
        }
        ends.push(start + act.duration);
        steps.push(ScheduledAction { start, action: b });
        for p in &act.add_ids {
            if !before.contains(*p) {
                achiever[p.index()] = Some(j);
            }
        }
    }
    Ok(ScheduledPlan::new(task, steps))
}

/// Objectives of a valid plan.
pub fn objectives_of(task: &GroundTask, plan: &ScheduledPlan) -> Result<ObjectivePoint, ModelError> {
    validate_plan(task, plan)
}
