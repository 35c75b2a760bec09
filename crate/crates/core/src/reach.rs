//! Earliest start times from a delete-relaxed temporal fixed point.

use crate::atoms::AtomId;
use crate::quantity::Tenths;
use crate::task::GroundTask;

/// Earliest time each atom can become true; `None` stands for unreachable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EarliestStarts {
    times: Vec<Option<Tenths>>,
}

impl EarliestStarts {
    pub fn get(&self, atom: AtomId) -> Option<Tenths> {
        self.times[atom.index()]
    }

    pub fn as_slice(&self) -> &[Option<Tenths>] {
        &self.times
    }

    /// Distinct finite times in increasing order.
    pub fn distinct_times(&self) -> Vec<Tenths> {
        let mut t: Vec<Tenths> = self.times.iter().flatten().copied().collect();
        t.sort();
        t.dedup();
        t
    }

    /// Atoms whose earliest start time is at most `bucket`.
    pub fn allowed_at(&self, bucket: Tenths) -> Vec<AtomId> {
        self.times
            .iter()
            .enumerate()
            .filter(|(_, t)| matches!(t, Some(t) if *t <= bucket))
            .map(|(i, _)| AtomId(i as u16))
            .collect()
    }
}

/// Least fixed point of `t(add) <= max(t(pre)) + duration`, with `t = 0` on
/// the initial state.
pub fn earliest_start_times(task: &GroundTask) -> EarliestStarts {
    let mut times: Vec<Option<Tenths>> = vec![None; task.atoms().len()];
    for id in task.initial().iter() {
        times[id.index()] = Some(Tenths::ZERO);
    }
    loop {
        let mut changed = false;
        for action in task.actions() {
            let ready = action.pre_ids.iter().try_fold(Tenths::ZERO, |acc, p| times[p.index()].map(|t| acc.max(t)));
            let Some(ready) = ready else { continue };
            let done = ready + action.duration;
            for add in &action.add_ids {
                let slot = &mut times[add.index()];
                if slot.is_none_or(|t| done < t) {
                    *slot = Some(done);
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    EarliestStarts { times }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atoms::Atom;
    use crate::multizeno::{ground_multizeno, MultiZenoConfig};

    #[test]
    fn default_durations() {
        let task = ground_multizeno(&MultiZenoConfig::new(1)).unwrap();
        let est = earliest_start_times(&task);
        let t = |a: Atom| est.get(task.atom_id(&a).unwrap()).unwrap();
        assert_eq!(t(Atom::plane_at(0, 1)), Tenths::from_int(2));
        assert_eq!(t(Atom::plane_at(1, 1)), Tenths::from_int(2));
        assert_eq!(t(Atom::person_at(2, 4)), Tenths::from_int(4));
        assert_eq!(t(Atom::plane_at(0, 0)), Tenths::ZERO);
        assert_eq!(t(Atom::plane_at(0, 3)), Tenths::from_int(6));
        assert_eq!(
            est.distinct_times(),
            vec![Tenths::ZERO, Tenths::from_int(2), Tenths::from_int(4), Tenths::from_int(6)]
        );
    }

    #[test]
    fn unreachable_atoms_are_none() {
        let task = ground_multizeno(&MultiZenoConfig::new(1)).unwrap();
        let no_transport = task.filter_actions(|a| a.passenger.is_none());
        let est = earliest_start_times(&no_transport);
        assert_eq!(est.get(task.atom_id(&Atom::person_at(0, 4)).unwrap()), None);
        assert!(est.get(task.atom_id(&Atom::plane_at(0, 4)).unwrap()).is_some());
    }

    #[test]
    fn removing_an_action_never_lowers_times() {
        let task = ground_multizeno(&MultiZenoConfig::new(1)).unwrap();
        let full = earliest_start_times(&task);
        for skip in 0..task.actions().len() {
            let mut i = 0;
            let reduced = task.filter_actions(|_| {
                i += 1;
                i - 1 != skip
            });
            let fewer = earliest_start_times(&reduced);
            for (a, b) in full.as_slice().iter().zip(fewer.as_slice()) {
                match (a, b) {
                    (Some(x), Some(y)) => assert!(x <= y),
                    (_, None) => {}
                    (None, Some(_)) => panic!("an atom became reachable after removing an action"),
                }
            }
        }
    }
}
