use mozeno_core::*;
use proptest::prelude::*;

/// The makespan-8 routing of k=1 through city1: two loaded legs out, one
/// plane returns empty for the last passenger while the other comes back
/// from the destination.
fn optimal_k1(task: &GroundTask) -> ScheduledPlan {
    let a = |t: i64, plane, pass, from, to| ScheduledAction {
        start: Tenths::from_int(t),
        action: task.find_action(plane, pass, from, to).unwrap(),
    };
    ScheduledPlan::new(
        task,
        vec![
            a(0, 0, Some(0), 0, 1),
            a(0, 1, Some(1), 0, 1),
            a(2, 0, Some(0), 1, 4),
            a(2, 1, None, 1, 0),
            a(4, 0, None, 4, 1),
            a(4, 1, Some(2), 0, 1),
            a(6, 0, Some(1), 1, 4),
            a(6, 1, Some(2), 1, 4),
        ],
    )
}

#[test]
fn optimal_plan_objectives() {
    let task = ground_multizeno(&MultiZenoConfig::new(1)).unwrap();
    let plan = optimal_k1(&task);
    assert_eq!(plan.len(), 8);
    assert_eq!(validate_plan(&task, &plan).unwrap(), ObjectivePoint::ints(8, 12));

    let risk = ground_multizeno(&MultiZenoConfig::new(1).with_mode(ObjectiveMode::Risk)).unwrap();
    assert_eq!(validate_plan(&risk, &optimal_k1(&risk)).unwrap(), ObjectivePoint::ints(8, 3));
}

#[test]
fn empty_plan_misses_the_goal() {
    let task = ground_multizeno(&MultiZenoConfig::new(1)).unwrap();
    let err = validate_plan(&task, &ScheduledPlan::default()).unwrap_err();
    assert!(matches!(err, ModelError::InvalidPlan(_)));
}

#[test]
fn overlapping_use_of_a_plane_is_rejected() {
    let task = ground_multizeno(&MultiZenoConfig::new(1)).unwrap();
    let mut steps = optimal_k1(&task).steps().to_vec();
    steps[2].start = Tenths::from_int(1);
    let plan = ScheduledPlan::new(&task, steps);
    assert!(matches!(validate_plan(&task, &plan), Err(ModelError::InvalidPlan(_))));
}

#[test]
fn early_start_breaks_a_precondition() {
    let task = ground_multizeno(&MultiZenoConfig::new(1)).unwrap();
    let mut steps = optimal_k1(&task).steps().to_vec();
    // Plane 1 leaves for the third passenger before it is back at city0.
    steps[5].start = Tenths::from_int(3);
    let plan = ScheduledPlan::new(&task, steps);
    assert!(matches!(validate_plan(&task, &plan), Err(ModelError::InvalidPlan(_))));
}

#[test]
fn plan_csv_dump() {
    let task = ground_multizeno(&MultiZenoConfig::new(1)).unwrap();
    let csv = optimal_k1(&task).to_csv(&task);
    assert!(csv.starts_with("start,action\n0,transport(plane0,person0,city0,city1)\n"));
    assert_eq!(csv.lines().count(), 9);
}

fn is_mutex_free(task: &GroundTask, state: &AtomSet) -> bool {
    let atoms: Vec<Atom> = state.iter().map(|id| *task.atom(id)).collect();
    atoms.iter().enumerate().all(|(i, a)| atoms[i + 1..].iter().all(|b| !mutex(a, b)))
}

proptest! {
    #[test]
    fn random_walks_stay_consistent(k in 1usize..=2, choices in prop::collection::vec(any::<u32>(), 0..60)) {
        let task = ground_multizeno(&MultiZenoConfig::new(k)).unwrap();
        let mut state = *task.initial();
        for c in choices {
            let applicable: Vec<ActionId> = (0..task.actions().len() as u32)
                .map(ActionId)
                .filter(|&a| task.action(a).pre.is_subset(&state))
                .collect();
            prop_assert!(!applicable.is_empty());
            state = step(&task, &state, applicable[c as usize % applicable.len()]).unwrap();
            prop_assert!(task.is_consistent_full_state(&state));
            prop_assert!(is_mutex_free(&task, &state));
        }
    }

    #[test]
    fn listing_order_does_not_matter(perm in Just((0..8usize).collect::<Vec<_>>()).prop_shuffle()) {
        let task = ground_multizeno(&MultiZenoConfig::new(1)).unwrap();
        let plan = optimal_k1(&task);
        let shuffled = ScheduledPlan::new(&task, perm.iter().map(|&i| plan.steps()[i]).collect());
        prop_assert_eq!(validate_plan(&task, &shuffled).unwrap(), ObjectivePoint::ints(8, 12));
    }

    #[test]
    fn adding_actions_never_delays_atoms(drop in prop::collection::vec(any::<bool>(), 96)) {
        let task = ground_multizeno(&MultiZenoConfig::new(1)).unwrap();
        let mut i = 0;
        let sub = task.filter_actions(|_| { i += 1; !drop[i - 1] });
        let full = earliest_start_times(&task);
        let part = earliest_start_times(&sub);
        for (f, p) in full.as_slice().iter().zip(part.as_slice()) {
            match (f, p) {
                (Some(f), Some(p)) => prop_assert!(f <= p),
                (None, Some(_)) => prop_assert!(false, "full task misses an atom the subset reaches"),
                _ => {}
            }
        }
    }
}
