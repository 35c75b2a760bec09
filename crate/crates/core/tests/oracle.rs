use mozeno_core::*;

fn pt(m: i64, s: i64) -> ObjectivePoint {
    ObjectivePoint::ints(m, s)
}

fn tenths(m: i64, s: i64) -> ObjectivePoint {
    ObjectivePoint::new(Tenths::from_raw(m), Tenths::from_raw(s))
}

fn witness_plan(task: &GroundTask, w: &Witness) -> ScheduledPlan {
    let steps = w
        .flights
        .iter()
        .map(|f| ScheduledAction {
            start: f.start,
            action: task.find_action(f.plane, f.passenger, f.from, f.to).expect("witness action exists"),
        })
        .collect();
    ScheduledPlan::new(task, steps)
}

fn check_witnesses(cfg: &MultiZenoConfig) {
    let task = ground_multizeno(cfg).unwrap();
    let witnesses = oracle_witnesses(cfg).unwrap();
    assert!(!witnesses.is_empty());
    for w in &witnesses {
        let plan = witness_plan(&task, w);
        assert_eq!(validate_plan(&task, &plan).unwrap(), w.point, "witness for {}", w.point);
    }
}

#[test]
fn witnesses_validate_on_the_ground_model() {
    for k in [1, 2] {
        for alpha in [11, 20, 29] {
            check_witnesses(&MultiZenoConfig::new(k).with_alpha(Tenths::from_raw(alpha)));
        }
        check_witnesses(&MultiZenoConfig::new(k).with_mode(ObjectiveMode::Risk));
    }
}

#[test]
fn oracle_matches_closed_forms() {
    for k in [1, 2] {
        let cfg = MultiZenoConfig::new(k);
        assert_eq!(exact_front_oracle(&cfg).unwrap(), exact_front_analytic(&cfg).unwrap());
        let cfg = cfg.with_mode(ObjectiveMode::Risk);
        assert_eq!(exact_front_oracle(&cfg).unwrap(), exact_front_analytic(&cfg).unwrap());
    }
}

#[test]
fn risk_fronts() {
    let f = exact_front_oracle(&MultiZenoConfig::new(1).with_mode(ObjectiveMode::Risk)).unwrap();
    assert_eq!(f.points(), &[pt(8, 3), pt(16, 2), pt(24, 1)]);
    let f = exact_front_oracle(&MultiZenoConfig::new(2).with_mode(ObjectiveMode::Risk)).unwrap();
    assert_eq!(f.points(), &[pt(20, 3), pt(40, 2), pt(60, 1)]);
}

#[test]
fn cheap_middle_city_bends_the_front_upward() {
    let cfg = MultiZenoConfig::new(2).with_alpha(Tenths::from_raw(11));
    let f = exact_front_oracle(&cfg).unwrap();
    let expected = [
        tenths(200, 300),
        tenths(240, 262),
        tenths(280, 224),
        tenths(320, 186),
        tenths(360, 148),
        tenths(400, 110),
        tenths(440, 108),
        tenths(480, 106),
        tenths(520, 104),
        tenths(560, 102),
        tenths(600, 100),
    ];
    assert_eq!(f.points(), &expected);
    let d = f.second_differences();
    assert!(d.iter().all(|&(n, _)| n >= 0));
    assert!(d.iter().any(|&(n, _)| n > 0));
}

#[test]
fn expensive_middle_city_front() {
    let f = exact_front_oracle(&MultiZenoConfig::new(1).with_alpha(Tenths::from_raw(29))).unwrap();
    assert_eq!(f.points(), &[tenths(80, 120), tenths(120, 100), tenths(160, 80), tenths(200, 78), tenths(240, 40)]);
    let f = exact_front_oracle(&MultiZenoConfig::new(2).with_alpha(Tenths::from_raw(29))).unwrap();
    assert_eq!(f.len(), 11);
    assert_eq!(f.points()[..9], exact_front_analytic(&MultiZenoConfig::new(2)).unwrap().points()[..9]);
    assert_eq!(f.points()[9..], [tenths(560, 138), tenths(600, 100)]);
}

#[test]
fn oracle_rejects_large_instances() {
    assert!(matches!(exact_front_oracle(&MultiZenoConfig::new(3)), Err(ModelError::InstanceTooLarge(_))));
}
