use mtoh_core::analysis::{color_record, count_crossings, crossing_events, solver_crossings};
use mtoh_core::math::{self, duration_ratio, limit_ratio, per_disk, total, MathError};
use mtoh_core::solvers::{solve_100, solve_62, solve_67_down};
use mtoh_core::{Algorithm, BigCount, PostColor, PostId, Variant};

#[test]
fn totals_are_column_sums() {
    for alg in Algorithm::ALL {
        let mut sum = BigCount::zero();
        for n in 1..=25 {
            sum = BigCount::from(sum.into_inner() + per_disk(alg, n).unwrap().into_inner());
            assert_eq!(sum, total(alg, n), "{alg} n={n}");
        }
    }
}

#[test]
fn magnetic_per_disk_counts_are_odd() {
    for alg in Algorithm::ALL {
        if alg == Algorithm::Classical {
            continue;
        }
        for k in 1..=25 {
            assert!(per_disk(alg, k).unwrap().is_odd(), "{alg} k={k}");
        }
    }
}

#[test]
fn algorithms_are_ordered_by_length() {
    use Algorithm::*;
    assert_eq!(total(F62, 4), total(F67Down, 4));
    for n in 4..=40 {
        assert!(total(F62, n) <= total(F67Down, n));
        assert!(total(F67Down, n) < total(SemiFree, n), "n={n}");
        assert!(total(SemiFree, n) < total(C100, n), "n={n}");
        if n >= 5 {
            assert!(total(F62, n) < total(F67Down, n), "n={n}");
        }
    }
}

#[test]
fn duration_ratios_converge() {
    let ratio_67: Vec<_> = (2..=60)
        .map(|n| duration_ratio(Algorithm::F67Down, n).unwrap())
        .collect();
    assert!(ratio_67.windows(2).all(|w| w[1] < w[0]));
    assert_eq!(
        duration_ratio(Algorithm::F67Down, 8).unwrap(),
        math::rational(2194, 3280)
    );
    assert_eq!(
        duration_ratio(Algorithm::F62, 8).unwrap().to_string(),
        "2050/3280"
    );
    let tiny = num_rational::BigRational::new(1.into(), 1_000_000.into());
    for alg in [Algorithm::SemiFree, Algorithm::F67Up, Algorithm::F62] {
        let gap = duration_ratio(alg, 20)
            .unwrap()
            .abs_diff(&limit_ratio(alg).unwrap());
        assert!(gap < tiny, "{alg}");
    }
    assert!(matches!(
        limit_ratio(Algorithm::C100),
        Err(MathError::NotApplicable { .. })
    ));
}

#[test]
fn colored_records_stay_flat() {
    for n in 1..=6 {
        for variant in [Variant::colored_rbb(), Variant::colored_rrb()] {
            assert!(color_record(&solve_100(n, &variant).unwrap()).is_constant());
        }
    }
}

#[test]
fn free_hundred_never_crosses() {
    for n in 1..=8 {
        let record = color_record(&solve_100(n, &Variant::Free).unwrap());
        assert_eq!(count_crossings(&record).total(), 0, "n={n}");
        // Each post shows at most one color besides Neutral.
        for post in PostId::ALL {
            let seq = record.post(post);
            assert!(!(seq.contains(&1) && seq.contains(&-1)), "n={n} {post}");
        }
    }
}

#[test]
fn records_agree_with_replayed_states() {
    let trace = solve_62(6).unwrap();
    let record = color_record(&trace);
    assert_eq!(record.len(), trace.len() + 1);
    for (j, state) in trace.states().enumerate() {
        for post in PostId::ALL {
            assert_eq!(
                PostColor::from_value(record.post(post)[j]),
                Some(state.effective_color(post))
            );
        }
    }
    assert_eq!(
        (
            record.post(PostId::S)[0],
            record.post(PostId::I)[0],
            record.post(PostId::D)[0]
        ),
        (1, 0, 0)
    );
}

#[test]
fn three_disk_down_run_crosses_twice() {
    let record = color_record(&solve_67_down(3).unwrap());
    let events = crossing_events(&record);
    assert_eq!(events.len(), 2);
    assert_eq!(count_crossings(&record).total(), 2);
}

#[test]
fn more_crossings_go_with_shorter_runs() {
    for n in 4..=8 {
        let (c62, l62) = solver_crossings(Algorithm::F62, n, &Variant::Free).unwrap();
        let (c67, l67) = solver_crossings(Algorithm::F67Down, n, &Variant::Free).unwrap();
        assert!(c62.total() >= c67.total(), "n={n}");
        assert!(l62 <= l67, "n={n}");
    }
}
