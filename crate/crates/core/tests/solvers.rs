use mtoh_core::math;
use mtoh_core::solvers::{self, relocate_colored_v1, relocate_colored_v2};
use mtoh_core::verify::solver_runs;
use mtoh_core::{
    initial_state, Algorithm, Disk, DiskColor, DiskId, Move, PostId, SolveError, TowerState, Trace,
    Variant,
};

const MAX_N: u32 = 12;

#[test]
fn every_solver_trace_is_legal_and_solves() {
    for (alg, variant) in solver_runs() {
        for n in 1..=MAX_N {
            let trace = solvers::solve(alg, n, &variant)
                .unwrap_or_else(|e| panic!("{alg} on {variant}, n={n}: {e}"));
            // Replaying from scratch re-checks every move.
            let again = Trace::replay(trace.start().clone(), trace.moves().to_vec()).unwrap();
            assert!(again.end().is_solved(), "{alg} on {variant}, n={n}");
            assert_eq!(
                math::total(alg, n),
                trace.len() as u64,
                "{alg} on {variant}, n={n}"
            );
            for (i, &c) in trace.per_disk_counts().iter().enumerate() {
                let k = i as u32 + 1;
                assert_eq!(math::per_disk(alg, k).unwrap(), c, "{alg} n={n} k={k}");
            }
        }
    }
}

#[test]
fn magnetic_solutions_turn_every_disk_over() {
    for (alg, variant) in solver_runs() {
        if !variant.is_magnetic() {
            continue;
        }
        for n in 1..=8 {
            let trace = solvers::solve(alg, n, &variant).unwrap();
            let start_face = variant.start_color();
            assert!(
                trace
                    .end()
                    .post(PostId::D)
                    .iter()
                    .all(|d| d.up == start_face.opposite()),
                "{alg} on {variant}, n={n}"
            );
            assert!(trace.per_disk_counts().iter().all(|c| c % 2 == 1));
        }
    }
    let free_end = solvers::solve_62(7).unwrap();
    assert!(free_end
        .end()
        .post(PostId::D)
        .iter()
        .all(|d| d.up == DiskColor::Blue));
}

#[test]
fn counting_agrees_with_tracing() {
    for (alg, variant) in solver_runs() {
        for n in 1..=9 {
            let counter = solvers::count_moves(alg, n, &variant).unwrap();
            let trace = solvers::solve(alg, n, &variant).unwrap();
            assert_eq!(counter.total, trace.len() as u64);
            assert_eq!(counter.per_disk, trace.per_disk_counts());
        }
    }
}

#[test]
fn sixty_seven_up_reverses_into_a_down_shaped_solution() {
    for n in 1..=9 {
        let up = solvers::solve_67_up(n).unwrap();
        let swap = |p: PostId| match p {
            PostId::S => PostId::D,
            PostId::D => PostId::S,
            PostId::I => PostId::I,
        };
        let moves: Vec<Move> = up
            .moves()
            .iter()
            .rev()
            .map(|m| Move {
                disk: m.disk,
                from: swap(m.to),
                to: swap(m.from),
            })
            .collect();
        // The reversed run starts where 67-Up ended, mirrored onto S.
        let stack = (1..=n)
            .map(|id| Disk {
                id: DiskId(id),
                up: DiskColor::Blue,
            })
            .collect();
        let start = TowerState::from_posts(n, Variant::Free, [stack, vec![], vec![]]).unwrap();
        let reversed = Trace::replay(start, moves).unwrap_or_else(|e| panic!("n={n}: {e}"));
        assert!(reversed.end().is_solved());
        let down = solvers::solve_67_down(n).unwrap();
        assert_eq!(reversed.len(), down.len());
        assert_eq!(reversed.per_disk_counts(), down.per_disk_counts());
    }
}

#[test]
fn both_colored_relocations_take_the_same_number_of_moves() {
    for n in 1..=7 {
        let rbb = initial_state(n, Variant::colored_rbb()).unwrap();
        let rrb = initial_state(n, Variant::colored_rrb()).unwrap();
        let v1 = relocate_colored_v1(&rbb, n, PostId::S, PostId::D, PostId::I).unwrap();
        let v2 = relocate_colored_v2(&rrb, n, PostId::S, PostId::D, PostId::I).unwrap();
        assert_eq!(v1.len(), v2.len());
        assert_eq!(math::total(Algorithm::C100, n), v1.len() as u64);
        assert!(v1.end().is_solved() && v2.end().is_solved());
        if n > 1 {
            assert_ne!(v1.moves(), v2.moves());
        }
    }
}

#[test]
fn three_colored_two_disk_versions() {
    // Version 1: disk 2 reaches D through Red S; version 2: through Blue D.
    let rbb = solvers::solve_100(2, &Variant::colored_rbb()).unwrap();
    let rrb = solvers::solve_100(2, &Variant::colored_rrb()).unwrap();
    assert_eq!(rbb.len(), 4);
    assert_eq!(rrb.len(), 4);
    let tokens = |t: &Trace| t.moves().iter().map(|m| m.to_string()).collect::<Vec<_>>();
    assert_eq!(tokens(&rbb), ["2:S->I", "1:S->D", "2:I->S", "2:S->D"]);
    assert_eq!(tokens(&rrb), ["2:S->D", "2:D->I", "1:S->D", "2:I->D"]);
    assert_eq!(
        solvers::solve_100(3, &Variant::colored_rbb())
            .unwrap()
            .len(),
        13
    );
}

#[test]
fn unsupported_combinations_are_rejected() {
    assert!(matches!(
        solvers::solve(Algorithm::SemiFree, 4, &Variant::Free),
        Err(SolveError::Unsupported { .. })
    ));
    assert!(matches!(
        solvers::solve(Algorithm::F62, 4, &Variant::colored_rbb()),
        Err(SolveError::Unsupported { .. })
    ));
    assert!(matches!(
        solvers::solve(Algorithm::C100, 0, &Variant::Free),
        Err(SolveError::ZeroDisks)
    ));
}
