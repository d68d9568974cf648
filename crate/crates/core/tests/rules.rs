use mtoh_core::trace_format::{parse_trace, write_trace};
use mtoh_core::{
    initial_state, ColorAssignment, DiskColor, Move, PostId, StateKey, TowerState, Trace, Variant,
};
use proptest::prelude::*;

fn variants() -> Vec<Variant> {
    vec![
        Variant::Classical,
        Variant::Free,
        Variant::colored_rbb(),
        Variant::colored_rrb(),
        Variant::Colored(
            ColorAssignment::new(DiskColor::Red, DiskColor::Blue, DiskColor::Red).unwrap(),
        ),
        Variant::semi_free(),
        Variant::SemiFree {
            source: DiskColor::Blue,
        },
    ]
}

fn arb_variant() -> impl Strategy<Value = Variant> {
    prop::sample::select(variants())
}

/// Every (disk, from, to) triple, legal or not.
fn candidates(n: u32) -> Vec<Move> {
    let mut out = Vec::new();
    for disk in 1..=n {
        for from in PostId::ALL {
            for to in PostId::ALL {
                out.push(Move::new(disk, from, to));
            }
        }
    }
    out
}

fn check_state(state: &TowerState) -> Result<(), TestCaseError> {
    prop_assert!(state.validate().is_ok(), "invalid state\n{state}");
    for post in PostId::ALL {
        let faces: Vec<DiskColor> = state.post(post).iter().map(|d| d.up).collect();
        prop_assert!(faces.windows(2).all(|w| w[0] == w[1]), "mixed post {post}");
    }
    let legal = state.legal_moves();
    for mv in candidates(state.n()) {
        prop_assert_eq!(state.is_legal(&mv), legal.contains(&mv), "{}", mv);
    }
    let key = StateKey::encode(state);
    prop_assert_eq!(&key.decode(state.n(), *state.variant()).unwrap(), state);
    Ok(())
}

/// Walks `choices.len()` random legal moves, checking every state on the way.
fn walk(n: u32, variant: Variant, choices: &[usize]) -> Result<Trace, TestCaseError> {
    let start = initial_state(n, variant).unwrap();
    let mut state = start.clone();
    let mut moves = Vec::with_capacity(choices.len());
    check_state(&state)?;
    for &c in choices {
        let legal = state.legal_moves();
        prop_assert!(!legal.is_empty(), "stuck\n{state}");
        let mv = legal[c % legal.len()];
        let next = state.apply(&mv).unwrap();
        let back = mv.reversed();
        if next.is_legal(&back) {
            prop_assert_eq!(&next.apply(&back).unwrap(), &state);
        }
        state = next;
        check_state(&state)?;
        moves.push(mv);
    }
    let trace = Trace::replay(start, moves).unwrap();
    prop_assert_eq!(trace.end(), &state);
    Ok(trace)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_walks_keep_invariants(
        n in 1u32..=6,
        variant in arb_variant(),
        choices in prop::collection::vec(any::<usize>(), 0..=10_000),
    ) {
        walk(n, variant, &choices)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn trace_files_round_trip(
        n in 1u32..=6,
        variant in arb_variant(),
        choices in prop::collection::vec(any::<usize>(), 0..200),
    ) {
        let trace = walk(n, variant, &choices)?;
        let text = write_trace(&trace).unwrap();
        prop_assert_eq!(&parse_trace(&text).unwrap(), &trace);
        prop_assert_eq!(write_trace(&parse_trace(&text).unwrap()).unwrap(), text);
    }

    #[test]
    fn replay_is_deterministic(
        n in 1u32..=5,
        variant in arb_variant(),
        choices in prop::collection::vec(any::<usize>(), 0..300),
    ) {
        let trace = walk(n, variant, &choices)?;
        let again = Trace::replay(trace.start().clone(), trace.moves().to_vec()).unwrap();
        prop_assert_eq!(again.colors(), trace.colors());
        let counts = trace.per_disk_counts();
        prop_assert_eq!(counts.iter().sum::<u64>(), trace.len() as u64);
    }

    #[test]
    fn corrupt_keys_never_decode_to_invalid_states(
        n in 1u32..=6,
        raw in any::<u64>(),
        variant in arb_variant(),
    ) {
        let mask = (1u64 << (3 * n)) - 1;
        if let Ok(state) = StateKey(raw & mask).decode(n, variant) {
            prop_assert!(state.validate().is_ok());
            prop_assert_eq!(StateKey::encode(&state).0, raw & mask);
        }
    }
}

#[test]
fn empty_trace_has_zero_counts() {
    let t = Trace::replay(initial_state(4, Variant::Free).unwrap(), vec![]).unwrap();
    assert_eq!(t.per_disk_counts(), vec![0, 0, 0, 0]);
    assert_eq!(t.colors().len(), 1);
}
