//! Ground truth by exhaustive search.
//!
//! States are packed three bits per disk (two for the post, one for the up
//! face) into a [`StateKey`]. The search is level-synchronous: each level is
//! expanded (optionally on several rayon workers), sorted and deduplicated
//! before the next one starts, so level contents, `states_explored` and the
//! returned trace do not depend on the worker count.
//!
//! Moves are reversible, so once the first level containing a goal is found,
//! a backward sweep marks every state that lies on some optimal path. The
//! returned trace is then built greedily by always taking the first legal
//! move (canonical order) that stays on an optimal path, which makes it the
//! lexicographically least optimal trace.

use std::collections::{HashMap, HashSet};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::math::BigCount;
use crate::solvers::{self, Algorithm, SolveError};
use crate::tower::{
    initial_state, Disk, DiskColor, DiskId, Move, PostId, StateError, TowerState, Trace, Variant,
};

/// Largest tower [`enumerate_states`] accepts.
pub const MAX_ENUMERATE_DISKS: u32 = 10;
/// Largest tower [`bfs_optimal`] accepts.
pub const MAX_SEARCH_DISKS: u32 = 8;
const MAX_KEY_DISKS: u32 = 21;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("{n} disks exceeds the search budget of {max} disks")]
    TooManyDisks { n: u32, max: u32 },
    #[error("search budget of {limit} states exceeded")]
    BudgetExceeded { limit: usize },
    #[error("no goal state is reachable")]
    Unreachable,
    #[error(transparent)]
    State(#[from] StateError),
    #[error(transparent)]
    Solve(#[from] SolveError),
}

/// Packed (post, up face) per disk. Disk `k` occupies bits `3(k-1)..3k`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct StateKey(pub u64);

impl StateKey {
    pub fn encode(state: &TowerState) -> StateKey {
        assert!(state.n() <= MAX_KEY_DISKS, "state too large to pack");
        let mut key = 0u64;
        for post in PostId::ALL {
            for disk in state.post(post) {
                let face = match disk.up {
                    DiskColor::Red => 0u64,
                    DiskColor::Blue => 1,
                };
                let code = post.index() as u64 | (face << 2);
                key |= code << (3 * (disk.id.get() - 1));
            }
        }
        StateKey(key)
    }

    /// Rebuilds the state, rejecting keys that break any tower invariant.
    pub fn decode(self, n: u32, variant: Variant) -> Result<TowerState, StateError> {
        let mut posts: [Vec<Disk>; 3] = Default::default();
        for id in 1..=n {
            let code = (self.0 >> (3 * (id - 1))) & 0b111;
            let post = (code & 0b11) as usize;
            if post > 2 {
                return Err(StateError::BadDisk(id));
            }
            let up = if code & 0b100 == 0 {
                DiskColor::Red
            } else {
                DiskColor::Blue
            };
            posts[post].push(Disk { id: DiskId(id), up });
        }
        if n < 64 / 3 && self.0 >> (3 * n) != 0 {
            return Err(StateError::BadDisk(n + 1));
        }
        TowerState::from_posts(n, variant, posts)
    }

    fn post_of(self, id: u32) -> u64 {
        (self.0 >> (3 * (id - 1))) & 0b11
    }

    fn is_blue(self, id: u32) -> bool {
        (self.0 >> (3 * (id - 1))) & 0b100 != 0
    }
}

/// What counts as solved.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub enum Goal {
    /// All disks on D, any orientation (matches [`TowerState::is_solved`]).
    #[default]
    AnyOrientation,
    /// All disks on D showing Blue.
    AllBlueUp,
}

impl Goal {
    fn reached(self, key: StateKey, n: u32) -> bool {
        (1..=n).all(|id| {
            key.post_of(id) == PostId::D.index() as u64
                && (self == Goal::AnyOrientation || key.is_blue(id))
        })
    }
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub goal: Goal,
    /// Worker threads for level expansion; 0 uses the global rayon pool.
    pub workers: usize,
    /// Abort once this many distinct states have been discovered.
    pub max_states: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            goal: Goal::AnyOrientation,
            workers: 0,
            max_states: 20_000_000,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleResult {
    pub n: u32,
    pub variant: Variant,
    pub optimal_length: BigCount,
    /// Lexicographically least optimal trace.
    pub trace: Trace,
    /// Distinct states in all levels up to and including the goal level.
    pub states_explored: usize,
    /// Number of distinct optimal move sequences.
    pub optimal_solutions: BigCount,
    pub level_sizes: Vec<usize>,
}

struct Expander {
    n: u32,
    variant: Variant,
}

impl Expander {
    fn successors(&self, key: StateKey) -> Vec<(Move, StateKey)> {
        let state = key
            .decode(self.n, self.variant)
            .expect("search only visits valid states");
        state
            .legal_moves()
            .into_iter()
            .map(|mv| {
                let next = state.apply(&mv).expect("legal move");
                (mv, StateKey::encode(&next))
            })
            .collect()
    }

    fn expand(&self, level: &[StateKey]) -> Vec<StateKey> {
        let mut next: Vec<StateKey> = level
            .par_iter()
            .flat_map_iter(|k| self.successors(*k).into_iter().map(|(_, s)| s))
            .collect();
        next.par_sort_unstable();
        next.dedup();
        next
    }
}

fn with_pool<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> T {
    if workers == 0 {
        return f();
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .expect("thread pool")
        .install(f)
}

/// Breadth-first levels from the start setting, stopping at the first level
/// that contains a goal (or at `max_depth` when `stop_at_goal` is false).
struct Levels {
    levels: Vec<Vec<StateKey>>,
    seen: usize,
}

fn explore(
    ex: &Expander,
    start: StateKey,
    goal: Option<Goal>,
    max_depth: usize,
    max_states: usize,
) -> Result<Levels, OracleError> {
    let mut seen: HashSet<StateKey> = HashSet::from([start]);
    let mut levels = vec![vec![start]];
    loop {
        let current = levels.last().expect("at least the start level");
        if let Some(g) = goal {
            if current.iter().any(|k| g.reached(*k, ex.n)) {
                break;
            }
        }
        if current.is_empty() || levels.len() > max_depth {
            if goal.is_some() {
                return Err(OracleError::Unreachable);
            }
            break;
        }
        let next: Vec<StateKey> = ex
            .expand(current)
            .into_iter()
            .filter(|k| seen.insert(*k))
            .collect();
        if seen.len() > max_states {
            return Err(OracleError::BudgetExceeded { limit: max_states });
        }
        levels.push(next);
    }
    if levels.last().is_some_and(|l| l.is_empty()) {
        levels.pop();
    }
    Ok(Levels {
        levels,
        seen: seen.len(),
    })
}

/// Optimal-path structure of a finished search.
struct OptimalPaths {
    /// `on_path[d]`: states at depth `d` that lie on some optimal path.
    on_path: Vec<HashSet<StateKey>>,
}

impl OptimalPaths {
    fn build(ex: &Expander, levels: &[Vec<StateKey>], goal: Goal) -> OptimalPaths {
        let depth = levels.len() - 1;
        let mut on_path = vec![HashSet::new(); depth + 1];
        on_path[depth] = levels[depth]
            .iter()
            .copied()
            .filter(|k| goal.reached(*k, ex.n))
            .collect();
        for d in (0..depth).rev() {
            let ahead = &on_path[d + 1];
            let here: HashSet<StateKey> = levels[d]
                .par_iter()
                .copied()
                .filter(|k| ex.successors(*k).iter().any(|(_, s)| ahead.contains(s)))
                .collect();
            on_path[d] = here;
        }
        OptimalPaths { on_path }
    }

    fn length(&self) -> usize {
        self.on_path.len() - 1
    }

    fn least_moves(&self, ex: &Expander, start: StateKey) -> Vec<Move> {
        let mut moves = Vec::with_capacity(self.length());
        let mut cur = start;
        for d in 0..self.length() {
            let (mv, next) = ex
                .successors(cur)
                .into_iter()
                .find(|(_, s)| self.on_path[d + 1].contains(s))
                .expect("every on-path state has an on-path successor");
            moves.push(mv);
            cur = next;
        }
        moves
    }

    fn count(&self, ex: &Expander, start: StateKey) -> BigUint {
        let mut counts: HashMap<StateKey, BigUint> = HashMap::from([(start, BigUint::one())]);
        for d in 0..self.length() {
            let mut next: HashMap<StateKey, BigUint> = HashMap::new();
            let mut layer: Vec<&StateKey> = self.on_path[d].iter().collect();
            layer.sort();
            for k in layer {
                let Some(c) = counts.get(k) else { continue };
                for (_, s) in ex.successors(*k) {
                    if self.on_path[d + 1].contains(&s) {
                        *next.entry(s).or_insert_with(BigUint::zero) += c;
                    }
                }
            }
            counts = next;
        }
        counts.into_values().sum()
    }

    fn all_moves(&self, ex: &Expander, start: StateKey, limit: usize) -> Vec<Vec<Move>> {
        let mut out = Vec::new();
        let mut path = Vec::new();
        self.walk(ex, start, 0, &mut path, &mut out, limit);
        out
    }

    fn walk(
        &self,
        ex: &Expander,
        cur: StateKey,
        d: usize,
        path: &mut Vec<Move>,
        out: &mut Vec<Vec<Move>>,
        limit: usize,
    ) {
        if out.len() >= limit {
            return;
        }
        if d == self.length() {
            out.push(path.clone());
            return;
        }
        for (mv, s) in ex.successors(cur) {
            if self.on_path[d + 1].contains(&s) {
                path.push(mv);
                self.walk(ex, s, d + 1, path, out, limit);
                path.pop();
            }
        }
    }
}

fn checked_start(n: u32, variant: &Variant, max: u32) -> Result<TowerState, OracleError> {
    if n > max {
        return Err(OracleError::TooManyDisks { n, max });
    }
    Ok(initial_state(n, *variant)?)
}

/// Number of states reachable from the start setting by legal moves.
pub fn enumerate_states(n: u32, variant: &Variant) -> Result<usize, OracleError> {
    let start = checked_start(n, variant, MAX_ENUMERATE_DISKS)?;
    let ex = Expander {
        n,
        variant: *variant,
    };
    let levels = explore(
        &ex,
        StateKey::encode(&start),
        None,
        usize::MAX,
        SearchConfig::default().max_states,
    )?;
    Ok(levels.seen)
}

/// Breadth-first levels of the reachable state graph, up to `max_depth`.
pub fn bfs_levels(
    n: u32,
    variant: &Variant,
    max_depth: usize,
) -> Result<Vec<Vec<StateKey>>, OracleError> {
    let start = checked_start(n, variant, MAX_ENUMERATE_DISKS)?;
    let ex = Expander {
        n,
        variant: *variant,
    };
    Ok(explore(
        &ex,
        StateKey::encode(&start),
        None,
        max_depth,
        SearchConfig::default().max_states,
    )?
    .levels)
}

pub fn bfs_optimal(n: u32, variant: &Variant) -> Result<OracleResult, OracleError> {
    bfs_optimal_with(n, variant, &SearchConfig::default())
}

pub fn bfs_optimal_with(
    n: u32,
    variant: &Variant,
    config: &SearchConfig,
) -> Result<OracleResult, OracleError> {
    let start = checked_start(n, variant, MAX_SEARCH_DISKS)?;
    let ex = Expander {
        n,
        variant: *variant,
    };
    let start_key = StateKey::encode(&start);
    with_pool(config.workers, || {
        let levels = explore(
            &ex,
            start_key,
            Some(config.goal),
            usize::MAX,
            config.max_states,
        )?;
        let paths = OptimalPaths::build(&ex, &levels.levels, config.goal);
        let moves = paths.least_moves(&ex, start_key);
        let optimal_solutions = paths.count(&ex, start_key);
        let trace = Trace::replay(start, moves).expect("search moves are legal");
        Ok(OracleResult {
            n,
            variant: *variant,
            optimal_length: BigCount::from(paths.length()),
            trace,
            states_explored: levels.seen,
            optimal_solutions: BigCount::from(optimal_solutions),
            level_sizes: levels.levels.iter().map(Vec::len).collect(),
        })
    })
}

/// Every optimal solution, at most `limit` of them, in lexicographic order.
pub fn optimal_traces(
    n: u32,
    variant: &Variant,
    config: &SearchConfig,
    limit: usize,
) -> Result<Vec<Trace>, OracleError> {
    let start = checked_start(n, variant, MAX_SEARCH_DISKS)?;
    let ex = Expander {
        n,
        variant: *variant,
    };
    let start_key = StateKey::encode(&start);
    with_pool(config.workers, || {
        let levels = explore(
            &ex,
            start_key,
            Some(config.goal),
            usize::MAX,
            config.max_states,
        )?;
        let paths = OptimalPaths::build(&ex, &levels.levels, config.goal);
        Ok(paths
            .all_moves(&ex, start_key, limit)
            .into_iter()
            .map(|moves| Trace::replay(start.clone(), moves).expect("search moves are legal"))
            .collect())
    })
}

/// Solver lengths against the searched optimum for one tower height.
#[derive(Clone, Debug, Serialize)]
pub struct OptimalityRow {
    pub n: u32,
    pub free_optimum: u64,
    pub colored_optimum: u64,
    pub semifree_optimum: u64,
    pub c100: u64,
    pub f67_down: u64,
    pub f67_up: u64,
    pub semifree: u64,
    pub f62: u64,
}

impl OptimalityRow {
    /// `(algorithm, solver length - optimum)` for every magnetic solver,
    /// each compared against the optimum of its own variant.
    pub fn gaps(&self) -> [(Algorithm, u64); 5] {
        [
            (Algorithm::C100, self.c100 - self.colored_optimum),
            (Algorithm::F67Down, self.f67_down - self.free_optimum),
            (Algorithm::F67Up, self.f67_up - self.free_optimum),
            (Algorithm::SemiFree, self.semifree - self.semifree_optimum),
            (Algorithm::F62, self.f62 - self.free_optimum),
        ]
    }
}

fn optimum(n: u32, variant: &Variant) -> Result<u64, OracleError> {
    Ok(bfs_optimal(n, variant)?
        .optimal_length
        .to_u64()
        .expect("small"))
}

fn solver_length(alg: Algorithm, n: u32, variant: &Variant) -> Result<u64, OracleError> {
    Ok(solvers::count_moves(alg, n, variant)?.total)
}

pub fn optimality_report(n_max: u32) -> Result<Vec<OptimalityRow>, OracleError> {
    if n_max > MAX_SEARCH_DISKS {
        return Err(OracleError::TooManyDisks {
            n: n_max,
            max: MAX_SEARCH_DISKS,
        });
    }
    let free = Variant::Free;
    let colored = Variant::colored_rbb();
    let semifree = Variant::semi_free();
    (1..=n_max)
        .map(|n| {
            Ok(OptimalityRow {
                n,
                free_optimum: optimum(n, &free)?,
                colored_optimum: optimum(n, &colored)?,
                semifree_optimum: optimum(n, &semifree)?,
                c100: solver_length(Algorithm::C100, n, &colored)?,
                f67_down: solver_length(Algorithm::F67Down, n, &free)?,
                f67_up: solver_length(Algorithm::F67Up, n, &free)?,
                semifree: solver_length(Algorithm::SemiFree, n, &semifree)?,
                f62: solver_length(Algorithm::F62, n, &free)?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn key_round_trip() {
        let t = solvers::solve_62(4).unwrap();
        for s in t.states() {
            let k = StateKey::encode(&s);
            assert_eq!(k.decode(4, Variant::Free).unwrap(), s);
        }
    }

    #[test]
    fn decode_rejects_invalid_keys() {
        // Disk 1 on S showing Blue, disk 2 on S showing Red: mixed colors.
        let key = StateKey(0b000_100);
        assert!(key.decode(2, Variant::Free).is_err());
        // Post code 3 does not exist.
        assert!(StateKey(0b011).decode(1, Variant::Free).is_err());
        // Bits beyond the last disk.
        assert!(StateKey(1 << 3).decode(1, Variant::Free).is_err());
    }

    #[test]
    fn single_disk_state_counts() {
        assert_eq!(enumerate_states(1, &Variant::Free).unwrap(), 6);
        assert_eq!(enumerate_states(1, &Variant::colored_rbb()).unwrap(), 3);
        assert_eq!(enumerate_states(1, &Variant::Classical).unwrap(), 3);
    }

    #[test]
    fn small_optima() {
        let one = bfs_optimal(1, &Variant::Free).unwrap();
        assert_eq!(one.optimal_length, 1u64);
        let two = bfs_optimal(2, &Variant::Free).unwrap();
        assert_eq!(two.optimal_length, 4u64);
        assert_eq!(two.optimal_solutions, 2u64);
        assert!(two.trace.end().is_solved());
        assert_eq!(
            bfs_optimal(3, &Variant::Classical).unwrap().optimal_length,
            7u64
        );
    }

    #[test]
    fn budgets() {
        assert_eq!(
            bfs_optimal(9, &Variant::Free).unwrap_err(),
            OracleError::TooManyDisks { n: 9, max: 8 }
        );
        assert_eq!(
            enumerate_states(11, &Variant::Free).unwrap_err(),
            OracleError::TooManyDisks { n: 11, max: 10 }
        );
        let tight = SearchConfig {
            max_states: 10,
            ..SearchConfig::default()
        };
        assert_eq!(
            bfs_optimal_with(4, &Variant::Free, &tight).unwrap_err(),
            OracleError::BudgetExceeded { limit: 10 }
        );
    }

    #[test]
    fn strict_goal_is_never_shorter() {
        for n in 1..=4 {
            let any = bfs_optimal(n, &Variant::Free).unwrap().optimal_length;
            let strict = bfs_optimal_with(
                n,
                &Variant::Free,
                &SearchConfig {
                    goal: Goal::AllBlueUp,
                    ..SearchConfig::default()
                },
            )
            .unwrap()
            .optimal_length;
            assert!(strict >= any);
        }
    }
}
