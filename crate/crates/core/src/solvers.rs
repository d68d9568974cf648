//! Deterministic move generators.
//!
//! All magnetic solvers are built from the same ten recursive procedures
//! (`move_busy_1and2`, `move_busy_2and1`, `move_semifree_bnr`,
//! `move_down_67`, ...). Inside the procedures a disk is named by its *size
//! label*: label 1 is the smallest disk and label `n` the largest of an
//! `n`-disk tower, so `move(n, ..)` always moves the bottom disk of the
//! sub-stack being relocated. Labels are converted to tower disk ids
//! (1 = largest) only when a move is handed to the sink.
//!
//! Generators write into a [`MoveSink`], so long runs can be counted without
//! storing the moves. [`solve`] and friends collect into a vector and replay
//! the result through the rules engine, so every returned [`Trace`] is legal
//! by construction.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::tower::{
    initial_state, DiskColor, DiskId, IllegalMove, Move, ParseError, PostId, StateError,
    TowerState, Trace, Variant,
};

/// The solving schemes.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Algorithm {
    /// Lucas' binary solution, `2^n - 1` moves.
    #[serde(rename = "classical")]
    Classical,
    /// The base-3 solution of the colored tower, `(3^n - 1) / 2` moves.
    #[serde(rename = "100")]
    C100,
    /// `3^(n-1) + n - 1` moves, folding up through the colored sub-solution.
    #[serde(rename = "67d")]
    F67Down,
    /// Companion of [`Algorithm::F67Down`] that moves the small stack first.
    #[serde(rename = "67u")]
    F67Up,
    /// Relocation between two oppositely painted posts.
    #[serde(rename = "sf")]
    SemiFree,
    /// The shortest of the four: 67-down, a semi-free fold, then 67-up.
    #[serde(rename = "62")]
    F62,
}

impl Algorithm {
    pub const ALL: [Algorithm; 6] = [
        Algorithm::Classical,
        Algorithm::C100,
        Algorithm::F67Down,
        Algorithm::F67Up,
        Algorithm::SemiFree,
        Algorithm::F62,
    ];

    /// Command-line token.
    pub fn token(self) -> &'static str {
        match self {
            Algorithm::Classical => "classical",
            Algorithm::C100 => "100",
            Algorithm::F67Down => "67d",
            Algorithm::F67Up => "67u",
            Algorithm::SemiFree => "sf",
            Algorithm::F62 => "62",
        }
    }

    /// Variant used when none is requested.
    pub fn default_variant(self) -> Variant {
        match self {
            Algorithm::Classical => Variant::Classical,
            Algorithm::C100 => Variant::colored_rbb(),
            Algorithm::SemiFree => Variant::semi_free(),
            Algorithm::F67Down | Algorithm::F67Up | Algorithm::F62 => Variant::Free,
        }
    }

    /// Whether the algorithm produces a legal solution under `variant`.
    pub fn supports(self, variant: &Variant) -> bool {
        match (self, variant) {
            (Algorithm::Classical, Variant::Classical) => true,
            (Algorithm::C100, Variant::Free) => true,
            (Algorithm::C100, Variant::Colored(_)) => hundred_version(variant).is_some(),
            (Algorithm::SemiFree, Variant::SemiFree { .. }) => true,
            (Algorithm::F67Down | Algorithm::F67Up | Algorithm::F62, Variant::Free) => true,
            _ => false,
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for Algorithm {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.token() == s)
            .ok_or_else(|| ParseError(format!("unknown algorithm `{s}`")))
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolveError {
    #[error("a tower needs at least one disk")]
    ZeroDisks,
    #[error("algorithm {alg} cannot solve the {variant} tower")]
    Unsupported { alg: Algorithm, variant: Variant },
    #[error("relocation needs the {count} smallest disks on top of post {post}")]
    NotOnTop { count: u32, post: PostId },
    #[error(transparent)]
    State(#[from] StateError),
    #[error(transparent)]
    Illegal(#[from] IllegalMove),
}

/// Receives generated moves.
pub trait MoveSink {
    fn record(&mut self, mv: Move);
}

impl MoveSink for Vec<Move> {
    fn record(&mut self, mv: Move) {
        self.push(mv);
    }
}

/// Counts moves, in total and per disk, without storing them.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MoveCounter {
    pub total: u64,
    /// Index `k - 1` holds disk `k`.
    pub per_disk: Vec<u64>,
}

impl MoveCounter {
    pub fn new(n: u32) -> MoveCounter {
        MoveCounter {
            total: 0,
            per_disk: vec![0; n as usize],
        }
    }
}

impl MoveSink for MoveCounter {
    fn record(&mut self, mv: Move) {
        self.total += 1;
        let k = mv.disk.get() as usize;
        if self.per_disk.len() < k {
            self.per_disk.resize(k, 0);
        }
        self.per_disk[k - 1] += 1;
    }
}

/// Which of the two colored relocations a colored tower needs: 1 when the
/// intermediate post matches the destination, 2 when it matches the source.
fn hundred_version(variant: &Variant) -> Option<u8> {
    match variant {
        Variant::Free => Some(1),
        Variant::Colored(a) => {
            let (s, i, d) = (
                a.color_of(PostId::S),
                a.color_of(PostId::I),
                a.color_of(PostId::D),
            );
            if s == d {
                None
            } else if i == d {
                Some(1)
            } else {
                Some(2)
            }
        }
        _ => None,
    }
}

/// The recursive procedures, emitting into a sink.
struct Procedures<'a, S: MoveSink> {
    /// Tower height, for label to id conversion.
    n: u32,
    sink: &'a mut S,
}

impl<S: MoveSink> Procedures<'_, S> {
    fn step(&mut self, label: u32, from: PostId, to: PostId) {
        debug_assert!(label >= 1 && label <= self.n);
        self.sink.record(Move {
            disk: DiskId(self.n + 1 - label),
            from,
            to,
        });
    }

    fn hanoi(&mut self, n: u32, from: PostId, to: PostId, via: PostId) {
        if n > 0 {
            self.hanoi(n - 1, from, via, to);
            self.step(n, from, to);
            self.hanoi(n - 1, via, to, from);
        }
    }

    /// Colored relocation, version 1: the sub-stack moves once before the
    /// bottom disk and twice after it.
    fn move_busy_1and2(&mut self, n: u32, from: PostId, to: PostId, via: PostId) {
        if n > 0 {
            self.move_busy_1and2(n - 1, from, via, to);
            self.step(n, from, to);
            self.move_busy_2and1(n - 1, via, from, to);
            self.move_busy_1and2(n - 1, from, to, via);
        }
    }

    /// Colored relocation, version 2: twice before, once after.
    fn move_busy_2and1(&mut self, n: u32, from: PostId, to: PostId, via: PostId) {
        if n > 0 {
            self.move_busy_2and1(n - 1, from, to, via);
            self.move_busy_1and2(n - 1, to, via, from);
            self.step(n, from, to);
            self.move_busy_2and1(n - 1, via, to, from);
        }
    }

    /// Moves `n` disks from `s` to `d` when `s` and `d` are held in opposite
    /// colors and `i` is free.
    fn move_semifree_bnr(&mut self, n: u32, s: PostId, d: PostId, i: PostId) {
        match n {
            0 => {}
            1 | 2 => self.move_busy_2and1(n, s, d, i),
            _ => {
                self.move_semifree_bnr(n - 2, s, d, i);
                self.step(n - 1, s, i);
                self.move_busy_2and1(n - 2, d, s, i);
                self.move_busy_1and2(n - 2, s, i, d);
                self.step(n, s, d);
                self.move_busy_2and1(n - 2, i, s, d);
                self.move_busy_1and2(n - 2, s, d, i);
                self.step(n - 1, i, s);
                self.move_busy_1and2(n - 2, d, i, s);
                self.step(n - 1, s, d);
                self.move_busy_2and1(n - 2, i, d, s);
            }
        }
    }

    fn move_down_67_3disks(&mut self, n: u32, s: PostId, d: PostId, i: PostId) {
        self.move_busy_2and1(n - 1, s, i, d);
        self.step(n, s, d);
        self.move_busy_1and2(n - 2, i, s, d);
        self.move_busy_2and1(n - 2, s, d, i);
        self.step(n - 1, i, s);
        self.move_busy_2and1(n - 2, d, i, s);
        self.step(n - 1, s, d);
        self.move_busy_1and2(n - 2, i, d, s);
    }

    fn move_up_67_3disks(&mut self, n: u32, s: PostId, d: PostId, i: PostId) {
        self.move_busy_2and1(n - 2, s, i, d);
        self.step(n - 1, s, d);
        self.move_busy_1and2(n - 2, i, s, d);
        self.step(n - 1, d, i);
        self.move_busy_1and2(n - 2, s, d, i);
        self.move_busy_2and1(n - 2, d, i, s);
        self.step(n, s, d);
        self.move_busy_2and1(n - 1, i, d, s);
    }

    fn move_down_67(&mut self, n: u32, s: PostId, d: PostId, i: PostId) {
        match n {
            0 => {}
            1 | 2 => self.move_busy_1and2(n, s, d, i),
            3 => self.move_down_67_3disks(3, s, d, i),
            _ => {
                self.move_down_67(n - 1, s, i, d);
                self.step(n, s, d);
                self.move_busy_2and1(n - 2, i, s, d);
                self.move_busy_1and2(n - 2, s, d, i);
                self.step(n - 1, i, s);
                self.move_busy_1and2(n - 2, d, i, s);
                self.step(n - 1, s, d);
                self.move_busy_2and1(n - 2, i, d, s);
            }
        }
    }

    fn move_up_67(&mut self, n: u32, s: PostId, d: PostId, i: PostId) {
        match n {
            0 => {}
            1 | 2 => self.move_busy_1and2(n, s, d, i),
            3 => self.move_up_67_3disks(3, s, d, i),
            _ => {
                self.move_busy_1and2(n - 2, s, i, d);
                self.step(n - 1, s, d);
                self.move_busy_2and1(n - 2, i, s, d);
                self.step(n - 1, d, i);
                self.move_busy_2and1(n - 2, s, d, i);
                self.move_busy_1and2(n - 2, d, i, s);
                self.step(n, s, d);
                self.move_up_67(n - 1, i, d, s);
            }
        }
    }

    /// Folds disks `n-1 .. 1` from `i` back up onto the bottom disk on `d`.
    fn move_all_but_n_up(&mut self, n: u32, i: PostId, d: PostId, s: PostId) {
        if n > 2 {
            self.move_busy_2and1(n - 2, i, s, d);
            self.move_busy_1and2(n - 2, s, d, i);
            self.step(n - 1, i, s);
            self.move_semifree_bnr(n - 3, d, s, i);
            self.step(n - 2, d, i);
            self.move_busy_2and1(n - 3, s, d, i);
            self.move_busy_1and2(n - 3, d, i, s);
            self.step(n - 1, s, d);
            self.move_up_67(n - 2, i, d, s);
        }
    }

    fn solve_mtoh_puzzle(&mut self, n: u32, s: PostId, d: PostId, i: PostId) {
        if n <= 2 {
            self.move_down_67(n, s, d, i);
            return;
        }
        self.move_down_67(n - 1, s, i, d);
        self.step(n, s, d);
        self.move_all_but_n_up(n, i, d, s);
    }
}

/// Streams the moves of `alg` on an `n`-disk tower of the given variant.
pub fn generate<S: MoveSink>(
    alg: Algorithm,
    n: u32,
    variant: &Variant,
    sink: &mut S,
) -> Result<(), SolveError> {
    if n == 0 {
        return Err(SolveError::ZeroDisks);
    }
    if !alg.supports(variant) {
        return Err(SolveError::Unsupported {
            alg,
            variant: *variant,
        });
    }
    use PostId::{D, I, S};
    let mut p = Procedures { n, sink };
    match alg {
        Algorithm::Classical => p.hanoi(n, S, D, I),
        Algorithm::C100 => match hundred_version(variant) {
            Some(1) => p.move_busy_1and2(n, S, D, I),
            _ => p.move_busy_2and1(n, S, D, I),
        },
        Algorithm::F67Down => p.move_down_67(n, S, D, I),
        Algorithm::F67Up => p.move_up_67(n, S, D, I),
        Algorithm::SemiFree => p.move_semifree_bnr(n, S, D, I),
        Algorithm::F62 => p.solve_mtoh_puzzle(n, S, D, I),
    }
    Ok(())
}

/// Counts the moves of `alg` by running the generator.
pub fn count_moves(alg: Algorithm, n: u32, variant: &Variant) -> Result<MoveCounter, SolveError> {
    let mut counter = MoveCounter::new(n);
    generate(alg, n, variant, &mut counter)?;
    Ok(counter)
}

/// Solves from the standard start setting of `variant` and replays the
/// result.
pub fn solve(alg: Algorithm, n: u32, variant: &Variant) -> Result<Trace, SolveError> {
    let mut moves = Vec::new();
    generate(alg, n, variant, &mut moves)?;
    let start = initial_state(n, *variant)?;
    Ok(Trace::replay(start, moves)?)
}

pub fn solve_classical(n: u32) -> Result<Trace, SolveError> {
    solve(Algorithm::Classical, n, &Variant::Classical)
}

/// The "100" solution. Works on both colored towers and on the free tower.
pub fn solve_100(n: u32, variant: &Variant) -> Result<Trace, SolveError> {
    solve(Algorithm::C100, n, variant)
}

pub fn solve_67_down(n: u32) -> Result<Trace, SolveError> {
    solve(Algorithm::F67Down, n, &Variant::Free)
}

pub fn solve_67_up(n: u32) -> Result<Trace, SolveError> {
    solve(Algorithm::F67Up, n, &Variant::Free)
}

/// Relocates `n` disks from S (painted `source`) to D (painted the opposite
/// color) with I free.
pub fn solve_semifree(n: u32, source: DiskColor) -> Result<Trace, SolveError> {
    solve(Algorithm::SemiFree, n, &Variant::SemiFree { source })
}

pub fn solve_62(n: u32) -> Result<Trace, SolveError> {
    solve(Algorithm::F62, n, &Variant::Free)
}

fn relocate(
    state: &TowerState,
    n: u32,
    src: PostId,
    dst: PostId,
    via: PostId,
    version: u8,
) -> Result<Trace, SolveError> {
    let total = state.n();
    let stack = state.post(src);
    let on_top = n <= total
        && stack.len() >= n as usize
        && stack[stack.len() - n as usize..]
            .iter()
            .zip(total - n + 1..=total)
            .all(|(disk, id)| disk.id == DiskId(id));
    if !on_top {
        return Err(SolveError::NotOnTop {
            count: n,
            post: src,
        });
    }
    let mut moves = Vec::new();
    let mut p = Procedures {
        n: total,
        sink: &mut moves,
    };
    if version == 1 {
        p.move_busy_1and2(n, src, dst, via);
    } else {
        p.move_busy_2and1(n, src, dst, via);
    }
    Ok(Trace::replay(state.clone(), moves)?)
}

/// Moves the `n` smallest disks (which must sit on top of `src`) to `dst`,
/// relocating the sub-stack once before the bottom disk moves and twice
/// after.
pub fn relocate_colored_v1(
    state: &TowerState,
    n: u32,
    src: PostId,
    dst: PostId,
    via: PostId,
) -> Result<Trace, SolveError> {
    relocate(state, n, src, dst, via, 1)
}

/// Like [`relocate_colored_v1`] but the sub-stack relocates twice before the
/// bottom disk moves and once after.
pub fn relocate_colored_v2(
    state: &TowerState,
    n: u32,
    src: PostId,
    dst: PostId,
    via: PostId,
) -> Result<Trace, SolveError> {
    relocate(state, n, src, dst, via, 2)
}
