//! Published reference values the regenerated data is compared against.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::solvers::Algorithm;
use crate::tower::{ParseError, PostId};

/// The reproducible count tables.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum TableId {
    /// Classical moves per disk.
    T1,
    /// "100" on a colored tower.
    T4,
    /// "67" on a free tower.
    T6,
    /// SemiFree moves per disk.
    TSF,
    /// "62" on a free tower.
    T9,
    /// Color crossings of 67-Down, 67-Up and 62.
    T10,
}

impl TableId {
    pub const ALL: [TableId; 6] = [
        TableId::T1,
        TableId::T4,
        TableId::T6,
        TableId::TSF,
        TableId::T9,
        TableId::T10,
    ];

    pub fn title(self) -> &'static str {
        match self {
            TableId::T1 => "Classical tower: moves per disk",
            TableId::T4 => "Colored tower, \"100\": moves per disk",
            TableId::T6 => "Free tower, \"67\": moves per disk",
            TableId::TSF => "SemiFree algorithm: moves per disk",
            TableId::T9 => "Free tower, \"62\": moves per disk",
            TableId::T10 => "Color crossings per post",
        }
    }

    /// The count table behind this id, or `None` for the crossing table.
    pub fn counts(self) -> Option<&'static CountTable> {
        match self {
            TableId::T1 => Some(&CLASSICAL),
            TableId::T4 => Some(&HUNDRED),
            TableId::T6 => Some(&SIXTY_SEVEN),
            TableId::TSF => Some(&SEMIFREE),
            TableId::T9 => Some(&SIXTY_TWO),
            TableId::T10 => None,
        }
    }
}

impl fmt::Display for TableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TableId::T1 => "T1",
            TableId::T4 => "T4",
            TableId::T6 => "T6",
            TableId::TSF => "TSF",
            TableId::T9 => "T9",
            TableId::T10 => "T10",
        })
    }
}

impl FromStr for TableId {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TableId::ALL
            .into_iter()
            .find(|t| t.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| ParseError(format!("unknown table `{s}`")))
    }
}

/// Number of tower heights every published table covers.
pub const TABLE_HEIGHTS: usize = 8;

/// A triangular moves-per-disk table. Row `N` lists `per_disk[..N]` and the
/// row total `totals[N-1]`.
#[derive(Debug, PartialEq, Eq)]
pub struct CountTable {
    pub algorithm: Algorithm,
    pub per_disk: [u64; TABLE_HEIGHTS],
    pub totals: [u64; TABLE_HEIGHTS],
    /// Whether the table prints a closed-form column next to the row sum.
    pub formula_column: bool,
}

pub const CLASSICAL: CountTable = CountTable {
    algorithm: Algorithm::Classical,
    per_disk: [1, 2, 4, 8, 16, 32, 64, 128],
    totals: [1, 3, 7, 15, 31, 63, 127, 255],
    formula_column: true,
};

pub const HUNDRED: CountTable = CountTable {
    algorithm: Algorithm::C100,
    per_disk: [1, 3, 9, 27, 81, 243, 729, 2187],
    totals: [1, 4, 13, 40, 121, 364, 1093, 3280],
    formula_column: true,
};

pub const SIXTY_SEVEN: CountTable = CountTable {
    algorithm: Algorithm::F67Down,
    per_disk: [1, 3, 7, 19, 55, 163, 487, 1459],
    totals: [1, 4, 11, 30, 85, 248, 735, 2194],
    formula_column: true,
};

pub const SEMIFREE: CountTable = CountTable {
    algorithm: Algorithm::SemiFree,
    per_disk: [1, 3, 7, 21, 61, 183, 547, 1641],
    totals: [1, 4, 11, 32, 93, 276, 823, 2464],
    formula_column: false,
};

pub const SIXTY_TWO: CountTable = CountTable {
    algorithm: Algorithm::F62,
    per_disk: [1, 3, 7, 19, 53, 153, 455, 1359],
    totals: [1, 4, 11, 30, 83, 236, 691, 2050],
    formula_column: false,
};

/// What a crossing-table row counts.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub enum CrossingMeasure {
    Post(PostId),
    Total,
    Moves,
}

#[derive(Debug, PartialEq, Eq)]
pub struct CrossingRow {
    pub algorithm: Algorithm,
    pub measure: CrossingMeasure,
    pub values: [u64; TABLE_HEIGHTS],
}

impl CrossingRow {
    pub fn label(&self) -> String {
        crossing_label(self.algorithm, self.measure)
    }
}

/// Row label such as `67-Down-I`, `62-total` or `P62(N)`.
pub fn crossing_label(algorithm: Algorithm, measure: CrossingMeasure) -> String {
    let alg = match algorithm {
        Algorithm::F67Down => "67-Down",
        Algorithm::F67Up => "67-Up",
        other => other.token(),
    };
    match measure {
        CrossingMeasure::Post(p) => format!("{alg}-{p}"),
        CrossingMeasure::Total => format!("{alg}-total"),
        CrossingMeasure::Moves => format!("P{alg}(N)"),
    }
}

const fn row(
    algorithm: Algorithm,
    measure: CrossingMeasure,
    values: [u64; TABLE_HEIGHTS],
) -> CrossingRow {
    CrossingRow {
        algorithm,
        measure,
        values,
    }
}

use CrossingMeasure::{Moves, Post, Total};

pub const CROSSINGS: [CrossingRow; 15] = [
    row(
        Algorithm::F67Down,
        Post(PostId::S),
        [0, 0, 0, 0, 0, 0, 0, 0],
    ),
    row(
        Algorithm::F67Down,
        Post(PostId::I),
        [0, 0, 1, 2, 3, 4, 5, 6],
    ),
    row(
        Algorithm::F67Down,
        Post(PostId::D),
        [0, 0, 1, 2, 3, 4, 5, 6],
    ),
    row(Algorithm::F67Down, Total, [0, 0, 2, 4, 6, 8, 10, 12]),
    row(
        Algorithm::F67Down,
        Moves,
        [1, 4, 11, 30, 85, 248, 735, 2194],
    ),
    row(Algorithm::F67Up, Post(PostId::S), [0, 0, 0, 2, 2, 4, 4, 6]),
    row(Algorithm::F67Up, Post(PostId::I), [0, 0, 1, 1, 3, 3, 5, 5]),
    row(Algorithm::F67Up, Post(PostId::D), [0, 0, 0, 0, 0, 0, 0, 0]),
    row(Algorithm::F67Up, Total, [0, 0, 1, 3, 5, 7, 9, 11]),
    row(Algorithm::F67Up, Moves, [1, 4, 11, 30, 85, 248, 735, 2194]),
    row(Algorithm::F62, Post(PostId::S), [0, 0, 0, 1, 2, 2, 4, 4]),
    row(Algorithm::F62, Post(PostId::I), [0, 0, 1, 2, 3, 8, 9, 14]),
    row(Algorithm::F62, Post(PostId::D), [0, 0, 0, 2, 3, 4, 5, 6]),
    row(Algorithm::F62, Total, [0, 0, 1, 5, 8, 14, 18, 24]),
    row(Algorithm::F62, Moves, [1, 4, 11, 30, 83, 236, 691, 2050]),
];

/// One step of the explicit three-disk walkthrough: a block of consecutive
/// moves carrying `disks` from one post to another. Colors use 1 Red,
/// 0 Neutral, -1 Blue.
#[derive(Debug, PartialEq, Eq)]
pub struct WalkthroughStep {
    pub disks: &'static [u32],
    pub from: PostId,
    pub to: PostId,
    pub moves: usize,
    pub from_color: i8,
    pub to_color: i8,
}

const fn step(
    disks: &'static [u32],
    from: PostId,
    to: PostId,
    moves: usize,
    from_color: i8,
    to_color: i8,
) -> WalkthroughStep {
    WalkthroughStep {
        disks,
        from,
        to,
        moves,
        from_color,
        to_color,
    }
}

/// Three disks on a free tower in eleven moves. `from_color` is the source
/// post before the block, `to_color` the target post after it.
pub const THREE_DISK_WALKTHROUGH: [WalkthroughStep; 7] = [
    step(&[2, 3], PostId::S, PostId::I, 4, 1, -1),
    step(&[1], PostId::S, PostId::D, 1, 1, -1),
    step(&[3], PostId::I, PostId::D, 2, -1, -1),
    step(&[2], PostId::I, PostId::S, 1, -1, 1),
    step(&[3], PostId::D, PostId::I, 1, -1, 1),
    step(&[2], PostId::S, PostId::D, 1, 1, -1),
    step(&[3], PostId::I, PostId::D, 1, 1, -1),
];

/// The published end-of-the-world figures, as significant digits and a
/// decimal exponent.
pub const TWO_POW_63: &str = "9223372036854775808";
pub const REMAINING_DIGITS: (&str, i64) = ("3550259505549357568", 29);
pub const TOTAL_DIGITS: (&str, i64) = ("106507785166480704", 30);
/// Leading digits of [`TOTAL_DIGITS`] checked against the exact value.
pub const TOTAL_CHECKED_DIGITS: usize = 16;
