//! Post-color records, color crossings and regenerated tables.
//!
//! A post "crosses" when its color goes from Red to Blue or back, possibly
//! through any number of Neutral (empty) entries in between. Crossings are
//! attributed to the move at which the opposite color first shows up.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::math::{self, Ratio};
use crate::reference::{
    crossing_label, CountTable, CrossingMeasure, TableId, CROSSINGS, TABLE_HEIGHTS,
};
use crate::solvers::{self, Algorithm, MoveSink, SolveError};
use crate::tower::{initial_state, Move, PostColor, PostId, TowerState, Trace, Variant};

/// Largest tower [`crossings_table`] regenerates.
pub const MAX_CROSSING_DISKS: u32 = 16;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AnalysisError {
    #[error("color values must be 1, 0 or -1, found {0}")]
    BadColor(i8),
    #[error("post sequences differ in length")]
    RaggedRecord,
    #[error("{n} disks exceeds the limit of {max}")]
    TooManyDisks { n: u32, max: u32 },
    #[error("the series needs at least {min} rows")]
    TooShort { min: u32 },
    #[error(transparent)]
    Solve(#[from] SolveError),
}

/// Per-post colors, one entry per state of a trace (moves + 1).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColorRecord {
    posts: [Vec<i8>; 3],
}

impl ColorRecord {
    pub fn new(posts: [Vec<i8>; 3]) -> Result<ColorRecord, AnalysisError> {
        if posts[1].len() != posts[0].len() || posts[2].len() != posts[0].len() {
            return Err(AnalysisError::RaggedRecord);
        }
        if let Some(&bad) = posts
            .iter()
            .flatten()
            .find(|v| PostColor::from_value(**v).is_none())
        {
            return Err(AnalysisError::BadColor(bad));
        }
        Ok(ColorRecord { posts })
    }

    pub fn post(&self, post: PostId) -> &[i8] {
        &self.posts[post.index()]
    }

    pub fn len(&self) -> usize {
        self.posts[0].len()
    }

    pub fn is_empty(&self) -> bool {
        self.posts[0].is_empty()
    }

    /// True when no post ever changes color.
    pub fn is_constant(&self) -> bool {
        self.posts
            .iter()
            .all(|p| p.windows(2).all(|w| w[0] == w[1]))
    }
}

pub fn color_record(trace: &Trace) -> ColorRecord {
    let mut posts: [Vec<i8>; 3] = Default::default();
    for colors in trace.colors() {
        for (seq, c) in posts.iter_mut().zip(colors) {
            seq.push(c.value());
        }
    }
    ColorRecord { posts }
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CrossingCount {
    pub per_post: [u64; 3],
}

impl CrossingCount {
    pub fn post(&self, post: PostId) -> u64 {
        self.per_post[post.index()]
    }

    pub fn total(&self) -> u64 {
        self.per_post.iter().sum()
    }
}

/// Tracks the last non-Neutral color of each post.
#[derive(Clone, Debug, Default)]
struct SignTracker {
    last: [Option<i8>; 3],
    count: CrossingCount,
}

impl SignTracker {
    /// Feeds one state's colors; returns the posts that just crossed.
    fn observe(&mut self, colors: [i8; 3]) -> [bool; 3] {
        let mut crossed = [false; 3];
        for (i, v) in colors.into_iter().enumerate() {
            if v == 0 {
                continue;
            }
            if self.last[i].is_some_and(|l| l != v) {
                self.count.per_post[i] += 1;
                crossed[i] = true;
            }
            self.last[i] = Some(v);
        }
        crossed
    }
}

pub fn count_crossings(record: &ColorRecord) -> CrossingCount {
    let mut tracker = SignTracker::default();
    for j in 0..record.len() {
        tracker.observe([record.posts[0][j], record.posts[1][j], record.posts[2][j]]);
    }
    tracker.count
}

/// `(post, move index)` for every crossing, in order. Index 0 is the start
/// state, so the first possible crossing is at move 1.
pub fn crossing_events(record: &ColorRecord) -> Vec<(PostId, usize)> {
    let mut tracker = SignTracker::default();
    let mut events = Vec::new();
    for j in 0..record.len() {
        let crossed = tracker.observe([record.posts[0][j], record.posts[1][j], record.posts[2][j]]);
        for post in PostId::ALL {
            if crossed[post.index()] {
                events.push((post, j));
            }
        }
    }
    events
}

/// Counts crossings while a solver runs, without storing the trace.
pub struct CrossingCounter {
    state: TowerState,
    tracker: SignTracker,
    moves: u64,
}

impl CrossingCounter {
    pub fn new(start: TowerState) -> CrossingCounter {
        let mut tracker = SignTracker::default();
        tracker.observe(start.colors().map(PostColor::value));
        CrossingCounter {
            state: start,
            tracker,
            moves: 0,
        }
    }

    pub fn count(&self) -> CrossingCount {
        self.tracker.count
    }

    pub fn moves(&self) -> u64 {
        self.moves
    }

    pub fn state(&self) -> &TowerState {
        &self.state
    }
}

impl MoveSink for CrossingCounter {
    fn record(&mut self, mv: Move) {
        self.state
            .apply_mut(&mv)
            .unwrap_or_else(|v| panic!("solver emitted an illegal move {mv}: {v}"));
        self.moves += 1;
        self.tracker
            .observe(self.state.colors().map(PostColor::value));
    }
}

/// Crossings and length of one solver run.
pub fn solver_crossings(
    alg: Algorithm,
    n: u32,
    variant: &Variant,
) -> Result<(CrossingCount, u64), AnalysisError> {
    let mut counter = CrossingCounter::new(initial_state(n, *variant).map_err(SolveError::from)?);
    solvers::generate(alg, n, variant, &mut counter)?;
    Ok((counter.count(), counter.moves()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossingsRow {
    pub algorithm: Algorithm,
    pub measure: CrossingMeasure,
    pub label: String,
    pub values: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossingsTable {
    pub n_max: u32,
    pub rows: Vec<CrossingsRow>,
}

/// Crossings per post, their total and the move count for 67-Down, 67-Up
/// and 62 on a free tower, for heights `1..=n_max`.
pub fn crossings_table(n_max: u32) -> Result<CrossingsTable, AnalysisError> {
    if n_max > MAX_CROSSING_DISKS {
        return Err(AnalysisError::TooManyDisks {
            n: n_max,
            max: MAX_CROSSING_DISKS,
        });
    }
    let mut rows = Vec::new();
    for alg in [Algorithm::F67Down, Algorithm::F67Up, Algorithm::F62] {
        let runs = (1..=n_max)
            .map(|n| solver_crossings(alg, n, &Variant::Free))
            .collect::<Result<Vec<_>, _>>()?;
        let measures = PostId::ALL
            .map(CrossingMeasure::Post)
            .into_iter()
            .chain([CrossingMeasure::Total, CrossingMeasure::Moves]);
        for measure in measures {
            let values = runs
                .iter()
                .map(|(c, moves)| match measure {
                    CrossingMeasure::Post(p) => c.post(p),
                    CrossingMeasure::Total => c.total(),
                    CrossingMeasure::Moves => *moves,
                })
                .collect();
            rows.push(CrossingsRow {
                algorithm: alg,
                measure,
                label: crossing_label(alg, measure),
                values,
            });
        }
    }
    Ok(CrossingsTable { n_max, rows })
}

/// A regenerated cell that differs from the published one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub table: TableId,
    pub row: String,
    pub column: String,
    pub published: u64,
    pub computed: u64,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} row {}, column {}: published {}, computed {}",
            self.table, self.row, self.column, self.published, self.computed
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportRow {
    pub label: String,
    pub cells: Vec<Option<u64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableReport {
    pub id: TableId,
    pub title: &'static str,
    pub columns: Vec<String>,
    pub rows: Vec<ReportRow>,
    pub mismatches: Vec<Mismatch>,
}

impl TableReport {
    pub fn matches(&self) -> bool {
        self.mismatches.is_empty()
    }

    /// Cell at `(row label, column name)`.
    pub fn cell(&self, row: &str, column: &str) -> Option<u64> {
        let c = self.columns.iter().position(|x| x == column)?;
        self.rows.iter().find(|r| r.label == row)?.cells[c]
    }
}

/// Regenerates a published table from the solvers, the formulas and the
/// crossing analysis, and lists every cell that differs.
pub fn table_report(id: TableId) -> Result<TableReport, AnalysisError> {
    match id.counts() {
        Some(table) => count_table_report(id, table),
        None => crossing_table_report(),
    }
}

fn count_table_report(id: TableId, table: &CountTable) -> Result<TableReport, AnalysisError> {
    let alg = table.algorithm;
    let variant = alg.default_variant();
    let mut columns: Vec<String> = (1..=TABLE_HEIGHTS).map(|k| format!("k={k}")).collect();
    columns.push("sum".into());
    if table.formula_column {
        columns.push("formula".into());
    }
    let mut rows = Vec::new();
    let mut mismatches = Vec::new();
    let mut check = |row: &str, column: &str, published: u64, computed: u64| {
        if published != computed {
            mismatches.push(Mismatch {
                table: id,
                row: row.to_string(),
                column: column.to_string(),
                published,
                computed,
            });
        }
    };
    for n in 1..=TABLE_HEIGHTS as u32 {
        let label = format!("N={n}");
        let counter = solvers::count_moves(alg, n, &variant)?;
        let mut cells = vec![None; columns.len()];
        for (k, &moves) in counter.per_disk.iter().enumerate() {
            cells[k] = Some(moves);
            check(&label, &columns[k], table.per_disk[k], moves);
        }
        let published_total = table.totals[n as usize - 1];
        cells[TABLE_HEIGHTS] = Some(counter.total);
        check(&label, "sum", published_total, counter.total);
        if table.formula_column {
            let formula = math::total(alg, n).to_u64().expect("small");
            cells[TABLE_HEIGHTS + 1] = Some(formula);
            check(&label, "formula", published_total, formula);
        }
        rows.push(ReportRow { label, cells });
    }
    Ok(TableReport {
        id,
        title: id.title(),
        columns,
        rows,
        mismatches,
    })
}

fn crossing_table_report() -> Result<TableReport, AnalysisError> {
    let table = crossings_table(TABLE_HEIGHTS as u32)?;
    let columns: Vec<String> = (1..=TABLE_HEIGHTS).map(|n| format!("N={n}")).collect();
    let mut mismatches = Vec::new();
    let mut rows = Vec::new();
    for (computed, published) in table.rows.iter().zip(&CROSSINGS) {
        debug_assert_eq!(computed.label, published.label());
        for (j, (&c, &p)) in computed.values.iter().zip(&published.values).enumerate() {
            if c != p {
                mismatches.push(Mismatch {
                    table: TableId::T10,
                    row: computed.label.clone(),
                    column: columns[j].clone(),
                    published: p,
                    computed: c,
                });
            }
        }
        rows.push(ReportRow {
            label: computed.label.clone(),
            cells: computed.values.iter().copied().map(Some).collect(),
        });
    }
    Ok(TableReport {
        id: TableId::T10,
        title: TableId::T10.title(),
        columns,
        rows,
        mismatches,
    })
}

/// Duration ratios against "100" at one tower height.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EfficiencyRow {
    pub n: u32,
    pub semifree: Ratio,
    pub f67: Ratio,
    pub f62: Ratio,
}

pub fn efficiency_series(n_max: u32) -> Result<Vec<EfficiencyRow>, AnalysisError> {
    if n_max < 2 {
        return Err(AnalysisError::TooShort { min: 2 });
    }
    let ratio = |alg, n| math::duration_ratio(alg, n).expect("n >= 1 and alg is magnetic");
    Ok((1..=n_max)
        .map(|n| EfficiencyRow {
            n,
            semifree: ratio(Algorithm::SemiFree, n),
            f67: ratio(Algorithm::F67Down, n),
            f62: ratio(Algorithm::F62, n),
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solvers::{solve_100, solve_62, solve_67_down};
    use crate::tower::Variant;

    #[test]
    fn counts_sign_changes_through_neutral() {
        let r = ColorRecord::new([vec![1, 0, 0, -1, 0, -1, 1], vec![0; 7], vec![0; 7]]).unwrap();
        assert_eq!(count_crossings(&r).per_post, [2, 0, 0]);
        assert_eq!(crossing_events(&r), vec![(PostId::S, 3), (PostId::S, 6)]);
        let flat = ColorRecord::new([vec![1; 4], vec![0; 4], vec![-1; 4]]).unwrap();
        assert!(flat.is_constant());
        assert_eq!(count_crossings(&flat).total(), 0);
    }

    #[test]
    fn rejects_bad_records() {
        assert_eq!(
            ColorRecord::new([vec![2], vec![0], vec![0]]),
            Err(AnalysisError::BadColor(2))
        );
        assert_eq!(
            ColorRecord::new([vec![1, 1], vec![0], vec![0]]),
            Err(AnalysisError::RaggedRecord)
        );
    }

    #[test]
    fn three_disk_records() {
        let colored = color_record(&solve_100(3, &Variant::colored_rbb()).unwrap());
        assert!(colored.is_constant());
        let free = color_record(&solve_100(3, &Variant::Free).unwrap());
        assert_eq!(count_crossings(&free).total(), 0);
        let down = color_record(&solve_67_down(3).unwrap());
        assert_eq!(count_crossings(&down).total(), 2);
    }

    #[test]
    fn streaming_matches_records() {
        for n in 1..=6 {
            let t = solve_62(n).unwrap();
            let (streamed, moves) = solver_crossings(Algorithm::F62, n, &Variant::Free).unwrap();
            assert_eq!(streamed, count_crossings(&color_record(&t)));
            assert_eq!(moves, t.len() as u64);
        }
    }

    #[test]
    fn crossing_examples() {
        let t = crossings_table(8).unwrap();
        let get =
            |label: &str, n: usize| t.rows.iter().find(|r| r.label == label).unwrap().values[n - 1];
        assert_eq!(get("67-Down-total", 5), 6);
        assert_eq!(get("62-total", 5), 8);
        assert_eq!(get("62-I", 8), 14);
        assert_eq!(get("67-Up-total", 7), 9);
    }

    #[test]
    fn tables_regenerate() {
        let t1 = table_report(TableId::T1).unwrap();
        assert!(t1.matches());
        assert_eq!(t1.cell("N=8", "k=8"), Some(128));
        assert_eq!(t1.cell("N=8", "sum"), Some(255));
        let t6 = table_report(TableId::T6).unwrap();
        assert_eq!(t6.cell("N=4", "k=4"), Some(19));
        assert_eq!(t6.cell("N=4", "k=5"), None);
        assert_eq!(t6.cell("N=4", "sum"), Some(30));
        let t9 = table_report(TableId::T9).unwrap();
        assert_eq!(t9.cell("N=7", "k=7"), Some(455));
        assert_eq!(t9.cell("N=7", "sum"), Some(691));
        for id in TableId::ALL {
            let r = table_report(id).unwrap();
            assert!(r.matches(), "{id}: {:?}", r.mismatches);
        }
    }

    #[test]
    fn efficiency_examples() {
        let s = efficiency_series(20).unwrap();
        assert_eq!(s[1].f67, math::rational(1, 1));
        assert_eq!(s[1].semifree, math::rational(4, 4));
        assert_eq!(s[6].f67.to_string(), "735/1093");
        let limit = math::limit_ratio(Algorithm::F62).unwrap();
        assert!(
            s[19].f62.abs_diff(&limit) < num_rational::BigRational::new(1.into(), 1_000_000.into())
        );
        assert_eq!(
            efficiency_series(1),
            Err(AnalysisError::TooShort { min: 2 })
        );
    }
}
