//! Magnetic Tower of Hanoi toolkit.
//!
//! - [`tower`]: disks, posts, variants and the move rules.
//! - [`solvers`]: the recursive "100", "67", semi-free and "62" solutions and
//!   Lucas' classical solution.
//! - [`math`]: exact closed forms, recurrences and duration ratios.
//! - [`oracle`]: breadth-first search for true optimal solutions.
//! - [`analysis`]: color records, color crossings and table regeneration.
//! - [`verify`]: one-shot consistency check across all of the above.

pub mod analysis;
pub mod math;
pub mod oracle;
pub mod reference;
pub mod report;
pub mod solvers;
pub mod tower;
pub mod trace_format;
pub mod verify;

pub use analysis::{ColorRecord, CrossingCount};
pub use math::{BigCount, Ratio};
pub use oracle::{OracleResult, StateKey};
pub use report::Format;
pub use solvers::{Algorithm, MoveCounter, MoveSink, SolveError};
pub use tower::{
    initial_state, ColorAssignment, Disk, DiskColor, DiskId, IllegalMove, Move, PostColor, PostId,
    RuleViolation, StateError, TowerState, Trace, Variant,
};
