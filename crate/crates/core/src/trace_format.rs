//! Line-delimited trace files.
//!
//! ```text
//! #mtoh n=3 variant=free
//! 1,3,S,I,1,-1,0
//! 2,3,I,D,1,0,-1
//! ...
//! ```
//!
//! The header names the disk count and the variant token (see
//! [`Variant`]'s `Display`). Each following line is one move:
//! 1-based move index, disk id, source post, target post, then the colors of
//! posts S, I and D after the move encoded as 1 (Red), 0 (Neutral), -1 (Blue).
//! Lines are `\n` terminated, there is no trailing blank line, and the start
//! is always the standard start setting of the variant.

use std::fmt::Write as _;

use thiserror::Error;

use crate::tower::{initial_state, IllegalMove, Move, PostColor, StateError, Trace, Variant};

pub const HEADER_PREFIX: &str = "#mtoh";

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormatError {
    #[error("trace does not start from the standard start setting")]
    NonStandardStart,
    #[error("missing or malformed header line")]
    Header,
    #[error("line {line}: {reason}")]
    Record { line: usize, reason: String },
    #[error(transparent)]
    State(#[from] StateError),
    #[error(transparent)]
    Illegal(#[from] IllegalMove),
    #[error("line {line}: recorded colors {recorded:?} differ from replayed colors {replayed:?}")]
    ColorMismatch {
        line: usize,
        recorded: [i8; 3],
        replayed: [i8; 3],
    },
}

pub fn write_trace(trace: &Trace) -> Result<String, FormatError> {
    let start = trace.start();
    if *start != initial_state(start.n(), *start.variant())? {
        return Err(FormatError::NonStandardStart);
    }
    let mut out = String::with_capacity(24 * (trace.len() + 1));
    writeln!(
        out,
        "{HEADER_PREFIX} n={} variant={}",
        start.n(),
        start.variant()
    )
    .unwrap();
    for (i, (mv, c)) in trace.moves().iter().zip(&trace.colors()[1..]).enumerate() {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            i + 1,
            mv.disk,
            mv.from,
            mv.to,
            c[0].value(),
            c[1].value(),
            c[2].value()
        )
        .unwrap();
    }
    Ok(out)
}

fn parse_header(line: &str) -> Result<(u32, Variant), FormatError> {
    let rest = line
        .strip_prefix(HEADER_PREFIX)
        .ok_or(FormatError::Header)?;
    let mut n = None;
    let mut variant = None;
    for field in rest.split_whitespace() {
        match field.split_once('=') {
            Some(("n", v)) => n = v.parse::<u32>().ok(),
            Some(("variant", v)) => variant = v.parse::<Variant>().ok(),
            _ => return Err(FormatError::Header),
        }
    }
    Ok((
        n.ok_or(FormatError::Header)?,
        variant.ok_or(FormatError::Header)?,
    ))
}

/// Parses a trace file, replays it and checks the recorded colors.
pub fn parse_trace(text: &str) -> Result<Trace, FormatError> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    let (_, header) = lines.next().ok_or(FormatError::Header)?;
    let (n, variant) = parse_header(header.trim())?;
    let start = initial_state(n, variant)?;

    let mut moves = Vec::new();
    let mut recorded = Vec::new();
    for (idx, line) in lines {
        let line_no = idx + 1;
        let bad = |reason: &str| FormatError::Record {
            line: line_no,
            reason: reason.to_string(),
        };
        let fields: Vec<&str> = line.trim().split(',').collect();
        if fields.len() != 7 {
            return Err(bad("expected 7 comma-separated fields"));
        }
        let index: usize = fields[0].parse().map_err(|_| bad("bad move index"))?;
        if index != moves.len() + 1 {
            return Err(bad("move indices must count up from 1"));
        }
        let disk: u32 = fields[1].parse().map_err(|_| bad("bad disk id"))?;
        let from = fields[2].parse().map_err(|_| bad("bad source post"))?;
        let to = fields[3].parse().map_err(|_| bad("bad target post"))?;
        let mut colors = [0i8; 3];
        for (slot, f) in colors.iter_mut().zip(&fields[4..]) {
            let v: i8 = f.parse().map_err(|_| bad("bad color value"))?;
            PostColor::from_value(v).ok_or_else(|| bad("color must be 1, 0 or -1"))?;
            *slot = v;
        }
        moves.push(Move::new(disk, from, to));
        recorded.push((line_no, colors));
    }

    let trace = Trace::replay(start, moves)?;
    for ((line, rec), replayed) in recorded.into_iter().zip(&trace.colors()[1..]) {
        let replayed = replayed.map(PostColor::value);
        if rec != replayed {
            return Err(FormatError::ColorMismatch {
                line,
                recorded: rec,
                replayed,
            });
        }
    }
    Ok(trace)
}
