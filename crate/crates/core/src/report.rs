//! Rendering reports as JSON, CSV or aligned text.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::analysis::{CrossingsTable, EfficiencyRow, TableReport};
use crate::math::{DoomsdayReport, Ratio};
use crate::oracle::OptimalityRow;
use crate::reference;
use crate::tower::ParseError;

/// Decimal places used when ratios are rendered as decimals.
pub const RATIO_PLACES: u32 = 9;

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    #[default]
    Pretty,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Pretty => "pretty",
        })
    }
}

impl FromStr for Format {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "pretty" => Ok(Format::Pretty),
            other => Err(ParseError(format!("unknown format `{other}`"))),
        }
    }
}

/// Anything that can be laid out as a header row plus data rows.
pub trait Tabular {
    fn columns(&self) -> Vec<String>;
    fn rows(&self) -> Vec<Vec<String>>;
    /// Lines printed under the pretty table.
    fn notes(&self) -> Vec<String> {
        Vec::new()
    }
}

/// Renders `value`. JSON serializes the value itself; CSV and pretty use its
/// tabular layout. Output always ends with a newline.
pub fn render<T: Tabular + Serialize + ?Sized>(value: &T, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Csv => to_csv(&value.columns(), &value.rows()),
        Format::Pretty => {
            let mut s = to_pretty(&value.columns(), &value.rows());
            for note in value.notes() {
                s.push_str(&note);
                s.push('\n');
            }
            s
        }
    }
}

fn to_csv(columns: &[String], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(columns).expect("in-memory write");
    for row in rows {
        w.write_record(row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
}

fn to_pretty(columns: &[String], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = columns.iter().map(|c| c.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: &[String]| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .enumerate()
            .map(|(i, (c, w))| {
                if i == 0 {
                    format!("{c:<w$}")
                } else {
                    format!("{c:>w$}")
                }
            })
            .collect();
        let mut s = padded.join("  ").trim_end().to_string();
        s.push('\n');
        s
    };
    let mut out = line(columns);
    for row in rows {
        out.push_str(&line(row));
    }
    out
}

fn opt(cell: Option<u64>) -> String {
    cell.map(|v| v.to_string()).unwrap_or_default()
}

impl Tabular for TableReport {
    fn columns(&self) -> Vec<String> {
        let mut c = vec!["N".to_string()];
        c.extend(self.columns.iter().cloned());
        c
    }

    fn rows(&self) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .map(|r| {
                let mut row = vec![r.label.clone()];
                row.extend(r.cells.iter().map(|c| opt(*c)));
                row
            })
            .collect()
    }

    fn notes(&self) -> Vec<String> {
        if self.mismatches.is_empty() {
            vec![format!("{}: all cells match", self.id)]
        } else {
            self.mismatches
                .iter()
                .map(|m| format!("MISMATCH {m}"))
                .collect()
        }
    }
}

impl Tabular for CrossingsTable {
    fn columns(&self) -> Vec<String> {
        let mut c = vec!["row".to_string()];
        c.extend((1..=self.n_max).map(|n| format!("N={n}")));
        c
    }

    fn rows(&self) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .map(|r| {
                let mut row = vec![r.label.clone()];
                row.extend(r.values.iter().map(u64::to_string));
                row
            })
            .collect()
    }
}

fn ratio_cells(r: &Ratio) -> [String; 2] {
    [r.to_string(), r.to_decimal(RATIO_PLACES)]
}

impl Tabular for [EfficiencyRow] {
    fn columns(&self) -> Vec<String> {
        [
            "n",
            "SF/100",
            "SF/100 decimal",
            "67/100",
            "67/100 decimal",
            "62/100",
            "62/100 decimal",
        ]
        .map(String::from)
        .to_vec()
    }

    fn rows(&self) -> Vec<Vec<String>> {
        self.iter()
            .map(|r| {
                let mut row = vec![r.n.to_string()];
                for ratio in [&r.semifree, &r.f67, &r.f62] {
                    row.extend(ratio_cells(ratio));
                }
                row
            })
            .collect()
    }
}

impl Tabular for [OptimalityRow] {
    fn columns(&self) -> Vec<String> {
        [
            "n",
            "free optimum",
            "colored optimum",
            "semifree optimum",
            "100",
            "67d",
            "67u",
            "sf",
            "62",
            "gap 100",
            "gap 67d",
            "gap 67u",
            "gap sf",
            "gap 62",
        ]
        .map(String::from)
        .to_vec()
    }

    fn rows(&self) -> Vec<Vec<String>> {
        self.iter()
            .map(|r| {
                let mut row: Vec<String> = [
                    r.n as u64,
                    r.free_optimum,
                    r.colored_optimum,
                    r.semifree_optimum,
                    r.c100,
                    r.f67_down,
                    r.f67_up,
                    r.semifree,
                    r.f62,
                ]
                .iter()
                .map(u64::to_string)
                .collect();
                row.extend(r.gaps().iter().map(|(_, g)| g.to_string()));
                row
            })
            .collect()
    }
}

/// Doomsday figures with their labels, in display order.
pub fn doomsday_lines(report: &DoomsdayReport) -> Vec<(&'static str, String)> {
    let sig = reference::REMAINING_DIGITS.0.len() as u32;
    vec![
        ("2^63 (classical moves elapsed)", report.elapsed.to_string()),
        (
            "(3^64-1)/2 (colored length)",
            report.colored_total.to_string(),
        ),
        (
            "approximation: (3^64-1)/2 * 67/108",
            report.estimated_total.to_scientific(sig),
        ),
        (
            "approximation: (3^64-1)/2 * 67/108 - 2^63",
            report.estimated_remaining.to_scientific(sig),
        ),
        (
            "exact: 62 length at 64 disks",
            report.exact_total.to_string(),
        ),
        (
            "exact: 62 length at 64 disks - 2^63",
            report.exact_remaining.to_string(),
        ),
    ]
}

impl Tabular for DoomsdayReport {
    fn columns(&self) -> Vec<String> {
        vec!["quantity".into(), "value".into()]
    }

    fn rows(&self) -> Vec<Vec<String>> {
        doomsday_lines(self)
            .into_iter()
            .map(|(k, v)| vec![k.to_string(), v])
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{crossings_table, efficiency_series, table_report};
    use crate::math::doomsday_report;
    use crate::reference::TableId;

    #[test]
    fn formats_parse() {
        for f in [Format::Json, Format::Csv, Format::Pretty] {
            assert_eq!(f.to_string().parse::<Format>(), Ok(f));
        }
        assert!("xml".parse::<Format>().is_err());
    }

    #[test]
    fn csv_layout() {
        let t = table_report(TableId::T6).unwrap();
        let csv = render(&t, Format::Csv);
        let mut lines = csv.lines();
        assert_eq!(
            lines.next(),
            Some("N,k=1,k=2,k=3,k=4,k=5,k=6,k=7,k=8,sum,formula")
        );
        assert_eq!(lines.nth(3), Some("N=4,1,3,7,19,,,,,30,30"));
    }

    #[test]
    fn pretty_aligns_and_notes() {
        let t = crossings_table(3).unwrap();
        let text = render(&t, Format::Pretty);
        let first = text.lines().next().unwrap();
        assert!(first.starts_with("row"));
        assert!(text.contains("62-I"));
        let t9 = render(&table_report(TableId::T9).unwrap(), Format::Pretty);
        assert!(t9.ends_with("T9: all cells match\n"));
    }

    #[test]
    fn json_is_valid() {
        let s = efficiency_series(4).unwrap();
        let v: serde_json::Value = serde_json::from_str(&render(&s[..], Format::Json)).unwrap();
        assert_eq!(v[2]["f67"], "11/13");
        let d: serde_json::Value =
            serde_json::from_str(&render(&doomsday_report(), Format::Json)).unwrap();
        assert_eq!(d["elapsed"], "9223372036854775808");
    }

    #[test]
    fn rendering_is_deterministic() {
        let a = render(&table_report(TableId::T10).unwrap(), Format::Csv);
        let b = render(&table_report(TableId::T10).unwrap(), Format::Csv);
        assert_eq!(a, b);
    }
}
