//! `mtoh`: solve, count, search and verify Magnetic Tower of Hanoi puzzles.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::error::ErrorKind;
use clap::{Args, CommandFactory, Parser, Subcommand};
use serde::Serialize;

use mtoh_core::analysis::{
    self, color_record, count_crossings, crossings_table, efficiency_series,
};
use mtoh_core::math::{self, doomsday_report};
use mtoh_core::oracle::{self, Goal, SearchConfig};
use mtoh_core::reference::TableId;
use mtoh_core::report::{render, Format, Tabular};
use mtoh_core::trace_format::{parse_trace, write_trace};
use mtoh_core::verify::{verify, VerifyOptions};
use mtoh_core::{solvers, Algorithm, CrossingCount, PostId, Trace, Variant};

#[derive(Parser, Debug)]
#[command(name = "mtoh", version, about = "Magnetic Tower of Hanoi toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format (json, csv or pretty).
    #[arg(long, global = true)]
    format: Option<Format>,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct Puzzle {
    /// Solving algorithm: classical, 100, 67d, 67u, sf or 62.
    #[arg(long)]
    alg: Algorithm,

    /// Number of disks.
    #[arg(long)]
    n: u32,

    /// Tower variant; defaults to the algorithm's natural variant.
    #[arg(long)]
    variant: Option<Variant>,
}

impl Puzzle {
    fn variant(&self) -> Variant {
        self.variant.unwrap_or_else(|| self.alg.default_variant())
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Emit a solving trace.
    Solve(Puzzle),
    /// Exact move counts, in total and per disk.
    Count(Puzzle),
    /// Regenerate every table and run every consistency check.
    Verify {
        /// Largest tower replayed for legality and count checks.
        #[arg(long, default_value_t = 12)]
        max_n: u32,
        /// Largest tower searched by the oracle.
        #[arg(long, default_value_t = 6)]
        oracle_max_n: u32,
    },
    /// Breadth-first search for an optimal solution.
    Oracle {
        /// Number of disks for a single search.
        #[arg(long, conflicts_with = "max_n", required_unless_present = "max_n")]
        n: Option<u32>,
        /// Compare solver lengths with the optimum for every n up to this.
        #[arg(long)]
        max_n: Option<u32>,
        #[arg(long, default_value = "free")]
        variant: Variant,
        /// Require every disk to finish Blue side up.
        #[arg(long)]
        strict: bool,
        /// Worker threads (0 = all cores).
        #[arg(long, default_value_t = 0)]
        workers: usize,
        /// Print the optimal trace instead of the summary.
        #[arg(long)]
        trace: bool,
    },
    /// Color crossings of solver runs or of a trace file.
    Crossings {
        /// Crossing table for 67-Down, 67-Up and 62 up to this height.
        #[arg(long, default_value_t = 8)]
        max_n: u32,
        /// Count crossings in this trace file instead.
        #[arg(long, conflicts_with = "max_n")]
        trace: Option<PathBuf>,
    },
    /// Regenerate the published count and crossing tables.
    Tables {
        /// One table only: T1, T4, T6, TSF, T9 or T10.
        #[arg(long)]
        table: Option<TableId>,
    },
    /// Duration ratios against "100" for every height up to --max-n.
    Ratios {
        #[arg(long, default_value_t = 20)]
        max_n: u32,
    },
    /// The 64-disk end-of-the-world figures.
    Doomsday,
}

/// What a command produced and whether it found a mismatch.
struct Output {
    text: String,
    mismatch: bool,
}

impl Output {
    fn ok(text: String) -> Output {
        Output {
            text,
            mismatch: false,
        }
    }
}

#[derive(Serialize)]
struct TraceRow {
    index: usize,
    disk: u32,
    from: PostId,
    to: PostId,
    colors: [i8; 3],
}

#[derive(Serialize)]
struct SolveOutput {
    algorithm: Algorithm,
    variant: String,
    n: u32,
    length: usize,
    moves: Vec<TraceRow>,
}

impl SolveOutput {
    fn new(alg: Algorithm, trace: &Trace) -> SolveOutput {
        let moves = trace
            .moves()
            .iter()
            .zip(&trace.colors()[1..])
            .enumerate()
            .map(|(i, (m, c))| TraceRow {
                index: i + 1,
                disk: m.disk.get(),
                from: m.from,
                to: m.to,
                colors: c.map(|p| p.value()),
            })
            .collect();
        SolveOutput {
            algorithm: alg,
            variant: trace.start().variant().to_string(),
            n: trace.start().n(),
            length: trace.len(),
            moves,
        }
    }
}

impl Tabular for SolveOutput {
    fn columns(&self) -> Vec<String> {
        ["index", "disk", "from", "to", "S", "I", "D"]
            .map(String::from)
            .to_vec()
    }

    fn rows(&self) -> Vec<Vec<String>> {
        self.moves
            .iter()
            .map(|r| {
                vec![
                    r.index.to_string(),
                    r.disk.to_string(),
                    r.from.to_string(),
                    r.to.to_string(),
                    r.colors[0].to_string(),
                    r.colors[1].to_string(),
                    r.colors[2].to_string(),
                ]
            })
            .collect()
    }
}

#[derive(Serialize)]
struct CountOutput {
    algorithm: Algorithm,
    n: u32,
    total: String,
    per_disk: Vec<String>,
}

impl Tabular for CountOutput {
    fn columns(&self) -> Vec<String> {
        vec!["disk".into(), "moves".into()]
    }

    fn rows(&self) -> Vec<Vec<String>> {
        let mut rows: Vec<Vec<String>> = self
            .per_disk
            .iter()
            .enumerate()
            .map(|(i, c)| vec![(i + 1).to_string(), c.clone()])
            .collect();
        rows.push(vec!["total".into(), self.total.clone()]);
        rows
    }
}

#[derive(Serialize)]
struct CrossingOutput {
    n: u32,
    moves: usize,
    crossings: CrossingCount,
    total: u64,
}

impl Tabular for CrossingOutput {
    fn columns(&self) -> Vec<String> {
        ["S", "I", "D", "total", "moves"].map(String::from).to_vec()
    }

    fn rows(&self) -> Vec<Vec<String>> {
        let c = self.crossings.per_post;
        vec![vec![
            c[0].to_string(),
            c[1].to_string(),
            c[2].to_string(),
            self.total.to_string(),
            self.moves.to_string(),
        ]]
    }
}

#[derive(Serialize)]
struct OracleOutput {
    n: u32,
    variant: String,
    goal: Goal,
    optimal_length: String,
    optimal_solutions: String,
    states_explored: usize,
    level_sizes: Vec<usize>,
    moves: Vec<String>,
}

impl Tabular for OracleOutput {
    fn columns(&self) -> Vec<String> {
        vec!["quantity".into(), "value".into()]
    }

    fn rows(&self) -> Vec<Vec<String>> {
        vec![
            vec!["n".into(), self.n.to_string()],
            vec!["variant".into(), self.variant.clone()],
            vec!["optimal length".into(), self.optimal_length.clone()],
            vec!["optimal solutions".into(), self.optimal_solutions.clone()],
            vec!["states explored".into(), self.states_explored.to_string()],
        ]
    }
}

fn usage_error(msg: String) -> ! {
    Cli::command()
        .error(ErrorKind::ArgumentConflict, msg)
        .exit()
}

fn check_puzzle(p: &Puzzle) {
    let variant = p.variant();
    if p.n == 0 {
        usage_error("--n must be at least 1".into());
    }
    if !p.alg.supports(&variant) {
        usage_error(format!(
            "algorithm `{}` cannot solve the `{variant}` variant (its natural variant is `{}`)",
            p.alg,
            p.alg.default_variant()
        ));
    }
}

fn run(cli: &Cli) -> Result<Output> {
    let format = cli.format;
    let fmt = format.unwrap_or_default();
    match &cli.command {
        Command::Solve(p) => {
            check_puzzle(p);
            let trace = solvers::solve(p.alg, p.n, &p.variant())?;
            let text = match format {
                None | Some(Format::Pretty) => write_trace(&trace)?,
                Some(f) => render(&SolveOutput::new(p.alg, &trace), f),
            };
            Ok(Output::ok(text))
        }
        Command::Count(p) => {
            check_puzzle(p);
            let per_disk = (1..=p.n)
                .map(|k| math::per_disk(p.alg, k).map(|c| c.to_string()))
                .collect::<Result<Vec<_>, _>>()?;
            let out = CountOutput {
                algorithm: p.alg,
                n: p.n,
                total: math::total(p.alg, p.n).to_string(),
                per_disk,
            };
            let text = match fmt {
                Format::Pretty => format!("{}\n", out.total),
                f => render(&out, f),
            };
            Ok(Output::ok(text))
        }
        Command::Verify {
            max_n,
            oracle_max_n,
        } => {
            let report = verify(&VerifyOptions {
                max_n: *max_n,
                oracle_max_n: *oracle_max_n,
            });
            let text = match fmt {
                Format::Json => render_json(&report),
                _ => {
                    let mut s = String::new();
                    for c in &report.checks {
                        let status = if c.passed { "PASS" } else { "FAIL" };
                        s.push_str(&format!("{status} {}: {}\n", c.name, c.detail));
                    }
                    if let Some(c) = report.first_failure() {
                        s.push_str(&format!("first mismatch: {}: {}\n", c.name, c.detail));
                    }
                    s
                }
            };
            Ok(Output {
                text,
                mismatch: !report.passed(),
            })
        }
        Command::Oracle {
            n,
            max_n,
            variant,
            strict,
            workers,
            trace,
        } => {
            if let Some(max_n) = max_n {
                let rows = oracle::optimality_report(*max_n)?;
                return Ok(Output::ok(render(&rows[..], fmt)));
            }
            let n = n.expect("clap requires --n without --max-n");
            let config = SearchConfig {
                goal: if *strict {
                    Goal::AllBlueUp
                } else {
                    Goal::AnyOrientation
                },
                workers: *workers,
                ..SearchConfig::default()
            };
            let result = oracle::bfs_optimal_with(n, variant, &config)?;
            if *trace {
                return Ok(Output::ok(write_trace(&result.trace)?));
            }
            let out = OracleOutput {
                n,
                variant: variant.to_string(),
                goal: config.goal,
                optimal_length: result.optimal_length.to_string(),
                optimal_solutions: result.optimal_solutions.to_string(),
                states_explored: result.states_explored,
                level_sizes: result.level_sizes,
                moves: result.trace.moves().iter().map(|m| m.to_string()).collect(),
            };
            Ok(Output::ok(render(&out, fmt)))
        }
        Command::Crossings { max_n, trace } => {
            if let Some(path) = trace {
                let text = fs::read_to_string(path)
                    .with_context(|| format!("reading {}", path.display()))?;
                let trace = parse_trace(&text).with_context(|| format!("in {}", path.display()))?;
                let crossings = count_crossings(&color_record(&trace));
                let out = CrossingOutput {
                    n: trace.start().n(),
                    moves: trace.len(),
                    total: crossings.total(),
                    crossings,
                };
                return Ok(Output::ok(render(&out, fmt)));
            }
            let table = crossings_table(*max_n)?;
            Ok(Output::ok(render(&table, fmt)))
        }
        Command::Tables { table } => {
            let ids: Vec<TableId> = match table {
                Some(id) => vec![*id],
                None => TableId::ALL.to_vec(),
            };
            let reports = ids
                .into_iter()
                .map(analysis::table_report)
                .collect::<Result<Vec<_>, _>>()?;
            let mismatch = reports.iter().any(|r| !r.matches());
            let text = match fmt {
                Format::Json => render_json(&reports),
                f => reports
                    .iter()
                    .map(|r| {
                        let body = render(r, f);
                        if f == Format::Pretty {
                            format!("{} ({})\n{body}", r.id, r.title)
                        } else {
                            body
                        }
                    })
                    .collect::<Vec<_>>()
                    .join("\n"),
            };
            Ok(Output { text, mismatch })
        }
        Command::Ratios { max_n } => {
            let rows = efficiency_series(*max_n)?;
            Ok(Output::ok(render(&rows[..], fmt)))
        }
        Command::Doomsday => Ok(Output::ok(render(&doomsday_report(), fmt))),
    }
}

fn render_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn emit(cli: &Cli, text: &str) -> Result<()> {
    match &cli.out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli).and_then(|out| emit(&cli, &out.text).map(|()| out.mismatch)) {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
