//! One-shot verification of everything this crate can reproduce.

use num_rational::BigRational;
use serde::Serialize;

use crate::analysis::{self, color_record, count_crossings, solver_crossings};
use crate::math::{self, doomsday_report, BigCount, Ratio};
use crate::oracle::{self, SearchConfig};
use crate::reference::{self, TableId, THREE_DISK_WALKTHROUGH};
use crate::solvers::{self, Algorithm};
use crate::tower::{DiskColor, PostId, Trace, Variant};

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// Largest tower replayed for the legality and count checks.
    pub max_n: u32,
    /// Largest tower searched by the oracle.
    pub oracle_max_n: u32,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            max_n: 12,
            oracle_max_n: 6,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Summary on success, first mismatch on failure.
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }
}

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Every solver paired with the variants it is replayed under.
pub fn solver_runs() -> Vec<(Algorithm, Variant)> {
    vec![
        (Algorithm::Classical, Variant::Classical),
        (Algorithm::C100, Variant::colored_rbb()),
        (Algorithm::C100, Variant::colored_rrb()),
        (Algorithm::C100, Variant::Free),
        (Algorithm::F67Down, Variant::Free),
        (Algorithm::F67Up, Variant::Free),
        (Algorithm::SemiFree, Variant::semi_free()),
        (
            Algorithm::SemiFree,
            Variant::SemiFree {
                source: DiskColor::Blue,
            },
        ),
        (Algorithm::F62, Variant::Free),
    ]
}

/// Compares a three-disk trace with the published step-by-step walkthrough:
/// block sizes, disks, posts and post colors around every block, including
/// post I turning from Blue to Red across steps 4 and 5.
pub fn check_walkthrough(trace: &Trace) -> Result<(), String> {
    ensure(trace.start().n() == 3, || {
        "walkthrough needs 3 disks".into()
    })?;
    let colors = trace.colors();
    let mut at = 0;
    let mut boundaries = vec![0];
    for (i, step) in THREE_DISK_WALKTHROUGH.iter().enumerate() {
        let s = i + 1;
        let block = trace
            .moves()
            .get(at..at + step.moves)
            .ok_or_else(|| format!("step {s}: trace too short"))?;
        let mut disks: Vec<u32> = block.iter().map(|m| m.disk.get()).collect();
        disks.sort_unstable();
        disks.dedup();
        ensure(disks == step.disks, || {
            format!("step {s}: disks {disks:?}, expected {:?}", step.disks)
        })?;
        let (from, to) = (block[0].from, block[block.len() - 1].to);
        ensure(from == step.from && to == step.to, || {
            format!(
                "step {s}: {from}->{to}, expected {}->{}",
                step.from, step.to
            )
        })?;
        let before = colors[at][from.index()].value();
        let after = colors[at + step.moves][to.index()].value();
        ensure(before == step.from_color && after == step.to_color, || {
            format!(
                "step {s}: colors {before}/{after}, expected {}/{}",
                step.from_color, step.to_color
            )
        })?;
        at += step.moves;
        boundaries.push(at);
    }
    ensure(at == trace.len(), || {
        format!("{} moves, expected {at}", trace.len())
    })?;
    let i_color = |b: usize| colors[boundaries[b]][PostId::I.index()].value();
    ensure(
        i_color(3) == -1 && i_color(4) == 0 && i_color(5) == 1,
        || "post I does not switch from Blue to Red at step 5".into(),
    )
}

fn tables() -> Vec<(String, Outcome)> {
    TableId::ALL
        .into_iter()
        .map(|id| {
            let outcome = match analysis::table_report(id) {
                Ok(r) => match r.mismatches.first() {
                    None => Ok(format!("{} rows match", r.rows.len())),
                    Some(m) => Err(m.to_string()),
                },
                Err(e) => Err(e.to_string()),
            };
            (format!("table {id}"), outcome)
        })
        .collect()
}

fn small_cases() -> Outcome {
    let one = solvers::solve_62(1).map_err(|e| e.to_string())?;
    ensure(one.len() == 1 && one.end().is_solved(), || {
        "one disk is not solved in one move".into()
    })?;
    let two = solvers::solve_62(2).map_err(|e| e.to_string())?;
    ensure(two.len() == 4, || {
        format!("two disks take {} moves", two.len())
    })?;
    let all = oracle::optimal_traces(2, &Variant::Free, &SearchConfig::default(), 10)
        .map_err(|e| e.to_string())?;
    ensure(all.len() == 2 && all.iter().all(|t| t.len() == 4), || {
        format!("{} optimal two-disk solutions", all.len())
    })?;
    check_walkthrough(&solvers::solve_67_down(3).map_err(|e| e.to_string())?)?;
    Ok("1 move, 2 solutions of 4 moves, 11-move walkthrough".into())
}

fn cross_check(max_n: u32) -> Outcome {
    for alg in Algorithm::ALL {
        let variant = alg.default_variant();
        for n in 1..=max_n {
            let counter = solvers::count_moves(alg, n, &variant).map_err(|e| e.to_string())?;
            let traced = BigCount::from(counter.total);
            let closed = math::total(alg, n);
            let rec = math::total_by_recurrence(alg, n);
            let structural = math::total_by_structure(alg, n);
            ensure(
                traced == closed && closed == rec && rec == structural,
                || {
                    format!("{alg} n={n}: trace {traced}, closed {closed}, recurrence {rec}, structure {structural}")
                },
            )?;
            for (i, &moves) in counter.per_disk.iter().enumerate() {
                let k = i as u32 + 1;
                let formula = math::per_disk(alg, k).map_err(|e| e.to_string())?;
                ensure(formula == moves, || {
                    format!("{alg} n={n} disk {k}: trace {moves}, closed {formula}")
                })?;
                if k >= math::first_recurrent_index(alg) {
                    let r = math::per_disk_by_recurrence(alg, k).map_err(|e| e.to_string())?;
                    ensure(r == formula, || {
                        format!("{alg} disk {k}: closed {formula}, recurrence {r}")
                    })?;
                }
            }
        }
    }
    Ok(format!("6 algorithms, n <= {max_n}"))
}

fn legality(max_n: u32) -> Outcome {
    let mut traces = 0;
    for (alg, variant) in solver_runs() {
        for n in 1..=max_n {
            let trace = solvers::solve(alg, n, &variant)
                .map_err(|e| format!("{alg} on {variant}, n={n}: {e}"))?;
            ensure(trace.end().is_solved(), || {
                format!("{alg} on {variant}, n={n}: not solved")
            })?;
            if variant.is_magnetic() {
                let start_face = trace.start().post(PostId::S)[0].up;
                ensure(
                    trace
                        .end()
                        .post(PostId::D)
                        .iter()
                        .all(|d| d.up != start_face),
                    || format!("{alg} on {variant}, n={n}: some disk kept its starting face"),
                )?;
            }
            for (j, state) in trace.states().enumerate() {
                state
                    .validate()
                    .map_err(|e| format!("{alg} on {variant}, n={n}, after move {j}: {e}"))?;
            }
            traces += 1;
        }
    }
    Ok(format!("{traces} traces replayed"))
}

fn crossings(max_n: u32) -> Outcome {
    let top = max_n.min(8);
    for n in 1..=top {
        let t = solvers::solve_100(n, &Variant::Free).map_err(|e| e.to_string())?;
        let c = count_crossings(&color_record(&t));
        ensure(c.total() == 0, || {
            format!("free 100, n={n}: {} crossings", c.total())
        })?;
        let colored = solvers::solve_100(n, &Variant::colored_rbb()).map_err(|e| e.to_string())?;
        ensure(color_record(&colored).is_constant(), || {
            format!("colored 100, n={n}: post colors change")
        })?;
    }
    for n in 4..=top {
        let (c62, l62) =
            solver_crossings(Algorithm::F62, n, &Variant::Free).map_err(|e| e.to_string())?;
        let (c67, l67) =
            solver_crossings(Algorithm::F67Down, n, &Variant::Free).map_err(|e| e.to_string())?;
        ensure(c62.total() >= c67.total() && l62 <= l67, || {
            format!(
                "n={n}: 62 has {} crossings in {l62} moves, 67-Down {} in {l67}",
                c62.total(),
                c67.total()
            )
        })?;
    }
    Ok(format!("n <= {top}"))
}

fn oracle_bounds(max_n: u32) -> Outcome {
    let free_algs = [
        Algorithm::C100,
        Algorithm::F67Down,
        Algorithm::F67Up,
        Algorithm::F62,
    ];
    for n in 1..=max_n {
        let free = oracle::bfs_optimal(n, &Variant::Free).map_err(|e| e.to_string())?;
        let colored = oracle::bfs_optimal(n, &Variant::colored_rbb()).map_err(|e| e.to_string())?;
        for alg in free_algs {
            let len = math::total(alg, n);
            ensure(free.optimal_length <= len, || {
                format!(
                    "n={n}: free optimum {} above {alg} {len}",
                    free.optimal_length
                )
            })?;
        }
        let c100 = math::total(Algorithm::C100, n);
        ensure(colored.optimal_length <= c100, || {
            format!(
                "n={n}: colored optimum {} above {c100}",
                colored.optimal_length
            )
        })?;
        let expected = match n {
            1 => Some(1u64),
            2 => Some(4),
            _ => None,
        };
        if let Some(e) = expected {
            ensure(free.optimal_length == e, || {
                format!("n={n}: free optimum {}, expected {e}", free.optimal_length)
            })?;
        }
    }
    let n = max_n.min(5);
    let run = |workers| {
        oracle::bfs_optimal_with(
            n,
            &Variant::Free,
            &SearchConfig {
                workers,
                ..SearchConfig::default()
            },
        )
        .map_err(|e| e.to_string())
    };
    let (a, b) = (run(1)?, run(4)?);
    ensure(
        a.optimal_length == b.optimal_length
            && a.states_explored == b.states_explored
            && a.trace == b.trace,
        || format!("n={n}: results differ between 1 and 4 workers"),
    )?;
    Ok(format!("n <= {max_n}, deterministic across workers"))
}

fn ratios() -> Outcome {
    let tolerance = BigRational::new(1.into(), 1_000_000.into());
    let expected = [
        (Algorithm::SemiFree, math::rational(3, 4)),
        (Algorithm::F67Down, math::rational(2, 3)),
        (Algorithm::F67Up, math::rational(2, 3)),
        (Algorithm::F62, math::rational(67, 108)),
    ];
    for (alg, limit) in expected {
        let got = math::limit_ratio(alg).map_err(|e| e.to_string())?;
        ensure(got == limit, || {
            format!("{alg}: limit {got}, expected {limit}")
        })?;
        let at20 = math::duration_ratio(alg, 20).map_err(|e| e.to_string())?;
        ensure(at20.abs_diff(&limit) < tolerance, || {
            format!("{alg}: ratio at n=20 is {}", at20.to_decimal(12))
        })?;
    }
    let series: Vec<Ratio> = (2..=40)
        .map(|n| math::duration_ratio(Algorithm::F67Down, n).expect("magnetic"))
        .collect();
    ensure(series.windows(2).all(|w| w[1] < w[0]), || {
        "67 ratio is not strictly decreasing".into()
    })?;
    Ok("limits 3/4, 2/3, 67/108".into())
}

fn doomsday() -> Vec<(String, Outcome)> {
    let report = doomsday_report();
    let mut out = Vec::new();
    let elapsed = report.elapsed.to_string();
    out.push((
        "doomsday 2^63".to_string(),
        if elapsed == reference::TWO_POW_63 {
            Ok(elapsed)
        } else {
            Err(format!("{elapsed} != {}", reference::TWO_POW_63))
        },
    ));
    let digits_check = |value: &Ratio, published: (&str, i64), sig: usize| {
        let (digits, exp) = value.significant_digits(sig as u32).expect("nonzero");
        let want = &published.0[..sig];
        if digits == want && exp == published.1 {
            Ok(format!("{digits} e{exp}"))
        } else {
            Err(format!(
                "computed {digits} e{exp}, published {want} e{}",
                published.1
            ))
        }
    };
    out.push((
        "doomsday estimated total".to_string(),
        digits_check(
            &report.estimated_total,
            reference::TOTAL_DIGITS,
            reference::TOTAL_CHECKED_DIGITS,
        ),
    ));
    out.push((
        "doomsday estimated remaining".to_string(),
        digits_check(
            &report.estimated_remaining,
            reference::REMAINING_DIGITS,
            reference::REMAINING_DIGITS.0.len(),
        ),
    ));
    out
}

pub fn verify(options: &VerifyOptions) -> VerifyReport {
    let mut results = tables();
    results.push(("small cases".into(), small_cases()));
    results.push(("cross-check".into(), cross_check(options.max_n)));
    results.push(("legality".into(), legality(options.max_n)));
    results.push(("crossings".into(), crossings(options.max_n)));
    results.push((
        "oracle bounds".into(),
        oracle_bounds(options.oracle_max_n.min(oracle::MAX_SEARCH_DISKS)),
    ));
    results.push(("ratios".into(), ratios()));
    results.extend(doomsday());
    VerifyReport {
        checks: results
            .into_iter()
            .map(|(name, outcome)| {
                let passed = outcome.is_ok();
                Check {
                    name,
                    passed,
                    detail: outcome.unwrap_or_else(|e| e),
                }
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tower::{initial_state, Move};

    #[test]
    fn walkthrough_accepts_the_solver_and_rejects_a_variant() {
        let t = solvers::solve_67_down(3).unwrap();
        assert_eq!(check_walkthrough(&t), Ok(()));
        assert_eq!(check_walkthrough(&solvers::solve_62(3).unwrap()), Ok(()));
        let start = initial_state(3, Variant::Free).unwrap();
        let short = Trace::replay(start, vec![Move::new(3, PostId::S, PostId::D)]).unwrap();
        assert!(check_walkthrough(&short).is_err());
    }

    #[test]
    fn small_verification_runs() {
        let report = verify(&VerifyOptions {
            max_n: 5,
            oracle_max_n: 3,
        });
        for c in &report.checks {
            if !c.name.starts_with("doomsday estimated remaining") {
                assert!(c.passed, "{}: {}", c.name, c.detail);
            }
        }
    }
}
