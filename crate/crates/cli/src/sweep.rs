use std::fmt;
use std::ops::RangeInclusive;

use rayon::prelude::*;
use sodcalc_checker::check_trace;
use sodcalc_core::{Params, Trace};
use sodcalc_engine::driver::enumerate_cover_sods;
use sodcalc_engine::{crosscheck, replay_main, verify_ck, verify_phi_relabel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Check {
    Replay,
    Trace,
    Crosscheck,
    CoverSods,
    Ck,
    Relabel,
}

impl Check {
    pub const ALL: [Check; 6] = [Check::Replay, Check::Trace, Check::Crosscheck, Check::CoverSods, Check::Ck, Check::Relabel];

    pub fn name(&self) -> &'static str {
        match self {
            Check::Replay => "replay",
            Check::Trace => "check",
            Check::Crosscheck => "crosscheck",
            Check::CoverSods => "cover",
            Check::Ck => "ck",
            Check::Relabel => "relabel",
        }
    }
}

/// Outcome of every check for one `(n, d, m)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellReport {
    pub cell: (i64, i64, i64),
    /// One entry per [`Check::ALL`]: a short summary or the failure.
    pub results: Vec<(Check, Result<String, String>)>,
}

impl CellReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|(_, r)| r.is_ok())
    }

    pub fn result(&self, c: Check) -> &Result<String, String> {
        &self.results.iter().find(|(k, _)| *k == c).expect("every check is recorded").1
    }
}

impl fmt::Display for CellReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, d, m) = self.cell;
        write!(f, "{} n={n} d={d} m={m:<2}", if self.passed() { "PASS" } else { "FAIL" })?;
        for (c, r) in &self.results {
            match r {
                Ok(s) => write!(f, "  {}:{s}", c.name())?,
                Err(e) => write!(f, "  {}:FAIL({e})", c.name())?,
            }
        }
        Ok(())
    }
}

/// Every `(n, d, m)` in the ranges with `nd ≤ m`, in lexicographic order.
pub fn admissible_cells(
    n: RangeInclusive<i64>,
    d: RangeInclusive<i64>,
    m: RangeInclusive<i64>,
) -> Vec<(i64, i64, i64)> {
    let mut out = Vec::new();
    for n in n.clone() {
        for d in d.clone() {
            for m in m.clone() {
                if Params::new(n, d, m).is_ok() {
                    out.push((n, d, m));
                }
            }
        }
    }
    out
}

/// Run all checks for one cell. Later checks still run when the replay
/// fails, except those that need its output.
pub fn run_cell(n: i64, d: i64, m: i64) -> CellReport {
    let mut results = Vec::new();
    let p = match Params::new(n, d, m) {
        Ok(p) => p,
        Err(e) => {
            let results = Check::ALL.iter().map(|c| (*c, Err(e.to_string()))).collect();
            return CellReport { cell: (n, d, m), results };
        }
    };
    let replay = replay_main(&p).map_err(|e| e.to_string());
    results.push((Check::Replay, replay.as_ref().map(|r| format!("{} steps", r.trace.steps.len())).map_err(Clone::clone)));
    results.push((
        Check::Trace,
        match &replay {
            Ok(r) => Trace::read_jsonl(r.trace.to_jsonl().as_bytes())
                .map_err(|e| e.to_string())
                .and_then(|t| check_trace(&t).map_err(|e| e.to_string()))
                .map(|rep| format!("{} conds", rep.conditions)),
            Err(_) => Err("no trace".to_string()),
        },
    ));
    let cc = crosscheck(&p, -m..=2 * m);
    results.push((
        Check::Crosscheck,
        if cc.is_clean() {
            Ok(format!("{} pairs", cc.pairs))
        } else {
            Err(format!("{} disagreements, first {}", cc.mismatches.len(), cc.mismatches[0]))
        },
    ));
    results.push((
        Check::CoverSods,
        enumerate_cover_sods(&p).map(|v| format!("{} sods", v.len())).map_err(|e| e.to_string()),
    ));
    results.push((
        Check::Ck,
        (0..n)
            .map(|k| verify_ck(&p, k).map(|r| r.steps.len()))
            .sum::<Result<usize, _>>()
            .map(|steps| format!("{n} inductions/{steps} steps"))
            .map_err(|e| e.to_string()),
    ));
    results.push((
        Check::Relabel,
        match &replay {
            Ok(r) => verify_phi_relabel(&p, r.phi_blocks()).map(|v| format!("{} phis", v.len() + 1)).map_err(|e| e.to_string()),
            Err(_) => Err("no PHI blocks".to_string()),
        },
    ));
    CellReport { cell: (n, d, m), results }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepReport {
    pub cells: Vec<CellReport>,
}

impl SweepReport {
    pub fn failures(&self) -> usize {
        self.cells.iter().filter(|c| !c.passed()).count()
    }
}

impl fmt::Display for SweepReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.cells {
            writeln!(f, "{c}")?;
        }
        let total = self.cells.len();
        writeln!(f, "{}/{total} cells pass", total - self.failures())
    }
}

/// Run `cells` on a pool of `jobs` threads. The report is in cell order.
pub fn sweep(cells: &[(i64, i64, i64)], jobs: usize) -> Result<SweepReport, rayon::ThreadPoolBuildError> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build()?;
    let cells = pool.install(|| cells.par_iter().map(|&(n, d, m)| run_cell(n, d, m)).collect());
    Ok(SweepReport { cells })
}
