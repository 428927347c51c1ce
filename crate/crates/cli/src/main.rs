use std::fs;
use std::io::{self, BufReader, Write};
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use sodcalc_checker::check_trace;
use sodcalc_cli::{admissible_cells, explain_text, sweep};
use sodcalc_core::{BlockLit, Params, Trace, TraceError};
use sodcalc_engine::driver::shape_of;
use sodcalc_engine::dsl::print_sod;
use sodcalc_engine::{replay_main, Preset};

const EXIT_INVALID: u8 = 2;
const EXIT_REPLAY: u8 = 3;
const EXIT_CHECK: u8 = 4;

#[derive(Parser)]
#[command(name = "sodcalc", version, about = "Semiorthogonal decompositions of cyclic covers, replayed and checked")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Replay the main proof and write its trace as JSON Lines.
    Replay {
        #[command(flatten)]
        params: ParamArgs,
        /// Trace output path.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-validate a trace with the adjunction engine only.
    Check {
        trace: PathBuf,
    },
    /// Run every check on each admissible cell.
    Sweep {
        /// Range of n, as `a..b` or a single value.
        #[arg(long, default_value = "2..5", value_parser = parse_range)]
        n: RangeInclusive<i64>,
        #[arg(long, default_value = "1..3", value_parser = parse_range)]
        d: RangeInclusive<i64>,
        /// Range of m; cells with m < nd are skipped.
        #[arg(long, default_value = "1..12", value_parser = parse_range)]
        m: RangeInclusive<i64>,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Also write the report here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Explain a vanishing verdict for Hom(P, Q).
    Explain {
        #[arg(long, default_value_t = 2)]
        n: i64,
        #[arg(long, default_value_t = 1)]
        d: i64,
        /// Defaults to nd + 2.
        #[arg(long)]
        m: Option<i64>,
        p: String,
        q: String,
    },
}

#[derive(Args)]
struct ParamArgs {
    #[arg(long, required_unless_present = "preset")]
    n: Option<i64>,
    #[arg(long, required_unless_present = "preset")]
    d: Option<i64>,
    #[arg(long, required_unless_present = "preset")]
    m: Option<i64>,
    /// quartic, gm:N or cubic:N; overrides --n --d --m.
    #[arg(long)]
    preset: Option<String>,
}

fn parse_range(s: &str) -> Result<RangeInclusive<i64>, String> {
    let bad = |_| format!("expected `a..b` or an integer, got `{s}`");
    match s.split_once("..") {
        Some((a, b)) => Ok(a.trim().parse().map_err(bad)?..=b.trim().parse().map_err(bad)?),
        None => {
            let v = s.trim().parse().map_err(bad)?;
            Ok(v..=v)
        }
    }
}

fn fail(code: u8, msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(code)
}

fn resolve_params(a: &ParamArgs) -> Result<Params, String> {
    if let Some(name) = &a.preset {
        let preset: Preset = name.parse().map_err(|e| format!("{e}"))?;
        return preset.params().map_err(|e| e.to_string());
    }
    let (n, d, m) = (a.n.unwrap_or_default(), a.d.unwrap_or_default(), a.m.unwrap_or_default());
    Params::new(n, d, m).map_err(|e| e.to_string())
}

fn cmd_replay(params: &ParamArgs, out: Option<PathBuf>) -> ExitCode {
    let p = match resolve_params(params) {
        Ok(p) => p,
        Err(e) => return fail(EXIT_INVALID, e),
    };
    let r = match replay_main(&p) {
        Ok(r) => r,
        Err(e) => return fail(EXIT_REPLAY, e),
    };
    if let Some(path) = out {
        if let Err(e) = fs::write(&path, r.trace.to_jsonl()) {
            return fail(EXIT_REPLAY, format!("{}: {e}", path.display()));
        }
    }
    let mut so = io::stdout().lock();
    let _ = writeln!(so, "params: n={} d={} m={} M={}", p.n(), p.d(), p.m(), p.big_m());
    let _ = writeln!(so, "steps: {}", r.trace.steps.len());
    let _ = writeln!(so, "final: {}", print_sod(&r.final_sod));
    let _ = writeln!(so, "shape: {}", shape_of(&r));
    let (i, f) = (r.initial_counts, r.final_counts);
    let _ = writeln!(so, "counts: initial B={} A={}; final B={} A={}", i.b_type, i.a_type, f.b_type, f.a_type);
    ExitCode::SUCCESS
}

fn cmd_check(path: PathBuf) -> ExitCode {
    let file = match fs::File::open(&path) {
        Ok(f) => f,
        Err(e) => return fail(EXIT_INVALID, format!("{}: {e}", path.display())),
    };
    let trace = match Trace::read_jsonl(BufReader::new(file)) {
        Ok(t) => t,
        Err(e @ TraceError::UnsupportedSchema(_)) => return fail(EXIT_CHECK, e),
        Err(e) => return fail(EXIT_INVALID, e),
    };
    match check_trace(&trace) {
        Ok(rep) => {
            println!("ok: {} steps, {} side conditions", rep.steps, rep.conditions);
            ExitCode::SUCCESS
        }
        Err(e) => fail(EXIT_CHECK, format!("first failing step: {e}")),
    }
}

fn cmd_sweep(
    n: RangeInclusive<i64>,
    d: RangeInclusive<i64>,
    m: RangeInclusive<i64>,
    jobs: usize,
    out: Option<PathBuf>,
) -> ExitCode {
    let cells = admissible_cells(n, d, m);
    let jobs = if jobs == 0 { std::thread::available_parallelism().map_or(1, |j| j.get()) } else { jobs };
    let report = match sweep(&cells, jobs) {
        Ok(r) => r,
        Err(e) => return fail(EXIT_REPLAY, e),
    };
    let text = report.to_string();
    print!("{text}");
    if let Some(path) = out {
        if let Err(e) = fs::write(&path, &text) {
            return fail(EXIT_REPLAY, format!("{}: {e}", path.display()));
        }
    }
    if report.failures() == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_REPLAY)
    }
}

fn cmd_explain(n: i64, d: i64, m: Option<i64>, p: &str, q: &str) -> ExitCode {
    let params = match Params::new(n, d, m.unwrap_or(n * d + 2)) {
        Ok(p) => p,
        Err(e) => return fail(EXIT_INVALID, e),
    };
    let lits = p.parse::<BlockLit>().and_then(|pl| q.parse::<BlockLit>().map(|ql| (pl, ql)));
    let (pl, ql) = match lits {
        Ok(l) => l,
        Err(e) => return fail(EXIT_INVALID, format!("block literal: {e}")),
    };
    match explain_text(&params, &pl, &ql) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => fail(EXIT_INVALID, e),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match cli.cmd {
        Cmd::Replay { params, out } => cmd_replay(&params, out),
        Cmd::Check { trace } => cmd_check(trace),
        Cmd::Sweep { n, d, m, jobs, out } => cmd_sweep(n, d, m, jobs, out),
        Cmd::Explain { n, d, m, p, q } => cmd_explain(n, d, m, &p, &q),
    }
}
