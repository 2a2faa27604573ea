//! The `stillife` command line.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use stillife_core::be::{eliminate_rows, RowDomain};
use stillife_core::costs::{CostTable, VarId};
use stillife_core::generic::{maxsat_to_wcsp, solve_generic};
use stillife_core::hyb::SolveOptions;
use stillife_core::life::{row_cost, violations, Side, Violation};
use stillife_core::mb::HTables;
use stillife_core::oracle::{audit_be, audit_hyb, AuditReport, MAX_AUDIT_SIDE};
use stillife_core::{Error, DEFAULT_MEMORY_BUDGET};

use crate::dimacs::parse_dimacs;
use crate::pattern_text::{format_pattern, parse_pattern};
use crate::reproduce::{reproduce_one, to_csv};
use crate::run::{solve, Algorithm, AuditSummary, Flags, Summary};
use crate::table_dump::dump_table;
use crate::wcsp_text::parse_wcsp;

pub const EXIT_OK: i32 = 0;
/// A solver refused to run within the memory budget.
pub const EXIT_RESOURCE: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_DATA: i32 = 65;
/// An audit found a stored value that disagrees with exhaustive search.
pub const EXIT_AUDIT: i32 = 70;

pub const MEMORY_ENV: &str = "STILLIFE_MEM_BUDGET";

#[derive(Parser, Debug)]
#[command(
    name = "stillife",
    version,
    about = "Maximum-density still-lifes and weighted CSPs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Find a maximum-density still-life on an n x n board.
    Solve(SolveArgs),
    /// Check a pattern file against the still-life conditions.
    Verify {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Output::Text)]
        output: Output,
    },
    /// Solve Max-SAT on a DIMACS CNF file.
    Maxsat {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        degree_bound: usize,
        #[arg(long, value_enum, default_value_t = Output::Text)]
        output: Output,
    },
    /// Solve a weighted CSP in the text format.
    Wcsp {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        degree_bound: usize,
        #[arg(long, value_enum, default_value_t = Output::Text)]
        output: Output,
    },
    /// Dump a row cost function or an intermediate table as text.
    Table(TableArgs),
    /// Solve a range of sizes and compare with the published values.
    Reproduce(ReproduceArgs),
}

#[derive(Args, Debug)]
struct SolveArgs {
    #[arg(long, value_enum)]
    alg: AlgArg,
    #[arg(long)]
    n: usize,
    /// Count optimal patterns (be, brute).
    #[arg(long)]
    count: bool,
    /// HYB: drop the mini-bucket look-ahead from the lower bound.
    #[arg(long)]
    no_mb_lb: bool,
    /// HYB: start without the symmetric upper bound.
    #[arg(long)]
    no_ssl_ub: bool,
    /// HYB: do not skip mirrored central assignments.
    #[arg(long)]
    no_symmetry: bool,
    /// Check stored tables and bounds against exhaustive search (be, hyb; n <= 6).
    #[arg(long)]
    audit: bool,
    #[arg(long, value_enum, default_value_t = Output::Text)]
    output: Output,
}

#[derive(Args, Debug)]
struct TableArgs {
    #[arg(long)]
    n: usize,
    /// Row cost function f_I over rows I-1, I, I+1.
    #[arg(long, group = "which")]
    f: Option<usize>,
    /// Bucket-elimination table g_I over rows I-2, I-1 (g_2 is over row 1).
    #[arg(long, group = "which")]
    g: Option<usize>,
    /// Look-ahead table h_I over the left windows of rows I+1, I+2.
    #[arg(long, group = "which")]
    h: Option<usize>,
}

#[derive(Args, Debug)]
struct ReproduceArgs {
    #[arg(long)]
    from: usize,
    #[arg(long)]
    to: usize,
    /// Comma-separated algorithms to run.
    #[arg(long, value_enum, value_delimiter = ',', default_values_t = [AlgArg::Be])]
    alg: Vec<AlgArg>,
    /// Count optimal patterns with BE.
    #[arg(long)]
    count: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum AlgArg {
    Be,
    Ssl,
    Hyb,
    Brute,
}

impl From<AlgArg> for Algorithm {
    fn from(a: AlgArg) -> Self {
        match a {
            AlgArg::Be => Algorithm::Be,
            AlgArg::Ssl => Algorithm::Ssl,
            AlgArg::Hyb => Algorithm::Hyb,
            AlgArg::Brute => Algorithm::Brute,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Text,
    Csv,
}

/// Settings that come from the environment rather than the arguments.
#[derive(Clone, Copy, Debug)]
pub struct Context {
    pub memory_budget: u64,
}

impl Default for Context {
    fn default() -> Self {
        Context {
            memory_budget: DEFAULT_MEMORY_BUDGET,
        }
    }
}

/// Parses a byte count with an optional `K`, `M` or `G` suffix (powers of
/// 1024).
pub fn parse_bytes(s: &str) -> Option<u64> {
    let s = s.trim();
    let (digits, shift) = match s.chars().last()? {
        'k' | 'K' => (&s[..s.len() - 1], 10),
        'm' | 'M' => (&s[..s.len() - 1], 20),
        'g' | 'G' => (&s[..s.len() - 1], 30),
        _ => (s, 0),
    };
    digits.trim().parse::<u64>().ok()?.checked_mul(1 << shift)
}

impl Context {
    pub fn from_env() -> Result<Context, String> {
        match std::env::var(MEMORY_ENV) {
            Ok(v) => parse_bytes(&v)
                .map(|memory_budget| Context { memory_budget })
                .ok_or_else(|| format!("{MEMORY_ENV}={v:?} is not a byte count")),
            Err(_) => Ok(Context::default()),
        }
    }
}

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

macro_rules! out {
    ($io:expr, $($t:tt)*) => { let _ = writeln!($io.out, $($t)*); };
}
macro_rules! err {
    ($io:expr, $($t:tt)*) => { let _ = writeln!($io.err, $($t)*); };
}

/// Runs the command line `args` (program name first) and returns the exit
/// code.
pub fn run<I, T>(args: I, ctx: Context, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let mut io = Io { out, err };
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(io.out, "{text}");
                return EXIT_OK;
            }
            let _ = write!(io.err, "{text}");
            return EXIT_USAGE;
        }
    };
    match cli.command {
        Command::Solve(a) => cmd_solve(&a, ctx, &mut io),
        Command::Verify { file, output } => cmd_verify(&file, output, &mut io),
        Command::Maxsat {
            file,
            degree_bound,
            output,
        } => cmd_maxsat(&file, degree_bound, output, &mut io),
        Command::Wcsp {
            file,
            degree_bound,
            output,
        } => cmd_wcsp(&file, degree_bound, output, &mut io),
        Command::Table(a) => cmd_table(&a, ctx, &mut io),
        Command::Reproduce(a) => cmd_reproduce(&a, ctx, &mut io),
    }
}

fn solver_error(e: &Error, alg: Option<Algorithm>, io: &mut Io<'_>) -> i32 {
    match e {
        Error::MemoryBudget { required, budget } => {
            err!(io, "error: needs about {required} bytes, over the budget of {budget} (set {MEMORY_ENV} to change it)");
            if alg == Some(Algorithm::Be) {
                err!(
                    io,
                    "hint: the hybrid solver (--alg hyb) needs far less memory"
                );
            }
            EXIT_RESOURCE
        }
        Error::EnumerationCap { .. } => {
            err!(io, "error: {e}");
            EXIT_RESOURCE
        }
        Error::BoardSize(_) => {
            err!(io, "error: {e}");
            EXIT_USAGE
        }
        _ => {
            err!(io, "error: {e}");
            EXIT_DATA
        }
    }
}

fn audit_summary(r: &AuditReport) -> AuditSummary {
    AuditSummary {
        nodes: r.nodes,
        checks: r.checks,
        violations: r.violations.len(),
    }
}

fn cmd_solve(a: &SolveArgs, ctx: Context, io: &mut Io<'_>) -> i32 {
    let alg = Algorithm::from(a.alg);
    if a.count && !matches!(alg, Algorithm::Be | Algorithm::Brute) {
        err!(
            io,
            "error: --count is only available with --alg be or --alg brute"
        );
        return EXIT_USAGE;
    }
    if (a.no_mb_lb || a.no_ssl_ub || a.no_symmetry) && alg != Algorithm::Hyb {
        err!(
            io,
            "error: --no-mb-lb, --no-ssl-ub and --no-symmetry only apply to --alg hyb"
        );
        return EXIT_USAGE;
    }
    if a.audit && !(matches!(alg, Algorithm::Be | Algorithm::Hyb) && a.n <= MAX_AUDIT_SIDE) {
        err!(
            io,
            "error: --audit needs --alg be or --alg hyb and n <= {MAX_AUDIT_SIDE}"
        );
        return EXIT_USAGE;
    }
    let flags = Flags {
        count: a.count,
        mb_lb: !a.no_mb_lb,
        ssl_ub: !a.no_ssl_ub,
        symmetry: !a.no_symmetry,
    };
    let outcome = match solve(alg, a.n, flags, ctx.memory_budget) {
        Ok(o) => o,
        Err(e) => return solver_error(&e, Some(alg), io),
    };
    let mut summary = Summary::of(&outcome);
    let mut audit_failed = false;
    if a.audit {
        let report = match alg {
            Algorithm::Be if a.n >= 2 => audit_be(a.n),
            Algorithm::Hyb if a.n >= 4 => audit_hyb(
                a.n,
                &SolveOptions {
                    use_mb_lb: flags.mb_lb,
                    use_ssl_ub: flags.ssl_ub,
                    use_symmetry: flags.symmetry,
                    memory_budget: ctx.memory_budget,
                },
            ),
            // Boards this small are solved without any stored table.
            _ => Ok(AuditReport::default()),
        };
        match report {
            Ok(r) => {
                for v in r.violations.iter().take(20) {
                    err!(
                        io,
                        "audit: {} at level {}: stored {} exhaustive {}",
                        v.what,
                        v.level,
                        v.stored,
                        v.exhaustive
                    );
                }
                audit_failed = !r.is_clean();
                summary.audit = Some(audit_summary(&r));
            }
            Err(e) => return solver_error(&e, Some(alg), io),
        }
    }
    match a.output {
        Output::Text => {
            let _ = write!(io.out, "{}", format_pattern(&outcome.pattern));
            out!(
                io,
                "{}",
                serde_json::to_string_pretty(&summary).unwrap_or_default()
            );
        }
        Output::Json => {
            out!(
                io,
                "{}",
                serde_json::to_string(&summary).unwrap_or_default()
            );
        }
        Output::Csv => {
            out!(io, "n,algorithm,optimum_dead,optimum_alive,solution_count,wall_time_ms,memory_peak_estimate");
            out!(
                io,
                "{},{},{},{},{},{:.3},{}",
                summary.n,
                alg.name(),
                summary.optimum_dead,
                summary.optimum_alive,
                summary
                    .solution_count
                    .map(|c| c.to_string())
                    .unwrap_or_default(),
                summary.wall_time_ms,
                summary.memory_peak_estimate
            );
        }
    }
    if audit_failed {
        EXIT_AUDIT
    } else {
        EXIT_OK
    }
}

fn read_input(path: &Path, io: &mut Io<'_>) -> Option<String> {
    match std::fs::read_to_string(path) {
        Ok(t) => Some(t),
        Err(e) => {
            err!(io, "error: {}: {e}", path.display());
            None
        }
    }
}

fn violation_json(v: &Violation) -> serde_json::Value {
    match *v {
        Violation::Survival {
            row,
            col,
            neighbors,
        } => {
            json!({"kind": "survival", "row": row, "col": col, "neighbors": neighbors})
        }
        Violation::Birth { row, col } => json!({"kind": "birth", "row": row, "col": col}),
        Violation::BoundaryTriple { side, row, col } => {
            json!({"kind": "boundary_triple", "side": side_name(side), "row": row, "col": col})
        }
    }
}

fn side_name(s: Side) -> &'static str {
    match s {
        Side::Top => "top",
        Side::Bottom => "bottom",
        Side::Left => "left",
        Side::Right => "right",
    }
}

fn violation_text(v: &Violation) -> String {
    match *v {
        Violation::Survival {
            row,
            col,
            neighbors,
        } => {
            format!("live cell ({row},{col}) has {neighbors} live neighbours")
        }
        Violation::Birth { row, col } => format!("dead cell ({row},{col}) has 3 live neighbours"),
        Violation::BoundaryTriple { side, row, col } => {
            format!(
                "three live cells in a row along the {} edge, centred at ({row},{col})",
                side_name(side)
            )
        }
    }
}

fn cmd_verify(path: &Path, output: Output, io: &mut Io<'_>) -> i32 {
    let Some(text) = read_input(path, io) else {
        return EXIT_DATA;
    };
    let p = match parse_pattern(&text) {
        Ok(p) => p,
        Err(e) => {
            err!(io, "error: {}: {e}", path.display());
            return EXIT_DATA;
        }
    };
    let vs = violations(&p);
    let stable = vs.is_empty();
    match output {
        Output::Json => {
            let v = json!({
                "rows": p.rows(),
                "cols": p.cols(),
                "stable": stable,
                "alive": p.live_count(),
                "dead": p.dead_count(),
                "violations": vs.iter().map(violation_json).collect::<Vec<_>>(),
            });
            out!(io, "{v}");
        }
        Output::Text => {
            out!(io, "{}", if stable { "stable" } else { "unstable" });
            out!(io, "alive {} dead {}", p.live_count(), p.dead_count());
            for v in &vs {
                out!(io, "violation: {}", violation_text(v));
            }
        }
        Output::Csv => {
            out!(io, "rows,cols,stable,alive,dead,violations");
            out!(
                io,
                "{},{},{},{},{},{}",
                p.rows(),
                p.cols(),
                stable,
                p.live_count(),
                p.dead_count(),
                vs.len()
            );
        }
    }
    EXIT_OK
}

fn cmd_maxsat(path: &Path, degree_bound: usize, output: Output, io: &mut Io<'_>) -> i32 {
    let Some(text) = read_input(path, io) else {
        return EXIT_DATA;
    };
    let cnf = match parse_dimacs(&text) {
        Ok(c) => c,
        Err(e) => {
            err!(io, "error: {}: {e}", path.display());
            return EXIT_DATA;
        }
    };
    let start = Instant::now();
    let solved =
        maxsat_to_wcsp(&cnf.clauses, cnf.vars).and_then(|p| solve_generic(&p, degree_bound));
    let s = match solved {
        Ok(s) => s,
        Err(e) => return solver_error(&e, None, io),
    };
    let ms = start.elapsed().as_secs_f64() * 1000.0;
    let falsified = s.optimum.value().unwrap_or(0);
    let kept = cnf.clauses.len() as u32;
    let model: Vec<i64> = (1..=cnf.vars)
        .map(|v| {
            let val = s
                .assignment
                .as_ref()
                .and_then(|t| t.get(VarId(v)))
                .unwrap_or(0);
            if val == 1 {
                i64::from(v)
            } else {
                -i64::from(v)
            }
        })
        .collect();
    match output {
        Output::Json => {
            let v = json!({
                "variables": cnf.vars,
                "clauses": kept,
                "declared_clauses": cnf.declared_clauses,
                "tautologies_dropped": cnf.tautologies_dropped,
                "duplicate_literals_merged": cnf.duplicate_literals_merged,
                "falsified": falsified,
                "satisfied": kept - falsified,
                "branchings": s.stats.branchings,
                "eliminations": s.stats.eliminations,
                "wall_time_ms": ms,
                "model": model,
            });
            out!(io, "{v}");
        }
        Output::Text => {
            out!(
                io,
                "c variables {} clauses {} (declared {})",
                cnf.vars,
                kept,
                cnf.declared_clauses
            );
            out!(io, "c tautologies dropped {}", cnf.tautologies_dropped);
            out!(
                io,
                "c duplicate literals merged {}",
                cnf.duplicate_literals_merged
            );
            out!(
                io,
                "c branchings {} eliminations {}",
                s.stats.branchings,
                s.stats.eliminations
            );
            out!(io, "o {falsified}");
            let lits: Vec<String> = model.iter().map(i64::to_string).collect();
            out!(io, "v {} 0", lits.join(" "));
        }
        Output::Csv => {
            out!(
                io,
                "variables,clauses,falsified,satisfied,branchings,wall_time_ms"
            );
            out!(
                io,
                "{},{},{},{},{},{:.3}",
                cnf.vars,
                kept,
                falsified,
                kept - falsified,
                s.stats.branchings,
                ms
            );
        }
    }
    EXIT_OK
}

fn cmd_wcsp(path: &Path, degree_bound: usize, output: Output, io: &mut Io<'_>) -> i32 {
    let Some(text) = read_input(path, io) else {
        return EXIT_DATA;
    };
    let p = match parse_wcsp(&text) {
        Ok(p) => p,
        Err(e) => {
            err!(io, "error: {}: {e}", path.display());
            return EXIT_DATA;
        }
    };
    let start = Instant::now();
    let s = match solve_generic(&p, degree_bound) {
        Ok(s) => s,
        Err(e) => return solver_error(&e, None, io),
    };
    let ms = start.elapsed().as_secs_f64() * 1000.0;
    let values: Vec<(u32, usize)> = match &s.assignment {
        Some(t) => {
            let mut v: Vec<(u32, usize)> = t.pairs().iter().map(|&(x, a)| (x.0, a)).collect();
            v.sort_unstable();
            v
        }
        None => Vec::new(),
    };
    match output {
        Output::Json => {
            let v = json!({
                "variables": p.variables().len(),
                "functions": p.functions().len(),
                "optimum": s.optimum.value(),
                "assignment": values.iter().map(|&(x, a)| json!({"var": x, "value": a})).collect::<Vec<_>>(),
                "branchings": s.stats.branchings,
                "eliminations": s.stats.eliminations,
                "wall_time_ms": ms,
            });
            out!(io, "{v}");
        }
        Output::Text => {
            out!(io, "optimum {}", s.optimum);
            for (x, a) in &values {
                out!(io, "x{x} = {a}");
            }
        }
        Output::Csv => {
            out!(io, "var,value");
            for (x, a) in &values {
                out!(io, "{x},{a}");
            }
        }
    }
    EXIT_OK
}

const TABLE_MAX_ENTRIES: u64 = 1 << 24;

fn cmd_table(a: &TableArgs, ctx: Context, io: &mut Io<'_>) -> i32 {
    let n = a.n;
    let fail = |io: &mut Io<'_>, msg: String| {
        err!(io, "error: {msg}");
        EXIT_USAGE
    };
    if n == 0 || n > 12 {
        return fail(io, "table dumps support 1 <= n <= 12".into());
    }
    let table = if let Some(i) = a.f {
        if i == 0 || i > n {
            return fail(io, format!("--f takes a row in 1..={n}"));
        }
        let rows: Vec<usize> = (i.saturating_sub(1).max(1)..=(i + 1).min(n)).collect();
        if (1u64 << (n * rows.len())) > TABLE_MAX_ENTRIES {
            return fail(io, "table too large to dump".into());
        }
        let scope = rows.iter().map(|&r| VarId(r as u32)).collect();
        let dims = vec![1usize << n; rows.len()];
        CostTable::from_fn(scope, dims, |t| {
            let word = |r: usize| rows.iter().position(|&x| x == r).map_or(0, |k| t[k] as u64);
            row_cost(i, word(i.wrapping_sub(1)), word(i), word(i + 1), n)
        })
    } else if let Some(i) = a.g {
        if i < 2 || i > n + 1 {
            return fail(io, format!("--g takes an index in 2..={}", n + 1));
        }
        if (1u64 << (2 * n)) > TABLE_MAX_ENTRIES {
            return fail(io, "table too large to dump".into());
        }
        let rec = match eliminate_rows::<u16>(n, RowDomain::Full, false, ctx.memory_budget) {
            Ok(r) => r,
            Err(e) => return solver_error(&e, Some(Algorithm::Be), io),
        };
        if i == 2 {
            CostTable::from_fn(vec![VarId(1)], vec![1 << n], |t| rec.g2().get1(t[0] as u64))
        } else {
            let g = rec.g(i);
            let scope = vec![VarId(i as u32 - 2), VarId(i as u32 - 1)];
            CostTable::from_fn(scope, vec![1 << n; 2], |t| g.get(t[0] as u64, t[1] as u64))
        }
    } else if let Some(i) = a.h {
        if n < 4 || i == 0 || i > n - 2 {
            return fail(io, "--h needs n >= 4 and an index in 1..=n-2".into());
        }
        let h = match HTables::compute(n, ctx.memory_budget) {
            Ok(h) => h,
            Err(e) => return solver_error(&e, None, io),
        };
        let side = 1usize << h.width();
        let scope = vec![VarId(i as u32 + 1), VarId(i as u32 + 2)];
        CostTable::from_fn(scope, vec![side; 2], |t| {
            h.window(i, t[0] as u64, t[1] as u64)
        })
    } else {
        return fail(io, "choose one of --f, --g or --h".into());
    };
    match table {
        Ok(t) => {
            let _ = write!(io.out, "{}", dump_table(&t));
            EXIT_OK
        }
        Err(e) => solver_error(&e, None, io),
    }
}

fn cmd_reproduce(a: &ReproduceArgs, ctx: Context, io: &mut Io<'_>) -> i32 {
    let algs: Vec<Algorithm> = a.alg.iter().map(|&x| x.into()).collect();
    let mut rows = Vec::new();
    for n in a.from..=a.to {
        match reproduce_one(n, &algs, a.count, ctx.memory_budget) {
            Ok(r) => rows.push(r),
            Err(e) => return solver_error(&e, None, io),
        }
    }
    let _ = write!(io.out, "{}", to_csv(&rows));
    if rows.iter().any(|r| r.published == "mismatch") {
        err!(io, "warning: some rows disagree with the published values");
    }
    EXIT_OK
}
