//! Runs solvers over a range of board sizes and compares with the
//! published values.

use std::fmt::Write;

use stillife_core::Error;

use crate::fixtures::published;
use crate::run::{solve, Algorithm, Flags};

#[derive(Clone, Debug, PartialEq)]
pub struct ReproRow {
    pub n: usize,
    pub opt_dead: Option<u32>,
    pub opt_alive: Option<u32>,
    pub count: Option<u64>,
    pub ssl_opt: Option<u32>,
    pub be_seconds: Option<f64>,
    pub ssl_seconds: Option<f64>,
    pub hyb_seconds: Option<f64>,
    /// `match`, `mismatch`, or `none` when nothing is published to compare.
    pub published: String,
}

pub const CSV_HEADER: &str =
    "n,opt_dead,opt_alive,count,ssl_opt,be_seconds,ssl_seconds,hyb_seconds,published";

/// Solves `n` with each of `algs` (BE counts when `count`). Solver refusals
/// leave the cells empty; other errors are returned.
pub fn reproduce_one(
    n: usize,
    algs: &[Algorithm],
    count: bool,
    memory_budget: u64,
) -> Result<ReproRow, Error> {
    let mut row = ReproRow {
        n,
        opt_dead: None,
        opt_alive: None,
        count: None,
        ssl_opt: None,
        be_seconds: None,
        ssl_seconds: None,
        hyb_seconds: None,
        published: String::new(),
    };
    let mut optima = Vec::new();
    for &alg in algs {
        let flags = Flags {
            count: count && alg == Algorithm::Be,
            ..Flags::default()
        };
        let o = match solve(alg, n, flags, memory_budget) {
            Ok(o) => o,
            Err(
                Error::MemoryBudget { .. } | Error::BoardSize(_) | Error::EnumerationCap { .. },
            ) => continue,
            Err(e) => return Err(e),
        };
        let v = o.optimum.value();
        match alg {
            Algorithm::Be => {
                row.be_seconds = Some(o.seconds);
                row.count = o.count;
                optima.push(v);
            }
            Algorithm::Hyb => {
                row.hyb_seconds = Some(o.seconds);
                optima.push(v);
            }
            Algorithm::Brute => optima.push(v),
            Algorithm::Ssl => {
                row.ssl_seconds = Some(o.seconds);
                row.ssl_opt = v;
            }
        }
    }
    let agreed = optima.first().copied().flatten();
    let consistent = optima.iter().all(|&v| v == optima[0]);
    row.opt_dead = agreed;
    row.opt_alive = agreed.map(|d| (n * n) as u32 - d);

    let p = published(n);
    let mut compared = false;
    let mut ok = consistent;
    if let Some(p) = p {
        let mut cmp = |ours: Option<u64>, theirs: Option<u64>| {
            if let (Some(a), Some(b)) = (ours, theirs) {
                compared = true;
                ok &= a == b;
            }
        };
        cmp(row.opt_dead.map(u64::from), p.opt.map(u64::from));
        cmp(row.count, p.count);
        cmp(row.ssl_opt.map(u64::from), p.ssl.map(u64::from));
    }
    row.published = if !consistent {
        "mismatch".into()
    } else if !compared {
        "none".into()
    } else if ok {
        "match".into()
    } else {
        "mismatch".into()
    };
    Ok(row)
}

fn cell<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(T::to_string).unwrap_or_default()
}

fn seconds(v: Option<f64>) -> String {
    v.map(|s| format!("{s:.3}")).unwrap_or_default()
}

pub fn to_csv(rows: &[ReproRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            r.n,
            cell(&r.opt_dead),
            cell(&r.opt_alive),
            cell(&r.count),
            cell(&r.ssl_opt),
            seconds(r.be_seconds),
            seconds(r.ssl_seconds),
            seconds(r.hyb_seconds),
            r.published
        );
    }
    out
}

/// Reads back the output of [`to_csv`].
pub fn parse_csv(text: &str) -> Result<Vec<ReproRow>, crate::ParseError> {
    use crate::ParseError;
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h == CSV_HEADER => {}
        _ => return Err(ParseError::new(1, "missing header")),
    }
    fn opt<T: std::str::FromStr>(s: &str, line: usize) -> Result<Option<T>, ParseError> {
        if s.is_empty() {
            return Ok(None);
        }
        s.parse()
            .map(Some)
            .map_err(|_| ParseError::new(line, format!("bad field {s:?}")))
    }
    let mut rows = Vec::new();
    for (k, line) in lines {
        let lineno = k + 1;
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != 9 {
            return Err(ParseError::new(lineno, "expected 9 fields"));
        }
        rows.push(ReproRow {
            n: f[0].parse().map_err(|_| ParseError::new(lineno, "bad n"))?,
            opt_dead: opt(f[1], lineno)?,
            opt_alive: opt(f[2], lineno)?,
            count: opt(f[3], lineno)?,
            ssl_opt: opt(f[4], lineno)?,
            be_seconds: opt(f[5], lineno)?,
            ssl_seconds: opt(f[6], lineno)?,
            hyb_seconds: opt(f[7], lineno)?,
            published: f[8].to_string(),
        });
    }
    Ok(rows)
}
