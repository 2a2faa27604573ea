//! DIMACS CNF input and output.
//!
//! Accepted input: `c` comment lines, one `p cnf V C` header before any
//! clause, then clauses as whitespace-separated non-zero literals each
//! terminated by `0` (a clause may span lines). Clauses are normalised on
//! the way in: repeated literals are merged and tautologies dropped, and
//! both are counted.

use std::fmt::Write;

use stillife_core::costs::VarId;
use stillife_core::generic::Clause;

use crate::ParseError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cnf {
    pub vars: u32,
    /// Clauses kept after normalisation.
    pub clauses: Vec<Clause>,
    /// Clause count from the header.
    pub declared_clauses: usize,
    pub tautologies_dropped: usize,
    pub duplicate_literals_merged: usize,
}

pub fn parse_dimacs(text: &str) -> Result<Cnf, ParseError> {
    let mut header: Option<(u32, usize)> = None;
    let mut clauses = Vec::new();
    let mut read = 0usize;
    let (mut tautologies, mut merged) = (0, 0);
    let mut current: Vec<(VarId, bool)> = Vec::new();
    let mut last_line = 0;
    for (k, line) in text.lines().enumerate() {
        let lineno = k + 1;
        last_line = lineno;
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('p') {
            if header.is_some() {
                return Err(ParseError::new(lineno, "second header"));
            }
            let f: Vec<&str> = line.split_whitespace().collect();
            if f.len() != 4 || f[0] != "p" || f[1] != "cnf" {
                return Err(ParseError::new(
                    lineno,
                    "malformed header, expected `p cnf V C`",
                ));
            }
            let vars = f[2]
                .parse()
                .map_err(|_| ParseError::new(lineno, "bad variable count"))?;
            let count = f[3]
                .parse()
                .map_err(|_| ParseError::new(lineno, "bad clause count"))?;
            header = Some((vars, count));
            continue;
        }
        if line.starts_with('%') {
            // Some generators end the file with `%` and `0` lines.
            break;
        }
        let (vars, _) =
            header.ok_or_else(|| ParseError::new(lineno, "clause before the `p cnf` header"))?;
        for tok in line.split_whitespace() {
            let lit: i64 = tok
                .parse()
                .map_err(|_| ParseError::new(lineno, format!("bad literal {tok:?}")))?;
            if lit == 0 {
                read += 1;
                let raw = current.len();
                match Clause::new(current.drain(..)) {
                    Ok(Some(c)) => {
                        merged += raw - c.literals().len();
                        clauses.push(c);
                    }
                    Ok(None) => tautologies += 1,
                    Err(_) => return Err(ParseError::new(lineno, "empty clause")),
                }
                continue;
            }
            let v = lit.unsigned_abs();
            if v > u64::from(vars) {
                return Err(ParseError::new(
                    lineno,
                    format!("literal {lit} out of range 1..={vars}"),
                ));
            }
            current.push((VarId(v as u32), lit > 0));
        }
    }
    let (vars, declared) =
        header.ok_or_else(|| ParseError::new(last_line.max(1), "missing `p cnf` header"))?;
    if !current.is_empty() {
        return Err(ParseError::new(
            last_line,
            "last clause is missing its terminating 0",
        ));
    }
    if read != declared {
        return Err(ParseError::new(
            last_line,
            format!("header declares {declared} clauses, found {read}"),
        ));
    }
    Ok(Cnf {
        vars,
        clauses,
        declared_clauses: declared,
        tautologies_dropped: tautologies,
        duplicate_literals_merged: merged,
    })
}

/// Normalised DIMACS text for `clauses` over `vars` variables.
pub fn write_dimacs(vars: u32, clauses: &[Clause]) -> String {
    let mut out = format!("p cnf {vars} {}\n", clauses.len());
    for c in clauses {
        for &(x, pos) in c.literals() {
            let _ = write!(out, "{}{} ", if pos { "" } else { "-" }, x.0);
        }
        out.push_str("0\n");
    }
    out
}
