//! A plain text format for weighted CSPs.
//!
//! ```text
//! # comments start with '#'
//! wcsp <V>                          number of variables
//! dom <id> <size>                   one line per variable
//! fn <k> <id_1> .. <id_k> [default <cost>]
//! <index> <cost>                    entries of the preceding fn
//! ```
//!
//! Each `fn` line starts a cost table over the listed variables; the lines
//! after it set single entries by index (first scope variable most
//! significant) and every other entry takes the default, 0 unless given.
//! A cost is a non-negative integer or `inf`. `fn 0` gives a constant.

use std::fmt::Write;

use stillife_core::costs::{CostTable, Domain, VarId, WcspInstance};
use stillife_core::Cost;

use crate::ParseError;

fn parse_cost(tok: &str, line: usize) -> Result<Cost, ParseError> {
    if tok == "inf" {
        return Ok(Cost::TOP);
    }
    match tok.parse::<u32>() {
        Ok(v) if v < u32::MAX => Ok(Cost::new(v)),
        _ => Err(ParseError::new(line, format!("bad cost {tok:?}"))),
    }
}

fn parse_num<T: std::str::FromStr>(
    tok: Option<&str>,
    line: usize,
    what: &str,
) -> Result<T, ParseError> {
    tok.and_then(|t| t.parse().ok())
        .ok_or_else(|| ParseError::new(line, format!("expected {what}")))
}

struct Pending {
    line: usize,
    scope: Vec<VarId>,
    dims: Vec<usize>,
    costs: Vec<Cost>,
}

pub fn parse_wcsp(text: &str) -> Result<WcspInstance, ParseError> {
    let mut declared: Option<usize> = None;
    let mut variables: Vec<(VarId, Domain)> = Vec::new();
    let mut functions = Vec::new();
    let mut pending: Option<Pending> = None;
    let finish = |p: Pending, functions: &mut Vec<CostTable>| -> Result<(), ParseError> {
        let t = CostTable::new(p.scope, p.dims, p.costs)
            .map_err(|e| ParseError::new(p.line, e.to_string()))?;
        functions.push(t);
        Ok(())
    };
    let mut last = 0;
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        last = line;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut toks = content.split_whitespace();
        let head = toks.next().unwrap_or("");
        match head {
            "wcsp" => {
                if declared.is_some() {
                    return Err(ParseError::new(line, "second `wcsp` header"));
                }
                declared = Some(parse_num(toks.next(), line, "variable count")?);
            }
            "dom" => {
                if declared.is_none() {
                    return Err(ParseError::new(line, "`dom` before the `wcsp` header"));
                }
                if pending.is_some() || !functions.is_empty() {
                    return Err(ParseError::new(line, "`dom` after the first `fn`"));
                }
                let id: u32 = parse_num(toks.next(), line, "variable id")?;
                let size: usize = parse_num(toks.next(), line, "domain size")?;
                if size == 0 {
                    return Err(ParseError::new(line, "empty domain"));
                }
                if variables.iter().any(|(v, _)| v.0 == id) {
                    return Err(ParseError::new(
                        line,
                        format!("variable {id} declared twice"),
                    ));
                }
                variables.push((VarId(id), Domain(size)));
            }
            "fn" => {
                if let Some(p) = pending.take() {
                    finish(p, &mut functions)?;
                }
                let k: usize = parse_num(toks.next(), line, "arity")?;
                let mut scope = Vec::with_capacity(k);
                let mut dims = Vec::with_capacity(k);
                for _ in 0..k {
                    let id: u32 = parse_num(toks.next(), line, "variable id")?;
                    let size = variables
                        .iter()
                        .find(|(v, _)| v.0 == id)
                        .map(|(_, d)| d.size())
                        .ok_or_else(|| ParseError::new(line, format!("unknown variable {id}")))?;
                    scope.push(VarId(id));
                    dims.push(size);
                }
                let default = match toks.next() {
                    None => Cost::ZERO,
                    Some("default") => parse_cost(
                        toks.next()
                            .ok_or_else(|| ParseError::new(line, "expected default cost"))?,
                        line,
                    )?,
                    Some(t) => return Err(ParseError::new(line, format!("unexpected {t:?}"))),
                };
                let entries = dims.iter().try_fold(1usize, |a, &d| a.checked_mul(d));
                let entries = entries
                    .filter(|&e| e <= 1 << 26)
                    .ok_or_else(|| ParseError::new(line, "table too large"))?;
                pending = Some(Pending {
                    line,
                    scope,
                    dims,
                    costs: vec![default; entries],
                });
            }
            idx => {
                let p = pending
                    .as_mut()
                    .ok_or_else(|| ParseError::new(line, format!("unexpected {idx:?}")))?;
                let index: usize = idx
                    .parse()
                    .map_err(|_| ParseError::new(line, format!("bad index {idx:?}")))?;
                if index >= p.costs.len() {
                    return Err(ParseError::new(
                        line,
                        format!("index {index} out of range 0..{}", p.costs.len()),
                    ));
                }
                let cost = parse_cost(
                    toks.next()
                        .ok_or_else(|| ParseError::new(line, "expected cost"))?,
                    line,
                )?;
                p.costs[index] = cost;
            }
        }
        if let Some(extra) = toks.next() {
            return Err(ParseError::new(line, format!("unexpected {extra:?}")));
        }
    }
    if let Some(p) = pending.take() {
        finish(p, &mut functions)?;
    }
    let declared = declared.ok_or_else(|| ParseError::new(last.max(1), "missing `wcsp` header"))?;
    if variables.len() != declared {
        return Err(ParseError::new(
            last.max(1),
            format!(
                "header declares {declared} variables, found {}",
                variables.len()
            ),
        ));
    }
    WcspInstance::new(variables, functions).map_err(|e| ParseError::new(last.max(1), e.to_string()))
}

/// Writes every entry of every table explicitly.
pub fn write_wcsp(p: &WcspInstance) -> String {
    let mut out = format!("wcsp {}\n", p.variables().len());
    for (x, d) in p.variables() {
        let _ = writeln!(out, "dom {} {}", x.0, d.size());
    }
    for f in p.functions() {
        let _ = write!(out, "fn {}", f.arity());
        for v in f.scope() {
            let _ = write!(out, " {}", v.0);
        }
        out.push('\n');
        for (k, c) in f.costs().iter().enumerate() {
            let _ = writeln!(out, "{k} {c}");
        }
    }
    out
}
