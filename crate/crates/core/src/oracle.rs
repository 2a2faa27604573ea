//! Brute-force references for tests and audits. Nothing here is clever:
//! still-lifes are checked cell by cell with [`cell_cost`], and WCSPs are
//! evaluated on every complete assignment.

use alloc::vec::Vec;

use crate::be::{eliminate_rows, RowDomain};
use crate::costs::{PartialAssignment, VarId, WcspInstance};
use crate::hyb::{solve_sl_hyb_observed, SolveOptions};
use crate::life::{cell_cost, reverse_bits, row_mask, Pattern, SplitLayout, SplitRow};
use crate::{Cost, Error, Result};

/// Largest board [`brute_force_sl`] accepts.
pub const MAX_BRUTE_SIDE: usize = 5;

/// Largest search space [`brute_force_wcsp`] enumerates by default.
pub const WCSP_CAP: u128 = 1 << 24;

#[derive(Clone, Debug)]
pub struct BruteOutcome {
    pub optimum: Cost,
    pub count: u128,
    /// First optimal pattern in enumeration order.
    pub pattern: Option<Pattern>,
}

/// Cost of row `i`'s cells restricted to the columns in `cols`.
fn row_cells(p: &Pattern, i: usize, cols: u64) -> Cost {
    (1..=p.cols())
        .filter(|&j| cols >> (j - 1) & 1 == 1)
        .map(|j| cell_cost(p, i, j))
        .sum()
}

/// Exhaustive `SL(n)`: the optimum, the number of optimal patterns and the
/// first of them. Rows are enumerated in order; a partial board is dropped
/// as soon as a finished row is unstable, which prunes nothing that could
/// still be stable.
pub fn brute_force_sl(n: usize) -> Result<BruteOutcome> {
    if n == 0 || n > MAX_BRUTE_SIDE {
        return Err(Error::BoardSize(n));
    }
    let mut p = Pattern::square(n)?;
    let mut out = BruteOutcome {
        optimum: Cost::TOP,
        count: 0,
        pattern: None,
    };
    brute_rows(&mut p, 1, Cost::ZERO, &mut out);
    Ok(out)
}

fn brute_rows(p: &mut Pattern, r: usize, acc: Cost, out: &mut BruteOutcome) {
    let n = p.rows();
    let all = row_mask(n);
    for w in 0..=all {
        p.set_row(r, w);
        let mut acc = acc;
        if r >= 2 {
            acc += row_cells(p, r - 1, all);
            if acc.is_top() {
                continue;
            }
        }
        if r < n {
            brute_rows(p, r + 1, acc, out);
            continue;
        }
        let total = acc + row_cells(p, n, all);
        if total.is_top() {
            continue;
        }
        if total < out.optimum {
            *out = BruteOutcome {
                optimum: total,
                count: 1,
                pattern: Some(p.clone()),
            };
        } else if total == out.optimum {
            out.count += 1;
        }
    }
    p.set_row(r, 0);
}

/// Exhaustive WCSP optimum and number of optimal assignments. Refuses
/// instances whose search space exceeds `cap`.
pub fn brute_force_wcsp(p: &WcspInstance, cap: u128) -> Result<(Cost, u128)> {
    let required = p.search_space();
    if required > cap {
        return Err(Error::EnumerationCap { required, cap });
    }
    let vars: Vec<(VarId, usize)> = p.variables().iter().map(|&(x, d)| (x, d.size())).collect();
    let mut values = alloc::vec![0usize; vars.len()];
    let (mut best, mut count) = (Cost::TOP, 0u128);
    loop {
        let t: PartialAssignment = vars
            .iter()
            .zip(&values)
            .map(|(&(x, _), &v)| (x, v))
            .collect();
        let c = p.evaluate(&t);
        if c.is_finite() {
            if c < best {
                best = c;
                count = 1;
            } else if c == best {
                count += 1;
            }
        }
        // Odometer, last variable fastest.
        let mut k = vars.len();
        loop {
            if k == 0 {
                return Ok((best, count));
            }
            k -= 1;
            values[k] += 1;
            if values[k] < vars[k].1 {
                break;
            }
            values[k] = 0;
        }
    }
}

/// A partially fixed board for [`completion_cost`].
#[derive(Clone, Debug)]
pub struct Completion {
    pub n: usize,
    /// Fixed row words, row 1 first.
    pub rows: Vec<u64>,
    /// Columns left free in each row (row 1 first); every subset of them is
    /// tried on top of the fixed word.
    pub free: Vec<u64>,
    /// Rows whose cells are costed.
    pub cost_rows: core::ops::RangeInclusive<usize>,
    /// Columns whose cells are costed.
    pub cost_cols: u64,
}

/// Best total cell cost over the costed region, minimising over every
/// setting of the free cells.
pub fn completion_cost(c: &Completion) -> Result<Cost> {
    let n = c.n;
    if c.rows.len() != n || c.free.len() != n {
        return Err(Error::BoardSize(n));
    }
    let mut p = Pattern::from_rows(n, c.rows.clone())?;
    let mut best = Cost::TOP;
    complete(c, &mut p, 1, Cost::ZERO, &mut best);
    Ok(best)
}

fn complete(c: &Completion, p: &mut Pattern, r: usize, acc: Cost, best: &mut Cost) {
    let n = c.n;
    let fixed = c.rows[r - 1];
    let free = c.free[r - 1];
    // Subsets of `free`, from the empty set up.
    let mut sub = 0u64;
    loop {
        p.set_row(r, fixed | sub);
        let mut acc = acc;
        if r >= 2 && c.cost_rows.contains(&(r - 1)) {
            acc += row_cells(p, r - 1, c.cost_cols);
        }
        if acc < *best {
            if r < n {
                complete(c, p, r + 1, acc, best);
            } else {
                let mut total = acc;
                if c.cost_rows.contains(&n) {
                    total += row_cells(p, n, c.cost_cols);
                }
                if total < *best {
                    *best = total;
                }
            }
        }
        if sub == free {
            break;
        }
        sub = sub.wrapping_sub(free) & free;
    }
    p.set_row(r, fixed);
}

/// Result of an audit: how much was compared and what disagreed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AuditReport {
    pub nodes: u64,
    pub checks: u64,
    pub violations: Vec<AuditViolation>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditViolation {
    pub what: &'static str,
    pub level: usize,
    pub stored: Cost,
    pub exhaustive: Cost,
}

impl AuditReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    fn check(
        &mut self,
        what: &'static str,
        level: usize,
        ok: bool,
        stored: Cost,
        exhaustive: Cost,
    ) {
        self.checks += 1;
        if !ok {
            self.violations.push(AuditViolation {
                what,
                level,
                stored,
                exhaustive,
            });
        }
    }
}

/// Largest board the audits accept.
pub const MAX_AUDIT_SIDE: usize = 6;

/// Compares every entry of every `g_i` stored by bucket elimination with the
/// exhaustive best extension of its two argument rows.
pub fn audit_be(n: usize) -> Result<AuditReport> {
    if !(2..=MAX_AUDIT_SIDE).contains(&n) {
        return Err(Error::BoardSize(n));
    }
    let rec = eliminate_rows::<u16>(n, RowDomain::Full, false, u64::MAX)?;
    let all = row_mask(n);
    let mut report = AuditReport::default();
    let values = 1u64 << n;
    // g_2(b): rows 1..=n costed, row 1 fixed.
    for b in 0..values {
        report.nodes += 1;
        let mut rows = alloc::vec![0; n];
        rows[0] = b;
        let mut free = alloc::vec![all; n];
        free[0] = 0;
        let want = completion_cost(&Completion {
            n,
            rows,
            free,
            cost_rows: 1..=n,
            cost_cols: all,
        })?;
        let got = rec.g2().get1(b);
        report.check("g", 2, got == want, got, want);
    }
    for i in 3..=n + 1 {
        report.nodes += 1;
        for a in 0..values {
            for b in 0..values {
                let mut rows = alloc::vec![0; n];
                rows[i - 3] = a;
                rows[i - 2] = b;
                let free = (1..=n).map(|r| if r >= i { all } else { 0 }).collect();
                let want = completion_cost(&Completion {
                    n,
                    rows,
                    free,
                    cost_rows: i - 1..=n,
                    cost_cols: all,
                })?;
                let got = rec.g(i).get(a, b);
                report.check("g", i, got == want, got, want);
            }
        }
    }
    Ok(report)
}

/// Runs the hybrid solver and, at every node, compares each entry of both
/// `g` tables with the exhaustive best completion of that side, and both
/// lower bounds with the exhaustive best completion of the node.
pub fn audit_hyb(n: usize, opts: &SolveOptions) -> Result<AuditReport> {
    if !(4..=MAX_AUDIT_SIDE).contains(&n) {
        return Err(Error::BoardSize(n));
    }
    let layout = SplitLayout::new(n)?;
    let (m, cw) = (layout.lateral, layout.center);
    let lat = 1u64 << m;
    let all = row_mask(n);
    let lateral_mask = |side: usize| {
        if side == 0 {
            row_mask(m)
        } else {
            row_mask(m) << (m + cw)
        }
    };
    // The left side owns the middle column when there is one.
    let side_cells = |side: usize| {
        if side == 0 {
            layout.left_cells() | layout.middle_cells()
        } else {
            layout.right_cells()
        }
    };
    // A lateral word of one side as it sits in the full row; right tables
    // are over mirrored words.
    let place = |side: usize, w: u64| {
        if side == 0 {
            w
        } else {
            reverse_bits(w, m) << (m + cw)
        }
    };

    let mut report = AuditReport::default();
    let mut failure = None;
    let mut obs = |v: &crate::hyb::NodeView<'_>| {
        if failure.is_some() {
            return;
        }
        let i = v.level;
        report.nodes += 1;
        let center_row = |r: usize| {
            layout.join(SplitRow {
                left: 0,
                center: v.centers[r],
                right: 0,
            })
        };
        let fixed: Vec<u64> = (1..=n)
            .map(|r| if r >= i { center_row(r) } else { 0 })
            .collect();
        for side in 0..2 {
            for a in 0..lat {
                for b in 0..lat {
                    let mut rows = fixed.clone();
                    rows[i - 1] |= place(side, a);
                    rows[i] |= place(side, b);
                    let free = (1..=n)
                        .map(|r| if r >= i + 2 { lateral_mask(side) } else { 0 })
                        .collect();
                    let c = Completion {
                        n,
                        rows,
                        free,
                        cost_rows: i + 1..=n,
                        cost_cols: side_cells(side),
                    };
                    match completion_cost(&c) {
                        Ok(want) => {
                            let got = crate::mb::to_cost(v.g[side][(a * lat + b) as usize]);
                            report.check("g side", i, got == want, got, want);
                        }
                        Err(e) => failure = Some(e),
                    }
                }
            }
        }
        let free = (1..=n)
            .map(|r| {
                if r >= i {
                    lateral_mask(0) | lateral_mask(1)
                } else {
                    all
                }
            })
            .collect();
        match completion_cost(&Completion {
            n,
            rows: fixed,
            free,
            cost_rows: 1..=n,
            cost_cols: all,
        }) {
            Ok(want) => {
                report.check(
                    "lower bound",
                    i,
                    v.lower_bound_mb <= want,
                    v.lower_bound_mb,
                    want,
                );
                report.check(
                    "plain lower bound",
                    i,
                    v.lower_bound_plain <= want,
                    v.lower_bound_plain,
                    want,
                );
                report.check(
                    "bound order",
                    i,
                    v.lower_bound_plain <= v.lower_bound_mb,
                    v.lower_bound_plain,
                    v.lower_bound_mb,
                );
                if let Some(leaf) = v.leaf {
                    report.check("leaf", i, leaf == want, leaf, want);
                }
            }
            Err(e) => failure = Some(e),
        }
    };
    solve_sl_hyb_observed(n, opts, &mut obs)?;
    match failure {
        Some(e) => Err(e),
        None => Ok(report),
    }
}
