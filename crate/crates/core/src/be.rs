//! Bucket elimination over row meta-variables.
//!
//! Row `i` is one variable over `2^n` values and `f_i` has scope
//! `{x_{i-1}, x_i, x_{i+1}}`. Eliminating rows from the bottom gives
//! `g_i(a, b) = min_v f_{i-1}(a, b, v) + g_{i+1}(b, v)` with `g_{n+1} = f_n`,
//! so `g_i(a, b)` is the best cost of rows `i-1..n` once rows `i-2, i-1` are
//! `a, b`. The same engine runs over symmetric rows for [`crate::ssl`].

use alloc::vec::Vec;

use crate::life::{expand_symmetric, row_cost, row_mask, RowKind};
use crate::scan::TripleScan;
use crate::{Cost, Error, Pattern, Result};

/// Compact storage for dense still-life tables, the maximum value being top.
pub trait CompactCost: Copy + Ord + Default {
    const TOP: Self;
    fn from_cost(c: Cost) -> Self;
    fn to_cost(self) -> Cost;
    fn add_small(self, dead: u32) -> Self;
}

macro_rules! compact {
    ($t:ty) => {
        impl CompactCost for $t {
            const TOP: $t = <$t>::MAX;
            #[inline]
            fn from_cost(c: Cost) -> $t {
                match c.value() {
                    Some(v) if v < <$t>::MAX as u32 => v as $t,
                    _ => <$t>::MAX,
                }
            }
            #[inline]
            fn to_cost(self) -> Cost {
                if self == <$t>::MAX {
                    Cost::TOP
                } else {
                    Cost::new(self as u32)
                }
            }
            #[inline]
            fn add_small(self, dead: u32) -> $t {
                if self == <$t>::MAX {
                    self
                } else {
                    let v = self as u32 + dead;
                    debug_assert!(v < <$t>::MAX as u32, "cost headroom exhausted");
                    v as $t
                }
            }
        }
    };
}
compact!(u8);
compact!(u16);

/// Which row values the elimination ranges over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowDomain {
    /// All `2^n` rows.
    Full,
    /// Vertically symmetric rows, encoded by their `⌈n/2⌉`-bit left half.
    Symmetric,
}

impl RowDomain {
    pub fn bits(self, n: usize) -> usize {
        match self {
            RowDomain::Full => n,
            RowDomain::Symmetric => n.div_ceil(2),
        }
    }

    pub fn expand(self, word: u64, n: usize) -> u64 {
        match self {
            RowDomain::Full => word & row_mask(n),
            RowDomain::Symmetric => expand_symmetric(word, n),
        }
    }

    fn scan(self, n: usize, kind: RowKind) -> TripleScan {
        match self {
            RowDomain::Full => TripleScan::full_reflected(n, kind),
            RowDomain::Symmetric => TripleScan::symmetric(n, kind),
        }
    }

    fn dead(self, word: u64, n: usize) -> u32 {
        n as u32 - self.expand(word, n).count_ones()
    }
}

/// A dense `g` table over two row values, with optional companion counts of
/// minimising extensions (zero exactly where the cost is top).
#[derive(Clone, Debug)]
pub struct GTable<T> {
    side: usize,
    costs: Vec<T>,
    counts: Option<Vec<u64>>,
}

impl<T: CompactCost> GTable<T> {
    fn filled(side: usize, entries: usize, counting: bool) -> Self {
        GTable {
            side,
            costs: alloc::vec![T::TOP; entries],
            counts: counting.then(|| alloc::vec![0; entries]),
        }
    }

    /// Number of values of each row argument.
    pub fn side(&self) -> usize {
        self.side
    }

    /// `g(a, b)`.
    pub fn get(&self, a: u64, b: u64) -> Cost {
        self.costs[a as usize * self.side + b as usize].to_cost()
    }

    /// Entry of a one-argument table (`g_2`).
    pub fn get1(&self, a: u64) -> Cost {
        self.costs[a as usize].to_cost()
    }

    pub fn count(&self, a: u64, b: u64) -> Option<u64> {
        self.counts
            .as_ref()
            .map(|c| c[a as usize * self.side + b as usize])
    }

    pub fn min_entry(&self) -> Cost {
        self.costs.iter().copied().min().unwrap_or(T::TOP).to_cost()
    }

    #[inline]
    fn offer(&mut self, idx: usize, cand: T, count: u64) -> bool {
        let cur = self.costs[idx];
        if cand < cur {
            self.costs[idx] = cand;
            if let Some(c) = self.counts.as_mut() {
                c[idx] = count;
            }
        } else if cand == cur && cand != T::TOP {
            if let Some(c) = self.counts.as_mut() {
                match c[idx].checked_add(count) {
                    Some(v) => c[idx] = v,
                    None => return false,
                }
            }
        }
        true
    }
}

/// Stored output of the elimination phase.
#[derive(Clone, Debug)]
pub struct EliminationRecord<T> {
    n: usize,
    domain: RowDomain,
    /// `g_i` for `i = 3..=n+1`, at index `i - 3`; `g_{n+1}` is `f_n`.
    tables: Vec<GTable<T>>,
    /// `g_2(x_1)`, or `f_1(x_1)` when `n = 1`.
    first: GTable<T>,
}

impl<T: CompactCost> EliminationRecord<T> {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn domain(&self) -> RowDomain {
        self.domain
    }

    /// `g_i` for `3 ≤ i ≤ n + 1`.
    pub fn g(&self, i: usize) -> &GTable<T> {
        &self.tables[i - 3]
    }

    /// `g_2`, indexed by the value of row 1.
    pub fn g2(&self) -> &GTable<T> {
        &self.first
    }

    pub fn optimum(&self) -> Cost {
        self.first.min_entry()
    }

    /// Number of optimal full assignments, when counting was requested.
    pub fn count(&self) -> Option<u64> {
        let best = self.first.min_entry();
        let counts = self.first.counts.as_ref()?;
        if best.is_top() {
            return Some(0);
        }
        let mut total = 0u64;
        for (c, k) in self.first.costs.iter().zip(counts) {
            if c.to_cost() == best {
                total = total.checked_add(*k)?;
            }
        }
        Some(total)
    }

    /// Phase two: walks rows downward choosing, for each, the lowest value
    /// that attains the stored minimum. Returns `None` when infeasible.
    pub fn reconstruct(&self) -> Option<Pattern> {
        let (n, dom) = (self.n, self.domain);
        let best = self.optimum();
        if best.is_top() {
            return None;
        }
        let values = 1u64 << dom.bits(n);
        let x1 = (0..values).find(|&a| self.first.get1(a) == best)?;
        let mut rows = alloc::vec![x1];
        if n >= 2 {
            let target = self.first.get1(x1);
            let full1 = dom.expand(x1, n);
            let x2 = (0..values).find(|&v| {
                row_cost(1, 0, full1, dom.expand(v, n), n) + self.g(3).get(x1, v) == target
            })?;
            rows.push(x2);
        }
        for k in 3..=n {
            let (a, b) = (rows[k - 3], rows[k - 2]);
            let target = self.g(k).get(a, b);
            let (fa, fb) = (dom.expand(a, n), dom.expand(b, n));
            let v = (0..values).find(|&v| {
                row_cost(k - 1, fa, fb, dom.expand(v, n), n) + self.g(k + 1).get(b, v) == target
            })?;
            rows.push(v);
        }
        Pattern::from_rows(n, rows.iter().map(|&r| dom.expand(r, n)).collect()).ok()
    }
}

/// Bytes needed to eliminate an `n`-row board over `domain`, with `T`-sized
/// costs and optional `u64` counts (only two count tables are live at once).
pub fn memory_estimate<T>(n: usize, domain: RowDomain, counting: bool) -> u64 {
    let side = 1u128 << domain.bits(n).min(40);
    let entries = side * side;
    let cost_bytes = core::mem::size_of::<T>() as u128;
    let mut total = (n.max(1) as u128 - 1) * entries * cost_bytes + side * cost_bytes;
    if counting {
        total += 2 * entries * 8;
    }
    total.min(u64::MAX as u128) as u64
}

/// Base case `g_{n+1}(b, v) = f_n(b, v)`.
fn bottom_table<T: CompactCost>(n: usize, dom: RowDomain, counting: bool) -> GTable<T> {
    let side = 1usize << dom.bits(n);
    let mut g = GTable::filled(side, side * side, counting);
    dom.scan(n, RowKind::Bottom).for_each(|a, b, _| {
        let idx = a as usize * side + b as usize;
        g.costs[idx] = T::from_cost(Cost::new(dom.dead(b, n)));
        if let Some(c) = g.counts.as_mut() {
            c[idx] = 1;
        }
    });
    g
}

/// One elimination step: `g_i(a, b) = min_v f_{i-1}(a, b, v) + g_{i+1}(b, v)`
/// for `3 ≤ i ≤ n`.
pub fn eliminate_row<T: CompactCost>(
    n: usize,
    i: usize,
    dom: RowDomain,
    next: &GTable<T>,
) -> Result<GTable<T>> {
    debug_assert!((3..=n).contains(&i));
    let side = next.side;
    let counting = next.counts.is_some();
    let mut g = GTable::filled(side, side * side, counting);
    let mut ok = true;
    dom.scan(n, RowKind::of(i - 1, n)).for_each(|a, b, v| {
        let from = b as usize * side + v as usize;
        let tail = next.costs[from];
        if tail == T::TOP {
            return;
        }
        let cand = tail.add_small(dom.dead(b, n));
        let count = next.counts.as_ref().map_or(0, |c| c[from]);
        ok &= g.offer(a as usize * side + b as usize, cand, count);
    });
    if ok {
        Ok(g)
    } else {
        Err(Error::CountOverflow)
    }
}

/// Last step: `g_2(x_1) = min_v f_1(x_1, v) + g_3(x_1, v)`.
fn eliminate_second<T: CompactCost>(
    n: usize,
    dom: RowDomain,
    next: &GTable<T>,
) -> Result<GTable<T>> {
    let side = next.side;
    let mut g = GTable::filled(side, side, next.counts.is_some());
    let mut ok = true;
    dom.scan(n, RowKind::Top).for_each(|_, b, v| {
        let from = b as usize * side + v as usize;
        let tail = next.costs[from];
        if tail == T::TOP {
            return;
        }
        let count = next.counts.as_ref().map_or(0, |c| c[from]);
        ok &= g.offer(b as usize, tail.add_small(dom.dead(b, n)), count);
    });
    if ok {
        Ok(g)
    } else {
        Err(Error::CountOverflow)
    }
}

/// Runs the elimination phase, refusing when the tables would exceed
/// `memory_budget` bytes.
pub fn eliminate_rows<T: CompactCost>(
    n: usize,
    dom: RowDomain,
    counting: bool,
    memory_budget: u64,
) -> Result<EliminationRecord<T>> {
    if n == 0 || n > 32 {
        return Err(Error::BoardSize(n));
    }
    let required = memory_estimate::<T>(n, dom, counting);
    if required > memory_budget {
        return Err(Error::MemoryBudget {
            required,
            budget: memory_budget,
        });
    }
    let side = 1usize << dom.bits(n);
    if n == 1 {
        let mut first = GTable::filled(side, side, counting);
        dom.scan(1, RowKind::Single).for_each(|_, b, _| {
            first.costs[b as usize] = T::from_cost(Cost::new(dom.dead(b, 1)));
            if let Some(c) = first.counts.as_mut() {
                c[b as usize] = 1;
            }
        });
        return Ok(EliminationRecord {
            n,
            domain: dom,
            tables: Vec::new(),
            first,
        });
    }

    let mut tables = alloc::vec![bottom_table::<T>(n, dom, counting)];
    for i in (3..=n).rev() {
        let g = eliminate_row(n, i, dom, tables.last().expect("nonempty"))?;
        // Counts of g_{i+1} are no longer needed once g_i exists.
        if let Some(prev) = tables.last_mut() {
            prev.counts = None;
        }
        tables.push(g);
    }
    let first = eliminate_second(n, dom, tables.last().expect("nonempty"))?;
    if let Some(prev) = tables.last_mut() {
        prev.counts = None;
    }
    tables.reverse();
    Ok(EliminationRecord {
        n,
        domain: dom,
        tables,
        first,
    })
}

/// Options for [`solve_sl_be`].
#[derive(Clone, Copy, Debug)]
pub struct BeOptions {
    pub count: bool,
    pub memory_budget: u64,
}

impl Default for BeOptions {
    fn default() -> Self {
        BeOptions {
            count: false,
            memory_budget: crate::DEFAULT_MEMORY_BUDGET,
        }
    }
}

#[derive(Clone, Debug)]
pub struct BeSolution {
    /// Minimum number of dead cells.
    pub optimum: Cost,
    pub pattern: Pattern,
    /// Number of optimal patterns (symmetric images counted separately).
    pub count: Option<u64>,
    pub memory_estimate: u64,
}

/// Solves `SL(n)` by bucket elimination over full rows.
pub fn solve_sl_be(n: usize, opts: &BeOptions) -> Result<BeSolution> {
    // Dead-cell totals must fit under the u8 sentinel.
    if n > 15 {
        return Err(Error::MemoryBudget {
            required: memory_estimate::<u8>(n, RowDomain::Full, opts.count),
            budget: opts.memory_budget,
        });
    }
    let rec = eliminate_rows::<u8>(n, RowDomain::Full, opts.count, opts.memory_budget)?;
    let pattern = rec.reconstruct().ok_or(Error::BoardSize(n))?;
    let count = if opts.count {
        Some(rec.count().ok_or(Error::CountOverflow)?)
    } else {
        None
    };
    Ok(BeSolution {
        optimum: rec.optimum(),
        pattern,
        count,
        memory_estimate: memory_estimate::<u8>(n, RowDomain::Full, opts.count),
    })
}
