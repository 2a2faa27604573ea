//! Hybrid search and variable elimination for `SL(n)`.
//!
//! Rows are split into left lateral, central and right lateral blocks. The
//! search assigns central blocks from the bottom row upward. Once the
//! central values of rows `i, i+1, i+2` are fixed, the left lateral block of
//! row `i+2` only interacts with the left laterals of rows `i, i+1`, so it is
//! eliminated exactly into `g_{i+2}^L(x_i^L, x_{i+1}^L)`; the right side is
//! symmetric. Nodes are pruned with `g + h` lower bounds ([`crate::mb`])
//! against an incumbent seeded from the symmetric optimum ([`crate::ssl`]),
//! and central prefixes that are mirror images of an earlier prefix are
//! skipped.
//!
//! Both sides are handled by the same code: the right side works on mirrored
//! rows, where it becomes a left side. For odd `n` the central block has
//! three columns and the left side also owns the middle column, so its
//! windows are one column wider than the right side's.

use alloc::vec::Vec;

use crate::be::{solve_sl_be, BeOptions};
use crate::life::{reverse_bits, row_cost_in, row_mask, RowKind, SplitLayout, SplitRow};
use crate::mb::{self, window_dead, HTables};
use crate::scan::TripleScan;
use crate::ssl::solve_ssl_be;
use crate::{Cost, Error, Pattern, Result};

const TOP: u16 = u16::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolveOptions {
    /// Add the mini-bucket look-ahead to the lower bound.
    pub use_mb_lb: bool,
    /// Seed the incumbent with the symmetric optimum.
    pub use_ssl_ub: bool,
    /// Skip central prefixes greater than their mirror image.
    pub use_symmetry: bool,
    pub memory_budget: u64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            use_mb_lb: true,
            use_ssl_ub: true,
            use_symmetry: true,
            memory_budget: crate::DEFAULT_MEMORY_BUDGET,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct HybStats {
    pub nodes: u64,
    pub leaves: u64,
    pub bound_prunes: u64,
    pub symmetry_prunes: u64,
    pub improvements: u64,
}

#[derive(Clone, Debug)]
pub struct HybSolution {
    pub optimum: Cost,
    pub pattern: Pattern,
    /// Incumbent cost before search (top without the symmetric seed).
    pub initial_upper_bound: Cost,
    pub stats: HybStats,
    pub memory_estimate: u64,
}

/// What the search exposes at every internal node, for auditing.
pub struct NodeView<'a> {
    pub n: usize,
    pub layout: SplitLayout,
    /// Lowest assigned central row.
    pub level: usize,
    /// Central values by row (1-based); rows `level..=n` are assigned.
    pub centers: &'a [u64],
    /// `g_{level+2}` per side as a `2^m × 2^m` table over lateral words; the
    /// right table is over mirrored lateral words.
    pub g: [&'a [u16]; 2],
    /// Lower bound with the look-ahead tables.
    pub lower_bound_mb: Cost,
    /// Lower bound from the `g` minima only.
    pub lower_bound_plain: Cost,
    /// At level 1, the exact best completion of the node.
    pub leaf: Option<Cost>,
}

/// Bytes for the search tables plus the look-ahead tables.
pub fn memory_estimate(n: usize, opts: &SolveOptions) -> u64 {
    let Ok(l) = SplitLayout::new(n) else { return 0 };
    let lat = 1u64 << l.lateral;
    let g = (n as u64) * 2 * lat * lat * 2;
    let lists = if !TripleLists::fits(l.lateral) {
        0
    } else if l.center == 3 {
        TripleLists::bytes_estimate(l.lateral + 2) + TripleLists::bytes_estimate(l.lateral + 3)
    } else {
        TripleLists::bytes_estimate(l.lateral + 2)
    };
    g + lists
        + if opts.use_mb_lb {
            mb::memory_estimate_hyb(n)
        } else {
            0
        }
}

/// Stable internal-row window triples grouped by the central columns of the
/// three rows, so that an elimination step is a flat loop. Entries pack
/// `a | b << m | v << 2m | dead(b) << 3m` over lateral words.
struct TripleLists {
    bits: usize,
    offsets: Vec<u32>,
    entries: Vec<u32>,
}

impl TripleLists {
    fn fits(m: usize) -> bool {
        3 * m + 4 <= 32
    }

    /// Rough size, from the observed growth of about 4.8x per column.
    fn bytes_estimate(width: usize) -> u64 {
        let mut count: u64 = 2_100_000;
        for _ in 9..width {
            count = count * 48 / 10;
        }
        for _ in width..9 {
            count = count * 10 / 48;
        }
        4 * count
    }

    fn build(m: usize, width: usize) -> TripleLists {
        let bits = width - m;
        let combos = 1usize << (3 * bits);
        let lm = row_mask(m);
        let mut offsets = Vec::with_capacity(combos + 1);
        let mut entries = Vec::new();
        for combo in 0..combos as u64 {
            offsets.push(entries.len() as u32);
            let cm = row_mask(bits);
            let (c0, c1, c2) = (combo & cm, (combo >> bits) & cm, combo >> (2 * bits));
            let mut scan = TripleScan::window(width, RowKind::Internal);
            scan.fix_columns(m, bits, c0, c1, c2);
            scan.for_each(|a, b, v| {
                let dead = u64::from(window_dead(width, b));
                entries.push(
                    ((a & lm) | (b & lm) << m | (v & lm) << (2 * m) | dead << (3 * m)) as u32,
                );
            });
        }
        offsets.push(entries.len() as u32);
        TripleLists {
            bits,
            offsets,
            entries,
        }
    }

    fn get(&self, c0: u64, c1: u64, c2: u64) -> &[u32] {
        let combo = (c0 | c1 << self.bits | c2 << (2 * self.bits)) as usize;
        &self.entries[self.offsets[combo] as usize..self.offsets[combo + 1] as usize]
    }
}

struct Search<'a, 'o> {
    n: usize,
    layout: SplitLayout,
    lat: usize,
    opts: SolveOptions,
    /// Window width per side.
    width: [usize; 2],
    h: [Option<&'a HTables>; 2],
    lists: [Option<&'a TripleLists>; 2],
    /// Central value by row, 1-based.
    centers: Vec<u64>,
    /// The central columns visible from each side, by row.
    visible: [Vec<u64>; 2],
    /// `g_r` per side for `r = 3..=n+1`, indexed by `r`.
    g: Vec<[Vec<u16>; 2]>,
    upper: Cost,
    best: Option<Pattern>,
    stats: HybStats,
    observer: Option<&'o mut dyn FnMut(&NodeView<'_>)>,
}

impl<'a, 'o> Search<'a, 'o> {
    fn new(
        n: usize,
        opts: SolveOptions,
        h: [Option<&'a HTables>; 2],
        lists: [Option<&'a TripleLists>; 2],
    ) -> Result<Self> {
        let layout = SplitLayout::new(n)?;
        let lat = 1usize << layout.lateral;
        let g = (0..=n + 1)
            .map(|r| {
                if r >= 3 {
                    [alloc::vec![TOP; lat * lat], alloc::vec![TOP; lat * lat]]
                } else {
                    [Vec::new(), Vec::new()]
                }
            })
            .collect();
        Ok(Search {
            n,
            layout,
            lat,
            opts,
            width: [layout.lateral + layout.center, layout.lateral + 2],
            h,
            lists,
            centers: alloc::vec![0; n + 2],
            visible: [alloc::vec![0; n + 2], alloc::vec![0; n + 2]],
            g,
            upper: Cost::TOP,
            best: None,
            stats: HybStats::default(),
            observer: None,
        })
    }

    fn set_center(&mut self, row: usize, value: u64) {
        let l = &self.layout;
        self.centers[row] = value;
        self.visible[0][row] = value;
        self.visible[1][row] = reverse_bits(value, l.center) & 3;
    }

    /// `g_{n+1} = f_n` restricted to the assigned centres of rows `n-1, n`.
    fn fill_base(&mut self, side: usize) {
        let (n, m, lat, width) = (self.n, self.layout.lateral, self.lat, self.width[side]);
        let lm = row_mask(m);
        let vis = &self.visible[side];
        let mut scan = TripleScan::window(width, RowKind::Bottom);
        scan.fix_columns(m, width - m, vis[n - 1], vis[n], 0);
        let table = &mut self.g[n + 1][side];
        table.fill(TOP);
        scan.for_each(|a, b, _| {
            table[(a & lm) as usize * lat + (b & lm) as usize] = window_dead(width, b);
        });
    }

    /// `g_{i+2}(a, b) = min_v f_{i+1}(a, b, v) + g_{i+3}(b, v)` for one side.
    /// Returns the table minimum.
    fn fill_level(&mut self, side: usize, i: usize) -> u16 {
        if let Some(lists) = self.lists[side] {
            return self.fill_level_listed(lists, side, i);
        }
        let (n, m, lat, width) = (self.n, self.layout.lateral, self.lat, self.width[side]);
        let lm = row_mask(m);
        let vis = &self.visible[side];
        let mut scan = TripleScan::window(width, RowKind::of(i + 1, n));
        scan.fix_columns(m, width - m, vis[i], vis[i + 1], vis[i + 2]);
        let (lo, hi) = self.g.split_at_mut(i + 3);
        let table = &mut lo[i + 2][side];
        let next = &hi[0][side];
        table.fill(TOP);
        let mut best = TOP;
        scan.for_each(|a, b, v| {
            let (b_lat, v_lat) = ((b & lm) as usize, (v & lm) as usize);
            let tail = next[b_lat * lat + v_lat];
            if tail == TOP {
                return;
            }
            let cand = tail + window_dead(width, b);
            let slot = &mut table[(a & lm) as usize * lat + b_lat];
            if cand < *slot {
                *slot = cand;
                best = best.min(cand);
            }
        });
        best
    }

    fn fill_level_listed(&mut self, lists: &TripleLists, side: usize, i: usize) -> u16 {
        let (m, lat) = (self.layout.lateral, self.lat);
        let lm = row_mask(m) as u32;
        let vis = &self.visible[side];
        let list = lists.get(vis[i], vis[i + 1], vis[i + 2]);
        let (lo, hi) = self.g.split_at_mut(i + 3);
        let table = &mut lo[i + 2][side];
        let next = &hi[0][side];
        table.fill(TOP);
        let mut best = TOP;
        for &e in list {
            let (a, b, v) = (
                (e & lm) as usize,
                (e >> m & lm) as usize,
                (e >> (2 * m) & lm) as usize,
            );
            let tail = next[b * lat + v];
            if tail == TOP {
                continue;
            }
            let cand = tail + (e >> (3 * m)) as u16;
            let slot = &mut table[a * lat + b];
            if cand < *slot {
                *slot = cand;
                best = best.min(cand);
            }
        }
        best
    }

    /// Exact best completion of one side once row 1's centre is fixed:
    /// `min_{a,b} f_1(a, b) + g_3(a, b)` with its lowest argmin.
    fn terminal(&self, side: usize) -> (Cost, usize) {
        let (m, lat, width) = (self.layout.lateral, self.lat, self.width[side]);
        let lm = row_mask(m);
        let vis = &self.visible[side];
        let mut scan = TripleScan::window(width, RowKind::of(1, self.n));
        scan.fix_columns(m, width - m, 0, vis[1], vis[2]);
        let g3 = &self.g[3][side];
        let mut best = (TOP, usize::MAX);
        scan.for_each(|_, a, b| {
            let idx = (a & lm) as usize * lat + (b & lm) as usize;
            let tail = g3[idx];
            if tail == TOP {
                return;
            }
            let cand = (tail + window_dead(width, a), idx);
            if cand < best {
                best = cand;
            }
        });
        (mb::to_cost(best.0), best.1)
    }

    /// Per-side lower bound at level `i` (after `g_{i+2}` is built).
    fn side_bound(&self, side: usize, i: usize, with_h: bool) -> Cost {
        let table = &self.g[i + 2][side];
        let h = match (with_h, self.h[side]) {
            (true, Some(h)) if i >= 2 => h,
            _ => return mb::to_cost(table.iter().copied().min().unwrap_or(TOP)),
        };
        let (m, lat) = (self.layout.lateral, self.lat);
        let vis = &self.visible[side];
        let hs = h.side();
        let ht = h.table(i - 1);
        let (ca, cb) = ((vis[i] as usize) << m, (vis[i + 1] as usize) << m);
        let mut best = u32::MAX;
        for a in 0..lat {
            let row = &table[a * lat..(a + 1) * lat];
            let hrow = &ht[(a | ca) * hs..];
            for (b, &g) in row.iter().enumerate() {
                if g == TOP {
                    continue;
                }
                let hv = hrow[b | cb];
                if hv == TOP {
                    continue;
                }
                best = best.min(u32::from(g) + u32::from(hv));
            }
        }
        if best == u32::MAX {
            Cost::TOP
        } else {
            Cost::new(best)
        }
    }

    fn search(&mut self, i: usize, tied: bool) {
        let n = self.n;
        for value in 0..1u64 << self.layout.center {
            self.set_center(i, value);
            self.stats.nodes += 1;
            let mut still_tied = false;
            if tied && self.opts.use_symmetry {
                let mirrored = reverse_bits(value, self.layout.center);
                if value > mirrored {
                    self.stats.symmetry_prunes += 1;
                    continue;
                }
                still_tied = value == mirrored;
            }
            if i == n {
                self.search(i - 1, still_tied);
                continue;
            }

            if i == n - 1 {
                self.fill_base(0);
                self.fill_base(1);
            } else if self.fill_level(0, i) == TOP || self.fill_level(1, i) == TOP {
                self.stats.bound_prunes += 1;
                continue;
            }

            if i == 1 {
                self.leaf();
                continue;
            }

            let use_h = self.opts.use_mb_lb;
            let bound = self.side_bound(0, i, use_h) + self.side_bound(1, i, use_h);
            if self.observer.is_some() {
                let plain = self.side_bound(0, i, false) + self.side_bound(1, i, false);
                let with_h = self.side_bound(0, i, true) + self.side_bound(1, i, true);
                let view = NodeView {
                    n,
                    layout: self.layout,
                    level: i,
                    centers: &self.centers,
                    g: [&self.g[i + 2][0], &self.g[i + 2][1]],
                    lower_bound_mb: with_h,
                    lower_bound_plain: plain,
                    leaf: None,
                };
                if let Some(obs) = self.observer.as_mut() {
                    obs(&view);
                }
            }
            if bound >= self.upper {
                self.stats.bound_prunes += 1;
                continue;
            }
            self.search(i - 1, still_tied);
        }
    }

    fn leaf(&mut self) {
        self.stats.leaves += 1;
        let (left, li) = self.terminal(0);
        let (right, ri) = self.terminal(1);
        let total = left + right;
        if let Some(obs) = self.observer.as_mut() {
            let plain = mb::to_cost(self.g[3][0].iter().copied().min().unwrap_or(TOP))
                + mb::to_cost(self.g[3][1].iter().copied().min().unwrap_or(TOP));
            obs(&NodeView {
                n: self.n,
                layout: self.layout,
                level: 1,
                centers: &self.centers,
                g: [&self.g[3][0], &self.g[3][1]],
                lower_bound_mb: total,
                lower_bound_plain: plain,
                leaf: Some(total),
            });
        }
        if total < self.upper {
            self.upper = total;
            self.stats.improvements += 1;
            self.best = Some(self.reconstruct(li, ri));
        }
    }

    /// Lateral words of one side, rows `1..=n`, walking the `g` tables down
    /// from the terminal argmin with lowest-value tie-breaking.
    fn lateral_rows(&self, side: usize, first: usize) -> Vec<u64> {
        let (n, m, lat, width) = (self.n, self.layout.lateral, self.lat, self.width[side]);
        let vis = &self.visible[side];
        let win = |lateral: u64, row: usize| lateral | (vis[row] << m);
        let f =
            |row: usize, a: u64, b: u64, c: u64| row_cost_in(row, a, b, c, n, row_mask(width - 1));
        let mut rows = alloc::vec![0u64; n + 1];
        rows[1] = (first / lat) as u64;
        rows[2] = (first % lat) as u64;
        for k in 3..=n {
            let (a, b) = (rows[k - 2], rows[k - 1]);
            let target = mb::to_cost(self.g[k][side][a as usize * lat + b as usize]);
            let v = (0..lat as u64)
                .find(|&v| {
                    let step = f(k - 1, win(a, k - 2), win(b, k - 1), win(v, k));
                    step + mb::to_cost(self.g[k + 1][side][b as usize * lat + v as usize]) == target
                })
                .expect("g tables are consistent");
            rows[k] = v;
        }
        rows
    }

    fn reconstruct(&self, left_first: usize, right_first: usize) -> Pattern {
        let l = self.layout;
        let left = self.lateral_rows(0, left_first);
        let right = self.lateral_rows(1, right_first);
        let words = (1..=self.n)
            .map(|r| {
                l.join(SplitRow {
                    left: left[r],
                    center: self.centers[r],
                    right: reverse_bits(right[r], l.lateral),
                })
            })
            .collect();
        Pattern::from_rows(self.n, words).expect("valid board")
    }
}

/// Per-side triple lists: the standard width, plus the wider left width when
/// `n` is odd. `None` when the packed entries would not fit.
fn triple_lists(n: usize) -> Result<Option<(TripleLists, Option<TripleLists>)>> {
    let m = SplitLayout::new(n)?.lateral;
    if !TripleLists::fits(m) {
        return Ok(None);
    }
    let right = TripleLists::build(m, m + 2);
    let left = if n % 2 == 1 {
        Some(TripleLists::build(m, m + 3))
    } else {
        None
    };
    Ok(Some((right, left)))
}

fn run<'o>(
    n: usize,
    opts: &SolveOptions,
    h: [Option<&HTables>; 2],
    observer: Option<&'o mut dyn FnMut(&NodeView<'_>)>,
) -> Result<HybSolution> {
    let built = triple_lists(n)?;
    let lists = match &built {
        Some((r, l)) => [Some(l.as_ref().unwrap_or(r)), Some(r)],
        None => [None, None],
    };
    let mut s = Search::new(n, *opts, h, lists)?;
    s.observer = observer;
    if opts.use_ssl_ub {
        let ssl = solve_ssl_be(n, opts.memory_budget)?;
        s.upper = ssl.optimum;
        s.best = Some(ssl.pattern);
    }
    let initial_upper_bound = s.upper;
    s.search(n, true);
    let pattern = s.best.ok_or(Error::BoardSize(n))?;
    Ok(HybSolution {
        optimum: s.upper,
        pattern,
        initial_upper_bound,
        stats: s.stats,
        memory_estimate: memory_estimate(n, opts),
    })
}

fn check_budget(n: usize, opts: &SolveOptions) -> Result<()> {
    let required = memory_estimate(n, opts);
    if required > opts.memory_budget {
        return Err(Error::MemoryBudget {
            required,
            budget: opts.memory_budget,
        });
    }
    Ok(())
}

/// Solves `SL(n)` with the hybrid algorithm. Boards below 4 rows are handed
/// to plain bucket elimination.
pub fn solve_sl_hyb(n: usize, opts: &SolveOptions) -> Result<HybSolution> {
    if n < 4 {
        let be = solve_sl_be(
            n,
            &BeOptions {
                count: false,
                memory_budget: opts.memory_budget,
            },
        )?;
        return Ok(HybSolution {
            optimum: be.optimum,
            pattern: be.pattern,
            initial_upper_bound: Cost::TOP,
            stats: HybStats::default(),
            memory_estimate: be.memory_estimate,
        });
    }
    if n > 40 {
        return Err(Error::BoardSize(n));
    }
    check_budget(n, opts)?;
    if !opts.use_mb_lb {
        return run(n, opts, [None, None], None);
    }
    let (right, left) = look_ahead(n, opts.memory_budget)?;
    run(
        n,
        opts,
        [Some(left.as_ref().unwrap_or(&right)), Some(&right)],
        None,
    )
}

/// The standard tables, plus the wider left tables when `n` is odd.
fn look_ahead(n: usize, budget: u64) -> Result<(HTables, Option<HTables>)> {
    let right = HTables::compute(n, budget)?;
    let left = if n % 2 == 1 {
        Some(HTables::with_middle(n, budget)?)
    } else {
        None
    };
    Ok((right, left))
}

/// Like [`solve_sl_hyb`], calling `observer` at every internal node after
/// its elimination. The look-ahead tables are always built so both bounds
/// can be reported; `opts.use_mb_lb` still decides which one prunes.
pub fn solve_sl_hyb_observed(
    n: usize,
    opts: &SolveOptions,
    observer: &mut dyn FnMut(&NodeView<'_>),
) -> Result<HybSolution> {
    if !(4..=40).contains(&n) {
        return Err(Error::BoardSize(n));
    }
    check_budget(
        n,
        &SolveOptions {
            use_mb_lb: true,
            ..*opts
        },
    )?;
    let (right, left) = look_ahead(n, opts.memory_budget)?;
    run(
        n,
        opts,
        [Some(left.as_ref().unwrap_or(&right)), Some(&right)],
        Some(observer),
    )
}
