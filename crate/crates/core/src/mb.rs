//! Mini-bucket look-ahead tables for the hybrid solver.
//!
//! Each row is split into left, central and right blocks
//! ([`SplitLayout`]). Processing rows upward from row 1 and eliminating each
//! row's left block together with its central block, keeping left cost
//! functions only, gives
//!
//! ```text
//! h_0(w1, w2) = f_1^L(w1, w2)
//! h_i(u, v)   = min_w h_{i-1}(w, u) + f_{i+1}^L(w, u, v)     (1 ≤ i ≤ n-2)
//! ```
//!
//! where `w`, `u`, `v` are *left windows*: the lateral bits plus the central
//! columns the left cells can see. `h_i(u, v)` is a lower bound on the
//! left-side cost of rows `1..=i+1` when rows `i+1, i+2` have windows
//! `u, v`. Right tables are never built: by vertical reflection they are
//! the left tables read through bit reversal.
//!
//! A window of width `w` holds columns `1..=w` and its cost covers cells
//! `1..w`. The standard window sees two central columns. For odd `n` the
//! hybrid solver also uses a wider left window that sees all three central
//! columns and so covers the middle column too ([`HTables::with_middle`]).

use alloc::vec::Vec;

use crate::life::{reverse_bits, row_mask, RowKind, SplitLayout};
use crate::scan::TripleScan;
use crate::{Cost, Error, Result};

const TOP: u16 = u16::MAX;

#[inline]
pub(crate) fn to_cost(v: u16) -> Cost {
    if v == TOP {
        Cost::TOP
    } else {
        Cost::new(u32::from(v))
    }
}

/// Dead cells among the cells covered by a window of `width` columns.
#[inline]
pub(crate) fn window_dead(width: usize, w: u64) -> u16 {
    (width as u32 - 1 - (w & row_mask(width - 1)).count_ones()) as u16
}

/// The `h_i^L` tables for `i = 1..=n-2`.
#[derive(Clone, Debug)]
pub struct HTables {
    layout: SplitLayout,
    width: usize,
    side: usize,
    tables: Vec<Vec<u16>>,
}

fn table_bytes(n: usize, width: usize) -> u64 {
    let side = 1u64 << width;
    side * side * 2 * (n as u64).saturating_sub(1)
}

/// Bytes taken by the standard h tables of an `n` board.
pub fn memory_estimate(n: usize) -> u64 {
    match SplitLayout::new(n) {
        Ok(l) => table_bytes(n, l.lateral + 2),
        Err(_) => 0,
    }
}

/// Bytes taken by all look-ahead tables the hybrid solver builds for `n`.
pub fn memory_estimate_hyb(n: usize) -> u64 {
    match SplitLayout::new(n) {
        Ok(l) if l.center == 3 => table_bytes(n, l.lateral + 2) + table_bytes(n, l.lateral + 3),
        Ok(l) => table_bytes(n, l.lateral + 2),
        Err(_) => 0,
    }
}

impl HTables {
    /// The standard tables, over windows that see two central columns.
    pub fn compute(n: usize, memory_budget: u64) -> Result<HTables> {
        let layout = SplitLayout::new(n)?;
        Self::build(n, layout.lateral + 2, memory_budget)
    }

    /// Tables over windows that see the whole central block, so that for
    /// odd `n` the middle column is part of the left side.
    pub fn with_middle(n: usize, memory_budget: u64) -> Result<HTables> {
        let layout = SplitLayout::new(n)?;
        Self::build(n, layout.lateral + layout.center, memory_budget)
    }

    fn build(n: usize, width: usize, memory_budget: u64) -> Result<HTables> {
        if !(4..=40).contains(&n) {
            return Err(Error::BoardSize(n));
        }
        let layout = SplitLayout::new(n)?;
        let required = table_bytes(n, width);
        if required > memory_budget {
            return Err(Error::MemoryBudget {
                required,
                budget: memory_budget,
            });
        }
        let side = 1usize << width;

        let mut prev = alloc::vec![TOP; side * side];
        TripleScan::window(width, RowKind::Top).for_each(|_, w1, w2| {
            prev[w1 as usize * side + w2 as usize] = window_dead(width, w1);
        });
        let mut tables = Vec::with_capacity(n - 2);
        for i in 1..=n - 2 {
            let mut h = alloc::vec![TOP; side * side];
            TripleScan::window(width, RowKind::of(i + 1, n)).for_each(|w, u, v| {
                let below = prev[w as usize * side + u as usize];
                if below == TOP {
                    return;
                }
                let cand = below + window_dead(width, u);
                let slot = &mut h[u as usize * side + v as usize];
                if cand < *slot {
                    *slot = cand;
                }
            });
            tables.push(h);
            prev = tables.last().cloned().unwrap_or_default();
        }
        Ok(HTables {
            layout,
            width,
            side,
            tables,
        })
    }

    pub fn layout(&self) -> &SplitLayout {
        &self.layout
    }

    /// Window width in columns.
    pub fn width(&self) -> usize {
        self.width
    }

    /// `h_i` at two left windows (rows `i+1` and `i+2`).
    #[inline]
    pub fn window(&self, i: usize, u: u64, v: u64) -> Cost {
        to_cost(self.raw(i, u, v))
    }

    #[inline]
    pub(crate) fn raw(&self, i: usize, u: u64, v: u64) -> u16 {
        self.tables[i - 1][u as usize * self.side + v as usize]
    }

    /// Row `i`'s table as a flat `side × side` slice.
    pub(crate) fn table(&self, i: usize) -> &[u16] {
        &self.tables[i - 1]
    }

    pub(crate) fn side(&self) -> usize {
        self.side
    }

    /// Left window of a lateral word and a full central value.
    #[inline]
    pub fn left_window(&self, lateral: u64, center: u64) -> u64 {
        let m = self.layout.lateral;
        lateral | ((center & row_mask(self.width - m)) << m)
    }

    /// Left window of the mirror image of a right lateral word and a central
    /// value.
    #[inline]
    pub fn right_window(&self, lateral: u64, center: u64) -> u64 {
        let l = &self.layout;
        self.left_window(
            reverse_bits(lateral, l.lateral),
            reverse_bits(center, l.center),
        )
    }

    /// `h_i^L(a, a', b, b')` with lateral words `a, b` and central values
    /// `a', b'` of rows `i+1` and `i+2`.
    pub fn h_left(&self, i: usize, a: u64, a_c: u64, b: u64, b_c: u64) -> Cost {
        self.window(i, self.left_window(a, a_c), self.left_window(b, b_c))
    }

    /// `h_i^R(a', a, b', b)`: the right-side table, read as
    /// `h_i^L(ā, ā', b̄, b̄')` through bit reversal of the lateral words and of
    /// the central values.
    pub fn h_right(&self, i: usize, a_c: u64, a: u64, b_c: u64, b: u64) -> Cost {
        self.window(i, self.right_window(a, a_c), self.right_window(b, b_c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::life::row_cost_in;
    use crate::DEFAULT_MEMORY_BUDGET;

    /// Left cost of window triple, evaluated on zero-padded full rows.
    fn f_left(layout: &SplitLayout, row: usize, a: u64, b: u64, c: u64) -> Cost {
        row_cost_in(row, a, b, c, layout.n, layout.left_cells())
    }

    #[test]
    fn first_table_is_exact_two_row_minimum() {
        let n = 4;
        let h = HTables::compute(n, DEFAULT_MEMORY_BUDGET).unwrap();
        let l = *h.layout();
        let side = 1u64 << (l.lateral + 2);
        for u in 0..side {
            for v in 0..side {
                let want = (0..side)
                    .map(|w| f_left(&l, 1, 0, w, u) + f_left(&l, 2, w, u, v))
                    .min()
                    .unwrap();
                assert_eq!(h.window(1, u, v), want);
            }
        }
    }

    #[test]
    fn entries_are_bounded_by_all_dead() {
        for n in 4..=7 {
            let h = HTables::compute(n, DEFAULT_MEMORY_BUDGET).unwrap();
            let l = *h.layout();
            for i in 1..=n - 2 {
                let bound = ((i + 1) * (l.lateral + 1)) as u16;
                assert_eq!(h.width(), l.lateral + 2);
                assert!(h.table(i).iter().all(|&v| v == TOP || v <= bound));
            }
        }
    }

    #[test]
    fn right_view_of_palindromes() {
        let h = HTables::compute(6, DEFAULT_MEMORY_BUDGET).unwrap();
        // lateral width 2: 0b11 and 0b00 are palindromes; centers 0b00/0b11 too.
        for (a, ac, b, bc) in [
            (0b11, 0b11, 0, 0),
            (0, 0b11, 0b11, 0),
            (0b11, 0, 0b11, 0b11),
        ] {
            assert_eq!(h.h_right(2, ac, a, bc, b), h.h_left(2, a, ac, b, bc));
        }
    }

    #[test]
    fn locally_unstable_windows_are_top() {
        // Row i+1 = ###, row i+2 = ### on the left: cell 2 of row i+1 has five
        // live neighbours whatever row i holds.
        let h = HTables::compute(4, DEFAULT_MEMORY_BUDGET).unwrap();
        for i in 1..=2 {
            assert!(h.window(i, 0b111, 0b111).is_top());
        }
    }
}
