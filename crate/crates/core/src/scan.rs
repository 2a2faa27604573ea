//! Column-by-column enumeration of row triples `(above, mid, below)` whose
//! middle row is locally stable.
//!
//! Every solver spends its time minimising over rows that keep some row
//! stable. Walking the columns left to right and checking each cell as soon
//! as its three columns are known visits only the stable triples (plus dead
//! ends), instead of all `2^{3w}` of them.

use crate::life::RowKind;

/// Column code: bit 0 = above, bit 1 = mid, bit 2 = below.
const ABOVE: u8 = 1;
const MID: u8 = 2;
const BELOW: u8 = 4;

const fn cell_table(forbid_triple: bool) -> [bool; 512] {
    let mut t = [false; 512];
    let mut idx = 0;
    while idx < 512 {
        let alive = (idx >> 4) & 1 == 1;
        let k = (idx as u32).count_ones() - alive as u32;
        let mut ok = if alive { k == 2 || k == 3 } else { k != 3 };
        if forbid_triple && (idx >> 1) & 1 == 1 && alive && (idx >> 7) & 1 == 1 {
            ok = false;
        }
        t[idx] = ok;
        idx += 1;
    }
    t
}

/// Stability of the centre cell of a 3×3 neighbourhood, indexed by
/// `left | centre << 3 | right << 6` column codes.
static CELL_OK: [bool; 512] = cell_table(false);
/// Same, additionally rejecting three live cells in the middle row.
static CELL_OK_EDGE: [bool; 512] = cell_table(true);

/// What lies to the right of the last enumerated column.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tail {
    /// The board edge: the next column is dead and the last column is a
    /// boundary column.
    Dead,
    /// The enumerated columns are the left half of a vertically symmetric
    /// row of length `2w` (`odd = false`) or `2w - 1` (`odd = true`).
    Mirror { odd: bool },
    /// A window: the last column is context only and its cells are not
    /// checked.
    Open,
}

/// Enumerator of stable row triples over `width` columns.
#[derive(Clone, Debug)]
pub struct TripleScan {
    width: usize,
    kind: RowKind,
    tail: Tail,
    reflect: bool,
    allowed: [u8; 64],
}

impl TripleScan {
    pub fn new(width: usize, kind: RowKind, tail: Tail) -> Self {
        assert!((1..=64).contains(&width));
        let mut mask = 0xffu8;
        if !kind.has_above() {
            mask &= !codes_with(ABOVE);
        }
        if !kind.has_below() {
            mask &= !codes_with(BELOW);
        }
        TripleScan {
            width,
            kind,
            tail,
            reflect: false,
            allowed: [mask; 64],
        }
    }

    /// Full rows of an `n`-column board.
    pub fn full(n: usize, kind: RowKind) -> Self {
        TripleScan::new(n, kind, Tail::Dead)
    }

    /// Full rows, emitted with the first enumerated column in the most
    /// significant bit. The set of stable full-row triples is closed under
    /// reflection, so this visits the same set in an order where the low
    /// bits change fastest. Fixed columns refer to enumeration order, so
    /// words passed to the `fix_*` methods must be reflected as well.
    pub fn full_reflected(n: usize, kind: RowKind) -> Self {
        let mut s = TripleScan::full(n, kind);
        s.reflect = true;
        s
    }

    /// Halves of vertically symmetric rows of an `n`-column board.
    pub fn symmetric(n: usize, kind: RowKind) -> Self {
        TripleScan::new(n.div_ceil(2), kind, Tail::Mirror { odd: n % 2 == 1 })
    }

    /// A left window of `width` columns, checking cells `1..width`.
    pub fn window(width: usize, kind: RowKind) -> Self {
        TripleScan::new(width, kind, Tail::Open)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    fn fix(&mut self, bit: u8, word: u64, from: usize, len: usize) -> &mut Self {
        for k in 0..len {
            let keep = if (word >> k) & 1 == 1 {
                codes_with(bit)
            } else {
                !codes_with(bit)
            };
            self.allowed[from + k] &= keep;
        }
        self
    }

    pub fn fix_above(&mut self, word: u64) -> &mut Self {
        self.fix(ABOVE, word, 0, self.width)
    }

    pub fn fix_mid(&mut self, word: u64) -> &mut Self {
        self.fix(MID, word, 0, self.width)
    }

    pub fn fix_below(&mut self, word: u64) -> &mut Self {
        self.fix(BELOW, word, 0, self.width)
    }

    /// Fixes columns `from..from + len` (0-based) of the three rows to the
    /// low bits of `above`, `mid` and `below`.
    pub fn fix_columns(
        &mut self,
        from: usize,
        len: usize,
        above: u64,
        mid: u64,
        below: u64,
    ) -> &mut Self {
        self.fix(ABOVE, above, from, len)
            .fix(MID, mid, from, len)
            .fix(BELOW, below, from, len)
    }

    /// Calls `visit(above, mid, below)` for every triple of `width`-bit words
    /// whose middle row is stable on the checked cells.
    pub fn for_each(&self, mut visit: impl FnMut(u64, u64, u64)) {
        let table = if self.kind.horizontal_boundary() {
            &CELL_OK_EDGE
        } else {
            &CELL_OK
        };
        let mut ctx = Ctx {
            scan: self,
            table,
            visit: &mut visit,
        };
        ctx.column(0, 0, 0, [0; 3]);
    }

    pub fn count(&self) -> u64 {
        let mut n = 0;
        self.for_each(|_, _, _| n += 1);
        n
    }
}

const fn codes_with(bit: u8) -> u8 {
    let mut m = 0u8;
    let mut c = 0;
    while c < 8 {
        if c & bit != 0 {
            m |= 1 << c;
        }
        c += 1;
    }
    m
}

struct Ctx<'a, F> {
    scan: &'a TripleScan,
    table: &'static [bool; 512],
    visit: &'a mut F,
}

impl<F: FnMut(u64, u64, u64)> Ctx<'_, F> {
    #[inline]
    fn column(&mut self, j: usize, prev2: u8, prev1: u8, words: [u64; 3]) {
        let s = self.scan;
        if j == s.width {
            self.finish(prev2, prev1, words);
            return;
        }
        let internal = s.kind == RowKind::Internal;
        let mut choices = s.allowed[j];
        while choices != 0 {
            let code = choices.trailing_zeros() as u8;
            choices &= choices - 1;
            if j == 0 && internal && code == 7 {
                continue;
            }
            if j >= 1 {
                let idx = prev2 as usize | (prev1 as usize) << 3 | (code as usize) << 6;
                if !self.table[idx] {
                    continue;
                }
            }
            let bit = if s.reflect { s.width - 1 - j } else { j };
            let w = [
                words[0] | (u64::from(code & ABOVE != 0) << bit),
                words[1] | (u64::from(code & MID != 0) << bit),
                words[2] | (u64::from(code & BELOW != 0) << bit),
            ];
            self.column(j + 1, prev1, code, w);
        }
    }

    #[inline]
    fn finish(&mut self, prev2: u8, prev1: u8, words: [u64; 3]) {
        let s = self.scan;
        let next = match s.tail {
            Tail::Open => None,
            Tail::Dead => {
                if s.kind == RowKind::Internal && prev1 == 7 {
                    return;
                }
                Some(0)
            }
            Tail::Mirror { odd } => Some(if odd { prev2 } else { prev1 }),
        };
        if let Some(next) = next {
            let idx = prev2 as usize | (prev1 as usize) << 3 | (next as usize) << 6;
            if !self.table[idx] {
                return;
            }
        }
        (self.visit)(words[0], words[1], words[2]);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::life::{expand_symmetric, row_cost, row_cost_in, row_mask, SplitLayout};
    use alloc::collections::BTreeSet;

    fn kinds(n: usize) -> alloc::vec::Vec<(usize, RowKind)> {
        let mut v = alloc::vec![(1, RowKind::of(1, n)), (n, RowKind::of(n, n))];
        if n >= 3 {
            v.push((2, RowKind::Internal));
        }
        v
    }

    #[test]
    fn full_scan_matches_row_cost() {
        for n in 1..=5usize {
            for (i, kind) in kinds(n) {
                let mut got = BTreeSet::new();
                TripleScan::full(n, kind).for_each(|a, b, c| {
                    assert!(got.insert((a, b, c)));
                });
                let mut want = BTreeSet::new();
                let top = 1u64 << n;
                for a in 0..top {
                    for b in 0..top {
                        for c in 0..top {
                            let a = if kind.has_above() { a } else { 0 };
                            let c = if kind.has_below() { c } else { 0 };
                            if row_cost(i, a, b, c, n).is_finite() {
                                want.insert((a, b, c));
                            }
                        }
                    }
                }
                assert_eq!(got, want, "n={n} kind={kind:?}");
            }
        }
    }

    #[test]
    fn symmetric_scan_matches_row_cost() {
        for n in 1..=8usize {
            let w = n.div_ceil(2);
            for (i, kind) in kinds(n) {
                let mut got = BTreeSet::new();
                TripleScan::symmetric(n, kind).for_each(|a, b, c| {
                    got.insert((a, b, c));
                });
                let mut want = BTreeSet::new();
                let top = 1u64 << w;
                for a in 0..top {
                    for b in 0..top {
                        for c in 0..top {
                            let a = if kind.has_above() { a } else { 0 };
                            let c = if kind.has_below() { c } else { 0 };
                            let [fa, fb, fc] = [a, b, c].map(|h| expand_symmetric(h, n));
                            if row_cost(i, fa, fb, fc, n).is_finite() {
                                want.insert((a, b, c));
                            }
                        }
                    }
                }
                assert_eq!(got, want, "n={n} kind={kind:?}");
            }
        }
    }

    #[test]
    fn window_scan_matches_left_cost() {
        for n in 4..=7usize {
            let layout = SplitLayout::new(n).unwrap();
            let w = layout.lateral + 2;
            for (i, kind) in kinds(n) {
                let mut got = BTreeSet::new();
                TripleScan::window(w, kind).for_each(|a, b, c| {
                    got.insert((a, b, c));
                });
                let mut want = BTreeSet::new();
                let top = 1u64 << w;
                for a in 0..top {
                    for b in 0..top {
                        for c in 0..top {
                            let a = if kind.has_above() { a } else { 0 };
                            let c = if kind.has_below() { c } else { 0 };
                            if row_cost_in(i, a, b, c, n, layout.left_cells()).is_finite() {
                                want.insert((a, b, c));
                            }
                        }
                    }
                }
                assert_eq!(got, want, "n={n} kind={kind:?}");
            }
        }
    }

    #[test]
    fn reflected_full_scan_visits_the_same_set() {
        for n in 1..=6usize {
            for (_, kind) in kinds(n) {
                let mut a = BTreeSet::new();
                TripleScan::full(n, kind).for_each(|x, y, z| {
                    a.insert((x, y, z));
                });
                let mut b = BTreeSet::new();
                TripleScan::full_reflected(n, kind).for_each(|x, y, z| {
                    b.insert((x, y, z));
                });
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn fixed_columns_filter() {
        let n = 5;
        let mut scan = TripleScan::full(n, RowKind::Internal);
        scan.fix_mid(0b01110 & row_mask(n));
        let mut all = 0;
        TripleScan::full(n, RowKind::Internal).for_each(|_, b, _| all += u64::from(b == 0b01110));
        assert_eq!(scan.count(), all);
        scan.for_each(|_, b, _| assert_eq!(b, 0b01110));
    }
}
