//! Game-of-Life semantics for bounded still-lifes.
//!
//! Rows are machine words with bit `j - 1` holding column `j` (LSB is column
//! 1). Rows and columns are 1-based in the public API. Cells outside the
//! board are dead.
//!
//! A pattern is stable when every live cell has two or three live neighbours,
//! no dead cell has exactly three, and no boundary row or column contains
//! three consecutive live cells (those would give birth outside the board).
//! For the row cost functions each boundary triple is charged to its middle
//! cell: top and bottom triples to the row they lie in, column-1 and column-n
//! triples to the internal row at their centre.

use alloc::vec::Vec;

use crate::{Cost, Error, Result};

/// Widest supported board side.
pub const MAX_SIDE: usize = 64;

#[inline]
pub fn row_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Reverses the low `width` bits of `a`.
#[inline]
pub fn reverse_bits(a: u64, width: usize) -> u64 {
    if width == 0 {
        0
    } else {
        a.reverse_bits() >> (64 - width)
    }
}

/// A rectangular board of cells.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Pattern {
    rows: usize,
    cols: usize,
    bits: Vec<u64>,
}

impl Pattern {
    pub fn new(rows: usize, cols: usize) -> Result<Self> {
        if rows == 0 || cols == 0 || cols > MAX_SIDE {
            return Err(Error::BoardSize(cols.max(rows)));
        }
        Ok(Pattern {
            rows,
            cols,
            bits: alloc::vec![0; rows],
        })
    }

    /// An empty `n × n` board.
    pub fn square(n: usize) -> Result<Self> {
        Pattern::new(n, n)
    }

    /// Builds a board from row words (row 1 first).
    pub fn from_rows(cols: usize, rows: Vec<u64>) -> Result<Self> {
        let mut p = Pattern::new(rows.len(), cols)?;
        let mask = row_mask(cols);
        for (dst, src) in p.bits.iter_mut().zip(rows) {
            *dst = src & mask;
        }
        Ok(p)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Side length; only meaningful for square boards.
    pub fn side(&self) -> usize {
        self.rows
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row_words(&self) -> &[u64] {
        &self.bits
    }

    /// Row `i` (1-based); 0 outside the board.
    pub fn row(&self, i: usize) -> u64 {
        if i == 0 || i > self.rows {
            0
        } else {
            self.bits[i - 1]
        }
    }

    /// State of cell `(i, j)`; cells outside the board are dead.
    pub fn get(&self, i: isize, j: isize) -> bool {
        if i < 1 || j < 1 || i as usize > self.rows || j as usize > self.cols {
            return false;
        }
        (self.bits[i as usize - 1] >> (j - 1)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, alive: bool) {
        assert!((1..=self.rows).contains(&i) && (1..=self.cols).contains(&j));
        if alive {
            self.bits[i - 1] |= 1 << (j - 1);
        } else {
            self.bits[i - 1] &= !(1 << (j - 1));
        }
    }

    /// Replaces row `i` (1-based) with the low `cols` bits of `word`.
    pub fn set_row(&mut self, i: usize, word: u64) {
        self.bits[i - 1] = word & row_mask(self.cols);
    }

    pub fn live_count(&self) -> u32 {
        self.bits.iter().map(|r| r.count_ones()).sum()
    }

    pub fn dead_count(&self) -> u32 {
        (self.rows * self.cols) as u32 - self.live_count()
    }

    /// Whether `cell(i, j) = cell(i, n - j + 1)` everywhere.
    pub fn is_vertically_symmetric(&self) -> bool {
        self.bits.iter().all(|&r| reverse_bits(r, self.cols) == r)
    }
}

/// Number of live cells among the (up to eight) neighbours of `(i, j)`.
pub fn live_neighbors(p: &Pattern, i: usize, j: usize) -> u8 {
    let (i, j) = (i as isize, j as isize);
    let mut n = 0;
    for di in -1..=1 {
        for dj in -1..=1 {
            if (di, dj) != (0, 0) && p.get(i + di, j + dj) {
                n += 1;
            }
        }
    }
    n
}

/// Which of the three still-life conditions a cell breaks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Violation {
    /// A live cell without two or three live neighbours.
    Survival {
        row: usize,
        col: usize,
        neighbors: u8,
    },
    /// A dead cell with exactly three live neighbours.
    Birth { row: usize, col: usize },
    /// Three consecutive live cells along a boundary; `(row, col)` is the
    /// middle one.
    BoundaryTriple { side: Side, row: usize, col: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Top,
    Bottom,
    Left,
    Right,
}

/// Every violated condition, in row-major order of the offending cell and
/// then by condition.
pub fn violations(p: &Pattern) -> Vec<Violation> {
    let mut out = Vec::new();
    let (r, c) = (p.rows(), p.cols());
    for i in 1..=r {
        for j in 1..=c {
            let k = live_neighbors(p, i, j);
            let alive = p.get(i as isize, j as isize);
            if alive && !(k == 2 || k == 3) {
                out.push(Violation::Survival {
                    row: i,
                    col: j,
                    neighbors: k,
                });
            }
            if !alive && k == 3 {
                out.push(Violation::Birth { row: i, col: j });
            }
            let (ii, jj) = (i as isize, j as isize);
            let horizontal = p.get(ii, jj - 1) && alive && p.get(ii, jj + 1);
            let vertical = p.get(ii - 1, jj) && alive && p.get(ii + 1, jj);
            if horizontal && i == 1 {
                out.push(Violation::BoundaryTriple {
                    side: Side::Top,
                    row: i,
                    col: j,
                });
            }
            if horizontal && i == r {
                out.push(Violation::BoundaryTriple {
                    side: Side::Bottom,
                    row: i,
                    col: j,
                });
            }
            if vertical && j == 1 {
                out.push(Violation::BoundaryTriple {
                    side: Side::Left,
                    row: i,
                    col: j,
                });
            }
            if vertical && j == c {
                out.push(Violation::BoundaryTriple {
                    side: Side::Right,
                    row: i,
                    col: j,
                });
            }
        }
    }
    out
}

pub fn is_stable(p: &Pattern) -> bool {
    violations(p).is_empty()
}

/// Runs one generation on the board surrounded by a dead border and checks
/// that nothing changes.
pub fn stability_cross_check(p: &Pattern) -> bool {
    let (r, c) = (p.rows() as isize, p.cols() as isize);
    for i in 0..=r + 1 {
        for j in 0..=c + 1 {
            let mut k = 0;
            for di in -1..=1 {
                for dj in -1..=1 {
                    if (di, dj) != (0, 0) && p.get(i + di, j + dj) {
                        k += 1;
                    }
                }
            }
            let alive = p.get(i, j);
            let next = k == 3 || (alive && k == 2);
            if next != alive {
                return false;
            }
        }
    }
    true
}

/// Cost of cell `(i, j)`: top if it breaks a condition charged to it,
/// otherwise 1 when dead and 0 when alive.
pub fn cell_cost(p: &Pattern, i: usize, j: usize) -> Cost {
    let (ii, jj) = (i as isize, j as isize);
    let k = live_neighbors(p, i, j);
    let alive = p.get(ii, jj);
    let unstable = if alive { !(k == 2 || k == 3) } else { k == 3 };
    let horizontal = alive && p.get(ii, jj - 1) && p.get(ii, jj + 1);
    let vertical = alive && p.get(ii - 1, jj) && p.get(ii + 1, jj);
    let on_top_or_bottom = i == 1 || i == p.rows();
    let on_left_or_right = j == 1 || j == p.cols();
    if unstable || (horizontal && on_top_or_bottom) || (vertical && on_left_or_right) {
        Cost::TOP
    } else {
        Cost::new(u32::from(!alive))
    }
}

/// `Σ_ij cell_cost`: top iff unstable, otherwise the number of dead cells.
pub fn objective(p: &Pattern) -> Cost {
    let mut total = Cost::ZERO;
    for i in 1..=p.rows() {
        for j in 1..=p.cols() {
            total += cell_cost(p, i, j);
        }
    }
    total
}

/// Position of a row inside an `n`-row board, which decides the boundary
/// conditions its cost function carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowKind {
    /// Row 1 of a board with at least two rows.
    Top,
    Internal,
    /// Row `n` of a board with at least two rows.
    Bottom,
    /// The only row of a 1-row board.
    Single,
}

impl RowKind {
    pub fn of(i: usize, n: usize) -> RowKind {
        match (i == 1, i == n) {
            (true, true) => RowKind::Single,
            (true, false) => RowKind::Top,
            (false, true) => RowKind::Bottom,
            (false, false) => RowKind::Internal,
        }
    }

    pub fn has_above(self) -> bool {
        matches!(self, RowKind::Internal | RowKind::Bottom)
    }

    pub fn has_below(self) -> bool {
        matches!(self, RowKind::Internal | RowKind::Top)
    }

    /// Whether horizontal boundary triples inside this row are forbidden.
    pub fn horizontal_boundary(self) -> bool {
        !matches!(self, RowKind::Internal)
    }
}

/// Bit mask of the cells of row `i` whose cell cost is top, given the rows
/// above and below. Absent neighbour rows are ignored (treated as dead).
pub fn row_defects(i: usize, prev: u64, cur: u64, next: u64, n: usize) -> u64 {
    let kind = RowKind::of(i, n);
    let mask = row_mask(n);
    let a = if kind.has_above() { prev & mask } else { 0 };
    let c = if kind.has_below() { next & mask } else { 0 };
    let b = cur & mask;

    // Bit-sliced neighbour count s3 s2 s1 s0.
    let (mut s0, mut s1, mut s2, mut s3) = (0u64, 0u64, 0u64, 0u64);
    for x in [a << 1, a, a >> 1, b << 1, b >> 1, c << 1, c, c >> 1] {
        let x = x & mask;
        let c0 = s0 & x;
        s0 ^= x;
        let c1 = s1 & c0;
        s1 ^= c0;
        let c2 = s2 & c1;
        s2 ^= c1;
        s3 |= c2;
    }
    let low = s1 & !s2 & !s3;
    let three = low & s0;
    let two = low & !s0;
    let mut bad = ((b & !(two | three)) | (!b & three)) & mask;

    if kind.horizontal_boundary() {
        bad |= b & (b << 1) & (b >> 1) & mask;
    }
    if kind == RowKind::Internal {
        let col = a & b & c;
        bad |= col & 1;
        if n >= 1 {
            bad |= col & (1 << (n - 1));
        }
    }
    bad
}

/// `f_i(prev, cur, next)`: top if any cell of row `i` is unstable (including
/// the boundary triples charged to row `i`), otherwise the number of dead
/// cells of row `i`. `prev` is ignored for row 1 and `next` for row `n`.
pub fn row_cost(i: usize, prev: u64, cur: u64, next: u64, n: usize) -> Cost {
    if row_defects(i, prev, cur, next, n) != 0 {
        Cost::TOP
    } else {
        Cost::new(n as u32 - (cur & row_mask(n)).count_ones())
    }
}

/// Cost of the cells of row `i` restricted to the columns in `cols`.
pub fn row_cost_in(i: usize, prev: u64, cur: u64, next: u64, n: usize, cols: u64) -> Cost {
    if row_defects(i, prev, cur, next, n) & cols != 0 {
        Cost::TOP
    } else {
        Cost::new((!cur & cols & row_mask(n)).count_ones())
    }
}

/// Expands the `⌈n/2⌉`-bit half of a vertically symmetric row: the first
/// `⌊n/2⌋` bits are mirrored onto the right end.
pub fn expand_symmetric(half: u64, n: usize) -> u64 {
    let w = n.div_ceil(2);
    let half = half & row_mask(w);
    let mirrored = reverse_bits(half & row_mask(n / 2), n / 2);
    half | (mirrored << (n - n / 2))
}

/// Column layout of a row split into left lateral, central and right lateral
/// blocks.
///
/// For even `n` the centre is the two middle columns and each lateral block
/// has `n/2 - 1` columns. For odd `n` the centre is the three middle columns
/// and each lateral block has `(n - 3)/2` columns; the middle column then
/// belongs to neither side and its cells are costed on their own.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SplitLayout {
    pub n: usize,
    pub lateral: usize,
    pub center: usize,
}

impl SplitLayout {
    pub fn new(n: usize) -> Result<Self> {
        if !(2..=MAX_SIDE).contains(&n) {
            return Err(Error::BoardSize(n));
        }
        let center = if n.is_multiple_of(2) { 2 } else { 3 };
        Ok(SplitLayout {
            n,
            lateral: (n - center) / 2,
            center,
        })
    }

    /// Columns whose cells make up the left cost function (1..=lateral+1).
    pub fn left_cells(&self) -> u64 {
        row_mask(self.lateral + 1)
    }

    /// Columns whose cells make up the right cost function.
    pub fn right_cells(&self) -> u64 {
        reverse_bits(self.left_cells(), self.n)
    }

    /// The middle column for odd `n`, empty for even `n`.
    pub fn middle_cells(&self) -> u64 {
        row_mask(self.n) & !self.left_cells() & !self.right_cells()
    }

    pub fn split(&self, row: u64) -> SplitRow {
        let m = self.lateral;
        SplitRow {
            left: row & row_mask(m),
            center: (row >> m) & row_mask(self.center),
            right: (row >> (m + self.center)) & row_mask(m),
        }
    }

    pub fn join(&self, s: SplitRow) -> u64 {
        let m = self.lateral;
        s.left | (s.center << m) | (s.right << (m + self.center))
    }
}

/// A row as `(left, center, right)` words, each with its leftmost column in
/// the least significant bit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct SplitRow {
    pub left: u64,
    pub center: u64,
    pub right: u64,
}

/// `f_i^L`: cell costs of the left block plus the first central column.
pub fn split_row_cost_left(i: usize, rows: [SplitRow; 3], layout: &SplitLayout) -> Cost {
    let [p, c, d] = rows.map(|r| layout.join(r));
    row_cost_in(i, p, c, d, layout.n, layout.left_cells())
}

/// `f_i^R`: cell costs of the last central column plus the right block.
pub fn split_row_cost_right(i: usize, rows: [SplitRow; 3], layout: &SplitLayout) -> Cost {
    let [p, c, d] = rows.map(|r| layout.join(r));
    row_cost_in(i, p, c, d, layout.n, layout.right_cells())
}

/// Cost of the middle column for odd `n` (zero for even `n`); it depends
/// on central values only.
pub fn split_row_cost_middle(i: usize, rows: [SplitRow; 3], layout: &SplitLayout) -> Cost {
    let [p, c, d] = rows.map(|r| layout.join(r));
    row_cost_in(i, p, c, d, layout.n, layout.middle_cells())
}

/// The eight images of a square pattern under rotations and reflections:
/// identity, the three rotations, then the four reflections.
pub fn dihedral_images(p: &Pattern) -> [Pattern; 8] {
    let n = p.side();
    let map = |f: &dyn Fn(usize, usize) -> (usize, usize)| {
        let mut q = Pattern {
            rows: n,
            cols: n,
            bits: alloc::vec![0; n],
        };
        for i in 1..=n {
            for j in 1..=n {
                if p.get(i as isize, j as isize) {
                    let (a, b) = f(i, j);
                    q.set(a, b, true);
                }
            }
        }
        q
    };
    [
        p.clone(),
        map(&|i, j| (j, n + 1 - i)),
        map(&|i, j| (n + 1 - i, n + 1 - j)),
        map(&|i, j| (n + 1 - j, i)),
        map(&|i, j| (i, n + 1 - j)),
        map(&|i, j| (n + 1 - i, j)),
        map(&|i, j| (j, i)),
        map(&|i, j| (n + 1 - j, n + 1 - i)),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    /// `##.` / `#.#` / `.##`
    fn ship() -> Pattern {
        Pattern::from_rows(3, vec![0b011, 0b101, 0b110]).unwrap()
    }

    fn all_patterns(rows: usize, cols: usize) -> impl Iterator<Item = Pattern> {
        (0u64..1 << (rows * cols)).map(move |code| {
            let words = (0..rows)
                .map(|i| (code >> (i * cols)) & row_mask(cols))
                .collect();
            Pattern::from_rows(cols, words).unwrap()
        })
    }

    #[test]
    fn neighbor_counts() {
        let block = Pattern::from_rows(2, vec![0b11, 0b11]).unwrap();
        assert_eq!(live_neighbors(&block, 1, 1), 3);
        let empty = Pattern::square(4).unwrap();
        assert_eq!(live_neighbors(&empty, 2, 3), 0);
        assert_eq!(live_neighbors(&ship(), 2, 2), 6);
    }

    #[test]
    fn stability_examples() {
        assert!(is_stable(&ship()));
        assert_eq!(ship().live_count(), 6);
        assert!(is_stable(&Pattern::from_rows(2, vec![0b11, 0b11]).unwrap()));
        let triple = Pattern::from_rows(3, vec![0b111]).unwrap();
        assert!(!is_stable(&triple));
        assert!(violations(&triple).iter().any(|v| matches!(
            v,
            Violation::BoundaryTriple {
                side: Side::Top,
                row: 1,
                col: 2
            }
        )));
        let wide = Pattern::from_rows(3, vec![0b111, 0b111]).unwrap();
        assert!(!is_stable(&wide));
        assert!(!stability_cross_check(&wide));
        assert!(stability_cross_check(&Pattern::square(5).unwrap()));
    }

    #[test]
    fn cross_check_agrees_on_small_boards() {
        for (r, c) in [(1, 1), (1, 3), (2, 2), (2, 3), (3, 3), (3, 4)] {
            for p in all_patterns(r, c) {
                assert_eq!(is_stable(&p), stability_cross_check(&p), "{p:?}");
            }
        }
    }

    #[test]
    fn cell_costs() {
        let s = ship();
        assert_eq!(cell_cost(&s, 1, 1), Cost::ZERO);
        assert_eq!(cell_cost(&s, 1, 3), Cost::new(1));
        let mut crowded = Pattern::square(3).unwrap();
        for (i, j) in [(1, 1), (1, 2), (2, 2), (2, 1), (3, 3), (3, 2)] {
            crowded.set(i, j, true);
        }
        assert_eq!(live_neighbors(&crowded, 2, 2), 5);
        assert_eq!(cell_cost(&crowded, 2, 2), Cost::TOP);
    }

    #[test]
    fn objective_examples() {
        assert_eq!(objective(&ship()), Cost::new(3));
        assert_eq!(objective(&Pattern::square(4).unwrap()), Cost::new(16));
        let best = all_patterns(2, 2).map(|p| objective(&p)).min().unwrap();
        assert_eq!(best, Cost::ZERO);
    }

    #[test]
    fn objective_is_finite_iff_stable() {
        for p in all_patterns(3, 3) {
            let f = objective(&p);
            assert_eq!(f.is_finite(), is_stable(&p));
            if f.is_finite() {
                assert_eq!(f, Cost::new(p.dead_count()));
            }
        }
    }

    #[test]
    fn row_cost_examples() {
        assert_eq!(row_cost(1, 0, 0b11, 0b11, 2), Cost::ZERO);
        assert_eq!(row_cost(2, 0b11, 0b11, 0, 2), Cost::ZERO);
        assert_eq!(row_cost(2, 0, 0, 0, 5), Cost::new(5));
        assert_eq!(row_cost(2, 0b011, 0b101, 0b110, 3), Cost::new(1));
    }

    fn row_cost_by_cells(i: usize, rows: &[u64], n: usize) -> Cost {
        let p = Pattern::from_rows(n, rows.to_vec()).unwrap();
        (1..=n).map(|j| cell_cost(&p, i, j)).sum()
    }

    #[test]
    fn row_cost_is_sum_of_cell_costs() {
        for n in 1..=4usize {
            let full = 1u64 << n;
            // Each row kind, embedded in an n-row board made of the triple.
            for a in 0..full {
                for b in 0..full {
                    for c in 0..full {
                        let board: Vec<u64> = match n {
                            1 => vec![b],
                            2 => vec![a, b],
                            _ => {
                                let mut v = vec![0; n];
                                v[0] = a;
                                v[1] = b;
                                v[2] = c;
                                v
                            }
                        };
                        match n {
                            1 => {
                                assert_eq!(row_cost(1, 0, b, 0, 1), row_cost_by_cells(1, &board, 1))
                            }
                            2 => {
                                assert_eq!(
                                    row_cost(1, 0, a, b, 2),
                                    row_cost_by_cells(1, &board, 2)
                                );
                                assert_eq!(
                                    row_cost(2, a, b, 0, 2),
                                    row_cost_by_cells(2, &board, 2)
                                );
                            }
                            _ => {
                                assert_eq!(
                                    row_cost(2, a, b, c, n),
                                    row_cost_by_cells(2, &board, n)
                                );
                                assert_eq!(
                                    row_cost(1, 0, a, b, n),
                                    row_cost_by_cells(1, &board, n)
                                );
                                let tail: Vec<u64> = (0..n)
                                    .map(|k| if k + 3 >= n { [a, b, c][k + 3 - n] } else { 0 })
                                    .collect();
                                assert_eq!(row_cost(n, b, c, 0, n), row_cost_by_cells(n, &tail, n));
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn split_costs_recombine() {
        for n in [4usize, 5] {
            let layout = SplitLayout::new(n).unwrap();
            let full = 1u64 << n;
            for a in 0..full {
                for b in 0..full {
                    for c in 0..full {
                        let rows = [a, b, c].map(|r| layout.split(r));
                        for i in 1..=n {
                            let total = split_row_cost_left(i, rows, &layout)
                                + split_row_cost_middle(i, rows, &layout)
                                + split_row_cost_right(i, rows, &layout);
                            assert_eq!(total, row_cost(i, a, b, c, n));
                        }
                    }
                }
            }
        }
        let layout = SplitLayout::new(6).unwrap();
        let dead = [SplitRow::default(); 3];
        assert_eq!(split_row_cost_left(3, dead, &layout), Cost::new(3));
        assert_eq!(split_row_cost_middle(3, dead, &layout), Cost::ZERO);
    }

    #[test]
    fn split_left_matches_cell_sums() {
        // A 4x4 pond-like pattern: .##. / #..# / #..# / .##.
        let pond = Pattern::from_rows(4, vec![0b0110, 0b1001, 0b1001, 0b0110]).unwrap();
        assert!(is_stable(&pond));
        let layout = SplitLayout::new(4).unwrap();
        for i in 1..=4 {
            let rows = [pond.row(i - 1), pond.row(i), pond.row(i + 1)].map(|r| layout.split(r));
            let left: Cost = (1..=2).map(|j| cell_cost(&pond, i, j)).sum();
            let right: Cost = (3..=4).map(|j| cell_cost(&pond, i, j)).sum();
            assert_eq!(split_row_cost_left(i, rows, &layout), left);
            assert_eq!(split_row_cost_right(i, rows, &layout), right);
        }
    }

    #[test]
    fn dihedral_images_preserve_objective() {
        let s = ship();
        let images = dihedral_images(&s);
        assert_eq!(images[0], s);
        for q in &images {
            assert_eq!(objective(q), objective(&s));
        }
        let r180 = &images[2];
        assert_eq!(dihedral_images(r180)[2], s);
    }

    #[test]
    fn reverse_examples() {
        assert_eq!(reverse_bits(0b0011, 4), 0b1100);
        assert_eq!(reverse_bits(0b101, 3), 0b101);
    }

    proptest! {
        #[test]
        fn reverse_is_an_involution(a in any::<u64>(), w in 0usize..=64) {
            let a = a & row_mask(w);
            prop_assert_eq!(reverse_bits(reverse_bits(a, w), w), a);
        }

        #[test]
        fn split_round_trips(row in any::<u64>(), n in 2usize..=64) {
            let layout = SplitLayout::new(n).unwrap();
            let row = row & row_mask(n);
            prop_assert_eq!(layout.join(layout.split(row)), row);
        }

        #[test]
        fn symmetric_rows_are_palindromes(half in any::<u64>(), n in 1usize..=64) {
            let r = expand_symmetric(half, n);
            prop_assert_eq!(reverse_bits(r, n), r);
            prop_assert_eq!(r & row_mask(n.div_ceil(2)), half & row_mask(n.div_ceil(2)));
        }

        #[test]
        fn random_boards_agree(n in 4usize..=9, seed in any::<u64>()) {
            let mut s = seed;
            let rows = (0..n).map(|_| {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                s >> 11
            }).collect();
            let p = Pattern::from_rows(n, rows).unwrap();
            prop_assert_eq!(is_stable(&p), stability_cross_check(&p));
            let rows_total: Cost = (1..=n).map(|i| row_cost(i, p.row(i - 1), p.row(i), p.row(i + 1), n)).sum();
            prop_assert_eq!(rows_total, objective(&p));
            for q in dihedral_images(&p) {
                prop_assert_eq!(objective(&q), objective(&p));
            }
        }
    }
}
