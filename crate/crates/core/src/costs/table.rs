use alloc::vec::Vec;

use super::{strides_of, walk, VarId};
use crate::{Cost, Error, Result};

/// An extensional cost function: an ordered scope and one cost per tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CostTable {
    scope: Vec<VarId>,
    dims: Vec<usize>,
    costs: Vec<Cost>,
}

type SplitOff = (usize, Vec<VarId>, Vec<usize>, Vec<usize>);

impl CostTable {
    pub fn new(scope: Vec<VarId>, dims: Vec<usize>, costs: Vec<Cost>) -> Result<Self> {
        if scope.len() != dims.len() {
            return Err(Error::TableSize {
                expected: dims.len(),
                got: scope.len(),
            });
        }
        for (k, v) in scope.iter().enumerate() {
            if scope[..k].contains(v) {
                return Err(Error::DuplicateVariable(*v));
            }
            if dims[k] == 0 {
                return Err(Error::EmptyDomain(*v));
            }
        }
        let expected: usize = dims.iter().product();
        if costs.len() != expected {
            return Err(Error::TableSize {
                expected,
                got: costs.len(),
            });
        }
        Ok(CostTable { scope, dims, costs })
    }

    /// Tabulates `f` over every tuple of the scope.
    pub fn from_fn(
        scope: Vec<VarId>,
        dims: Vec<usize>,
        mut f: impl FnMut(&[usize]) -> Cost,
    ) -> Result<Self> {
        let size: usize = dims.iter().product();
        let mut costs = Vec::with_capacity(size);
        let mut digits = alloc::vec![0usize; dims.len()];
        for _ in 0..size {
            costs.push(f(&digits));
            for k in (0..dims.len()).rev() {
                digits[k] += 1;
                if digits[k] < dims[k] {
                    break;
                }
                digits[k] = 0;
            }
        }
        CostTable::new(scope, dims, costs)
    }

    pub fn constant(cost: Cost) -> Self {
        CostTable {
            scope: Vec::new(),
            dims: Vec::new(),
            costs: alloc::vec![cost],
        }
    }

    pub fn zeros(scope: Vec<VarId>, dims: Vec<usize>) -> Result<Self> {
        let size = dims.iter().product();
        CostTable::new(scope, dims, alloc::vec![Cost::ZERO; size])
    }

    pub fn scope(&self) -> &[VarId] {
        &self.scope
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn costs(&self) -> &[Cost] {
        &self.costs
    }

    pub fn arity(&self) -> usize {
        self.scope.len()
    }

    pub fn mentions(&self, x: VarId) -> bool {
        self.scope.contains(&x)
    }

    pub fn position(&self, x: VarId) -> Option<usize> {
        self.scope.iter().position(|&v| v == x)
    }

    pub(crate) fn strides(&self) -> Vec<usize> {
        strides_of(&self.dims)
    }

    /// Linear index of a tuple given in scope order.
    pub fn index_of(&self, tuple: &[usize]) -> usize {
        debug_assert_eq!(tuple.len(), self.dims.len());
        tuple
            .iter()
            .zip(&self.dims)
            .fold(0, |acc, (&v, &d)| acc * d + v)
    }

    /// Cost of a tuple given in scope order.
    pub fn get(&self, tuple: &[usize]) -> Cost {
        self.costs[self.index_of(tuple)]
    }

    /// Cost under an assignment lookup. Panics if a scope variable is missing.
    pub fn eval(&self, mut value_of: impl FnMut(VarId) -> Option<usize>) -> Cost {
        let idx = self.scope.iter().zip(&self.dims).fold(0, |acc, (&x, &d)| {
            acc * d + value_of(x).expect("scope variable left unassigned")
        });
        self.costs[idx]
    }

    /// Constant value of an empty-scope table.
    pub fn as_constant(&self) -> Option<Cost> {
        if self.scope.is_empty() {
            Some(self.costs[0])
        } else {
            None
        }
    }

    pub fn min_entry(&self) -> Cost {
        self.costs.iter().copied().min().unwrap_or(Cost::TOP)
    }

    /// Union scope of `self` and `other`: `self`'s order first, then the
    /// new variables of `other` in their order.
    pub(crate) fn union_scope(&self, other: &CostTable) -> (Vec<VarId>, Vec<usize>) {
        let mut scope = self.scope.clone();
        let mut dims = self.dims.clone();
        for (&v, &d) in other.scope.iter().zip(&other.dims) {
            if !scope.contains(&v) {
                scope.push(v);
                dims.push(d);
            }
        }
        (scope, dims)
    }

    /// Strides of `self` expressed over the digits of another scope (zero
    /// for digits this table does not mention).
    pub(crate) fn strides_over(&self, scope: &[VarId]) -> Vec<usize> {
        let own = self.strides();
        scope
            .iter()
            .map(|v| self.position(*v).map_or(0, |p| own[p]))
            .collect()
    }

    /// `(self + other)(t) = self(t) + other(t)` over the union scope.
    pub fn sum(&self, other: &CostTable) -> CostTable {
        let (scope, dims) = self.union_scope(other);
        let sa = self.strides_over(&scope);
        let sb = other.strides_over(&scope);
        let mut costs = Vec::with_capacity(dims.iter().product());
        walk(&dims, [&sa, &sb], |[i, j]| {
            costs.push(self.costs[i] + other.costs[j])
        });
        CostTable { scope, dims, costs }
    }

    /// Position of `x`, and the scope, dims and strides without it.
    fn split_off(&self, x: VarId) -> Result<SplitOff> {
        let p = self.position(x).ok_or(Error::UnknownVariable(x))?;
        let mut scope = self.scope.clone();
        let mut dims = self.dims.clone();
        scope.remove(p);
        dims.remove(p);
        let strides = self.strides_over(&scope);
        Ok((p, scope, dims, strides))
    }

    /// `(self ⇓ x)(t) = min_a self(t · (x = a))`.
    pub fn eliminate(&self, x: VarId) -> Result<CostTable> {
        let (p, scope, dims, strides) = self.split_off(x)?;
        let sx = self.strides()[p];
        let dx = self.dims[p];
        let mut costs = Vec::with_capacity(dims.iter().product());
        walk(&dims, [&strides], |[base]| {
            let best = (0..dx)
                .map(|a| self.costs[base + a * sx])
                .min()
                .unwrap_or(Cost::TOP);
            costs.push(best);
        });
        Ok(CostTable { scope, dims, costs })
    }

    /// Eliminates every variable of `xs` at once.
    pub fn eliminate_all(&self, xs: &[VarId]) -> Result<CostTable> {
        let mut out = self.clone();
        for &x in xs {
            out = out.eliminate(x)?;
        }
        Ok(out)
    }

    /// `self` with `x` fixed to `value`.
    pub fn instantiate(&self, x: VarId, value: usize) -> Result<CostTable> {
        let (p, scope, dims, strides) = self.split_off(x)?;
        let size = self.dims[p];
        if value >= size {
            return Err(Error::ValueOutOfRange {
                var: x,
                value,
                size,
            });
        }
        let shift = self.strides()[p] * value;
        let mut costs = Vec::with_capacity(dims.iter().product());
        walk(&dims, [&strides], |[base]| {
            costs.push(self.costs[base + shift])
        });
        Ok(CostTable { scope, dims, costs })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn x(i: u32) -> VarId {
        VarId(i)
    }

    fn linear(a: u32, b: u32) -> CostTable {
        CostTable::from_fn(vec![x(a), x(b)], vec![2, 2], |t| {
            Cost::new((t[0] + t[1]) as u32)
        })
        .unwrap()
    }

    fn random_table(rng: &mut ChaCha8Rng, scope: &[u32]) -> CostTable {
        let dims = vec![2; scope.len()];
        CostTable::from_fn(scope.iter().map(|&v| x(v)).collect(), dims, |_| {
            if rng.gen_ratio(1, 8) {
                Cost::TOP
            } else {
                Cost::new(rng.gen_range(0..10))
            }
        })
        .unwrap()
    }

    #[test]
    fn sum_of_linear_functions() {
        let f1 = linear(1, 4);
        let f3 = linear(2, 4);
        let s = f1.sum(&f3);
        assert_eq!(s.scope(), &[x(1), x(4), x(2)]);
        assert_eq!(s.get(&[1, 1, 1]), Cost::new(4));
        assert_eq!(s.get(&[0, 0, 0]), Cost::ZERO);
    }

    #[test]
    fn sum_with_zero_is_identity() {
        let f = linear(1, 4);
        let z = CostTable::zeros(vec![x(1), x(4)], vec![2, 2]).unwrap();
        assert_eq!(f.sum(&z), f);
    }

    #[test]
    fn sum_matches_entrywise_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let f = random_table(&mut rng, &[0, 1, 2]);
            let g = random_table(&mut rng, &[2, 3, 1]);
            let s = f.sum(&g);
            assert_eq!(s.scope(), &[x(0), x(1), x(2), x(3)]);
            for t in 0..16usize {
                let v: Vec<usize> = (0..4).map(|k| (t >> (3 - k)) & 1).collect();
                let expect = f.get(&[v[0], v[1], v[2]]) + g.get(&[v[2], v[3], v[1]]);
                assert_eq!(s.get(&v), expect);
            }
        }
    }

    #[test]
    fn eliminate_gives_best_extension() {
        let s = linear(1, 4).sum(&linear(2, 4));
        let g = s.eliminate(x(4)).unwrap();
        assert_eq!(g.scope(), &[x(1), x(2)]);
        for a in 0..2 {
            for b in 0..2 {
                assert_eq!(g.get(&[a, b]), Cost::new((a + b) as u32));
            }
        }
        let top = CostTable::new(vec![x(0)], vec![3], vec![Cost::TOP; 3]).unwrap();
        assert_eq!(top.eliminate(x(0)).unwrap().as_constant(), Some(Cost::TOP));
        assert!(matches!(g.eliminate(x(9)), Err(Error::UnknownVariable(_))));
    }

    #[test]
    fn eliminate_matches_pairwise_min() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let f = random_table(&mut rng, &[0, 1, 2]);
            for (p, &v) in [0u32, 1, 2].iter().enumerate() {
                let g = f.eliminate(x(v)).unwrap();
                for t in 0..4usize {
                    let rest = [(t >> 1) & 1, t & 1];
                    let mut full0 = vec![rest[0], rest[1]];
                    full0.insert(p, 0);
                    let mut full1 = vec![rest[0], rest[1]];
                    full1.insert(p, 1);
                    assert_eq!(g.get(&rest), f.get(&full0).min(f.get(&full1)));
                }
            }
        }
    }

    #[test]
    fn elimination_commutes() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let f = random_table(&mut rng, &[0, 1, 2, 3]);
            let a = f.eliminate(x(1)).unwrap().eliminate(x(3)).unwrap();
            let b = f.eliminate(x(3)).unwrap().eliminate(x(1)).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn instantiate_fixes_a_value() {
        let f1 = linear(1, 4);
        let g = f1.instantiate(x(4), 1).unwrap();
        assert_eq!(g.scope(), &[x(1)]);
        assert_eq!(g.costs(), &[Cost::new(1), Cost::new(2)]);
        let z = CostTable::zeros(vec![x(0), x(1)], vec![2, 3]).unwrap();
        assert_eq!(
            z.instantiate(x(1), 2).unwrap(),
            CostTable::zeros(vec![x(0)], vec![2]).unwrap()
        );
        assert!(matches!(
            f1.instantiate(x(4), 2),
            Err(Error::ValueOutOfRange { .. })
        ));
        assert!(matches!(
            f1.instantiate(x(7), 0),
            Err(Error::UnknownVariable(_))
        ));
    }

    #[test]
    fn min_over_instantiations_is_elimination() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let f = random_table(&mut rng, &[0, 1, 2]);
            let direct = f.eliminate(x(1)).unwrap();
            let i0 = f.instantiate(x(1), 0).unwrap();
            let i1 = f.instantiate(x(1), 1).unwrap();
            let via: Vec<Cost> = i0
                .costs()
                .iter()
                .zip(i1.costs())
                .map(|(a, b)| *a.min(b))
                .collect();
            assert_eq!(direct.costs(), &via[..]);
        }
    }

    #[test]
    fn rejects_malformed_tables() {
        assert!(CostTable::new(vec![x(0)], vec![2], vec![Cost::ZERO; 3]).is_err());
        assert!(CostTable::new(vec![x(0), x(0)], vec![2, 2], vec![Cost::ZERO; 4]).is_err());
    }
}
