use alloc::vec::Vec;

use super::{CostTable, Domain, VarId};
use crate::{Cost, Error, Result};

/// An ordered list of `(variable, value)` pairs without repeated variables.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PartialAssignment(Vec<(VarId, usize)>);

impl PartialAssignment {
    pub fn new() -> Self {
        PartialAssignment(Vec::new())
    }

    pub fn get(&self, x: VarId) -> Option<usize> {
        self.0.iter().find(|(v, _)| *v == x).map(|&(_, a)| a)
    }

    pub fn push(&mut self, x: VarId, value: usize) -> Result<()> {
        if self.get(x).is_some() {
            return Err(Error::DuplicateVariable(x));
        }
        self.0.push((x, value));
        Ok(())
    }

    pub fn pairs(&self) -> &[(VarId, usize)] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl FromIterator<(VarId, usize)> for PartialAssignment {
    fn from_iter<I: IntoIterator<Item = (VarId, usize)>>(iter: I) -> Self {
        PartialAssignment(iter.into_iter().collect())
    }
}

/// A weighted CSP: variables with finite domains and a list of cost
/// functions whose sum is the objective.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WcspInstance {
    variables: Vec<(VarId, Domain)>,
    functions: Vec<CostTable>,
}

impl WcspInstance {
    pub fn new(variables: Vec<(VarId, Domain)>, functions: Vec<CostTable>) -> Result<Self> {
        for (k, (v, d)) in variables.iter().enumerate() {
            if variables[..k].iter().any(|(w, _)| w == v) {
                return Err(Error::DuplicateVariable(*v));
            }
            if d.0 == 0 {
                return Err(Error::EmptyDomain(*v));
            }
        }
        let inst = WcspInstance {
            variables,
            functions,
        };
        for f in &inst.functions {
            for (&x, &d) in f.scope().iter().zip(f.dims()) {
                let size = inst.domain(x).ok_or(Error::UnknownVariable(x))?;
                if size != d {
                    return Err(Error::TableSize {
                        expected: size,
                        got: d,
                    });
                }
            }
        }
        Ok(inst)
    }

    pub fn variables(&self) -> &[(VarId, Domain)] {
        &self.variables
    }

    pub fn functions(&self) -> &[CostTable] {
        &self.functions
    }

    pub fn domain(&self, x: VarId) -> Option<usize> {
        self.variables
            .iter()
            .find(|(v, _)| *v == x)
            .map(|(_, d)| d.0)
    }

    fn require(&self, x: VarId) -> Result<usize> {
        self.domain(x).ok_or(Error::UnknownVariable(x))
    }

    /// Total number of full assignments, saturating.
    pub fn search_space(&self) -> u128 {
        self.variables
            .iter()
            .fold(1u128, |acc, (_, d)| acc.saturating_mul(d.0 as u128))
    }

    /// Objective value of a full assignment.
    pub fn evaluate(&self, t: &PartialAssignment) -> Cost {
        self.functions.iter().map(|f| f.eval(|x| t.get(x))).sum()
    }

    /// Sum of the empty-scope functions.
    pub fn constant(&self) -> Cost {
        self.functions
            .iter()
            .filter_map(CostTable::as_constant)
            .sum()
    }

    /// Functions mentioning `x`.
    pub fn bucket(&self, x: VarId) -> Vec<&CostTable> {
        self.functions.iter().filter(|f| f.mentions(x)).collect()
    }

    /// `P|x=v`: drops `x` and instantiates every function mentioning it.
    pub fn instantiate(&self, x: VarId, value: usize) -> Result<WcspInstance> {
        let size = self.require(x)?;
        if value >= size {
            return Err(Error::ValueOutOfRange {
                var: x,
                value,
                size,
            });
        }
        let functions = self
            .functions
            .iter()
            .map(|f| {
                if f.mentions(x) {
                    f.instantiate(x, value)
                } else {
                    Ok(f.clone())
                }
            })
            .collect::<Result<Vec<_>>>()?;
        let variables = self
            .variables
            .iter()
            .copied()
            .filter(|(v, _)| *v != x)
            .collect();
        Ok(WcspInstance {
            variables,
            functions,
        })
    }

    /// Replaces `x` and its bucket by `(Σ bucket) ⇓ x`.
    pub fn eliminate_bucket(&self, x: VarId) -> Result<WcspInstance> {
        self.eliminate_superbucket(&[x])
    }

    /// Replaces the variables `ys` and every function mentioning one of them
    /// by `(Σ bucket) ⇓ ys`.
    pub fn eliminate_superbucket(&self, ys: &[VarId]) -> Result<WcspInstance> {
        let dims = ys
            .iter()
            .map(|&y| self.require(y))
            .collect::<Result<Vec<_>>>()?;
        let mut acc = CostTable::zeros(ys.to_vec(), dims)?;
        let mut rest = Vec::with_capacity(self.functions.len() + 1);
        for f in &self.functions {
            if ys.iter().any(|&y| f.mentions(y)) {
                acc = acc.sum(f);
            } else {
                rest.push(f.clone());
            }
        }
        rest.push(acc.eliminate_all(ys)?);
        let variables = self
            .variables
            .iter()
            .copied()
            .filter(|(v, _)| !ys.contains(v))
            .collect();
        Ok(WcspInstance {
            variables,
            functions: rest,
        })
    }

    /// Merges `xs` into one meta-variable whose value is the mixed-radix
    /// encoding of the members (first member most significant). Functions
    /// touching the members are re-indexed onto it and those ending up on the
    /// same scope are summed. Returns the new instance and the meta id.
    pub fn cluster(&self, xs: &[VarId]) -> Result<(WcspInstance, VarId)> {
        if xs.is_empty() {
            return Err(Error::NotAPartition);
        }
        let sizes = xs
            .iter()
            .map(|&x| self.require(x))
            .collect::<Result<Vec<_>>>()?;
        for (k, x) in xs.iter().enumerate() {
            if xs[..k].contains(x) {
                return Err(Error::DuplicateVariable(*x));
            }
        }
        let meta = VarId(
            self.variables
                .iter()
                .map(|(v, _)| v.0 + 1)
                .max()
                .unwrap_or(0),
        );
        let meta_size: usize = sizes.iter().product();

        let mut untouched = Vec::new();
        let mut merged: Vec<CostTable> = Vec::new();
        for f in &self.functions {
            if !xs.iter().any(|&x| f.mentions(x)) {
                untouched.push(f.clone());
                continue;
            }
            let g = reindex_onto_meta(f, xs, &sizes, meta, meta_size)?;
            match merged
                .iter_mut()
                .find(|h| same_scope_set(h.scope(), g.scope()))
            {
                Some(h) => *h = h.sum(&g),
                None => merged.push(g),
            }
        }
        untouched.extend(merged);
        let mut variables: Vec<_> = self
            .variables
            .iter()
            .copied()
            .filter(|(v, _)| !xs.contains(v))
            .collect();
        variables.push((meta, Domain(meta_size)));
        Ok((
            WcspInstance {
                variables,
                functions: untouched,
            },
            meta,
        ))
    }
}

fn same_scope_set(a: &[VarId], b: &[VarId]) -> bool {
    a.len() == b.len() && a.iter().all(|v| b.contains(v))
}

fn reindex_onto_meta(
    f: &CostTable,
    xs: &[VarId],
    sizes: &[usize],
    meta: VarId,
    meta_size: usize,
) -> Result<CostTable> {
    let first = f.scope().iter().position(|v| xs.contains(v)).unwrap_or(0);
    let mut scope = Vec::new();
    let mut dims = Vec::new();
    for (k, (&v, &d)) in f.scope().iter().zip(f.dims()).enumerate() {
        if k == first {
            scope.push(meta);
            dims.push(meta_size);
        } else if !xs.contains(&v) {
            scope.push(v);
            dims.push(d);
        }
    }
    let meta_pos = scope.iter().position(|&v| v == meta).unwrap_or(0);
    let mut source = alloc::vec![0usize; f.arity()];
    CostTable::from_fn(scope.clone(), dims, |t| {
        let mut code = t[meta_pos];
        let mut parts = alloc::vec![0usize; xs.len()];
        for k in (0..xs.len()).rev() {
            parts[k] = code % sizes[k];
            code /= sizes[k];
        }
        for (k, v) in f.scope().iter().enumerate() {
            source[k] = match xs.iter().position(|x| x == v) {
                Some(m) => parts[m],
                None => t[scope.iter().position(|s| s == v).unwrap_or(0)],
            };
        }
        f.get(&source)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn x(i: u32) -> VarId {
        VarId(i)
    }

    /// f1(x1,x4) = x1 + x4, f2(x2,x3) = x2·x3, f3(x2,x4) = x2 + x4.
    fn example_two() -> WcspInstance {
        let f = |a, b, g: fn(usize, usize) -> usize| {
            CostTable::from_fn(vec![x(a), x(b)], vec![2, 2], |t| {
                Cost::new(g(t[0], t[1]) as u32)
            })
            .unwrap()
        };
        WcspInstance::new(
            (1..=4).map(|i| (x(i), Domain(2))).collect(),
            vec![
                f(1, 4, |a, b| a + b),
                f(2, 3, |a, b| a * b),
                f(2, 4, |a, b| a + b),
            ],
        )
        .unwrap()
    }

    #[test]
    fn instantiate_example_two() {
        let p = example_two().instantiate(x(4), 1).unwrap();
        assert_eq!(p.variables().len(), 3);
        let fs = p.functions();
        assert_eq!(fs.len(), 3);
        assert_eq!(fs[0].scope(), &[x(1)]);
        assert_eq!(fs[0].costs(), &[Cost::new(1), Cost::new(2)]);
        assert_eq!(fs[1].scope(), &[x(2), x(3)]);
        assert_eq!(fs[2].costs(), &[Cost::new(1), Cost::new(2)]);
    }

    #[test]
    fn instantiate_free_variable_only_shrinks() {
        let mut vars = example_two().variables().to_vec();
        vars.push((x(9), Domain(3)));
        let p = WcspInstance::new(vars, example_two().functions().to_vec()).unwrap();
        let q = p.instantiate(x(9), 2).unwrap();
        assert_eq!(q, example_two());
    }

    #[test]
    fn eliminate_example_two() {
        let p = example_two().eliminate_bucket(x(4)).unwrap();
        assert_eq!(p.functions().len(), 2);
        assert_eq!(p.functions()[0].scope(), &[x(2), x(3)]);
        let g4 = &p.functions()[1];
        assert_eq!(g4.scope(), &[x(1), x(2)]);
        for a in 0..2 {
            for b in 0..2 {
                assert_eq!(g4.get(&[a, b]), Cost::new((a + b) as u32));
            }
        }
    }

    #[test]
    fn eliminate_unconstrained_variable() {
        let p = WcspInstance::new(vec![(x(0), Domain(3))], vec![]).unwrap();
        let q = p.eliminate_bucket(x(0)).unwrap();
        assert!(q.variables().is_empty());
        assert_eq!(q.functions(), &[CostTable::constant(Cost::ZERO)]);
    }

    #[test]
    fn cluster_example_two() {
        let (p, c) = example_two().cluster(&[x(3), x(4)]).unwrap();
        assert_eq!(p.domain(c), Some(4));
        assert_eq!(p.functions().len(), 2);
        let f1 = &p.functions()[0];
        assert_eq!(f1.scope(), &[x(1), c]);
        let fc = &p.functions()[1];
        assert_eq!(fc.scope(), &[x(2), c]);
        for x2 in 0..2 {
            for m in 0..4 {
                let (c1, c2) = (m / 2, m % 2);
                assert_eq!(fc.get(&[x2, m]), Cost::new((x2 * c1 + x2 + c2) as u32));
            }
        }
        for x1 in 0..2 {
            for m in 0..4 {
                assert_eq!(f1.get(&[x1, m]), Cost::new((x1 + m % 2) as u32));
            }
        }
    }

    #[test]
    fn superbucket_is_cluster_then_eliminate() {
        let direct = example_two().eliminate_superbucket(&[x(3), x(4)]).unwrap();
        let (p, c) = example_two().cluster(&[x(3), x(4)]).unwrap();
        let via = p.eliminate_bucket(c).unwrap();
        assert_eq!(direct.variables(), via.variables());
        let g = direct.functions().last().unwrap();
        let h = via.functions().last().unwrap();
        assert_eq!(g.scope(), h.scope());
        assert_eq!(g.costs(), h.costs());
    }

    #[test]
    fn rejects_unknown_ids() {
        let p = example_two();
        assert!(p.eliminate_bucket(x(7)).is_err());
        assert!(p.cluster(&[x(7)]).is_err());
        assert!(p.instantiate(x(1), 5).is_err());
        let bad = CostTable::zeros(vec![x(8)], vec![2]).unwrap();
        assert!(WcspInstance::new(vec![(x(0), Domain(2))], vec![bad]).is_err());
    }
}
