use alloc::vec::Vec;

use super::{walk, CostTable, PartialAssignment, VarId, WcspInstance};
use crate::{Cost, Error, Result};

/// Result of [`bucket_elimination`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BeOutcome {
    pub optimum: Cost,
    /// An optimal full assignment (lowest value on ties), in order.
    pub assignment: PartialAssignment,
    /// Number of full assignments attaining the optimum; 0 if infeasible.
    pub count: u128,
}

/// A cost table paired with, per tuple, the number of minimising
/// extensions it summarises. Counts are 0 exactly where the cost is top.
struct Counted {
    table: CostTable,
    counts: Vec<u128>,
}

impl Counted {
    fn leaf(table: CostTable) -> Self {
        let counts = table
            .costs()
            .iter()
            .map(|c| u128::from(c.is_finite()))
            .collect();
        Counted { table, counts }
    }

    fn sum(&self, other: &Counted) -> Result<Counted> {
        let table = self.table.sum(&other.table);
        let sa = self.table.strides_over(table.scope());
        let sb = other.table.strides_over(table.scope());
        let mut counts = Vec::with_capacity(table.costs().len());
        let mut overflow = false;
        walk(table.dims(), [&sa, &sb], |[i, j]| {
            let c = self.counts[i].checked_mul(other.counts[j]);
            overflow |= c.is_none();
            counts.push(c.unwrap_or(0));
        });
        if overflow {
            return Err(Error::CountOverflow);
        }
        Ok(Counted { table, counts })
    }

    fn eliminate(&self, x: VarId) -> Result<Counted> {
        let table = self.table.eliminate(x)?;
        let p = self.table.position(x).ok_or(Error::UnknownVariable(x))?;
        let sx = self.table.strides()[p];
        let dx = self.table.dims()[p];
        let strides = self.table.strides_over(table.scope());
        let src = self.table.costs();
        let mut counts = Vec::with_capacity(table.costs().len());
        let mut overflow = false;
        let mut k = 0;
        walk(table.dims(), [&strides], |[base]| {
            let best = table.costs()[k];
            k += 1;
            let mut n = 0u128;
            if best.is_finite() {
                for a in 0..dx {
                    if src[base + a * sx] == best {
                        match n.checked_add(self.counts[base + a * sx]) {
                            Some(v) => n = v,
                            None => overflow = true,
                        }
                    }
                }
            }
            counts.push(n);
        });
        if overflow {
            return Err(Error::CountOverflow);
        }
        Ok(Counted { table, counts })
    }
}

/// Two-phase bucket elimination along `order`.
///
/// Phase one eliminates the variables from last to first, keeping each
/// bucket's summed table; the product of the remaining constants is the
/// optimum. Phase two walks `order` forward choosing, for every variable, the
/// lowest value that attains its bucket minimum given the earlier choices.
pub fn bucket_elimination(p: &WcspInstance, order: &[VarId]) -> Result<BeOutcome> {
    let vars = p.variables();
    let is_perm = order.len() == vars.len()
        && order
            .iter()
            .enumerate()
            .all(|(k, v)| !order[..k].contains(v))
        && order.iter().all(|&v| p.domain(v).is_some());
    if !is_perm {
        return Err(Error::NotAPermutation);
    }

    let mut pool: Vec<Counted> = p.functions().iter().cloned().map(Counted::leaf).collect();
    let mut buckets: Vec<CostTable> = Vec::with_capacity(order.len());
    for &x in order.iter().rev() {
        let size = p.domain(x).ok_or(Error::UnknownVariable(x))?;
        let mut acc = Counted::leaf(CostTable::zeros(alloc::vec![x], alloc::vec![size])?);
        let mut k = 0;
        while k < pool.len() {
            if pool[k].table.mentions(x) {
                let f = pool.swap_remove(k);
                acc = acc.sum(&f)?;
            } else {
                k += 1;
            }
        }
        pool.push(acc.eliminate(x)?);
        buckets.push(acc.table);
    }
    buckets.reverse();

    let mut optimum = Cost::ZERO;
    let mut count = 1u128;
    for c in &pool {
        debug_assert!(c.table.scope().is_empty());
        optimum += c.table.costs()[0];
        count = count.checked_mul(c.counts[0]).ok_or(Error::CountOverflow)?;
    }
    if optimum.is_top() {
        count = 0;
    }

    let mut assignment = PartialAssignment::new();
    for (&x, bucket) in order.iter().zip(&buckets) {
        let size = p.domain(x).unwrap_or(1);
        let pos = bucket.position(x).ok_or(Error::UnknownVariable(x))?;
        let mut tuple: Vec<usize> = bucket
            .scope()
            .iter()
            .map(|&v| assignment.get(v).unwrap_or(0))
            .collect();
        let mut best = (Cost::TOP, 0);
        for a in 0..size {
            tuple[pos] = a;
            let c = bucket.get(&tuple);
            if c < best.0 {
                best = (c, a);
            }
        }
        assignment.push(x, best.1)?;
    }

    Ok(BeOutcome {
        optimum,
        assignment,
        count,
    })
}

/// Processes the parts of a partitioned bucket separately:
/// `g_j = (Σ_{f ∈ part j} f) ⇓ x`. The sum of the `g_j` is entrywise a lower
/// bound of the exact `(Σ bucket) ⇓ x`.
pub fn eliminate_minibuckets(
    bucket: &[CostTable],
    x: VarId,
    partition: &[Vec<usize>],
) -> Result<Vec<CostTable>> {
    let mut seen = alloc::vec![false; bucket.len()];
    for part in partition {
        if part.is_empty() {
            return Err(Error::NotAPartition);
        }
        for &k in part {
            if k >= bucket.len() || seen[k] {
                return Err(Error::NotAPartition);
            }
            seen[k] = true;
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(Error::NotAPartition);
    }
    let size = bucket
        .iter()
        .find_map(|f| f.position(x).map(|p| f.dims()[p]))
        .ok_or(Error::UnknownVariable(x))?;
    partition
        .iter()
        .map(|part| {
            let mut acc = CostTable::zeros(alloc::vec![x], alloc::vec![size])?;
            for &k in part {
                acc = acc.sum(&bucket[k]);
            }
            acc.eliminate(x)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::costs::Domain;
    use alloc::vec;

    fn x(i: u32) -> VarId {
        VarId(i)
    }

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
    fn example_two_optimum_is_zero() {
        let p = example_two();
        let out = bucket_elimination(&p, &[x(1), x(2), x(3), x(4)]).unwrap();
        assert_eq!(out.optimum, Cost::ZERO);
        // x1 = x2 = x4 = 0 forced, x3 free.
        assert_eq!(out.count, 2);
        assert_eq!(p.evaluate(&out.assignment), Cost::ZERO);
        let out = bucket_elimination(&p, &[x(4), x(2), x(3), x(1)]).unwrap();
        assert_eq!(out.optimum, Cost::ZERO);
        assert_eq!(out.count, 2);
    }

    #[test]
    fn infeasible_instance() {
        let f = CostTable::new(vec![x(0)], vec![2], vec![Cost::TOP; 2]).unwrap();
        let p = WcspInstance::new(vec![(x(0), Domain(2))], vec![f]).unwrap();
        let out = bucket_elimination(&p, &[x(0)]).unwrap();
        assert_eq!(out.optimum, Cost::TOP);
        assert_eq!(out.count, 0);
    }

    #[test]
    fn rejects_bad_order() {
        let p = example_two();
        assert_eq!(
            bucket_elimination(&p, &[x(1), x(2)]),
            Err(Error::NotAPermutation)
        );
        assert_eq!(
            bucket_elimination(&p, &[x(1), x(1), x(2), x(3)]),
            Err(Error::NotAPermutation)
        );
    }

    #[test]
    fn minibuckets_of_example_two() {
        let p = example_two();
        let bucket: Vec<CostTable> = p.bucket(x(4)).into_iter().cloned().collect();
        let whole = eliminate_minibuckets(&bucket, x(4), &[vec![0, 1]]).unwrap();
        let exact = p.eliminate_bucket(x(4)).unwrap();
        assert_eq!(&whole[0], exact.functions().last().unwrap());
        let parts = eliminate_minibuckets(&bucket, x(4), &[vec![0], vec![1]]).unwrap();
        let approx = parts[0].sum(&parts[1]);
        assert_eq!(approx.scope(), &[x(1), x(2)]);
        for a in 0..2 {
            for b in 0..2 {
                assert_eq!(approx.get(&[a, b]), Cost::new((a + b) as u32));
            }
        }
        assert_eq!(
            eliminate_minibuckets(&bucket, x(4), &[vec![0]]),
            Err(Error::NotAPartition)
        );
        assert_eq!(
            eliminate_minibuckets(&bucket, x(4), &[vec![0, 1], vec![1]]),
            Err(Error::NotAPartition)
        );
    }
}
