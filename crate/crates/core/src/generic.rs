//! Branch and bound with on-the-fly variable elimination for arbitrary
//! WCSPs, and the Max-SAT to WCSP mapping.
//!
//! At every node, variables of degree at most `degree_bound` in the
//! constraint graph are eliminated (lowest id first), so the functions they
//! leave behind have arity at most `degree_bound`. When every remaining
//! variable has a larger degree, the one with the highest degree is
//! branched on.

use alloc::vec::Vec;

use crate::costs::{CostTable, Domain, PartialAssignment, VarId, WcspInstance};
use crate::{Cost, Error, Result};

/// A disjunction of literals `(variable, positive)`, with each variable at
/// most once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Clause(Vec<(VarId, bool)>);

impl Clause {
    /// Normalises a literal list: repeated literals are merged and
    /// tautologies (`x ∨ ¬x`) give `None`.
    pub fn new(literals: impl IntoIterator<Item = (VarId, bool)>) -> Result<Option<Clause>> {
        let mut out: Vec<(VarId, bool)> = Vec::new();
        for (x, pos) in literals {
            match out.iter().find(|(y, _)| *y == x) {
                Some(&(_, p)) if p == pos => {}
                Some(_) => return Ok(None),
                None => out.push((x, pos)),
            }
        }
        if out.is_empty() {
            return Err(Error::NotAPartition);
        }
        Ok(Some(Clause(out)))
    }

    pub fn literals(&self) -> &[(VarId, bool)] {
        &self.0
    }

    /// Whether the clause holds when `value_of(x)` gives each variable's
    /// truth value.
    pub fn satisfied_by(&self, mut value_of: impl FnMut(VarId) -> bool) -> bool {
        self.0.iter().any(|&(x, pos)| value_of(x) == pos)
    }
}

/// One boolean variable `x_k` (value 1 = true) per `k = 1..=vars` and, per
/// clause, a table costing 1 on the single assignment that falsifies it.
pub fn maxsat_to_wcsp(clauses: &[Clause], vars: u32) -> Result<WcspInstance> {
    let variables = (1..=vars).map(|k| (VarId(k), Domain(2))).collect();
    let functions = clauses
        .iter()
        .map(|c| {
            let scope: Vec<VarId> = c.0.iter().map(|&(x, _)| x).collect();
            let dims = alloc::vec![2; scope.len()];
            CostTable::from_fn(scope, dims, |t| {
                let falsified = c.0.iter().zip(t).all(|(&(_, pos), &v)| (v == 1) != pos);
                Cost::new(u32::from(falsified))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    WcspInstance::new(variables, functions)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GenericStats {
    /// Nodes where a variable was branched on.
    pub branchings: u64,
    /// Leaves reached (no variable left).
    pub leaves: u64,
    pub eliminations: u64,
    pub prunes: u64,
    /// Distinct variables ever branched on, in first-use order.
    pub branch_variables: Vec<VarId>,
}

#[derive(Clone, Debug)]
pub struct GenericSolution {
    pub optimum: Cost,
    /// An optimal full assignment, `None` when every assignment costs top.
    pub assignment: Option<PartialAssignment>,
    pub stats: GenericStats,
}

/// What the search exposes at every node after its eliminations.
pub struct GenericNode<'a> {
    pub depth: usize,
    /// The remaining subproblem, constants included.
    pub instance: &'a WcspInstance,
    pub lower_bound: Cost,
}

enum Step {
    Assigned(VarId, usize),
    Eliminated(VarId, usize, Vec<CostTable>),
}

/// Distinct other variables sharing a scope with `x`.
fn degree(p: &WcspInstance, x: VarId) -> usize {
    let mut seen: Vec<VarId> = Vec::new();
    for f in p.functions().iter().filter(|f| f.mentions(x)) {
        for &y in f.scope() {
            if y != x && !seen.contains(&y) {
                seen.push(y);
            }
        }
    }
    seen.len()
}

/// Constants plus, per variable, the minimum of its summed unary functions.
pub fn unary_lower_bound(p: &WcspInstance) -> Cost {
    let mut lb = p.constant();
    for &(x, d) in p.variables() {
        let best = (0..d.size())
            .map(|v| {
                p.functions()
                    .iter()
                    .filter(|f| f.arity() == 1 && f.mentions(x))
                    .map(|f| f.get(&[v]))
                    .sum::<Cost>()
            })
            .min()
            .unwrap_or(Cost::ZERO);
        lb += best;
    }
    lb
}

/// `Σ_{f ∋ x} min_{t: t[x] = v} f(t)` for each value `v`.
fn projected_costs(p: &WcspInstance, x: VarId, size: usize) -> Result<Vec<Cost>> {
    let mut out = alloc::vec![Cost::ZERO; size];
    for f in p.functions().iter().filter(|f| f.mentions(x)) {
        let others: Vec<VarId> = f.scope().iter().copied().filter(|&y| y != x).collect();
        let unary = f.eliminate_all(&others)?;
        for (v, slot) in out.iter_mut().enumerate() {
            *slot += unary.get(&[v]);
        }
    }
    Ok(out)
}

struct Generic<'a> {
    degree_bound: usize,
    upper: Cost,
    best: Option<PartialAssignment>,
    trail: Vec<Step>,
    stats: GenericStats,
    observer: Option<&'a mut dyn FnMut(&GenericNode<'_>)>,
}

impl Generic<'_> {
    fn search(&mut self, mut p: WcspInstance, depth: usize) -> Result<()> {
        let mark = self.trail.len();
        loop {
            let next = p
                .variables()
                .iter()
                .map(|&(x, _)| x)
                .filter(|&x| degree(&p, x) <= self.degree_bound)
                .min();
            let Some(x) = next else { break };
            let size = p.domain(x).ok_or(Error::UnknownVariable(x))?;
            let bucket = p.bucket(x).into_iter().cloned().collect();
            self.trail.push(Step::Eliminated(x, size, bucket));
            p = p.eliminate_bucket(x)?;
            self.stats.eliminations += 1;
        }
        let result = self.branch(p, depth);
        self.trail.truncate(mark);
        result
    }

    fn branch(&mut self, p: WcspInstance, depth: usize) -> Result<()> {
        let lb = unary_lower_bound(&p);
        if let Some(obs) = self.observer.as_mut() {
            obs(&GenericNode {
                depth,
                instance: &p,
                lower_bound: lb,
            });
        }
        if lb >= self.upper {
            self.stats.prunes += 1;
            return Ok(());
        }
        if p.variables().is_empty() {
            self.stats.leaves += 1;
            let cost = p.constant();
            if cost < self.upper {
                self.upper = cost;
                self.best = Some(self.reconstruct());
            }
            return Ok(());
        }
        let (x, size) = p
            .variables()
            .iter()
            .map(|&(x, d)| (degree(&p, x), core::cmp::Reverse(x), d.size()))
            .max()
            .map(|(_, core::cmp::Reverse(x), s)| (x, s))
            .ok_or(Error::NotAPartition)?;
        self.stats.branchings += 1;
        if !self.stats.branch_variables.contains(&x) {
            self.stats.branch_variables.push(x);
        }
        let costs = projected_costs(&p, x, size)?;
        let mut order: Vec<usize> = (0..size).collect();
        order.sort_by_key(|&v| (costs[v], v));
        for v in order {
            self.trail.push(Step::Assigned(x, v));
            self.search(p.instantiate(x, v)?, depth + 1)?;
            self.trail.pop();
        }
        Ok(())
    }

    /// Assigns eliminated variables in reverse elimination order, each to
    /// the lowest value minimising its bucket.
    fn reconstruct(&self) -> PartialAssignment {
        let mut t: Vec<(VarId, usize)> = Vec::new();
        for step in self.trail.iter().rev() {
            match step {
                Step::Assigned(x, v) => t.push((*x, *v)),
                Step::Eliminated(x, size, bucket) => {
                    let cost_at = |v: usize| -> Cost {
                        bucket
                            .iter()
                            .map(|f| {
                                f.eval(|y| {
                                    if y == *x {
                                        Some(v)
                                    } else {
                                        t.iter().find(|(z, _)| *z == y).map(|&(_, a)| a)
                                    }
                                })
                            })
                            .sum()
                    };
                    let v = (0..*size).min_by_key(|&v| (cost_at(v), v)).unwrap_or(0);
                    t.push((*x, v));
                }
            }
        }
        t.into_iter().collect()
    }
}

fn run(
    p: &WcspInstance,
    degree_bound: usize,
    observer: Option<&mut dyn FnMut(&GenericNode<'_>)>,
) -> Result<GenericSolution> {
    let mut g = Generic {
        degree_bound,
        upper: Cost::TOP,
        best: None,
        trail: Vec::new(),
        stats: GenericStats::default(),
        observer,
    };
    g.search(p.clone(), 0)?;
    Ok(GenericSolution {
        optimum: g.upper,
        assignment: g.best,
        stats: g.stats,
    })
}

/// Exact optimum of `p` and one optimal assignment.
pub fn solve_generic(p: &WcspInstance, degree_bound: usize) -> Result<GenericSolution> {
    run(p, degree_bound, None)
}

/// Like [`solve_generic`], calling `observer` at every node.
pub fn solve_generic_observed(
    p: &WcspInstance,
    degree_bound: usize,
    observer: &mut dyn FnMut(&GenericNode<'_>),
) -> Result<GenericSolution> {
    run(p, degree_bound, Some(observer))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::costs::bucket_elimination;
    use crate::oracle::{brute_force_wcsp, WCSP_CAP};
    use alloc::vec;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn x(i: u32) -> VarId {
        VarId(i)
    }

    fn random_table(rng: &mut ChaCha8Rng, scope: Vec<VarId>, dom: usize) -> CostTable {
        let dims = vec![dom; scope.len()];
        CostTable::from_fn(scope, dims, |_| {
            if rng.gen_ratio(1, 10) {
                Cost::TOP
            } else {
                Cost::new(rng.gen_range(0..6))
            }
        })
        .unwrap()
    }

    fn random_instance(rng: &mut ChaCha8Rng, vars: u32) -> WcspInstance {
        let mut fs = Vec::new();
        for _ in 0..rng.gen_range(vars..2 * vars + 2) {
            let k = rng.gen_range(1..=3usize.min(vars as usize));
            let mut scope: Vec<VarId> = Vec::new();
            while scope.len() < k {
                let v = x(rng.gen_range(0..vars));
                if !scope.contains(&v) {
                    scope.push(v);
                }
            }
            fs.push(random_table(rng, scope, 2));
        }
        WcspInstance::new((0..vars).map(|i| (x(i), Domain(2))).collect(), fs).unwrap()
    }

    #[test]
    fn matches_brute_force_on_random_instances() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let vars = rng.gen_range(1..=10);
            let p = random_instance(&mut rng, vars);
            let (opt, _) = brute_force_wcsp(&p, WCSP_CAP).unwrap();
            for bound in 0..=3 {
                let s = solve_generic(&p, bound).unwrap();
                assert_eq!(s.optimum, opt);
                match s.assignment {
                    Some(t) => {
                        assert_eq!(t.len(), vars as usize);
                        assert_eq!(p.evaluate(&t), opt);
                    }
                    None => assert!(opt.is_top()),
                }
            }
        }
    }

    #[test]
    fn agrees_with_bucket_elimination() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..30 {
            let p = random_instance(&mut rng, 8);
            let order: Vec<VarId> = (0..8).map(x).collect();
            let be = bucket_elimination(&p, &order).unwrap();
            assert_eq!(solve_generic(&p, 2).unwrap().optimum, be.optimum);
        }
    }

    #[test]
    fn lower_bound_is_admissible_at_every_node() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..30 {
            let p = random_instance(&mut rng, 8);
            let mut bad = 0;
            let mut obs = |node: &GenericNode<'_>| {
                let (opt, _) = brute_force_wcsp(node.instance, WCSP_CAP).unwrap();
                if node.lower_bound > opt {
                    bad += 1;
                }
            };
            solve_generic_observed(&p, 2, &mut obs).unwrap();
            assert_eq!(bad, 0);
        }
    }

    /// Nine variables: the cycle 1-2-4-8-9-5-1, x3 adjacent to all of it,
    /// x6 adjacent to x1 and x3, and x7 adjacent to x6 and x3.
    #[test]
    fn one_branching_variable_on_the_nine_variable_graph() {
        let edges = [
            (1, 2),
            (2, 4),
            (4, 8),
            (8, 9),
            (9, 5),
            (5, 1),
            (3, 1),
            (3, 2),
            (3, 4),
            (3, 8),
            (3, 9),
            (3, 5),
            (6, 1),
            (6, 3),
            (7, 6),
            (7, 3),
        ];
        let d = 3;
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        let fs = edges
            .iter()
            .map(|&(a, b)| random_table(&mut rng, vec![x(a), x(b)], d))
            .collect();
        let p = WcspInstance::new((1..=9).map(|i| (x(i), Domain(d))).collect(), fs).unwrap();
        let s = solve_generic(&p, 2).unwrap();
        assert_eq!(s.stats.branch_variables, vec![x(3)]);
        assert_eq!(s.stats.branchings, 1);
        assert!(s.stats.leaves <= d as u64);
        assert_eq!(s.optimum, brute_force_wcsp(&p, WCSP_CAP).unwrap().0);
    }

    #[test]
    fn trees_need_no_branching() {
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        let fs = (1..10u32)
            .map(|k| {
                let parent = x(rng.gen_range(0..k));
                random_table(&mut rng, vec![parent, x(k)], 2)
            })
            .collect();
        let p = WcspInstance::new((0..10).map(|i| (x(i), Domain(2))).collect(), fs).unwrap();
        let s = solve_generic(&p, 2).unwrap();
        assert_eq!(s.stats.branchings, 0);
        assert_eq!(s.optimum, brute_force_wcsp(&p, WCSP_CAP).unwrap().0);
    }

    #[test]
    fn clauses_normalise() {
        assert_eq!(Clause::new([(x(1), true), (x(1), false)]).unwrap(), None);
        let c = Clause::new([(x(1), true), (x(2), false), (x(1), true)])
            .unwrap()
            .unwrap();
        assert_eq!(c.literals(), &[(x(1), true), (x(2), false)]);
        assert!(Clause::new([]).is_err());
    }

    #[test]
    fn contradictory_units_cost_one() {
        let cs = [
            Clause::new([(x(1), true)]).unwrap().unwrap(),
            Clause::new([(x(1), false)]).unwrap().unwrap(),
        ];
        let p = maxsat_to_wcsp(&cs, 1).unwrap();
        assert_eq!(solve_generic(&p, 2).unwrap().optimum, Cost::new(1));
    }

    #[test]
    fn random_3cnf_matches_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(16);
        for _ in 0..20 {
            let vars = rng.gen_range(3..=12u32);
            let mut cs = Vec::new();
            while cs.len() < rng.gen_range(5..40) {
                let lits: Vec<_> = (0..3)
                    .map(|_| (x(rng.gen_range(1..=vars)), rng.gen_bool(0.5)))
                    .collect();
                if let Some(c) = Clause::new(lits).unwrap() {
                    cs.push(c);
                }
            }
            let p = maxsat_to_wcsp(&cs, vars).unwrap();
            let want = (0..1u32 << vars)
                .map(|bits| {
                    cs.iter()
                        .filter(|c| !c.satisfied_by(|v| bits >> (v.0 - 1) & 1 == 1))
                        .count()
                })
                .min()
                .unwrap();
            let s = solve_generic(&p, 2).unwrap();
            assert_eq!(s.optimum, Cost::new(want as u32));
            let t = s.assignment.unwrap();
            let falsified = cs
                .iter()
                .filter(|c| !c.satisfied_by(|v| t.get(v) == Some(1)))
                .count();
            assert_eq!(falsified, want);
        }
    }
}
