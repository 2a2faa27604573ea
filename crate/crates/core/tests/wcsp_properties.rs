use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stillife_core::costs::{
    bucket_elimination, eliminate_minibuckets, CostTable, Domain, PartialAssignment, VarId,
    WcspInstance,
};
use stillife_core::oracle::{brute_force_wcsp, WCSP_CAP};
use stillife_core::Cost;

fn random_instance(seed: u64) -> WcspInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vars = rng.gen_range(2..=6u32);
    let mut fs = Vec::new();
    for _ in 0..rng.gen_range(1..=8) {
        let k = rng.gen_range(1..=3usize.min(vars as usize));
        let mut scope: Vec<VarId> = Vec::new();
        while scope.len() < k {
            let v = VarId(rng.gen_range(0..vars));
            if !scope.contains(&v) {
                scope.push(v);
            }
        }
        let dims = vec![2; k];
        fs.push(
            CostTable::from_fn(scope, dims, |_| {
                if rng.gen_ratio(1, 12) {
                    Cost::TOP
                } else {
                    Cost::new(rng.gen_range(0..8))
                }
            })
            .unwrap(),
        );
    }
    WcspInstance::new((0..vars).map(|i| (VarId(i), Domain(2))).collect(), fs).unwrap()
}

fn opt(p: &WcspInstance) -> Cost {
    brute_force_wcsp(p, WCSP_CAP).unwrap().0
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn elimination_preserves_the_optimum(seed in any::<u64>(), pick in 0usize..6) {
        let p = random_instance(seed);
        let x = p.variables()[pick % p.variables().len()].0;
        prop_assert_eq!(opt(&p.eliminate_bucket(x).unwrap()), opt(&p));
    }

    #[test]
    fn branching_preserves_the_optimum(seed in any::<u64>(), pick in 0usize..6) {
        let p = random_instance(seed);
        let x = p.variables()[pick % p.variables().len()].0;
        let best = (0..2).map(|v| opt(&p.instantiate(x, v).unwrap())).min().unwrap();
        prop_assert_eq!(best, opt(&p));
    }

    #[test]
    fn clustering_preserves_the_optimum(seed in any::<u64>(), a in 0usize..6, b in 0usize..6) {
        let p = random_instance(seed);
        let vs = p.variables();
        let (x, y) = (vs[a % vs.len()].0, vs[b % vs.len()].0);
        let members = if x == y { vec![x] } else { vec![x, y] };
        let (q, _) = p.cluster(&members).unwrap();
        prop_assert_eq!(opt(&q), opt(&p));
    }

    #[test]
    fn superbucket_preserves_the_optimum(seed in any::<u64>(), a in 0usize..6, b in 0usize..6) {
        let p = random_instance(seed);
        let vs = p.variables();
        let (x, y) = (vs[a % vs.len()].0, vs[b % vs.len()].0);
        let ys = if x == y { vec![x] } else { vec![x, y] };
        prop_assert_eq!(opt(&p.eliminate_superbucket(&ys).unwrap()), opt(&p));
    }

    #[test]
    fn minibuckets_bound_the_exact_bucket(seed in any::<u64>(), split in any::<u32>()) {
        let p = random_instance(seed);
        let x = p.variables()[0].0;
        let bucket: Vec<CostTable> = p.bucket(x).into_iter().cloned().collect();
        prop_assume!(!bucket.is_empty());
        let mut parts: Vec<Vec<usize>> = vec![Vec::new(), Vec::new()];
        for k in 0..bucket.len() {
            parts[(split >> k) as usize & 1].push(k);
        }
        parts.retain(|part| !part.is_empty());
        let mini = eliminate_minibuckets(&bucket, x, &parts).unwrap();
        let exact = bucket.iter().fold(CostTable::constant(Cost::ZERO), |acc, f| acc.sum(f)).eliminate(x).unwrap();
        let approx = mini.iter().fold(CostTable::constant(Cost::ZERO), |acc, f| acc.sum(f));
        // Compare over the exact table's scope.
        let scope = exact.scope().to_vec();
        for (k, &want) in exact.costs().iter().enumerate() {
            let mut rest = k;
            let mut tuple = vec![0; scope.len()];
            for (slot, &d) in tuple.iter_mut().zip(exact.dims()).rev() {
                *slot = rest % d;
                rest /= d;
            }
            let got = approx.eval(|v| scope.iter().position(|&s| s == v).map(|i| tuple[i]));
            prop_assert!(got <= want);
        }
    }

    #[test]
    fn bucket_elimination_agrees_with_enumeration(seed in any::<u64>()) {
        let p = random_instance(seed);
        let order: Vec<VarId> = p.variables().iter().map(|&(x, _)| x).collect();
        let be = bucket_elimination(&p, &order).unwrap();
        let (best, count) = brute_force_wcsp(&p, WCSP_CAP).unwrap();
        prop_assert_eq!(be.optimum, best);
        prop_assert_eq!(be.count, count);
        if best.is_finite() {
            prop_assert_eq!(p.evaluate(&be.assignment), best);
        }
    }
}

#[test]
fn example_instance_optimum() {
    // f(x1, x2) = x1 + x2 and g(x2, x3) = x2 * x3 over {0, 1}.
    let x = |i| VarId(i);
    let f = CostTable::from_fn(vec![x(1), x(2)], vec![2, 2], |t| {
        Cost::new((t[0] + t[1]) as u32)
    })
    .unwrap();
    let g = CostTable::from_fn(vec![x(2), x(3)], vec![2, 2], |t| {
        Cost::new((t[0] * t[1]) as u32)
    })
    .unwrap();
    let p = WcspInstance::new((1..=3).map(|i| (x(i), Domain(2))).collect(), vec![f, g]).unwrap();
    assert_eq!(brute_force_wcsp(&p, WCSP_CAP).unwrap(), (Cost::ZERO, 2));
    let t: PartialAssignment = [(x(1), 0), (x(2), 0), (x(3), 1)].into_iter().collect();
    assert_eq!(p.evaluate(&t), Cost::ZERO);
}
