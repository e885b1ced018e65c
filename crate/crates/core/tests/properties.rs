use std::collections::{BTreeSet, HashSet};

use num_bigint::BigUint;
use num_rational::BigRational;
use proptest::prelude::*;

use derange_core::derangements::{coset_average_fixed_points, covering_via_derangements, is_normal_covering};
use derange_core::invariants::{v_p, vp_factorial};
use derange_core::{is_primitive, orbit, point_stabilizer, Permutation, PermGroup};

const CAP: usize = 100_000;

fn perm(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

fn group_on(max_n: usize) -> impl Strategy<Value = (usize, Vec<Vec<usize>>)> {
    (2usize..=max_n).prop_flat_map(|n| (Just(n), prop::collection::vec(perm(n), 1..=3)))
}

fn small_group() -> impl Strategy<Value = (usize, Vec<Vec<usize>>)> {
    group_on(7)
}

fn build(n: usize, gens: &[Vec<usize>]) -> PermGroup {
    PermGroup::new(n, gens.iter().map(|g| Permutation::from_images(g.clone()).unwrap()).collect())
        .unwrap()
}

/// Right-action product on raw image vectors.
fn mul(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().map(|&i| b[i]).collect()
}

/// Every element, by breadth-first closure under right multiplication.
fn closure(n: usize, gens: &[Vec<usize>]) -> HashSet<Vec<usize>> {
    let id: Vec<usize> = (0..n).collect();
    let mut seen = HashSet::from([id.clone()]);
    let mut frontier = vec![id];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = mul(&x, g);
            if seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    seen
}

fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    // restricted growth strings
    let mut out = Vec::new();
    let mut cur = vec![0usize; n];
    fn rec(i: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for b in 0..=max + 1 {
            cur[i] = b;
            rec(i + 1, max.max(b), cur, out);
        }
    }
    if n > 0 {
        rec(1, 0, &mut cur, &mut out);
    }
    out
}

/// Primitive iff the only invariant partitions are the trivial ones.
fn brute_primitive(n: usize, gens: &[Vec<usize>]) -> bool {
    set_partitions(n).into_iter().all(|labels| {
        let blocks = labels.iter().max().unwrap() + 1;
        if blocks == 1 || blocks == n {
            return true;
        }
        !gens.iter().all(|g| {
            (0..n).all(|i| (0..n).all(|j| labels[i] != labels[j] || labels[g[i]] == labels[g[j]]))
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn composition_matches_definition(n in 1usize..=64, seed in any::<u64>()) {
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
        let mut draw = || {
            let mut v: Vec<usize> = (0..n).collect();
            rand::seq::SliceRandom::shuffle(v.as_mut_slice(), &mut rng);
            v
        };
        let (a, b, c) = (draw(), draw(), draw());
        let (pa, pb, pc) = (
            Permutation::from_images(a.clone()).unwrap(),
            Permutation::from_images(b.clone()).unwrap(),
            Permutation::from_images(c.clone()).unwrap(),
        );
        let ab = pa.compose(&pb).unwrap();
        prop_assert_eq!(ab.images().collect::<Vec<_>>(), mul(&a, &b));
        prop_assert_eq!(ab.then(&pc), pa.then(&pb.then(&pc)));
        prop_assert!(pa.then(&pa.inverse()).is_identity());
        prop_assert!(pa.inverse().then(&pa).is_identity());
        let round = Permutation::parse_cycles(n, &pa.to_cycle_string()).unwrap();
        prop_assert_eq!(round, pa.clone());
        let conj = pa.conjugate_by(&pb);
        prop_assert_eq!(conj, pb.inverse().then(&pa).then(&pb));
    }

    #[test]
    fn order_and_membership_match_closure((n, gens) in small_group()) {
        let g = build(n, &gens);
        let brute = closure(n, &gens);
        prop_assert_eq!(g.order(), &BigUint::from(brute.len()));
        let listed: HashSet<Vec<usize>> =
            g.elements(CAP).unwrap().map(|p| p.images().collect()).collect();
        prop_assert_eq!(&listed, &brute);
        let product: usize = g.transversal_sizes().iter().product();
        prop_assert_eq!(product, brute.len());
    }

    #[test]
    fn membership_rejects_outsiders((n, gens) in small_group(), x in perm(7)) {
        let g = build(n, &gens);
        let x: Vec<usize> = x.into_iter().filter(|&i| i < n).collect();
        let brute = closure(n, &gens);
        let p = Permutation::from_images(x.clone()).unwrap();
        prop_assert_eq!(g.contains(&p), brute.contains(&x));
    }

    #[test]
    fn orbit_stabilizer((n, gens) in small_group(), point in 0usize..7) {
        let g = build(n, &gens);
        let point = point % n;
        let orb = orbit(&g, point).unwrap();
        let stab = point_stabilizer(&g, point).unwrap();
        prop_assert_eq!(BigUint::from(orb.len()) * stab.order(), g.order().clone());
        let brute = closure(n, &gens);
        let brute_orbit: BTreeSet<usize> = brute.iter().map(|x| x[point]).collect();
        prop_assert_eq!(orb.iter().copied().collect::<BTreeSet<_>>(), brute_orbit);
        let fixing = brute.iter().filter(|x| x[point] == point).count();
        prop_assert_eq!(stab.order(), &BigUint::from(fixing));
    }

    #[test]
    fn lagrange((n, gens) in small_group(), sub in 0usize..3) {
        let g = build(n, &gens);
        let x = &gens[sub % gens.len()];
        let h = g.subgroup(vec![Permutation::from_images(x.clone()).unwrap()]).unwrap();
        prop_assert!(h.is_subgroup_of(&g));
        prop_assert_eq!(g.order() % h.order(), BigUint::from(0u32));
    }

    #[test]
    fn primitivity_matches_block_search((n, gens) in small_group()) {
        let g = build(n, &gens);
        prop_assume!(g.is_transitive());
        let fast = is_primitive(&g).unwrap().is_primitive();
        prop_assert_eq!(fast, brute_primitive(n, &gens));
    }

    #[test]
    fn unit_coset_average((n, gens) in small_group(), h in perm(7)) {
        let g = build(n, &gens);
        prop_assume!(g.is_transitive());
        let h: Vec<usize> = h.into_iter().filter(|&i| i < n).collect();
        let h = Permutation::from_images(h).unwrap();
        let avg = coset_average_fixed_points(&g, &h, CAP).unwrap();
        prop_assert_eq!(avg, BigRational::from_integer(1.into()));
    }

    #[test]
    fn covering_formulations_agree((n, gens) in group_on(5), a in 0usize..3, b in 0usize..3) {
        let g = build(n, &gens);
        let els: Vec<Permutation> = g.sorted_elements(CAP).unwrap();
        let pick = |k: usize| g.subgroup(vec![els[(k * 7 + 1) % els.len()].clone()]).unwrap();
        let (h1, h2) = (pick(a), pick(b + 3));
        prop_assume!(h1.order() < g.order() && h2.order() < g.order());
        let sweep = is_normal_covering(&g, &[h1.clone(), h2.clone()], CAP).unwrap().covered;
        let union = covering_via_derangements(&g, &[h1.clone(), h2.clone()], CAP).unwrap();
        // direct: every element conjugate into h1 or h2
        let hs: Vec<Vec<Permutation>> = [&h1, &h2].iter().map(|h| h.sorted_elements(CAP).unwrap()).collect();
        let brute = els.iter().all(|x| {
            els.iter().any(|c| {
                let y = x.conjugate_by(c);
                hs.iter().any(|h| h.contains(&y))
            })
        });
        prop_assert_eq!(sweep, brute);
        prop_assert_eq!(union, brute);
    }

    #[test]
    fn factorial_valuation(m in 0u64..120, pi in 0usize..8) {
        let p = [2u64, 3, 5, 7, 11, 13, 97, 113][pi];
        let mut f = BigUint::from(1u32);
        for k in 1..=m {
            f *= k;
        }
        prop_assert_eq!(v_p(&f, p).unwrap(), vp_factorial(m, p).unwrap());
    }
}

#[test]
fn partition_counts() {
    let bell = [1, 1, 2, 5, 15, 52, 203, 877];
    for n in 1..=7 {
        assert_eq!(set_partitions(n).len(), bell[n]);
    }
}
