//! Acceptance criteria 1 to 10, one PASS/FAIL line each.
//!
//! Runs without the libtest harness so every line reaches stdout. The
//! process fails when a criterion fails in a way not listed in
//! `EXPECTED_FAILURES`, or when a listed failure no longer matches its
//! recorded shape.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use derange_core::affine::{
    affine_derangement_from, affine_group, gl_generators, isbell_witness, subfield_unipotent_check,
    sweep_fixed_space_congruence, Field, MatrixFp, DEFAULT_MATRIX_SCAN_CAP,
    DEFAULT_UNIPOTENT_SCAN_CAP,
};
use derange_core::constructions::{agl1, default_catalog, example_2_2, gl_natural_group, Catalog};
use derange_core::derangements::{
    coset_average_fixed_points, covering_via_derangements, find_derangement,
    find_prime_power_derangement, prime_power_base, sample_prime_power_derangement,
    verify_catalog,
};
use derange_core::invariants::{
    all_params, build_root_system, factorial_grid, grid_i, grid_ii, verify_lemma_3_1,
};
use derange_core::{all_subgroups, coset_action, Permutation, PermGroup, DEFAULT_ENUMERATION_CAP};

const CAP: usize = DEFAULT_ENUMERATION_CAP;
const JOBS: usize = 8;
const HARNESS_MAX_ORDER: usize = 200;
const AVERAGE_PAIRS: usize = 500;
const AVERAGE_MAX_ORDER: usize = 5000;
const EXHAUSTIVE_MAX_ORDER: usize = 10_000;
const SAMPLES: usize = 2000;
const SEED: u64 = 0x5eed_0004;

/// Criteria allowed to print FAIL, with the check that the failure is the
/// recorded one.
const EXPECTED_FAILURES: [u32; 2] = [8, 10];

struct Outcome {
    pass: bool,
    detail: String,
    /// For a criterion in `EXPECTED_FAILURES`: whether a failure has the
    /// recorded shape.
    expected_shape: bool,
}

impl Outcome {
    fn check(pass: bool, detail: String) -> Self {
        Outcome { pass, detail, expected_shape: false }
    }
}

fn c1() -> Outcome {
    let mut bad = Vec::new();
    let primes: Vec<u32> = (3..=31).filter(|&p| (2..p).all(|q| p % q != 0)).collect();
    for &p in &primes {
        let a = agl1(p).unwrap();
        let sizes = a.orbit_sizes();
        let report = find_derangement(&a, CAP).unwrap();
        // brute force over every element
        let brute = a.group().elements(CAP).unwrap().any(|g| g.fixed_point_count() == 0);
        let order_ok = a.group().order() == &BigUint::from(p * (p - 1));
        if sizes != [p as usize, p as usize - 1] || report.has_derangement() || brute || !order_ok {
            bad.push(p);
        }
    }
    Outcome::check(
        bad.is_empty(),
        format!("{} primes 3..31, orbit sizes [p, p-1], no derangement; bad: {bad:?}", primes.len()),
    )
}

fn c2() -> Outcome {
    let ex = example_2_2().unwrap();
    let g = &ex.group;
    let union_says = covering_via_derangements(g, &[ex.h1.clone(), ex.h2.clone()], CAP).unwrap();
    let ok = g.order() == &BigUint::from(96u32)
        && ex.regular_degree == 96
        && ex.h1.order() == &BigUint::from(24u32)
        && ex.h1_record.is_maximal
        && ex.h2.order() == &BigUint::from(8u32)
        && ex.covering.covered
        && union_says
        && ex.checks.iter().all(|c| c.holds);
    Outcome::check(
        ok,
        format!(
            "|G| = {}, |H1| = {} (maximal: {}), |H2| = {}, covering: {} (coset-union search: {}), {} checks",
            g.order(),
            ex.h1.order(),
            ex.h1_record.is_maximal,
            ex.h2.order(),
            ex.covering.covered,
            union_says,
            ex.checks.len()
        ),
    )
}

fn c3(cat: &Catalog) -> Outcome {
    let groups = cat.groups_up_to(HARNESS_MAX_ORDER);
    let reports = verify_catalog(&groups, derange_core::DEFAULT_LATTICE_CAP, JOBS).unwrap();
    let pairs: usize = reports.iter().map(|r| r.pairs_checked).sum();
    let bad: Vec<&str> = reports
        .iter()
        .filter(|r| !r.counterexamples.is_empty())
        .map(|r| r.label.as_str())
        .collect();
    Outcome::check(
        bad.is_empty(),
        format!(
            "{} catalog groups of order <= {HARNESS_MAX_ORDER}, {pairs} equal-order pairs, counterexamples in {bad:?}",
            groups.len()
        ),
    )
}

fn random_sym(n: usize, rng: &mut ChaCha8Rng) -> Permutation {
    let mut images: Vec<usize> = (0..n).collect();
    images.shuffle(rng);
    Permutation::from_images(images).unwrap()
}

fn c4(cat: &Catalog) -> Outcome {
    let pool: Vec<&PermGroup> = cat
        .transitive_actions()
        .map(|e| e.group())
        .filter(|g| g.order_usize().is_some_and(|o| o <= AVERAGE_MAX_ORDER))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut bad = 0;
    for _ in 0..AVERAGE_PAIRS {
        let g = pool[rng.gen_range(0..pool.len())];
        let h = random_sym(g.degree(), &mut rng);
        let avg = coset_average_fixed_points(g, &h, CAP).unwrap();
        if avg != num_rational::BigRational::from_integer(1.into()) {
            bad += 1;
        }
    }
    Outcome::check(
        bad == 0 && !pool.is_empty(),
        format!(
            "{AVERAGE_PAIRS} seeded pairs over {} transitive actions of order <= {AVERAGE_MAX_ORDER}; averages != 1: {bad}",
            pool.len()
        ),
    )
}

fn c5(cat: &Catalog) -> Outcome {
    let mut exhaustive = 0;
    let mut sampled = 0;
    let mut bad = Vec::new();
    for e in cat.transitive_actions() {
        let small = e.group().order_usize().is_some_and(|o| o <= EXHAUSTIVE_MAX_ORDER);
        let ok = if small {
            exhaustive += 1;
            let any = find_derangement(&e.action, CAP).unwrap();
            let pp = find_prime_power_derangement(&e.action, CAP);
            any.has_derangement()
                && pp.is_ok_and(|r| {
                    r.witness.as_ref().is_some_and(|w| {
                        w.element.fixed_point_count() == 0 && prime_power_base(&w.order).is_some()
                    })
                })
        } else {
            sampled += 1;
            let r = sample_prime_power_derangement(&e.action, SAMPLES, SEED).unwrap();
            r.witness.as_ref().is_some_and(|w| {
                e.group().contains(&w.element)
                    && w.element.fixed_point_count() == 0
                    && prime_power_base(&w.order).is_some()
            })
        };
        if !ok {
            bad.push(e.name.clone());
        }
    }
    Outcome::check(
        bad.is_empty(),
        format!(
            "{} transitive actions ({exhaustive} by class sweep, {sampled} by seeded sampling); without a prime-power derangement: {bad:?}",
            exhaustive + sampled
        ),
    )
}

fn c6() -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    for (p, n) in [(2, 2), (3, 2), (2, 3)] {
        let field = Field::prime(p).unwrap();
        let s = sweep_fixed_space_congruence(&field, n, 8, DEFAULT_MATRIX_SCAN_CAP).unwrap();
        ok &= s.failures.is_empty() && s.hypothesis_cases > 0;
        parts.push(format!(
            "GL{n}({p}): {} elements, {} cases, {} failures",
            s.elements,
            s.hypothesis_cases,
            s.failures.len()
        ));
    }
    Outcome::check(ok, parts.join("; "))
}

fn mat(field: &std::sync::Arc<Field>, rows: &[&[i64]]) -> MatrixFp {
    MatrixFp::from_rows(field.clone(), &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
}

fn c7() -> Outcome {
    // GL3(2) on the 8 cosets of a Frobenius subgroup of order 21
    let (g7, rho) = gl_natural_group(2, 3).unwrap();
    let lattice = all_subgroups(&g7, 400).unwrap();
    let r = lattice
        .records()
        .iter()
        .position(|r| r.order == BigUint::from(21u32))
        .unwrap();
    let ca = coset_action(&g7, &lattice.group_of(r).unwrap(), CAP).unwrap();
    let g8 = PermGroup::new(8, ca.quotient_images).unwrap();
    let isb = isbell_witness(&g8, &rho, CAP).unwrap();
    let isbell_ok = isb.preconditions_hold()
        && match (&isb.witness, &isb.witness_matrix, &isb.fixed_vector) {
            (Some(w), Some(m), Some(v)) => {
                g8.contains(w)
                    && (0..8).all(|i| w.image(i) != i)
                    && m.act(v) == *v
                    && v.iter().any(|&x| x != 0)
            }
            _ => false,
        };

    // V:H = AGL2(2) with H = GL2(2), M = C3, h a transvection, v = (1, 0)
    let f2 = Field::prime(2).unwrap();
    let affine = affine_group(&f2, 2, &gl_generators(&f2, 2), 1 << 10).unwrap();
    let m_gens = vec![mat(&f2, &[&[0, 1], &[1, 1]])];
    let h = mat(&f2, &[&[1, 1], &[0, 1]]);
    let rep = affine_derangement_from(&affine, &m_gens, &h, &[1, 0], CAP).unwrap();
    let independent = rep.element.as_ref().is_some_and(|x| {
        let on_v = x.restrict(&(0..4).collect::<Vec<_>>()).unwrap();
        let k = affine_group(&f2, 2, &m_gens, 1 << 10).unwrap().group;
        let elements: Vec<Permutation> = affine.group.elements(CAP).unwrap().collect();
        affine.group.contains(&on_v)
            && (0..4).all(|i| on_v.image(i) != i)
            && elements.iter().all(|g| !k.contains(&on_v.conjugate_by(g)))
    });
    let affine_ok = rep.verified() && independent;
    Outcome::check(
        isbell_ok && affine_ok,
        format!(
            "GL3(2) on 8 points: witness {} fixing {:?}; V:GL2(2) with M = C3: orbits {:?}, constructor verified {}, enumeration agrees {}",
            isb.witness.as_ref().map(|w| w.to_cycle_string()).unwrap_or_default(),
            isb.fixed_vector,
            rep.orbit_sizes,
            rep.verified(),
            independent
        ),
    )
}

fn c8() -> Outcome {
    let r = subfield_unipotent_check(3, 2, DEFAULT_UNIPOTENT_SCAN_CAP).unwrap();
    let counts_ok = BigUint::from(r.unipotent_count) == r.expected_unipotent_count;
    let pass = r.divides && r.all_meet_subgroup && counts_ok;
    Outcome {
        pass,
        detail: format!(
            "|GL3(4):GL3(2)| = {} has v_2 = {} (need {}), divides: {} (least m with divisibility: {:?}); {} unipotent elements in {} classes, all meet GL3(2): {}",
            r.index,
            r.index_valuation,
            r.required_exponent,
            r.divides,
            r.least_m_with_divisibility,
            r.unipotent_count,
            r.types.len(),
            r.all_meet_subgroup
        ),
        expected_shape: !r.divides
            && r.index_valuation == 3
            && r.required_exponent == 6
            && r.all_meet_subgroup
            && counts_ok,
    }
}

fn c9() -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    for (rank, want) in [(6, 72), (7, 126), (8, 240)] {
        let s = build_root_system(rank).unwrap();
        let rep = verify_lemma_3_1(&s);
        ok &= s.len() == want && rep.total_roots == want && !rep.filtered.is_empty();
        parts.push(format!(
            "E{rank}: {} roots, filter = {{a{rank}}}: {}, flag: {}",
            s.len(),
            rep.equals_last_simple_root,
            rep.mismatch_flag().unwrap_or_else(|| "none".into())
        ));
    }
    Outcome::check(ok, parts.join("; "))
}

fn c10() -> Outcome {
    let fg = factorial_grid(2000, 97);
    let gi = grid_i(12, 50);
    let gii = grid_ii(30, 97, 12);
    let lie = all_params(50);
    let b_ok = lie.iter().all(|p| p.b_bound_holds());
    let pass = fg.mismatches.is_empty() && gi.holds() && gii.holds() && b_ok;
    let known: BTreeSet<(u64, u64, u64)> = [(4, 4, 2)].into();
    Outcome {
        pass,
        detail: format!(
            "factorial grid {} cases, {} mismatches; bound i {} cases, failures {:?} (p prime not dividing r: {} cases, {} failures); bound ii {} cases, {} failures; b >= d-2 over {} parameter sets: {}",
            fg.cases,
            fg.mismatches.len(),
            gi.cases,
            gi.failures,
            gi.coprime_cases,
            gi.coprime_failures.len(),
            gii.cases,
            gii.failures.len(),
            lie.len(),
            b_ok
        ),
        expected_shape: fg.mismatches.is_empty()
            && gii.holds()
            && b_ok
            && gi.failures.iter().copied().collect::<BTreeSet<_>>() == known
            && gi.coprime_failures.is_empty(),
    }
}

fn main() -> ExitCode {
    // libtest flags such as --nocapture are accepted and ignored
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let wanted = |n: u32| filter.is_empty() || filter.iter().any(|f| f == &n.to_string());

    let catalog = std::sync::OnceLock::new();
    let cat = || {
        catalog.get_or_init(|| {
            let t = Instant::now();
            let c = default_catalog().unwrap();
            eprintln!("catalog: {} entries, {} skipped, {:.1?}", c.entries.len(), c.skipped.len(), t.elapsed());
            c
        })
    };

    let mut unexpected = Vec::new();
    for n in 1..=10u32 {
        if !wanted(n) {
            continue;
        }
        let t = Instant::now();
        let out = match n {
            1 => c1(),
            2 => c2(),
            3 => c3(cat()),
            4 => c4(cat()),
            5 => c5(cat()),
            6 => c6(),
            7 => c7(),
            8 => c8(),
            9 => c9(),
            _ => c10(),
        };
        let verdict = if out.pass { "PASS" } else { "FAIL" };
        println!("{verdict} criterion {n}: {}", out.detail);
        eprintln!("  criterion {n} took {:.2?}", t.elapsed());
        let tolerated = EXPECTED_FAILURES.contains(&n) && out.expected_shape;
        if !out.pass && !tolerated {
            unexpected.push(n);
        }
        if out.pass && EXPECTED_FAILURES.contains(&n) {
            println!("  note: criterion {n} is listed as an expected failure but passed");
        }
    }
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected failures: {unexpected:?}");
        ExitCode::FAILURE
    }
}
