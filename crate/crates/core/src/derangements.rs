//! Derangement search, normal coverings and the equal-order covering harness.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::actions::{action_kernel, coset_action, disjoint_union, MultiOrbitAction};
use crate::classes::ConjugacyClassTable;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::lattice::{all_subgroups, subgroup_conjugacy_classes};
use crate::perm::Permutation;

/// Seed for the conjugate sampled in every class sweep.
pub const SWEEP_SEED: u64 = 0x00d3_7a6e;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssumptionCheck {
    pub name: String,
    pub holds: bool,
    pub detail: String,
}

impl AssumptionCheck {
    pub fn new(name: &str, holds: bool, detail: impl Into<String>) -> Self {
        AssumptionCheck {
            name: name.to_string(),
            holds,
            detail: detail.into(),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({"name": self.name, "holds": self.holds, "detail": self.detail})
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub element: Permutation,
    pub order: BigUint,
    /// Fixed points of the witness on each labelled orbit.
    pub fixed_per_orbit: Vec<(String, usize)>,
}

impl Witness {
    fn new(element: Permutation, action: &MultiOrbitAction) -> Self {
        let fixed_per_orbit = action
            .orbits()
            .iter()
            .map(|o| (o.label.clone(), element.fixed_points_in(&o.points)))
            .collect();
        Witness {
            order: element.order(),
            element,
            fixed_per_orbit,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub classes_examined: usize,
    pub elements_examined: usize,
}

#[derive(Clone, Debug)]
pub struct DerangementReport {
    pub action: String,
    pub witness: Option<Witness>,
    /// Prime whose power is the witness order, for prime-power searches.
    pub prime: Option<u64>,
    pub stats: SearchStats,
    pub assumptions: Vec<AssumptionCheck>,
}

impl DerangementReport {
    pub fn has_derangement(&self) -> bool {
        self.witness.is_some()
    }

    pub fn to_json(&self) -> Value {
        let w = self.witness.as_ref();
        json!({
            "action": self.action,
            "verdict": if w.is_some() { "has_derangement" } else { "none" },
            "witness_cycles": w.map(|w| w.element.to_cycle_string()),
            "witness_order": w.map(|w| w.order.to_string()),
            "witness_fixed_per_orbit": w.map(|w| {
                w.fixed_per_orbit
                    .iter()
                    .map(|(l, c)| json!({"orbit": l, "fixed": c}))
                    .collect::<Vec<_>>()
            }),
            "prime": self.prime,
            "stats": {
                "classes_examined": self.stats.classes_examined,
                "elements_examined": self.stats.elements_examined,
            },
            "assumptions_checked": self.assumptions.iter().map(|a| a.to_json()).collect::<Vec<_>>(),
        })
    }
}

pub fn is_derangement(p: &Permutation, action: &MultiOrbitAction) -> bool {
    p.degree() == action.domain_size() && p.fixed_point_count() == 0
}

/// `Some(q)` when `n = q^k` for a prime `q` and `k >= 1`.
pub fn prime_power_base(n: &BigUint) -> Option<u64> {
    let n = n.to_u64()?;
    if n < 2 {
        return None;
    }
    let mut q = 2u64;
    let mut m = n;
    while q * q <= m {
        if m % q == 0 {
            break;
        }
        q += 1;
    }
    if m % q != 0 {
        q = m;
    }
    while m % q == 0 {
        m /= q;
    }
    (m == 1).then_some(q)
}

/// Walks class representatives in class order, checking on one seeded
/// random conjugate per class that the fixed-point count is a class
/// function. Returns the first representative accepted by `accept`.
fn sweep_classes(
    group: &PermGroup,
    table: &ConjugacyClassTable,
    stats: &mut SearchStats,
    mut accept: impl FnMut(&Permutation, usize) -> bool,
) -> Result<Option<Permutation>> {
    let mut rng = ChaCha8Rng::seed_from_u64(SWEEP_SEED);
    for rep in &table.representatives {
        stats.classes_examined += 1;
        stats.elements_examined += 2;
        let fixed = rep.fixed_point_count();
        let x = group.random_element(&mut rng);
        let conj = rep.conjugate_by(&x);
        if conj.fixed_point_count() != fixed {
            return Err(Error::InvariantViolation(format!(
                "fixed-point count differs between {rep} and its conjugate {conj}"
            )));
        }
        if accept(rep, fixed) {
            return Ok(Some(rep.clone()));
        }
    }
    Ok(None)
}

/// First derangement in class order, taking the least element of its class.
pub fn find_derangement(action: &MultiOrbitAction, cap: usize) -> Result<DerangementReport> {
    let group = action.group();
    let table = group.conjugacy_classes(cap)?;
    find_derangement_with(action, &table)
}

fn find_derangement_with(
    action: &MultiOrbitAction,
    table: &ConjugacyClassTable,
) -> Result<DerangementReport> {
    let mut stats = SearchStats::default();
    let found = sweep_classes(action.group(), table, &mut stats, |_, fixed| fixed == 0)?;
    Ok(DerangementReport {
        action: action.describe(),
        witness: found.map(|w| Witness::new(w, action)),
        prime: None,
        stats,
        assumptions: vec![AssumptionCheck::new(
            "class_function",
            true,
            "fixed-point count matched on one sampled conjugate per class",
        )],
    })
}

/// First derangement of prime-power order. On a transitive action of
/// degree > 1 a witness always exists; its absence is reported as an
/// invariant violation.
pub fn find_prime_power_derangement(
    action: &MultiOrbitAction,
    cap: usize,
) -> Result<DerangementReport> {
    let group = action.group();
    let table = group.conjugacy_classes(cap)?;
    let mut stats = SearchStats::default();
    let found = sweep_classes(group, &table, &mut stats, |rep, fixed| {
        fixed == 0 && prime_power_base(&rep.order()).is_some()
    })?;
    let transitive = action.orbits().len() == 1 && action.domain_size() > 1;
    if found.is_none() && transitive {
        return Err(Error::InvariantViolation(format!(
            "transitive action ({}) has no derangement of prime-power order",
            action.describe()
        )));
    }
    let prime = found.as_ref().and_then(|w| prime_power_base(&w.order()));
    Ok(DerangementReport {
        action: action.describe(),
        witness: found.map(|w| Witness::new(w, action)),
        prime,
        stats,
        assumptions: vec![
            AssumptionCheck::new(
                "class_function",
                true,
                "fixed-point count matched on one sampled conjugate per class",
            ),
            AssumptionCheck::new(
                "transitive",
                transitive,
                "a witness is guaranteed only for transitive actions of degree > 1",
            ),
        ],
    })
}

/// Seeded random search for a derangement of prime-power order, for
/// groups too large to enumerate. Each sample `g` contributes its prime-power
/// parts `g^(o / q^k)`. A miss is reported without a verdict.
pub fn sample_prime_power_derangement(
    action: &MultiOrbitAction,
    samples: usize,
    seed: u64,
) -> Result<DerangementReport> {
    let group = action.group();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stats = SearchStats::default();
    let mut found = None;
    'outer: for _ in 0..samples {
        let g = group.random_element(&mut rng);
        stats.elements_examined += 1;
        let o = g.order().to_u64().unwrap_or(0);
        let mut m = o;
        let mut q = 2u64;
        while m > 1 {
            if m % q == 0 {
                let mut qk = 1;
                while m % q == 0 {
                    m /= q;
                    qk *= q;
                }
                let part = g.pow((o / qk) as i64);
                stats.elements_examined += 1;
                if part.fixed_point_count() == 0 {
                    found = Some(part);
                    break 'outer;
                }
            }
            q += 1;
        }
    }
    let prime = found.as_ref().and_then(|w| prime_power_base(&w.order()));
    Ok(DerangementReport {
        action: action.describe(),
        witness: found.map(|w| Witness::new(w, action)),
        prime,
        stats,
        assumptions: vec![AssumptionCheck::new(
            "sampled",
            true,
            format!("{samples} seeded random elements; a miss is not a verdict"),
        )],
    })
}

#[derive(Clone, Debug)]
pub struct CoveringReport {
    pub group_order: BigUint,
    pub subgroup_orders: Vec<BigUint>,
    pub covered: bool,
    /// Least element of the first class meeting no listed subgroup.
    pub uncovered_witness: Option<Permutation>,
    pub classes: usize,
    /// Whether the derangement formulation was also evaluated and agreed.
    pub cross_checked: bool,
}

impl CoveringReport {
    pub fn to_json(&self) -> Value {
        json!({
            "group_order": self.group_order.to_string(),
            "subgroup_orders": self.subgroup_orders.iter().map(|o| o.to_string()).collect::<Vec<_>>(),
            "covered": self.covered,
            "uncovered_witness": self.uncovered_witness.as_ref().map(|w| w.to_cycle_string()),
            "classes": self.classes,
            "cross_checked": self.cross_checked,
        })
    }
}

/// Conjugacy classes meeting a subgroup, as a membership vector.
fn classes_meeting(table: &ConjugacyClassTable, sub: &PermGroup, cap: usize) -> Result<Vec<bool>> {
    let mut met = vec![false; table.len()];
    for h in sub.elements(cap)? {
        let c = table
            .class_of_element(&h)
            .ok_or_else(|| Error::NotSubgroup(format!("{h} is not in the group")))?;
        met[c] = true;
    }
    Ok(met)
}

fn check_proper_subgroups(group: &PermGroup, subgroups: &[PermGroup]) -> Result<()> {
    if subgroups.is_empty() {
        return Err(Error::InvalidInput("no subgroups given".into()));
    }
    for (i, h) in subgroups.iter().enumerate() {
        if !h.is_subgroup_of(group) {
            return Err(Error::NotSubgroup(format!("subgroup {} is not contained in the group", i + 1)));
        }
        if h.order() == group.order() {
            return Err(Error::InvalidInput(format!("subgroup {} is not proper", i + 1)));
        }
    }
    Ok(())
}

/// Whether the conjugates of `subgroups` cover `group`, by a sweep over
/// conjugacy classes. Debug builds also run the equivalent derangement
/// search on the disjoint union of coset actions.
pub fn is_normal_covering(
    group: &PermGroup,
    subgroups: &[PermGroup],
    cap: usize,
) -> Result<CoveringReport> {
    check_proper_subgroups(group, subgroups)?;
    let table = group.conjugacy_classes(cap)?;
    let mut met = vec![false; table.len()];
    for h in subgroups {
        for (m, c) in met.iter_mut().zip(classes_meeting(&table, h, cap)?) {
            *m |= c;
        }
    }
    let uncovered = met.iter().position(|&m| !m);
    let covered = uncovered.is_none();
    let cross_checked = cfg!(debug_assertions);
    if cross_checked {
        let alt = covering_via_derangements(group, subgroups, cap)?;
        if alt != covered {
            return Err(Error::InvariantViolation(format!(
                "class sweep says covered={covered} but coset-action search says {alt}"
            )));
        }
    }
    Ok(CoveringReport {
        group_order: group.order().clone(),
        subgroup_orders: subgroups.iter().map(|h| h.order().clone()).collect(),
        covered,
        uncovered_witness: uncovered.map(|c| table.representatives[c].clone()),
        classes: table.len(),
        cross_checked,
    })
}

/// Covering decided as "the disjoint union of the coset actions has no
/// derangement".
pub fn covering_via_derangements(
    group: &PermGroup,
    subgroups: &[PermGroup],
    cap: usize,
) -> Result<bool> {
    check_proper_subgroups(group, subgroups)?;
    let parts = subgroups
        .iter()
        .map(|h| Ok(coset_action(group, h, cap)?.quotient_images))
        .collect::<Result<Vec<_>>>()?;
    covering_from_images(&parts, cap)
}

fn covering_from_images(parts: &[Vec<Permutation>], cap: usize) -> Result<bool> {
    let union = disjoint_union(parts)?;
    Ok(!find_derangement(&union, cap)?.has_derangement())
}

/// Exact mean of the fixed-point counts over the coset `G h`.
pub fn coset_average_fixed_points(
    group: &PermGroup,
    h: &Permutation,
    cap: usize,
) -> Result<BigRational> {
    if h.degree() != group.degree() {
        return Err(Error::DegreeMismatch {
            left: group.degree(),
            right: h.degree(),
        });
    }
    if !group.is_transitive() {
        return Err(Error::Intransitive(
            "coset average needs a transitive group".into(),
        ));
    }
    let mut total = BigUint::zero();
    let mut count = BigUint::zero();
    for x in group.elements(cap)? {
        total += x.then(h).fixed_point_count();
        count += 1u32;
    }
    Ok(BigRational::new(total.into(), count.into()))
}

/// Outcome of the lifting strategy.
#[derive(Clone, Debug)]
pub enum LiftOutcome {
    Found(DerangementReport),
    Inapplicable {
        reason: String,
        assumptions: Vec<AssumptionCheck>,
    },
}

impl LiftOutcome {
    pub fn to_json(&self) -> Value {
        match self {
            LiftOutcome::Found(r) => {
                let mut v = r.to_json();
                v["status"] = json!("found");
                v
            }
            LiftOutcome::Inapplicable {
                reason,
                assumptions,
            } => json!({
                "status": "inapplicable",
                "reason": reason,
                "assumptions_checked": assumptions.iter().map(|a| a.to_json()).collect::<Vec<_>>(),
            }),
        }
    }
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= n {
        if n % q == 0 {
            out.push(q);
            while n % q == 0 {
                n /= q;
            }
        }
        q += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Derangement search on a two-orbit action following the lifting argument:
/// choose `g` of prime-power order deranging the first orbit, then scan the
/// coset `N g` of the first orbit's kernel `N` for an element also deranging
/// the second orbit. Unmet hypotheses give `Inapplicable`.
pub fn lift_derangement(action: &MultiOrbitAction, cap: usize) -> Result<LiftOutcome> {
    let mut checks = Vec::new();
    let orbits = action.orbits();
    let two = orbits.len() == 2;
    checks.push(AssumptionCheck::new(
        "two_orbits",
        two,
        format!("{} orbits", orbits.len()),
    ));
    if !two {
        return Ok(LiftOutcome::Inapplicable {
            reason: "the action does not have exactly two orbits".into(),
            assumptions: checks,
        });
    }
    let (o1, o2) = (&orbits[0], &orbits[1]);
    let (n1, n2) = (o1.points.len() as u64, o2.points.len() as u64);
    let sizes_ok = n1 > 1 && n2 > 1;
    checks.push(AssumptionCheck::new(
        "orbit_sizes",
        sizes_ok,
        format!("orbit sizes {n1} and {n2}"),
    ));
    let bad_prime = prime_divisors(n1).into_iter().find(|q| (n2 - 1) % q == 0);
    let primes_ok = sizes_ok && bad_prime.is_none();
    checks.push(AssumptionCheck::new(
        "prime_condition",
        primes_ok,
        match bad_prime {
            Some(q) => format!("{q} divides {n1} and {}", n2 - 1),
            None => format!("no prime divisor of {n1} divides {}", n2.saturating_sub(1)),
        },
    ));
    let kernel = action_kernel(action, &o1.label)?;
    let kernel_transitive = {
        let o = kernel.orbit_bfs(o2.points[0]);
        o.len() == o2.points.len()
    };
    checks.push(AssumptionCheck::new(
        "kernel_transitive",
        kernel_transitive,
        format!("kernel of order {} on the first orbit", kernel.order()),
    ));
    if let Some(failed) = checks.iter().find(|c| !c.holds) {
        return Ok(LiftOutcome::Inapplicable {
            reason: format!("hypothesis {} fails: {}", failed.name, failed.detail),
            assumptions: checks,
        });
    }

    let group = action.group();
    let table = group.conjugacy_classes(cap)?;
    let mut stats = SearchStats::default();
    let g = sweep_classes(group, &table, &mut stats, |rep, _| {
        rep.fixed_points_in(&o1.points) == 0 && prime_power_base(&rep.order()).is_some()
    })?
    .ok_or_else(|| {
        Error::InvariantViolation(
            "no element of prime-power order deranges the first orbit".into(),
        )
    })?;
    let mut coset: Vec<Permutation> = kernel.elements(cap)?.map(|n| n.then(&g)).collect();
    coset.sort();
    let mut witness = None;
    for h in coset {
        stats.elements_examined += 1;
        if h.fixed_points_in(&o2.points) == 0 {
            witness = Some(h);
            break;
        }
    }
    let h = witness.ok_or_else(|| {
        Error::InvariantViolation(format!(
            "no element of the kernel coset of {g} deranges the second orbit"
        ))
    })?;
    if !is_derangement(&h, action) {
        return Err(Error::InvariantViolation(format!("lifted element {h} has fixed points")));
    }
    let prime = prime_power_base(&g.order());
    Ok(LiftOutcome::Found(DerangementReport {
        action: action.describe(),
        witness: Some(Witness::new(h, action)),
        prime,
        stats,
        assumptions: checks,
    }))
}

/// One equal-order pair of subgroup class representatives that covers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoveringPair {
    pub order: BigUint,
    pub first: Vec<Permutation>,
    pub second: Vec<Permutation>,
}

#[derive(Clone, Debug)]
pub struct HarnessReport {
    pub label: String,
    pub group_order: BigUint,
    pub subgroups: usize,
    pub subgroup_classes: usize,
    pub pairs_checked: usize,
    pub counterexamples: Vec<CoveringPair>,
    pub equivalence_checked: bool,
}

impl HarnessReport {
    pub fn to_json(&self) -> Value {
        json!({
            "label": self.label,
            "group_order": self.group_order.to_string(),
            "subgroups": self.subgroups,
            "subgroup_classes": self.subgroup_classes,
            "pairs_checked": self.pairs_checked,
            "equivalence_checked": self.equivalence_checked,
            "counterexamples": self.counterexamples.iter().map(|c| json!({
                "order": c.order.to_string(),
                "first": c.first.iter().map(|g| g.to_cycle_string()).collect::<Vec<_>>(),
                "second": c.second.iter().map(|g| g.to_cycle_string()).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Checks every pair of proper subgroups of equal order, up to conjugacy,
/// for a normal covering. Covering is decided by a class sweep and
/// confirmed by derangement search on the disjoint union of coset actions.
pub fn verify_conjecture(label: &str, group: &PermGroup, lattice_cap: usize) -> Result<HarnessReport> {
    let lattice = all_subgroups(group, lattice_cap)?;
    let table = group.conjugacy_classes(lattice_cap)?;
    let classes = subgroup_conjugacy_classes(&lattice);
    let reps: Vec<usize> = classes
        .iter()
        .map(|c| c[0])
        .filter(|&r| lattice.is_proper(r))
        .collect();
    let met: Vec<Vec<bool>> = reps
        .iter()
        .map(|&r| {
            let mut m = vec![false; table.len()];
            for e in lattice.members(r).iter() {
                m[table.class_of[e] as usize] = true;
            }
            m
        })
        .collect();
    let images: Vec<Vec<Permutation>> = reps
        .iter()
        .map(|&r| Ok(coset_action(group, &lattice.group_of(r)?, lattice_cap)?.quotient_images))
        .collect::<Result<_>>()?;
    let mut pairs = Vec::new();
    for i in 0..reps.len() {
        for j in i..reps.len() {
            if lattice.records()[reps[i]].order == lattice.records()[reps[j]].order {
                pairs.push((i, j));
            }
        }
    }
    let mut counterexamples = Vec::new();
    for &(i, j) in &pairs {
        let covered = met[i].iter().zip(&met[j]).all(|(a, b)| *a || *b);
        let alt = covering_from_images(&[images[i].clone(), images[j].clone()], lattice_cap)?;
        if alt != covered {
            return Err(Error::InvariantViolation(format!(
                "{label}: covering formulations disagree on a pair of order {}",
                lattice.records()[reps[i]].order
            )));
        }
        if covered {
            counterexamples.push(CoveringPair {
                order: lattice.records()[reps[i]].order.clone(),
                first: lattice.records()[reps[i]].generators.clone(),
                second: lattice.records()[reps[j]].generators.clone(),
            });
        }
    }
    Ok(HarnessReport {
        label: label.to_string(),
        group_order: group.order().clone(),
        subgroups: lattice.len(),
        subgroup_classes: classes.len(),
        pairs_checked: pairs.len(),
        counterexamples,
        equivalence_checked: true,
    })
}

/// Runs the harness over several groups on `jobs` worker threads. Reports
/// come back in input order regardless of scheduling.
pub fn verify_catalog(
    groups: &[(String, PermGroup)],
    lattice_cap: usize,
    jobs: usize,
) -> Result<Vec<HarnessReport>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))?;
    pool.install(|| {
        groups
            .par_iter()
            .map(|(label, g)| verify_conjecture(label, g, lattice_cap))
            .collect()
    })
}

/// Checks an exact coset average against 1.
pub fn expect_unit_average(avg: &BigRational) -> Result<()> {
    if avg.is_one() {
        Ok(())
    } else {
        Err(Error::InvariantViolation(format!(
            "coset average of fixed points is {avg}, not 1"
        )))
    }
}
