//! Deterministic Schreier–Sims and the [`PermGroup`] built on it.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::classes::ConjugacyClassTable;
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Default cap on the number of elements any operation may enumerate.
pub const DEFAULT_ENUMERATION_CAP: usize = 1_000_000;

#[derive(Clone, Debug)]
struct Level {
    base_point: usize,
    /// Strong generators fixing every earlier base point.
    generators: Vec<Permutation>,
    /// Orbit of the base point, in breadth-first discovery order.
    orbit: Vec<usize>,
    /// `transversal[b]` maps the base point to `b`.
    transversal: Vec<Option<Permutation>>,
}

impl Level {
    fn new(base_point: usize, degree: usize) -> Self {
        let mut level = Level {
            base_point,
            generators: Vec::new(),
            orbit: Vec::new(),
            transversal: vec![None; degree],
        };
        level.recompute(degree);
        level
    }

    fn recompute(&mut self, degree: usize) {
        self.transversal = vec![None; degree];
        self.transversal[self.base_point] = Some(Permutation::identity(degree));
        self.orbit = vec![self.base_point];
        let mut head = 0;
        while head < self.orbit.len() {
            let b = self.orbit[head];
            head += 1;
            for s in &self.generators {
                let c = s.image(b);
                if self.transversal[c].is_none() {
                    let u = self.transversal[b].as_ref().unwrap().then(s);
                    self.transversal[c] = Some(u);
                    self.orbit.push(c);
                }
            }
        }
    }
}

/// A permutation group given by generators, with a stabilizer chain
/// certificate computed at construction.
///
/// Immutable after construction; the chain, order and strong generators are
/// all filled in by [`PermGroup::new`].
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    levels: Vec<Level>,
    order: BigUint,
}

impl PermGroup {
    /// Builds the stabilizer chain. Base points are chosen as smallest moved
    /// points, so the result depends only on the generator list.
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        Self::with_base_prefix(degree, generators, &[])
    }

    /// As [`PermGroup::new`], but the base starts with `prefix`.
    pub fn with_base_prefix(
        degree: usize,
        generators: Vec<Permutation>,
        prefix: &[usize],
    ) -> Result<Self> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                });
            }
        }
        if let Some(&bad) = prefix.iter().find(|&&b| b >= degree) {
            return Err(Error::InvalidInput(format!(
                "base point {} out of range for degree {degree}",
                bad + 1
            )));
        }
        let levels = schreier_sims(degree, &generators, prefix);
        let order = levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()));
        Ok(PermGroup {
            degree,
            generators,
            levels,
            order,
        })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup::new(degree, Vec::new()).expect("trivial group")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    /// The order as a machine integer, when it fits.
    pub fn order_usize(&self) -> Option<usize> {
        self.order.to_usize()
    }

    pub fn is_trivial(&self) -> bool {
        self.order.is_one()
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    pub fn transversal_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    /// Union of the strong generators over all levels, without repeats.
    pub fn strong_generators(&self) -> Vec<Permutation> {
        let mut out: Vec<Permutation> = Vec::new();
        for l in &self.levels {
            for g in &l.generators {
                if !out.contains(g) {
                    out.push(g.clone());
                }
            }
        }
        out
    }

    /// Sifts `p` through the chain, returning the residue and the level at
    /// which sifting stopped (`levels.len()` when it passed every level).
    fn sift(&self, p: &Permutation) -> (Permutation, usize) {
        sift_from(&self.levels, p, 0)
    }

    /// True iff `p` sifts to the identity. Degree mismatches are non-members.
    pub fn contains(&self, p: &Permutation) -> bool {
        if p.degree() != self.degree {
            return false;
        }
        let (residue, depth) = self.sift(p);
        depth == self.levels.len() && residue.is_identity()
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.generators.iter().all(|g| other.contains(g))
    }

    pub fn same_group(&self, other: &PermGroup) -> bool {
        self.order == other.order && self.is_subgroup_of(other)
    }

    /// Fails loudly when the order exceeds `cap`.
    pub fn check_enumerable(&self, cap: usize) -> Result<usize> {
        match self.order_usize() {
            Some(n) if n <= cap => Ok(n),
            _ => Err(Error::cap("group", &self.order, cap)),
        }
    }

    /// Every element exactly once, as products of transversal elements.
    pub fn elements(&self, cap: usize) -> Result<Elements<'_>> {
        self.check_enumerable(cap)?;
        Ok(Elements {
            group: self,
            counters: vec![0; self.levels.len()],
            done: false,
        })
    }

    /// All elements sorted by image list. This is the fixed enumeration order
    /// used for canonical labels throughout the crate.
    pub fn sorted_elements(&self, cap: usize) -> Result<Vec<Permutation>> {
        let mut v: Vec<Permutation> = self.elements(cap)?.collect();
        v.sort_unstable();
        Ok(v)
    }

    pub fn conjugacy_classes(&self, cap: usize) -> Result<ConjugacyClassTable> {
        ConjugacyClassTable::new(self, cap)
    }

    /// Orbit of `point` in breadth-first order from the generators.
    pub fn orbit_bfs(&self, point: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        seen[point] = true;
        let mut orbit = vec![point];
        let mut head = 0;
        while head < orbit.len() {
            let b = orbit[head];
            head += 1;
            for g in &self.generators {
                let c = g.image(b);
                if !seen[c] {
                    seen[c] = true;
                    orbit.push(c);
                }
            }
        }
        orbit
    }

    /// All orbits, each sorted, ordered by smallest point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for p in 0..self.degree {
            if seen[p] {
                continue;
            }
            let mut o = self.orbit_bfs(p);
            for &q in &o {
                seen[q] = true;
            }
            o.sort_unstable();
            out.push(o);
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.degree <= 1 || self.orbit_bfs(0).len() == self.degree
    }

    /// The subgroup fixing every point of `points`.
    pub fn pointwise_stabilizer(&self, points: &[usize]) -> Result<PermGroup> {
        let chain = PermGroup::with_base_prefix(self.degree, self.generators.clone(), points)?;
        let gens: Vec<Permutation> = chain
            .strong_generators()
            .into_iter()
            .filter(|g| points.iter().all(|&p| g.fixes(p)))
            .collect();
        PermGroup::new(self.degree, gens)
    }

    /// Subgroup generated by `gens`, which must lie in this group.
    pub fn subgroup(&self, gens: Vec<Permutation>) -> Result<PermGroup> {
        let h = PermGroup::new(self.degree, gens)?;
        if !h.is_subgroup_of(self) {
            return Err(Error::NotSubgroup(
                "a generator is not a member of the parent group".into(),
            ));
        }
        Ok(h)
    }

    /// A uniformly random element, from one random transversal entry per level.
    pub fn random_element<R: rand::Rng>(&self, rng: &mut R) -> Permutation {
        let mut acc = Permutation::identity(self.degree);
        for level in self.levels.iter().rev() {
            let b = level.orbit[rng.gen_range(0..level.orbit.len())];
            acc = acc.then(level.transversal[b].as_ref().unwrap());
        }
        acc
    }

    /// Maps every element to its position in [`PermGroup::sorted_elements`].
    pub fn element_index(&self, cap: usize) -> Result<ElementIndex> {
        ElementIndex::new(self.sorted_elements(cap)?)
    }
}

/// Sorted element list with reverse lookup.
#[derive(Clone, Debug)]
pub struct ElementIndex {
    pub elements: Vec<Permutation>,
    lookup: HashMap<Permutation, u32>,
}

impl ElementIndex {
    pub fn new(elements: Vec<Permutation>) -> Result<Self> {
        let lookup = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i as u32))
            .collect();
        Ok(ElementIndex { elements, lookup })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.lookup.get(p).map(|&i| i as usize)
    }
}

pub struct Elements<'a> {
    group: &'a PermGroup,
    counters: Vec<usize>,
    done: bool,
}

impl Iterator for Elements<'_> {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.done {
            return None;
        }
        let levels = &self.group.levels;
        let mut acc = Permutation::identity(self.group.degree);
        for (k, level) in levels.iter().enumerate().rev() {
            let b = level.orbit[self.counters[k]];
            acc = acc.then(level.transversal[b].as_ref().unwrap());
        }
        // odometer, least significant digit at the top level
        let mut k = 0;
        loop {
            if k == levels.len() {
                self.done = true;
                break;
            }
            self.counters[k] += 1;
            if self.counters[k] < levels[k].orbit.len() {
                break;
            }
            self.counters[k] = 0;
            k += 1;
        }
        Some(acc)
    }
}

fn sift_from(levels: &[Level], p: &Permutation, start: usize) -> (Permutation, usize) {
    let mut g = p.clone();
    for (k, level) in levels.iter().enumerate().skip(start) {
        let b = g.image(level.base_point);
        match &level.transversal[b] {
            None => return (g, k),
            Some(u) => g = g.then(&u.inverse()),
        }
    }
    (g, levels.len())
}

fn schreier_sims(degree: usize, generators: &[Permutation], prefix: &[usize]) -> Vec<Level> {
    let gens: Vec<Permutation> = {
        let mut v: Vec<Permutation> = Vec::new();
        for g in generators {
            if !g.is_identity() && !v.contains(g) {
                v.push(g.clone());
            }
        }
        v
    };
    let mut base: Vec<usize> = Vec::new();
    for &b in prefix {
        if !base.contains(&b) {
            base.push(b);
        }
    }
    for g in &gens {
        if base.iter().all(|&b| g.fixes(b)) {
            base.push(g.smallest_moved_point().unwrap());
        }
    }
    let mut levels: Vec<Level> = base.iter().map(|&b| Level::new(b, degree)).collect();
    for (k, level) in levels.iter_mut().enumerate() {
        level.generators = gens
            .iter()
            .filter(|g| base[..k].iter().all(|&b| g.fixes(b)))
            .cloned()
            .collect();
        level.recompute(degree);
    }

    let mut i = levels.len() as isize - 1;
    while i >= 0 {
        let iu = i as usize;
        match find_failing_schreier_generator(&levels, iu) {
            None => i -= 1,
            Some((h, j)) => {
                if j == levels.len() {
                    let b = h.smallest_moved_point().expect("nontrivial residue");
                    levels.push(Level::new(b, degree));
                }
                for level in levels.iter_mut().take(j + 1).skip(iu + 1) {
                    level.generators.push(h.clone());
                    level.recompute(degree);
                }
                i = j as isize;
            }
        }
    }
    levels
}

fn find_failing_schreier_generator(levels: &[Level], i: usize) -> Option<(Permutation, usize)> {
    let level = &levels[i];
    for &beta in &level.orbit {
        let u_beta = level.transversal[beta].as_ref().unwrap();
        for s in &level.generators {
            let t = u_beta.then(s);
            let u_next = level.transversal[s.image(beta)].as_ref().unwrap();
            if &t == u_next {
                continue;
            }
            let schreier = t.then(&u_next.inverse());
            let (h, j) = sift_from(levels, &schreier, i + 1);
            if j < levels.len() || !h.is_identity() {
                return Some((h, j));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize, s: &str) -> Permutation {
        Permutation::parse_cycles(n, s).unwrap()
    }

    fn group(n: usize, gens: &[&str]) -> PermGroup {
        PermGroup::new(n, gens.iter().map(|g| cyc(n, g)).collect()).unwrap()
    }

    #[test]
    fn symmetric_four() {
        let g = group(4, &["(1 2)", "(1 2 3 4)"]);
        assert_eq!(g.order(), &BigUint::from(24u32));
        assert!(g.contains(&cyc(4, "(1 2 3)")));
    }

    #[test]
    fn empty_generating_set() {
        let g = PermGroup::new(5, vec![]).unwrap();
        assert_eq!(g.order(), &BigUint::one());
        assert!(g.contains(&Permutation::identity(5)));
        assert_eq!(g.elements(10).unwrap().count(), 1);
    }

    #[test]
    fn alternating_four_rejects_transposition() {
        let a4 = group(4, &["(1 2 3)", "(2 3 4)"]);
        assert_eq!(a4.order(), &BigUint::from(12u32));
        assert!(!a4.contains(&cyc(4, "(1 2)")));
    }

    #[test]
    fn cyclic_five_membership_by_powers() {
        let g = group(5, &["(1 2 3 4 5)"]);
        let p = Permutation::from_cycles(5, &[vec![0, 2, 4, 1, 3]]).unwrap();
        let powers: Vec<_> = (0..5).map(|k| g.generators()[0].pow(k)).collect();
        assert!(powers.contains(&p));
        assert!(g.contains(&p));
    }

    #[test]
    fn enumeration_is_exact() {
        let g = group(4, &["(1 2)", "(1 2 3 4)"]);
        let els = g.sorted_elements(100).unwrap();
        assert_eq!(els.len(), 24);
        let mut d = els.clone();
        d.dedup();
        assert_eq!(d.len(), 24);
    }

    #[test]
    fn enumeration_cap_is_loud() {
        let g = group(8, &["(1 2)", "(1 2 3 4 5 6 7 8)"]);
        let err = g.elements(1000).err().unwrap();
        assert!(matches!(err, Error::CapExceeded { .. }));
    }

    #[test]
    fn degree_mismatch_rejected() {
        let e = PermGroup::new(4, vec![cyc(3, "(1 2)")]);
        assert!(matches!(e, Err(Error::DegreeMismatch { .. })));
    }

    #[test]
    fn base_is_deterministic() {
        let a = group(6, &["(2 3)", "(2 3 4 5 6)"]);
        let b = group(6, &["(2 3)", "(2 3 4 5 6)"]);
        assert_eq!(a.base(), b.base());
        assert_eq!(a.base()[0], 1);
        assert_eq!(a.order(), &BigUint::from(120u32));
    }

    #[test]
    fn pointwise_stabilizer_of_s5() {
        let g = group(5, &["(1 2)", "(1 2 3 4 5)"]);
        let st = g.pointwise_stabilizer(&[0, 1]).unwrap();
        assert_eq!(st.order(), &BigUint::from(6u32));
        assert!(st.generators().iter().all(|x| x.fixes(0) && x.fixes(1)));
    }
}
