//! Orbits, stabilizers, block systems, coset actions and the disjoint-union
//! construction for multi-orbit actions.

use std::collections::HashMap;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;

/// Minimal invariant set containing `point`, sorted.
pub fn orbit(group: &PermGroup, point: usize) -> Result<Vec<usize>> {
    if point >= group.degree() {
        return Err(Error::InvalidInput(format!(
            "point {} out of range for degree {}",
            point + 1,
            group.degree()
        )));
    }
    let mut o = group.orbit_bfs(point);
    o.sort_unstable();
    Ok(o)
}

pub fn point_stabilizer(group: &PermGroup, point: usize) -> Result<PermGroup> {
    if point >= group.degree() {
        return Err(Error::InvalidInput(format!("point {} out of range", point + 1)));
    }
    group.pointwise_stabilizer(&[point])
}

/// An orbit together with a label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelledOrbit {
    pub label: String,
    pub points: Vec<usize>,
}

/// A group with its domain split into labelled orbits.
#[derive(Clone, Debug)]
pub struct MultiOrbitAction {
    group: PermGroup,
    orbits: Vec<LabelledOrbit>,
}

impl MultiOrbitAction {
    /// Checks that the parts are orbits, disjoint, and cover the domain.
    pub fn new(group: PermGroup, parts: Vec<LabelledOrbit>) -> Result<Self> {
        let n = group.degree();
        let mut owner = vec![usize::MAX; n];
        for (k, part) in parts.iter().enumerate() {
            for &p in &part.points {
                if p >= n {
                    return Err(Error::InvalidInput(format!("point {} out of range", p + 1)));
                }
                if owner[p] != usize::MAX {
                    return Err(Error::InvalidInput(format!(
                        "point {} lies in two labelled parts",
                        p + 1
                    )));
                }
                owner[p] = k;
            }
        }
        if let Some(p) = owner.iter().position(|&o| o == usize::MAX) {
            return Err(Error::InvalidInput(format!(
                "point {} is not covered by any orbit",
                p + 1
            )));
        }
        let mut sorted = Vec::with_capacity(parts.len());
        for mut part in parts {
            part.points.sort_unstable();
            let Some(&first) = part.points.first() else {
                return Err(Error::InvalidInput(format!("orbit {} is empty", part.label)));
            };
            if orbit(&group, first)? != part.points {
                return Err(Error::InvalidInput(format!(
                    "part {} is not a single orbit of the group",
                    part.label
                )));
            }
            sorted.push(part);
        }
        Ok(MultiOrbitAction {
            group,
            orbits: sorted,
        })
    }

    /// Labels the group's own orbits `1`, `2`, ... by smallest point.
    pub fn from_group(group: PermGroup) -> Self {
        let orbits = group
            .orbits()
            .into_iter()
            .enumerate()
            .map(|(k, points)| LabelledOrbit {
                label: (k + 1).to_string(),
                points,
            })
            .collect();
        MultiOrbitAction { group, orbits }
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn domain_size(&self) -> usize {
        self.group.degree()
    }

    pub fn orbits(&self) -> &[LabelledOrbit] {
        &self.orbits
    }

    pub fn orbit_sizes(&self) -> Vec<usize> {
        self.orbits.iter().map(|o| o.points.len()).collect()
    }

    pub fn orbit_by_label(&self, label: &str) -> Result<&LabelledOrbit> {
        self.orbits
            .iter()
            .find(|o| o.label == label)
            .ok_or_else(|| Error::InvalidInput(format!("no orbit labelled {label:?}")))
    }

    /// The group induced on one labelled orbit, with points renumbered.
    pub fn restricted_group(&self, label: &str) -> Result<PermGroup> {
        let o = self.orbit_by_label(label)?;
        let gens = self
            .group
            .generators()
            .iter()
            .map(|g| g.restrict(&o.points))
            .collect::<Result<Vec<_>>>()?;
        PermGroup::new(o.points.len(), gens)
    }

    pub fn describe(&self) -> String {
        let sizes: Vec<String> = self.orbit_sizes().iter().map(|s| s.to_string()).collect();
        format!(
            "degree {} with orbits of sizes [{}]",
            self.domain_size(),
            sizes.join(", ")
        )
    }
}

/// Outcome of a primitivity test on one orbit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Primitivity {
    Primitive,
    /// A nontrivial block, in original point labels, containing the smallest
    /// orbit point.
    Imprimitive { block: Vec<usize> },
}

impl Primitivity {
    pub fn is_primitive(&self) -> bool {
        matches!(self, Primitivity::Primitive)
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

/// Finest block system in which `a` and `b` share a block; returns the block
/// containing `a`.
pub fn minimal_block(group: &PermGroup, a: usize, b: usize) -> Vec<usize> {
    let n = group.degree();
    let mut uf = UnionFind::new(n);
    uf.union(a, b);
    let mut queue = vec![(a, b)];
    while let Some((x, y)) = queue.pop() {
        for s in group.generators() {
            let (xs, ys) = (s.image(x), s.image(y));
            if uf.union(xs, ys) {
                queue.push((xs, ys));
            }
        }
    }
    let root = uf.find(a);
    (0..n).filter(|&p| uf.find(p) == root).collect()
}

/// Tests primitivity of the group on `points`, which must be one orbit of
/// size at least two.
pub fn is_primitive_on(group: &PermGroup, points: &[usize]) -> Result<Primitivity> {
    let mut pts = points.to_vec();
    pts.sort_unstable();
    let Some(&alpha) = pts.first() else {
        return Err(Error::InvalidInput("empty point set".into()));
    };
    if orbit(group, alpha)? != pts {
        return Err(Error::Intransitive(
            "the point set is not a single orbit".into(),
        ));
    }
    if pts.len() < 2 {
        return Err(Error::InvalidInput(
            "primitivity needs an orbit of size at least 2".into(),
        ));
    }
    for &omega in &pts[1..] {
        let block = minimal_block(group, alpha, omega);
        if block.len() < pts.len() {
            return Ok(Primitivity::Imprimitive { block });
        }
    }
    Ok(Primitivity::Primitive)
}

/// Primitivity of a transitive group on its whole domain.
pub fn is_primitive(group: &PermGroup) -> Result<Primitivity> {
    let all: Vec<usize> = (0..group.degree()).collect();
    is_primitive_on(group, &all)
}

/// Primitivity of a [`MultiOrbitAction`] restricted to one labelled orbit.
pub fn is_primitive_orbit(action: &MultiOrbitAction, label: &str) -> Result<Primitivity> {
    let o = action.orbit_by_label(label)?;
    is_primitive_on(action.group(), &o.points)
}

/// The action of a group on the right cosets of a subgroup.
#[derive(Clone, Debug)]
pub struct CosetAction {
    parent: PermGroup,
    subgroup: PermGroup,
    pub point_stabilizer_order: BigUint,
    /// Least element of each coset in the parent's enumeration order.
    coset_representatives: Vec<Permutation>,
    /// Images of the parent's generators, in generator order.
    pub quotient_images: Vec<Permutation>,
    pub image_group: PermGroup,
    pub kernel: PermGroup,
}

impl CosetAction {
    pub fn degree(&self) -> usize {
        self.coset_representatives.len()
    }

    pub fn parent(&self) -> &PermGroup {
        &self.parent
    }

    pub fn subgroup(&self) -> &PermGroup {
        &self.subgroup
    }

    pub fn coset_representatives(&self) -> &[Permutation] {
        &self.coset_representatives
    }

    /// Index of the coset `H x`.
    pub fn coset_of(&self, x: &Permutation) -> Result<usize> {
        for (k, r) in self.coset_representatives.iter().enumerate() {
            if self.subgroup.contains(&x.then(&r.inverse())) {
                return Ok(k);
            }
        }
        Err(Error::NotSubgroup(format!(
            "{x} is not an element of the parent group"
        )))
    }

    /// Permutation induced on the cosets by an arbitrary parent element.
    pub fn image_of(&self, x: &Permutation) -> Result<Permutation> {
        let images = self
            .coset_representatives
            .iter()
            .map(|r| self.coset_of(&r.then(x)))
            .collect::<Result<Vec<_>>>()?;
        Permutation::from_images(images)
    }
}

/// Right-coset action of `group` on the cosets of `subgroup`.
pub fn coset_action(group: &PermGroup, subgroup: &PermGroup, cap: usize) -> Result<CosetAction> {
    if !subgroup.is_subgroup_of(group) {
        return Err(Error::NotSubgroup(
            "a subgroup generator is not in the group".into(),
        ));
    }
    let index_big = group.order() / subgroup.order();
    let index = match num_traits::ToPrimitive::to_usize(&index_big) {
        Some(i) if i <= cap => i,
        _ => return Err(Error::cap("coset space", &index_big, cap)),
    };
    let elements = group.sorted_elements(cap)?;
    let sub_elements: Vec<Permutation> = subgroup.elements(usize::MAX)?.collect();
    let mut coset_of: HashMap<Permutation, u32> = HashMap::with_capacity(elements.len());
    let mut reps = Vec::with_capacity(index);
    for x in &elements {
        if coset_of.contains_key(x) {
            continue;
        }
        let cid = reps.len() as u32;
        reps.push(x.clone());
        for h in &sub_elements {
            coset_of.insert(h.then(x), cid);
        }
    }
    debug_assert_eq!(reps.len(), index);
    let quotient_images = group
        .generators()
        .iter()
        .map(|s| {
            let images: Vec<usize> = reps
                .iter()
                .map(|r| coset_of[&r.then(s)] as usize)
                .collect();
            Permutation::from_images(images)
        })
        .collect::<Result<Vec<_>>>()?;
    let image_group = PermGroup::new(index, quotient_images.clone())?;
    let kernel = kernel_of_images(group, &quotient_images)?;
    Ok(CosetAction {
        parent: group.clone(),
        subgroup: subgroup.clone(),
        point_stabilizer_order: subgroup.order().clone(),
        coset_representatives: reps,
        quotient_images,
        image_group,
        kernel,
    })
}

/// Kernel of the homomorphism sending each generator of `group` to the
/// corresponding entry of `images`, found as a pointwise stabilizer in the
/// graph group on the concatenated domain.
pub fn kernel_of_images(group: &PermGroup, images: &[Permutation]) -> Result<PermGroup> {
    if images.len() != group.generators().len() {
        return Err(Error::InvalidInput(format!(
            "{} images for {} generators",
            images.len(),
            group.generators().len()
        )));
    }
    let n = group.degree();
    let graph: Vec<Permutation> = group
        .generators()
        .iter()
        .zip(images)
        .map(|(g, i)| g.direct_sum(i))
        .collect();
    let m = n + images.first().map_or(0, |i| i.degree());
    let graph_group = PermGroup::new(m, graph)?;
    let image_points: Vec<usize> = (n..m).collect();
    let stab = graph_group.pointwise_stabilizer(&image_points)?;
    let first: Vec<usize> = (0..n).collect();
    let gens = stab
        .generators()
        .iter()
        .map(|g| g.restrict(&first))
        .collect::<Result<Vec<_>>>()?;
    PermGroup::new(n, gens)
}

/// Concatenates actions of one abstract group. Each part lists the images of
/// the same generators, aligned position by position.
pub fn disjoint_union(parts: &[Vec<Permutation>]) -> Result<MultiOrbitAction> {
    let Some(first) = parts.first() else {
        return Err(Error::InvalidInput("no actions to combine".into()));
    };
    let k = first.len();
    if let Some(bad) = parts.iter().find(|p| p.len() != k) {
        return Err(Error::InvalidInput(format!(
            "generator count mismatch: {} vs {k}",
            bad.len()
        )));
    }
    let degrees: Vec<usize> = parts
        .iter()
        .map(|p| p.first().map_or(0, |g| g.degree()))
        .collect();
    for (p, &d) in parts.iter().zip(&degrees) {
        if p.iter().any(|g| g.degree() != d) {
            return Err(Error::InvalidInput("mixed degrees inside one action".into()));
        }
    }
    let total: usize = degrees.iter().sum();
    let gens: Vec<Permutation> = (0..k)
        .map(|j| {
            parts[1..]
                .iter()
                .fold(parts[0][j].clone(), |acc, p| acc.direct_sum(&p[j]))
        })
        .collect();
    let group = PermGroup::new(total, gens)?;
    let mut labelled = Vec::new();
    let mut offset = 0;
    for (i, &d) in degrees.iter().enumerate() {
        let local: Vec<usize> = (offset..offset + d).collect();
        let mut seen = vec![false; total];
        let mut part_orbits = Vec::new();
        for &p in &local {
            if seen[p] {
                continue;
            }
            let o = orbit(&group, p)?;
            for &q in &o {
                seen[q] = true;
            }
            part_orbits.push(o);
        }
        let single = part_orbits.len() == 1;
        for (j, o) in part_orbits.into_iter().enumerate() {
            let label = if single {
                (i + 1).to_string()
            } else {
                format!("{}.{}", i + 1, j + 1)
            };
            labelled.push(LabelledOrbit { label, points: o });
        }
        offset += d;
    }
    MultiOrbitAction::new(group, labelled)
}

/// Subgroup acting trivially on the labelled orbit, as a subgroup of the
/// full-degree group.
pub fn action_kernel(action: &MultiOrbitAction, label: &str) -> Result<PermGroup> {
    let o = action.orbit_by_label(label)?;
    action.group().pointwise_stabilizer(&o.points)
}
