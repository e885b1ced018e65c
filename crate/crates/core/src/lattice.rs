//! Complete subgroup lattices of small groups.
//!
//! Subgroups are found by starting from the cyclic subgroups and closing
//! under joins with cyclic subgroups. Every subgroup is the join of its
//! cyclic subgroups, so the result is complete. Elements are identified with
//! their index in the parent's sorted enumeration, and subgroups with the
//! bitset of their element indices.

use std::collections::HashMap;

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{ElementIndex, PermGroup};
use crate::perm::Permutation;

pub const DEFAULT_LATTICE_CAP: usize = 400;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    pub fn new(n: usize) -> Self {
        BitSet {
            words: vec![0; n.div_ceil(64)],
        }
    }

    #[inline]
    pub fn insert(&mut self, i: usize) -> bool {
        let (w, b) = (i / 64, i % 64);
        let fresh = self.words[w] & (1 << b) == 0;
        self.words[w] |= 1 << b;
        fresh
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.words[i / 64] & (1 << (i % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, other: &BitSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn union_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersection(&self, other: &BitSet) -> BitSet {
        BitSet {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        }
    }

    pub fn intersects(&self, other: &BitSet) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &word)| {
            (0..64).filter(move |b| word & (1 << b) != 0).map(move |b| w * 64 + b)
        })
    }
}

#[derive(Clone, Debug)]
pub struct SubgroupRecord {
    pub generators: Vec<Permutation>,
    pub order: BigUint,
    /// Sorted element indices in the parent's enumeration order.
    pub element_key: Vec<u32>,
    pub is_maximal: bool,
    pub conjugacy_class_id: usize,
}

/// Multiplication table of an enumerated group, by element index.
#[derive(Clone, Debug)]
pub struct CayleyTable {
    pub index: ElementIndex,
    n: usize,
    product: Vec<u32>,
    inverse: Vec<u32>,
    identity: usize,
}

impl CayleyTable {
    pub fn new(group: &PermGroup, cap: usize) -> Result<Self> {
        let index = group.element_index(cap)?;
        let n = index.len();
        let mut product = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                let p = index.elements[i].then(&index.elements[j]);
                product[i * n + j] = index.index_of(&p).expect("closed") as u32;
            }
        }
        let identity = index
            .index_of(&Permutation::identity(group.degree()))
            .expect("identity present");
        let mut inverse = vec![0u32; n];
        for i in 0..n {
            let j = (0..n).find(|&j| product[i * n + j] as usize == identity).unwrap();
            inverse[i] = j as u32;
        }
        Ok(CayleyTable {
            index,
            n,
            product,
            inverse,
            identity,
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.product[a * self.n + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    /// `x^-1 a x`.
    #[inline]
    pub fn conj(&self, a: usize, x: usize) -> usize {
        self.mul(self.mul(self.inv(x), a), x)
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    /// Subgroup generated by element indices, as a bitset.
    pub fn closure(&self, gens: &[usize]) -> BitSet {
        let mut set = BitSet::new(self.n);
        set.insert(self.identity);
        let mut queue = vec![self.identity];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for &g in gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    queue.push(y);
                }
            }
        }
        set
    }

    pub fn conjugate_set(&self, set: &BitSet, x: usize) -> BitSet {
        let mut out = BitSet::new(self.n);
        for a in set.iter() {
            out.insert(self.conj(a, x));
        }
        out
    }

    pub fn bitset_of(&self, elements: impl IntoIterator<Item = Permutation>) -> Result<BitSet> {
        let mut set = BitSet::new(self.n);
        for p in elements {
            let i = self
                .index
                .index_of(&p)
                .ok_or_else(|| Error::NotSubgroup(format!("{p} is not in the group")))?;
            set.insert(i);
        }
        Ok(set)
    }
}

#[derive(Clone, Debug)]
pub struct SubgroupLattice {
    parent: PermGroup,
    table: CayleyTable,
    records: Vec<SubgroupRecord>,
    members: Vec<BitSet>,
    classes: Vec<Vec<usize>>,
}

impl SubgroupLattice {
    pub fn parent(&self) -> &PermGroup {
        &self.parent
    }

    pub fn table(&self) -> &CayleyTable {
        &self.table
    }

    /// Records sorted by order, then by element key.
    pub fn records(&self) -> &[SubgroupRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn members(&self, record: usize) -> &BitSet {
        &self.members[record]
    }

    pub fn elements_of(&self, record: usize) -> Vec<Permutation> {
        self.members[record]
            .iter()
            .map(|i| self.table.index.elements[i].clone())
            .collect()
    }

    pub fn group_of(&self, record: usize) -> Result<PermGroup> {
        PermGroup::new(self.parent.degree(), self.records[record].generators.clone())
    }

    /// Record index of a subgroup of the parent, located by its element set.
    pub fn find(&self, subgroup: &PermGroup) -> Result<Option<usize>> {
        let n = self.table.len();
        let set = self.table.bitset_of(subgroup.elements(n)?)?;
        Ok(self.members.iter().position(|m| *m == set))
    }

    pub fn is_proper(&self, record: usize) -> bool {
        self.members[record].len() < self.table.len()
    }

    /// Order of the normalizer of a record.
    pub fn normalizer_order(&self, record: usize) -> usize {
        let set = &self.members[record];
        (0..self.table.len())
            .filter(|&x| self.table.conjugate_set(set, x) == *set)
            .count()
    }

    pub fn to_dump(&self) -> LatticeDump {
        LatticeDump {
            group_order: self.parent.order().to_string(),
            subgroup_count: self.records.len(),
            class_count: self.classes.len(),
            records: self
                .records
                .iter()
                .map(|r| RecordDump {
                    order: r.order.to_string(),
                    generators: r.generators.iter().map(|g| g.to_cycle_string()).collect(),
                    is_maximal: r.is_maximal,
                    class_id: r.conjugacy_class_id,
                })
                .collect(),
        }
    }
}

/// JSON form of a lattice: per record order, generator cycles, maximality
/// flag and class id.
#[derive(Clone, Debug, Serialize)]
pub struct LatticeDump {
    pub group_order: String,
    pub subgroup_count: usize,
    pub class_count: usize,
    pub records: Vec<RecordDump>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RecordDump {
    pub order: String,
    pub generators: Vec<String>,
    pub is_maximal: bool,
    pub class_id: usize,
}

/// Every subgroup of `group`, each exactly once.
pub fn all_subgroups(group: &PermGroup, cap: usize) -> Result<SubgroupLattice> {
    group
        .check_enumerable(cap)
        .map_err(|_| Error::cap("subgroup lattice", group.order(), cap))?;
    let table = CayleyTable::new(group, cap)?;
    let n = table.len();

    // cyclic subgroups, each with its least generator
    let mut cyclic: Vec<(usize, BitSet)> = Vec::new();
    let mut cyclic_seen: HashMap<BitSet, ()> = HashMap::new();
    for i in 0..n {
        let c = table.closure(&[i]);
        if cyclic_seen.insert(c.clone(), ()).is_none() {
            cyclic.push((i, c));
        }
    }

    let mut found: HashMap<BitSet, usize> = HashMap::new();
    let mut subs: Vec<(BitSet, Vec<usize>)> = Vec::new();
    for (g, c) in &cyclic {
        let gens = if *g == table.identity() { vec![] } else { vec![*g] };
        found.insert(c.clone(), subs.len());
        subs.push((c.clone(), gens));
    }
    let mut head = 0;
    while head < subs.len() {
        let (set, gens) = subs[head].clone();
        head += 1;
        for (g, c) in &cyclic {
            if c.is_subset(&set) {
                continue;
            }
            let mut new_gens = gens.clone();
            new_gens.push(*g);
            let join = table.closure(&new_gens);
            if !found.contains_key(&join) {
                found.insert(join.clone(), subs.len());
                subs.push((join, new_gens));
            }
        }
    }

    let mut entries: Vec<(Vec<u32>, BitSet, Vec<usize>)> = subs
        .into_iter()
        .map(|(set, gens)| {
            let key: Vec<u32> = set.iter().map(|i| i as u32).collect();
            (key, set, gens)
        })
        .collect();
    entries.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));

    let members: Vec<BitSet> = entries.iter().map(|e| e.1.clone()).collect();
    let position: HashMap<&BitSet, usize> =
        members.iter().enumerate().map(|(i, m)| (m, i)).collect();

    // maximality by direct inclusion testing among proper subgroups
    let proper: Vec<bool> = members.iter().map(|m| m.len() < n).collect();
    let is_maximal: Vec<bool> = (0..members.len())
        .map(|i| {
            proper[i]
                && !(0..members.len()).any(|j| {
                    j != i
                        && proper[j]
                        && members[j].len() > members[i].len()
                        && members[i].is_subset(&members[j])
                })
        })
        .collect();

    // conjugacy classes of subgroups under the parent's generators
    let gen_indices: Vec<usize> = group
        .generators()
        .iter()
        .map(|g| table.index.index_of(g).expect("generator enumerated"))
        .collect();
    let mut class_id = vec![usize::MAX; members.len()];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for start in 0..members.len() {
        if class_id[start] != usize::MAX {
            continue;
        }
        let cid = classes.len();
        class_id[start] = cid;
        let mut class = vec![start];
        let mut h = 0;
        while h < class.len() {
            let r = class[h];
            h += 1;
            for &s in &gen_indices {
                let img = table.conjugate_set(&members[r], s);
                let j = position[&img];
                if class_id[j] == usize::MAX {
                    class_id[j] = cid;
                    class.push(j);
                }
            }
        }
        class.sort_unstable();
        classes.push(class);
    }

    let records = entries
        .iter()
        .enumerate()
        .map(|(i, (key, _, gens))| SubgroupRecord {
            generators: gens.iter().map(|&g| table.index.elements[g].clone()).collect(),
            order: BigUint::from(key.len()),
            element_key: key.clone(),
            is_maximal: is_maximal[i],
            conjugacy_class_id: class_id[i],
        })
        .collect();

    Ok(SubgroupLattice {
        parent: group.clone(),
        table,
        records,
        members,
        classes,
    })
}

pub fn maximal_subgroups(lattice: &SubgroupLattice) -> Vec<&SubgroupRecord> {
    lattice.records.iter().filter(|r| r.is_maximal).collect()
}

/// Record indices grouped by conjugacy, classes ordered by first member.
pub fn subgroup_conjugacy_classes(lattice: &SubgroupLattice) -> &[Vec<usize>] {
    &lattice.classes
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn group(n: usize, gens: &[&str]) -> PermGroup {
        PermGroup::new(
            n,
            gens.iter()
                .map(|g| Permutation::parse_cycles(n, g).unwrap())
                .collect(),
        )
        .unwrap()
    }

    /// Subgroups of S3 by testing all 64 subsets for closure.
    fn brute_subsets(g: &PermGroup) -> usize {
        let els = g.sorted_elements(100).unwrap();
        let n = els.len();
        assert!(n <= 12);
        (1u32..(1 << n))
            .filter(|mask| {
                let set: Vec<&Permutation> = (0..n).filter(|i| mask & (1 << i) != 0).map(|i| &els[i]).collect();
                set.iter().all(|a| set.iter().all(|b| set.contains(&&a.then(b))))
            })
            .count()
    }

    #[test]
    fn s3_lattice() {
        let s3 = group(3, &["(1 2)", "(1 2 3)"]);
        let l = all_subgroups(&s3, DEFAULT_LATTICE_CAP).unwrap();
        assert_eq!(l.len(), 6);
        assert_eq!(brute_subsets(&s3), 6);
        let orders: Vec<String> = l.records().iter().map(|r| r.order.to_string()).collect();
        assert_eq!(orders, ["1", "2", "2", "2", "3", "6"]);
    }

    #[test]
    fn c6_lattice() {
        let c6 = group(6, &["(1 2 3 4 5 6)"]);
        let l = all_subgroups(&c6, 100).unwrap();
        assert_eq!(l.len(), 4);
        assert_eq!(brute_subsets(&c6), 4);
    }

    #[test]
    fn s4_lattice_and_classes() {
        let s4 = group(4, &["(1 2)", "(1 2 3 4)"]);
        let l = all_subgroups(&s4, 100).unwrap();
        assert_eq!(l.len(), 30);
        let max: Vec<usize> = maximal_subgroups(&l)
            .iter()
            .map(|r| r.element_key.len())
            .collect();
        let mut counts = std::collections::BTreeMap::new();
        for m in max {
            *counts.entry(m).or_insert(0) += 1;
        }
        assert_eq!(counts, [(6, 4), (8, 3), (12, 1)].into_iter().collect());

        let classes = subgroup_conjugacy_classes(&l);
        let order4: Vec<&Vec<usize>> = classes
            .iter()
            .filter(|c| l.records()[c[0]].element_key.len() == 4)
            .collect();
        assert_eq!(order4.len(), 3);
        let d4_classes: Vec<&Vec<usize>> = classes
            .iter()
            .filter(|c| l.records()[c[0]].element_key.len() == 8)
            .collect();
        assert_eq!(d4_classes.len(), 1);
        assert_eq!(d4_classes[0].len(), 3);
        for c in classes {
            let norm = l.normalizer_order(c[0]);
            assert_eq!(c.len() * norm, 24);
        }
        let total: usize = classes.iter().map(|c| c.len()).sum();
        assert_eq!(total, l.len());
    }

    #[test]
    fn prime_cyclic_has_only_trivial_maximal() {
        let c7 = group(7, &["(1 2 3 4 5 6 7)"]);
        let l = all_subgroups(&c7, 100).unwrap();
        let m = maximal_subgroups(&l);
        assert_eq!(m.len(), 1);
        assert_eq!(m[0].element_key.len(), 1);
    }

    #[test]
    fn records_are_closed() {
        let g = group(5, &["(1 2 3 4 5)", "(2 3 5 4)"]);
        let l = all_subgroups(&g, 100).unwrap();
        let t = l.table();
        for i in 0..l.len() {
            let m = l.members(i);
            for a in m.iter() {
                assert!(m.contains(t.inv(a)));
                for b in m.iter() {
                    assert!(m.contains(t.mul(a, b)));
                }
            }
            let grp = l.group_of(i).unwrap();
            assert_eq!(grp.order(), &l.records()[i].order);
        }
    }

    #[test]
    fn cap_is_loud() {
        let s6 = group(6, &["(1 2)", "(1 2 3 4 5 6)"]);
        assert!(matches!(all_subgroups(&s6, 400), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn find_locates_subgroup() {
        let s4 = group(4, &["(1 2)", "(1 2 3 4)"]);
        let l = all_subgroups(&s4, 100).unwrap();
        let a4 = group(4, &["(1 2 3)", "(2 3 4)"]);
        let i = l.find(&a4).unwrap().unwrap();
        assert_eq!(l.records()[i].element_key.len(), 12);
        assert!(l.records()[i].is_maximal);
        let _: BTreeSet<u32> = l.records()[i].element_key.iter().copied().collect();
    }
}
