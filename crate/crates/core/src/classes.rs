use num_bigint::BigUint;

use crate::error::Result;
use crate::group::{ElementIndex, PermGroup};
use crate::perm::Permutation;

/// Conjugacy classes of an enumerable group.
///
/// Classes are ordered by their representative, which is the
/// lexicographically least element of the class.
#[derive(Clone, Debug)]
pub struct ConjugacyClassTable {
    pub representatives: Vec<Permutation>,
    pub sizes: Vec<BigUint>,
    /// Element indices (into `index.elements`) of each class, ascending.
    pub members: Vec<Vec<u32>>,
    /// Class of each element, by element index.
    pub class_of: Vec<u32>,
    pub index: ElementIndex,
}

impl ConjugacyClassTable {
    pub fn new(group: &PermGroup, cap: usize) -> Result<Self> {
        let index = group.element_index(cap)?;
        let n = index.len();
        let mut class_of = vec![u32::MAX; n];
        let mut representatives = Vec::new();
        let mut members = Vec::new();
        let gens = group.generators();
        for start in 0..n {
            if class_of[start] != u32::MAX {
                continue;
            }
            let cid = representatives.len() as u32;
            class_of[start] = cid;
            let mut class = vec![start as u32];
            let mut head = 0;
            while head < class.len() {
                let x = &index.elements[class[head] as usize];
                head += 1;
                for s in gens {
                    let y = x.conjugate_by(s);
                    let yi = index.index_of(&y).expect("group closed under conjugation");
                    if class_of[yi] == u32::MAX {
                        class_of[yi] = cid;
                        class.push(yi as u32);
                    }
                }
            }
            class.sort_unstable();
            representatives.push(index.elements[start].clone());
            members.push(class);
        }
        let sizes = members.iter().map(|m| BigUint::from(m.len())).collect();
        Ok(ConjugacyClassTable {
            representatives,
            sizes,
            members,
            class_of,
            index,
        })
    }

    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    pub fn class_of_element(&self, p: &Permutation) -> Option<usize> {
        self.index.index_of(p).map(|i| self.class_of[i] as usize)
    }

    pub fn members_of(&self, class: usize) -> impl Iterator<Item = &Permutation> {
        self.members[class]
            .iter()
            .map(|&i| &self.index.elements[i as usize])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_ENUMERATION_CAP;

    fn group(n: usize, gens: &[&str]) -> PermGroup {
        PermGroup::new(
            n,
            gens.iter()
                .map(|g| Permutation::parse_cycles(n, g).unwrap())
                .collect(),
        )
        .unwrap()
    }

    /// Class sizes by brute force: |{x^-1 g x : x in G}| for each g.
    fn brute_class_sizes(g: &PermGroup) -> Vec<usize> {
        let els = g.sorted_elements(1000).unwrap();
        let mut seen = std::collections::HashSet::new();
        let mut sizes = Vec::new();
        for e in &els {
            if seen.contains(e) {
                continue;
            }
            let class: std::collections::HashSet<_> =
                els.iter().map(|x| x.inverse().then(e).then(x)).collect();
            sizes.push(class.len());
            seen.extend(class);
        }
        sizes
    }

    #[test]
    fn s3_classes() {
        let g = group(3, &["(1 2)", "(1 2 3)"]);
        let t = g.conjugacy_classes(DEFAULT_ENUMERATION_CAP).unwrap();
        let sizes: Vec<usize> = t.members.iter().map(|m| m.len()).collect();
        assert_eq!(sizes, brute_class_sizes(&g));
        assert_eq!(sizes, vec![1, 3, 2]);
    }

    #[test]
    fn c6_is_abelian() {
        let g = group(6, &["(1 2 3 4 5 6)"]);
        let t = g.conjugacy_classes(100).unwrap();
        assert_eq!(t.len(), 6);
        assert!(t.members.iter().all(|m| m.len() == 1));
    }

    #[test]
    fn s4_classes() {
        let g = group(4, &["(1 2)", "(1 2 3 4)"]);
        let t = g.conjugacy_classes(100).unwrap();
        let mut sizes: Vec<usize> = t.members.iter().map(|m| m.len()).collect();
        let mut brute = brute_class_sizes(&g);
        sizes.sort_unstable();
        brute.sort_unstable();
        assert_eq!(sizes, brute);
        assert_eq!(sizes, vec![1, 3, 6, 6, 8]);
        for (rep, m) in t.representatives.iter().zip(&t.members) {
            assert!(t.members_of(t.class_of_element(rep).unwrap()).all(|x| x >= rep));
            assert_eq!(24 % m.len(), 0);
        }
    }
}
