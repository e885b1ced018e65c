//! Coset enumeration by the HLT strategy with immediate coincidence
//! processing.

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;

use super::presentation::{Presentation, Word};

pub const DEFAULT_COSET_CAP: usize = 100_000;

const NONE: usize = usize::MAX;

/// A completed coset table in standard order: coset 0 is the subgroup and
/// the others are numbered by first appearance scanning cosets in order and
/// columns `g1, g1^-1, g2, g2^-1, ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    pub generators: Vec<String>,
    /// `rows[c][2 g]` is `c g`, `rows[c][2 g + 1]` is `c g^-1`.
    pub rows: Vec<Vec<usize>>,
    /// Cosets defined during enumeration, including ones later merged.
    pub cosets_defined: usize,
}

impl CosetTable {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Every generator acts trivially, so the subgroup is the whole group.
    pub fn is_collapsed(&self) -> bool {
        self.rows.len() == 1
    }

    pub fn generator_permutations(&self) -> Vec<Permutation> {
        (0..self.generators.len())
            .map(|g| {
                Permutation::from_images(self.rows.iter().map(|r| r[2 * g]).collect())
                    .expect("complete tables give bijections")
            })
            .collect()
    }

    pub fn permutation_group(&self) -> Result<PermGroup> {
        PermGroup::new(self.rows.len(), self.generator_permutations())
    }
}

#[inline]
fn column(letter: i32) -> usize {
    let g = (letter.unsigned_abs() - 1) as usize;
    2 * g + usize::from(letter < 0)
}

struct Enumerator {
    cols: usize,
    table: Vec<Vec<usize>>,
    parent: Vec<usize>,
    cap: usize,
    queue: Vec<usize>,
}

impl Enumerator {
    fn new(ngens: usize, cap: usize) -> Self {
        Enumerator {
            cols: 2 * ngens,
            table: vec![vec![NONE; 2 * ngens]],
            parent: vec![0],
            cap,
            queue: Vec::new(),
        }
    }

    fn alive(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn define(&mut self, c: usize, x: usize) -> Result<()> {
        if self.table.len() >= self.cap {
            return Err(Error::cap("coset enumeration", format!("more than {}", self.cap), self.cap));
        }
        let d = self.table.len();
        self.table.push(vec![NONE; self.cols]);
        self.parent.push(d);
        self.table[c][x] = d;
        self.table[d][x ^ 1] = c;
        Ok(())
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut r = c;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut s = c;
        while self.parent[s] != r {
            let next = self.parent[s];
            self.parent[s] = r;
            s = next;
        }
        r
    }

    fn merge(&mut self, a: usize, b: usize) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (keep, drop) = (a.min(b), a.max(b));
        self.parent[drop] = keep;
        self.queue.push(drop);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let e = self.queue[i];
            i += 1;
            for x in 0..self.cols {
                let f = self.table[e][x];
                if f == NONE {
                    continue;
                }
                self.table[f][x ^ 1] = NONE;
                let e1 = self.rep(e);
                let f1 = self.rep(f);
                if self.table[e1][x] != NONE {
                    let t = self.table[e1][x];
                    self.merge(f1, t);
                } else if self.table[f1][x ^ 1] != NONE {
                    let t = self.table[f1][x ^ 1];
                    self.merge(e1, t);
                } else {
                    self.table[e1][x] = f1;
                    self.table[f1][x ^ 1] = e1;
                }
            }
        }
    }

    /// Traces `w` from `c` forwards and backwards, defining cosets to close
    /// the gap, and records the resulting deduction or coincidence.
    fn scan_and_fill(&mut self, c: usize, w: &[usize]) -> Result<()> {
        if w.is_empty() {
            return Ok(());
        }
        let (mut f, mut b) = (c, c);
        let mut i = 0usize;
        let mut j = w.len() as isize - 1;
        loop {
            while (i as isize) <= j && self.table[f][w[i]] != NONE {
                f = self.table[f][w[i]];
                i += 1;
            }
            if (i as isize) > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i as isize && self.table[b][w[j as usize] ^ 1] != NONE {
                b = self.table[b][w[j as usize] ^ 1];
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i as isize {
                self.table[f][w[i]] = b;
                self.table[b][w[i] ^ 1] = f;
                return Ok(());
            }
            self.define(f, w[i])?;
        }
    }

    fn standardize(&self) -> Vec<Vec<usize>> {
        let mut order = vec![0usize];
        let mut label = vec![NONE; self.table.len()];
        label[0] = 0;
        let mut k = 0;
        while k < order.len() {
            let c = order[k];
            k += 1;
            for x in 0..self.cols {
                let d = self.table[c][x];
                if label[d] == NONE {
                    label[d] = order.len();
                    order.push(d);
                }
            }
        }
        order
            .iter()
            .map(|&c| self.table[c].iter().map(|&d| label[d]).collect())
            .collect()
    }
}

/// Enumerates the cosets of the subgroup generated by `subgroup` in the
/// group presented by `pr`.
pub fn todd_coxeter(pr: &Presentation, subgroup: &[Word], cap: usize) -> Result<CosetTable> {
    let ngens = pr.generators.len();
    if ngens == 0 {
        return Err(Error::InvalidInput("presentation has no generators".into()));
    }
    let to_cols = |w: &Word| -> Result<Vec<usize>> {
        w.iter()
            .map(|&x| {
                if x == 0 || x.unsigned_abs() as usize > ngens {
                    Err(Error::InvalidInput(format!("letter {x} is not a generator")))
                } else {
                    Ok(column(x))
                }
            })
            .collect()
    };
    let relators = pr.relators.iter().map(to_cols).collect::<Result<Vec<_>>>()?;
    let subgens = subgroup.iter().map(to_cols).collect::<Result<Vec<_>>>()?;
    let mut en = Enumerator::new(ngens, cap.max(1));
    for w in &subgens {
        en.scan_and_fill(0, w)?;
    }
    let mut c = 0;
    while c < en.table.len() {
        if en.alive(c) {
            for r in &relators {
                en.scan_and_fill(c, r)?;
                if !en.alive(c) {
                    break;
                }
            }
            if en.alive(c) {
                for x in 0..en.cols {
                    if en.table[c][x] == NONE {
                        en.define(c, x)?;
                    }
                }
            }
        }
        c += 1;
    }
    Ok(CosetTable {
        generators: pr.generators.clone(),
        rows: en.standardize(),
        cosets_defined: en.table.len(),
    })
}

/// The permutation group induced on the cosets, with its order checked
/// against the number of cosets: equal for the trivial subgroup, a multiple
/// otherwise.
pub fn coset_permutation_group(
    pr: &Presentation,
    subgroup: &[Word],
    cap: usize,
) -> Result<(CosetTable, PermGroup)> {
    let table = todd_coxeter(pr, subgroup, cap)?;
    let group = table.permutation_group()?;
    let n = num_bigint::BigUint::from(table.len());
    let consistent = if subgroup.iter().all(|w| w.is_empty()) {
        *group.order() == n
    } else {
        (group.order() % &n) == num_bigint::BigUint::from(0u32)
    };
    if !consistent {
        return Err(Error::InvariantViolation(format!(
            "{} cosets but the induced group has order {}",
            table.len(),
            group.order()
        )));
    }
    Ok((table, group))
}

/// Evaluates a word on permutations of the presentation's generators.
pub fn evaluate_word(w: &[i32], images: &[Permutation]) -> Result<Permutation> {
    let degree = images
        .first()
        .map(|p| p.degree())
        .ok_or_else(|| Error::InvalidInput("no generator images".into()))?;
    let mut acc = Permutation::identity(degree);
    for &x in w {
        let g = images
            .get((x.unsigned_abs() - 1) as usize)
            .ok_or_else(|| Error::InvalidInput(format!("letter {x} is not a generator")))?;
        acc = if x > 0 { acc.then(g) } else { acc.then(&g.inverse()) };
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pres(t: &str) -> Presentation {
        Presentation::parse(t).unwrap()
    }

    #[test]
    fn s3() {
        let p = pres("gens: a, b; rels: a^2, b^2, (ab)^3");
        let (t, g) = coset_permutation_group(&p, &[], DEFAULT_COSET_CAP).unwrap();
        assert_eq!(t.len(), 6);
        assert_eq!(g.order_usize(), Some(6));
        for r in &p.relators {
            assert!(evaluate_word(r, g.generators()).unwrap().is_identity());
        }
    }

    #[test]
    fn regular_action_has_no_fixed_points() {
        let p = pres("gens: a, b; rels: a^4, b^2, (ab)^2");
        let (_, g) = coset_permutation_group(&p, &[], DEFAULT_COSET_CAP).unwrap();
        assert_eq!(g.order_usize(), Some(8));
        for x in g.elements(100).unwrap() {
            assert!(x.is_identity() || x.fixed_point_count() == 0);
        }
    }

    #[test]
    fn cyclic_and_subgroups() {
        let p = pres("gens: a; rels: a^6");
        assert_eq!(todd_coxeter(&p, &[], 100).unwrap().len(), 6);
        let sub = p.parse_word("a^2").unwrap();
        let t = todd_coxeter(&p, &[sub], 100).unwrap();
        assert_eq!(t.len(), 2);
        let all = p.parse_word("a").unwrap();
        assert!(todd_coxeter(&p, &[all], 100).unwrap().is_collapsed());
    }

    #[test]
    fn coincidences_are_processed() {
        // a^3 = 1 and a^5 = 1 force a = 1
        let p = pres("gens: a, b; rels: a^3, a^5, b^2");
        let t = todd_coxeter(&p, &[], 1000).unwrap();
        assert_eq!(t.len(), 2);
    }

    #[test]
    fn free_group_overflows() {
        let p = pres("gens: a; rels:");
        assert!(matches!(todd_coxeter(&p, &[], 1000), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn standard_numbering_is_deterministic() {
        let p = pres("gens: a, b; rels: a^2, b^3, (ab)^5");
        let t1 = todd_coxeter(&p, &[], DEFAULT_COSET_CAP).unwrap();
        let t2 = todd_coxeter(&p, &[], DEFAULT_COSET_CAP).unwrap();
        assert_eq!(t1, t2);
        assert_eq!(t1.len(), 60);
    }
}
