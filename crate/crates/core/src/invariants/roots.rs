//! The E6, E7 and E8 root systems in the standard coordinates of R^8, with
//! exact half-integer arithmetic.
//!
//! Simple roots, Bourbaki numbering:
//!
//! ```text
//! a1 = (e1 + e8)/2 - (e2 + ... + e7)/2    a2 = e1 + e2
//! a3 = e2 - e1    a4 = e3 - e2    a5 = e4 - e3
//! a6 = e5 - e4    a7 = e6 - e5    a8 = e7 - e6
//! ```
//!
//! E8 is the closure of the simple roots under the simple reflections. E6
//! and E7 are the roots in the span of the first 6 or 7 simple roots, and
//! are also built by closure inside that span as a cross-check.

use std::collections::{BTreeSet, VecDeque};

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};

pub type Q = Ratio<i64>;
pub type Vec8 = [Q; 8];

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Root {
    pub coords: Vec8,
    /// Coefficients over the simple roots `a1, ..., a_l`.
    pub coefficients: Vec<i64>,
}

impl Root {
    pub fn is_positive(&self) -> bool {
        self.coefficients.iter().all(|&m| m >= 0)
    }

    pub fn coords_string(&self) -> String {
        let parts: Vec<String> = self.coords.iter().map(|q| q.to_string()).collect();
        format!("({})", parts.join(", "))
    }

    pub fn to_json(&self) -> Value {
        json!({"coords": self.coords_string(), "coefficients": self.coefficients})
    }
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    pub rank: usize,
    pub simple_roots: Vec<Vec8>,
    /// Sorted by coefficient vector.
    pub roots: Vec<Root>,
}

fn q(n: i64) -> Q {
    Q::from_integer(n)
}

fn half(n: i64) -> Q {
    Q::new(n, 2)
}

fn e(i: usize) -> Vec8 {
    let mut v = [Q::zero(); 8];
    v[i - 1] = Q::one();
    v
}

fn sub(a: &Vec8, b: &Vec8) -> Vec8 {
    std::array::from_fn(|i| a[i] - b[i])
}

fn add(a: &Vec8, b: &Vec8) -> Vec8 {
    std::array::from_fn(|i| a[i] + b[i])
}

fn scale(a: &Vec8, c: Q) -> Vec8 {
    std::array::from_fn(|i| a[i] * c)
}

pub fn dot(a: &Vec8, b: &Vec8) -> Q {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `v - 2 (v.a)/(a.a) a`.
pub fn reflect(v: &Vec8, a: &Vec8) -> Vec8 {
    let c = q(2) * dot(v, a) / dot(a, a);
    sub(v, &scale(a, c))
}

pub fn e8_simple_roots() -> Vec<Vec8> {
    let mut a1 = [half(-1); 8];
    a1[0] = half(1);
    a1[7] = half(1);
    let mut out = vec![a1, add(&e(1), &e(2))];
    for k in 1..=6 {
        out.push(sub(&e(k + 1), &e(k)));
    }
    out
}

/// Solves `v = sum m_i a_i` exactly over the rationals.
fn solve_coefficients(simple: &[Vec8], v: &Vec8) -> Option<Vec<Q>> {
    let l = simple.len();
    // augmented 8 x (l + 1) system: columns are simple roots
    let mut m: Vec<Vec<Q>> = (0..8)
        .map(|r| {
            let mut row: Vec<Q> = simple.iter().map(|a| a[r]).collect();
            row.push(v[r]);
            row
        })
        .collect();
    let mut pivot_row = 0;
    let mut pivots = Vec::new();
    for col in 0..l {
        let Some(r) = (pivot_row..8).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(pivot_row, r);
        let inv = m[pivot_row][col].recip();
        for x in m[pivot_row].iter_mut() {
            *x *= inv;
        }
        for r2 in 0..8 {
            if r2 != pivot_row && !m[r2][col].is_zero() {
                let f = m[r2][col];
                let pr = m[pivot_row].clone();
                for (x, y) in m[r2].iter_mut().zip(&pr) {
                    *x -= f * y;
                }
            }
        }
        pivots.push(col);
        pivot_row += 1;
    }
    if pivots.len() != l || (pivot_row..8).any(|r| !m[r][l].is_zero()) {
        return None;
    }
    Some((0..l).map(|i| m[i][l]).collect())
}

fn closure(simple: &[Vec8]) -> BTreeSet<Vec8> {
    let mut seen: BTreeSet<Vec8> = simple.iter().cloned().collect();
    let mut queue: VecDeque<Vec8> = simple.iter().cloned().collect();
    while let Some(v) = queue.pop_front() {
        for a in simple {
            let w = reflect(&v, a);
            if seen.insert(w) {
                queue.push_back(w);
            }
        }
    }
    seen
}

fn with_coefficients(simple: &[Vec8], set: &BTreeSet<Vec8>) -> Result<Vec<Root>> {
    let mut roots = set
        .iter()
        .map(|v| {
            let c = solve_coefficients(simple, v)
                .ok_or_else(|| Error::InvariantViolation("root outside the span".into()))?;
            let ints = c
                .iter()
                .map(|x| x.is_integer().then(|| x.to_integer()))
                .collect::<Option<Vec<i64>>>()
                .ok_or_else(|| Error::InvariantViolation("non-integral root coefficient".into()))?;
            Ok(Root {
                coords: *v,
                coefficients: ints,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    roots.sort_by(|a, b| a.coefficients.cmp(&b.coefficients));
    Ok(roots)
}

/// E_l for `l` in 6, 7, 8. Errors if the closure and the span restriction
/// disagree.
pub fn build_root_system(rank: usize) -> Result<RootSystem> {
    if !(6..=8).contains(&rank) {
        return Err(Error::InvalidInput(format!("E{rank} is not one of E6, E7, E8")));
    }
    let all_simple = e8_simple_roots();
    let e8 = with_coefficients(&all_simple, &closure(&all_simple))?;
    let restricted: Vec<Root> = e8
        .into_iter()
        .filter(|r| r.coefficients[rank..].iter().all(|&m| m == 0))
        .map(|r| Root {
            coords: r.coords,
            coefficients: r.coefficients[..rank].to_vec(),
        })
        .collect();
    let simple = all_simple[..rank].to_vec();
    let direct = with_coefficients(&simple, &closure(&simple))?;
    if direct != restricted {
        return Err(Error::InvariantViolation(format!(
            "E{rank}: closure gives {} roots, span restriction gives {}",
            direct.len(),
            restricted.len()
        )));
    }
    for r in &direct {
        if dot(&r.coords, &r.coords) != q(2) {
            return Err(Error::InvariantViolation(format!("root {} has norm != 2", r.coords_string())));
        }
        let recon = r
            .coefficients
            .iter()
            .zip(&simple)
            .fold([Q::zero(); 8], |acc, (&m, a)| add(&acc, &scale(a, q(m))));
        if recon != r.coords {
            return Err(Error::InvariantViolation("coefficient expansion mismatch".into()));
        }
    }
    Ok(RootSystem {
        rank,
        simple_roots: simple,
        roots: direct,
    })
}

impl RootSystem {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn positive_roots(&self) -> impl Iterator<Item = &Root> {
        self.roots.iter().filter(|r| r.is_positive())
    }

    pub fn contains(&self, v: &Vec8) -> bool {
        self.roots.iter().any(|r| &r.coords == v)
    }

    pub fn is_negation_closed(&self) -> bool {
        self.roots.iter().all(|r| self.contains(&scale(&r.coords, q(-1))))
    }

    pub fn is_reflection_closed(&self) -> bool {
        self.roots
            .iter()
            .all(|r| self.simple_roots.iter().all(|a| self.contains(&reflect(&r.coords, a))))
    }

    /// Every root has all coefficients of one sign.
    pub fn coefficients_are_sign_coherent(&self) -> bool {
        self.roots.iter().all(|r| {
            r.coefficients.iter().all(|&m| m >= 0) || r.coefficients.iter().all(|&m| m <= 0)
        })
    }
}

/// Index that the reference argument names as its conclusion for each rank.
pub fn reference_index(rank: usize) -> usize {
    match rank {
        8 => 6,
        7 => 7,
        _ => 6,
    }
}

#[derive(Clone, Debug)]
pub struct RootFilterReport {
    pub rank: usize,
    pub total_roots: usize,
    /// Roots with `m_l > 0` and `m_{l-1} = 0`.
    pub filtered: Vec<Root>,
    pub equals_last_simple_root: bool,
    pub reference_index: usize,
    pub equals_reference_root: bool,
}

impl RootFilterReport {
    pub fn mismatch_flag(&self) -> Option<String> {
        (self.equals_last_simple_root != self.equals_reference_root).then(|| {
            format!(
                "filtered set is {{a{}}}, reference index is {}",
                if self.equals_last_simple_root { self.rank } else { 0 },
                self.reference_index
            )
        })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "rank": self.rank,
            "total_roots": self.total_roots,
            "filtered": self.filtered.iter().map(Root::to_json).collect::<Vec<_>>(),
            "equals_last_simple_root": self.equals_last_simple_root,
            "reference_index": self.reference_index,
            "equals_reference_root": self.equals_reference_root,
            "flag": self.mismatch_flag(),
        })
    }
}

pub fn verify_lemma_3_1(system: &RootSystem) -> RootFilterReport {
    let l = system.rank;
    let filtered: Vec<Root> = system
        .roots
        .iter()
        .filter(|r| r.coefficients[l - 1] > 0 && r.coefficients[l - 2] == 0)
        .cloned()
        .collect();
    let is_simple = |k: usize| filtered.len() == 1 && filtered[0].coords == system.simple_roots[k - 1];
    let reference = reference_index(l);
    RootFilterReport {
        rank: l,
        total_roots: system.len(),
        equals_last_simple_root: is_simple(l),
        reference_index: reference,
        equals_reference_root: is_simple(reference),
        filtered,
    }
}

/// The positive root of greatest height.
pub fn highest_root(system: &RootSystem) -> Option<&Root> {
    system
        .positive_roots()
        .max_by_key(|r| r.coefficients.iter().map(|m| m.abs()).sum::<i64>())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::lie::{lie_params, LieFamily};

    #[test]
    fn counts() {
        for (l, n, fam) in [(6, 72, LieFamily::E6), (7, 126, LieFamily::E7), (8, 240, LieFamily::E8)] {
            let s = build_root_system(l).unwrap();
            assert_eq!(s.len(), n);
            assert_eq!(s.positive_roots().count() as u64, lie_params(fam, None).unwrap().e);
            assert!(s.is_negation_closed());
            assert!(s.is_reflection_closed());
            assert!(s.coefficients_are_sign_coherent());
        }
        assert!(build_root_system(5).is_err());
    }

    #[test]
    fn highest_root_of_e8() {
        let s = build_root_system(8).unwrap();
        assert_eq!(highest_root(&s).unwrap().coefficients, vec![2, 3, 4, 6, 5, 4, 3, 2]);
    }

    #[test]
    fn e8_roots_by_shape() {
        // 112 of shape (+-1, +-1, 0^6) and 128 of shape (+-1/2)^8 with an even number of minus signs
        let s = build_root_system(8).unwrap();
        let integral = s.roots.iter().filter(|r| r.coords.iter().all(|x| x.is_integer())).count();
        assert_eq!(integral, 112);
        for r in &s.roots {
            if !r.coords[0].is_integer() {
                assert!(r.coords.iter().all(|x| x.abs() == half(1)));
                assert_eq!(r.coords.iter().filter(|x| x.is_negative()).count() % 2, 0);
            }
        }
    }

    #[test]
    fn filter() {
        for l in 6..=8 {
            let s = build_root_system(l).unwrap();
            let rep = verify_lemma_3_1(&s);
            assert!(rep.equals_last_simple_root, "E{l}");
            assert_eq!(rep.filtered[0].coefficients.iter().sum::<i64>(), 1);
        }
        let rep = verify_lemma_3_1(&build_root_system(8).unwrap());
        assert!(!rep.equals_reference_root);
        assert!(rep.mismatch_flag().is_some());
        assert!(verify_lemma_3_1(&build_root_system(7).unwrap()).mismatch_flag().is_none());
    }
}
