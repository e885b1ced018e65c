//! Linear and affine groups as permutation groups.

use std::sync::Arc;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Pow, Zero};

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;

use super::field::Field;
use super::matrix::{
    decode_vector, encode_vector, mat_rank_image_kernel, space_size, MatrixFp, SubspaceFp,
};

/// Largest space searched vector by vector in irreducibility tests.
pub const DEFAULT_SPIN_CAP: usize = 1 << 20;

/// Largest number of candidate matrices scanned when listing a linear group.
pub const DEFAULT_MATRIX_SCAN_CAP: usize = 1 << 20;

/// Every matrix of GL_d(q), in the order of their entry codes.
pub fn enumerate_gl(field: &Arc<Field>, d: usize, cap: usize) -> Result<Vec<MatrixFp>> {
    let q = field.order() as usize;
    let total = q
        .checked_pow((d * d) as u32)
        .filter(|&t| t <= cap)
        .ok_or_else(|| Error::cap("matrix scan", format!("{q}^{}", d * d), cap))?;
    let mut out = Vec::new();
    for code in 0..total {
        let entries = decode_vector(field, d * d, code);
        let m = MatrixFp::new(field.clone(), d, entries)?;
        if m.is_invertible() {
            out.push(m);
        }
    }
    Ok(out)
}

/// |GL_d(q)| from the order formula.
pub fn gl_order(q: u64, d: u32) -> BigUint {
    let qb = BigUint::from(q);
    let mut total = BigUint::one();
    for i in 0..d {
        total *= Pow::pow(&qb, d) - Pow::pow(&qb, i);
    }
    total
}

/// Generators of GL_d(q): the elementary transvections `I + a E_ij` for `a`
/// running over a basis of F_q over F_p, then `diag(w, 1, ..., 1)` with `w`
/// the least primitive element.
pub fn gl_generators(field: &Arc<Field>, d: usize) -> Vec<MatrixFp> {
    let mut gens = Vec::new();
    for i in 0..d {
        for j in 0..d {
            if i == j {
                continue;
            }
            for k in 0..field.degree() {
                let mut m = MatrixFp::identity(field.clone(), d).entries().to_vec();
                m[i * d + j] = field.basis_element(k);
                gens.push(MatrixFp::new(field.clone(), d, m).expect("valid entries"));
            }
        }
    }
    let w = field.primitive_element();
    if w != 1 && d > 0 {
        let mut m = MatrixFp::identity(field.clone(), d).entries().to_vec();
        m[0] = w;
        gens.push(MatrixFp::new(field.clone(), d, m).expect("valid entries"));
    }
    gens
}

/// Linear group generated by `gens`, acting on all `q^d` vectors.
pub fn linear_group(field: &Arc<Field>, d: usize, gens: &[MatrixFp], cap: usize) -> Result<PermGroup> {
    let n = space_size(field, d, cap)?;
    let perms = gens
        .iter()
        .map(|g| g.to_permutation(cap))
        .collect::<Result<Vec<_>>>()?;
    PermGroup::new(n, perms)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Irreducibility {
    Irreducible,
    /// A proper nonzero invariant subspace: the span of the orbit of the
    /// first vector whose spin stays proper.
    Reducible { witness: SubspaceFp },
}

impl Irreducibility {
    pub fn is_irreducible(&self) -> bool {
        matches!(self, Irreducibility::Irreducible)
    }
}

/// Spins every nonzero vector under `gens`; irreducible when each spin
/// fills the whole space.
pub fn is_irreducible(
    field: &Arc<Field>,
    d: usize,
    gens: &[MatrixFp],
    cap: usize,
) -> Result<Irreducibility> {
    let n = space_size(field, d, cap)?;
    for g in gens {
        if g.dim() != d || g.field() != field {
            return Err(Error::InvalidInput(format!("{g} is not in GL_{d}")));
        }
    }
    for idx in 1..n {
        let v = decode_vector(field, d, idx);
        let mut span = SubspaceFp::span(field.clone(), d, vec![v.clone()]);
        let mut queue = vec![v];
        while let Some(w) = queue.pop() {
            if span.dimension() == d {
                break;
            }
            for g in gens {
                let img = g.act(&w);
                if !span.contains(&img) {
                    span = span.with_vector(&img);
                    queue.push(img);
                }
            }
        }
        if span.dimension() < d {
            return Ok(Irreducibility::Reducible { witness: span });
        }
    }
    Ok(Irreducibility::Irreducible)
}

/// V:H on the `p^d` vectors, with its labelled pieces.
#[derive(Clone, Debug)]
pub struct AffineGroup {
    pub field: Arc<Field>,
    pub dim: usize,
    /// Generated by the basis translations followed by the linear generators.
    pub group: PermGroup,
    pub translations: PermGroup,
    pub linear: PermGroup,
    pub linear_generators: Vec<MatrixFp>,
}

impl AffineGroup {
    pub fn degree(&self) -> usize {
        self.group.degree()
    }

    /// Translation by `u` as a permutation of the vectors.
    pub fn translation(&self, u: &[u32]) -> Permutation {
        let n = self.group.degree();
        let images = (0..n)
            .map(|i| {
                let w = decode_vector(&self.field, self.dim, i);
                let s: Vec<u32> = w.iter().zip(u).map(|(&a, &b)| self.field.add(a, b)).collect();
                encode_vector(&self.field, &s)
            })
            .collect();
        Permutation::from_images(images).expect("translations are bijective")
    }
}

/// The affine group V:H for `H = <h_generators>` over a prime field.
pub fn affine_group(
    field: &Arc<Field>,
    d: usize,
    h_generators: &[MatrixFp],
    cap: usize,
) -> Result<AffineGroup> {
    if field.degree() != 1 {
        return Err(Error::InvalidInput("affine groups are built over prime fields".into()));
    }
    let n = space_size(field, d, cap)?;
    let linear_perms = h_generators
        .iter()
        .map(|g| {
            if g.dim() != d {
                return Err(Error::InvalidInput(format!("{g} is not {d}x{d}")));
            }
            g.to_permutation(cap)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut partial = AffineGroup {
        field: field.clone(),
        dim: d,
        group: PermGroup::trivial(n),
        translations: PermGroup::trivial(n),
        linear: PermGroup::new(n, linear_perms.clone())?,
        linear_generators: h_generators.to_vec(),
    };
    let trans: Vec<Permutation> = (0..d)
        .map(|i| {
            let mut e = vec![0; d];
            e[i] = 1;
            partial.translation(&e)
        })
        .collect();
    partial.translations = PermGroup::new(n, trans.clone())?;
    let mut gens = trans;
    gens.extend(linear_perms);
    partial.group = PermGroup::new(n, gens)?;
    let stab = partial.group.pointwise_stabilizer(&[0])?;
    if stab.order() != partial.linear.order() {
        return Err(Error::InvariantViolation(format!(
            "stabilizer of 0 has order {}, linear group has order {}",
            stab.order(),
            partial.linear.order()
        )));
    }
    Ok(partial)
}

/// Outcome of the fixed-space congruence test for one element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FixedSpaceStatus {
    HypothesisUnmet { reason: String },
    Checked {
        element_order: u64,
        /// Dimension of the fixed space over F_q.
        fixed_dim: usize,
        space_dim: usize,
        holds: bool,
    },
}

/// For `g` in GL_n(q) with `|g|` dividing `q^e - 1` and prime to `q^i - 1`
/// for `1 <= i < e`, checks `dim C_V(g) = n (mod e)`. The fixed space is
/// computed over F_p through the regular embedding and divided by f.
pub fn check_fixed_space_congruence(g: &MatrixFp, e: u32) -> Result<FixedSpaceStatus> {
    if e == 0 {
        return Err(Error::InvalidInput("e must be positive".into()));
    }
    let field = g.field();
    let q = BigUint::from(field.order());
    let order = g.order()?;
    let ord = BigUint::from(order);
    let qe_minus_1: BigUint = Pow::pow(&q, e) - 1u32;
    if !(&qe_minus_1 % &ord).is_zero() {
        return Ok(FixedSpaceStatus::HypothesisUnmet {
            reason: format!("order {order} does not divide q^{e} - 1"),
        });
    }
    for i in 1..e {
        let qi: BigUint = Pow::pow(&q, i) - 1u32;
        if !ord.gcd(&qi).is_one() {
            return Ok(FixedSpaceStatus::HypothesisUnmet {
                reason: format!("order {order} shares a factor with q^{i} - 1"),
            });
        }
    }
    let prime = Field::prime(field.p())?;
    let embedded = g.embed_in_prime_field(&prime)?;
    let (_, _, ker_p) = mat_rank_image_kernel(&embedded, true);
    let (_, _, ker_q) = mat_rank_image_kernel(g, true);
    let f = field.degree() as usize;
    if ker_p.dimension() != f * ker_q.dimension() {
        return Err(Error::InvariantViolation(format!(
            "fixed space of {g} has F_p-dimension {} but F_q-dimension {}",
            ker_p.dimension(),
            ker_q.dimension()
        )));
    }
    let fixed_dim = ker_p.dimension() / f;
    let n = g.dim();
    Ok(FixedSpaceStatus::Checked {
        element_order: order,
        fixed_dim,
        space_dim: n,
        holds: fixed_dim % e as usize == n % e as usize,
    })
}

/// Tally of an exhaustive congruence sweep.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CongruenceSweep {
    pub elements: usize,
    pub hypothesis_cases: usize,
    pub failures: Vec<(MatrixFp, u32)>,
}

/// Runs the congruence test on every element of GL_n(q) and every
/// `1 <= e <= max_e`.
pub fn sweep_fixed_space_congruence(
    field: &Arc<Field>,
    n: usize,
    max_e: u32,
    cap: usize,
) -> Result<CongruenceSweep> {
    let mut out = CongruenceSweep::default();
    for g in enumerate_gl(field, n, cap)? {
        out.elements += 1;
        for e in 1..=max_e {
            if let FixedSpaceStatus::Checked { holds, .. } = check_fixed_space_congruence(&g, e)? {
                out.hypothesis_cases += 1;
                if !holds {
                    out.failures.push((g.clone(), e));
                }
            }
        }
    }
    Ok(out)
}

/// Parses a matrix file: a `p d` header, then `d` rows of `d` integers.
pub fn parse_matrix_file(text: &str) -> Result<Vec<MatrixFp>> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hno, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, 1, "expected `p d` header"))?;
    let nums: Vec<u32> = header
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| Error::parse(hno, 1, format!("bad header {header:?}"))))
        .collect::<Result<_>>()?;
    let [p, d] = nums[..] else {
        return Err(Error::parse(hno, 1, "header must be `p d`"));
    };
    let field = Field::prime(p).map_err(|e| Error::parse(hno, 1, e.to_string()))?;
    let d = d as usize;
    let mut rows: Vec<Vec<i64>> = Vec::new();
    let mut out = Vec::new();
    for (no, line) in lines {
        let row: Vec<i64> = line
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| t.parse().map_err(|_| Error::parse(no, 1, format!("bad entry {t:?}"))))
            .collect::<Result<_>>()?;
        if row.len() != d {
            return Err(Error::parse(no, 1, format!("expected {d} entries, found {}", row.len())));
        }
        rows.push(row);
        if rows.len() == d {
            out.push(MatrixFp::from_rows(field.clone(), &rows)?);
            rows.clear();
        }
    }
    if !rows.is_empty() {
        return Err(Error::parse(0, 1, "incomplete matrix at end of file"));
    }
    Ok(out)
}

/// Largest `k` with `p^k` dividing `n`.
pub(crate) fn big_valuation(n: &BigUint, p: u32) -> u32 {
    if n.is_zero() {
        return 0;
    }
    let mut m = n.clone();
    let mut k = 0;
    let pb = BigUint::from(p);
    while (&m % &pb).is_zero() {
        m /= &pb;
        k += 1;
    }
    k
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::actions::is_primitive;

    fn f(p: u32) -> Arc<Field> {
        Field::prime(p).unwrap()
    }

    #[test]
    fn gl_sizes_match_formula() {
        for (p, d) in [(2u32, 2usize), (3, 2), (2, 3)] {
            let all = enumerate_gl(&f(p), d, DEFAULT_MATRIX_SCAN_CAP).unwrap();
            assert_eq!(BigUint::from(all.len()), gl_order(p as u64, d as u32));
            let g = linear_group(&f(p), d, &gl_generators(&f(p), d), 1 << 12).unwrap();
            assert_eq!(g.order(), &gl_order(p as u64, d as u32));
        }
        let f4 = Field::extension(2, 2).unwrap();
        let g = linear_group(&f4, 2, &gl_generators(&f4, 2), 1 << 12).unwrap();
        assert_eq!(g.order_usize(), Some(180));
    }

    #[test]
    fn irreducibility() {
        let f2 = f(2);
        assert!(is_irreducible(&f2, 2, &gl_generators(&f2, 2), DEFAULT_SPIN_CAP)
            .unwrap()
            .is_irreducible());
        let f3 = f(3);
        let diag = vec![
            MatrixFp::from_rows(f3.clone(), &[vec![2, 0], vec![0, 1]]).unwrap(),
            MatrixFp::from_rows(f3.clone(), &[vec![1, 0], vec![0, 2]]).unwrap(),
        ];
        match is_irreducible(&f3, 2, &diag, DEFAULT_SPIN_CAP).unwrap() {
            Irreducibility::Reducible { witness } => assert_eq!(witness.basis(), &[vec![1, 0]]),
            Irreducibility::Irreducible => panic!("diagonal group is reducible"),
        }
        let f5 = f(5);
        let units = vec![MatrixFp::from_rows(f5.clone(), &[vec![2]]).unwrap()];
        assert!(is_irreducible(&f5, 1, &units, DEFAULT_SPIN_CAP).unwrap().is_irreducible());
        assert!(matches!(
            is_irreducible(&f2, 21, &[], DEFAULT_SPIN_CAP),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn affine_groups() {
        let f5 = f(5);
        let a = affine_group(&f5, 1, &[MatrixFp::from_rows(f5.clone(), &[vec![2]]).unwrap()], 1 << 10)
            .unwrap();
        assert_eq!(a.group.order_usize(), Some(20));
        let f2 = f(2);
        let s4 = affine_group(&f2, 2, &gl_generators(&f2, 2), 1 << 10).unwrap();
        assert_eq!(s4.group.order_usize(), Some(24));
        assert!(is_primitive(&s4.group).unwrap().is_primitive());
        let f3 = f(3);
        let c3 = affine_group(&f3, 1, &[], 1 << 10).unwrap();
        assert_eq!(c3.group.order_usize(), Some(3));
        assert!(c3.group.is_transitive());
    }

    #[test]
    fn primitive_iff_irreducible_small() {
        let f3 = f(3);
        let diag = vec![
            MatrixFp::from_rows(f3.clone(), &[vec![2, 0], vec![0, 1]]).unwrap(),
            MatrixFp::from_rows(f3.clone(), &[vec![1, 0], vec![0, 2]]).unwrap(),
        ];
        let a = affine_group(&f3, 2, &diag, 1 << 10).unwrap();
        assert!(!is_primitive(&a.group).unwrap().is_primitive());
        let full = affine_group(&f3, 2, &gl_generators(&f3, 2), 1 << 10).unwrap();
        assert!(is_primitive(&full.group).unwrap().is_primitive());
    }

    #[test]
    fn congruence_examples() {
        let f2 = f(2);
        let g = MatrixFp::from_rows(f2.clone(), &[vec![0, 1], vec![1, 1]]).unwrap();
        assert_eq!(
            check_fixed_space_congruence(&g, 2).unwrap(),
            FixedSpaceStatus::Checked {
                element_order: 3,
                fixed_dim: 0,
                space_dim: 2,
                holds: true
            }
        );
        let id = MatrixFp::identity(f2.clone(), 2);
        assert!(matches!(
            check_fixed_space_congruence(&id, 1).unwrap(),
            FixedSpaceStatus::Checked { holds: true, fixed_dim: 2, .. }
        ));
        assert!(matches!(
            check_fixed_space_congruence(&g, 1).unwrap(),
            FixedSpaceStatus::HypothesisUnmet { .. }
        ));
    }

    #[test]
    fn congruence_sweeps() {
        for (p, n) in [(2u32, 2usize), (3, 2), (2, 3)] {
            let s = sweep_fixed_space_congruence(&f(p), n, 8, DEFAULT_MATRIX_SCAN_CAP).unwrap();
            assert!(s.failures.is_empty());
            assert!(s.hypothesis_cases > 0);
        }
        let f4 = Field::extension(2, 2).unwrap();
        let s = sweep_fixed_space_congruence(&f4, 2, 6, DEFAULT_MATRIX_SCAN_CAP).unwrap();
        assert_eq!(s.elements, 180);
        assert!(s.failures.is_empty());
    }

    #[test]
    fn gl3_2_order_seven_elements() {
        let f2 = f(2);
        let mut sevens = 0;
        for g in enumerate_gl(&f2, 3, DEFAULT_MATRIX_SCAN_CAP).unwrap() {
            if g.order().unwrap() == 7 {
                sevens += 1;
                match check_fixed_space_congruence(&g, 3).unwrap() {
                    FixedSpaceStatus::Checked { fixed_dim, holds, .. } => {
                        assert_eq!(fixed_dim, 0);
                        assert!(holds);
                    }
                    other => panic!("{other:?}"),
                }
            }
        }
        assert_eq!(sevens, 48);
    }

    #[test]
    fn matrix_file() {
        let ms = parse_matrix_file("2 2\n1 1\n0 1\n# second\n0 1\n1 1\n").unwrap();
        assert_eq!(ms.len(), 2);
        assert!(parse_matrix_file("2 2\n1 1\n").is_err());
        assert!(parse_matrix_file("4 2\n1 1\n0 1\n").is_err());
    }
}
