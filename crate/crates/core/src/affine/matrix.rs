//! Dense matrices, row-reduced subspaces and affine maps over a finite field.
//!
//! Vectors are rows and matrices act on the right: `w -> w M`. A vector of
//! F_q^d is identified with the point `sum w_i q^i` (little-endian mixed
//! radix), which is how matrices become permutations.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::perm::Permutation;

use super::field::Field;

/// Largest vector space, in points, turned into a permutation domain.
pub const DEFAULT_DEGREE_CAP: usize = 1 << 20;

pub fn encode_vector(field: &Field, v: &[u32]) -> usize {
    let q = field.order() as usize;
    v.iter().rev().fold(0, |acc, &x| acc * q + x as usize)
}

pub fn decode_vector(field: &Field, d: usize, mut index: usize) -> Vec<u32> {
    let q = field.order() as usize;
    (0..d)
        .map(|_| {
            let x = index % q;
            index /= q;
            x as u32
        })
        .collect()
}

pub fn space_size(field: &Field, d: usize, cap: usize) -> Result<usize> {
    (field.order() as usize)
        .checked_pow(d as u32)
        .filter(|&n| n <= cap)
        .ok_or_else(|| Error::cap("vector space", format!("{}^{d}", field.order()), cap))
}

pub fn add_vectors(field: &Field, a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(&x, &y)| field.add(x, y)).collect()
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MatrixFp {
    field: Arc<Field>,
    d: usize,
    /// Row-major.
    entries: Vec<u32>,
}

impl fmt::Debug for MatrixFp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for MatrixFp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows()
            .map(|r| {
                let cells: Vec<String> = r.iter().map(|x| x.to_string()).collect();
                format!("[{}]", cells.join(","))
            })
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

impl MatrixFp {
    pub fn new(field: Arc<Field>, d: usize, entries: Vec<u32>) -> Result<Self> {
        if entries.len() != d * d {
            return Err(Error::InvalidInput(format!(
                "{} entries for a {d}x{d} matrix",
                entries.len()
            )));
        }
        let q = field.order();
        if let Some(bad) = entries.iter().find(|&&x| x >= q) {
            return Err(Error::InvalidInput(format!("entry {bad} is not a field element")));
        }
        Ok(MatrixFp { field, d, entries })
    }

    /// Integer rows reduced mod p over the prime field.
    pub fn from_rows(field: Arc<Field>, rows: &[Vec<i64>]) -> Result<Self> {
        let d = rows.len();
        if rows.iter().any(|r| r.len() != d) {
            return Err(Error::InvalidInput("matrix rows must be square".into()));
        }
        let q = field.order() as i64;
        let entries = rows
            .iter()
            .flatten()
            .map(|&x| {
                if field.degree() == 1 {
                    Ok(x.rem_euclid(q) as u32)
                } else if (0..q).contains(&x) {
                    Ok(x as u32)
                } else {
                    Err(Error::InvalidInput(format!("entry {x} is not a field element")))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        MatrixFp::new(field, d, entries)
    }

    pub fn identity(field: Arc<Field>, d: usize) -> Self {
        let mut entries = vec![0; d * d];
        for i in 0..d {
            entries[i * d + i] = 1;
        }
        MatrixFp { field, d, entries }
    }

    pub fn zero(field: Arc<Field>, d: usize) -> Self {
        MatrixFp {
            field,
            d,
            entries: vec![0; d * d],
        }
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.d + j]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u32]> {
        self.entries.chunks(self.d.max(1)).take(self.d)
    }

    fn check_same(&self, other: &MatrixFp) -> Result<()> {
        if self.d != other.d || self.field != other.field {
            return Err(Error::InvalidInput(
                "matrices over different spaces".into(),
            ));
        }
        Ok(())
    }

    pub fn mul(&self, other: &MatrixFp) -> Result<MatrixFp> {
        self.check_same(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &MatrixFp) -> MatrixFp {
        let (d, f) = (self.d, &*self.field);
        let mut entries = vec![0; d * d];
        for i in 0..d {
            for k in 0..d {
                let a = self.entries[i * d + k];
                if a == 0 {
                    continue;
                }
                for j in 0..d {
                    let t = f.mul(a, other.entries[k * d + j]);
                    entries[i * d + j] = f.add(entries[i * d + j], t);
                }
            }
        }
        MatrixFp {
            field: self.field.clone(),
            d,
            entries,
        }
    }

    pub fn add(&self, other: &MatrixFp) -> Result<MatrixFp> {
        self.check_same(other)?;
        let f = &*self.field;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        Ok(MatrixFp {
            field: self.field.clone(),
            d: self.d,
            entries,
        })
    }

    /// `self - I`.
    pub fn minus_identity(&self) -> MatrixFp {
        let mut m = self.clone();
        for i in 0..self.d {
            let k = i * self.d + i;
            m.entries[k] = self.field.sub(m.entries[k], 1);
        }
        m
    }

    pub fn transpose(&self) -> MatrixFp {
        let d = self.d;
        let mut entries = vec![0; d * d];
        for i in 0..d {
            for j in 0..d {
                entries[j * d + i] = self.entries[i * d + j];
            }
        }
        MatrixFp {
            field: self.field.clone(),
            d,
            entries,
        }
    }

    pub fn is_identity(&self) -> bool {
        (0..self.d).all(|i| (0..self.d).all(|j| self.get(i, j) == u32::from(i == j)))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0)
    }

    pub fn rank(&self) -> usize {
        row_reduce(&self.field, self.rows().map(|r| r.to_vec()).collect()).len()
    }

    pub fn det(&self) -> u32 {
        let (d, f) = (self.d, &*self.field);
        let mut a = self.entries.clone();
        let mut det = 1;
        for col in 0..d {
            let Some(piv) = (col..d).find(|&r| a[r * d + col] != 0) else {
                return 0;
            };
            if piv != col {
                for j in 0..d {
                    a.swap(piv * d + j, col * d + j);
                }
                det = f.neg(det);
            }
            let pv = a[col * d + col];
            det = f.mul(det, pv);
            let pinv = f.inv(pv);
            for r in col + 1..d {
                let factor = f.mul(a[r * d + col], pinv);
                if factor == 0 {
                    continue;
                }
                for j in col..d {
                    let t = f.mul(factor, a[col * d + j]);
                    a[r * d + j] = f.sub(a[r * d + j], t);
                }
            }
        }
        det
    }

    pub fn is_invertible(&self) -> bool {
        self.det() != 0
    }

    pub fn inverse(&self) -> Option<MatrixFp> {
        let (d, f) = (self.d, &*self.field);
        let mut a = self.entries.clone();
        let mut inv = MatrixFp::identity(self.field.clone(), d).entries;
        for col in 0..d {
            let piv = (col..d).find(|&r| a[r * d + col] != 0)?;
            for j in 0..d {
                a.swap(piv * d + j, col * d + j);
                inv.swap(piv * d + j, col * d + j);
            }
            let pinv = f.inv(a[col * d + col]);
            for j in 0..d {
                a[col * d + j] = f.mul(a[col * d + j], pinv);
                inv[col * d + j] = f.mul(inv[col * d + j], pinv);
            }
            for r in 0..d {
                if r == col {
                    continue;
                }
                let factor = a[r * d + col];
                if factor == 0 {
                    continue;
                }
                for j in 0..d {
                    let t = f.mul(factor, a[col * d + j]);
                    a[r * d + j] = f.sub(a[r * d + j], t);
                    let t = f.mul(factor, inv[col * d + j]);
                    inv[r * d + j] = f.sub(inv[r * d + j], t);
                }
            }
        }
        Some(MatrixFp {
            field: self.field.clone(),
            d,
            entries: inv,
        })
    }

    pub fn pow(&self, mut k: u64) -> MatrixFp {
        let mut base = self.clone();
        let mut acc = MatrixFp::identity(self.field.clone(), self.d);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            base = base.mul_unchecked(&base);
            k >>= 1;
        }
        acc
    }

    /// Multiplicative order of an invertible matrix.
    pub fn order(&self) -> Result<u64> {
        if !self.is_invertible() {
            return Err(Error::InvalidInput(format!("{self} is singular")));
        }
        let mut x = self.clone();
        let mut k = 1u64;
        while !x.is_identity() {
            x = x.mul_unchecked(self);
            k += 1;
        }
        Ok(k)
    }

    /// Row vector times matrix.
    pub fn act(&self, v: &[u32]) -> Vec<u32> {
        let (d, f) = (self.d, &*self.field);
        let mut out = vec![0; d];
        for (i, &vi) in v.iter().enumerate() {
            if vi == 0 {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o = f.add(*o, f.mul(vi, self.entries[i * d + j]));
            }
        }
        out
    }

    /// The permutation `w -> w M` of the `q^d` vectors.
    pub fn to_permutation(&self, cap: usize) -> Result<Permutation> {
        if !self.is_invertible() {
            return Err(Error::InvalidInput(format!("{self} is singular")));
        }
        let n = space_size(&self.field, self.d, cap)?;
        let images = (0..n)
            .map(|i| encode_vector(&self.field, &self.act(&decode_vector(&self.field, self.d, i))))
            .collect();
        Permutation::from_images(images)
    }

    /// Matrix over the prime field obtained by writing each entry of F_q,
    /// q = p^f, as the matrix of multiplication on the basis
    /// `1, a, ..., a^(f-1)`.
    pub fn embed_in_prime_field(&self, prime: &Arc<Field>) -> Result<MatrixFp> {
        let f = &*self.field;
        if prime.order() != f.p() {
            return Err(Error::InvalidInput("target must be the prime field".into()));
        }
        let k = f.degree() as usize;
        let n = self.d * k;
        let mut entries = vec![0; n * n];
        for i in 0..self.d {
            for j in 0..self.d {
                let a = self.get(i, j);
                for r in 0..k {
                    let prod = f.mul(f.basis_element(r as u32), a);
                    for (c, x) in f.coordinates(prod).into_iter().enumerate() {
                        entries[(i * k + r) * n + j * k + c] = x;
                    }
                }
            }
        }
        MatrixFp::new(prime.clone(), n, entries)
    }

    /// Whether every entry lies in the prime subfield.
    pub fn over_prime_subfield(&self) -> bool {
        self.entries.iter().all(|&x| self.field.in_prime_field(x))
    }
}

/// Reduced row echelon form of the span of `rows`, zero rows dropped.
pub fn row_reduce(field: &Field, mut rows: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let pinv = field.inv(rows[rank][col]);
        for x in rows[rank].iter_mut() {
            *x = field.mul(*x, pinv);
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[col] == 0 {
                continue;
            }
            let factor = row[col];
            for (x, &y) in row.iter_mut().zip(&pivot_row) {
                *x = field.sub(*x, field.mul(factor, y));
            }
        }
        rank += 1;
    }
    rows.truncate(rank);
    rows
}

/// A subspace of F_q^d held by its reduced echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceFp {
    field: Arc<Field>,
    d: usize,
    basis: Vec<Vec<u32>>,
}

impl SubspaceFp {
    pub fn span(field: Arc<Field>, d: usize, vectors: Vec<Vec<u32>>) -> Self {
        let basis = if vectors.is_empty() {
            Vec::new()
        } else {
            row_reduce(&field, vectors)
        };
        SubspaceFp { field, d, basis }
    }

    pub fn zero(field: Arc<Field>, d: usize) -> Self {
        SubspaceFp {
            field,
            d,
            basis: Vec::new(),
        }
    }

    pub fn whole(field: Arc<Field>, d: usize) -> Self {
        let basis = MatrixFp::identity(field.clone(), d)
            .rows()
            .map(|r| r.to_vec())
            .collect();
        SubspaceFp { field, d, basis }
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dimension(&self) -> usize {
        self.d
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        row_reduce(&self.field, rows).len() == self.basis.len()
    }

    pub fn with_vector(&self, v: &[u32]) -> SubspaceFp {
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        SubspaceFp::span(self.field.clone(), self.d, rows)
    }

    /// Every vector of the subspace, in the order of coefficient tuples.
    pub fn vectors(&self) -> Vec<Vec<u32>> {
        let q = self.field.order() as usize;
        let k = self.basis.len();
        let mut out = Vec::with_capacity(q.pow(k as u32));
        for code in 0..q.pow(k as u32) {
            let coeffs = decode_vector(&self.field, k, code);
            let mut v = vec![0; self.d];
            for (c, b) in coeffs.iter().zip(&self.basis) {
                for (x, &y) in v.iter_mut().zip(b) {
                    *x = self.field.add(*x, self.field.mul(*c, y));
                }
            }
            out.push(v);
        }
        out
    }
}

/// Rank, image and kernel of `w -> w M`, or of `w -> w (M - I)` when
/// `shift` is set. The image is the row space; the kernel is the left null
/// space.
pub fn mat_rank_image_kernel(m: &MatrixFp, shift: bool) -> (usize, SubspaceFp, SubspaceFp) {
    let a = if shift { m.minus_identity() } else { m.clone() };
    let field = a.field.clone();
    let d = a.d;
    let image = SubspaceFp::span(field.clone(), d, a.rows().map(|r| r.to_vec()).collect());
    let rank = image.dimension();
    // v A = 0  <=>  A^T v^T = 0: solve from the echelon form of A^T
    let at = a.transpose();
    let rref = row_reduce(&field, at.rows().map(|r| r.to_vec()).collect());
    let pivots: Vec<usize> = rref
        .iter()
        .map(|r| r.iter().position(|&x| x != 0).unwrap())
        .collect();
    let free: Vec<usize> = (0..d).filter(|c| !pivots.contains(c)).collect();
    let kernel_vectors: Vec<Vec<u32>> = free
        .iter()
        .map(|&fc| {
            let mut v = vec![0; d];
            v[fc] = 1;
            for (row, &pc) in rref.iter().zip(&pivots) {
                v[pc] = field.neg(row[fc]);
            }
            v
        })
        .collect();
    let kernel = SubspaceFp::span(field, d, kernel_vectors);
    debug_assert_eq!(rank + kernel.dimension(), d);
    (rank, image, kernel)
}

/// `w -> (w + translation) linear`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMap {
    pub translation: Vec<u32>,
    pub linear: MatrixFp,
}

impl AffineMap {
    pub fn new(translation: Vec<u32>, linear: MatrixFp) -> Result<Self> {
        if translation.len() != linear.dim() {
            return Err(Error::InvalidInput("translation has the wrong length".into()));
        }
        if !linear.is_invertible() {
            return Err(Error::InvalidInput(format!("{linear} is singular")));
        }
        Ok(AffineMap {
            translation,
            linear,
        })
    }

    pub fn apply(&self, w: &[u32]) -> Vec<u32> {
        self.linear
            .act(&add_vectors(self.linear.field(), w, &self.translation))
    }

    pub fn to_permutation(&self, cap: usize) -> Result<Permutation> {
        let f = self.linear.field().clone();
        let d = self.linear.dim();
        let n = space_size(&f, d, cap)?;
        let images = (0..n)
            .map(|i| encode_vector(&f, &self.apply(&decode_vector(&f, d, i))))
            .collect();
        Permutation::from_images(images)
    }
}
