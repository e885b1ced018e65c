//! Small finite fields F_q, q = p^f, by lookup tables.
//!
//! Elements are integers `0..q` read as little-endian base-p coefficient
//! vectors of polynomials in a root `a` of the field's modulus. For `f = 1`
//! this is ordinary arithmetic mod p.

use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest field order for which tables are built.
pub const FIELD_TABLE_CAP: u32 = 1024;

#[derive(Debug)]
pub struct Field {
    p: u32,
    f: u32,
    q: u32,
    /// Monic modulus, coefficients from degree 0 up to degree f.
    modulus: Vec<u32>,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.modulus == other.modulus
    }
}

impl Eq for Field {}

impl std::hash::Hash for Field {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.p.hash(state);
        self.modulus.hash(state);
    }
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

fn poly_rem(mut a: Vec<u32>, b: &[u32], p: u32) -> Vec<u32> {
    // b monic
    let db = b.len() - 1;
    while a.len() > db {
        let lead = *a.last().unwrap();
        let shift = a.len() - 1 - db;
        if lead != 0 {
            for (i, &c) in b.iter().enumerate() {
                let t = (lead * c) % p;
                a[shift + i] = (a[shift + i] + p - t) % p;
            }
        }
        a.pop();
    }
    a
}

fn monic_from_code(code: u32, degree: u32, p: u32) -> Vec<u32> {
    let mut c = code;
    let mut out = Vec::with_capacity(degree as usize + 1);
    for _ in 0..degree {
        out.push(c % p);
        c /= p;
    }
    out.push(1);
    out
}

fn is_irreducible_poly(poly: &[u32], p: u32) -> bool {
    let f = (poly.len() - 1) as u32;
    for deg in 1..=f / 2 {
        for code in 0..p.pow(deg) {
            let div = monic_from_code(code, deg, p);
            if poly_rem(poly.to_vec(), &div, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl Field {
    pub fn prime(p: u32) -> Result<Arc<Field>> {
        Field::extension(p, 1)
    }

    /// F_{p^f} with the first monic irreducible modulus in the order of the
    /// integer code `sum c_i p^i` of its lower coefficients.
    pub fn extension(p: u32, f: u32) -> Result<Arc<Field>> {
        if !is_prime(p as u64) {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        if f == 0 {
            return Err(Error::InvalidInput("extension degree must be positive".into()));
        }
        p.checked_pow(f)
            .filter(|&q| q <= FIELD_TABLE_CAP)
            .ok_or_else(|| Error::cap("field order", format!("{p}^{f}"), FIELD_TABLE_CAP as usize))?;
        let modulus = (0..p.pow(f))
            .map(|code| monic_from_code(code, f, p))
            .find(|m| is_irreducible_poly(m, p))
            .expect("irreducible polynomials exist in every degree");
        Ok(Arc::new(Field::with_modulus(p, f, modulus)))
    }

    fn with_modulus(p: u32, f: u32, modulus: Vec<u32>) -> Field {
        let q = p.pow(f);
        let digits = |x: u32| -> Vec<u32> {
            let mut c = x;
            (0..f)
                .map(|_| {
                    let d = c % p;
                    c /= p;
                    d
                })
                .collect()
        };
        let encode = |v: &[u32]| -> u32 { v.iter().rev().fold(0, |acc, &d| acc * p + d) };
        let qs = q as usize;
        let mut add = vec![0; qs * qs];
        let mut mul = vec![0; qs * qs];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = encode(&s);
                let mut prod = vec![0u32; 2 * f as usize - 1];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                let mut r = poly_rem(prod, &modulus, p);
                r.resize(f as usize, 0);
                mul[(a * q + b) as usize] = encode(&r);
            }
        }
        let neg = (0..q)
            .map(|a| (0..q).find(|&b| add[(a * q + b) as usize] == 0).unwrap())
            .collect();
        let inv = (0..q)
            .map(|a| {
                if a == 0 {
                    0
                } else {
                    (1..q).find(|&b| mul[(a * q + b) as usize] == 1).unwrap()
                }
            })
            .collect();
        Field {
            p,
            f,
            q,
            modulus,
            add,
            mul,
            neg,
            inv,
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.f
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Modulus as text, highest degree first, e.g. `x^2 + x + 1`.
    pub fn modulus_string(&self) -> String {
        let mut terms = Vec::new();
        for (i, &c) in self.modulus.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            terms.push(match (c, i) {
                (_, 0) => c.to_string(),
                (1, _) => mono,
                _ => format!("{c}{mono}"),
            });
        }
        terms.join(" + ")
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[(a * self.q + b) as usize]
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg[b as usize])
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[(a * self.q + b) as usize]
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    /// Multiplicative inverse; `inv(0)` is 0.
    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    /// Base-p coordinates of an element.
    pub fn coordinates(&self, a: u32) -> Vec<u32> {
        let mut c = a;
        (0..self.f)
            .map(|_| {
                let d = c % self.p;
                c /= self.p;
                d
            })
            .collect()
    }

    /// The element `a^k` of the polynomial basis `1, a, ..., a^(f-1)`.
    pub fn basis_element(&self, k: u32) -> u32 {
        self.p.pow(k)
    }

    /// Whether `a` lies in the prime subfield.
    pub fn in_prime_field(&self, a: u32) -> bool {
        a < self.p
    }

    /// Least generator of the multiplicative group.
    pub fn primitive_element(&self) -> u32 {
        (1..self.q)
            .find(|&g| {
                let mut x = 1;
                let mut k = 0;
                loop {
                    x = self.mul(x, g);
                    k += 1;
                    if x == 1 {
                        break;
                    }
                }
                k == self.q - 1
            })
            .unwrap_or(1)
    }
}
