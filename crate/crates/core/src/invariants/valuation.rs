//! p-adic valuations.

use num_bigint::BigUint;
use num_traits::Zero;

use crate::affine::is_prime;
use crate::error::{Error, Result};

fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("{p} is not prime")))
    }
}

/// Largest `k` with `p^k | n`.
pub fn v_p(n: &BigUint, p: u64) -> Result<u64> {
    require_prime(p)?;
    if n.is_zero() {
        return Err(Error::InvalidInput("v_p(0) is undefined".into()));
    }
    let pb = BigUint::from(p);
    let mut m = n.clone();
    let mut k = 0;
    loop {
        let (q, r) = (&m / &pb, &m % &pb);
        if !r.is_zero() {
            return Ok(k);
        }
        m = q;
        k += 1;
    }
}

pub fn v_p_u64(n: u64, p: u64) -> Result<u64> {
    v_p(&BigUint::from(n), p)
}

/// Sum of the base-p digits of m.
pub fn digit_sum(mut m: u64, p: u64) -> u64 {
    let mut s = 0;
    while m > 0 {
        s += m % p;
        m /= p;
    }
    s
}

/// `v_p(m!)` as `(m - s_p(m)) / (p - 1)`.
pub fn vp_factorial(m: u64, p: u64) -> Result<u64> {
    require_prime(p)?;
    Ok((m - digit_sum(m, p)) / (p - 1))
}

/// `v_p(m!)` as `sum floor(m / p^i)`.
pub fn legendre(m: u64, p: u64) -> Result<u64> {
    require_prime(p)?;
    let mut total = 0;
    let mut pk = p;
    while pk <= m {
        total += m / pk;
        pk = match pk.checked_mul(p) {
            Some(x) => x,
            None => break,
        };
    }
    Ok(total)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorialGrid {
    pub cases: usize,
    pub mismatches: Vec<(u64, u64)>,
}

/// Compares the two formulas for all `m <= max_m` and primes `p <= max_p`.
pub fn factorial_grid(max_m: u64, max_p: u64) -> FactorialGrid {
    let mut cases = 0;
    let mut mismatches = Vec::new();
    for p in (2..=max_p).filter(|&p| is_prime(p)) {
        for m in 0..=max_m {
            cases += 1;
            if vp_factorial(m, p).ok() != legendre(m, p).ok() {
                mismatches.push((m, p));
            }
        }
    }
    FactorialGrid { cases, mismatches }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn examples() {
        assert_eq!(v_p_u64(96, 2).unwrap(), 5);
        assert_eq!(v_p_u64(1, 3).unwrap(), 0);
        assert_eq!(v_p_u64(20, 5).unwrap(), 1);
        assert_eq!(vp_factorial(8, 2).unwrap(), 7);
        assert_eq!(vp_factorial(0, 5).unwrap(), 0);
        assert_eq!(vp_factorial(10, 3).unwrap(), 4);
        assert!(v_p_u64(12, 4).is_err());
        assert!(v_p_u64(0, 2).is_err());
    }

    #[test]
    fn factorial_by_multiplication() {
        let mut f = BigUint::one();
        for m in 1..=60u64 {
            f *= m;
            for p in [2, 3, 5, 7, 59] {
                assert_eq!(v_p(&f, p).unwrap(), vp_factorial(m, p).unwrap(), "m={m} p={p}");
            }
        }
    }

    #[test]
    fn small_grid() {
        let g = factorial_grid(200, 23);
        assert!(g.mismatches.is_empty());
        assert_eq!(g.cases, 201 * 9);
    }
}
