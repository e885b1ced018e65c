//! Two exponential inequalities, evaluated exactly:
//!
//! - part i: `(4r + 4)^d <= p^(r^(d-2) - 1)` for `d >= 4`, `r, p >= 2`,
//!   `r != p`, `(d, r)` not one of `(4,2), (4,3), (5,2)`;
//! - part ii: `(b + 1)^2 f <= p^(bf) - 1` for `b, p >= 3`, `f >= 1`.
//!
//! Queries outside those ranges are still evaluated, with
//! `hypothesis_met = false`.

use num_bigint::BigUint;
use num_traits::{One, Pow};
use serde_json::{json, Value};

use crate::affine::is_prime;

pub const EXCLUDED_PAIRS: [(u64, u64); 3] = [(4, 2), (4, 3), (5, 2)];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundCheck {
    pub holds: bool,
    pub hypothesis_met: bool,
    pub note: Option<String>,
    pub lhs: BigUint,
    /// Right-hand side as `base^exponent - offset`.
    pub rhs_base: u64,
    pub rhs_exponent: BigUint,
    pub rhs_offset: u64,
}

impl BoundCheck {
    pub fn to_json(&self) -> Value {
        json!({
            "holds": self.holds,
            "hypothesis_met": self.hypothesis_met,
            "note": self.note,
            "lhs": self.lhs.to_string(),
            "rhs": format!(
                "{}^{}{}",
                self.rhs_base,
                self.rhs_exponent,
                if self.rhs_offset > 0 { format!(" - {}", self.rhs_offset) } else { String::new() }
            ),
        })
    }
}

/// `lhs <= base^exponent - offset`, exactly, without expanding the power
/// when it obviously dominates.
fn le_power(lhs: &BigUint, base: u64, exponent: &BigUint, offset: u64) -> bool {
    if base == 0 {
        return exponent == &BigUint::from(0u32) && lhs + offset <= BigUint::one();
    }
    if base == 1 {
        return lhs + offset <= BigUint::one();
    }
    // base^e >= 2^e, and 2^e > lhs + offset once e exceeds its bit length
    let need = (lhs + offset).bits() + 1;
    if *exponent >= BigUint::from(need) {
        return true;
    }
    let e: u32 = exponent.try_into().expect("small exponent");
    lhs + offset <= BigUint::from(base).pow(e)
}

pub fn check_bound_i(d: u64, r: u64, p: u64) -> BoundCheck {
    let mut problems = Vec::new();
    if d < 4 {
        problems.push("d < 4");
    }
    if r < 2 || p < 2 {
        problems.push("r or p below 2");
    }
    if r == p {
        problems.push("r = p");
    }
    if EXCLUDED_PAIRS.contains(&(d, r)) {
        problems.push("(d, r) is excluded");
    }
    let lhs = BigUint::from(4 * r + 4).pow(d as u32);
    let exponent = if d >= 2 && r >= 1 {
        BigUint::from(r).pow((d - 2) as u32) - BigUint::one()
    } else {
        BigUint::from(0u32)
    };
    let holds = le_power(&lhs, p, &exponent, 0);
    BoundCheck {
        holds,
        hypothesis_met: problems.is_empty(),
        note: (!problems.is_empty()).then(|| problems.join("; ")),
        lhs,
        rhs_base: p,
        rhs_exponent: exponent,
        rhs_offset: 0,
    }
}

pub fn check_bound_ii(b: u64, p: u64, f: u64) -> BoundCheck {
    let mut problems = Vec::new();
    if b < 3 || p < 3 {
        problems.push("b or p below 3");
    }
    if f < 1 {
        problems.push("f < 1");
    }
    let lhs = BigUint::from((b + 1) * (b + 1) * f);
    let exponent = BigUint::from(b * f);
    let holds = le_power(&lhs, p, &exponent, 1);
    BoundCheck {
        holds,
        hypothesis_met: problems.is_empty(),
        note: (!problems.is_empty()).then(|| problems.join("; ")),
        lhs,
        rhs_base: p,
        rhs_exponent: exponent,
        rhs_offset: 1,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundGrid {
    pub part: &'static str,
    /// Cases inside the stated hypotheses.
    pub cases: usize,
    /// Failures inside the stated hypotheses, as parameter triples.
    pub failures: Vec<(u64, u64, u64)>,
    /// Cases with p prime not dividing r (part i only).
    pub coprime_cases: usize,
    pub coprime_failures: Vec<(u64, u64, u64)>,
}

impl BoundGrid {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "part": self.part,
            "cases": self.cases,
            "failures": self.failures,
            "holds": self.holds(),
            "coprime_cases": self.coprime_cases,
            "coprime_failures": self.coprime_failures,
        })
    }
}

/// Part i over `4 <= d <= max_d` and `2 <= r, p <= max_rp`.
pub fn grid_i(max_d: u64, max_rp: u64) -> BoundGrid {
    let mut g = BoundGrid {
        part: "i",
        cases: 0,
        failures: Vec::new(),
        coprime_cases: 0,
        coprime_failures: Vec::new(),
    };
    for d in 4..=max_d {
        for r in 2..=max_rp {
            for p in 2..=max_rp {
                let c = check_bound_i(d, r, p);
                if !c.hypothesis_met {
                    continue;
                }
                g.cases += 1;
                if !c.holds {
                    g.failures.push((d, r, p));
                }
                if is_prime(p) && r % p != 0 {
                    g.coprime_cases += 1;
                    if !c.holds {
                        g.coprime_failures.push((d, r, p));
                    }
                }
            }
        }
    }
    g
}

/// Part ii over `3 <= b <= max_b`, primes `3 <= p <= max_p`, `1 <= f <= max_f`.
pub fn grid_ii(max_b: u64, max_p: u64, max_f: u64) -> BoundGrid {
    let mut g = BoundGrid {
        part: "ii",
        cases: 0,
        failures: Vec::new(),
        coprime_cases: 0,
        coprime_failures: Vec::new(),
    };
    for b in 3..=max_b {
        for p in (3..=max_p).filter(|&p| is_prime(p)) {
            for f in 1..=max_f {
                g.cases += 1;
                if !check_bound_ii(b, p, f).holds {
                    g.failures.push((b, p, f));
                }
            }
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_i(d: u32, r: u64, p: u64) -> bool {
        let lhs = BigUint::from(4 * r + 4).pow(d);
        let e = r.pow(d - 2) - 1;
        lhs <= BigUint::from(p).pow(e as u32)
    }

    #[test]
    fn examples() {
        let c = check_bound_ii(3, 3, 1);
        assert!(c.holds && c.hypothesis_met);
        assert_eq!(c.lhs, BigUint::from(16u32));
        let c = check_bound_i(4, 2, 3);
        assert!(!c.hypothesis_met);
        assert!(c.note.unwrap().contains("excluded"));
        let c = check_bound_i(4, 4, 2);
        assert!(c.hypothesis_met);
        assert_eq!(c.lhs, BigUint::from(160000u32));
        assert!(!c.holds, "2^15 = 32768 < 160000");
    }

    #[test]
    fn shortcut_agrees_with_expansion() {
        for d in 2..=6u32 {
            for r in 1..=6u64 {
                for p in 2..=7u64 {
                    assert_eq!(check_bound_i(d as u64, r, p).holds, brute_i(d, r, p), "{d} {r} {p}");
                }
            }
        }
        for b in 0..=6u64 {
            for p in 2..=7u64 {
                for f in 0..=4u64 {
                    let want = BigUint::from((b + 1) * (b + 1) * f) + 1u32
                        <= BigUint::from(p).pow((b * f) as u32);
                    assert_eq!(check_bound_ii(b, p, f).holds, want);
                }
            }
        }
    }

    #[test]
    fn part_ii_grid_is_clean() {
        let g = grid_ii(12, 31, 6);
        assert!(g.holds());
    }
}
