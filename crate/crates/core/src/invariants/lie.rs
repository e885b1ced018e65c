//! The parameters e, d, c, b attached to each family of simple groups of
//! Lie type, together with the small-rank bound `a(r)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde_json::{json, Value};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LieFamily {
    /// Linear and unitary, rank at least 2.
    A,
    B,
    C,
    D,
    E6,
    E7,
    E8,
    F4,
    G2,
    A1,
    D4Triality,
    F4Twisted,
    B2Twisted,
    G2Twisted,
}

pub const ALL_FAMILIES: [LieFamily; 14] = [
    LieFamily::A,
    LieFamily::B,
    LieFamily::C,
    LieFamily::D,
    LieFamily::E8,
    LieFamily::E7,
    LieFamily::E6,
    LieFamily::F4,
    LieFamily::G2,
    LieFamily::A1,
    LieFamily::D4Triality,
    LieFamily::F4Twisted,
    LieFamily::B2Twisted,
    LieFamily::G2Twisted,
];

impl LieFamily {
    pub fn label(self) -> &'static str {
        match self {
            LieFamily::A => "A",
            LieFamily::B => "B",
            LieFamily::C => "C",
            LieFamily::D => "D",
            LieFamily::E6 => "E6",
            LieFamily::E7 => "E7",
            LieFamily::E8 => "E8",
            LieFamily::F4 => "F4",
            LieFamily::G2 => "G2",
            LieFamily::A1 => "A1",
            LieFamily::D4Triality => "3D4",
            LieFamily::F4Twisted => "2F4",
            LieFamily::B2Twisted => "2B2",
            LieFamily::G2Twisted => "2G2",
        }
    }

    /// Least allowed rank for the classical families; `None` for the others.
    pub fn min_rank(self) -> Option<u64> {
        match self {
            LieFamily::A | LieFamily::B => Some(2),
            LieFamily::C => Some(3),
            LieFamily::D => Some(4),
            _ => None,
        }
    }
}

impl fmt::Display for LieFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for LieFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_end_matches(['+', '-']);
        ALL_FAMILIES
            .iter()
            .copied()
            .find(|f| f.label().eq_ignore_ascii_case(t))
            .ok_or_else(|| Error::InvalidInput(format!("unknown Lie family {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LieParams {
    pub family: LieFamily,
    pub rank: Option<u64>,
    pub e: u64,
    pub d: u64,
    pub c: u64,
    pub b: u64,
}

impl LieParams {
    pub fn to_json(&self) -> Value {
        json!({
            "family": self.family.label(),
            "rank": self.rank,
            "e": self.e,
            "d": self.d,
            "c": self.c,
            "b": self.b,
        })
    }

    /// `b >= d - 2`.
    pub fn b_bound_holds(&self) -> bool {
        self.b + 2 >= self.d
    }
}

/// Parameters for a family; `rank` is required for A, B, C, D and ignored
/// otherwise.
pub fn lie_params(family: LieFamily, rank: Option<u64>) -> Result<LieParams> {
    use LieFamily::*;
    let fixed = |e, d, c, b| LieParams { family, rank: None, e, d, c, b };
    if let Some(min) = family.min_rank() {
        let l = rank.ok_or_else(|| Error::InvalidInput(format!("family {family} needs a rank")))?;
        if l < min {
            return Err(Error::InvalidInput(format!("family {family} needs rank >= {min}, got {l}")));
        }
        let (e, d, c, b) = match family {
            A => ((l * l + l) / 2, l + 1, l + 1, l - 1),
            B => (l * l, l, 2 * l + 1, l),
            C => (l * l, l, 2 * l, l - 1),
            D => (l * l - l, l, 2 * l, l),
            _ => unreachable!(),
        };
        return Ok(LieParams { family, rank: Some(l), e, d, c, b });
    }
    Ok(match family {
        E8 => fixed(120, 15, 248, 28),
        E7 => fixed(63, 9, 56, 16),
        E6 => fixed(36, 12, 27, 10),
        F4 => fixed(24, 6, 25, 7),
        G2 => fixed(6, 3, 6, 2),
        A1 => fixed(1, 1, 2, 0),
        D4Triality => fixed(12, 6, 8, 4),
        F4Twisted => fixed(12, 6, 26, 4),
        B2Twisted => fixed(2, 2, 4, 1),
        G2Twisted => fixed(3, 3, 7, 1),
        A | B | C | D => unreachable!(),
    })
}

/// Every family, classical ones for each rank up to `max_rank`.
pub fn all_params(max_rank: u64) -> Vec<LieParams> {
    let mut out = Vec::new();
    for f in ALL_FAMILIES {
        match f.min_rank() {
            Some(min) => out.extend((min..=max_rank).map(|l| lie_params(f, Some(l)).unwrap())),
            None => out.push(lie_params(f, None).unwrap()),
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SmallRankGroup {
    Psl2,
    Psl3,
    Psl4,
    Psu3,
    Psu4,
    Psp4,
    Psp6,
    Omega7,
    G2,
    Suzuki,
    Ree,
}

/// The bound `a(r)` for the small-rank groups, as an exact rational.
pub fn small_rank_bound(group: SmallRankGroup, r: u64) -> Result<BigRational> {
    use SmallRankGroup::*;
    let ri = BigInt::from(r);
    let q = |n: BigInt| BigRational::from_integer(n);
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let one = BigInt::one();
    Ok(match group {
        Psl2 => {
            let g = if r % 2 == 1 { 2 } else { 1 };
            BigRational::new(&ri - &one, BigInt::from(g))
        }
        Psl3 => q(ri.pow(2) - &one),
        Psl4 => q(ri.pow(3) - &one),
        Psu3 => q(ri.pow(2) - &ri),
        Psu4 => q(ri.pow(3) - ri.pow(2) + &ri - &one),
        Psp4 => half * q(ri.pow(2) - &one),
        Psp6 => half * q(ri.pow(3) - &one),
        Omega7 => q(ri.pow(4) - &one),
        G2 => q(ri.pow(3) - &ri),
        Suzuki => {
            // r = 2^(2n+1), so r/2 is a square
            let half_r = r / 2;
            let s = (half_r as f64).sqrt().round() as u64;
            if r % 2 != 0 || s * s != half_r {
                return Err(Error::InvalidInput(format!("{r} is not an odd power of 2")));
            }
            q(BigInt::from(s) * (&ri - &one))
        }
        Ree => q(ri.pow(2) - &ri),
    })
    .and_then(|v: BigRational| {
        if v.is_negative() {
            Err(Error::InvalidInput(format!("r = {r} is too small")))
        } else {
            Ok(v)
        }
    })
}
