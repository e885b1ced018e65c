//! Named families of permutation groups with fixed generators.

use std::fmt;

use crate::actions::{disjoint_union, MultiOrbitAction};
use crate::affine::{gl_generators, is_prime, Field, MatrixFp};
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Cyclic(usize),
    /// Symmetries of an n-gon, order 2n on n points.
    Dihedral(usize),
    Symmetric(usize),
    Alternating(usize),
    DirectProduct(Box<Family>, Box<Family>),
    /// GL_d(p) on the nonzero vectors of F_p^d.
    GlNatural { d: usize, p: u32 },
    /// PSL_2(p) on the projective line.
    Psl2 { p: u32 },
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Cyclic(n) => write!(f, "C{n}"),
            Family::Dihedral(n) => write!(f, "D{}", 2 * n),
            Family::Symmetric(n) => write!(f, "S{n}"),
            Family::Alternating(n) => write!(f, "A{n}"),
            Family::DirectProduct(a, b) => write!(f, "{a}x{b}"),
            Family::GlNatural { d, p } => write!(f, "GL({d},{p})"),
            Family::Psl2 { p } => write!(f, "PSL(2,{p})"),
        }
    }
}

fn cycle_on(n: usize, points: &[usize]) -> Permutation {
    let mut images: Vec<usize> = (0..n).collect();
    for (k, &p) in points.iter().enumerate() {
        images[p] = points[(k + 1) % points.len()];
    }
    Permutation::from_images(images).expect("cycle is a bijection")
}

pub fn cyclic(n: usize) -> Result<PermGroup> {
    if n == 0 {
        return Err(Error::InvalidInput("cyclic group needs n >= 1".into()));
    }
    let all: Vec<usize> = (0..n).collect();
    PermGroup::new(n, vec![cycle_on(n, &all)])
}

pub fn dihedral(n: usize) -> Result<PermGroup> {
    if n < 3 {
        return Err(Error::InvalidInput("dihedral group needs n >= 3".into()));
    }
    let all: Vec<usize> = (0..n).collect();
    let reflection = Permutation::from_images((0..n).map(|i| (n - i) % n).collect())?;
    PermGroup::new(n, vec![cycle_on(n, &all), reflection])
}

pub fn symmetric(n: usize) -> Result<PermGroup> {
    if n == 0 {
        return Err(Error::InvalidInput("symmetric group needs n >= 1".into()));
    }
    if n == 1 {
        return Ok(PermGroup::trivial(1));
    }
    let all: Vec<usize> = (0..n).collect();
    PermGroup::new(n, vec![cycle_on(n, &[0, 1]), cycle_on(n, &all)])
}

pub fn alternating(n: usize) -> Result<PermGroup> {
    if n == 0 {
        return Err(Error::InvalidInput("alternating group needs n >= 1".into()));
    }
    let gens = (2..n).map(|i| cycle_on(n, &[0, 1, i])).collect();
    PermGroup::new(n, gens)
}

pub fn direct_product(a: &PermGroup, b: &PermGroup) -> Result<PermGroup> {
    let ida = Permutation::identity(a.degree());
    let idb = Permutation::identity(b.degree());
    let mut gens: Vec<Permutation> = a.generators().iter().map(|g| g.direct_sum(&idb)).collect();
    gens.extend(b.generators().iter().map(|g| ida.direct_sum(g)));
    PermGroup::new(a.degree() + b.degree(), gens)
}

/// GL_d(p) on the `p^d - 1` nonzero vectors (vector `i + 1` is point `i`),
/// with the matrices behind each generator.
pub fn gl_natural_group(p: u32, d: usize) -> Result<(PermGroup, Vec<MatrixFp>)> {
    let field = Field::prime(p)?;
    let mats = gl_generators(&field, d);
    let n = (p as usize).pow(d as u32);
    let gens = mats
        .iter()
        .map(|m| {
            let full = m.to_permutation(n)?;
            let images = (1..n).map(|i| full.image(i) - 1).collect();
            Permutation::from_images(images)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((PermGroup::new(n - 1, gens)?, mats))
}

/// PSL_2(p) on `{0, ..., p-1, oo}` (oo is point p), generated by
/// `z -> z + 1` and `z -> -1/z`.
pub fn psl2(p: u32) -> Result<PermGroup> {
    if !is_prime(p as u64) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    let p = p as usize;
    let inf = p;
    let shift = Permutation::from_images((0..=p).map(|z| if z == inf { inf } else { (z + 1) % p }).collect())?;
    let inv = |z: usize| (1..p).find(|&w| (z * w) % p == 1).unwrap();
    let flip = Permutation::from_images(
        (0..=p)
            .map(|z| {
                if z == inf {
                    0
                } else if z == 0 {
                    inf
                } else {
                    (p - inv(z)) % p
                }
            })
            .collect(),
    )?;
    PermGroup::new(p + 1, vec![shift, flip])
}

pub fn named_group(family: &Family) -> Result<PermGroup> {
    match family {
        Family::Cyclic(n) => cyclic(*n),
        Family::Dihedral(n) => dihedral(*n),
        Family::Symmetric(n) => symmetric(*n),
        Family::Alternating(n) => alternating(*n),
        Family::DirectProduct(a, b) => direct_product(&named_group(a)?, &named_group(b)?),
        Family::GlNatural { d, p } => Ok(gl_natural_group(*p, *d)?.0),
        Family::Psl2 { p } => psl2(*p),
    }
}

/// Least generator of the units mod p.
pub fn primitive_root(p: u32) -> u32 {
    let p = p as u64;
    (1..p.max(2))
        .find(|&g| {
            let mut x = 1;
            for k in 1..p {
                x = x * g % p;
                if x == 1 {
                    return k == p - 1;
                }
            }
            false
        })
        .unwrap_or(1) as u32
}

/// AGL_1(p) acting on F_p (points `0..p`) and regularly on F_p^x (point
/// `p + i` is the unit `w^i` for the least primitive root `w`).
pub fn agl1(p: u32) -> Result<MultiOrbitAction> {
    if !is_prime(p as u64) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    let w = primitive_root(p) as usize;
    let pu = p as usize;
    let translate = Permutation::from_images((0..pu).map(|z| (z + 1) % pu).collect())?;
    let scale = Permutation::from_images((0..pu).map(|z| (z * w) % pu).collect())?;
    let units = pu - 1;
    let unit_id = Permutation::identity(units);
    let unit_shift = Permutation::from_images((0..units).map(|i| (i + 1) % units).collect())?;
    disjoint_union(&[vec![translate, scale], vec![unit_id, unit_shift]])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::actions::{is_primitive, point_stabilizer};
    use crate::derangements::find_derangement;

    #[test]
    fn orders() {
        assert_eq!(symmetric(4).unwrap().order_usize(), Some(24));
        assert_eq!(alternating(5).unwrap().order_usize(), Some(60));
        assert_eq!(dihedral(5).unwrap().order_usize(), Some(10));
        assert_eq!(cyclic(7).unwrap().order_usize(), Some(7));
        let dp = named_group(&Family::DirectProduct(
            Box::new(Family::Cyclic(2)),
            Box::new(Family::Cyclic(3)),
        ))
        .unwrap();
        assert_eq!(dp.order_usize(), Some(6));
        assert_eq!(dp.degree(), 5);
        assert_eq!(symmetric(1).unwrap().order_usize(), Some(1));
        assert_eq!(alternating(2).unwrap().order_usize(), Some(1));
    }

    #[test]
    fn psl2_7_is_two_transitive() {
        let g = psl2(7).unwrap();
        assert_eq!(g.degree(), 8);
        assert_eq!(g.order_usize(), Some(168));
        let stab = point_stabilizer(&g, 7).unwrap();
        assert!(stab.orbit_bfs(0).len() == 7);
        assert_eq!(psl2(5).unwrap().order_usize(), Some(60));
        assert_eq!(psl2(11).unwrap().order_usize(), Some(660));
        assert!(psl2(9).is_err());
    }

    #[test]
    fn gl_natural() {
        let (g, mats) = gl_natural_group(2, 3).unwrap();
        assert_eq!(g.degree(), 7);
        assert_eq!(g.order_usize(), Some(168));
        assert_eq!(mats.len(), g.generators().len());
        assert!(is_primitive(&g).unwrap().is_primitive());
        let (g, _) = gl_natural_group(3, 2).unwrap();
        assert_eq!(g.order_usize(), Some(48));
    }

    #[test]
    fn agl1_family() {
        for (p, sizes) in [(2u32, vec![2, 1]), (3, vec![3, 2]), (5, vec![5, 4])] {
            let a = agl1(p).unwrap();
            assert_eq!(a.orbit_sizes(), sizes);
            assert_eq!(a.group().order_usize(), Some((p * (p - 1)) as usize));
            assert!(!find_derangement(&a, 1000).unwrap().has_derangement());
        }
        assert!(agl1(4).is_err());
        assert_eq!(primitive_root(7), 3);
        assert_eq!(primitive_root(2), 1);
    }
}
