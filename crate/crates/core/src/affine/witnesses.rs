//! Derangement constructions and witness searches in affine and linear
//! groups.

use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{Pow, Zero};
use serde_json::{json, Value};

use crate::actions::{coset_action, disjoint_union, is_primitive};
use crate::derangements::{is_derangement, AssumptionCheck};
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::lattice::{all_subgroups, BitSet};
use crate::perm::Permutation;

use super::field::Field;
use super::linear::{big_valuation, gl_order, is_irreducible, linear_group, AffineGroup};
use super::matrix::{
    decode_vector, encode_vector, mat_rank_image_kernel, row_reduce, space_size, AffineMap,
    MatrixFp,
};

/// First vector, in point order, outside `im(h - 1)`.
pub fn admissible_vector(h: &MatrixFp) -> Option<Vec<u32>> {
    let (rank, image, _) = mat_rank_image_kernel(h, true);
    if rank == h.dim() {
        return None;
    }
    let field = h.field();
    let n = (field.order() as usize).pow(h.dim() as u32);
    (0..n)
        .map(|i| decode_vector(field, h.dim(), i))
        .find(|v| !image.contains(v))
}

#[derive(Clone, Debug)]
pub struct AffineDerangementReport {
    pub checks: Vec<AssumptionCheck>,
    /// `(v, h^-1)`, present when every precondition holds.
    pub map: Option<AffineMap>,
    /// The element on the vectors followed by the cosets of V:M.
    pub element: Option<Permutation>,
    pub orbit_sizes: Vec<usize>,
    pub derangement_by_fixed_points: bool,
    pub derangement_by_conjugates: bool,
}

impl AffineDerangementReport {
    pub fn verified(&self) -> bool {
        self.map.is_some() && self.derangement_by_fixed_points && self.derangement_by_conjugates
    }

    pub fn to_json(&self) -> Value {
        json!({
            "assumptions_checked": self.checks.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
            "translation": self.map.as_ref().map(|m| m.translation.clone()),
            "linear": self.map.as_ref().map(|m| m.linear.to_string()),
            "element_cycles": self.element.as_ref().map(|e| e.to_cycle_string()),
            "orbit_sizes": self.orbit_sizes,
            "derangement_by_fixed_points": self.derangement_by_fixed_points,
            "derangement_by_conjugates": self.derangement_by_conjugates,
            "verified": self.verified(),
        })
    }
}

/// Given `M <= H <= GL_d(p)`, `h` in `H` deranging `H/M` and `v` outside
/// `im(h - 1)`, builds `(v, h^-1)` in `V:H` and confirms it lies in no
/// conjugate of `H` and no conjugate of `V:M`, both by counting fixed points
/// on `V` plus the cosets of `V:M` and by testing every conjugate.
pub fn affine_derangement_from(
    affine: &AffineGroup,
    m_generators: &[MatrixFp],
    h: &MatrixFp,
    v: &[u32],
    cap: usize,
) -> Result<AffineDerangementReport> {
    let n = affine.degree();
    let mut checks = Vec::new();
    let h_group = &affine.linear;
    let m_perms = m_generators
        .iter()
        .map(|g| g.to_permutation(cap))
        .collect::<Result<Vec<_>>>()?;
    let m_group = PermGroup::new(n, m_perms.clone())?;
    let m_in_h = m_group.is_subgroup_of(h_group);
    checks.push(AssumptionCheck::new("m_in_h", m_in_h, format!("|M| = {}", m_group.order())));
    let h_perm = h.to_permutation(cap)?;
    let h_in_h = h_group.contains(&h_perm);
    checks.push(AssumptionCheck::new("h_in_h", h_in_h, format!("h = {h}")));
    let deranges = if m_in_h && h_in_h {
        let ca = coset_action(h_group, &m_group, cap)?;
        let fixed = ca.image_of(&h_perm)?.fixed_point_count();
        checks.push(AssumptionCheck::new(
            "h_deranges_h_mod_m",
            fixed == 0,
            format!("h fixes {fixed} of {} cosets of M", ca.degree()),
        ));
        fixed == 0
    } else {
        false
    };
    let (_, image, _) = mat_rank_image_kernel(h, true);
    let outside = v.len() == h.dim() && !image.contains(v);
    checks.push(AssumptionCheck::new(
        "v_outside_image",
        outside,
        format!("im(h - 1) has dimension {}", image.dimension()),
    ));
    let mut report = AffineDerangementReport {
        checks,
        map: None,
        element: None,
        orbit_sizes: Vec::new(),
        derangement_by_fixed_points: false,
        derangement_by_conjugates: false,
    };
    if !(m_in_h && h_in_h && deranges && outside) {
        return Ok(report);
    }

    let h_inv = h.inverse().expect("h is invertible");
    let map = AffineMap::new(v.to_vec(), h_inv)?;
    let on_v = map.to_permutation(cap)?;
    let mut vm_gens = affine.translations.generators().to_vec();
    vm_gens.extend(m_perms);
    let vm = PermGroup::new(n, vm_gens)?;
    let ca = coset_action(&affine.group, &vm, cap)?;
    let union = disjoint_union(&[affine.group.generators().to_vec(), ca.quotient_images.clone()])?;
    let element = on_v.direct_sum(&ca.image_of(&on_v)?);
    if !union.group().contains(&element) {
        return Err(Error::InvariantViolation("constructed element is not in V:H".into()));
    }
    report.orbit_sizes = union.orbit_sizes();
    report.derangement_by_fixed_points = is_derangement(&element, &union);
    report.derangement_by_conjugates = affine
        .group
        .elements(cap)?
        .all(|x| {
            let c = on_v.conjugate_by(&x);
            !h_group.contains(&c) && !vm.contains(&c)
        });
    report.map = Some(map);
    report.element = Some(element);
    if !report.verified() {
        return Err(Error::InvariantViolation(format!(
            "(v, h^-1) with v = {v:?} is not a derangement"
        )));
    }
    Ok(report)
}

#[derive(Clone, Debug)]
pub struct IsbellReport {
    pub checks: Vec<AssumptionCheck>,
    pub witness: Option<Permutation>,
    pub witness_order: Option<BigUint>,
    pub witness_matrix: Option<MatrixFp>,
    pub fixed_vector: Option<Vec<u32>>,
    /// Whether p divides the order of a point stabilizer.
    pub p_divides_stabilizer: Option<bool>,
    pub classes_examined: usize,
}

impl IsbellReport {
    pub fn preconditions_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "assumptions_checked": self.checks.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
            "status": if !self.preconditions_hold() {
                "preconditions_unmet"
            } else if self.witness.is_some() {
                "witness_found"
            } else {
                "no_witness"
            },
            "witness_cycles": self.witness.as_ref().map(|w| w.to_cycle_string()),
            "witness_order": self.witness_order.as_ref().map(|o| o.to_string()),
            "witness_matrix": self.witness_matrix.as_ref().map(|m| m.to_string()),
            "fixed_vector": self.fixed_vector,
            "p_divides_stabilizer": self.p_divides_stabilizer,
            "classes_examined": self.classes_examined,
        })
    }
}

fn matrix_from_vector_permutation(
    field: &Arc<Field>,
    d: usize,
    perm: &Permutation,
) -> Result<MatrixFp> {
    let mut entries = Vec::with_capacity(d * d);
    for i in 0..d {
        let mut e = vec![0; d];
        e[i] = 1;
        entries.extend(decode_vector(field, d, perm.image(encode_vector(field, &e))));
    }
    MatrixFp::new(field.clone(), d, entries)
}

/// Searches a primitive group for a derangement whose image under `rho`
/// fixes a nonzero vector. `rho` lists the images of the group's
/// generators. A homomorphism is confirmed by the graph group having the
/// group's order; faithfulness by the image having it too.
pub fn isbell_witness(group: &PermGroup, rho: &[MatrixFp], cap: usize) -> Result<IsbellReport> {
    let mut report = IsbellReport {
        checks: Vec::new(),
        witness: None,
        witness_order: None,
        witness_matrix: None,
        fixed_vector: None,
        p_divides_stabilizer: None,
        classes_examined: 0,
    };
    let n = group.degree();
    let count_ok = rho.len() == group.generators().len() && !rho.is_empty();
    report.checks.push(AssumptionCheck::new(
        "generator_images",
        count_ok,
        format!("{} matrices for {} generators", rho.len(), group.generators().len()),
    ));
    if !count_ok {
        return Ok(report);
    }
    let field = rho[0].field().clone();
    let d = rho[0].dim();
    if field.degree() != 1 || rho.iter().any(|m| m.dim() != d || m.field() != &field) {
        return Err(Error::InvalidInput("rho must be matrices of one size over F_p".into()));
    }
    let p = field.p();
    let primitive = group.is_transitive() && n > 1 && is_primitive(group)?.is_primitive();
    report.checks.push(AssumptionCheck::new("primitive", primitive, format!("degree {n}")));

    let vec_perms = rho
        .iter()
        .map(|m| m.to_permutation(cap))
        .collect::<Result<Vec<_>>>()?;
    let graph_gens: Vec<Permutation> = group
        .generators()
        .iter()
        .zip(&vec_perms)
        .map(|(g, m)| g.direct_sum(m))
        .collect();
    let vn = space_size(&field, d, cap)?;
    let graph = PermGroup::new(n + vn, graph_gens)?;
    let hom = graph.order() == group.order();
    report.checks.push(AssumptionCheck::new(
        "homomorphism",
        hom,
        format!("graph group order {} vs group order {}", graph.order(), group.order()),
    ));
    let image = linear_group(&field, d, rho, cap)?;
    let faithful = hom && image.order() == group.order();
    report.checks.push(AssumptionCheck::new(
        "faithful",
        faithful,
        format!("image order {}", image.order()),
    ));
    let irreducible = is_irreducible(&field, d, rho, cap)?.is_irreducible();
    report.checks.push(AssumptionCheck::new("irreducible", irreducible, format!("dimension {d} over F_{p}")));
    let pd = BigUint::from(p).pow(d as u32);
    let divides = (BigUint::from(n) % &pd).is_zero();
    report.checks.push(AssumptionCheck::new(
        "p_power_divides_degree",
        divides,
        format!("{p}^{d} and degree {n}"),
    ));
    if group.is_transitive() {
        let stab = group.order() / BigUint::from(n);
        report.p_divides_stabilizer = Some((stab % p).is_zero());
    }
    if !report.preconditions_hold() {
        return Ok(report);
    }

    let omega: Vec<usize> = (0..n).collect();
    let table = graph.conjugacy_classes(cap)?;
    for rep in &table.representatives {
        report.classes_examined += 1;
        if rep.fixed_points_in(&omega) != 0 {
            continue;
        }
        let fixed = (1..vn).find(|&i| rep.image(n + i) == n + i);
        if let Some(i) = fixed {
            let on_omega = rep.restrict(&omega)?;
            let on_v = rep.restrict(&(n..n + vn).collect::<Vec<_>>())?;
            report.witness_order = Some(on_omega.order());
            report.witness = Some(on_omega);
            report.witness_matrix = Some(matrix_from_vector_permutation(&field, d, &on_v)?);
            report.fixed_vector = Some(decode_vector(&field, d, i));
            break;
        }
    }
    if report.witness.is_none() {
        return Err(Error::InvariantViolation(
            "no derangement fixes a nonzero vector although every precondition holds".into(),
        ));
    }
    Ok(report)
}

/// Largest `q^(m^2)` scanned when listing unipotent matrices.
pub const DEFAULT_UNIPOTENT_SCAN_CAP: usize = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnipotentType {
    /// Jordan block sizes, descending.
    pub partition: Vec<usize>,
    pub count: usize,
    /// Whether the Jordan form has all entries in F_p.
    pub jordan_form_over_subfield: bool,
    /// Members for which an explicit conjugator into the Jordan form was
    /// found.
    pub conjugated: usize,
}

#[derive(Clone, Debug)]
pub struct SubfieldReport {
    pub m: usize,
    pub p: u32,
    pub q: u32,
    pub modulus: String,
    pub index: BigUint,
    pub index_valuation: u32,
    pub required_exponent: u32,
    pub divides: bool,
    /// `2m >= 6`.
    pub in_stated_range: bool,
    /// Least `m` (up to 12) for which `p^(2m)` divides the index.
    pub least_m_with_divisibility: Option<usize>,
    pub unipotent_count: usize,
    pub expected_unipotent_count: BigUint,
    pub types: Vec<UnipotentType>,
    pub all_meet_subgroup: bool,
}

impl SubfieldReport {
    pub fn to_json(&self) -> Value {
        json!({
            "m": self.m,
            "p": self.p,
            "q": self.q,
            "modulus": self.modulus,
            "index": self.index.to_string(),
            "index_valuation": self.index_valuation,
            "required_exponent": self.required_exponent,
            "divides": self.divides,
            "in_stated_range": self.in_stated_range,
            "least_m_with_divisibility": self.least_m_with_divisibility,
            "unipotent_count": self.unipotent_count,
            "expected_unipotent_count": self.expected_unipotent_count.to_string(),
            "types": self.types.iter().map(|t| json!({
                "partition": t.partition,
                "count": t.count,
                "jordan_form_over_subfield": t.jordan_form_over_subfield,
                "conjugated": t.conjugated,
            })).collect::<Vec<_>>(),
            "all_meet_subgroup": self.all_meet_subgroup,
        })
    }
}

fn jordan_type(a: &MatrixFp) -> Vec<usize> {
    let m = a.dim();
    let mut ranks = vec![m];
    let mut power = MatrixFp::identity(a.field().clone(), m);
    for _ in 0..m {
        power = power.mul_unchecked(a);
        ranks.push(power.rank());
    }
    // blocks of size >= k: ranks[k-1] - ranks[k]
    let at_least: Vec<usize> = (1..=m).map(|k| ranks[k - 1] - ranks[k]).collect();
    let mut parts = Vec::new();
    for k in (1..=m).rev() {
        let exact = at_least[k - 1] - at_least.get(k).copied().unwrap_or(0);
        parts.extend(std::iter::repeat(k).take(exact));
    }
    parts
}

fn jordan_form(field: &Arc<Field>, partition: &[usize]) -> MatrixFp {
    let m: usize = partition.iter().sum();
    let mut entries = MatrixFp::identity(field.clone(), m).entries().to_vec();
    let mut start = 0;
    for &b in partition {
        for i in start..start + b - 1 {
            entries[i * m + i + 1] = 1;
        }
        start += b;
    }
    MatrixFp::new(field.clone(), m, entries).expect("valid entries")
}

/// An invertible `X` with `X u = J X`, so that `X u X^-1 = J`.
fn conjugator(u: &MatrixFp, j: &MatrixFp) -> Option<MatrixFp> {
    let field = u.field();
    let m = u.dim();
    if u == j {
        return Some(MatrixFp::identity(field.clone(), m));
    }
    let f = &**field;
    // unknown x_(k,l) at column k*m + l; equation (i,j) at row i*m + j:
    // sum_l x_(i,l) u_(l,j) - sum_k J_(i,k) x_(k,j) = 0
    let nv = m * m;
    let mut rows = vec![vec![0u32; nv]; nv];
    for i in 0..m {
        for c in 0..m {
            let row = &mut rows[i * m + c];
            for l in 0..m {
                row[i * m + l] = f.add(row[i * m + l], u.get(l, c));
            }
            for k in 0..m {
                row[k * m + c] = f.sub(row[k * m + c], j.get(i, k));
            }
        }
    }
    let rref = row_reduce(f, rows);
    let pivots: Vec<usize> = rref.iter().map(|r| r.iter().position(|&x| x != 0).unwrap()).collect();
    let free: Vec<usize> = (0..nv).filter(|c| !pivots.contains(c)).collect();
    let basis: Vec<Vec<u32>> = free
        .iter()
        .map(|&fc| {
            let mut v = vec![0; nv];
            v[fc] = 1;
            for (row, &pc) in rref.iter().zip(&pivots) {
                v[pc] = f.neg(row[fc]);
            }
            v
        })
        .collect();
    let q = f.order() as usize;
    let total = q.checked_pow(basis.len() as u32)?;
    for code in 1..total {
        let coeffs = decode_vector(field, basis.len(), code);
        let mut x = vec![0; nv];
        for (c, b) in coeffs.iter().zip(&basis) {
            if *c == 0 {
                continue;
            }
            for (xi, &bi) in x.iter_mut().zip(b) {
                *xi = f.add(*xi, f.mul(*c, bi));
            }
        }
        let xm = MatrixFp::new(field.clone(), m, x).expect("valid entries");
        if xm.is_invertible() {
            return Some(xm);
        }
    }
    None
}

fn subfield_index(m: usize, p: u32) -> BigUint {
    let q = (p as u64) * (p as u64);
    gl_order(q, m as u32) / gl_order(p as u64, m as u32)
}

/// For `G = GL_m(p^2)` and `H = GL_m(p)`: the p-part of `|G:H|`, and for
/// every unipotent element of `G` its Jordan type and an explicit
/// conjugator carrying it to a Jordan form with entries in F_p.
pub fn subfield_unipotent_check(m: usize, p: u32, cap: usize) -> Result<SubfieldReport> {
    if m == 0 {
        return Err(Error::InvalidInput("m must be positive".into()));
    }
    let field = Field::extension(p, 2)?;
    let q = field.order();
    let total = (q as usize)
        .checked_pow((m * m) as u32)
        .filter(|&t| t <= cap)
        .ok_or_else(|| Error::cap("unipotent scan", format!("{q}^{}", m * m), cap))?;
    let index = subfield_index(m, p);
    let index_valuation = big_valuation(&index, p);
    let required_exponent = 2 * m as u32;
    let least_m_with_divisibility =
        (1..=12).find(|&k| big_valuation(&subfield_index(k, p), p) >= 2 * k as u32);

    let mut types: Vec<UnipotentType> = Vec::new();
    let mut forms: Vec<MatrixFp> = Vec::new();
    let mut unipotent_count = 0;
    for code in 0..total {
        let a = MatrixFp::new(field.clone(), m, decode_vector(&field, m * m, code))?;
        if !a.pow(m as u64).is_zero() {
            continue;
        }
        unipotent_count += 1;
        let u = a.add(&MatrixFp::identity(field.clone(), m))?;
        let partition = jordan_type(&a);
        let slot = match types.iter().position(|t| t.partition == partition) {
            Some(s) => s,
            None => {
                let j = jordan_form(&field, &partition);
                types.push(UnipotentType {
                    partition: partition.clone(),
                    count: 0,
                    jordan_form_over_subfield: j.over_prime_subfield(),
                    conjugated: 0,
                });
                forms.push(j);
                types.len() - 1
            }
        };
        types[slot].count += 1;
        if let Some(x) = conjugator(&u, &forms[slot]) {
            let xi = x.inverse().expect("invertible");
            if x.mul(&u)?.mul(&xi)? == forms[slot] {
                types[slot].conjugated += 1;
            }
        }
    }
    types.sort_by(|a, b| b.partition.cmp(&a.partition));
    let all_meet_subgroup = types
        .iter()
        .all(|t| t.jordan_form_over_subfield && t.conjugated == t.count);
    let expected_unipotent_count = BigUint::from(q).pow((m * (m - 1)) as u32);
    Ok(SubfieldReport {
        m,
        p,
        q,
        modulus: field.modulus_string(),
        index,
        index_valuation,
        required_exponent,
        divides: index_valuation >= required_exponent,
        in_stated_range: 2 * m >= 6,
        least_m_with_divisibility,
        unipotent_count,
        expected_unipotent_count,
        types,
        all_meet_subgroup,
    })
}

/// Kind of a maximal subgroup `K` of a primitive affine group `V:H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AffineMaximal {
    /// `K` meets `V` trivially and has the order of `H`.
    Complement { order: BigUint },
    /// `K = V:M` with `M = K ∩ H`.
    ContainsTranslations {
        order: BigUint,
        m_order: BigUint,
        m_maximal_in_h: bool,
    },
    Other { order: BigUint },
}

/// Sorts every maximal subgroup of `V:H` into complements of `V` and
/// subgroups `V:M`.
pub fn classify_affine_maximals(affine: &AffineGroup, lattice_cap: usize) -> Result<Vec<AffineMaximal>> {
    let lattice = all_subgroups(&affine.group, lattice_cap)?;
    let v_rec = lattice
        .find(&affine.translations)?
        .ok_or_else(|| Error::InvariantViolation("translation subgroup missing from lattice".into()))?;
    let h_rec = lattice
        .find(&affine.linear)?
        .ok_or_else(|| Error::InvariantViolation("linear subgroup missing from lattice".into()))?;
    let v_set = lattice.members(v_rec);
    let h_set = lattice.members(h_rec);
    let locate = |set: &BitSet| (0..lattice.len()).find(|&i| lattice.members(i) == set);
    let mut out = Vec::new();
    for (i, rec) in lattice.records().iter().enumerate() {
        if !rec.is_maximal {
            continue;
        }
        let k = lattice.members(i);
        let order = rec.order.clone();
        if v_set.is_subset(k) {
            let m_set = k.intersection(h_set);
            let m_rec = locate(&m_set).expect("intersection of subgroups is a subgroup");
            let m_maximal_in_h = m_set != *h_set
                && !(0..lattice.len()).any(|j| {
                    let s = lattice.members(j);
                    s != &m_set && s != h_set && m_set.is_subset(s) && s.is_subset(h_set)
                });
            out.push(AffineMaximal::ContainsTranslations {
                order,
                m_order: lattice.records()[m_rec].order.clone(),
                m_maximal_in_h,
            });
        } else if k.intersection(v_set).len() == 1 && rec.order == lattice.records()[h_rec].order {
            out.push(AffineMaximal::Complement { order });
        } else {
            out.push(AffineMaximal::Other { order });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine::linear::{affine_group, enumerate_gl, gl_generators, DEFAULT_MATRIX_SCAN_CAP};
    use crate::constructions::named::gl_natural_group;
    use crate::group::DEFAULT_ENUMERATION_CAP as CAP;

    fn f(p: u32) -> Arc<Field> {
        Field::prime(p).unwrap()
    }

    fn mat(p: u32, rows: &[&[i64]]) -> MatrixFp {
        MatrixFp::from_rows(f(p), &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn s4_affine() -> AffineGroup {
        affine_group(&f(2), 2, &gl_generators(&f(2), 2), 1 << 10).unwrap()
    }

    #[test]
    fn admissible_vectors() {
        let h = mat(2, &[&[1, 1], &[0, 1]]);
        assert_eq!(admissible_vector(&h), Some(vec![1, 0]));
        let g = mat(2, &[&[0, 1], &[1, 1]]);
        assert_eq!(admissible_vector(&g), None);
    }

    #[test]
    fn transvection_construction() {
        let a = s4_affine();
        let c3 = vec![mat(2, &[&[0, 1], &[1, 1]])];
        let h = mat(2, &[&[1, 1], &[0, 1]]);
        let r = affine_derangement_from(&a, &c3, &h, &[1, 0], CAP).unwrap();
        assert!(r.verified());
        assert_eq!(r.orbit_sizes, vec![4, 2]);
        // (0, 1) lies in im(h - 1)
        let r = affine_derangement_from(&a, &c3, &h, &[0, 1], CAP).unwrap();
        assert!(r.map.is_none());
        let failed: Vec<&str> = r.checks.iter().filter(|c| !c.holds).map(|c| c.name.as_str()).collect();
        assert_eq!(failed, ["v_outside_image"]);
    }

    #[test]
    fn non_derangement_h_is_rejected() {
        let a = s4_affine();
        let c3 = vec![mat(2, &[&[0, 1], &[1, 1]])];
        // h in M fixes the coset M
        let h = mat(2, &[&[0, 1], &[1, 1]]);
        let r = affine_derangement_from(&a, &c3, &h, &[1, 0], CAP).unwrap();
        assert!(r.map.is_none());
        assert!(r.checks.iter().any(|c| c.name == "h_deranges_h_mod_m" && !c.holds));
    }

    fn gl32_on_8_points() -> (PermGroup, Vec<MatrixFp>) {
        let (g7, mats) = gl_natural_group(2, 3).unwrap();
        let lattice = all_subgroups(&g7, 400).unwrap();
        let r = lattice
            .records()
            .iter()
            .position(|r| r.order == BigUint::from(21u32))
            .unwrap();
        let h = lattice.group_of(r).unwrap();
        let ca = coset_action(&g7, &h, CAP).unwrap();
        (PermGroup::new(8, ca.quotient_images).unwrap(), mats)
    }

    #[test]
    fn isbell_gl32() {
        let (g, rho) = gl32_on_8_points();
        assert_eq!(g.order_usize(), Some(168));
        let r = isbell_witness(&g, &rho, CAP).unwrap();
        assert!(r.preconditions_hold(), "{:?}", r.checks);
        let w = r.witness.unwrap();
        assert_eq!(w.fixed_point_count(), 0);
        let mtx = r.witness_matrix.unwrap();
        let v = r.fixed_vector.unwrap();
        assert_eq!(mtx.act(&v), v);
        assert!(v.iter().any(|&x| x != 0));
        assert_eq!(r.p_divides_stabilizer, Some(false));
    }

    #[test]
    fn isbell_filters() {
        // AGL1(5) on 5 points with the 1-dimensional rep sending the
        // translation to 1 is not faithful
        let g = PermGroup::new(
            5,
            vec![
                Permutation::parse_cycles(5, "(1 2 3 4 5)").unwrap(),
                Permutation::parse_cycles(5, "(2 3 5 4)").unwrap(),
            ],
        )
        .unwrap();
        let rho = vec![mat(5, &[&[1]]), mat(5, &[&[2]])];
        let r = isbell_witness(&g, &rho, CAP).unwrap();
        assert!(!r.preconditions_hold());
        assert!(r.witness.is_none());
        // S4 = AGL2(2) on 4 points, rho onto GL2(2) kills V4
        let a = s4_affine();
        let mut rho = vec![MatrixFp::identity(f(2), 2); 2];
        rho.extend(gl_generators(&f(2), 2));
        let r = isbell_witness(&a.group, &rho, CAP).unwrap();
        let faithful = r.checks.iter().find(|c| c.name == "faithful").unwrap();
        assert!(!faithful.holds);
        // wrong relations: not a homomorphism
        let (g, mut rho) = gl32_on_8_points();
        rho[0] = MatrixFp::identity(f(2), 3);
        let r = isbell_witness(&g, &rho, CAP).unwrap();
        assert!(!r.checks.iter().find(|c| c.name == "homomorphism").unwrap().holds);
    }

    #[test]
    fn jordan_types() {
        let f2 = f(2);
        let a = MatrixFp::new(f2.clone(), 3, vec![0, 1, 0, 0, 0, 1, 0, 0, 0]).unwrap();
        assert_eq!(jordan_type(&a), vec![3]);
        let b = MatrixFp::new(f2.clone(), 3, vec![0, 1, 0, 0, 0, 0, 0, 0, 0]).unwrap();
        assert_eq!(jordan_type(&b), vec![2, 1]);
        assert_eq!(jordan_type(&MatrixFp::zero(f2, 3)), vec![1, 1, 1]);
    }

    #[test]
    fn subfield_small_cases() {
        let r = subfield_unipotent_check(2, 2, DEFAULT_UNIPOTENT_SCAN_CAP).unwrap();
        assert!(!r.in_stated_range);
        assert_eq!(BigUint::from(r.unipotent_count), r.expected_unipotent_count);
        assert!(r.all_meet_subgroup);
        assert_eq!(r.types.len(), 2);
        let r = subfield_unipotent_check(1, 3, DEFAULT_UNIPOTENT_SCAN_CAP).unwrap();
        assert_eq!(r.unipotent_count, 1);
        assert_eq!(r.index, BigUint::from(4u32));
        assert_eq!(r.least_m_with_divisibility, Some(5));
    }

    #[test]
    fn subfield_index_by_enumeration() {
        // |GL2(4)| = 180 and |GL2(2)| = 6
        let f4 = Field::extension(2, 2).unwrap();
        let n4 = enumerate_gl(&f4, 2, DEFAULT_MATRIX_SCAN_CAP).unwrap().len();
        let n2 = enumerate_gl(&f(2), 2, DEFAULT_MATRIX_SCAN_CAP).unwrap().len();
        assert_eq!(BigUint::from(n4 / n2), subfield_index(2, 2));
    }

    #[test]
    fn maximal_subgroups_of_affine_groups() {
        let a = s4_affine();
        let kinds = classify_affine_maximals(&a, 400).unwrap();
        assert!(!kinds.iter().any(|k| matches!(k, AffineMaximal::Other { .. })));
        let complements = kinds.iter().filter(|k| matches!(k, AffineMaximal::Complement { .. })).count();
        assert_eq!(complements, 4);
        for k in &kinds {
            if let AffineMaximal::ContainsTranslations { m_maximal_in_h, .. } = k {
                assert!(m_maximal_in_h);
            }
        }
        let f7 = f(7);
        let agl17 = affine_group(&f7, 1, &[mat(7, &[&[3]])], 1 << 10).unwrap();
        let kinds = classify_affine_maximals(&agl17, 400).unwrap();
        assert_eq!(
            kinds.iter().filter(|k| matches!(k, AffineMaximal::Complement { .. })).count(),
            7
        );
        assert_eq!(
            kinds.iter().filter(|k| matches!(k, AffineMaximal::ContainsTranslations { .. })).count(),
            2
        );
    }
}
