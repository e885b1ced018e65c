//! The default catalog of groups and actions used by the harnesses.
//!
//! The manifest is static data; [`build_catalog`] turns it into actions.
//! A `maximal_cosets` entry expands into one transitive action per class of
//! maximal subgroups of its parent, provided the parent's order is within
//! the lattice cap.

use serde::Serialize;
use serde_json::Value;

use crate::actions::{coset_action, MultiOrbitAction};
use crate::affine::{affine_group, gl_generators, is_prime, Field, MatrixFp};
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::lattice::{all_subgroups, subgroup_conjugacy_classes, DEFAULT_LATTICE_CAP};

use super::example::example_2_2;
use super::named::{agl1, named_group, Family};

/// Largest `p^d` for affine catalog entries.
pub const AFFINE_DEGREE_LIMIT: u64 = 64;
/// Largest prime for the `agl1` family.
pub const AGL1_PRIME_LIMIT: u32 = 31;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CatalogItem {
    Named { name: String, family: String, params: Vec<u64> },
    Agl1 { name: String, p: u32 },
    Example { name: String },
    /// `F_p^d : H` with H all of GL (`"gl"`), the transvection subgroup
    /// (`"sl"`) or, for d = 1, the multiplicative subgroup of order `k`.
    Affine { name: String, p: u32, d: usize, linear: String, k: u32 },
    MaximalCosets { name: String, parent: String },
}

impl CatalogItem {
    pub fn name(&self) -> &str {
        match self {
            CatalogItem::Named { name, .. }
            | CatalogItem::Agl1 { name, .. }
            | CatalogItem::Example { name }
            | CatalogItem::Affine { name, .. }
            | CatalogItem::MaximalCosets { name, .. } => name,
        }
    }
}

fn named(family: Family, tag: &str, params: Vec<u64>) -> (CatalogItem, Family) {
    (
        CatalogItem::Named {
            name: family.to_string(),
            family: tag.into(),
            params,
        },
        family,
    )
}

fn named_families() -> Vec<(CatalogItem, Family)> {
    use Family::*;
    let mut out = Vec::new();
    for n in 2..=24 {
        out.push(named(Cyclic(n), "cyclic", vec![n as u64]));
    }
    for n in 3..=15 {
        out.push(named(Dihedral(n), "dihedral", vec![n as u64]));
    }
    for n in 2..=6 {
        out.push(named(Symmetric(n), "symmetric", vec![n as u64]));
    }
    for n in 3..=7 {
        out.push(named(Alternating(n), "alternating", vec![n as u64]));
    }
    for (a, b) in [
        (Cyclic(2), Cyclic(2)),
        (Cyclic(2), Cyclic(4)),
        (Cyclic(3), Cyclic(3)),
        (Symmetric(3), Cyclic(2)),
        (Symmetric(3), Symmetric(3)),
        (Alternating(4), Cyclic(2)),
    ] {
        let fam = DirectProduct(Box::new(a), Box::new(b));
        out.push(named(fam, "direct_product", vec![]));
    }
    for (d, p) in [(2usize, 2u32), (2, 3), (3, 2)] {
        out.push(named(GlNatural { d, p }, "gl_natural", vec![d as u64, p as u64]));
    }
    for p in [5u32, 7, 11, 13] {
        out.push(named(Psl2 { p }, "psl2", vec![p as u64]));
    }
    out
}

fn affine_items() -> Vec<CatalogItem> {
    let mut out = Vec::new();
    for p in (2u32..=AFFINE_DEGREE_LIMIT as u32).filter(|&p| is_prime(p as u64)) {
        let mut d = 1usize;
        while (p as u64).pow(d as u32) <= AFFINE_DEGREE_LIMIT {
            if d == 1 {
                for k in (1..p).filter(|k| (p - 1) % k == 0) {
                    out.push(CatalogItem::Affine {
                        name: format!("F{p}:C{k}"),
                        p,
                        d,
                        linear: "units".into(),
                        k,
                    });
                }
            } else {
                for linear in ["gl", "sl"] {
                    let tag = if linear == "gl" { "AGL" } else { "ASL" };
                    out.push(CatalogItem::Affine {
                        name: format!("{tag}({d},{p})"),
                        p,
                        d,
                        linear: linear.into(),
                        k: 0,
                    });
                }
            }
            d += 1;
        }
    }
    out
}

/// Every construction in the default catalog, in a fixed order.
pub fn catalog_manifest() -> Vec<CatalogItem> {
    let mut base: Vec<CatalogItem> = named_families().into_iter().map(|(i, _)| i).collect();
    for p in (2..=AGL1_PRIME_LIMIT).filter(|&p| is_prime(p as u64)) {
        base.push(CatalogItem::Agl1 {
            name: format!("agl1({p})"),
            p,
        });
    }
    base.push(CatalogItem::Example {
        name: "example_2_2".into(),
    });
    base.extend(affine_items());
    let cosets: Vec<CatalogItem> = base
        .iter()
        .map(|i| CatalogItem::MaximalCosets {
            name: format!("{}/max", i.name()),
            parent: i.name().to_string(),
        })
        .collect();
    base.extend(cosets);
    base
}

pub fn manifest_json() -> Value {
    serde_json::to_value(catalog_manifest()).expect("manifest serializes")
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub action: MultiOrbitAction,
}

impl CatalogEntry {
    pub fn group(&self) -> &PermGroup {
        self.action.group()
    }

    pub fn is_transitive(&self) -> bool {
        self.action.orbits().len() == 1
    }
}

#[derive(Clone, Debug)]
pub struct Catalog {
    pub entries: Vec<CatalogEntry>,
    /// Items not built, with the reason.
    pub skipped: Vec<(String, String)>,
}

impl Catalog {
    pub fn get(&self, name: &str) -> Option<&CatalogEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    /// Transitive actions of degree > 1.
    pub fn transitive_actions(&self) -> impl Iterator<Item = &CatalogEntry> {
        self.entries
            .iter()
            .filter(|e| e.is_transitive() && e.action.domain_size() > 1)
    }

    /// Groups of order at most `max_order`, labelled by entry name.
    pub fn groups_up_to(&self, max_order: usize) -> Vec<(String, PermGroup)> {
        self.entries
            .iter()
            .filter(|e| e.group().order_usize().is_some_and(|o| o <= max_order))
            .map(|e| (e.name.clone(), e.group().clone()))
            .collect()
    }
}

fn affine_linear_gens(field: &std::sync::Arc<Field>, d: usize, linear: &str, k: u32) -> Result<Vec<MatrixFp>> {
    match linear {
        "gl" => Ok(gl_generators(field, d)),
        "sl" => {
            let mut g = gl_generators(field, d);
            let w = field.primitive_element();
            if w != 1 {
                g.pop();
            }
            Ok(g)
        }
        "units" => {
            let w = field.primitive_element();
            let mut x = 1u32;
            for _ in 0..(field.order() - 1) / k {
                x = field.mul(x, w);
            }
            Ok(vec![MatrixFp::new(field.clone(), 1, vec![x])?])
        }
        other => Err(Error::InvalidInput(format!("unknown linear part {other:?}"))),
    }
}

fn build_base(item: &CatalogItem, families: &[(CatalogItem, Family)]) -> Result<MultiOrbitAction> {
    match item {
        CatalogItem::Named { .. } => {
            let fam = &families.iter().find(|(i, _)| i == item).expect("named item").1;
            Ok(MultiOrbitAction::from_group(named_group(fam)?))
        }
        CatalogItem::Agl1 { p, .. } => agl1(*p),
        CatalogItem::Example { .. } => Ok(MultiOrbitAction::from_group(example_2_2()?.group)),
        CatalogItem::Affine { p, d, linear, k, .. } => {
            let field = Field::prime(*p)?;
            let gens = affine_linear_gens(&field, *d, linear, *k)?;
            Ok(MultiOrbitAction::from_group(affine_group(&field, *d, &gens, 1 << 16)?.group))
        }
        CatalogItem::MaximalCosets { .. } => unreachable!("expanded separately"),
    }
}

/// Builds every manifest item. Maximal coset actions are produced for
/// parents of order at most `lattice_cap`; larger parents are listed in
/// `skipped`.
pub fn build_catalog(lattice_cap: usize) -> Result<Catalog> {
    let families = named_families();
    let mut entries: Vec<CatalogEntry> = Vec::new();
    let mut skipped = Vec::new();
    for item in catalog_manifest() {
        match &item {
            CatalogItem::MaximalCosets { parent, .. } => {
                let base = entries
                    .iter()
                    .find(|e| &e.name == parent)
                    .map(|e| e.group().clone());
                let Some(group) = base else {
                    skipped.push((item.name().to_string(), "parent not built".into()));
                    continue;
                };
                if group.order_usize().is_none_or(|o| o > lattice_cap) {
                    skipped.push((
                        item.name().to_string(),
                        format!("parent order {} exceeds lattice cap {lattice_cap}", group.order()),
                    ));
                    continue;
                }
                entries.extend(maximal_coset_entries(parent, &group, lattice_cap)?);
            }
            _ => entries.push(CatalogEntry {
                name: item.name().to_string(),
                action: build_base(&item, &families)?,
            }),
        }
    }
    Ok(Catalog { entries, skipped })
}

pub fn default_catalog() -> Result<Catalog> {
    build_catalog(DEFAULT_LATTICE_CAP)
}

/// One coset action per conjugacy class of maximal subgroups, named
/// `parent/max[order].class`.
pub fn maximal_coset_entries(parent: &str, group: &PermGroup, cap: usize) -> Result<Vec<CatalogEntry>> {
    let lattice = all_subgroups(group, cap)?;
    let mut out = Vec::new();
    for class in subgroup_conjugacy_classes(&lattice) {
        let rep = class[0];
        let rec = &lattice.records()[rep];
        if !rec.is_maximal {
            continue;
        }
        let h = lattice.group_of(rep)?;
        let act = coset_action(group, &h, cap)?;
        out.push(CatalogEntry {
            name: format!("{parent}/max[{}].{}", rec.order, rec.conjugacy_class_id),
            action: MultiOrbitAction::from_group(act.image_group),
        });
    }
    Ok(out)
}
