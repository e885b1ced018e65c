//! The order-96 group `2^3.A4` given by a presentation, with a maximal
//! subgroup of order 24 and an abelian subgroup of order 8 whose conjugates
//! together cover it.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::actions::coset_action;
use crate::derangements::{is_normal_covering, AssumptionCheck, CoveringReport};
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::lattice::{all_subgroups, SubgroupRecord, DEFAULT_LATTICE_CAP};
use crate::perm::Permutation;

use super::presentation::Presentation;
use super::todd_coxeter::{coset_permutation_group, evaluate_word, DEFAULT_COSET_CAP};

pub const EXAMPLE_PRESENTATION: &str = "gens: x, y, z, t;
rels: x^4 = y^4 = z^2 = t^3 = [x,z] = [y,z] = 1, [x,y] = z, x^t = y, y^t = (xy)^-1;";

pub const H1_WORDS: [&str; 4] = ["x^2", "y^2", "z", "t"];
pub const H2_WORDS: [&str; 2] = ["x", "y^2"];
pub const N_WORDS: [&str; 3] = ["x^2", "y^2", "z"];

#[derive(Clone, Debug)]
pub struct Example {
    pub presentation: Presentation,
    /// Faithful action on the cosets of H2 when its core is trivial,
    /// otherwise the regular action.
    pub group: PermGroup,
    pub regular_degree: usize,
    pub h1: PermGroup,
    pub h2: PermGroup,
    pub n: PermGroup,
    pub h1_record: SubgroupRecord,
    pub h2_record: SubgroupRecord,
    pub covering: CoveringReport,
    pub checks: Vec<AssumptionCheck>,
}

impl Example {
    pub fn to_json(&self) -> Value {
        json!({
            "presentation": self.presentation.to_string(),
            "relator_count": self.presentation.relators.len(),
            "regular_degree": self.regular_degree,
            "degree": self.group.degree(),
            "order": self.group.order().to_string(),
            "h1_order": self.h1.order().to_string(),
            "h2_order": self.h2.order().to_string(),
            "n_order": self.n.order().to_string(),
            "covering": self.covering.to_json(),
            "checks": self.checks.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
        })
    }
}

fn order_profile(group: &PermGroup) -> Result<BTreeMap<u64, usize>> {
    let mut counts = BTreeMap::new();
    for g in group.elements(DEFAULT_LATTICE_CAP)? {
        let o = num_traits::ToPrimitive::to_u64(&g.order()).unwrap_or(u64::MAX);
        *counts.entry(o).or_insert(0) += 1;
    }
    Ok(counts)
}

fn profile_string(p: &BTreeMap<u64, usize>) -> String {
    p.iter().map(|(o, c)| format!("{o}:{c}")).collect::<Vec<_>>().join(" ")
}

fn words_to_group(pr: &Presentation, words: &[&str], group: &PermGroup) -> Result<PermGroup> {
    let gens = words
        .iter()
        .map(|w| evaluate_word(&pr.parse_word(w)?, group.generators()))
        .collect::<Result<Vec<Permutation>>>()?;
    group.subgroup(gens)
}

/// Builds the group and checks every claim made about it. Any failed check
/// is reported as an invariant violation.
pub fn example_2_2() -> Result<Example> {
    let presentation = Presentation::parse(EXAMPLE_PRESENTATION)?;
    let (table, regular) = coset_permutation_group(&presentation, &[], DEFAULT_COSET_CAP)?;
    let regular_degree = table.len();

    let h2_regular = words_to_group(&presentation, &H2_WORDS, &regular)?;
    let on_h2 = coset_action(&regular, &h2_regular, DEFAULT_COSET_CAP)?;
    let group = if on_h2.kernel.is_trivial() {
        on_h2.image_group.clone()
    } else {
        regular
    };

    let h1 = words_to_group(&presentation, &H1_WORDS, &group)?;
    let h2 = words_to_group(&presentation, &H2_WORDS, &group)?;
    let n = words_to_group(&presentation, &N_WORDS, &group)?;

    let lattice = all_subgroups(&group, DEFAULT_LATTICE_CAP)?;
    let record = |h: &PermGroup, name: &str| -> Result<SubgroupRecord> {
        let i = lattice
            .find(h)?
            .ok_or_else(|| Error::InvariantViolation(format!("{name} missing from the lattice")))?;
        Ok(lattice.records()[i].clone())
    };
    let h1_record = record(&h1, "H1")?;
    let h2_record = record(&h2, "H2")?;

    let mut checks = Vec::new();
    let order = group.order_usize();
    checks.push(AssumptionCheck::new("order_96", order == Some(96), format!("|G| = {}", group.order())));
    checks.push(AssumptionCheck::new(
        "h1_order_24",
        h1.order_usize() == Some(24),
        format!("|H1| = {}", h1.order()),
    ));
    checks.push(AssumptionCheck::new(
        "h1_maximal",
        h1_record.is_maximal,
        "by inclusion in the subgroup lattice",
    ));
    checks.push(AssumptionCheck::new(
        "h2_order_8",
        h2.order_usize() == Some(8),
        format!("|H2| = {}", h2.order()),
    ));
    let abelian = h2
        .generators()
        .iter()
        .all(|a| h2.generators().iter().all(|b| a.then(b) == b.then(a)));
    let h2_profile = order_profile(&h2)?;
    let c4xc2: BTreeMap<u64, usize> = [(1, 1), (2, 3), (4, 4)].into();
    checks.push(AssumptionCheck::new(
        "h2_is_c4_x_c2",
        abelian && h2_profile == c4xc2,
        format!("abelian={abelian}, element orders {}", profile_string(&h2_profile)),
    ));
    let normal = group
        .generators()
        .iter()
        .all(|g| n.generators().iter().all(|m| n.contains(&m.conjugate_by(g))));
    checks.push(AssumptionCheck::new(
        "n_normal_order_8",
        normal && n.order_usize() == Some(8),
        format!("normal={normal}, |N| = {}", n.order()),
    ));
    let quotient = coset_action(&group, &n, DEFAULT_COSET_CAP)?;
    let q_profile = order_profile(&quotient.image_group)?;
    let a4: BTreeMap<u64, usize> = [(1, 1), (2, 3), (3, 8)].into();
    checks.push(AssumptionCheck::new(
        "quotient_is_a4",
        quotient.kernel.same_group(&n) && q_profile == a4,
        format!(
            "|G/N| = {}, element orders {}",
            quotient.image_group.order(),
            profile_string(&q_profile)
        ),
    ));
    let covering = is_normal_covering(&group, &[h1.clone(), h2.clone()], DEFAULT_LATTICE_CAP)?;
    checks.push(AssumptionCheck::new(
        "covering",
        covering.covered,
        "every conjugacy class meets H1 or H2",
    ));

    if let Some(bad) = checks.iter().find(|c| !c.holds) {
        return Err(Error::InvariantViolation(format!(
            "order-96 example: {} failed ({})",
            bad.name, bad.detail
        )));
    }
    Ok(Example {
        presentation,
        group,
        regular_degree,
        h1,
        h2,
        n,
        h1_record,
        h2_record,
        covering,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derangements::find_derangement;
    use crate::actions::disjoint_union;

    #[test]
    fn all_claims_hold() {
        let ex = example_2_2().unwrap();
        assert_eq!(ex.regular_degree, 96);
        assert_eq!(ex.group.order_usize(), Some(96));
        assert_eq!(ex.presentation.relators.len(), 9);
        assert!(ex.checks.iter().all(|c| c.holds));
        assert!(!ex.h2_record.is_maximal);
        assert!(ex.h1_record.is_maximal);
    }

    #[test]
    fn coset_actions_have_degrees_4_and_12() {
        let ex = example_2_2().unwrap();
        let a1 = coset_action(&ex.group, &ex.h1, 1000).unwrap();
        let a2 = coset_action(&ex.group, &ex.h2, 1000).unwrap();
        assert_eq!((a1.degree(), a2.degree()), (4, 12));
        let union = disjoint_union(&[a1.quotient_images, a2.quotient_images]).unwrap();
        assert!(!find_derangement(&union, 1000).unwrap().has_derangement());
    }
}
