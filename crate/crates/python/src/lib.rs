//! Python bindings: permutations, groups, derangement search, normal
//! coverings and a few report builders returning JSON text.

use num_bigint::BigUint;
use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use derange_core::constructions::{self, coset_permutation_group, Presentation};
use derange_core::derangements::{
    coset_average_fixed_points, find_derangement, find_prime_power_derangement,
    is_normal_covering, verify_conjecture,
};
use derange_core::invariants::{self, build_root_system, verify_lemma_3_1};
use derange_core::{
    Error, LabelledOrbit, MultiOrbitAction, PermGroup as CoreGroup, Permutation as CorePerm,
    DEFAULT_ENUMERATION_CAP, DEFAULT_LATTICE_CAP,
};

create_exception!(derange, CapExceededError, PyRuntimeError);
create_exception!(derange, InvariantViolationError, PyRuntimeError);

fn py_err(e: Error) -> PyErr {
    match e {
        Error::CapExceeded { .. } => CapExceededError::new_err(e.to_string()),
        Error::InvariantViolation(_) => InvariantViolationError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

/// A permutation of `{1..n}`, written in 1-based cycle notation.
#[pyclass(name = "Permutation", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct Permutation {
    inner: CorePerm,
}

#[pymethods]
impl Permutation {
    #[new]
    fn new(degree: usize, cycles: &str) -> PyResult<Self> {
        Ok(Permutation { inner: CorePerm::parse_cycles(degree, cycles).map_err(py_err)? })
    }

    /// From 0-based images.
    #[staticmethod]
    fn from_images(images: Vec<usize>) -> PyResult<Self> {
        Ok(Permutation { inner: CorePerm::from_images(images).map_err(py_err)? })
    }

    #[getter]
    fn degree(&self) -> usize {
        self.inner.degree()
    }

    fn images(&self) -> Vec<usize> {
        self.inner.images().collect()
    }

    /// `self` first, then `other`.
    fn then(&self, other: &Permutation) -> PyResult<Self> {
        Ok(Permutation { inner: self.inner.compose(&other.inner).map_err(py_err)? })
    }

    fn inverse(&self) -> Self {
        Permutation { inner: self.inner.inverse() }
    }

    fn order(&self) -> BigUint {
        self.inner.order()
    }

    fn fixed_point_count(&self) -> usize {
        self.inner.fixed_point_count()
    }

    fn __str__(&self) -> String {
        self.inner.to_cycle_string()
    }

    fn __repr__(&self) -> String {
        format!("Permutation({}, {:?})", self.inner.degree(), self.inner.to_cycle_string())
    }
}

#[pyclass(name = "PermGroup", frozen)]
struct PermGroup {
    inner: CoreGroup,
}

#[pymethods]
impl PermGroup {
    /// Generators in 1-based cycle notation.
    #[new]
    fn new(degree: usize, generators: Vec<String>) -> PyResult<Self> {
        let gens = generators
            .iter()
            .map(|g| CorePerm::parse_cycles(degree, g))
            .collect::<Result<Vec<_>, _>>()
            .map_err(py_err)?;
        Ok(PermGroup { inner: CoreGroup::new(degree, gens).map_err(py_err)? })
    }

    #[getter]
    fn degree(&self) -> usize {
        self.inner.degree()
    }

    fn order(&self) -> BigUint {
        self.inner.order().clone()
    }

    fn generators(&self) -> Vec<Permutation> {
        self.inner.generators().iter().map(|g| Permutation { inner: g.clone() }).collect()
    }

    fn contains(&self, p: &Permutation) -> bool {
        self.inner.contains(&p.inner)
    }

    fn __contains__(&self, p: &Permutation) -> bool {
        self.contains(p)
    }

    /// Orbits as 0-based point lists.
    fn orbits(&self) -> Vec<Vec<usize>> {
        self.inner.orbits()
    }

    fn is_transitive(&self) -> bool {
        self.inner.is_transitive()
    }

    fn is_primitive(&self) -> PyResult<bool> {
        Ok(derange_core::is_primitive(&self.inner).map_err(py_err)?.is_primitive())
    }

    /// A derangement on the whole domain, or `None`.
    #[pyo3(signature = (cap = DEFAULT_ENUMERATION_CAP))]
    fn find_derangement(&self, cap: usize) -> PyResult<Option<Permutation>> {
        let action = MultiOrbitAction::from_group(self.inner.clone());
        let r = find_derangement(&action, cap).map_err(py_err)?;
        Ok(r.witness.map(|w| Permutation { inner: w.element }))
    }

    #[pyo3(signature = (cap = DEFAULT_ENUMERATION_CAP))]
    fn find_prime_power_derangement(&self, cap: usize) -> PyResult<Option<Permutation>> {
        let action = MultiOrbitAction::from_group(self.inner.clone());
        let r = find_prime_power_derangement(&action, cap).map_err(py_err)?;
        Ok(r.witness.map(|w| Permutation { inner: w.element }))
    }

    /// Exact mean of fixed points over `G h`, as `(numerator, denominator)`.
    #[pyo3(signature = (h, cap = DEFAULT_ENUMERATION_CAP))]
    fn coset_average(&self, h: &Permutation, cap: usize) -> PyResult<(String, String)> {
        let avg = coset_average_fixed_points(&self.inner, &h.inner, cap).map_err(py_err)?;
        Ok((avg.numer().to_string(), avg.denom().to_string()))
    }

    /// Whether the conjugates of `subgroups` cover the group.
    #[pyo3(signature = (subgroups, cap = DEFAULT_ENUMERATION_CAP))]
    fn is_normal_covering(&self, subgroups: Vec<PyRef<'_, PermGroup>>, cap: usize) -> PyResult<bool> {
        let hs: Vec<CoreGroup> = subgroups.iter().map(|h| h.inner.clone()).collect();
        Ok(is_normal_covering(&self.inner, &hs, cap).map_err(py_err)?.covered)
    }

    /// Equal-order subgroup pairs that cover, as a JSON report.
    #[pyo3(signature = (label = "group", lattice_cap = DEFAULT_LATTICE_CAP))]
    fn verify_conjecture(&self, label: &str, lattice_cap: usize) -> PyResult<String> {
        let r = verify_conjecture(label, &self.inner, lattice_cap).map_err(py_err)?;
        Ok(r.to_json().to_string())
    }

    fn __repr__(&self) -> String {
        format!("PermGroup(degree={}, order={})", self.inner.degree(), self.inner.order())
    }
}

/// Whether the group has a derangement on the union of the given 0-based
/// orbits.
#[pyfunction]
#[pyo3(signature = (group, orbits, cap = DEFAULT_ENUMERATION_CAP))]
fn has_derangement(group: &PermGroup, orbits: Vec<Vec<usize>>, cap: usize) -> PyResult<bool> {
    let parts = orbits
        .into_iter()
        .enumerate()
        .map(|(i, points)| LabelledOrbit { label: format!("O{}", i + 1), points })
        .collect();
    let action = MultiOrbitAction::new(group.inner.clone(), parts).map_err(py_err)?;
    Ok(find_derangement(&action, cap).map_err(py_err)?.has_derangement())
}

/// AGL1(p) on F_p and on the cosets of F_p, with the orbit point lists.
#[pyfunction]
fn agl1(p: u32) -> PyResult<(PermGroup, Vec<Vec<usize>>)> {
    let a = constructions::agl1(p).map_err(py_err)?;
    let orbits = a.orbits().iter().map(|o| o.points.clone()).collect();
    Ok((PermGroup { inner: a.group().clone() }, orbits))
}

/// The order-96 example as a JSON report.
#[pyfunction]
fn example_report() -> PyResult<String> {
    Ok(constructions::example_2_2().map_err(py_err)?.to_json().to_string())
}

/// Index of the subgroup generated by `subgroup` words, and the order of
/// the group induced on its cosets.
#[pyfunction]
#[pyo3(signature = (presentation, subgroup = Vec::new(), cap = constructions::DEFAULT_COSET_CAP))]
fn coset_enumeration(presentation: &str, subgroup: Vec<String>, cap: usize) -> PyResult<(usize, BigUint)> {
    let pr = Presentation::parse(presentation).map_err(py_err)?;
    let words = subgroup
        .iter()
        .map(|w| pr.parse_word(w))
        .collect::<Result<Vec<_>, _>>()
        .map_err(py_err)?;
    let (table, group) = coset_permutation_group(&pr, &words, cap).map_err(py_err)?;
    Ok((table.len(), group.order().clone()))
}

/// Root count and last-node filter report for E6, E7 or E8, as JSON.
#[pyfunction]
fn root_report(rank: usize) -> PyResult<String> {
    let s = build_root_system(rank).map_err(py_err)?;
    Ok(verify_lemma_3_1(&s).to_json().to_string())
}

#[pyfunction]
fn v_p(n: BigUint, p: u64) -> PyResult<u64> {
    invariants::v_p(&n, p).map_err(py_err)
}

#[pyfunction]
fn vp_factorial(m: u64, p: u64) -> PyResult<u64> {
    invariants::vp_factorial(m, p).map_err(py_err)
}

#[pymodule]
fn derange(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Permutation>()?;
    m.add_class::<PermGroup>()?;
    m.add_function(wrap_pyfunction!(has_derangement, m)?)?;
    m.add_function(wrap_pyfunction!(agl1, m)?)?;
    m.add_function(wrap_pyfunction!(example_report, m)?)?;
    m.add_function(wrap_pyfunction!(coset_enumeration, m)?)?;
    m.add_function(wrap_pyfunction!(root_report, m)?)?;
    m.add_function(wrap_pyfunction!(v_p, m)?)?;
    m.add_function(wrap_pyfunction!(vp_factorial, m)?)?;
    m.add("CapExceededError", m.py().get_type::<CapExceededError>())?;
    m.add("InvariantViolationError", m.py().get_type::<InvariantViolationError>())?;
    Ok(())
}
