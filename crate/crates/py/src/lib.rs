//! Python bindings for the expansion library.
//!
//! Multisets cross the boundary as `dict[int, int]` (variable id to
//! multiplicity), partitions as `list[dict[int, int]]` with parts listed per
//! occurrence, and assignment keys as tuples of ids with repetition, e.g.
//! `(1, 1, 2)` for {1,1,2}. Big integers become Python ints and exact
//! rationals become `fractions.Fraction`.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use faadibruno::collapse as core_collapse;
use faadibruno::cumulants as core_cumulants;
use faadibruno::expansion as core_expansion;
use faadibruno::json as core_json;
use faadibruno::multiset::Multiset;
use faadibruno::multiset_partition as core_mpart;
use faadibruno::product as core_product;
use faadibruno::render as core_render;
use faadibruno::set_partition as core_spart;
use faadibruno::MultisetPartition;

type SigDict = BTreeMap<u32, u32>;

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn multiset_from_dict(d: &SigDict) -> PyResult<Multiset> {
    let mut ms = Multiset::new();
    for (&var, &count) in d {
        if var == 0 {
            return Err(PyValueError::new_err("variable ids start at 1"));
        }
        if count == 0 {
            return Err(PyValueError::new_err(format!(
                "zero multiplicity for variable {var}"
            )));
        }
        ms.insert(var, count);
    }
    Ok(ms)
}

fn multiset_to_dict(ms: &Multiset) -> SigDict {
    ms.iter().collect()
}

fn partition_from_parts(parts: &[SigDict]) -> PyResult<MultisetPartition> {
    let mut collected = Vec::with_capacity(parts.len());
    for part in parts {
        collected.push(multiset_from_dict(part)?);
    }
    MultisetPartition::from_parts(collected)
        .ok_or_else(|| PyValueError::new_err("partition parts must be non-empty"))
}

fn partition_to_parts(mp: &MultisetPartition) -> Vec<SigDict> {
    mp.iter_with_repetition().map(multiset_to_dict).collect()
}

fn key_to_multiset(ids: &[u32]) -> PyResult<Multiset> {
    if ids.is_empty() {
        return Err(PyValueError::new_err("assignment keys are non-empty"));
    }
    if ids.contains(&0) {
        return Err(PyValueError::new_err("variable ids start at 1"));
    }
    Ok(Multiset::from_elements(ids.iter().copied()))
}

fn rational_from_py(value: &Bound<'_, PyAny>) -> PyResult<BigRational> {
    if let Ok(i) = value.extract::<BigInt>() {
        return Ok(BigRational::from_integer(i));
    }
    value.extract::<BigRational>()
}

/// The Bell number B_n.
#[pyfunction]
fn bell(n: usize) -> BigUint {
    core_spart::bell(n)
}

/// The `!!` convention: product of the factorials of the multiplicities.
#[pyfunction]
fn multiset_factorial(signature: SigDict) -> PyResult<BigUint> {
    Ok(faadibruno::multiset_factorial(&multiset_from_dict(
        &signature,
    )?))
}

/// All partitions of {1..n} as lists of blocks.
#[pyfunction]
fn set_partitions(n: usize) -> PyResult<Vec<Vec<Vec<u32>>>> {
    let iter = core_spart::set_partitions(n).map_err(value_error)?;
    Ok(iter.map(|p| p.blocks().to_vec()).collect())
}

/// All partitions of a signature, each as a list of parts with repetition.
#[pyfunction]
fn multiset_partitions(signature: SigDict) -> PyResult<Vec<Vec<SigDict>>> {
    let tau = multiset_from_dict(&signature)?;
    let iter = core_mpart::multiset_partitions(&tau).map_err(value_error)?;
    Ok(iter.map(|mp| partition_to_parts(&mp)).collect())
}

/// The number of set partitions collapsing to `partition` when the ground
/// set collapses to `signature`.
#[pyfunction]
fn multiplicity(signature: SigDict, partition: Vec<SigDict>) -> PyResult<BigUint> {
    let tau = multiset_from_dict(&signature)?;
    let mp = partition_from_parts(&partition)?;
    core_collapse::multiplicity(&tau, &mp).map_err(value_error)
}

/// The same count by exhaustive enumeration (capped).
#[pyfunction]
fn multiplicity_bruteforce(signature: SigDict, partition: Vec<SigDict>) -> PyResult<BigUint> {
    let tau = multiset_from_dict(&signature)?;
    let mp = partition_from_parts(&partition)?;
    core_collapse::multiplicity_bruteforce(&tau, &mp).map_err(value_error)
}

/// Classical single-variable coefficient for the integer partition with
/// `m[j-1]` parts of size j.
#[pyfunction]
fn faa_di_bruno_coefficient(m: Vec<u64>) -> PyResult<BigUint> {
    core_expansion::faa_di_bruno_coefficient(&m).map_err(value_error)
}

fn term_dict<'py>(
    py: Python<'py>,
    term: &core_expansion::CompositionTerm,
) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("f_order", term.f_order)?;
    d.set_item("coefficient", term.coefficient.clone())?;
    d.set_item("parts", partition_to_parts(&term.shape))?;
    Ok(d)
}

/// Expand d_tau f(y): a list of term dicts with keys "f_order",
/// "coefficient" and "parts".
#[pyfunction]
fn expand_composition(py: Python<'_>, signature: SigDict) -> PyResult<Vec<Bound<'_, PyDict>>> {
    let tau = multiset_from_dict(&signature)?;
    let e = core_expansion::expand_composition(&tau).map_err(value_error)?;
    e.terms().iter().map(|t| term_dict(py, t)).collect()
}

/// Expand d_tau (uv): a list of term dicts with keys "coefficient", "u", "v".
#[pyfunction]
fn expand_product(py: Python<'_>, signature: SigDict) -> PyResult<Vec<Bound<'_, PyDict>>> {
    let tau = multiset_from_dict(&signature)?;
    let e = core_product::expand_product(&tau);
    e.terms()
        .iter()
        .map(|t| {
            let d = PyDict::new(py);
            d.set_item("coefficient", t.coefficient.clone())?;
            d.set_item("u", multiset_to_dict(&t.u_part))?;
            d.set_item("v", multiset_to_dict(&t.v_part))?;
            Ok(d)
        })
        .collect()
}

/// Raw moment of `target` from joint cumulants keyed by id tuples.
#[pyfunction]
fn moment_from_cumulants(
    target: SigDict,
    cumulants: BTreeMap<Vec<u32>, Py<PyAny>>,
    py: Python<'_>,
) -> PyResult<BigRational> {
    let tau = multiset_from_dict(&target)?;
    let mut kappa = core_cumulants::CumulantAssignment::new();
    for (ids, value) in &cumulants {
        kappa.set(key_to_multiset(ids)?, rational_from_py(value.bind(py))?);
    }
    core_cumulants::moment_from_cumulants(&tau, &kappa).map_err(value_error)
}

/// Joint cumulant of `target` from raw moments keyed by id tuples.
#[pyfunction]
fn cumulants_from_moments(
    target: SigDict,
    moments: BTreeMap<Vec<u32>, Py<PyAny>>,
    py: Python<'_>,
) -> PyResult<BigRational> {
    let tau = multiset_from_dict(&target)?;
    let mut mu = core_cumulants::MomentAssignment::new();
    for (ids, value) in &moments {
        mu.set(key_to_multiset(ids)?, rational_from_py(value.bind(py))?);
    }
    core_cumulants::cumulants_from_moments(&tau, &mu).map_err(value_error)
}

/// Text rendering of the composition (or exponential) expansion.
#[pyfunction]
#[pyo3(signature = (signature, exponential = false))]
fn composition_text(signature: SigDict, exponential: bool) -> PyResult<String> {
    let tau = multiset_from_dict(&signature)?;
    let e = core_expansion::expand_composition(&tau).map_err(value_error)?;
    Ok(core_render::render_composition_text(&e, exponential))
}

/// LaTeX rendering of the composition (or exponential) expansion.
#[pyfunction]
#[pyo3(signature = (signature, exponential = false))]
fn composition_latex(signature: SigDict, exponential: bool) -> PyResult<String> {
    let tau = multiset_from_dict(&signature)?;
    let e = core_expansion::expand_composition(&tau).map_err(value_error)?;
    Ok(core_render::render_composition_latex(&e, exponential))
}

/// JSON document of the composition expansion.
#[pyfunction]
fn composition_json(signature: SigDict) -> PyResult<String> {
    let tau = multiset_from_dict(&signature)?;
    let e = core_expansion::expand_composition(&tau).map_err(value_error)?;
    serde_json::to_string_pretty(&core_json::ExpansionDoc::from(&e)).map_err(value_error)
}

/// Text rendering of the product expansion.
#[pyfunction]
fn product_text(signature: SigDict) -> PyResult<String> {
    let tau = multiset_from_dict(&signature)?;
    Ok(core_render::render_product_text(&core_product::expand_product(&tau)))
}

/// LaTeX rendering of the product expansion.
#[pyfunction]
fn product_latex(signature: SigDict) -> PyResult<String> {
    let tau = multiset_from_dict(&signature)?;
    Ok(core_render::render_product_latex(&core_product::expand_product(&tau)))
}

#[pymodule]
fn faadibruno_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_function(wrap_pyfunction!(bell, m)?)?;
    m.add_function(wrap_pyfunction!(multiset_factorial, m)?)?;
    m.add_function(wrap_pyfunction!(set_partitions, m)?)?;
    m.add_function(wrap_pyfunction!(multiset_partitions, m)?)?;
    m.add_function(wrap_pyfunction!(multiplicity, m)?)?;
    m.add_function(wrap_pyfunction!(multiplicity_bruteforce, m)?)?;
    m.add_function(wrap_pyfunction!(faa_di_bruno_coefficient, m)?)?;
    m.add_function(wrap_pyfunction!(expand_composition, m)?)?;
    m.add_function(wrap_pyfunction!(expand_product, m)?)?;
    m.add_function(wrap_pyfunction!(moment_from_cumulants, m)?)?;
    m.add_function(wrap_pyfunction!(cumulants_from_moments, m)?)?;
    m.add_function(wrap_pyfunction!(composition_text, m)?)?;
    m.add_function(wrap_pyfunction!(composition_latex, m)?)?;
    m.add_function(wrap_pyfunction!(composition_json, m)?)?;
    m.add_function(wrap_pyfunction!(product_text, m)?)?;
    m.add_function(wrap_pyfunction!(product_latex, m)?)?;
    Ok(())
}
