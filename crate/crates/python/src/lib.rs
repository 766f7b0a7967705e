//! Python bindings for `homswap`.
//!
//! Counts come back as Python ints, weighted counts and volumes as
//! `fractions.Fraction`, and reports as plain dicts.

use num_bigint::{BigInt, BigUint};
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyTuple};
use serde::Serialize;

use homswap::numeric::{format_rational, parse_rational};
use homswap::{coloring, format, gt, hom, polytope, swap, target};

create_exception!(pyhomswap, ResourceLimitError, PyException);

fn err(e: homswap::Error) -> PyErr {
    match e {
        homswap::Error::ResourceLimit(_) => ResourceLimitError::new_err(e.to_string()),
        homswap::Error::Internal(_) => PyException::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn fraction<'py>(py: Python<'py>, x: &num_rational::BigRational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?
        .getattr("Fraction")?
        .call1((x.numer().clone(), x.denom().clone()))
}

fn to_dict<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyException::new_err(e.to_string()))?;
    py.import("json")?.getattr("loads")?.call1((text,))
}

/// Loop-free source graph on at most 64 vertices.
#[pyclass(frozen, skip_from_py_object, module = "pyhomswap")]
#[derive(Clone)]
pub struct Graph(homswap::SimpleGraph);

#[pymethods]
impl Graph {
    #[new]
    #[pyo3(signature = (n, edges=Vec::new()))]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        homswap::SimpleGraph::from_edges(n, &edges)
            .map(Graph)
            .map_err(err)
    }

    /// Parse the `n m L` text format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        format::parse_simple_graph(text).map(Graph).map_err(err)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.0.edges()
    }

    fn is_isomorphic(&self, other: &Graph) -> PyResult<bool> {
        self.0.is_isomorphic(&other.0).map_err(err)
    }

    fn to_text(&self) -> String {
        format::simple_graph_to_text(&self.0)
    }

    fn __repr__(&self) -> String {
        format!("Graph({}, {:?})", self.0.n(), self.0.edges())
    }
}

/// Target graph; loops allowed.
#[pyclass(frozen, skip_from_py_object, module = "pyhomswap")]
#[derive(Clone)]
pub struct Target(homswap::TargetGraph);

#[pymethods]
impl Target {
    #[new]
    #[pyo3(signature = (n, edges=Vec::new(), loops=Vec::new()))]
    fn new(n: usize, edges: Vec<(usize, usize)>, loops: Vec<usize>) -> PyResult<Self> {
        let mut all = edges;
        all.extend(loops.into_iter().map(|v| (v, v)));
        homswap::TargetGraph::from_edges(n, &all)
            .map(Target)
            .map_err(err)
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        format::parse_target_graph(text).map(Target).map_err(err)
    }

    #[staticmethod]
    fn complete(q: usize) -> PyResult<Self> {
        homswap::complete_graph(q).map(Target).map_err(err)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.0.non_loop_edges()
    }

    fn loops(&self) -> Vec<usize> {
        self.0.loops()
    }

    fn to_text(&self) -> String {
        format::target_graph_to_text(&self.0)
    }

    fn __repr__(&self) -> String {
        format!(
            "Target({}, {:?}, loops={:?})",
            self.0.n(),
            self.0.non_loop_edges(),
            self.0.loops()
        )
    }
}

fn weights(h: &Target, values: Vec<String>) -> PyResult<hom::WeightVector> {
    let parsed = values
        .iter()
        .map(|s| parse_rational(s))
        .collect::<homswap::Result<Vec<_>>>()
        .map_err(err)?;
    let w = hom::WeightVector::new(parsed).map_err(err)?;
    if w.len() != h.0.n() {
        return Err(PyValueError::new_err(format!(
            "{} weights for a target on {} vertices",
            w.len(),
            h.0.n()
        )));
    }
    Ok(w)
}

/// hom(G, H); with `weights` (strings like "3/2") the weighted count as a Fraction.
#[pyfunction]
#[pyo3(signature = (g, h, weights=None))]
fn count_hom<'py>(
    py: Python<'py>,
    g: &Graph,
    h: &Target,
    weights: Option<Vec<String>>,
) -> PyResult<Bound<'py, PyAny>> {
    match weights {
        None => {
            let c: BigUint = py.detach(|| hom::count_hom(&g.0, &h.0)).map_err(err)?;
            Ok(c.into_pyobject(py)?.into_any())
        }
        Some(ws) => {
            let lam = self::weights(h, ws)?;
            let c = py
                .detach(|| hom::count_hom_weighted(&g.0, &h.0, &lam))
                .map_err(err)?;
            fraction(py, &c)
        }
    }
}

/// All homomorphisms as lists of images.
#[pyfunction]
#[pyo3(signature = (g, h, budget=None))]
fn enumerate_homs(g: &Graph, h: &Target, budget: Option<u64>) -> PyResult<Vec<Vec<usize>>> {
    hom::enumerate_homs(&g.0, &h.0, budget).map_err(err)
}

/// `(is_target, certificate_dict)`.
#[pyfunction]
fn certify_target<'py>(py: Python<'py>, h: &Target) -> PyResult<Bound<'py, PyTuple>> {
    let cert = target::certify_target(&h.0);
    let ok = cert.verdict == target::TargetVerdict::Target;
    PyTuple::new(
        py,
        [
            ok.into_pyobject(py)?.to_owned().into_any(),
            to_dict(py, &cert)?,
        ],
    )
}

/// Alternating 4-circuit `[a, b, c, d]`, or None for threshold graphs.
#[pyfunction]
fn find_alternating_four_circuit(h: &Target) -> Option<[usize; 4]> {
    target::find_alternating_four_circuit(&h.0)
}

#[pyfunction]
fn recognize_threshold<'py>(py: Python<'py>, h: &Target) -> PyResult<Bound<'py, PyAny>> {
    to_dict(py, &target::recognize_threshold(&h.0).map_err(err)?)
}

#[pyfunction]
fn threshold_classes(n: usize) -> PyResult<Vec<Target>> {
    Ok(target::enumerate_threshold_classes(n)
        .map_err(err)?
        .into_iter()
        .map(Target)
        .collect())
}

/// GT report for one source graph; weighted when `weights` is given.
#[pyfunction]
#[pyo3(signature = (g, h, weights=None))]
fn check_gt<'py>(
    py: Python<'py>,
    g: &Graph,
    h: &Target,
    weights: Option<Vec<String>>,
) -> PyResult<Bound<'py, PyAny>> {
    let report = match weights {
        None => py.detach(|| gt::check_gt(&g.0, &h.0)),
        Some(ws) => {
            let lam = self::weights(h, ws)?;
            py.detach(|| gt::check_wgt(&g.0, &h.0, &lam))
        }
    }
    .map_err(err)?;
    to_dict(py, &report)
}

#[pyfunction]
fn check_strongly_gt<'py>(py: Python<'py>, g: &Graph, h: &Target) -> PyResult<Bound<'py, PyAny>> {
    let report = py
        .detach(|| gt::check_strongly_gt(&g.0, &h.0))
        .map_err(err)?;
    to_dict(py, &report)
}

/// GT reports for every regular graph with N ≤ n_max, d ≤ d_max.
#[pyfunction]
#[pyo3(signature = (h, n_max, d_max, weights=None))]
fn scan_corpus<'py>(
    py: Python<'py>,
    h: &Target,
    n_max: usize,
    d_max: usize,
    weights: Option<Vec<String>>,
) -> PyResult<Bound<'py, PyAny>> {
    let lam = weights.map(|ws| self::weights(h, ws)).transpose()?;
    let reports = py
        .detach(|| gt::scan_corpus(&h.0, n_max, d_max, lam.as_ref()))
        .map_err(err)?;
    to_dict(py, &reports)
}

/// Coefficients of P(G, q) in the basis binom(q, i).
#[pyfunction]
fn chromatic_binomial(g: &Graph) -> PyResult<Vec<BigInt>> {
    Ok(coloring::chromatic_binomial(&g.0)
        .map_err(err)?
        .coefficients)
}

#[pyfunction]
fn chromatic_value(g: &Graph, q: usize) -> PyResult<BigUint> {
    coloring::chromatic_value(&g.0, q).map_err(err)
}

#[pyfunction]
fn verify_coefficient_compare<'py>(py: Python<'py>, g: &Graph) -> PyResult<Bound<'py, PyAny>> {
    let r = py
        .detach(|| coloring::verify_coefficient_compare(&g.0))
        .map_err(err)?;
    to_dict(py, &r)
}

#[pyfunction]
fn dominance_certificate<'py>(
    py: Python<'py>,
    g: &Graph,
    eval_at: Vec<BigInt>,
) -> PyResult<Bound<'py, PyAny>> {
    let c = coloring::dominance_certificate(&g.0, &eval_at).map_err(err)?;
    to_dict(py, &c)
}

#[pyfunction]
fn lattice_count(g: &Graph, n: usize) -> PyResult<BigUint> {
    polytope::lattice_count(&g.0, n).map_err(err)
}

/// vol(ESTAB(G)) as a Fraction.
#[pyfunction]
fn estab_volume<'py>(py: Python<'py>, g: &Graph) -> PyResult<Bound<'py, PyAny>> {
    let v = py.detach(|| polytope::estab_volume(&g.0)).map_err(err)?;
    fraction(py, &v)
}

#[pyfunction]
fn ehrhart<'py>(py: Python<'py>, g: &Graph) -> PyResult<Bound<'py, PyDict>> {
    let e = py
        .detach(|| polytope::ehrhart_interpolate(&g.0))
        .map_err(err)?;
    let part = |p: &[num_rational::BigRational]| -> PyResult<Vec<Bound<'py, PyAny>>> {
        p.iter().map(|x| fraction(py, x)).collect()
    };
    let d = PyDict::new(py);
    d.set_item("even_part", part(&e.even_part)?)?;
    d.set_item("odd_part", part(&e.odd_part)?)?;
    d.set_item("volume", fraction(py, &e.leading_coefficient())?)?;
    Ok(d)
}

#[pyfunction]
fn check_volume_gt<'py>(py: Python<'py>, g: &Graph) -> PyResult<Bound<'py, PyAny>> {
    let r = py.detach(|| polytope::check_volume_gt(&g.0)).map_err(err)?;
    to_dict(py, &r)
}

#[pyfunction]
#[pyo3(signature = (g, h, budget=None))]
fn verify_swap_bijection<'py>(
    py: Python<'py>,
    g: &Graph,
    h: &Target,
    budget: Option<u64>,
) -> PyResult<Bound<'py, PyAny>> {
    let r = py
        .detach(|| swap::verify_swap_bijection(&g.0, &h.0, budget))
        .map_err(err)?;
    to_dict(py, &r)
}

/// Move one bsp labeling to the other mode. `mode` is "disjoint" or "crossed".
#[pyfunction]
fn transport(
    g: &Graph,
    h: &Target,
    labels: Vec<(usize, usize)>,
    mode: &str,
) -> PyResult<Vec<(usize, usize)>> {
    let mode = match mode {
        "disjoint" => swap::LabelingMode::Disjoint,
        "crossed" => swap::LabelingMode::Crossed,
        other => return Err(PyValueError::new_err(format!("unknown mode {other:?}"))),
    };
    let p = swap::PairLabeling::new(&g.0, &h.0, labels, mode).map_err(err)?;
    Ok(swap::transport(&p).map_err(err)?.labels().to_vec())
}

#[pyfunction]
fn format_fraction(numer: BigInt, denom: BigInt) -> PyResult<String> {
    if denom == BigInt::from(0) {
        return Err(PyValueError::new_err("zero denominator"));
    }
    Ok(format_rational(&num_rational::BigRational::new(
        numer, denom,
    )))
}

#[pymodule]
fn pyhomswap(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Graph>()?;
    m.add_class::<Target>()?;
    m.add(
        "ResourceLimitError",
        m.py().get_type::<ResourceLimitError>(),
    )?;
    m.add_function(wrap_pyfunction!(count_hom, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_homs, m)?)?;
    m.add_function(wrap_pyfunction!(certify_target, m)?)?;
    m.add_function(wrap_pyfunction!(find_alternating_four_circuit, m)?)?;
    m.add_function(wrap_pyfunction!(recognize_threshold, m)?)?;
    m.add_function(wrap_pyfunction!(threshold_classes, m)?)?;
    m.add_function(wrap_pyfunction!(check_gt, m)?)?;
    m.add_function(wrap_pyfunction!(check_strongly_gt, m)?)?;
    m.add_function(wrap_pyfunction!(scan_corpus, m)?)?;
    m.add_function(wrap_pyfunction!(chromatic_binomial, m)?)?;
    m.add_function(wrap_pyfunction!(chromatic_value, m)?)?;
    m.add_function(wrap_pyfunction!(verify_coefficient_compare, m)?)?;
    m.add_function(wrap_pyfunction!(dominance_certificate, m)?)?;
    m.add_function(wrap_pyfunction!(lattice_count, m)?)?;
    m.add_function(wrap_pyfunction!(estab_volume, m)?)?;
    m.add_function(wrap_pyfunction!(ehrhart, m)?)?;
    m.add_function(wrap_pyfunction!(check_volume_gt, m)?)?;
    m.add_function(wrap_pyfunction!(verify_swap_bijection, m)?)?;
    m.add_function(wrap_pyfunction!(transport, m)?)?;
    m.add_function(wrap_pyfunction!(format_fraction, m)?)?;
    Ok(())
}
