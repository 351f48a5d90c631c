//! Python bindings. Rings are given by their literal (`"Fpt(2,8)"`),
//! elements and points as strings in the ring's literal syntax.

use artin_core::determinantal;
use artin_core::lifting;
use artin_core::monomial::MonomialIdeal;
use artin_core::oracle::{self, OracleConfig, SystemKind};
use artin_core::poly::parse_system;
use artin_core::{verify, ArtinError, Elem, MatrixR, RingCtx};
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

create_exception!(
    artin,
    HypothesisError,
    PyException,
    "A mathematical precondition does not hold."
);

fn to_py(e: ArtinError) -> PyErr {
    if e.is_input_error() {
        PyValueError::new_err(e.to_string())
    } else {
        HypothesisError::new_err(format!("{}: {e}", e.kind()))
    }
}

fn ring(s: &str) -> PyResult<RingCtx> {
    s.parse().map_err(to_py)
}

fn point(ring: &RingCtx, xs: &[String]) -> PyResult<Vec<Elem>> {
    xs.iter()
        .map(|x| ring.parse_elem(x).map_err(to_py))
        .collect()
}

fn ideal(alphas: &str) -> PyResult<MonomialIdeal> {
    MonomialIdeal::parse_compact(alphas).map_err(to_py)
}

/// `β_n` of a monomial ideal given as `"(1,1);(1,0)"`.
#[pyfunction]
fn beta_monomial(alphas: &str, n: u32) -> PyResult<u32> {
    Ok(ideal(alphas)?.beta().eval(n))
}

#[pyfunction]
fn s_index(alphas: &str) -> PyResult<usize> {
    Ok(ideal(alphas)?.s_index())
}

#[pyfunction]
fn beta_det(r: u32, n: u32) -> u32 {
    determinantal::beta_det(r, n)
}

#[pyfunction]
fn repair_monomial(ring_s: &str, alphas: &str, n: u32, a: Vec<String>) -> PyResult<Vec<String>> {
    let r = ring(ring_s)?;
    let rep = ideal(alphas)?
        .repair(&r, &point(&r, &a)?, n)
        .map_err(to_py)?;
    Ok(r.format_point(&rep.point))
}

#[pyfunction]
fn witness_monomial(ring_s: &str, alphas: &str, n: u32) -> PyResult<Vec<String>> {
    let r = ring(ring_s)?;
    Ok(r.format_point(&ideal(alphas)?.witness(&r, n).map_err(to_py)?))
}

/// Matrices use the literal `"[[a,b];[c,d]]"`.
#[pyfunction]
fn repair_det(ring_s: &str, r: usize, n: u32, matrix: &str) -> PyResult<String> {
    let rc = ring(ring_s)?;
    let a = MatrixR::parse(&rc, matrix).map_err(to_py)?;
    let rep = determinantal::repair_determinantal(&rc, &a, r, n).map_err(to_py)?;
    Ok(rep.matrix.format(&rc))
}

#[pyfunction]
fn witness_det(ring_s: &str, k: usize, l: usize, r: usize, n: u32) -> PyResult<String> {
    let rc = ring(ring_s)?;
    Ok(determinantal::witness_det(&rc, k, l, r, n)
        .map_err(to_py)?
        .format(&rc))
}

/// Newton lift of `a` on a square system (one equation per line).
/// Returns the lifted point and the residual valuation after each step,
/// `None` standing for an exact zero.
#[pyfunction]
#[pyo3(signature = (ring_s, system, a, target=None))]
fn hensel_lift(
    ring_s: &str,
    system: &str,
    a: Vec<String>,
    target: Option<u32>,
) -> PyResult<(Vec<String>, Vec<Option<u32>>)> {
    let r = ring(ring_s)?;
    let sys = parse_system(&r, system).map_err(to_py)?;
    let rep =
        lifting::hensel_lift(&sys, &point(&r, &a)?, target.unwrap_or(r.prec())).map_err(to_py)?;
    Ok((
        r.format_point(&rep.result),
        rep.residual_vals.iter().map(|v| v.finite()).collect(),
    ))
}

#[pyfunction]
fn tougeron_lift(ring_s: &str, system: &str, a: Vec<String>, h: u32) -> PyResult<Vec<String>> {
    let r = ring(ring_s)?;
    let sys = parse_system(&r, system).map_err(to_py)?;
    let rep = lifting::tougeron_lift(&sys, &point(&r, &a)?, h, None).map_err(to_py)?;
    Ok(r.format_point(&rep.result))
}

/// Brute-force `β_n`; `kind` is `monomial` (with `alphas`),
/// `determinantal` (with `shape = (k, l, r)`), or `linear` / `general`
/// (with `system`). `None` means no `β ≤ beta_max` works.
#[pyfunction]
#[pyo3(signature = (ring_s, kind, n, alphas=None, shape=None, system=None, beta_max=None, jobs=0))]
#[allow(clippy::too_many_arguments)]
fn oracle_beta(
    py: Python<'_>,
    ring_s: &str,
    kind: &str,
    n: u32,
    alphas: Option<&str>,
    shape: Option<(usize, usize, usize)>,
    system: Option<&str>,
    beta_max: Option<u32>,
    jobs: usize,
) -> PyResult<Option<u32>> {
    let r = ring(ring_s)?;
    let sk = match (kind, alphas, shape, system) {
        ("monomial", Some(a), None, None) => SystemKind::Monomial(ideal(a)?),
        ("determinantal", None, Some((k, l, rr)), None) => {
            SystemKind::Determinantal { k, l, r: rr }
        }
        (_, None, None, Some(text)) => {
            SystemKind::from_system(kind, &parse_system(&r, text).map_err(to_py)?).map_err(to_py)?
        }
        _ => {
            return Err(PyValueError::new_err(format!(
                "inputs do not match the kind `{kind}`"
            )))
        }
    };
    let cfg = OracleConfig {
        beta_max: beta_max.unwrap_or(r.prec()),
        jobs,
        ..OracleConfig::new(r, n)
    };
    let res = py
        .detach(|| oracle::oracle_beta(&cfg, &sk))
        .map_err(to_py)?;
    Ok(res.beta)
}

/// Runs a named self-check suite; returns `(passed, total)`.
#[pyfunction]
#[pyo3(signature = (name, seed=0))]
fn run_suite(py: Python<'_>, name: &str, seed: u64) -> PyResult<(usize, usize)> {
    let rep = py.detach(|| verify::run_suite(name, seed)).map_err(to_py)?;
    Ok((rep.passed(), rep.cases.len()))
}

#[pymodule]
fn artin(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("HypothesisError", m.py().get_type::<HypothesisError>())?;
    m.add_function(wrap_pyfunction!(beta_monomial, m)?)?;
    m.add_function(wrap_pyfunction!(s_index, m)?)?;
    m.add_function(wrap_pyfunction!(beta_det, m)?)?;
    m.add_function(wrap_pyfunction!(repair_monomial, m)?)?;
    m.add_function(wrap_pyfunction!(witness_monomial, m)?)?;
    m.add_function(wrap_pyfunction!(repair_det, m)?)?;
    m.add_function(wrap_pyfunction!(witness_det, m)?)?;
    m.add_function(wrap_pyfunction!(hensel_lift, m)?)?;
    m.add_function(wrap_pyfunction!(tougeron_lift, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_beta, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    Ok(())
}
