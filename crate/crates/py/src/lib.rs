//! Python bindings. Rational functions cross the boundary as canonical
//! strings in the variable `s`; inputs are JSON text in the same formats the
//! command line reads.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use topozeta::cones::StratumProfile;
use topozeta::io::{fixture as shipped_fixture, parse_bundle, parse_resolution};
use topozeta::suspension::{self as susp, SuspensionParams};
use topozeta::symbolic::{
    canonical as render_canonical, latex as render_latex, parse_rational_function, RationalFunction,
};
use topozeta::zeta;
use topozeta::{cli, verify as checks};

fn err(e: topozeta::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn text(z: &RationalFunction) -> String {
    render_canonical(z, "s")
}

/// Canonical form of a rational function written in `var`.
#[pyfunction]
#[pyo3(signature = (expr, var = "s"))]
fn canonical(expr: &str, var: &str) -> PyResult<String> {
    parse_rational_function(expr, var).map(|z| render_canonical(&z, var)).map_err(err)
}

/// LaTeX form of a rational function written in `var`.
#[pyfunction]
#[pyo3(signature = (expr, var = "s"))]
fn latex(expr: &str, var: &str) -> PyResult<String> {
    parse_rational_function(expr, var).map(|z| render_latex(&z, var)).map_err(err)
}

/// Text of a fixture shipped with the library.
#[pyfunction]
fn fixture(name: &str) -> PyResult<String> {
    shipped_fixture(name)
        .map(str::to_string)
        .ok_or_else(|| PyValueError::new_err(format!("no fixture named '{name}'")))
}

/// Twisted topological zeta function of resolution data.
#[pyfunction]
#[pyo3(signature = (resolution_json, twist = 1))]
fn top(resolution_json: &str, twist: u64) -> PyResult<String> {
    let res = parse_resolution(resolution_json).map_err(err)?.value;
    zeta::resolution_topological(&res, twist).map(|z| text(&z)).map_err(err)
}

/// Topological zeta function of `z^Q - f`, twisted by `twist`.
#[pyfunction]
#[pyo3(signature = (bundle_json, q, twist = 1))]
fn suspend_f(bundle_json: &str, q: i64, twist: u64) -> PyResult<String> {
    let b = parse_bundle(bundle_json).map_err(err)?;
    susp::suspend_f_twisted(&b, q, twist).map(|z| text(&z)).map_err(err)
}

/// Topological zeta function of `g = z^p (z^Q - f)` with weight `nu_z` on
/// the `z` coordinate.
#[pyfunction]
#[pyo3(signature = (bundle_json, q, p = 0, nuz = 1))]
fn suspend_g(bundle_json: &str, q: i64, p: i64, nuz: i64) -> PyResult<String> {
    let b = parse_bundle(bundle_json).map_err(err)?;
    let params = SuspensionParams::new(q, p, nuz, 1).map_err(err)?;
    susp::suspend_g(&b, &params).map(|z| text(&z)).map_err(err)
}

/// The four stratum contributions and their total, keyed by part name.
#[pyfunction]
#[pyo3(signature = (n, nu, q, p = 0, nuz = 1, twist = None))]
fn stratum(
    n: Vec<i64>,
    nu: Vec<i64>,
    q: i64,
    p: i64,
    nuz: i64,
    twist: Option<u64>,
) -> PyResult<Vec<(String, String)>> {
    let profile = StratumProfile::new(n, nu, q, p, nuz).map_err(err)?;
    let parts = match twist {
        Some(e) => zeta::stratum_twisted_topological(&profile, e).map_err(err)?,
        None => zeta::stratum_topological(&profile),
    };
    let mut out: Vec<(String, String)> =
        parts.parts().iter().map(|(k, z)| (k.to_string(), text(z))).collect();
    out.push(("total".into(), text(&parts.total())));
    Ok(out)
}

/// Integer matrix `B` of the suspension identity for `Q`.
#[pyfunction]
fn matrix(q: i64) -> PyResult<Vec<Vec<i64>>> {
    susp::suspension_matrix(q).map(|m| m.b).map_err(err)
}

/// Whether the matrix identity holds for a bundle.
#[pyfunction]
fn matrix_identity(bundle_json: &str, q: i64) -> PyResult<bool> {
    let b = parse_bundle(bundle_json).map_err(err)?;
    susp::suspension_matrix_identity(&b, q).map(|m| m.equal).map_err(err)
}

/// The older formula for `z^Q - f`.
#[pyfunction]
fn legacy(bundle_json: &str, q: i64) -> PyResult<String> {
    let b = parse_bundle(bundle_json).map_err(err)?;
    susp::legacy_formula(&b, q).map(|z| text(&z)).map_err(err)
}

/// Difference between the correct and the older formula for the Fermat
/// curve of degree `Q`.
#[pyfunction]
fn fermat_discrepancy(q: i64) -> PyResult<String> {
    susp::fermat_discrepancy(q).map(|z| text(&z)).map_err(err)
}

/// Runs the command line with `args` (without the program name) and returns
/// `(exit code, stdout, stderr)`.
#[pyfunction]
fn run_cli(args: Vec<String>) -> (i32, String, String) {
    let out = cli::run(std::iter::once("topozeta".to_string()).chain(args));
    (out.code, out.stdout, out.stderr)
}

/// Runs the built-in acceptance checks: `(id, name, passed, detail)` each.
#[pyfunction]
fn verify() -> Vec<(u8, String, bool, String)> {
    checks::run_all()
        .into_iter()
        .map(|r| (r.id, r.name.to_string(), r.passed, r.detail))
        .collect()
}

#[pymodule]
fn pytopozeta(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(canonical, m)?)?;
    m.add_function(wrap_pyfunction!(latex, m)?)?;
    m.add_function(wrap_pyfunction!(fixture, m)?)?;
    m.add_function(wrap_pyfunction!(top, m)?)?;
    m.add_function(wrap_pyfunction!(suspend_f, m)?)?;
    m.add_function(wrap_pyfunction!(suspend_g, m)?)?;
    m.add_function(wrap_pyfunction!(stratum, m)?)?;
    m.add_function(wrap_pyfunction!(matrix, m)?)?;
    m.add_function(wrap_pyfunction!(matrix_identity, m)?)?;
    m.add_function(wrap_pyfunction!(legacy, m)?)?;
    m.add_function(wrap_pyfunction!(fermat_discrepancy, m)?)?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
