//! Python bindings. Words, polynomials and `Z^f` elements travel as text in
//! the CLI syntax; rationals come back as strings such as `"-1/2"`.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use gformal::gf::{gf_dim as gf_dim_core, gf_reduce as gf_reduce_core};
use gformal::hopf::{antipode_b, quasi_shuffle_poly};
use gformal::maps::tau_linear;
use gformal::qseries::{bracket_g as bracket_core, qzeta_sz, span_dimension, QSeries};
use gformal::rational;
use gformal::regularization::{reg_balanced, reg_shuffle, reg_stuffle};
use gformal::schemes::{check_dm as check_dm_core, p_project_poly, zeta_generating_series, Exact, ZfAlgebra};
use gformal::verify::{run_suite, Params};
use gformal::zf::{zf_equal as zf_equal_core, zf_reduce as zf_reduce_core, ZfElement};
use gformal::{Alphabet, DiamondRule, Poly, TruncatedSeries};

fn err(e: gformal::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn poly(text: &str, default: Option<Alphabet>) -> PyResult<Poly> {
    Poly::parse(text, default).map_err(|e| PyValueError::new_err(format!("{e} in '{text}'")))
}

fn zf(text: &str) -> PyResult<ZfElement> {
    ZfElement::parse(text).map_err(|e| PyValueError::new_err(format!("{e} in '{text}'")))
}

fn natural_rule(alphabet: Alphabet) -> &'static str {
    match alphabet {
        Alphabet::X => "shuffle",
        Alphabet::Y => "stuffle",
        Alphabet::B => "balanced",
    }
}

fn coeff_strings(s: &QSeries) -> Vec<String> {
    s.coeffs().iter().map(rational::format).collect()
}

/// Quasi-shuffle product; the rule defaults to the natural one of the alphabet.
#[pyfunction]
#[pyo3(signature = (u, v, rule=None))]
fn product(u: &str, v: &str, rule: Option<&str>) -> PyResult<String> {
    let default = rule.and_then(DiamondRule::default_alphabet);
    let u = poly(u, default)?;
    let v = poly(v, Some(u.alphabet()))?;
    let rule = DiamondRule::parse(rule.unwrap_or(natural_rule(u.alphabet()))).map_err(err)?;
    Ok(quasi_shuffle_poly(&u, &v, rule).map_err(err)?.to_string())
}

#[pyfunction]
fn antipode(w: &str) -> PyResult<String> {
    let p = poly(w, Some(Alphabet::B))?;
    let mut out = Poly::zero(Alphabet::B);
    for (x, c) in p.terms() {
        out.add_scaled(&antipode_b(x).map_err(err)?, c);
    }
    Ok(out.to_string())
}

#[pyfunction]
fn tau(p: &str) -> PyResult<String> {
    Ok(tau_linear(&poly(p, Some(Alphabet::B))?).map_err(err)?.to_string())
}

#[pyfunction]
fn reg(p: &str) -> PyResult<String> {
    let p = poly(p, None)?;
    let out = match p.alphabet() {
        Alphabet::X => reg_shuffle(&p),
        Alphabet::Y => reg_stuffle(&p),
        Alphabet::B => reg_balanced(&p),
    };
    Ok(out.map_err(err)?.to_string())
}

#[pyfunction]
fn gf_reduce(p: &str) -> PyResult<String> {
    Ok(gf_reduce_core(&poly(p, Some(Alphabet::B))?).map_err(err)?.to_string())
}

#[pyfunction]
fn gf_dim(weight: u32) -> usize {
    gf_dim_core(weight)
}

#[pyfunction]
#[pyo3(signature = (a, weight=6))]
fn zf_reduce(a: &str, weight: u32) -> PyResult<String> {
    Ok(zf_reduce_core(&zf(a)?, weight).map_err(err)?.to_string())
}

#[pyfunction]
#[pyo3(signature = (a, b, weight=6))]
fn zf_equal(a: &str, b: &str, weight: u32) -> PyResult<bool> {
    zf_equal_core(&zf(a)?, &zf(b)?, weight).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (p, weight=6, reduce=false))]
fn project_p(p: &str, weight: u32, reduce: bool) -> PyResult<String> {
    let mut z = p_project_poly(&poly(p, Some(Alphabet::B))?, weight).map_err(err)?;
    if reduce {
        z = zf_reduce_core(&z, weight).map_err(err)?;
    }
    Ok(z.to_string())
}

/// `(passed, report)` for a rational X series, or the zeta series in `Z^f`.
#[pyfunction]
#[pyo3(signature = (series=None, weight=6))]
fn check_dm(series: Option<&str>, weight: u32) -> PyResult<(bool, String)> {
    let report = match series {
        Some(s) => check_dm_core(&TruncatedSeries::from_poly(poly(s, Some(Alphabet::X))?, weight), None, &Exact),
        None => check_dm_core(&zeta_generating_series(weight).map_err(err)?, None, &ZfAlgebra { bound: weight }),
    }
    .map_err(err)?;
    Ok((report.passed(), report.to_string()))
}

/// Coefficients of `q^0..q^order` of `zeta_q(s1,...,sl)` in the sz model.
#[pyfunction]
#[pyo3(signature = (indices, order=50))]
fn qzeta(indices: Vec<u32>, order: usize) -> PyResult<Vec<String>> {
    Ok(coeff_strings(&qzeta_sz(&indices, order).map_err(err)?))
}

#[pyfunction]
#[pyo3(signature = (indices, order=50))]
fn bracket(indices: Vec<u32>, order: usize) -> PyResult<Vec<String>> {
    Ok(coeff_strings(&bracket_core(&indices, order).map_err(err)?))
}

#[pyfunction]
#[pyo3(signature = (index_lists, order=50))]
fn span_dim(index_lists: Vec<Vec<u32>>, order: usize) -> PyResult<usize> {
    let series = index_lists.iter().map(|s| qzeta_sz(s, order)).collect::<Result<Vec<_>, _>>().map_err(err)?;
    span_dimension(&series).map_err(err)
}

/// `(passed, report)` for one named verification suite.
#[pyfunction]
#[pyo3(signature = (suite, weight=None, order=None))]
fn verify(suite: &str, weight: Option<u32>, order: Option<usize>) -> PyResult<(bool, String)> {
    let report = run_suite(suite, &Params { weight, order }).map_err(err)?;
    Ok((report.passed(), report.to_string()))
}

#[pymodule]
#[pyo3(name = "gformal")]
fn gformal_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(product, m)?)?;
    m.add_function(wrap_pyfunction!(antipode, m)?)?;
    m.add_function(wrap_pyfunction!(tau, m)?)?;
    m.add_function(wrap_pyfunction!(reg, m)?)?;
    m.add_function(wrap_pyfunction!(gf_reduce, m)?)?;
    m.add_function(wrap_pyfunction!(gf_dim, m)?)?;
    m.add_function(wrap_pyfunction!(zf_reduce, m)?)?;
    m.add_function(wrap_pyfunction!(zf_equal, m)?)?;
    m.add_function(wrap_pyfunction!(project_p, m)?)?;
    m.add_function(wrap_pyfunction!(check_dm, m)?)?;
    m.add_function(wrap_pyfunction!(qzeta, m)?)?;
    m.add_function(wrap_pyfunction!(bracket, m)?)?;
    m.add_function(wrap_pyfunction!(span_dim, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
