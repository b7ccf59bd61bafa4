//! Python bindings: placements, the exact solver, coefficient certificates,
//! the 8x8 system, octagon constructions and the CNF encoder.

use std::time::Duration;

use gardner::board::{Dihedral, Placement, Slope, Square};
use gardner::certificate::{self, CoefficientSystem};
use gardner::cnf::{self, Assignment, Dimacs};
use gardner::constructions::{self, SeedSet};
use gardner::fixtures;
use gardner::nullstellensatz::{self, Case1Data, Case2Data, Case2Poly};
use gardner::solver::{self, Decision, SearchConfig};
use num_bigint::BigInt;
use pyo3::exceptions::{PyTimeoutError, PyValueError};
use pyo3::prelude::*;

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyclass(name = "Placement", module = "pygardner", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq)]
struct PyPlacement(Placement);

#[pymethods]
impl PyPlacement {
    /// `queens` are zero-based `(col, row)` pairs.
    #[new]
    fn new(n: usize, queens: Vec<(usize, usize)>) -> PyResult<Self> {
        Placement::new(n, queens.into_iter().map(|(c, r)| Square::new(c, r))).map(PyPlacement).map_err(value_err)
    }

    #[staticmethod]
    fn from_centered(n: usize, coords: Vec<(i64, i64)>) -> PyResult<Self> {
        Placement::from_centered(n, &coords).map(PyPlacement).map_err(value_err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Placement::from_json(text).map(PyPlacement).map_err(value_err)
    }

    #[staticmethod]
    fn fixture(name: &str) -> PyResult<Self> {
        fixtures::by_name(name).map(PyPlacement).ok_or_else(|| value_err(format!("no fixture named {name:?}")))
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    #[getter]
    fn queens(&self) -> Vec<(usize, usize)> {
        self.0.queens().iter().map(|s| (s.col, s.row)).collect()
    }

    fn centered(&self) -> PyResult<Vec<(i64, i64)>> {
        self.0.centered().map_err(value_err)
    }

    fn is_good(&self) -> bool {
        self.0.is_good()
    }

    fn is_maximal(&self) -> bool {
        self.0.is_maximal()
    }

    fn has_three_in_line(&self) -> bool {
        self.0.has_three_in_line()
    }

    fn lonely_queens(&self) -> Vec<(usize, usize)> {
        self.0.lonely_queens().iter().map(|s| (s.col, s.row)).collect()
    }

    fn addable_squares(&self) -> PyResult<Vec<(usize, usize)>> {
        Ok(self.0.addable_squares().map_err(value_err)?.iter().map(|s| (s.col, s.row)).collect())
    }

    /// Counts for slopes `v, h, d+, d-`.
    fn defined_lines_per_slope(&self) -> (usize, usize, usize, usize) {
        let [a, b, c, d] = self.0.defined_lines_per_slope();
        (a, b, c, d)
    }

    /// `name` is one of `id, r90, r180, r270, fh, fv, t, at`.
    fn transform(&self, name: &str) -> PyResult<Self> {
        let g: Dihedral = name.parse().map_err(value_err)?;
        Ok(PyPlacement(self.0.transform(g)))
    }

    fn canonical(&self) -> Self {
        PyPlacement(self.0.canonical())
    }

    fn render_ascii(&self) -> String {
        self.0.render_ascii()
    }

    fn to_json(&self) -> String {
        self.0.to_json()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __repr__(&self) -> String {
        format!("Placement(n={}, queens={:?})", self.0.n(), self.queens())
    }
}

#[pyclass(name = "SearchResult", module = "pygardner", frozen, get_all)]
struct PySearchResult {
    n: usize,
    m3: Option<usize>,
    witness: Option<PyPlacement>,
    nodes_expanded: u64,
    elapsed: f64,
    exhausted: bool,
    refuted: Vec<usize>,
}

#[pymethods]
impl PySearchResult {
    fn __repr__(&self) -> String {
        format!("SearchResult(n={}, m3={:?}, exhausted={}, nodes={})", self.n, self.m3, self.exhausted, self.nodes_expanded)
    }
}

#[pyfunction]
#[pyo3(signature = (n, use_symmetry = true, hint = 1, budget = None, threads = None))]
fn find_min_good(
    py: Python<'_>,
    n: usize,
    use_symmetry: bool,
    hint: usize,
    budget: Option<f64>,
    threads: Option<usize>,
) -> PyResult<PySearchResult> {
    let mut cfg = SearchConfig::new(n);
    cfg.use_symmetry = use_symmetry;
    cfg.lower_bound_hint = hint;
    cfg.time_budget = budget.map(Duration::from_secs_f64);
    cfg.threads = threads;
    let r = py.detach(|| solver::find_min_good(&cfg)).map_err(value_err)?;
    Ok(PySearchResult {
        n: r.n,
        m3: r.m3,
        witness: r.witness.map(PyPlacement),
        nodes_expanded: r.nodes_expanded,
        elapsed: r.elapsed.as_secs_f64(),
        exhausted: r.exhausted,
        refuted: r.refuted,
    })
}

/// A good placement with exactly `q` queens, or `None` when none exists.
/// Raises `TimeoutError` when the budget runs out first.
#[pyfunction]
#[pyo3(signature = (n, q, use_symmetry = true, budget = None))]
fn exists_good_of_size(py: Python<'_>, n: usize, q: usize, use_symmetry: bool, budget: Option<f64>) -> PyResult<Option<PyPlacement>> {
    let budget = budget.map(Duration::from_secs_f64);
    match py.detach(|| solver::exists_good_of_size(n, q, use_symmetry, budget)).map_err(value_err)? {
        Decision::Found(p) => Ok(Some(PyPlacement(p))),
        Decision::Infeasible => Ok(None),
        Decision::BudgetExceeded => Err(PyTimeoutError::new_err("search budget exceeded")),
    }
}

#[pyfunction]
fn known_m3(n: usize) -> Option<usize> {
    solver::known_m3(n)
}

#[pyfunction]
fn is_case2_candidate(p: &PyPlacement) -> bool {
    solver::is_case2_candidate(&p.0)
}

#[pyfunction]
#[pyo3(signature = (n, symmetry_reduced = false))]
fn enumerate_case2_candidates(py: Python<'_>, n: usize, symmetry_reduced: bool) -> PyResult<Vec<PyPlacement>> {
    let v = py.detach(|| solver::enumerate_case2_candidates(n, symmetry_reduced)).map_err(value_err)?;
    Ok(v.into_iter().map(PyPlacement).collect())
}

#[pyfunction]
fn omega(k: usize) -> BigInt {
    nullstellensatz::omega(k)
}

/// `(name, coefficient, closed_form)` for `f1..f4` of a Case 2 placement.
#[pyfunction]
fn case2_coefficients(p: &PyPlacement) -> PyResult<Vec<(String, BigInt, BigInt)>> {
    let d = Case2Data::from_placement(&p.0).map_err(value_err)?;
    Ok(Case2Poly::ALL
        .into_iter()
        .map(|w| (w.name().to_string(), d.product(w).coeff(4 * d.k, 4 * d.k), d.closed_form(w)))
        .collect())
}

/// Top coefficient of the Case 1 product; `slopes` default to the balanced choice.
#[pyfunction]
#[pyo3(signature = (p, slopes = None))]
fn case1_coefficient(p: &PyPlacement, slopes: Option<Vec<String>>) -> PyResult<BigInt> {
    let slopes: Vec<Slope> = match slopes {
        Some(v) => v.iter().map(|s| s.parse::<Slope>()).collect::<Result<_, _>>().map_err(value_err)?,
        None => nullstellensatz::balanced_lonely_slopes(&p.0),
    };
    let d = Case1Data::from_placement(&p.0, &slopes).map_err(value_err)?;
    Ok(d.product().coeff(4 * d.k, 4 * d.k))
}

/// Kernel basis of the 8x8 system, entries as fraction strings.
#[pyfunction]
#[pyo3(signature = (k, exact = false))]
fn nullspace(k: usize, exact: bool) -> PyResult<Vec<Vec<String>>> {
    let system = if exact { CoefficientSystem::Exact } else { CoefficientSystem::Printed };
    let a = certificate::build_a_with(k, system).map_err(value_err)?;
    Ok(a.nullspace().iter().map(|v| v.iter().map(|x| x.to_string()).collect()).collect())
}

/// The eight Case 2 quantities as fraction strings.
#[pyfunction]
fn case2_vector(p: &PyPlacement) -> PyResult<Vec<String>> {
    let v = certificate::extract_case2_vector(&p.0).map_err(value_err)?;
    Ok(v.entries().iter().map(|x| x.to_string()).collect())
}

#[pyfunction]
fn classify(p: &PyPlacement) -> PyResult<String> {
    let v = certificate::extract_case2_vector(&p.0).map_err(value_err)?;
    Ok(certificate::classify(&v, (p.0.n() - 1) / 4).map_err(value_err)?.to_string())
}

#[pyfunction]
fn enumerate_seeds(n: usize) -> PyResult<Vec<Vec<(i64, i64)>>> {
    Ok(constructions::enumerate_seeds(n).map_err(value_err)?.iter().map(|s| s.seeds().to_vec()).collect())
}

#[pyfunction]
fn octagon_placement(n: usize, seeds: Vec<(i64, i64)>) -> PyResult<PyPlacement> {
    let s = SeedSet::new(n, seeds).map_err(value_err)?;
    constructions::octagon_placement(&s, n).map(PyPlacement).map_err(value_err)
}

#[pyfunction]
fn validate_null_a(p: &PyPlacement) -> bool {
    constructions::validate_null_a(&p.0).pass
}

#[pyfunction]
fn encode_cnf(n: usize, q: usize) -> PyResult<String> {
    Ok(cnf::encode(n, q).map_err(value_err)?.to_dimacs())
}

/// Decodes a SAT model against DIMACS text produced by `encode_cnf`.
#[pyfunction]
fn decode_model(dimacs: &str, model: &str) -> PyResult<PyPlacement> {
    let d = Dimacs::parse(dimacs).map_err(value_err)?;
    let m = cnf::parse_model(model).map_err(value_err)?;
    let a = Assignment::from_literals(&m.literals, d.num_vars).map_err(value_err)?;
    let bad = d.unsatisfied(&a).map_err(value_err)?;
    if let Some(first) = bad.first() {
        return Err(value_err(format!("{} clauses unsatisfied, first is clause {}", bad.len(), first + 1)));
    }
    d.decode(&a).map(PyPlacement).map_err(value_err)
}

#[pymodule]
fn pygardner(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPlacement>()?;
    m.add_class::<PySearchResult>()?;
    m.add_function(wrap_pyfunction!(find_min_good, m)?)?;
    m.add_function(wrap_pyfunction!(exists_good_of_size, m)?)?;
    m.add_function(wrap_pyfunction!(known_m3, m)?)?;
    m.add_function(wrap_pyfunction!(is_case2_candidate, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_case2_candidates, m)?)?;
    m.add_function(wrap_pyfunction!(omega, m)?)?;
    m.add_function(wrap_pyfunction!(case2_coefficients, m)?)?;
    m.add_function(wrap_pyfunction!(case1_coefficient, m)?)?;
    m.add_function(wrap_pyfunction!(nullspace, m)?)?;
    m.add_function(wrap_pyfunction!(case2_vector, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_seeds, m)?)?;
    m.add_function(wrap_pyfunction!(octagon_placement, m)?)?;
    m.add_function(wrap_pyfunction!(validate_null_a, m)?)?;
    m.add_function(wrap_pyfunction!(encode_cnf, m)?)?;
    m.add_function(wrap_pyfunction!(decode_model, m)?)?;
    Ok(())
}
