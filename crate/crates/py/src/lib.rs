//! Python bindings: towers, subspaces, algebras and the analysis entry
//! points. Structured reports cross the boundary as JSON strings.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use gradedlie::analyzer;
use gradedlie::fieldtower::{self, EElement, FieldTower};
use gradedlie::fsubspace::FSubspace;
use gradedlie::json;
use gradedlie::maxclass::{self, CentraliserLine, HomElement, MaxClassAlgebra};
use gradedlie::presets;
use gradedlie::report;

fn err(e: gradedlie::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_json<T: serde::Serialize>(value: &T) -> PyResult<String> {
    serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))
}

/// The extension E over GF(p), either finite or polynomial mode.
#[pyclass(name = "Tower", from_py_object)]
#[derive(Clone)]
struct PyTower {
    inner: FieldTower,
}

#[pymethods]
impl PyTower {
    #[staticmethod]
    fn finite(p: u64, minpoly: Vec<u64>) -> PyResult<Self> {
        Ok(PyTower {
            inner: FieldTower::finite(p, &minpoly).map_err(err)?,
        })
    }

    #[staticmethod]
    fn transcendental(p: u64, cap: usize) -> PyResult<Self> {
        Ok(PyTower {
            inner: FieldTower::transcendental(p, cap).map_err(err)?,
        })
    }

    #[getter]
    fn p(&self) -> u64 {
        self.inner.p()
    }

    #[getter]
    fn edim(&self) -> usize {
        self.inner.edim()
    }

    fn add(&self, a: Vec<u64>, b: Vec<u64>) -> PyResult<Vec<u64>> {
        let (a, b) = (self.element(&a)?, self.element(&b)?);
        Ok(self.inner.add(&a, &b).map_err(err)?.coeffs().to_vec())
    }

    fn mul(&self, a: Vec<u64>, b: Vec<u64>) -> PyResult<Vec<u64>> {
        let (a, b) = (self.element(&a)?, self.element(&b)?);
        Ok(self.inner.mul(&a, &b).map_err(err)?.coeffs().to_vec())
    }

    fn neg(&self, a: Vec<u64>) -> PyResult<Vec<u64>> {
        let a = self.element(&a)?;
        Ok(self.inner.neg(&a).map_err(err)?.coeffs().to_vec())
    }

    fn inv(&self, a: Vec<u64>) -> PyResult<Vec<u64>> {
        let a = self.element(&a)?;
        Ok(self.inner.inv(&a).map_err(err)?.coeffs().to_vec())
    }

    /// Canonical basis of the smallest subfield containing the elements.
    fn subfield_generated(&self, elements: Vec<Vec<u64>>) -> PyResult<Vec<Vec<u64>>> {
        let elems: Vec<EElement> = elements
            .iter()
            .map(|c| self.element(c))
            .collect::<PyResult<_>>()?;
        let field = fieldtower::subfield_generated(&self.inner, &elems).map_err(err)?;
        Ok(field.space().rows().to_vec())
    }

    /// Stabilizer of the F-span of the given flattened rows inside E^k:
    /// returns (basis rows, is_field).
    fn stabilizer(&self, k: usize, rows: Vec<Vec<u64>>) -> PyResult<(Vec<Vec<u64>>, bool)> {
        let space = FSubspace::from_f_rows(self.inner.ambient(k), &rows).map_err(err)?;
        let report = fieldtower::stabilizer(&space).map_err(err)?;
        Ok((report.ring.rows().to_vec(), report.is_field))
    }

    /// Canonical reduced basis of the F-span of flattened rows in E^k.
    fn span(&self, k: usize, rows: Vec<Vec<u64>>) -> PyResult<Vec<Vec<u64>>> {
        let space = FSubspace::from_f_rows(self.inner.ambient(k), &rows).map_err(err)?;
        Ok(space.rows().to_vec())
    }
}

impl PyTower {
    fn element(&self, coeffs: &[u64]) -> PyResult<EElement> {
        self.inner.element(coeffs).map_err(err)
    }
}

/// A truncated maximal-class algebra.
#[pyclass(name = "Algebra")]
struct PyAlgebra {
    inner: MaxClassAlgebra,
}

#[pymethods]
impl PyAlgebra {
    #[staticmethod]
    fn metabelian(tower: PyTower, n: usize) -> PyResult<Self> {
        Ok(PyAlgebra {
            inner: MaxClassAlgebra::metabelian(&tower.inner, n).map_err(err)?,
        })
    }

    #[staticmethod]
    fn from_centralisers(
        tower: PyTower,
        lines: Vec<(Vec<u64>, Vec<u64>)>,
        n: usize,
    ) -> PyResult<Self> {
        let t = &tower.inner;
        let lines: Vec<CentraliserLine> = lines
            .iter()
            .map(|(a, b)| {
                let a = t.element(a).map_err(err)?;
                let b = t.element(b).map_err(err)?;
                CentraliserLine::new(t, &a, &b).map_err(err)
            })
            .collect::<PyResult<_>>()?;
        Ok(PyAlgebra {
            inner: MaxClassAlgebra::from_centralisers(t, &lines, n).map_err(err)?,
        })
    }

    #[getter]
    fn truncation(&self) -> usize {
        self.inner.truncation()
    }

    /// Run all structural checks; returns the report as JSON.
    fn validate(&mut self) -> PyResult<String> {
        let report = self.inner.validate();
        to_json(&report)
    }

    #[getter]
    fn is_validated(&self) -> bool {
        self.inner.is_validated()
    }

    /// Bracket of homogeneous elements given as (degree, coeffs...) tuples:
    /// degree 1 uses (1, a, b), higher degrees (i, c). Returns (degree, c).
    fn bracket_basis(&self, i: usize, j: usize) -> PyResult<(usize, Vec<u64>)> {
        let t = self.inner.tower();
        let u = HomElement::basis(t, i);
        let v = HomElement::basis(t, j);
        match self.inner.bracket(&u, &v).map_err(err)? {
            HomElement::Higher { degree, coeff } => Ok((degree, coeff.coeffs().to_vec())),
            HomElement::Degree1 { .. } => unreachable!(),
        }
    }

    fn two_step_centraliser(&self, i: usize) -> PyResult<(Vec<u64>, Vec<u64>)> {
        let line = self.inner.two_step_centraliser(i).map_err(err)?;
        Ok((line.a().coeffs().to_vec(), line.b().coeffs().to_vec()))
    }

    fn check_window(&self) -> PyResult<String> {
        to_json(&self.inner.check_window())
    }
}

/// Depth-first search for valid centraliser sequences; returns JSON.
#[pyfunction]
fn search(tower: PyTower, depth: usize, max_centralisers: usize, budget: u64) -> PyResult<String> {
    let outcome =
        maxclass::search_sequences(&tower.inner, depth, max_centralisers, budget).map_err(err)?;
    let sequences: Vec<Vec<(Vec<u64>, Vec<u64>)>> = outcome
        .sequences
        .iter()
        .map(|seq| {
            seq.iter()
                .map(|l| (l.a().coeffs().to_vec(), l.b().coeffs().to_vec()))
                .collect()
        })
        .collect();
    to_json(&serde_json::json!({
        "examined": outcome.examined,
        "exhausted": outcome.exhausted,
        "sequences": sequences,
    }))
}

/// Run a full analysis job from its JSON description; returns the report JSON.
#[pyfunction]
fn analyze(job_json: &str) -> PyResult<String> {
    let job = json::parse_job(job_json).map_err(err)?;
    let report = report::run_analysis(&job).map_err(err)?;
    to_json(&report)
}

/// Run a named preset; returns the report JSON including expected checks.
#[pyfunction]
#[pyo3(signature = (name, seed = 0))]
fn reproduce(name: &str, seed: u64) -> PyResult<String> {
    let job = presets::preset_job(name, seed).map_err(err)?;
    let analysis = report::run_analysis(&job).map_err(err)?;
    let expected = presets::expected_checks(name, &analysis).map_err(err)?;
    let ok = analysis.ok && expected.iter().all(|c| c.pass);
    let analysis_value =
        serde_json::to_value(&analysis).map_err(|e| PyValueError::new_err(e.to_string()))?;
    let expected_value =
        serde_json::to_value(&expected).map_err(|e| PyValueError::new_err(e.to_string()))?;
    to_json(&serde_json::json!({
        "preset": name,
        "analysis": analysis_value,
        "expected": expected_value,
        "ok": ok,
    }))
}

#[pyfunction]
fn free_metabelian_dims(n: usize) -> PyResult<u64> {
    analyzer::free_metabelian_dims(n).map_err(err)
}

#[pyfunction]
fn preset_names() -> Vec<String> {
    presets::PRESET_NAMES
        .iter()
        .map(|s| s.to_string())
        .collect()
}

#[pymodule]
fn gradedlie_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyTower>()?;
    m.add_class::<PyAlgebra>()?;
    m.add_function(wrap_pyfunction!(search, m)?)?;
    m.add_function(wrap_pyfunction!(analyze, m)?)?;
    m.add_function(wrap_pyfunction!(reproduce, m)?)?;
    m.add_function(wrap_pyfunction!(free_metabelian_dims, m)?)?;
    m.add_function(wrap_pyfunction!(preset_names, m)?)?;
    Ok(())
}
