//! Python bindings for `weylab`.

use std::sync::Arc;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use weylab::admissible::{partition_count_check, EnhancedCoxeterDatum};
use weylab::charts::{build_chart, eliminate, ChartCase, ChartParams};
use weylab::kumar::{kumar_case, GcmChoice, KumarCase};
use weylab::poincare::{ccp_check, classify_ccp, is_symmetric, poincare_polynomial};
use weylab::{Family, WeylElt};

fn err(e: weylab::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn family(s: &str) -> PyResult<Family> {
    s.parse().map_err(err)
}

/// Extended affine Weyl group of an irreducible root datum.
#[pyclass(frozen, name = "Weyl")]
struct PyWeyl {
    inner: Arc<weylab::Weyl>,
}

impl PyWeyl {
    fn elt(&self, word: &str) -> PyResult<WeylElt> {
        self.inner.parse_word(word).map_err(err)
    }
}

#[pymethods]
impl PyWeyl {
    #[new]
    fn new(family_name: &str, rank: usize) -> PyResult<Self> {
        let w = weylab::Weyl::new(family(family_name)?, rank).map_err(err)?;
        Ok(PyWeyl { inner: Arc::new(w) })
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    /// Length of the element given as a word like "s0 s1 s2".
    fn length(&self, word: &str) -> PyResult<usize> {
        Ok(self.inner.length(&self.elt(word)?))
    }

    /// Reduced word and the length-zero part, as display strings.
    fn reduced(&self, word: &str) -> PyResult<String> {
        Ok(self.inner.display(&self.elt(word)?))
    }

    fn bruhat_leq(&self, u: &str, w: &str) -> PyResult<bool> {
        Ok(self.inner.bruhat_leq(&self.elt(u)?, &self.elt(w)?))
    }

    fn fundamental_coweight(&self, i: usize) -> Vec<i64> {
        self.inner.datum.fundamental_coweight(i)
    }
}

/// A triple (root datum, coweight, K~).
#[pyclass(frozen, name = "EnhancedCoxeterDatum")]
struct PyEcd {
    inner: EnhancedCoxeterDatum,
}

#[pymethods]
impl PyEcd {
    #[new]
    fn new(family_name: &str, rank: usize, lam: Vec<i64>, k: Vec<usize>) -> PyResult<Self> {
        let w = weylab::Weyl::new(family(family_name)?, rank).map_err(err)?;
        let inner = EnhancedCoxeterDatum::new(Arc::new(w), lam, &k).map_err(err)?;
        Ok(PyEcd { inner })
    }

    /// Coefficients of the Poincare polynomial of the truncated interval.
    fn poincare(&self, py: Python<'_>) -> PyResult<Vec<i64>> {
        let p = py.detach(|| poincare_polynomial(&self.inner)).map_err(err)?;
        Ok(p.coeffs().to_vec())
    }

    fn is_symmetric(&self, py: Python<'_>) -> PyResult<bool> {
        let p = py.detach(|| poincare_polynomial(&self.inner)).map_err(err)?;
        Ok(is_symmetric(&p))
    }

    fn extreme_count(&self, py: Python<'_>) -> usize {
        py.detach(|| self.inner.count_extreme())
    }

    fn ccp(&self, py: Python<'_>) -> bool {
        py.detach(|| ccp_check(&self.inner).passes)
    }

    fn max_element(&self) -> PyResult<String> {
        let m = self.inner.max_element().map_err(err)?;
        Ok(self.inner.weyl.display(&m))
    }

    fn __repr__(&self) -> String {
        format!("EnhancedCoxeterDatum({})", self.inner.to_json())
    }
}

/// Classification report as JSON.
#[pyfunction]
#[pyo3(signature = (max_rank, family_name=None))]
fn classify(py: Python<'_>, max_rank: usize, family_name: Option<&str>) -> PyResult<String> {
    let f = family_name.map(family).transpose()?;
    let report = py.detach(|| classify_ccp(max_rank, f)).map_err(err)?;
    Ok(report.to_json())
}

/// `(count, equality)` for the tuples summing to `r` under the given bounds.
#[pyfunction]
fn partition_count(r: u64, parts: Vec<u64>) -> PyResult<(u64, bool)> {
    let pc = partition_count_check(r, &parts).map_err(err)?;
    Ok((pc.count, pc.equality))
}

/// Kumar report for case "1b", "2b" or "3b", as JSON.
#[pyfunction]
#[pyo3(signature = (case, n, gcm="split"))]
fn kumar(py: Python<'_>, case: &str, n: usize, gcm: &str) -> PyResult<String> {
    let case: KumarCase = case.parse().map_err(err)?;
    let gcm: GcmChoice = gcm.parse().map_err(err)?;
    let r = py
        .detach(|| kumar_case(case, n, gcm, weylab::weyl::interval_cap_from_env()))
        .map_err(err)?;
    Ok(serde_json::to_string(&r).expect("json"))
}

/// Chart normal form as JSON.
#[pyfunction]
#[pyo3(signature = (case, n, r=1, kappa=1))]
fn chart(py: Python<'_>, case: &str, n: usize, r: usize, kappa: usize) -> PyResult<String> {
    let case: ChartCase = case.parse().map_err(err)?;
    let nf = py
        .detach(|| build_chart(case, ChartParams { n, r, kappa }).and_then(|c| eliminate(&c)))
        .map_err(err)?;
    Ok(serde_json::to_string(&nf).expect("json"))
}

#[pymodule]
fn weylab_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    init(m)
}

/// Registers the module contents on `m`.
pub fn init(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyWeyl>()?;
    m.add_class::<PyEcd>()?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(partition_count, m)?)?;
    m.add_function(wrap_pyfunction!(kumar, m)?)?;
    m.add_function(wrap_pyfunction!(chart, m)?)?;
    Ok(())
}
