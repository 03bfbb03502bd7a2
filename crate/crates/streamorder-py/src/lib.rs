//! Python bindings: `Domain`, `Comparator`, `audit`, and `list_evaluators`.
//! Structured results (certificates, audit reports) cross the boundary as
//! JSON strings so the Python side can hand them straight to `json.loads`.

use std::str::FromStr;
use std::sync::Arc;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use streamorder::audit::{run_audit, AuditOptions, CheckId, UniverseBound};
use streamorder::domain::{DomainSpec, Sequence};
use streamorder::evaluators::{make_comparator, EvaluatorSpec};
use streamorder::lifting::{EqualLengthComparator, LiftedComparator, Strategy, TableComparator};

fn err(e: streamorder::error::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A finite labeled utility domain.
#[pyclass(frozen)]
struct Domain {
    inner: Arc<DomainSpec>,
}

#[pymethods]
impl Domain {
    /// Build from a JSON document `{"elements": [{"label", "utility"}, ...]}`.
    #[new]
    fn new(json: &str) -> PyResult<Self> {
        Ok(Domain {
            inner: DomainSpec::from_json_str(json).map_err(err)?,
        })
    }

    /// Build from `[(label, utility), ...]` pairs.
    #[staticmethod]
    fn from_utilities(pairs: Vec<(String, i64)>) -> PyResult<Self> {
        let refs: Vec<(&str, i64)> = pairs.iter().map(|(l, u)| (l.as_str(), *u)).collect();
        Ok(Domain {
            inner: DomainSpec::from_utilities(&refs).map_err(err)?,
        })
    }

    fn labels(&self) -> Vec<String> {
        self.inner.elements.iter().map(|e| e.label.clone()).collect()
    }

    fn utility(&self, label: &str) -> PyResult<i64> {
        let index = self.inner.index_of(label).map_err(err)?;
        Ok(self.inner.utility(index))
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }
}

/// A length-agnostic comparator: an equal-length order extended by
/// replication to a common length.
#[pyclass(frozen)]
struct Comparator {
    lifted: LiftedComparator,
    name: String,
}

impl Comparator {
    fn sequences(&self, domain: &Domain, left: &str, right: &str) -> PyResult<(Sequence, Sequence)> {
        let s = Sequence::parse(domain.inner.clone(), left).map_err(err)?;
        let t = Sequence::parse(domain.inner.clone(), right).map_err(err)?;
        Ok((s, t))
    }
}

#[pymethods]
impl Comparator {
    /// `evaluator` as on the command line, e.g. `"mean"`, `"leximin"`, or
    /// `"discounted_mean:1/2"`; `strategy` is `"lcm"` or `"product"`.
    #[new]
    #[pyo3(signature = (evaluator, strategy = "lcm"))]
    fn new(evaluator: &str, strategy: &str) -> PyResult<Self> {
        let spec = EvaluatorSpec::from_str(evaluator).map_err(err)?;
        let base = make_comparator(&spec).map_err(err)?;
        let strategy = Strategy::from_str(strategy).map_err(err)?;
        Ok(Comparator {
            lifted: LiftedComparator::new(base, strategy),
            name: spec.to_string(),
        })
    }

    /// Use a comparison-table JSON document as the base order.
    #[staticmethod]
    #[pyo3(signature = (json, strategy = "lcm"))]
    fn from_table(json: &str, strategy: &str) -> PyResult<Self> {
        let table = TableComparator::from_json_str(json).map_err(err)?;
        let name = table.name();
        let strategy = Strategy::from_str(strategy).map_err(err)?;
        Ok(Comparator {
            lifted: LiftedComparator::new(Arc::new(table), strategy),
            name,
        })
    }

    /// Compare two comma-separated streams; returns `"Less"`,
    /// `"Equivalent"`, `"Greater"`, or `"Incomparable"`.
    fn compare(&self, domain: &Domain, left: &str, right: &str) -> PyResult<String> {
        let (s, t) = self.sequences(domain, left, right)?;
        Ok(self.lifted.compare(&s, &t).map_err(err)?.as_str().to_string())
    }

    /// Full replication certificate for one comparison, as a JSON string.
    fn certificate(&self, domain: &Domain, left: &str, right: &str) -> PyResult<String> {
        let (s, t) = self.sequences(domain, left, right)?;
        let cert = self.lifted.certificate(&s, &t).map_err(err)?;
        serde_json::to_string_pretty(&cert).map_err(|e| PyValueError::new_err(e.to_string()))
    }

    #[getter]
    fn name(&self) -> String {
        self.name.clone()
    }
}

/// Run the axiom audit over every stream up to `max_len` and return the
/// report as a JSON string. `checks` restricts to the named checks;
/// `workers = 0` uses the machine default (the report is identical either
/// way).
#[pyfunction]
#[pyo3(signature = (domain, evaluator, max_len = 3, checks = None, workers = 0))]
fn audit(
    domain: &Domain,
    evaluator: &str,
    max_len: usize,
    checks: Option<Vec<String>>,
    workers: usize,
) -> PyResult<String> {
    let spec = EvaluatorSpec::from_str(evaluator).map_err(err)?;
    let base = make_comparator(&spec).map_err(err)?;
    let bound = UniverseBound::new(domain.inner.clone(), max_len).map_err(err)?;
    let mut options = AuditOptions {
        workers,
        ..AuditOptions::default()
    };
    if let Some(names) = checks {
        options.checks = names
            .iter()
            .map(|n| CheckId::from_str(n).map_err(err))
            .collect::<PyResult<Vec<_>>>()?;
    }
    let report = run_audit(&base, &bound, &options).map_err(err)?;
    Ok(report.to_json())
}

/// Names of the built-in evaluators.
#[pyfunction]
fn list_evaluators() -> Vec<String> {
    EvaluatorSpec::catalogue()
        .iter()
        .map(|spec| spec.to_string())
        .collect()
}

/// Identifiers accepted by `audit(checks=...)`, in canonical order.
#[pyfunction]
fn list_checks() -> Vec<String> {
    CheckId::all().iter().map(|id| id.as_str().to_string()).collect()
}

#[pymodule]
fn streamorder_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Domain>()?;
    m.add_class::<Comparator>()?;
    m.add_function(wrap_pyfunction!(audit, m)?)?;
    m.add_function(wrap_pyfunction!(list_evaluators, m)?)?;
    m.add_function(wrap_pyfunction!(list_checks, m)?)?;
    Ok(())
}
