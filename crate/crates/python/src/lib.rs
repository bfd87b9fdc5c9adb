//! The `ruleblame` Python extension module.
//!
//! Exposes the rule-base data model and the analysis pipeline — parsing,
//! consistency, minimal inconsistent subsets, the eight measures, Shapley
//! and adjusted Shapley vectors, culpability rankings, postulate campaigns,
//! and the seeded generator.  Exact values cross the boundary as
//! `fractions.Fraction`; every failure raises `ValueError` with the
//! library's diagnostic text.

use num_rational::BigRational;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyBool, PyDict, PyList, PyString};

use ruleblame_core::campaign::run_campaign;
use ruleblame_core::generate::{generate as generate_base, GeneratorConfig};
use ruleblame_core::measures::Measure;
use ruleblame_core::mis::{
    free_formulas, minimal_inconsistent_subsets, minimal_inconsistent_subsets_without_facts,
    MiFamily,
};
use ruleblame_core::postulates::Postulate;
use ruleblame_core::report;
use ruleblame_core::semantics::{is_consistent, minimal_model};
use ruleblame_core::shapley::{
    adjusted_shapley_vector, culpability_ranking, max_adjusted, shapley_vector, ShapleyVector,
};
use ruleblame_core::{Error, Limits, Rule, RuleBase};

fn core_err(err: Error) -> PyErr {
    PyValueError::new_err(err.to_string())
}

fn limits_of(limit_subsets: Option<usize>, limit_atoms: Option<usize>) -> Limits {
    let mut limits = Limits::default();
    if let Some(max_elements) = limit_subsets {
        limits.max_elements = max_elements;
    }
    if let Some(max_atoms) = limit_atoms {
        limits.max_atoms = max_atoms;
    }
    limits
}

/// An exact value as `fractions.Fraction`.
fn fraction<'py>(py: Python<'py>, value: &BigRational) -> PyResult<Bound<'py, PyAny>> {
    let ctor = py.import("fractions")?.getattr("Fraction")?;
    ctor.call1((value.numer().clone(), value.denom().clone()))
}

fn vector_py<'py>(
    py: Python<'py>,
    vector: &ShapleyVector,
) -> PyResult<Vec<(String, Bound<'py, PyAny>)>> {
    vector
        .entries()
        .iter()
        .map(|(element, value)| Ok((element.to_string(), fraction(py, value)?)))
        .collect()
}

fn family_strings(family: &MiFamily) -> Vec<Vec<String>> {
    family
        .members()
        .iter()
        .map(|member| member.elements().iter().map(Rule::to_string).collect())
        .collect()
}

fn parse_rule(text: &str) -> PyResult<Rule> {
    text.parse::<Rule>().map_err(core_err)
}

/// Recursively convert a JSON report into plain Python objects.
fn json_to_py<'py>(py: Python<'py>, value: &serde_json::Value) -> PyResult<Bound<'py, PyAny>> {
    Ok(match value {
        serde_json::Value::Null => py.None().into_bound(py),
        serde_json::Value::Bool(flag) => PyBool::new(py, *flag).to_owned().into_any(),
        serde_json::Value::Number(number) => {
            if let Some(int) = number.as_i64() {
                int.into_pyobject(py)?.into_any()
            } else if let Some(int) = number.as_u64() {
                int.into_pyobject(py)?.into_any()
            } else {
                number
                    .as_f64()
                    .expect("JSON numbers are i64, u64, or f64")
                    .into_pyobject(py)?
                    .into_any()
            }
        }
        serde_json::Value::String(text) => PyString::new(py, text).into_any(),
        serde_json::Value::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(json_to_py(py, item)?)?;
            }
            list.into_any()
        }
        serde_json::Value::Object(map) => {
            let dict = PyDict::new(py);
            for (key, item) in map {
                dict.set_item(key, json_to_py(py, item)?)?;
            }
            dict.into_any()
        }
    })
}

/// A canonically ordered business rule base.
#[pyclass(name = "RuleBase", frozen)]
struct PyRuleBase {
    inner: RuleBase,
}

#[pymethods]
impl PyRuleBase {
    /// Parse DSL text: facts `a.` / `!a.`, rules `a, !b -> c.`,
    /// `#` comments.
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        let inner = RuleBase::parse(text).map_err(|err| core_err(Error::from(err)))?;
        Ok(PyRuleBase { inner })
    }

    /// Alias of the constructor.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        PyRuleBase::new(text)
    }

    /// Canonical DSL text, one element per line.
    fn to_text(&self) -> String {
        self.inner.to_text()
    }

    fn __str__(&self) -> String {
        self.inner.to_text()
    }

    fn __repr__(&self) -> String {
        format!("RuleBase({:?})", self.inner.to_text())
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __eq__(&self, other: &PyRuleBase) -> bool {
        self.inner == other.inner
    }

    /// Every element in canonical order (facts first).
    fn elements(&self) -> Vec<String> {
        self.inner.elements().iter().map(Rule::to_string).collect()
    }

    /// The facts, in canonical order.
    fn facts(&self) -> Vec<String> {
        self.inner.facts().map(Rule::to_string).collect()
    }

    /// The proper rules, in canonical order.
    fn rules(&self) -> Vec<String> {
        self.inner.rules_only().map(Rule::to_string).collect()
    }

    /// The atoms appearing anywhere in the base, sorted.
    fn signature(&self) -> Vec<String> {
        self.inner
            .signature()
            .into_iter()
            .map(|atom| atom.name().to_string())
            .collect()
    }

    /// True when the forward-chaining closure derives no complementary
    /// literal pair.
    fn is_consistent(&self) -> bool {
        is_consistent(&self.inner)
    }

    /// The forward-chaining closure, as sorted literal strings.
    fn minimal_model(&self) -> Vec<String> {
        minimal_model(&self.inner)
            .iter()
            .map(|literal| literal.to_string())
            .collect()
    }

    /// A new base with one more element (text form).
    fn with_element(&self, rule: &str) -> PyResult<Self> {
        Ok(PyRuleBase {
            inner: self.inner.with_element(parse_rule(rule)?),
        })
    }

    /// A new base without the given element (text form).
    fn without_element(&self, rule: &str) -> PyResult<Self> {
        Ok(PyRuleBase {
            inner: self.inner.without_element(&parse_rule(rule)?),
        })
    }

    /// Minimal inconsistent subsets, each as element strings.
    #[pyo3(signature = (limit_subsets=None))]
    fn mi(&self, limit_subsets: Option<usize>) -> PyResult<Vec<Vec<String>>> {
        let limits = limits_of(limit_subsets, None);
        let family = minimal_inconsistent_subsets(&self.inner, &limits).map_err(core_err)?;
        Ok(family_strings(&family))
    }

    /// Minimal inconsistent subsets with pure fact sets removed.
    #[pyo3(signature = (limit_subsets=None))]
    fn mi_without_facts(&self, limit_subsets: Option<usize>) -> PyResult<Vec<Vec<String>>> {
        let limits = limits_of(limit_subsets, None);
        let family =
            minimal_inconsistent_subsets_without_facts(&self.inner, &limits).map_err(core_err)?;
        Ok(family_strings(&family))
    }

    /// Elements appearing in no minimal inconsistent subset.
    #[pyo3(signature = (limit_subsets=None))]
    fn free_formulas(&self, limit_subsets: Option<usize>) -> PyResult<Vec<String>> {
        let limits = limits_of(limit_subsets, None);
        let free = free_formulas(&self.inner, &limits).map_err(core_err)?;
        Ok(free.iter().map(Rule::to_string).collect())
    }

    /// Evaluate a measure by name; returns `fractions.Fraction`.
    #[pyo3(signature = (measure, limit_subsets=None, limit_atoms=None))]
    fn measure<'py>(
        &self,
        py: Python<'py>,
        measure: &str,
        limit_subsets: Option<usize>,
        limit_atoms: Option<usize>,
    ) -> PyResult<Bound<'py, PyAny>> {
        let measure = Measure::from_name(measure).map_err(core_err)?;
        let limits = limits_of(limit_subsets, limit_atoms);
        let value = measure.evaluate(&self.inner, &limits).map_err(core_err)?;
        fraction(py, &value)
    }

    /// Classical Shapley vector of a measure, as (element, Fraction) pairs
    /// in canonical element order.
    #[pyo3(signature = (measure, limit_subsets=None, limit_atoms=None))]
    fn shapley<'py>(
        &self,
        py: Python<'py>,
        measure: &str,
        limit_subsets: Option<usize>,
        limit_atoms: Option<usize>,
    ) -> PyResult<Vec<(String, Bound<'py, PyAny>)>> {
        let measure = Measure::from_name(measure).map_err(core_err)?;
        let limits = limits_of(limit_subsets, limit_atoms);
        let vector = shapley_vector(measure, &self.inner, &limits).map_err(core_err)?;
        vector_py(py, &vector)
    }

    /// Adjusted Shapley vector: facts at zero, their blame redistributed
    /// to culpable rules.
    #[pyo3(signature = (measure, limit_subsets=None, limit_atoms=None))]
    fn adjusted_shapley<'py>(
        &self,
        py: Python<'py>,
        measure: &str,
        limit_subsets: Option<usize>,
        limit_atoms: Option<usize>,
    ) -> PyResult<Vec<(String, Bound<'py, PyAny>)>> {
        let measure = Measure::from_name(measure).map_err(core_err)?;
        let limits = limits_of(limit_subsets, limit_atoms);
        let vector = adjusted_shapley_vector(measure, &self.inner, &limits).map_err(core_err)?;
        vector_py(py, &vector)
    }

    /// The largest adjusted Shapley value.
    #[pyo3(signature = (measure, limit_subsets=None, limit_atoms=None))]
    fn max_adjusted<'py>(
        &self,
        py: Python<'py>,
        measure: &str,
        limit_subsets: Option<usize>,
        limit_atoms: Option<usize>,
    ) -> PyResult<Bound<'py, PyAny>> {
        let measure = Measure::from_name(measure).map_err(core_err)?;
        let limits = limits_of(limit_subsets, limit_atoms);
        let value = max_adjusted(measure, &self.inner, &limits).map_err(core_err)?;
        fraction(py, &value)
    }

    /// Culpability ranking: elements by non-increasing adjusted Shapley
    /// value, ties broken canonically, facts last.
    #[pyo3(signature = (measure, limit_subsets=None, limit_atoms=None))]
    fn ranking<'py>(
        &self,
        py: Python<'py>,
        measure: &str,
        limit_subsets: Option<usize>,
        limit_atoms: Option<usize>,
    ) -> PyResult<Vec<(String, Bound<'py, PyAny>)>> {
        let measure = Measure::from_name(measure).map_err(core_err)?;
        let limits = limits_of(limit_subsets, limit_atoms);
        let ranking = culpability_ranking(measure, &self.inner, &limits).map_err(core_err)?;
        ranking
            .entries()
            .iter()
            .map(|(element, value)| Ok((element.to_string(), fraction(py, value)?)))
            .collect()
    }

    /// The full analysis report as nested dicts/lists — the same content
    /// as the command-line JSON report.
    #[pyo3(signature = (classical_shapley=false, hide_facts=false, limit_subsets=None, limit_atoms=None))]
    fn report<'py>(
        &self,
        py: Python<'py>,
        classical_shapley: bool,
        hide_facts: bool,
        limit_subsets: Option<usize>,
        limit_atoms: Option<usize>,
    ) -> PyResult<Bound<'py, PyAny>> {
        let limits = limits_of(limit_subsets, limit_atoms);
        let value = report::analysis_report(
            &self.inner,
            &Measure::ALL,
            classical_shapley,
            hide_facts,
            &limits,
        )
        .map_err(core_err)?;
        json_to_py(py, &value)
    }
}

/// Generate a random rule base with the seeded ChaCha8 sampler.
#[pyfunction]
#[pyo3(signature = (seed=0, atoms=4, facts=3, rules=4, max_body=2, negation_num=1, negation_den=2))]
fn generate(
    seed: u64,
    atoms: usize,
    facts: usize,
    rules: usize,
    max_body: usize,
    negation_num: u32,
    negation_den: u32,
) -> PyResult<PyRuleBase> {
    let config = GeneratorConfig {
        seed,
        atoms,
        facts,
        rules,
        max_body,
        negation_num,
        negation_den,
    };
    let inner = generate_base(&config).map_err(core_err)?;
    Ok(PyRuleBase { inner })
}

/// Run a postulate campaign; returns the summary dict with the first
/// violating witness, if any.
#[pyfunction]
#[pyo3(signature = (measure, postulate, budget=1000, seed=7, limit_subsets=None, limit_atoms=None))]
fn check<'py>(
    py: Python<'py>,
    measure: &str,
    postulate: &str,
    budget: usize,
    seed: u64,
    limit_subsets: Option<usize>,
    limit_atoms: Option<usize>,
) -> PyResult<Bound<'py, PyAny>> {
    let measure = Measure::from_name(measure).map_err(core_err)?;
    let postulate = Postulate::from_name(postulate).map_err(core_err)?;
    let limits = limits_of(limit_subsets, limit_atoms);
    let shape = GeneratorConfig::with_seed(0);
    let outcome =
        run_campaign(measure, postulate, budget, seed, &shape, &limits).map_err(core_err)?;
    json_to_py(py, &report::check_report(&outcome))
}

/// The registered measure names, classical family first.
#[pyfunction]
fn measure_names() -> Vec<&'static str> {
    Measure::ALL.iter().map(|measure| measure.name()).collect()
}

/// The registered postulate names.
#[pyfunction]
fn postulate_names() -> Vec<&'static str> {
    Postulate::ALL
        .iter()
        .map(|postulate| postulate.name())
        .collect()
}

#[pymodule]
#[pyo3(name = "ruleblame")]
fn ruleblame_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRuleBase>()?;
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    m.add_function(wrap_pyfunction!(check, m)?)?;
    m.add_function(wrap_pyfunction!(measure_names, m)?)?;
    m.add_function(wrap_pyfunction!(postulate_names, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
