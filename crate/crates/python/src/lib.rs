//! Python bindings for `infolattice`.
//!
//! ```text
//! import infolattice as il
//! p = il.Partition("1,2|3|4", 4)
//! il.entropy(p)                  # nats, uniform space by default
//! il.verify_s5()["orders"]       # [5, 2, 5, 10, 10, 60]
//! ```

use std::sync::Arc;

use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use serde::Serialize;
use serde_json::Value;

use ::infolattice::approximation::approximate as approximate_rs;
use ::infolattice::error::Error;
use ::infolattice::lattice::{self, Convention, DEFAULT_NODE_CAP};
use ::infolattice::laws::{self, FalsifyConfig, Side};
use ::infolattice::partitions::{self, InfoElement, LogBase};
use ::infolattice::perm_groups::{self, DEFAULT_GROUP_CAP};

create_exception!(infolattice, CapacityError, PyRuntimeError);

fn err(e: Error) -> PyErr {
    if e.is_capacity() {
        CapacityError::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

fn json_to_py(py: Python<'_>, v: &Value) -> PyResult<Py<PyAny>> {
    Ok(match v {
        Value::Null => py.None(),
        Value::Bool(b) => b.into_pyobject(py)?.to_owned().into_any().unbind(),
        Value::Number(n) => match (n.as_i64(), n.as_u64()) {
            (Some(i), _) => i.into_pyobject(py)?.into_any().unbind(),
            (None, Some(u)) => u.into_pyobject(py)?.into_any().unbind(),
            _ => n
                .as_f64()
                .unwrap_or(f64::NAN)
                .into_pyobject(py)?
                .into_any()
                .unbind(),
        },
        Value::String(s) => s.into_pyobject(py)?.into_any().unbind(),
        Value::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(json_to_py(py, item)?)?;
            }
            list.into_any().unbind()
        }
        Value::Object(map) => {
            let dict = PyDict::new(py);
            for (k, item) in map {
                dict.set_item(k, json_to_py(py, item)?)?;
            }
            dict.into_any().unbind()
        }
    })
}

fn to_py<T: Serialize>(py: Python<'_>, v: &T) -> PyResult<Py<PyAny>> {
    let value = serde_json::to_value(v).map_err(|e| PyValueError::new_err(e.to_string()))?;
    json_to_py(py, &value)
}

fn log_base(base: &str) -> PyResult<LogBase> {
    base.parse().map_err(err)
}

/// Finite probability space with exact rational probabilities.
#[pyclass(frozen, from_py_object, module = "infolattice")]
#[derive(Clone)]
struct ProbabilitySpace {
    inner: Arc<partitions::ProbabilitySpace>,
}

#[pymethods]
impl ProbabilitySpace {
    /// `probs` are strings like "1/4"; `ProbabilitySpace.uniform(n)` for the uniform space.
    #[new]
    fn new(probs: Vec<String>) -> PyResult<Self> {
        let inner = partitions::ProbabilitySpace::from_strs(&probs).map_err(err)?;
        Ok(ProbabilitySpace {
            inner: Arc::new(inner),
        })
    }

    #[staticmethod]
    fn uniform(size: usize) -> PyResult<Self> {
        let inner = partitions::ProbabilitySpace::uniform(size).map_err(err)?;
        Ok(ProbabilitySpace {
            inner: Arc::new(inner),
        })
    }

    #[getter]
    fn size(&self) -> usize {
        self.inner.size()
    }

    fn probs(&self) -> Vec<String> {
        self.inner.probs().iter().map(|p| p.to_string()).collect()
    }

    fn __repr__(&self) -> String {
        format!("ProbabilitySpace([{}])", self.probs().join(", "))
    }
}

/// Partition of {1..n}, written like "1,2|3|4".
#[pyclass(frozen, from_py_object, eq, hash, module = "infolattice")]
#[derive(Clone, PartialEq, Eq, Hash)]
struct Partition {
    inner: partitions::Partition,
}

#[pymethods]
impl Partition {
    #[new]
    fn new(text: &str, ground_size: usize) -> PyResult<Self> {
        Ok(Partition {
            inner: partitions::Partition::parse(text, ground_size).map_err(err)?,
        })
    }

    /// Partition induced by a list of labels (a random variable's values).
    #[staticmethod]
    fn from_labels(labels: Vec<i64>) -> PyResult<Self> {
        Ok(Partition {
            inner: partitions::rv_to_partition(&labels).map_err(err)?,
        })
    }

    #[getter]
    fn ground_size(&self) -> usize {
        self.inner.ground_size()
    }

    #[getter]
    fn num_blocks(&self) -> usize {
        self.inner.num_blocks()
    }

    fn blocks(&self) -> Vec<Vec<usize>> {
        self.inner.blocks()
    }

    fn refines(&self, other: &Partition) -> PyResult<bool> {
        self.inner.refines(&other.inner).map_err(err)
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!(
            "Partition(\"{}\", {})",
            self.inner,
            self.inner.ground_size()
        )
    }
}

/// Permutation of {1..n}, written in cycle notation.
#[pyclass(frozen, from_py_object, eq, hash, module = "infolattice")]
#[derive(Clone, PartialEq, Eq, Hash)]
struct Permutation {
    inner: perm_groups::Permutation,
}

#[pymethods]
impl Permutation {
    #[new]
    fn new(cycles: &str, degree: usize) -> PyResult<Self> {
        Ok(Permutation {
            inner: perm_groups::Permutation::parse_cycles(cycles, degree).map_err(err)?,
        })
    }

    #[getter]
    fn degree(&self) -> usize {
        self.inner.degree()
    }

    /// 1-based images of 1..n.
    fn images(&self) -> Vec<usize> {
        self.inner.images()
    }

    fn inverse(&self) -> Self {
        Permutation {
            inner: self.inner.inverse(),
        }
    }

    /// `(self * other)(i) = self(other(i))`.
    fn __mul__(&self, other: &Permutation) -> PyResult<Self> {
        Ok(Permutation {
            inner: perm_groups::compose(&self.inner, &other.inner).map_err(err)?,
        })
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Permutation(\"{}\", {})", self.inner, self.inner.degree())
    }
}

/// Permutation group given by generators.
#[pyclass(frozen, from_py_object, module = "infolattice")]
#[derive(Clone)]
struct PermGroup {
    inner: perm_groups::PermGroup,
}

#[pymethods]
impl PermGroup {
    #[new]
    fn new(degree: usize, generators: Vec<String>) -> PyResult<Self> {
        Ok(PermGroup {
            inner: perm_groups::PermGroup::from_cycles(degree, &generators).map_err(err)?,
        })
    }

    #[staticmethod]
    fn symmetric(degree: usize) -> Self {
        PermGroup {
            inner: perm_groups::PermGroup::symmetric(degree),
        }
    }

    #[getter]
    fn degree(&self) -> usize {
        self.inner.degree()
    }

    fn generators(&self) -> Vec<String> {
        self.inner.to_json().generators
    }

    #[pyo3(signature = (cap=DEFAULT_GROUP_CAP))]
    fn order(&self, cap: usize) -> PyResult<u128> {
        self.inner.order(cap).map_err(err)
    }

    #[pyo3(signature = (cap=DEFAULT_GROUP_CAP))]
    fn elements(&self, cap: usize) -> PyResult<Vec<Permutation>> {
        let els = self.inner.enumerate(cap).map_err(err)?;
        Ok(els
            .iter()
            .map(|p| Permutation { inner: p.clone() })
            .collect())
    }

    #[pyo3(signature = (p, cap=DEFAULT_GROUP_CAP))]
    fn contains(&self, p: &Permutation, cap: usize) -> PyResult<bool> {
        self.inner.contains(&p.inner, cap).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!(
            "PermGroup({}, {:?})",
            self.inner.degree(),
            self.generators()
        )
    }
}

fn space_for(
    p: &partitions::Partition,
    space: Option<&ProbabilitySpace>,
) -> PyResult<Arc<partitions::ProbabilitySpace>> {
    match space {
        Some(s) => Ok(s.inner.clone()),
        None => Ok(Arc::new(
            partitions::ProbabilitySpace::uniform(p.ground_size()).map_err(err)?,
        )),
    }
}

fn info_elements(ps: &[Partition], space: Option<&ProbabilitySpace>) -> PyResult<Vec<InfoElement>> {
    let first = ps
        .first()
        .ok_or_else(|| PyValueError::new_err("need at least one partition"))?;
    let space = space_for(&first.inner, space)?;
    ps.iter()
        .map(|p| InfoElement::new(p.inner.clone(), space.clone()).map_err(err))
        .collect()
}

fn raw(ps: &[Partition]) -> Vec<partitions::Partition> {
    ps.iter().map(|p| p.inner.clone()).collect()
}

fn groups(gs: &[PermGroup]) -> Vec<perm_groups::PermGroup> {
    gs.iter().map(|g| g.inner.clone()).collect()
}

/// Shannon entropy of a partition; uniform space when `space` is omitted.
#[pyfunction]
#[pyo3(signature = (p, space=None, base="e"))]
fn entropy(p: &Partition, space: Option<&ProbabilitySpace>, base: &str) -> PyResult<f64> {
    let s = space_for(&p.inner, space)?;
    partitions::entropy(&p.inner, &s, log_base(base)?).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (q, p, space=None, base="e"))]
fn conditional_entropy(
    q: &Partition,
    p: &Partition,
    space: Option<&ProbabilitySpace>,
    base: &str,
) -> PyResult<f64> {
    let s = space_for(&p.inner, space)?;
    partitions::conditional_entropy(&q.inner, &p.inner, &s, log_base(base)?).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (p, q, space=None, base="e"))]
fn mutual_information(
    p: &Partition,
    q: &Partition,
    space: Option<&ProbabilitySpace>,
    base: &str,
) -> PyResult<f64> {
    let s = space_for(&p.inner, space)?;
    partitions::mutual_information(&p.inner, &q.inner, &s, log_base(base)?).map_err(err)
}

/// Information join.
#[pyfunction]
fn common_refinement(p: &Partition, q: &Partition) -> PyResult<Partition> {
    Ok(Partition {
        inner: partitions::common_refinement(&p.inner, &q.inner).map_err(err)?,
    })
}

/// Information meet.
#[pyfunction]
fn finest_common_coarsening(p: &Partition, q: &Partition) -> PyResult<Partition> {
    Ok(Partition {
        inner: partitions::finest_common_coarsening(&p.inner, &q.inner).map_err(err)?,
    })
}

#[pyfunction]
fn refines(p: &Partition, q: &Partition) -> PyResult<bool> {
    partitions::refines(&p.inner, &q.inner).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (a, b, cap=DEFAULT_GROUP_CAP))]
fn intersection(a: &PermGroup, b: &PermGroup, cap: usize) -> PyResult<PermGroup> {
    Ok(PermGroup {
        inner: perm_groups::intersection(&a.inner, &b.inner, cap).map_err(err)?,
    })
}

#[pyfunction]
fn generated_join(gs: Vec<PermGroup>) -> PyResult<PermGroup> {
    let owned = groups(&gs);
    let refs: Vec<&perm_groups::PermGroup> = owned.iter().collect();
    Ok(PermGroup {
        inner: perm_groups::generated_join(&refs).map_err(err)?,
    })
}

#[pyfunction]
fn orbit_partition(g: &PermGroup) -> Partition {
    Partition {
        inner: perm_groups::orbit_partition(&g.inner),
    }
}

#[pyfunction]
fn partition_stabilizer(p: &Partition) -> PermGroup {
    PermGroup {
        inner: perm_groups::partition_stabilizer(&p.inner),
    }
}

/// Right cosets of `h` as a partition of the enumerated elements of `ambient`.
#[pyfunction]
#[pyo3(signature = (ambient, h, cap=DEFAULT_GROUP_CAP))]
fn coset_partition(ambient: &PermGroup, h: &PermGroup, cap: usize) -> PyResult<Partition> {
    let els = ambient.inner.enumerate(cap).map_err(err)?;
    Ok(Partition {
        inner: perm_groups::coset_partition(els, &h.inner, cap).map_err(err)?,
    })
}

#[pyfunction]
fn normalized_log_index(ambient_order: u128, sub_order: u128, degree: usize) -> PyResult<f64> {
    perm_groups::normalized_log_index(ambient_order, sub_order, degree).map_err(err)
}

/// Lattice generated by `ps` as a dict of node labels, tables and Hasse edges.
#[pyfunction]
#[pyo3(signature = (ps, convention="info", node_cap=DEFAULT_NODE_CAP))]
fn build_lattice(
    py: Python<'_>,
    ps: Vec<Partition>,
    convention: &str,
    node_cap: usize,
) -> PyResult<Py<PyAny>> {
    let conv: Convention = convention.parse().map_err(err)?;
    let l = lattice::partition_lattice(&raw(&ps), conv, node_cap).map_err(err)?;
    to_py(py, &l.to_dump(|p| p.to_string()))
}

#[pyfunction]
#[pyo3(signature = (ps, convention="info", node_cap=DEFAULT_NODE_CAP))]
fn lattice_dot(ps: Vec<Partition>, convention: &str, node_cap: usize) -> PyResult<String> {
    let conv: Convention = convention.parse().map_err(err)?;
    let l = lattice::partition_lattice(&raw(&ps), conv, node_cap).map_err(err)?;
    Ok(lattice::export_hasse_dot(&l, |p| p.to_string()))
}

/// Entropy vector as a dict from slot names like "H(1v2)" to values in nats.
#[pyfunction]
#[pyo3(signature = (ps, space=None))]
fn entropy_vector(
    py: Python<'_>,
    ps: Vec<Partition>,
    space: Option<&ProbabilitySpace>,
) -> PyResult<Py<PyAny>> {
    let v = lattice::semilattice_vectors(&info_elements(&ps, space)?).map_err(err)?;
    let dict = PyDict::new(py);
    for (slot, h) in v.slots.iter().zip(&v.entries) {
        dict.set_item(slot.to_string(), h)?;
    }
    Ok(dict.into_any().unbind())
}

#[pyfunction]
#[pyo3(signature = (ps, node_cap=DEFAULT_NODE_CAP, group_cap=DEFAULT_GROUP_CAP))]
fn iso_check(
    py: Python<'_>,
    ps: Vec<Partition>,
    node_cap: usize,
    group_cap: usize,
) -> PyResult<Py<PyAny>> {
    let rep = lattice::dual_isomorphism_check(&raw(&ps), node_cap, group_cap).map_err(err)?;
    to_py(py, &rep)
}

#[pyfunction]
#[pyo3(signature = (ps, k, space=None))]
fn approximate(
    py: Python<'_>,
    ps: Vec<Partition>,
    k: usize,
    space: Option<&ProbabilitySpace>,
) -> PyResult<Py<PyAny>> {
    let rep = approximate_rs(&info_elements(&ps, space)?, k).map_err(err)?;
    to_py(py, &rep)
}

fn resolve_law(law: &str) -> PyResult<laws::LawExpression> {
    if laws::BUILTIN_LAWS.contains(&law) {
        laws::builtin_law(law).map_err(err)
    } else {
        laws::parse_law(law).map_err(err)
    }
}

#[pyfunction]
fn builtin_laws() -> Vec<&'static str> {
    laws::BUILTIN_LAWS.to_vec()
}

/// Evaluates a law (builtin name or DSL text) on partitions.
#[pyfunction]
#[pyo3(signature = (law, ps, space=None))]
fn check_law(
    py: Python<'_>,
    law: &str,
    ps: Vec<Partition>,
    space: Option<&ProbabilitySpace>,
) -> PyResult<Py<PyAny>> {
    let law = resolve_law(law)?;
    let r = laws::eval_on_partitions(&law, &info_elements(&ps, space)?).map_err(err)?;
    to_py(py, &r)
}

/// Evaluates a law on subgroups of a group of order `ambient_order` (default `degree!`).
#[pyfunction]
#[pyo3(signature = (law, gs, ambient_order=None, cap=DEFAULT_GROUP_CAP))]
fn check_law_groups(
    py: Python<'_>,
    law: &str,
    gs: Vec<PermGroup>,
    ambient_order: Option<u128>,
    cap: usize,
) -> PyResult<Py<PyAny>> {
    let law = resolve_law(law)?;
    let degree = gs
        .first()
        .map(|g| g.inner.degree())
        .ok_or_else(|| PyValueError::new_err("need at least one group"))?;
    let ambient = match ambient_order {
        Some(o) => o,
        None => perm_groups::factorial_u128(degree)
            .ok_or_else(|| PyValueError::new_err("degree too large for a default ambient order"))?,
    };
    let r = laws::eval_on_subgroups(&law, &groups(&gs), ambient, degree, cap).map_err(err)?;
    to_py(py, &r)
}

/// Seeded search for a violation; returns the counterexample dict or None.
#[pyfunction]
#[pyo3(signature = (law, side="partitions", budget=10_000, seed=0))]
fn falsify(py: Python<'_>, law: &str, side: &str, budget: u64, seed: u64) -> PyResult<Py<PyAny>> {
    let law = resolve_law(law)?;
    let side: Side = side.parse().map_err(err)?;
    let hit = py
        .detach(|| laws::falsify(&law, side, budget, seed, &FalsifyConfig::default()))
        .map_err(err)?;
    match hit {
        Some(cx) => to_py(py, &cx),
        None => Ok(py.None()),
    }
}

#[pyfunction]
#[pyo3(signature = (cap=DEFAULT_GROUP_CAP))]
fn verify_s5(py: Python<'_>, cap: usize) -> PyResult<Py<PyAny>> {
    let rep = laws::verify_s5_counterexample(cap).map_err(err)?;
    to_py(py, &rep)
}

/// Runs the command-line interface; returns `(exit_code, stdout, stderr)`.
#[pyfunction]
fn run_cli(args: Vec<String>) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut errs = Vec::new();
    let argv = std::iter::once("infolattice".to_string()).chain(args);
    let code = ::infolattice::cli::run(argv, &mut out, &mut errs);
    (
        code,
        String::from_utf8_lossy(&out).into_owned(),
        String::from_utf8_lossy(&errs).into_owned(),
    )
}

#[pymodule]
fn infolattice(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("CapacityError", m.py().get_type::<CapacityError>())?;
    m.add_class::<ProbabilitySpace>()?;
    m.add_class::<Partition>()?;
    m.add_class::<Permutation>()?;
    m.add_class::<PermGroup>()?;
    m.add_function(wrap_pyfunction!(entropy, m)?)?;
    m.add_function(wrap_pyfunction!(conditional_entropy, m)?)?;
    m.add_function(wrap_pyfunction!(mutual_information, m)?)?;
    m.add_function(wrap_pyfunction!(common_refinement, m)?)?;
    m.add_function(wrap_pyfunction!(finest_common_coarsening, m)?)?;
    m.add_function(wrap_pyfunction!(refines, m)?)?;
    m.add_function(wrap_pyfunction!(intersection, m)?)?;
    m.add_function(wrap_pyfunction!(generated_join, m)?)?;
    m.add_function(wrap_pyfunction!(orbit_partition, m)?)?;
    m.add_function(wrap_pyfunction!(partition_stabilizer, m)?)?;
    m.add_function(wrap_pyfunction!(coset_partition, m)?)?;
    m.add_function(wrap_pyfunction!(normalized_log_index, m)?)?;
    m.add_function(wrap_pyfunction!(build_lattice, m)?)?;
    m.add_function(wrap_pyfunction!(lattice_dot, m)?)?;
    m.add_function(wrap_pyfunction!(entropy_vector, m)?)?;
    m.add_function(wrap_pyfunction!(iso_check, m)?)?;
    m.add_function(wrap_pyfunction!(approximate, m)?)?;
    m.add_function(wrap_pyfunction!(builtin_laws, m)?)?;
    m.add_function(wrap_pyfunction!(check_law, m)?)?;
    m.add_function(wrap_pyfunction!(check_law_groups, m)?)?;
    m.add_function(wrap_pyfunction!(falsify, m)?)?;
    m.add_function(wrap_pyfunction!(verify_s5, m)?)?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    Ok(())
}
