//! Python module `mtrsched`: networks, instances, schedules and the
//! schedulers. Exact optima come back as `fractions.Fraction`.

use mtrsched::experiment::{run_experiment as run_campaign, to_json, ExperimentConfig};
use mtrsched::io::{load_instance, load_schedule, save_instance, save_schedule};
use mtrsched::network::gen_demands;
use mtrsched::{
    bipartition, cost_penalty, fixtures, lower_bounds, solve_ilp as ilp, solve_lp as lp,
    solve_mis_suboptimal as mis, two_phase_schedule, validate_schedule, BipartiteCheck, Error,
    Heuristic,
};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::SizeLimit { .. } | Error::NotBipartite(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn fraction<'py>(py: Python<'py>, value: impl ToString) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?
        .getattr("Fraction")?
        .call1((value.to_string(),))
}

#[pyclass(name = "Network", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyNetwork {
    inner: mtrsched::Network,
}

#[pymethods]
impl PyNetwork {
    /// Undirected topology on nodes `1..=node_count`; each edge gives two links.
    #[new]
    fn new(node_count: usize, edges: Vec<(u32, u32)>) -> PyResult<Self> {
        let inner = mtrsched::Network::new(node_count, edges).map_err(py_err)?;
        Ok(PyNetwork { inner })
    }

    #[staticmethod]
    fn linear(n: usize) -> PyResult<Self> {
        Ok(PyNetwork {
            inner: mtrsched::gen_linear(n).map_err(py_err)?,
        })
    }

    #[staticmethod]
    fn ring(n: usize) -> PyResult<Self> {
        Ok(PyNetwork {
            inner: mtrsched::gen_ring(n).map_err(py_err)?,
        })
    }

    #[staticmethod]
    fn grid(rows: usize, cols: usize) -> PyResult<Self> {
        Ok(PyNetwork {
            inner: mtrsched::gen_grid(rows, cols).map_err(py_err)?,
        })
    }

    #[staticmethod]
    fn complete(n: usize) -> PyResult<Self> {
        Ok(PyNetwork {
            inner: mtrsched::gen_complete(n).map_err(py_err)?,
        })
    }

    #[staticmethod]
    fn random(n: usize, p: f64, seed: u64) -> PyResult<Self> {
        Ok(PyNetwork {
            inner: mtrsched::gen_random(n, p, seed).map_err(py_err)?,
        })
    }

    #[getter]
    fn node_count(&self) -> usize {
        self.inner.node_count()
    }

    #[getter]
    fn edges(&self) -> Vec<(u32, u32)> {
        self.inner
            .edges()
            .iter()
            .map(|&(a, b)| (a.0, b.0))
            .collect()
    }

    /// Directional links in canonical (sorted) order.
    #[getter]
    fn links(&self) -> Vec<(u32, u32)> {
        self.inner
            .links()
            .iter()
            .map(|l| (l.tx.0, l.rx.0))
            .collect()
    }

    fn is_bipartite(&self) -> bool {
        matches!(bipartition(&self.inner), BipartiteCheck::Bipartite(_))
    }

    fn __len__(&self) -> usize {
        self.inner.link_count()
    }

    fn __repr__(&self) -> String {
        format!(
            "Network(nodes={}, links={})",
            self.inner.node_count(),
            self.inner.link_count()
        )
    }
}

#[pyclass(name = "Instance", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyInstance {
    inner: mtrsched::Instance,
}

#[pymethods]
impl PyInstance {
    /// `demands` follows the order of `network.links`.
    #[new]
    fn new(network: &PyNetwork, demands: Vec<u64>) -> PyResult<Self> {
        let inner = mtrsched::Instance::new(network.inner.clone(), demands).map_err(py_err)?;
        Ok(PyInstance { inner })
    }

    /// Uniform random demands in `lo..=hi`.
    #[staticmethod]
    #[pyo3(signature = (network, lo, hi, seed, symmetric = true))]
    fn uniform(
        network: &PyNetwork,
        lo: u64,
        hi: u64,
        seed: u64,
        symmetric: bool,
    ) -> PyResult<Self> {
        let d = gen_demands(&network.inner, lo, hi, symmetric, seed).map_err(py_err)?;
        let inner = mtrsched::Instance::new(network.inner.clone(), d).map_err(py_err)?;
        Ok(PyInstance { inner })
    }

    /// Named example instances: four-node, linear-1..3, grid-sym, grid-asym,
    /// ring-sym, ring-asym, tree.
    #[staticmethod]
    fn fixture(name: &str) -> PyResult<Self> {
        let inner = match name {
            "four-node" => fixtures::four_node(),
            "linear-1" => fixtures::linear(0),
            "linear-2" => fixtures::linear(1),
            "linear-3" => fixtures::linear(2),
            "grid-sym" => fixtures::grid(0),
            "grid-asym" => fixtures::grid(1),
            "ring-sym" => fixtures::ring(0),
            "ring-asym" => fixtures::ring(1),
            "tree" => fixtures::tree(),
            _ => return Err(PyValueError::new_err(format!("unknown fixture `{name}`"))),
        };
        Ok(PyInstance { inner })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyInstance {
            inner: load_instance(text.as_bytes()).map_err(py_err)?,
        })
    }

    fn to_json(&self) -> String {
        String::from_utf8(save_instance(&self.inner)).expect("utf-8")
    }

    #[getter]
    fn network(&self) -> PyNetwork {
        PyNetwork {
            inner: self.inner.network().clone(),
        }
    }

    #[getter]
    fn demands(&self) -> Vec<u64> {
        self.inner.demands().as_slice().to_vec()
    }

    /// `(edge_bound, node_bound)`; no schedule can be shorter than either.
    fn lower_bounds(&self) -> (u64, u64) {
        let b = lower_bounds(&self.inner);
        (b.edge, b.node)
    }

    fn __repr__(&self) -> String {
        format!(
            "Instance(nodes={}, links={}, total_demand={})",
            self.inner.network().node_count(),
            self.inner.link_count(),
            self.inner.demands().total()
        )
    }
}

#[pyclass(name = "Schedule", frozen)]
struct PySchedule {
    inner: mtrsched::Schedule,
    network: mtrsched::Network,
}

impl PySchedule {
    fn of(instance: &PyInstance, inner: mtrsched::Schedule) -> Self {
        PySchedule {
            inner,
            network: instance.inner.network().clone(),
        }
    }
}

#[pymethods]
impl PySchedule {
    #[staticmethod]
    fn from_json(instance: &PyInstance, text: &str) -> PyResult<Self> {
        let inner = load_schedule(instance.inner.network(), text.as_bytes()).map_err(py_err)?;
        Ok(PySchedule::of(instance, inner))
    }

    /// `[(links, slots), ...]` where `links` is a list of `(tx, rx)` pairs.
    #[getter]
    fn entries(&self) -> Vec<(Vec<(u32, u32)>, u64)> {
        self.inner
            .entries()
            .iter()
            .map(|e| {
                let links = e
                    .matching
                    .iter()
                    .map(|i| {
                        let l = self.network.link(i);
                        (l.tx.0, l.rx.0)
                    })
                    .collect();
                (links, e.slots)
            })
            .collect()
    }

    #[getter]
    fn total_slots(&self) -> u64 {
        self.inner.total_slots()
    }

    fn to_json(&self) -> String {
        String::from_utf8(save_schedule(&self.network, &self.inner)).expect("utf-8")
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __str__(&self) -> String {
        self.inner.display(&self.network).to_string()
    }
}

#[pyfunction]
fn hwf(instance: &PyInstance) -> PySchedule {
    PySchedule::of(instance, Heuristic::HeavyWeightFirst.run(&instance.inner))
}

#[pyfunction]
fn mdf(instance: &PyInstance) -> PySchedule {
    PySchedule::of(instance, Heuristic::MaxDegreeFirst.run(&instance.inner))
}

#[pyfunction]
fn hwf_tiebreak_mdf(instance: &PyInstance) -> PySchedule {
    PySchedule::of(
        instance,
        Heuristic::HeavyWeightDegreeTieBreak.run(&instance.inner),
    )
}

/// Integer optimum and an optimal schedule.
#[pyfunction]
fn solve_ilp(instance: &PyInstance) -> PyResult<(u64, PySchedule)> {
    let sol = ilp(&instance.inner).map_err(py_err)?;
    Ok((sol.objective, PySchedule::of(instance, sol.schedule)))
}

/// Continuous optimum (a Fraction) and the schedule with allocations rounded up.
#[pyfunction]
fn solve_lp<'py>(
    py: Python<'py>,
    instance: &PyInstance,
) -> PyResult<(Bound<'py, PyAny>, PySchedule)> {
    let sol = lp(&instance.inner).map_err(py_err)?;
    let schedule = PySchedule::of(instance, sol.rounded_schedule());
    Ok((fraction(py, &sol.objective)?, schedule))
}

/// Optimum when a transmitting node must use all its outgoing links at once.
#[pyfunction]
fn solve_mis_suboptimal<'py>(
    py: Python<'py>,
    instance: &PyInstance,
) -> PyResult<(Bound<'py, PyAny>, PySchedule)> {
    let sol = mis(&instance.inner).map_err(py_err)?;
    let schedule = PySchedule::of(instance, sol.schedule(instance.inner.network()));
    Ok((fraction(py, &sol.objective)?, schedule))
}

#[pyfunction]
fn two_phase(instance: &PyInstance) -> PyResult<PySchedule> {
    match bipartition(instance.inner.network()) {
        BipartiteCheck::Bipartite(parts) => Ok(PySchedule::of(
            instance,
            two_phase_schedule(&instance.inner, &parts),
        )),
        BipartiteCheck::OddCycle(c) => {
            Err(py_err(Error::NotBipartite(c.iter().map(|v| v.0).collect())))
        }
    }
}

/// Violation messages; empty when the schedule is valid and covers every demand.
#[pyfunction]
fn validate(instance: &PyInstance, schedule: &PySchedule) -> Vec<String> {
    validate_schedule(&instance.inner, &schedule.inner)
        .iter()
        .map(|v| v.to_string())
        .collect()
}

/// Percentage excess of `total` over `optimum`, as a Fraction.
#[pyfunction]
fn penalty(py: Python<'_>, total: u64, optimum: u64) -> PyResult<Bound<'_, PyAny>> {
    let p = cost_penalty(total, optimum).map_err(py_err)?;
    fraction(py, p)
}

/// Random-network campaign; returns the report as a JSON string.
#[pyfunction]
#[pyo3(signature = (n, p, hi, symmetric, trials, seed, jobs = 1))]
#[allow(clippy::too_many_arguments)]
fn run_experiment(
    py: Python<'_>,
    n: usize,
    p: f64,
    hi: u64,
    symmetric: bool,
    trials: usize,
    seed: u64,
    jobs: usize,
) -> PyResult<String> {
    let mut cfg = ExperimentConfig::random(n, p, hi, symmetric, trials, seed);
    cfg.jobs = jobs;
    let report = py.detach(|| run_campaign(&cfg)).map_err(py_err)?;
    Ok(to_json(&report))
}

#[pymodule]
#[pyo3(name = "mtrsched")]
fn mtrsched_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyNetwork>()?;
    m.add_class::<PyInstance>()?;
    m.add_class::<PySchedule>()?;
    m.add_function(wrap_pyfunction!(hwf, m)?)?;
    m.add_function(wrap_pyfunction!(mdf, m)?)?;
    m.add_function(wrap_pyfunction!(hwf_tiebreak_mdf, m)?)?;
    m.add_function(wrap_pyfunction!(solve_ilp, m)?)?;
    m.add_function(wrap_pyfunction!(solve_lp, m)?)?;
    m.add_function(wrap_pyfunction!(solve_mis_suboptimal, m)?)?;
    m.add_function(wrap_pyfunction!(two_phase, m)?)?;
    m.add_function(wrap_pyfunction!(validate, m)?)?;
    m.add_function(wrap_pyfunction!(penalty, m)?)?;
    m.add_function(wrap_pyfunction!(run_experiment, m)?)?;
    Ok(())
}
