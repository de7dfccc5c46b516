//! Python bindings: anneal specs, sweeps, spectra, theory predictions and
//! the acceptance suite.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use anneal_core::analysis::{self, Jobs, SweepControl};
use anneal_core::evolve;
use anneal_core::scenario::Scenario;
use anneal_core::{selftest, theory, Error, MemorySet, Pattern, ScheduleKind};

fn to_py(e: Error) -> PyErr {
    if e.is_numerical() {
        PyRuntimeError::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

fn pattern(v: Vec<i64>) -> PyResult<Pattern> {
    Pattern::from_values(&v).map_err(to_py)
}

fn memory(patterns: Vec<Vec<i64>>) -> PyResult<MemorySet> {
    let ps = patterns.into_iter().map(pattern).collect::<PyResult<Vec<_>>>()?;
    MemorySet::new(ps).map_err(to_py)
}

/// An annealing run description.
#[pyclass(name = "AnnealSpec", module = "qutrit_anneal", from_py_object)]
#[derive(Clone)]
pub struct PyAnnealSpec {
    inner: anneal_core::AnnealSpec,
}

#[pymethods]
impl PyAnnealSpec {
    #[new]
    #[pyo3(signature = (patterns, probe=None, gamma=0.0, h=2.0, total_time=300.0, dt=0.1, schedule="plain", help_scale=1.0, memory_scale=1.0))]
    #[allow(clippy::too_many_arguments)]
    fn new(
        patterns: Vec<Vec<i64>>,
        probe: Option<Vec<i64>>,
        gamma: f64,
        h: f64,
        total_time: f64,
        dt: f64,
        schedule: &str,
        help_scale: f64,
        memory_scale: f64,
    ) -> PyResult<Self> {
        let kind = ScheduleKind::parse(schedule)
            .ok_or_else(|| PyValueError::new_err(format!("unknown schedule {schedule:?}")))?;
        let mut spec = anneal_core::AnnealSpec::new(memory(patterns)?)
            .with_field(h)
            .with_total_time(total_time)
            .with_dt(dt)
            .with_schedule(kind)
            .with_help_scale(help_scale)
            .with_memory_scale(memory_scale);
        if let Some(p) = probe {
            spec = spec.with_probe(pattern(p)?, gamma);
        }
        spec.validate().map_err(to_py)?;
        Ok(PyAnnealSpec { inner: spec })
    }

    /// Parses a scenario document.
    #[staticmethod]
    fn from_scenario(text: &str) -> PyResult<Self> {
        let sc = Scenario::parse(text).map_err(to_py)?;
        Ok(PyAnnealSpec {
            inner: sc.to_anneal_spec().map_err(to_py)?,
        })
    }

    #[getter]
    fn sites(&self) -> usize {
        self.inner.sites()
    }

    #[getter]
    fn gamma(&self) -> f64 {
        self.inner.effective_gamma()
    }

    #[getter]
    fn schedule(&self) -> &'static str {
        self.inner.schedule.as_str()
    }

    fn with_gamma(&self, gamma: f64) -> Self {
        PyAnnealSpec {
            inner: self.inner.clone().with_gamma(gamma),
        }
    }

    /// Final-state probabilities over all 3^n basis patterns, in index order.
    fn probabilities(&self, py: Python<'_>) -> PyResult<Vec<f64>> {
        let spec = self.inner.clone();
        py.detach(move || evolve::anneal(&spec))
            .map(|r| r.final_state.probabilities())
            .map_err(to_py)
    }

    /// {pattern string: probability} for stored patterns and an unstored probe.
    fn anneal(&self, py: Python<'_>) -> PyResult<Vec<(String, f64)>> {
        let probs = self.probabilities(py)?;
        Ok(analysis::reported_patterns(&self.inner)
            .into_iter()
            .map(|p| (p.to_string(), probs[p.index()]))
            .collect())
    }

    /// Rows of (control value, pattern, probability).
    #[pyo3(signature = (control, values=None, jobs=None))]
    fn sweep(
        &self,
        py: Python<'_>,
        control: &str,
        values: Option<Vec<f64>>,
        jobs: Option<usize>,
    ) -> PyResult<Vec<(f64, String, f64)>> {
        let control = SweepControl::parse(control)
            .ok_or_else(|| PyValueError::new_err(format!("control must be gamma, h or T, got {control:?}")))?;
        let values = values.unwrap_or_else(analysis::default_gamma_grid);
        let spec = self.inner.clone();
        let table = py
            .detach(move || analysis::sweep(&spec, control, &values, Jobs(jobs)))
            .map_err(to_py)?;
        Ok(table
            .rows
            .into_iter()
            .map(|r| (r.control_value, r.pattern.to_string(), r.probability))
            .collect())
    }

    /// (times, levels) of the instantaneous spectrum.
    #[pyo3(signature = (samples=evolve::DEFAULT_SPECTRUM_SAMPLES))]
    fn spectrum(&self, py: Python<'_>, samples: usize) -> PyResult<(Vec<f64>, Vec<Vec<f64>>)> {
        let spec = self.inner.clone();
        let t = py
            .detach(move || evolve::instantaneous_spectrum(&spec, samples))
            .map_err(to_py)?;
        Ok((t.times, t.levels))
    }

    /// (value, step, richardson_error) of dP(pattern)/dGamma at Gamma = 0.
    fn slope_at_zero(&self, py: Python<'_>, pattern: Vec<i64>) -> PyResult<(f64, f64, f64)> {
        let p = self::pattern(pattern)?;
        let spec = self.inner.clone();
        let s = py.detach(move || analysis::slope_at_zero(&spec, &p)).map_err(to_py)?;
        Ok((s.value, s.step, s.richardson_error))
    }

    fn __repr__(&self) -> String {
        let s = &self.inner;
        format!(
            "AnnealSpec(patterns={:?}, probe={:?}, gamma={}, h={}, T={}, dt={}, schedule={:?})",
            s.memory.patterns().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            s.probe.as_ref().map(|p| p.to_string()),
            s.effective_gamma(),
            s.field_h,
            s.total_time,
            s.dt,
            s.schedule.as_str()
        )
    }
}

#[pyfunction]
fn predict_a3(h: f64, total_time: f64) -> f64 {
    theory::predict_a3(h, total_time)
}

#[pyfunction]
fn a1_gamma_slope(h: f64, total_time: f64) -> f64 {
    theory::a1_gamma_slope(h, total_time)
}

#[pyfunction]
fn a3_gamma_slope(h: f64, total_time: f64) -> f64 {
    theory::a3_gamma_slope(h, total_time)
}

#[pyfunction]
fn k1_reconstructed() -> f64 {
    theory::k1_reconstructed()
}

#[pyfunction]
#[pyo3(signature = (k43=0.5))]
fn k3_reconstructed(k43: f64) -> f64 {
    theory::k3_reconstructed(k43)
}

/// |a3(T)|^2 from the reduced three-level dynamics.
#[pyfunction]
#[pyo3(signature = (h, total_time, z_max=3.0))]
fn reduced_a3(h: f64, total_time: f64, z_max: f64) -> PyResult<f64> {
    let t_d = theory::t_d_from_z_max(h, total_time, z_max);
    theory::reduced_evolve(h, total_time, 0.0, theory::ProbeKind::None, t_d)
        .map(|s| s.p3())
        .map_err(to_py)
}

/// Smallest Gamma at which `probe` is a ground state of H_mem + Gamma H_prob.
#[pyfunction]
fn crossover_gamma(patterns: Vec<Vec<i64>>, probe: Vec<i64>) -> PyResult<f64> {
    analysis::crossover_gamma(&memory(patterns)?, &pattern(probe)?).map_err(to_py)
}

#[pyfunction]
fn default_gamma_grid() -> Vec<f64> {
    analysis::default_gamma_grid()
}

/// Runs the acceptance criteria; returns (id, name, passed, detail) tuples.
#[pyfunction]
#[pyo3(signature = (jobs=None))]
fn run_selftest(py: Python<'_>, jobs: Option<usize>) -> Vec<(u8, String, bool, String)> {
    py.detach(move || selftest::run_all(Jobs(jobs)))
        .into_iter()
        .map(|o| (o.id, o.name.to_string(), o.passed, o.detail))
        .collect()
}

#[pymodule]
fn qutrit_anneal(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyAnnealSpec>()?;
    m.add_function(wrap_pyfunction!(predict_a3, m)?)?;
    m.add_function(wrap_pyfunction!(a1_gamma_slope, m)?)?;
    m.add_function(wrap_pyfunction!(a3_gamma_slope, m)?)?;
    m.add_function(wrap_pyfunction!(k1_reconstructed, m)?)?;
    m.add_function(wrap_pyfunction!(k3_reconstructed, m)?)?;
    m.add_function(wrap_pyfunction!(reduced_a3, m)?)?;
    m.add_function(wrap_pyfunction!(crossover_gamma, m)?)?;
    m.add_function(wrap_pyfunction!(default_gamma_grid, m)?)?;
    m.add_function(wrap_pyfunction!(run_selftest, m)?)?;
    Ok(())
}
