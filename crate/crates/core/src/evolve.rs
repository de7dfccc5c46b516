//! Time-sliced unitary propagation and instantaneous spectra.

use nalgebra::{DMatrix, DVector};

use crate::algebra::{state_from_raw, OperatorMatrix, Pattern, StateVector, C64};
use crate::error::{Error, Result};
use crate::hamiltonian::{initial_state, AnnealSpec, ScheduleTerms, Slicing};

/// Propagation aborts once |norm - 1| exceeds this.
pub const NORM_ABORT: f64 = 1e-6;

/// Default number of time samples for [`instantaneous_spectrum`].
pub const DEFAULT_SPECTRUM_SAMPLES: usize = 301;

#[derive(Clone, Debug)]
pub struct EvolutionResult {
    pub final_state: StateVector,
    /// (t, state after the slice at t), every `checkpoint_stride` slices.
    pub checkpoints: Vec<(f64, StateVector)>,
    /// Largest |norm - 1| seen along the run.
    pub norm_drift: f64,
}

impl EvolutionResult {
    pub fn probability(&self, p: &Pattern) -> Result<f64> {
        pattern_probability(&self.final_state, p)
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct EvolveOptions {
    /// Record a checkpoint every this many slices; `None` disables them.
    pub checkpoint_stride: Option<usize>,
}

/// Eigenvalues (ascending) of H(t) sampled across the schedule.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumTrace {
    pub times: Vec<f64>,
    pub levels: Vec<Vec<f64>>,
}

/// exp(-i dt H) for Hermitian H, via its eigendecomposition.
pub fn step_propagator(h: &OperatorMatrix, dt: f64) -> Result<OperatorMatrix> {
    let (vals, vecs) = h.eigh()?;
    let phases = DVector::from_iterator(vals.len(), vals.iter().map(|&e| C64::new(0.0, -dt * e).exp()));
    let u = &vecs * DMatrix::from_diagonal(&phases) * vecs.adjoint();
    OperatorMatrix::new(u)
}

/// psi <- exp(-i dt H) psi without forming the propagator.
fn apply_step(h: &OperatorMatrix, dt: f64, psi: &DVector<C64>) -> Result<DVector<C64>> {
    let (vals, vecs) = h.eigh()?;
    let mut coeffs = vecs.adjoint() * psi;
    for (c, &e) in coeffs.iter_mut().zip(&vals) {
        *c *= C64::new(0.0, -dt * e).exp();
    }
    Ok(vecs * coeffs)
}

/// Applies one factor exp(-i dt H_k) per item of `slices`, in order, to
/// `initial`. `slices` yields (t_k, H_k).
pub fn evolve_slices<I>(initial: StateVector, dt: f64, slices: I, options: EvolveOptions) -> Result<EvolutionResult>
where
    I: IntoIterator<Item = (f64, OperatorMatrix)>,
{
    let mut psi: DVector<C64> = initial.into();
    let mut norm_drift = 0.0f64;
    let mut checkpoints = Vec::new();
    for (k, (t, h)) in slices.into_iter().enumerate() {
        psi = apply_step(&h, dt, &psi)?;
        let drift = (psi.norm() - 1.0).abs();
        norm_drift = norm_drift.max(drift);
        if drift > NORM_ABORT {
            return Err(Error::NormDrift { step: k, drift });
        }
        if let Some(stride) = options.checkpoint_stride {
            if stride > 0 && k % stride == 0 {
                checkpoints.push((t, state_from_raw(psi.clone())));
            }
        }
    }
    Ok(EvolutionResult {
        final_state: state_from_raw(psi),
        checkpoints,
        norm_drift,
    })
}

/// Runs the annealing schedule from the product ground state of H_0.
///
/// With N = round(T/dt), the slice for l acts with H(s = l/N) for a width dt;
/// l = 0 acts first.
pub fn anneal(spec: &AnnealSpec) -> Result<EvolutionResult> {
    anneal_with(spec, EvolveOptions::default())
}

pub fn anneal_with(spec: &AnnealSpec, options: EvolveOptions) -> Result<EvolutionResult> {
    let terms = ScheduleTerms::new(spec)?;
    let n = spec.steps();
    let first = match spec.slicing {
        Slicing::Inclusive => 0,
        Slicing::RightEndpoint => 1,
    };
    let total = spec.total_time;
    let slices = (first..=n).map(|l| {
        let s = l as f64 / n as f64;
        (s * total, terms.at_fraction(s))
    });
    evolve_slices(initial_state(spec.sites()), spec.dt, slices, options)
}

/// |<p|state>|^2.
pub fn pattern_probability(state: &StateVector, p: &Pattern) -> Result<f64> {
    let expected = crate::algebra::register_dim(p.len());
    if state.dim() != expected {
        return Err(Error::DimensionMismatch {
            left: state.dim(),
            right: expected,
        });
    }
    Ok(state.amplitude(p.index()).norm_sqr())
}

/// Eigenvalues of H(t) at `samples` equally spaced times in [0, T].
pub fn instantaneous_spectrum(spec: &AnnealSpec, samples: usize) -> Result<SpectrumTrace> {
    if samples < 2 {
        return Err(Error::InvalidParameter {
            name: "samples",
            value: samples as f64,
            reason: "need at least two samples",
        });
    }
    let terms = ScheduleTerms::new(spec)?;
    let mut times = Vec::with_capacity(samples);
    let mut levels = Vec::with_capacity(samples);
    for k in 0..samples {
        let s = k as f64 / (samples - 1) as f64;
        times.push(s * spec.total_time);
        levels.push(terms.at_fraction(s).eigenvalues()?);
    }
    Ok(SpectrumTrace { times, levels })
}
