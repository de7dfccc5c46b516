//! Parameter sweeps, hint-response slopes, scaling fits and schedule
//! comparisons built on top of [`crate::evolve::anneal`].

use std::fmt;

use rayon::prelude::*;

use crate::algebra::Pattern;
use crate::error::{Error, Result};
use crate::evolve::anneal;
use crate::hamiltonian::{build_memory, build_probe, AnnealSpec, MemorySet, ScheduleKind};

/// Central-difference half-width for [`slope_at_zero`].
pub const SLOPE_DELTA: f64 = 1e-3;

/// Relative Richardson disagreement above which a slope is rejected.
pub const RICHARDSON_REL_TOL: f64 = 0.05;

/// Absolute disagreement always accepted; covers slopes that are zero.
pub const RICHARDSON_ABS_FLOOR: f64 = 1e-6;

/// Worker-pool size for grid runs; `None` uses every core.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Jobs(pub Option<usize>);

impl Jobs {
    /// Maps `f` over `items` on the pool; output order matches `items`.
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Result<Vec<R>>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> Result<R> + Sync + Send,
    {
        let run = || items.par_iter().map(&f).collect::<Result<Vec<R>>>();
        match self.0 {
            Some(1) => items.iter().map(&f).collect(),
            Some(n) => rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .expect("thread pool")
                .install(run),
            None => run(),
        }
    }
}

/// Parameter varied across a sweep.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepControl {
    Gamma,
    H,
    T,
}

impl SweepControl {
    pub fn as_str(self) -> &'static str {
        match self {
            SweepControl::Gamma => "gamma",
            SweepControl::H => "h",
            SweepControl::T => "T",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "gamma" => Some(SweepControl::Gamma),
            "h" => Some(SweepControl::H),
            "T" => Some(SweepControl::T),
            _ => None,
        }
    }

    fn apply(self, spec: &AnnealSpec, value: f64) -> AnnealSpec {
        let s = spec.clone();
        match self {
            SweepControl::Gamma => s.with_gamma(value),
            SweepControl::H => s.with_field(value),
            SweepControl::T => s.with_total_time(value),
        }
    }
}

impl fmt::Display for SweepControl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub control_value: f64,
    pub pattern: Pattern,
    pub probability: f64,
}

/// Readout probabilities across a sweep.
///
/// `rows` holds the reported patterns; `full` keeps every basis probability
/// per control value so normalisation can be checked.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepTable {
    pub control: SweepControl,
    pub rows: Vec<SweepRow>,
    pub full: Vec<(f64, Vec<f64>)>,
}

impl SweepTable {
    /// (control value, probability) pairs for one pattern, in sweep order.
    pub fn series(&self, p: &Pattern) -> Vec<(f64, f64)> {
        self.rows
            .iter()
            .filter(|r| &r.pattern == p)
            .map(|r| (r.control_value, r.probability))
            .collect()
    }

    /// Probability of `p` at the row whose control value equals `value`.
    pub fn at(&self, value: f64, p: &Pattern) -> Option<f64> {
        self.full
            .iter()
            .find(|(v, _)| *v == value)
            .map(|(_, probs)| probs[p.index()])
    }

    /// Largest |sum of all basis probabilities - 1| over control values.
    pub fn normalization_error(&self) -> f64 {
        self.full
            .iter()
            .map(|(_, p)| (p.iter().sum::<f64>() - 1.0).abs())
            .fold(0.0, f64::max)
    }
}

/// Patterns reported by sweeps: the stored ones, then the probe if unstored.
pub fn reported_patterns(spec: &AnnealSpec) -> Vec<Pattern> {
    let mut out = spec.memory.patterns().to_vec();
    if let Some(p) = &spec.probe {
        if !spec.memory.contains(p) {
            out.push(p.clone());
        }
    }
    out.sort_by_key(|p| p.index());
    out
}

/// One full anneal per value of `control`.
pub fn sweep(spec: &AnnealSpec, control: SweepControl, values: &[f64], jobs: Jobs) -> Result<SweepTable> {
    if control == SweepControl::Gamma && (values.iter().any(|&g| g < 0.0) || values.windows(2).any(|w| w[0] > w[1])) {
        return Err(Error::InvalidParameter {
            name: "gamma",
            value: values.iter().copied().fold(f64::NAN, f64::min),
            reason: "gamma grid must be sorted and non-negative",
        });
    }
    let full = jobs.map(values, |&v| {
        let run = anneal(&control.apply(spec, v)).map_err(|e| match control {
            SweepControl::Gamma => Error::AtGamma {
                gamma: v,
                source: Box::new(e),
            },
            _ => e,
        })?;
        Ok((v, run.final_state.probabilities()))
    })?;
    let patterns = reported_patterns(spec);
    let mut order: Vec<usize> = (0..full.len()).collect();
    order.sort_by(|&a, &b| full[a].0.total_cmp(&full[b].0));
    let rows = order
        .iter()
        .flat_map(|&k| {
            let (v, probs) = &full[k];
            patterns.iter().map(move |p| SweepRow {
                control_value: *v,
                pattern: p.clone(),
                probability: probs[p.index()],
            })
        })
        .collect();
    Ok(SweepTable { control, rows, full })
}

pub fn gamma_sweep(spec: &AnnealSpec, gammas: &[f64], jobs: Jobs) -> Result<SweepTable> {
    sweep(spec, SweepControl::Gamma, gammas, jobs)
}

/// Gamma = 0 followed by 21 geometrically spaced points from 1e-3 to 2.
pub fn default_gamma_grid() -> Vec<f64> {
    let (lo, hi, k) = (1e-3f64, 2.0f64, 21);
    let ratio = (hi / lo).ln() / (k - 1) as f64;
    std::iter::once(0.0)
        .chain((0..k).map(|i| if i == k - 1 { hi } else { lo * (ratio * i as f64).exp() }))
        .collect()
}

/// d P(pattern) / d Gamma at Gamma = 0.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SlopeEstimate {
    pub value: f64,
    pub step: f64,
    pub richardson_error: f64,
}

/// Central difference at +-delta, cross-checked against +-delta/2.
///
/// Negative Gamma is only used here, as the lower differencing point.
pub fn slope_at_zero(spec: &AnnealSpec, pattern: &Pattern) -> Result<SlopeEstimate> {
    slope_at_zero_with(spec, pattern, SLOPE_DELTA, Jobs(Some(1)))
}

pub fn slope_at_zero_with(spec: &AnnealSpec, pattern: &Pattern, delta: f64, jobs: Jobs) -> Result<SlopeEstimate> {
    if spec.probe.is_none() {
        return Err(Error::InvalidParameter {
            name: "probe",
            value: f64::NAN,
            reason: "slope needs a probe pattern",
        });
    }
    let gammas = [delta, -delta, delta / 2.0, -delta / 2.0];
    let probs = jobs.map(&gammas, |&g| anneal(&spec.clone().with_gamma(g))?.probability(pattern))?;
    let wide = (probs[0] - probs[1]) / (2.0 * delta);
    let narrow = (probs[2] - probs[3]) / delta;
    let err = (wide - narrow).abs();
    if err > RICHARDSON_REL_TOL * narrow.abs() && err > RICHARDSON_ABS_FLOOR {
        return Err(Error::RichardsonRejected {
            value: narrow,
            error: err,
        });
    }
    Ok(SlopeEstimate {
        value: narrow,
        step: delta / 2.0,
        richardson_error: err,
    })
}

/// Log-log fit of a readout probability against h/T.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalingFit {
    /// Slope of ln P against ln(h/T).
    pub exponent: f64,
    /// exp(intercept) of the same fit.
    pub prefactor: f64,
    /// Geometric mean of P / (h/T)^(2/3): the prefactor with the exponent pinned.
    pub prefactor_at_two_thirds: f64,
    /// (h, T, P) per grid point.
    pub points: Vec<(f64, f64, f64)>,
}

/// Least-squares line through (x, y); returns (slope, intercept).
pub fn linear_fit(points: &[(f64, f64)]) -> Result<(f64, f64)> {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if points.len() < 2 || sxx <= 1e-300 {
        return Err(Error::UnderdeterminedFit);
    }
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    Ok((slope, my - slope * mx))
}

/// Runs `base` (with Gamma forced to 0) over the h x T grid and fits
/// ln P(pattern) against ln(h/T).
pub fn scaling_scan(
    base: &AnnealSpec,
    pattern: &Pattern,
    h_values: &[f64],
    t_values: &[f64],
    jobs: Jobs,
) -> Result<ScalingFit> {
    let grid: Vec<(f64, f64)> = h_values
        .iter()
        .flat_map(|&h| t_values.iter().map(move |&t| (h, t)))
        .collect();
    let mut ratios: Vec<f64> = grid.iter().map(|(h, t)| h / t).collect();
    ratios.sort_by(f64::total_cmp);
    ratios.dedup();
    if ratios.len() < 2 {
        return Err(Error::UnderdeterminedFit);
    }
    let points = jobs.map(&grid, |&(h, t)| {
        let spec = base.clone().with_gamma(0.0).with_field(h).with_total_time(t);
        Ok((h, t, anneal(&spec)?.probability(pattern)?))
    })?;
    let logs: Vec<(f64, f64)> = points.iter().map(|&(h, t, p)| ((h / t).ln(), p.ln())).collect();
    let (exponent, intercept) = linear_fit(&logs)?;
    let pinned = logs.iter().map(|(x, y)| y - 2.0 / 3.0 * x).sum::<f64>() / logs.len() as f64;
    Ok(ScalingFit {
        exponent,
        prefactor: intercept.exp(),
        prefactor_at_two_thirds: pinned.exp(),
        points,
    })
}

/// Smallest Gamma >= 0 at which the probe state lies in the ground
/// eigenspace of H_mem + Gamma H_prob, by bisection on exact spectra.
pub fn crossover_gamma(memory: &MemorySet, probe: &Pattern) -> Result<f64> {
    let mem = build_memory(memory)?;
    let hp = build_probe(probe)?;
    let is_ground = |g: f64| -> Result<bool> {
        let mut h = mem.clone();
        h.add_scaled(g, &hp);
        let lowest = h.eigenvalues()?[0];
        Ok(h.get(probe.index(), probe.index()).re - lowest <= 1e-12)
    };
    if is_ground(0.0)? {
        return Ok(0.0);
    }
    let mut hi = 1.0;
    while !is_ground(hi)? {
        hi *= 2.0;
        if hi > 1e6 {
            return Err(Error::InvalidParameter {
                name: "gamma",
                value: hi,
                reason: "no crossover found",
            });
        }
    }
    let mut lo = 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if is_ground(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// max - min of the stored-pattern probabilities.
pub fn spread(probs: &[f64], memory: &MemorySet) -> f64 {
    let vals = memory.patterns().iter().map(|p| probs[p.index()]);
    let (lo, hi) = vals.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
    hi - lo
}

#[derive(Clone, Debug)]
pub struct ScheduleComparison {
    pub plain_spread: f64,
    pub switched_spread: f64,
    pub crossover_gamma: f64,
    pub plain: SweepTable,
    pub switched: SweepTable,
}

/// Runs the plain and switched-help schedules over `gammas` (Gamma = 0 is
/// prepended when missing) and reports the Gamma = 0 spreads and the exact
/// ground-state crossover of the probe.
pub fn compare_schedules(
    memory: &MemorySet,
    probe: &Pattern,
    h: f64,
    total: f64,
    gammas: &[f64],
    jobs: Jobs,
) -> Result<ScheduleComparison> {
    if memory.len() < 2 {
        return Err(Error::TooFewPatterns {
            required: 2,
            found: memory.len(),
        });
    }
    let mut grid = gammas.to_vec();
    if grid.first() != Some(&0.0) {
        grid.insert(0, 0.0);
    }
    let base = AnnealSpec::new(memory.clone())
        .with_probe(probe.clone(), 0.0)
        .with_field(h)
        .with_total_time(total);
    let plain = gamma_sweep(&base, &grid, jobs)?;
    let switched = gamma_sweep(&base.clone().with_schedule(ScheduleKind::SwitchedHelp), &grid, jobs)?;
    let at_zero = |t: &SweepTable| spread(&t.full.iter().find(|(g, _)| *g == 0.0).unwrap().1, memory);
    Ok(ScheduleComparison {
        plain_spread: at_zero(&plain),
        switched_spread: at_zero(&switched),
        crossover_gamma: crossover_gamma(memory, probe)?,
        plain,
        switched,
    })
}

/// The five-pattern three-qutrit memory used for the capacity demonstration.
pub fn three_qutrit_memory() -> MemorySet {
    MemorySet::from_values(&[&[-1, -1, 1], &[0, 0, -1], &[1, -1, 0], &[1, 1, 1], &[-1, 1, -1]])
        .expect("distinct patterns")
}

/// The two-qutrit memory {|0,1>, |1,0>, |-1,-1>}.
pub fn two_qutrit_memory() -> MemorySet {
    MemorySet::from_values(&[&[0, 1], &[1, 0], &[-1, -1]]).expect("distinct patterns")
}

#[derive(Clone, Debug)]
pub struct DemoTables {
    pub plain: SweepTable,
    pub switched: SweepTable,
}

/// Gamma sweeps of the three-qutrit memory hinted towards |1,1,1>, at
/// h = 2, T = 300, under both schedules.
pub fn three_qutrit_demo(gammas: &[f64], jobs: Jobs) -> Result<DemoTables> {
    let probe = Pattern::from_values(&[1, 1, 1])?;
    let base = AnnealSpec::new(three_qutrit_memory()).with_probe(probe, 0.0);
    Ok(DemoTables {
        plain: gamma_sweep(&base, gammas, jobs)?,
        switched: gamma_sweep(&base.with_schedule(ScheduleKind::SwitchedHelp), gammas, jobs)?,
    })
}
