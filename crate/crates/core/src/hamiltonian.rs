//! Memory, probe, field and auxiliary Hamiltonians, and the annealing
//! schedule that interpolates between them.
//!
//! Memory, probe and auxiliary terms are assembled twice: once from direct
//! basis outer products (the representation used at run time) and once from
//! products of single-site spin operators. The two must agree entrywise.

use std::collections::HashSet;

use nalgebra::DMatrix;

use crate::algebra::{
    embed_site, pattern_projector, pattern_transition, register_dim, spin_operators, OperatorMatrix, Pattern,
    StateVector, C64,
};
use crate::error::{Error, Result};

/// Allowed entrywise gap between the outer-product and spin-operator
/// constructions of the same Hamiltonian.
pub const CONSTRUCTION_TOL: f64 = 1e-12;

/// Stored patterns; distinct, non-empty, all of one length.
#[derive(Clone, Debug, PartialEq)]
pub struct MemorySet {
    patterns: Vec<Pattern>,
}

impl MemorySet {
    pub fn new(patterns: Vec<Pattern>) -> Result<Self> {
        let first = patterns
            .first()
            .ok_or(Error::TooFewPatterns { required: 1, found: 0 })?;
        let n = first.len();
        let mut seen = HashSet::new();
        for p in &patterns {
            if p.len() != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    found: p.len(),
                });
            }
            if !seen.insert(p.clone()) {
                return Err(Error::DuplicatePattern(p.to_string()));
            }
        }
        Ok(MemorySet { patterns })
    }

    /// Convenience constructor from signed trit values.
    pub fn from_values(values: &[&[i64]]) -> Result<Self> {
        let patterns = values
            .iter()
            .map(|v| Pattern::from_values(v))
            .collect::<Result<Vec<_>>>()?;
        MemorySet::new(patterns)
    }

    pub fn patterns(&self) -> &[Pattern] {
        &self.patterns
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    /// Register size n.
    pub fn sites(&self) -> usize {
        self.patterns[0].len()
    }

    pub fn contains(&self, p: &Pattern) -> bool {
        self.patterns.contains(p)
    }
}

/// Shape of the time-dependent Hamiltonian.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ScheduleKind {
    /// (1 - s) H_0 + s H_p.
    #[default]
    Plain,
    /// Plain plus s (1 - s) help_scale H_help, which vanishes at both ends.
    SwitchedHelp,
    /// Plain with help_scale H_help folded permanently into H_p.
    PermanentHelp,
}

impl ScheduleKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ScheduleKind::Plain => "plain",
            ScheduleKind::SwitchedHelp => "switched_help",
            ScheduleKind::PermanentHelp => "permanent_help",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "plain" => Some(ScheduleKind::Plain),
            "switched_help" => Some(ScheduleKind::SwitchedHelp),
            "permanent_help" => Some(ScheduleKind::PermanentHelp),
            _ => None,
        }
    }
}

/// Which slice times enter the time-sliced propagator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Slicing {
    /// N + 1 factors at s = l/N for l = 0..=N.
    #[default]
    Inclusive,
    /// N factors at s = l/N for l = 1..=N.
    RightEndpoint,
}

/// Complete description of one annealing run.
#[derive(Clone, Debug, PartialEq)]
pub struct AnnealSpec {
    pub memory: MemorySet,
    pub probe: Option<Pattern>,
    /// Hint strength; ignored when there is no probe.
    pub gamma: f64,
    pub field_h: f64,
    pub total_time: f64,
    pub dt: f64,
    pub schedule: ScheduleKind,
    pub help_scale: f64,
    /// Coefficient on H_mem inside H_p.
    pub memory_scale: f64,
    pub slicing: Slicing,
}

impl AnnealSpec {
    /// Defaults: h = 2, T = 300, dt = 0.1, no probe, plain schedule.
    pub fn new(memory: MemorySet) -> Self {
        AnnealSpec {
            memory,
            probe: None,
            gamma: 0.0,
            field_h: 2.0,
            total_time: 300.0,
            dt: 0.1,
            schedule: ScheduleKind::Plain,
            help_scale: 1.0,
            memory_scale: 1.0,
            slicing: Slicing::Inclusive,
        }
    }

    pub fn with_probe(mut self, probe: Pattern, gamma: f64) -> Self {
        self.probe = Some(probe);
        self.gamma = gamma;
        self
    }

    pub fn with_gamma(mut self, gamma: f64) -> Self {
        self.gamma = gamma;
        self
    }

    pub fn with_field(mut self, h: f64) -> Self {
        self.field_h = h;
        self
    }

    pub fn with_total_time(mut self, t: f64) -> Self {
        self.total_time = t;
        self
    }

    pub fn with_dt(mut self, dt: f64) -> Self {
        self.dt = dt;
        self
    }

    pub fn with_schedule(mut self, schedule: ScheduleKind) -> Self {
        self.schedule = schedule;
        self
    }

    pub fn with_help_scale(mut self, s: f64) -> Self {
        self.help_scale = s;
        self
    }

    pub fn with_memory_scale(mut self, s: f64) -> Self {
        self.memory_scale = s;
        self
    }

    pub fn with_slicing(mut self, slicing: Slicing) -> Self {
        self.slicing = slicing;
        self
    }

    pub fn sites(&self) -> usize {
        self.memory.sites()
    }

    /// Gamma actually applied: zero without a probe.
    pub fn effective_gamma(&self) -> f64 {
        if self.probe.is_some() {
            self.gamma
        } else {
            0.0
        }
    }

    pub fn validate(&self) -> Result<()> {
        positive("h", self.field_h)?;
        positive("T", self.total_time)?;
        positive("dt", self.dt)?;
        if !self.gamma.is_finite() {
            return Err(Error::InvalidParameter {
                name: "gamma",
                value: self.gamma,
                reason: "must be finite",
            });
        }
        if !(self.help_scale >= 0.0 && self.help_scale.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "help_scale",
                value: self.help_scale,
                reason: "must be finite and non-negative",
            });
        }
        if !self.memory_scale.is_finite() {
            return Err(Error::InvalidParameter {
                name: "memory_scale",
                value: self.memory_scale,
                reason: "must be finite",
            });
        }
        if let Some(p) = &self.probe {
            if p.len() != self.sites() {
                return Err(Error::LengthMismatch {
                    expected: self.sites(),
                    found: p.len(),
                });
            }
        }
        if self.schedule != ScheduleKind::Plain && self.memory.len() < 2 {
            return Err(Error::TooFewPatterns {
                required: 2,
                found: self.memory.len(),
            });
        }
        if self.steps() == 0 {
            return Err(Error::InvalidParameter {
                name: "dt",
                value: self.dt,
                reason: "larger than twice the total time",
            });
        }
        Ok(())
    }

    /// N = round(T / dt); logs a warning when T is not a multiple of dt.
    pub fn steps(&self) -> usize {
        let ratio = self.total_time / self.dt;
        let n = ratio.round();
        if (n - ratio).abs() > 1e-9 {
            log::warn!("T/dt = {ratio} is not an integer; using N = {n}");
        }
        n as usize
    }
}

fn positive(name: &'static str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            value: v,
            reason: "must be positive and finite",
        })
    }
}

fn check_equal(outer: &OperatorMatrix, spin: &OperatorMatrix) -> Result<()> {
    let diff = outer.max_abs_diff(spin);
    if diff > CONSTRUCTION_TOL {
        return Err(Error::ConstructionMismatch(diff));
    }
    Ok(())
}

fn diag_with(n: usize, entries: impl IntoIterator<Item = (usize, f64)>) -> OperatorMatrix {
    let d = register_dim(n);
    let mut m = DMatrix::zeros(d, d);
    for (i, v) in entries {
        m[(i, i)] += C64::new(v, 0.0);
    }
    OperatorMatrix::new(m).expect("power-of-three dimension")
}

/// H_mem from spin-operator projectors, summed site-wise.
pub fn build_memory_spin(m: &MemorySet) -> OperatorMatrix {
    let mut acc = OperatorMatrix::zeros(m.sites());
    for p in m.patterns() {
        acc.add_scaled(-1.0, &pattern_projector(p));
    }
    acc
}

/// H_mem = -sum_mu |psi_mu><psi_mu|.
pub fn build_memory(m: &MemorySet) -> Result<OperatorMatrix> {
    let outer = diag_with(m.sites(), m.patterns().iter().map(|p| (p.index(), -1.0)));
    check_equal(&outer, &build_memory_spin(m))?;
    Ok(outer)
}

/// H_0 = -h sum_i S^x_i.
pub fn build_field(h: f64, n: usize) -> Result<OperatorMatrix> {
    positive("h", h)?;
    let (sx, _, _) = spin_operators();
    let mut acc = OperatorMatrix::zeros(n);
    for site in 1..=n {
        acc.add_scaled(-h, &embed_site(&sx, site, n)?);
    }
    Ok(acc)
}

/// |1>_x on every site: the ground state of [`build_field`].
pub fn initial_state(n: usize) -> StateVector {
    let site = [
        C64::new(0.5, 0.0),
        C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0),
        C64::new(0.5, 0.0),
    ];
    StateVector::product(&vec![site; n])
}

/// H_prob = -|p><p|; the caller applies Gamma.
pub fn build_probe(p: &Pattern) -> Result<OperatorMatrix> {
    let outer = diag_with(p.len(), [(p.index(), -1.0)]);
    let spin = -&pattern_projector(p);
    check_equal(&outer, &spin)?;
    Ok(outer)
}

/// H_help from spin-operator transitions, site by site.
pub fn build_help_spin(m: &MemorySet) -> Result<OperatorMatrix> {
    let mut acc = OperatorMatrix::zeros(m.sites());
    for a in m.patterns() {
        for b in m.patterns() {
            if a != b {
                acc.add_scaled(-1.0, &pattern_transition(a, b)?);
            }
        }
    }
    Ok(acc)
}

/// H_help = -sum_{mu != nu} |psi_mu><psi_nu|.
pub fn build_help(m: &MemorySet) -> Result<OperatorMatrix> {
    if m.len() < 2 {
        return Err(Error::TooFewPatterns {
            required: 2,
            found: m.len(),
        });
    }
    let d = register_dim(m.sites());
    let mut outer = DMatrix::zeros(d, d);
    for a in m.patterns() {
        for b in m.patterns() {
            if a != b {
                outer[(a.index(), b.index())] = C64::new(-1.0, 0.0);
            }
        }
    }
    let outer = OperatorMatrix::new(outer)?;
    check_equal(&outer, &build_help_spin(m)?)?;
    Ok(outer)
}

/// -|Psi><Psi| for the equal-amplitude superposition of the stored patterns.
pub fn build_equal_memory(m: &MemorySet) -> OperatorMatrix {
    let d = register_dim(m.sites());
    let w = -1.0 / m.len() as f64;
    let mut out = DMatrix::zeros(d, d);
    for a in m.patterns() {
        for b in m.patterns() {
            out[(a.index(), b.index())] = C64::new(w, 0.0);
        }
    }
    OperatorMatrix::new(out).expect("power-of-three dimension")
}

/// The fixed operators of one schedule, built once per run.
#[derive(Clone, Debug)]
pub struct ScheduleTerms {
    pub field: OperatorMatrix,
    /// H_p, including the probe term and any permanent auxiliary term.
    pub target: OperatorMatrix,
    /// Auxiliary term switched on as s (1 - s); `None` for other schedules.
    pub switched: Option<OperatorMatrix>,
}

impl ScheduleTerms {
    pub fn new(spec: &AnnealSpec) -> Result<Self> {
        spec.validate()?;
        let n = spec.sites();
        let field = build_field(spec.field_h, n)?;
        let mut target = build_memory(&spec.memory)?.scale(spec.memory_scale);
        if let Some(p) = &spec.probe {
            target.add_scaled(spec.gamma, &build_probe(p)?);
        }
        let switched = match spec.schedule {
            ScheduleKind::Plain => None,
            ScheduleKind::SwitchedHelp => Some(build_help(&spec.memory)?.scale(spec.help_scale)),
            ScheduleKind::PermanentHelp => {
                target.add_scaled(spec.help_scale, &build_help(&spec.memory)?);
                None
            }
        };
        Ok(ScheduleTerms {
            field,
            target,
            switched,
        })
    }

    /// H at schedule fraction s = t/T.
    pub fn at_fraction(&self, s: f64) -> OperatorMatrix {
        let mut h = self.field.scale(1.0 - s);
        h.add_scaled(s, &self.target);
        if let Some(help) = &self.switched {
            h.add_scaled(s * (1.0 - s), help);
        }
        h
    }
}

/// H(t) for the schedule in `spec`.
pub fn hamiltonian_at(spec: &AnnealSpec, t: f64) -> Result<OperatorMatrix> {
    if !(0.0..=spec.total_time).contains(&t) {
        return Err(Error::TimeOutOfRange {
            t,
            total: spec.total_time,
        });
    }
    let terms = ScheduleTerms::new(spec)?;
    Ok(terms.at_fraction(t / spec.total_time))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Trit;

    fn fig1() -> MemorySet {
        MemorySet::from_values(&[&[0, 1], &[1, 0], &[-1, -1]]).unwrap()
    }

    fn pat(v: &[i64]) -> Pattern {
        Pattern::from_values(v).unwrap()
    }

    fn assert_close(a: &[f64], b: &[f64], tol: f64) {
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(b) {
            assert!((x - y).abs() < tol, "{a:?} vs {b:?}");
        }
    }

    #[test]
    fn memory_set_validation() {
        assert!(matches!(MemorySet::new(vec![]), Err(Error::TooFewPatterns { .. })));
        assert!(matches!(
            MemorySet::from_values(&[&[0, 1], &[0, 1]]),
            Err(Error::DuplicatePattern(_))
        ));
        assert!(matches!(
            MemorySet::from_values(&[&[0, 1], &[0]]),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn memory_hamiltonian_two_qutrits() {
        let h = build_memory(&fig1()).unwrap();
        for i in 0..9 {
            for j in 0..9 {
                let expected = if i == j && [1, 3, 8].contains(&i) { -1.0 } else { 0.0 };
                assert_eq!(h.get(i, j), C64::new(expected, 0.0));
            }
        }
        assert_eq!(h.trace().re, -3.0);
        let single = MemorySet::from_values(&[&[1, -1, 0]]).unwrap();
        let ev = build_memory(&single).unwrap().eigenvalues().unwrap();
        assert_eq!(ev[0], -1.0);
        assert!(ev[1..].iter().all(|&e| e == 0.0));
    }

    #[test]
    fn field_spectrum() {
        let h0 = build_field(2.0, 2).unwrap();
        assert!(h0.is_hermitian());
        assert!(h0.trace().norm() < 1e-14);
        assert_close(
            &h0.eigenvalues().unwrap(),
            &[-4.0, -2.0, -2.0, 0.0, 0.0, 0.0, 2.0, 2.0, 4.0],
            1e-12,
        );
        let (sx, _, _) = spin_operators();
        let one = build_field(1.5, 1).unwrap();
        let expected = OperatorMatrix::kron_sites(&[sx * C64::new(-1.5, 0.0)]);
        assert!(one.max_abs_diff(&expected) < 1e-15);
        assert!(build_field(0.0, 2).is_err());
    }

    #[test]
    fn initial_state_is_field_ground_state() {
        let s1 = initial_state(1);
        assert_close(
            &s1.amplitudes().iter().map(|z| z.re).collect::<Vec<_>>(),
            &[0.5, std::f64::consts::FRAC_1_SQRT_2, 0.5],
            1e-15,
        );
        assert!((initial_state(2).amplitude(0).re - 0.25).abs() < 1e-15);
        for n in 1..=3 {
            let h = 1.7;
            let psi = initial_state(n);
            assert!((psi.norm() - 1.0).abs() < 1e-14);
            let h0 = build_field(h, n).unwrap();
            let out = h0.apply(&psi);
            let target = psi.amplitudes() * C64::new(-(n as f64) * h, 0.0);
            assert!((out.amplitudes() - target).norm() < 1e-12);
            assert!((h0.eigenvalues().unwrap()[0] + n as f64 * h).abs() < 1e-12);
        }
        // single-site ground eigenvector from diagonalisation, up to sign
        let (vals, vecs) = build_field(1.0, 1).unwrap().eigh().unwrap();
        assert!((vals[0] + 1.0).abs() < 1e-14);
        let g = vecs.column(0);
        let overlap = g.dotc(s1.amplitudes()).norm();
        assert!((overlap - 1.0).abs() < 1e-12);
    }

    #[test]
    fn probe_hamiltonian() {
        let p = build_probe(&pat(&[0, 1])).unwrap();
        assert_eq!(p.get(3, 3).re, -1.0);
        assert_eq!(p.trace().re, -1.0);
        let p3 = build_probe(&pat(&[1, 1, 1])).unwrap();
        assert_eq!(p3.dim(), 27);
        assert_eq!(p3.get(0, 0).re, -1.0);
        assert_eq!(p3.trace().re, -1.0);
    }

    #[test]
    fn help_hamiltonian() {
        let help = build_help(&fig1()).unwrap();
        assert!(help.is_hermitian());
        let idx = [1usize, 3, 8];
        for i in 0..9 {
            for j in 0..9 {
                let expected = if i != j && idx.contains(&i) && idx.contains(&j) {
                    -1.0
                } else {
                    0.0
                };
                assert_eq!(help.get(i, j).re, expected, "({i},{j})");
            }
        }
        let pair = MemorySet::from_values(&[&[1, 1], &[0, 0]]).unwrap();
        let h2 = build_help(&pair).unwrap();
        assert_eq!(h2.get(0, 4).re, -1.0);
        assert_eq!(h2.get(4, 0).re, -1.0);
        assert_eq!(h2.matrix().iter().filter(|z| z.norm() > 0.0).count(), 2);
        let one = MemorySet::from_values(&[&[1, 1]]).unwrap();
        assert!(matches!(build_help(&one), Err(Error::TooFewPatterns { .. })));
    }

    #[test]
    fn equal_memory_splits_into_memory_plus_help() {
        let m = fig1();
        let eq = build_equal_memory(&m);
        let idx = [1usize, 3, 8];
        for &i in &idx {
            for &j in &idx {
                assert!((eq.get(i, j).re + 1.0 / 3.0).abs() < 1e-15);
            }
        }
        let sum = (&build_memory(&m).unwrap() + &build_help(&m).unwrap()).scale(1.0 / 3.0);
        assert!(sum.max_abs_diff(&eq) < 1e-15);
        let ev = eq.eigenvalues().unwrap();
        assert!((ev[0] + 1.0).abs() < 1e-12);
        assert!(ev[1..].iter().all(|e| e.abs() < 1e-12));
        let single = MemorySet::from_values(&[&[0, -1]]).unwrap();
        assert_eq!(build_equal_memory(&single), build_memory(&single).unwrap());
    }

    #[test]
    fn schedule_endpoints_and_midpoint() {
        let spec = AnnealSpec::new(fig1()).with_probe(pat(&[-1, -1]), 0.3);
        let h0 = build_field(2.0, 2).unwrap();
        let mut hp = build_memory(&spec.memory).unwrap();
        hp.add_scaled(0.3, &build_probe(&pat(&[-1, -1])).unwrap());
        let help = build_help(&spec.memory).unwrap();
        for kind in [ScheduleKind::Plain, ScheduleKind::SwitchedHelp] {
            let s = spec.clone().with_schedule(kind);
            assert_eq!(hamiltonian_at(&s, 0.0).unwrap().max_abs_diff(&h0), 0.0);
            assert!(hamiltonian_at(&s, 300.0).unwrap().max_abs_diff(&hp) < 1e-15);
        }
        let s = spec.clone().with_schedule(ScheduleKind::SwitchedHelp);
        let mid = hamiltonian_at(&s, 150.0).unwrap();
        let mut expected = h0.scale(0.5);
        expected.add_scaled(0.25, &help);
        expected.add_scaled(0.5, &hp);
        assert!(mid.max_abs_diff(&expected) < 1e-15);
        assert!(mid.is_hermitian());
        assert!(matches!(hamiltonian_at(&s, 301.0), Err(Error::TimeOutOfRange { .. })));
        assert!(matches!(hamiltonian_at(&s, -1.0), Err(Error::TimeOutOfRange { .. })));
    }

    #[test]
    fn schedule_entries_are_polynomial_in_time() {
        let spec = AnnealSpec::new(fig1()).with_probe(pat(&[0, 1]), 0.1);
        // (row, col) pairs touching field, memory and help terms
        let entries = [(0, 1), (3, 3), (1, 3), (8, 8)];
        for kind in [ScheduleKind::Plain, ScheduleKind::SwitchedHelp] {
            let s = spec.clone().with_schedule(kind);
            let ts = [0.0, 60.0, 120.0, 210.0, 300.0];
            for &(r, c) in &entries {
                let ys: Vec<f64> = ts
                    .iter()
                    .map(|&t| hamiltonian_at(&s, t).unwrap().get(r, c).re)
                    .collect();
                // fit through the first three samples, check the rest
                let lagrange = |x: f64| {
                    let (x0, x1, x2) = (ts[0], ts[1], ts[2]);
                    ys[0] * (x - x1) * (x - x2) / ((x0 - x1) * (x0 - x2))
                        + ys[1] * (x - x0) * (x - x2) / ((x1 - x0) * (x1 - x2))
                        + ys[2] * (x - x0) * (x - x1) / ((x2 - x0) * (x2 - x1))
                };
                for k in 3..5 {
                    assert!((lagrange(ts[k]) - ys[k]).abs() < 1e-12);
                }
                if kind == ScheduleKind::Plain {
                    let slope = (ys[1] - ys[0]) / (ts[1] - ts[0]);
                    assert!((ys[0] + slope * (ts[2] - ts[0]) - ys[2]).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn constructions_agree_for_paper_memories() {
        let three =
            MemorySet::from_values(&[&[-1, -1, 1], &[0, 0, -1], &[1, -1, 0], &[1, 1, 1], &[-1, 1, -1]]).unwrap();
        for m in [fig1(), three] {
            let help_outer = build_help(&m).unwrap();
            let help_spin = build_help_spin(&m).unwrap();
            assert!(help_outer.max_abs_diff(&help_spin) < CONSTRUCTION_TOL);
            assert!(build_memory(&m).unwrap().max_abs_diff(&build_memory_spin(&m)) < CONSTRUCTION_TOL);
        }
    }

    #[test]
    fn builders_are_hermitian_and_ground_manifold_has_multiplicity_p() {
        for n in 1..=3 {
            let all: Vec<Pattern> = Pattern::all(n).collect();
            for p in 1..=all.len().min(5) {
                let m = MemorySet::new(all.iter().rev().take(p).cloned().collect()).unwrap();
                let mem = build_memory(&m).unwrap();
                assert!(mem.is_hermitian());
                let ev = mem.eigenvalues().unwrap();
                assert_eq!(ev.iter().filter(|&&e| e == -1.0).count(), p);
                for q in m.patterns() {
                    let proj = pattern_projector(q);
                    assert!(mem.matmul(&proj).max_abs_diff(&proj.matmul(&mem)) < 1e-15);
                }
                if p >= 2 {
                    assert!(build_help(&m).unwrap().is_hermitian());
                }
                assert!(build_equal_memory(&m).is_hermitian());
            }
            assert!(build_field(0.7, n).unwrap().is_hermitian());
        }
    }

    #[test]
    fn steps_round_and_probe_absence_zeroes_gamma() {
        let spec = AnnealSpec::new(fig1());
        assert_eq!(spec.steps(), 3000);
        assert_eq!(spec.clone().with_total_time(300.04).steps(), 3000);
        let unprobed = AnnealSpec {
            gamma: 0.4,
            ..spec.clone()
        };
        assert_eq!(unprobed.effective_gamma(), 0.0);
        assert!(spec.clone().with_dt(-0.1).validate().is_err());
        let bad_probe = spec.clone().with_probe(Pattern::new(vec![Trit::Up]).unwrap(), 0.1);
        assert!(matches!(bad_probe.validate(), Err(Error::LengthMismatch { .. })));
    }
}
