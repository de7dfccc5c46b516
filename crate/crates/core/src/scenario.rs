//! Scenario files: one flat TOML document per experiment.
//!
//! ```toml
//! name = "recall"
//! n = 2
//! patterns = [[0, 1], [1, 0], [-1, -1]]
//! probe = [-1, -1]
//! schedule = "plain"
//! h = 2.0
//! T = 300.0
//!
//! [sweep]
//! control = "gamma"
//! values = [0.0, 0.01, 0.02]
//! ```
//!
//! Omitted `values` under `[sweep]` selects [`default_gamma_grid`].

use std::ops::Range;

use serde::{Deserialize, Serialize};
use toml::Spanned;

use crate::algebra::{Pattern, Trit};
use crate::analysis::{default_gamma_grid, SweepControl};
use crate::error::{Error, Result};
use crate::hamiltonian::{AnnealSpec, MemorySet, ScheduleKind, Slicing};

#[derive(Clone, Debug, PartialEq)]
pub struct SweepSpec {
    pub control: SweepControl,
    pub values: Option<Vec<f64>>,
}

impl SweepSpec {
    pub fn grid(&self) -> Vec<f64> {
        self.values.clone().unwrap_or_else(default_gamma_grid)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Scenario {
    pub name: String,
    pub n: usize,
    pub patterns: Vec<Pattern>,
    pub probe: Option<Pattern>,
    pub schedule: ScheduleKind,
    pub help_scale: f64,
    pub memory_scale: f64,
    pub h: f64,
    pub total_time: f64,
    pub dt: f64,
    pub gamma: f64,
    pub sweep: Option<SweepSpec>,
    pub spectrum_samples: Option<usize>,
}

fn one() -> f64 {
    1.0
}
fn default_h() -> f64 {
    2.0
}
fn default_t() -> f64 {
    300.0
}
fn default_dt() -> f64 {
    0.1
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSweep {
    control: Spanned<String>,
    values: Option<Spanned<Vec<f64>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    name: String,
    n: Spanned<i64>,
    patterns: Spanned<Vec<Spanned<Vec<i64>>>>,
    probe: Option<Spanned<Vec<i64>>>,
    schedule: Option<Spanned<String>>,
    #[serde(default = "one")]
    help_scale: f64,
    #[serde(default = "one")]
    memory_scale: f64,
    #[serde(default = "default_h")]
    h: f64,
    #[serde(default = "default_t", rename = "T")]
    total_time: f64,
    #[serde(default = "default_dt")]
    dt: f64,
    gamma: Option<Spanned<f64>>,
    sweep: Option<RawSweep>,
    spectrum_samples: Option<Spanned<i64>>,
}

#[derive(Serialize)]
struct DocSweep<'a> {
    control: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    values: Option<&'a [f64]>,
}

#[derive(Serialize)]
struct Doc<'a> {
    name: &'a str,
    n: usize,
    patterns: Vec<Vec<i8>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    probe: Option<Vec<i8>>,
    schedule: &'a str,
    help_scale: f64,
    memory_scale: f64,
    h: f64,
    #[serde(rename = "T")]
    total_time: f64,
    dt: f64,
    gamma: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    spectrum_samples: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    sweep: Option<DocSweep<'a>>,
}

struct Lines<'a>(&'a str);

impl Lines<'_> {
    fn line(&self, span: Range<usize>) -> usize {
        let end = span.start.min(self.0.len());
        self.0[..end].bytes().filter(|&b| b == b'\n').count() + 1
    }

    fn err(&self, span: Range<usize>, message: impl Into<String>) -> Error {
        Error::Scenario {
            line: self.line(span),
            message: message.into(),
        }
    }

    fn pattern(&self, field: &str, raw: &Spanned<Vec<i64>>, n: usize) -> Result<Pattern> {
        let values = raw.get_ref();
        if values.len() != n {
            return Err(self.err(
                raw.span(),
                format!("{field}: expected {n} trits, found {}", values.len()),
            ));
        }
        let trits = values
            .iter()
            .enumerate()
            .map(|(k, &v)| {
                Trit::try_from(v)
                    .map_err(|_| self.err(raw.span(), format!("{field}[{k}]: trit {v} not in {{-1, 0, 1}}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Pattern::new(trits).map_err(|e| self.err(raw.span(), format!("{field}: {e}")))
    }
}

impl Scenario {
    pub fn parse(text: &str) -> Result<Scenario> {
        let lines = Lines(text);
        let raw: RawScenario = toml::from_str(text).map_err(|e| Error::Scenario {
            line: e.span().map(|s| lines.line(s)).unwrap_or(0),
            message: e.message().to_string(),
        })?;

        let n = *raw.n.get_ref();
        if n < 1 {
            return Err(lines.err(raw.n.span(), format!("n: must be at least 1, found {n}")));
        }
        let n = n as usize;

        let mut patterns = Vec::new();
        for (k, p) in raw.patterns.get_ref().iter().enumerate() {
            let pattern = lines.pattern(&format!("patterns[{k}]"), p, n)?;
            if patterns.contains(&pattern) {
                return Err(lines.err(p.span(), format!("patterns[{k}]: duplicate pattern {pattern}")));
            }
            patterns.push(pattern);
        }
        if patterns.is_empty() {
            return Err(lines.err(raw.patterns.span(), "patterns: at least one pattern is required"));
        }

        let probe = raw.probe.as_ref().map(|p| lines.pattern("probe", p, n)).transpose()?;

        let schedule = match &raw.schedule {
            None => ScheduleKind::default(),
            Some(s) => ScheduleKind::parse(s.get_ref())
                .ok_or_else(|| lines.err(s.span(), format!("schedule: unknown schedule {:?}", s.get_ref())))?,
        };

        let gamma = match (&probe, &raw.gamma) {
            (Some(_), Some(g)) => *g.get_ref(),
            (None, Some(g)) if *g.get_ref() != 0.0 => {
                log::warn!("line {}: gamma ignored without a probe", lines.line(g.span()));
                0.0
            }
            _ => 0.0,
        };

        let sweep = raw
            .sweep
            .map(|s| -> Result<SweepSpec> {
                let control = SweepControl::parse(s.control.get_ref()).ok_or_else(|| {
                    lines.err(
                        s.control.span(),
                        format!("sweep.control: expected gamma, h or T, found {:?}", s.control.get_ref()),
                    )
                })?;
                if control != SweepControl::Gamma && s.values.is_none() {
                    return Err(lines.err(s.control.span(), "sweep.values: required unless sweeping gamma"));
                }
                Ok(SweepSpec {
                    control,
                    values: s.values.map(Spanned::into_inner),
                })
            })
            .transpose()?;

        let spectrum_samples = raw
            .spectrum_samples
            .map(|s| {
                let v = *s.get_ref();
                if v < 2 {
                    Err(lines.err(s.span(), format!("spectrum_samples: must be at least 2, found {v}")))
                } else {
                    Ok(v as usize)
                }
            })
            .transpose()?;

        let scenario = Scenario {
            name: raw.name,
            n,
            patterns,
            probe,
            schedule,
            help_scale: raw.help_scale,
            memory_scale: raw.memory_scale,
            h: raw.h,
            total_time: raw.total_time,
            dt: raw.dt,
            gamma,
            sweep,
            spectrum_samples,
        };
        scenario.to_anneal_spec()?.validate()?;
        Ok(scenario)
    }

    pub fn to_text(&self) -> String {
        let doc = Doc {
            name: &self.name,
            n: self.n,
            patterns: self.patterns.iter().map(|p| p.values()).collect(),
            probe: self.probe.as_ref().map(|p| p.values()),
            schedule: self.schedule.as_str(),
            help_scale: self.help_scale,
            memory_scale: self.memory_scale,
            h: self.h,
            total_time: self.total_time,
            dt: self.dt,
            gamma: self.gamma,
            spectrum_samples: self.spectrum_samples,
            sweep: self.sweep.as_ref().map(|s| DocSweep {
                control: s.control.as_str(),
                values: s.values.as_deref(),
            }),
        };
        toml::to_string(&doc).expect("scenario serializes")
    }

    pub fn memory(&self) -> Result<MemorySet> {
        MemorySet::new(self.patterns.clone())
    }

    pub fn to_anneal_spec(&self) -> Result<AnnealSpec> {
        let mut spec = AnnealSpec::new(self.memory()?)
            .with_field(self.h)
            .with_total_time(self.total_time)
            .with_dt(self.dt)
            .with_schedule(self.schedule)
            .with_help_scale(self.help_scale)
            .with_memory_scale(self.memory_scale)
            .with_slicing(Slicing::default());
        if let Some(p) = &self.probe {
            spec = spec.with_probe(p.clone(), self.gamma);
        }
        Ok(spec)
    }
}

impl std::str::FromStr for Scenario {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Scenario::parse(s)
    }
}
