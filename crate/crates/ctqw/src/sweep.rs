//! Fidelity sweeps over lattice times 2*pi*k and dense time grids, with
//! best-so-far envelopes standing in for the limit sequences of the theory.
//!
//! Sweeps are data-parallel over disjoint index ranges; the merge is
//! associative with a smallest-index tie-break, so the envelope is identical
//! to a serial pass no matter how the range is split.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dynamics::{Time, Walk};
use crate::error::{Error, Result};

/// Full per-sample records are kept only up to this count; the envelope is
/// always complete.
pub const SAMPLE_CAP: usize = 10_000;

/// Lattice sweeps below this length skip the thread pool.
const PARALLEL_THRESHOLD: u64 = 1 << 14;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum GridKind {
    /// t = 2*pi*k, k = 1..=k_max.
    Lattice,
    /// t = index * step on [0, t_max].
    Dense,
}

/// One sweep record: the grid index, the time, and the observed amplitude.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub index: u64,
    pub t: f64,
    pub fidelity: f64,
    pub phase: f64,
}

/// Ordered sweep output plus its strictly-increasing fidelity envelope.
#[derive(Debug, Clone, Serialize)]
pub struct SweepTrace {
    pub pair: (u64, u64),
    pub grid: GridKind,
    pub samples: Vec<Sample>,
    pub envelope: Vec<Sample>,
    pub total_samples: u64,
    pub samples_truncated: bool,
}

impl SweepTrace {
    fn empty(pair: (u64, u64), grid: GridKind) -> Self {
        SweepTrace {
            pair,
            grid,
            samples: Vec::new(),
            envelope: Vec::new(),
            total_samples: 0,
            samples_truncated: false,
        }
    }

    fn push(&mut self, sample: Sample) {
        if self.samples.len() < SAMPLE_CAP {
            self.samples.push(sample);
        } else {
            self.samples_truncated = true;
        }
        self.total_samples += 1;
        let improves = match self.envelope.last() {
            None => true,
            Some(best) => sample.fidelity > best.fidelity,
        };
        if improves {
            self.envelope.push(sample);
        }
    }

    /// Best sample seen; `None` only for zero-length sweeps, which the
    /// constructors reject.
    pub fn best(&self) -> Option<Sample> {
        self.envelope.last().copied()
    }

    /// Write `k,t,fidelity,phase` CSV, the envelope under a trailing
    /// `# envelope` section (or alone with `envelope_only`).
    pub fn write_csv<W: std::io::Write>(
        &self,
        mut w: W,
        envelope_only: bool,
    ) -> std::io::Result<()> {
        writeln!(w, "k,t,fidelity,phase")?;
        if !envelope_only {
            for s in &self.samples {
                writeln!(w, "{},{},{},{}", s.index, s.t, s.fidelity, s.phase)?;
            }
            writeln!(w, "# envelope")?;
        }
        for s in &self.envelope {
            writeln!(w, "{},{},{},{}", s.index, s.t, s.fidelity, s.phase)?;
        }
        Ok(())
    }
}

/// Merge two traces over consecutive index ranges (all of `a` before `b`).
pub fn merge(mut a: SweepTrace, b: SweepTrace) -> SweepTrace {
    debug_assert_eq!(a.pair, b.pair);
    for s in &b.samples {
        if a.samples.len() < SAMPLE_CAP {
            a.samples.push(*s);
        } else {
            a.samples_truncated = true;
        }
    }
    a.samples_truncated |= b.samples_truncated;
    a.total_samples += b.total_samples;
    let mut floor = a.envelope.last().map(|s| s.fidelity);
    for s in &b.envelope {
        if floor.is_none_or(|f| s.fidelity > f) {
            a.envelope.push(*s);
            floor = Some(s.fidelity);
        }
    }
    a
}

/// Serial lattice sweep over an inclusive k range.
pub fn sweep_lattice_range(
    walk: &Walk,
    u: u64,
    v: u64,
    k_from: u64,
    k_to: u64,
) -> Result<SweepTrace> {
    let mut trace = SweepTrace::empty((u, v), GridKind::Lattice);
    for k in k_from..=k_to {
        let amp = walk.amplitude(u, v, Time::Lattice(k))?;
        trace.push(Sample {
            index: k,
            t: Time::Lattice(k).as_f64(),
            fidelity: amp.fidelity(),
            phase: amp.phase(),
        });
    }
    Ok(trace)
}

/// Fidelity sweep at t = 2*pi*k for k = 1..=k_max between vertices u and v.
///
/// Long sweeps are split into chunks evaluated in parallel and merged in
/// index order.
pub fn sweep_lattice(walk: &Walk, u: u64, v: u64, k_max: u64) -> Result<SweepTrace> {
    if k_max < 1 {
        return Err(Error::BadGrid("lattice sweep needs k_max >= 1".into()));
    }
    // Validate up front so worker chunks cannot fail.
    walk.amplitude(u, v, Time::Lattice(1))?;

    if k_max < PARALLEL_THRESHOLD {
        return sweep_lattice_range(walk, u, v, 1, k_max);
    }
    let chunks = (rayon::current_num_threads() as u64 * 4).clamp(1, k_max);
    let chunk_len = k_max.div_ceil(chunks);
    let ranges: Vec<(u64, u64)> = (0..chunks)
        .map(|i| (1 + i * chunk_len, ((i + 1) * chunk_len).min(k_max)))
        .filter(|(from, to)| from <= to)
        .collect();
    let partials: Vec<SweepTrace> = ranges
        .into_par_iter()
        .map(|(from, to)| sweep_lattice_range(walk, u, v, from, to).expect("validated vertices"))
        .collect();
    Ok(partials
        .into_iter()
        .reduce(merge)
        .expect("at least one chunk"))
}

/// Return sweep at vertex 0: fidelity of H(2*pi*k)_{0,0}.
///
/// By vertex transitivity this certifies the whole-matrix return behaviour,
/// so its envelope approaching 1 witnesses almost-periodicity.
pub fn almost_periodicity_sweep(walk: &Walk, k_max: u64) -> Result<SweepTrace> {
    sweep_lattice(walk, 0, 0, k_max)
}

/// Uniform dense-grid sweep on [0, t_max] with the given step.
pub fn sweep_dense(walk: &Walk, u: u64, v: u64, t_max: f64, step: f64) -> Result<SweepTrace> {
    if !step.is_finite() || step <= 0.0 || !t_max.is_finite() || t_max < 0.0 {
        return Err(Error::BadGrid(format!(
            "need step > 0 and t_max >= 0, got step={step} t_max={t_max}"
        )));
    }
    let mut trace = SweepTrace::empty((u, v), GridKind::Dense);
    let count = (t_max / step).floor() as u64;
    for i in 0..=count {
        let t = i as f64 * step;
        let amp = walk.amplitude(u, v, t)?;
        trace.push(Sample {
            index: i,
            t,
            fidelity: amp.fidelity(),
            phase: amp.phase(),
        });
    }
    Ok(trace)
}

/// Threshold summary of a sweep.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ConvergenceReport {
    pub threshold: f64,
    /// First sample reaching the threshold, if any.
    pub first_reaching: Option<Sample>,
    /// Final best-so-far sample.
    pub best: Sample,
}

/// First grid point reaching `threshold` plus the final best.
///
/// The first record at or above the threshold is necessarily an envelope
/// entry, so the report is exact even when per-sample records were thinned.
pub fn convergence_report(trace: &SweepTrace, threshold: f64) -> Option<ConvergenceReport> {
    let best = trace.best()?;
    let first_reaching = trace
        .envelope
        .iter()
        .find(|s| s.fidelity >= threshold)
        .copied();
    Some(ConvergenceReport {
        threshold,
        first_reaching,
        best,
    })
}
