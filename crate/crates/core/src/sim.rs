//! Deterministic fork/join timeline simulation.
//!
//! A run is a sequential prologue of `seq_time`, `k` parallel chunks of
//! `par_time / k` (optionally skewed per worker), and a join on the slowest
//! worker. Addressing the workers is serialized: all `k` addressing actions
//! complete before any chunk starts, which is the pessimistic variant of
//! one-at-a-time addressing. The timeline is therefore
//!
//! ```text
//! t_parallel = seq_time + k * addressing_latency + max_i(par_time/k * skew_i)
//! ```
//!
//! Time is a continuous real, not ticked cycles; with zero latency and
//! uniform skew the simulated speedup reproduces the closed-form algebra
//! exactly, which makes the simulator an independent brute-force check on it.

use std::path::Path;

use serde::Serialize;

use crate::amdahl::{self, AlphaFraction};
use crate::config::KvFile;
use crate::error::{Error, Result};

/// Relative slack when converting a simulated speedup back into an effective
/// parallelization (absorbs last-place rounding at the `S = k` boundary).
const BOUNDARY_SLACK: f64 = 1e-9;

/// One fork/join workload on `k` workers.
#[derive(Debug, Clone, Serialize)]
pub struct SimScenario {
    /// Worker count.
    pub k: u64,
    /// Non-parallelizable work, in time units.
    pub seq_time: f64,
    /// Parallelizable work, divided evenly across workers.
    pub par_time: f64,
    /// Time consumed sequentially to address each worker before any chunk
    /// starts.
    pub addressing_latency: f64,
    /// Per-worker multiplicative chunk factors; empty means uniform.
    pub chunk_skew: Vec<f64>,
}

impl SimScenario {
    pub fn new(k: u64, seq_time: f64, par_time: f64) -> Result<Self> {
        let scn = Self {
            k,
            seq_time,
            par_time,
            addressing_latency: 0.0,
            chunk_skew: Vec::new(),
        };
        scn.validate()?;
        Ok(scn)
    }

    /// The workload split that yields parallelizable fraction `alpha` of a
    /// total single-processor time `t1`.
    pub fn from_alpha(alpha: AlphaFraction, k: u64, t1: f64) -> Result<Self> {
        if !(t1.is_finite() && t1 > 0.0) {
            return Err(Error::OutOfRange {
                name: "t1",
                value: t1,
                constraint: "must be a positive time",
            });
        }
        Self::new(k, alpha.one_minus() * t1, alpha.alpha() * t1)
    }

    pub fn with_latency(mut self, addressing_latency: f64) -> Result<Self> {
        self.addressing_latency = addressing_latency;
        self.validate()?;
        Ok(self)
    }

    pub fn with_skew(mut self, chunk_skew: Vec<f64>) -> Result<Self> {
        self.chunk_skew = chunk_skew;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if self.k < 1 {
            return Err(Error::ProcessorCount {
                what: "simulation",
                k: self.k,
                min: 1,
            });
        }
        for (name, value) in [
            ("seq_time", self.seq_time),
            ("par_time", self.par_time),
            ("addressing_latency", self.addressing_latency),
        ] {
            if !value.is_finite() || value < 0.0 {
                return Err(Error::OutOfRange {
                    name,
                    value,
                    constraint: "must be a nonnegative time",
                });
            }
        }
        if self.seq_time + self.par_time <= 0.0 {
            return Err(Error::OutOfRange {
                name: "seq_time + par_time",
                value: 0.0,
                constraint: "total work must be positive",
            });
        }
        if !self.chunk_skew.is_empty() {
            if self.chunk_skew.len() != self.k as usize {
                return Err(Error::Inconsistent(format!(
                    "chunk_skew has {} factors for k = {} workers",
                    self.chunk_skew.len(),
                    self.k
                )));
            }
            for &s in &self.chunk_skew {
                if !s.is_finite() || s <= 0.0 {
                    return Err(Error::OutOfRange {
                        name: "chunk_skew",
                        value: s,
                        constraint: "factors must be positive",
                    });
                }
            }
        }
        Ok(())
    }

    /// Scenario files share the machine-config key/value format. Keys:
    /// `k`, `seq_time`, `par_time`, `addressing_latency`, `chunk_skew`.
    pub fn from_kv(text: &str) -> Result<Self> {
        let mut kv = KvFile::parse(text)?;
        let k = kv.take_u64("k")?.ok_or_else(|| Error::Config {
            line: 0,
            message: "missing required key `k`".to_string(),
        })?;
        let seq_time = kv.take_f64("seq_time")?.ok_or_else(|| Error::Config {
            line: 0,
            message: "missing required key `seq_time`".to_string(),
        })?;
        let par_time = kv.take_f64("par_time")?.ok_or_else(|| Error::Config {
            line: 0,
            message: "missing required key `par_time`".to_string(),
        })?;
        let mut scn = Self {
            k,
            seq_time,
            par_time,
            addressing_latency: kv.take_f64("addressing_latency")?.unwrap_or(0.0),
            chunk_skew: kv.take_f64_list("chunk_skew")?.unwrap_or_default(),
        };
        kv.finish()?;
        scn.validate()?;
        if scn.chunk_skew.iter().all(|&s| s == 1.0) {
            scn.chunk_skew.clear();
        }
        Ok(scn)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        Self::from_kv(&std::fs::read_to_string(path)?)
    }

    /// Single-processor reference time `T1 = seq_time + par_time`.
    pub fn total_single_processor_time(&self) -> f64 {
        self.seq_time + self.par_time
    }

    fn chunk_time(&self, worker: usize) -> f64 {
        let base = self.par_time / self.k as f64;
        match self.chunk_skew.get(worker) {
            Some(&s) => base * s,
            None => base,
        }
    }
}

/// Outcome of one simulated run.
#[derive(Debug, Clone, Serialize)]
pub struct SimResult {
    pub t_parallel: f64,
    /// `T1 / t_parallel`; may drop below 1 when overhead dominates.
    pub speedup: f64,
    /// Effective parallelization recovered from the speedup; `None` when
    /// `k < 2` or the speedup left the `[1, k]` range.
    pub alpha_eff: Option<AlphaFraction>,
    pub per_worker_finish: Vec<f64>,
}

/// Runs the fork/join timeline.
pub fn simulate(scn: &SimScenario) -> Result<SimResult> {
    scn.validate()?;
    let k = scn.k as f64;
    let chunks_start = scn.seq_time + k * scn.addressing_latency;
    let per_worker_finish: Vec<f64> = (0..scn.k as usize)
        .map(|i| chunks_start + scn.chunk_time(i))
        .collect();
    let t_parallel = per_worker_finish
        .iter()
        .copied()
        .fold(f64::NEG_INFINITY, f64::max);
    let t1 = scn.total_single_processor_time();
    let speedup = t1 / t_parallel;
    let alpha_eff = recover_alpha(speedup, scn.k);
    Ok(SimResult {
        t_parallel,
        speedup,
        alpha_eff,
        per_worker_finish,
    })
}

fn recover_alpha(speedup: f64, k: u64) -> Option<AlphaFraction> {
    if k < 2 {
        return None;
    }
    let kf = k as f64;
    if speedup < 1.0 - BOUNDARY_SLACK || speedup > kf * (1.0 + BOUNDARY_SLACK) {
        return None;
    }
    let one_minus = ((kf - speedup) / (speedup * (kf - 1.0))).clamp(0.0, 1.0);
    AlphaFraction::from_one_minus(one_minus).ok()
}

/// One worker-count comparison between the simulator and the closed form.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ValidationEntry {
    pub k: u64,
    pub s_simulated: f64,
    pub s_closed_form: f64,
    pub rel_deviation: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub entries: Vec<ValidationEntry>,
    pub max_deviation: f64,
    /// Worker count at which the maximum deviation occurred.
    pub worst_k: u64,
    pub tolerance: f64,
    pub passed: bool,
}

/// Simulates the zero-latency, zero-skew scenario for every `k` and checks
/// the simulated speedup against `S = k / (1 + (k-1)*(1-alpha))`.
pub fn validate_against_closed_form(
    alpha: AlphaFraction,
    k_values: &[u64],
    tolerance: f64,
) -> Result<ValidationReport> {
    if k_values.is_empty() {
        return Err(Error::Degenerate(
            "validation requires at least one worker count".to_string(),
        ));
    }
    let mut entries = Vec::with_capacity(k_values.len());
    let mut max_deviation = 0.0f64;
    let mut worst_k = k_values[0];
    for &k in k_values {
        let scn = SimScenario::from_alpha(alpha, k, 1.0)?;
        let s_simulated = simulate(&scn)?.speedup;
        let s_closed_form = amdahl::speedup_from_alpha(alpha, k)?.value();
        let rel_deviation = ((s_simulated - s_closed_form) / s_closed_form).abs();
        if rel_deviation > max_deviation {
            max_deviation = rel_deviation;
            worst_k = k;
        }
        entries.push(ValidationEntry {
            k,
            s_simulated,
            s_closed_form,
            rel_deviation,
        });
    }
    Ok(ValidationReport {
        entries,
        max_deviation,
        worst_k,
        tolerance,
        passed: max_deviation <= tolerance,
    })
}
