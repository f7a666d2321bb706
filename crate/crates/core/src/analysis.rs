//! Forward-looking computations on top of the model: frozen-alpha
//! performance prediction, per-class gain rooflines, and the consolidated
//! wall report for a modeled machine.

use std::fmt;

use serde::Serialize;

use crate::amdahl::amdahl_denominator;
use crate::contrib::{ContributionBreakdown, MachineSpec, PeakLocation};
use crate::dataset::{derive, Benchmark, BenchmarkRecord};
use crate::error::Result;

/// One predicted `(r_peak, r_max)` point, Gflop/s.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct PredictionSample {
    pub r_peak: f64,
    pub r_max: f64,
}

/// Payload-performance prediction built by freezing the effective
/// parallelization (and the per-processor performance) of a base measurement
/// and virtually changing the processor count.
///
/// The curve is optimistic by construction: growing the machine would in
/// reality also grow the addressing delay, which this extrapolation ignores.
#[derive(Debug, Clone, Serialize)]
pub struct PredictionCurve {
    pub base_name: String,
    /// Frozen per-processor performance, Gflop/s.
    pub p_single: f64,
    /// Frozen serial complement of the base measurement.
    pub one_minus_alpha: f64,
    /// `p_single / (1-alpha)`: the payload ceiling; `None` when the base
    /// measurement had a zero serial fraction.
    pub asymptote_gflops: Option<f64>,
    pub samples: Vec<PredictionSample>,
    /// Requested nominal values below `p_single`, with the reason skipped.
    pub skipped: Vec<SkippedSample>,
    pub optimistic: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SkippedSample {
    pub r_peak: f64,
    pub reason: String,
}

/// Predicts payload performance at the given nominal performances with the
/// base record's parallelization frozen.
pub fn predict(base: &BenchmarkRecord, r_peak_values: &[f64]) -> Result<PredictionCurve> {
    let metrics = derive(base)?;
    let p_single = metrics.p_single.value();
    let oma = metrics.one_minus_alpha.one_minus();
    let mut samples = Vec::new();
    let mut skipped = Vec::new();
    for &r_peak in r_peak_values {
        if !(r_peak.is_finite() && r_peak > 0.0) {
            skipped.push(SkippedSample {
                r_peak,
                reason: "not a positive nominal performance".to_string(),
            });
            continue;
        }
        let k = r_peak / p_single;
        if k < 1.0 {
            skipped.push(SkippedSample {
                r_peak,
                reason: format!("below the single-processor performance {p_single} Gflop/s"),
            });
            continue;
        }
        samples.push(PredictionSample {
            r_peak,
            r_max: r_peak / amdahl_denominator(oma, k),
        });
    }
    Ok(PredictionCurve {
        base_name: base.name.clone(),
        p_single,
        one_minus_alpha: oma,
        asymptote_gflops: metrics.gain.map(|g| g.value() * p_single),
        samples,
        skipped,
        optimistic: true,
    })
}

/// How one roofline level was obtained.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RoofSource {
    /// Largest measured gain of the class.
    Measured { record: String },
    /// Supplied constant (used for workloads with a single published point).
    Constant,
}

#[derive(Debug, Clone, Serialize)]
pub struct RooflineLevel {
    pub class: String,
    pub gain: f64,
    pub source: RoofSource,
    pub supporting_records: usize,
}

/// Per-workload-class gain ceilings, ordered from the highest roof down.
#[derive(Debug, Clone, Serialize)]
pub struct RooflineLevels {
    pub levels: Vec<RooflineLevel>,
    /// Whether the expected ordering HPL > HPCG > brain simulation held for
    /// the levels present.
    pub expected_ordering: bool,
    pub notes: Vec<String>,
}

/// Extracts the per-class gain roofs: HPL and HPCG roofs are the largest
/// measured gain of each class; the brain-simulation roof is the supplied
/// constant (a single published measurement, conventionally about 1e3).
pub fn roofline(records: &[BenchmarkRecord], brain_gain_constant: f64) -> RooflineLevels {
    let mut levels = Vec::new();
    let mut notes = Vec::new();
    for (class, benchmark) in [("HPL", Benchmark::Hpl), ("HPCG", Benchmark::Hpcg)] {
        let mut best: Option<(f64, &BenchmarkRecord)> = None;
        let mut supporting = 0usize;
        for record in records.iter().filter(|r| r.benchmark == benchmark) {
            let Ok(metrics) = derive(record) else {
                notes.push(format!("{}: not derivable, skipped", record.name));
                continue;
            };
            let Some(g) = metrics.gain else {
                notes.push(format!("{}: unbounded gain, skipped", record.name));
                continue;
            };
            supporting += 1;
            if best.is_none_or(|(b, _)| g.value() > b) {
                best = Some((g.value(), record));
            }
        }
        match best {
            Some((gain, record)) => levels.push(RooflineLevel {
                class: class.to_string(),
                gain,
                source: RoofSource::Measured {
                    record: record.name.clone(),
                },
                supporting_records: supporting,
            }),
            None => notes.push(format!("{class}: no measured records, roof omitted")),
        }
    }
    if brain_gain_constant > 0.0 {
        levels.push(RooflineLevel {
            class: "brain_simulation".to_string(),
            gain: brain_gain_constant,
            source: RoofSource::Constant,
            supporting_records: 0,
        });
    } else {
        notes.push("brain_simulation: no positive constant supplied, roof omitted".to_string());
    }
    let expected_ordering = levels.windows(2).all(|w| w[0].gain > w[1].gain);
    RooflineLevels {
        levels,
        expected_ordering,
        notes,
    }
}

/// Contribution table row of the wall report.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ReferencePoint {
    pub r_peak: f64,
    pub k: f64,
    pub breakdown: ContributionBreakdown,
    pub efficiency: f64,
    pub r_max: f64,
}

/// The serial-fraction component that dominates at the wall.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LimitingTerm {
    Software,
    OsContext,
    Addressing,
    Propagation,
}

impl fmt::Display for LimitingTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Software => "software fraction",
            Self::OsContext => "OS context switching",
            Self::Addressing => "addressing",
            Self::Propagation => "propagation delay",
        })
    }
}

/// Everything the model says about one machine: contribution table at
/// reference sizes, the wall, what limits it, and the gain ceilings.
#[derive(Debug, Clone, Serialize)]
pub struct WallReport {
    pub machine: MachineSpec,
    pub reference_points: Vec<ReferencePoint>,
    pub peak: PeakLocation,
    /// Largest contribution at the wall; `None` when there is no finite wall.
    pub limiting_at_peak: Option<LimitingTerm>,
    /// Nominal performance (and machine size) where the addressing
    /// contribution overtakes the software fraction; `None` when alpha_sw is
    /// zero or addressing never catches up.
    pub sw_addressing_crossover: Option<CrossoverPoint>,
    /// `1 / (per-run serial fraction)`: the gain ceiling set by the
    /// k-independent contributions alone; `None` when they are zero.
    pub gain_ceiling_per_run: Option<f64>,
    /// Gain actually realized at the wall: peak `r_max / p_single`.
    pub gain_at_peak: Option<f64>,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct CrossoverPoint {
    pub k: f64,
    pub r_peak: f64,
}

/// Builds the wall report. Reference points sit at one tenth of, at, and at
/// ten times the wall (falling back to decades of machine size when the wall
/// is unbounded).
pub fn wall_report(spec: &MachineSpec) -> Result<WallReport> {
    spec.validate()?;
    let peak = spec.peak_location()?;
    let reference_r_peaks: Vec<f64> = match peak {
        PeakLocation::Finite { r_peak, .. } => vec![r_peak / 10.0, r_peak, r_peak * 10.0],
        PeakLocation::Unbounded => {
            vec![
                spec.processor_gflops * 1e3,
                spec.processor_gflops * 1e6,
                spec.processor_gflops * 1e9,
            ]
        }
    };
    let mut reference_points = Vec::new();
    for r_peak in reference_r_peaks {
        let k = (r_peak / spec.processor_gflops).max(1.0);
        let breakdown = spec.total_sequential_fraction(k)?;
        let efficiency = 1.0 / amdahl_denominator(breakdown.total, k);
        reference_points.push(ReferencePoint {
            r_peak,
            k,
            breakdown,
            efficiency,
            r_max: r_peak * efficiency,
        });
    }

    let limiting_at_peak = match peak {
        PeakLocation::Finite { r_peak, .. } => {
            let k = (r_peak / spec.processor_gflops).max(1.0);
            let b = spec.total_sequential_fraction(k)?;
            let candidates = [
                (LimitingTerm::Software, b.sw),
                (LimitingTerm::OsContext, b.os_context),
                (LimitingTerm::Addressing, b.addressing),
                (LimitingTerm::Propagation, b.propagation),
            ];
            candidates
                .into_iter()
                .max_by(|a, b| a.1.partial_cmp(&b.1).unwrap_or(std::cmp::Ordering::Equal))
                .map(|(term, _)| term)
        }
        PeakLocation::Unbounded => None,
    };

    // alpha_sw = (k/clustering)/clocks crosses at k = alpha_sw * clustering * clocks.
    let sw_addressing_crossover = if spec.alpha_sw > 0.0 {
        let k = spec.alpha_sw * spec.clustering_factor * spec.benchmark_clocks;
        if k.is_finite() && k >= 1.0 {
            Some(CrossoverPoint {
                k,
                r_peak: k * spec.processor_gflops,
            })
        } else {
            None
        }
    } else {
        None
    };

    let per_run = spec.per_run_fraction();
    let gain_ceiling_per_run = if per_run > 0.0 { Some(1.0 / per_run) } else { None };
    let gain_at_peak = match peak {
        PeakLocation::Finite { r_max, .. } => Some(r_max / spec.processor_gflops),
        PeakLocation::Unbounded => None,
    };

    Ok(WallReport {
        machine: spec.clone(),
        reference_points,
        peak,
        limiting_at_peak,
        sw_addressing_crossover,
        gain_ceiling_per_run,
        gain_at_peak,
    })
}

impl fmt::Display for WallReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "machine: {} Gflop/s per processor @ {} GHz, {:e} benchmark clocks",
            self.machine.processor_gflops, self.machine.clock_ghz, self.machine.benchmark_clocks
        )?;
        writeln!(
            f,
            "{:>14} {:>12} {:>12} {:>12} {:>12} {:>12} {:>12} {:>12} {:>14}",
            "r_peak_gflops",
            "k",
            "alpha_sw",
            "alpha_os",
            "alpha_addr",
            "alpha_pd",
            "total",
            "efficiency",
            "r_max_gflops"
        )?;
        for p in &self.reference_points {
            writeln!(
                f,
                "{:>14.6e} {:>12.4e} {:>12.4e} {:>12.4e} {:>12.4e} {:>12.4e} {:>12.4e} {:>12.6e} {:>14.6e}",
                p.r_peak,
                p.k,
                p.breakdown.sw,
                p.breakdown.os_context,
                p.breakdown.addressing,
                p.breakdown.propagation,
                p.breakdown.total,
                p.efficiency,
                p.r_max
            )?;
        }
        match self.peak {
            PeakLocation::Finite { r_peak, r_max } => {
                writeln!(
                    f,
                    "performance wall: r_peak = {r_peak:.6e} Gflop/s, r_max = {r_max:.6e} Gflop/s"
                )?;
                if let Some(term) = self.limiting_at_peak {
                    writeln!(f, "limiting contribution at the wall: {term}")?;
                }
            }
            PeakLocation::Unbounded => {
                writeln!(f, "no finite wall: the addressing term vanishes")?;
            }
        }
        if let Some(c) = self.sw_addressing_crossover {
            writeln!(
                f,
                "addressing overtakes the software fraction at r_peak = {:.6e} Gflop/s (k = {:.4e})",
                c.r_peak, c.k
            )?;
        }
        match self.gain_ceiling_per_run {
            Some(g) => writeln!(f, "gain ceiling from per-run contributions: {g:.6e}")?,
            None => writeln!(f, "gain ceiling from per-run contributions: unbounded")?,
        }
        if let Some(g) = self.gain_at_peak {
            writeln!(f, "gain realized at the wall: {g:.6e}")?;
        }
        if self.machine.access_time_s > 0.0 {
            writeln!(
                f,
                "access time: {} s (one-time, excluded from the serial fraction)",
                self.machine.access_time_s
            )?;
        }
        Ok(())
    }
}
