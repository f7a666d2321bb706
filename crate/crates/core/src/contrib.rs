//! Composition of the serial fraction from machine-level time contributions,
//! payload-vs-nominal sweeps, and the performance wall.
//!
//! Each contribution is a time ratio relative to the benchmark duration
//! (measured in clock periods):
//!
//! ```text
//! sw          = alpha_sw                                   (per benchmark class)
//! os_context  = ctx_cycles * switches_per_run / clocks
//! addressing  = (k / clustering_factor) / clocks           (grows with k)
//! propagation = round_trip_cycles / clocks
//! total(k)    = sw + os_context + addressing + propagation
//! ```
//!
//! The components sum linearly; overlapping contributions are not modeled.
//! With `k = r_peak / p` processors the payload performance is
//!
//! ```text
//! r_max(x) = x / (1 + (k - 1) * total(k)),   k = x / p
//! ```
//!
//! Because the addressing term grows with `k`, the denominator picks up a
//! quadratic term `b*x^2` with `b = 1 / (p^2 * clustering * clocks)`, and
//! `r_max` has a single interior maximum — the performance wall — at
//! `x* = 1/sqrt(b)`. The wall location depends only on the addressing
//! coefficient; the k-independent contributions set how much payload is left
//! there.

use std::io::Write;
use std::path::Path;

use serde::Serialize;

use crate::amdahl::amdahl_denominator;
use crate::config::KvFile;
use crate::error::{Error, Result};

/// Signal speed used for propagation delays. The round 3e8 m/s figure makes
/// a 100 m cable at velocity factor 2/3 a 1 microsecond round trip.
pub const SPEED_OF_LIGHT_M_PER_S: f64 = 3.0e8;

/// Default fraction of light speed for signals on cables.
pub const DEFAULT_SIGNAL_VELOCITY_FACTOR: f64 = 2.0 / 3.0;

/// Physical and architectural description of a modeled machine.
///
/// `benchmark_clocks` is the total number of clock periods the measurement
/// spans; config files may give `benchmark_seconds` instead, which is
/// converted using the clock frequency. `access_time_s` is the one-time cost
/// of reaching the machine from outside; it is reported separately and never
/// enters the serial fraction.
#[derive(Debug, Clone, Serialize)]
pub struct MachineSpec {
    /// Clock frequency in GHz.
    pub clock_ghz: f64,
    /// Per-processor performance in Gflop/s.
    pub processor_gflops: f64,
    /// Clock periods spanned by the benchmark run.
    pub benchmark_clocks: f64,
    /// Clock cycles consumed by one OS context switch.
    pub context_switch_cycles: f64,
    /// Context switches charged per run.
    pub context_switches_per_run: f64,
    /// Cable distance between processors in meters; 0 disables propagation.
    pub cable_distance_m: f64,
    /// Signal speed as a fraction of light speed, in (0, 1].
    pub signal_velocity_factor: f64,
    /// Reduction of addressing steps by clustering/vectoring; `inf` removes
    /// the addressing term entirely.
    pub clustering_factor: f64,
    /// Software serial fraction of the benchmark class.
    pub alpha_sw: f64,
    /// One-time access cost in seconds, excluded from the serial fraction.
    pub access_time_s: f64,
}

impl MachineSpec {
    /// A machine with the given required parameters and neutral defaults for
    /// everything else (no context switching, no cable, no software fraction,
    /// clustering 1, velocity factor 2/3).
    pub fn new(clock_ghz: f64, processor_gflops: f64, benchmark_clocks: f64) -> Self {
        Self {
            clock_ghz,
            processor_gflops,
            benchmark_clocks,
            context_switch_cycles: 0.0,
            context_switches_per_run: 1.0,
            cable_distance_m: 0.0,
            signal_velocity_factor: DEFAULT_SIGNAL_VELOCITY_FACTOR,
            clustering_factor: 1.0,
            alpha_sw: 0.0,
            access_time_s: 0.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let checks: [(&'static str, f64, bool, &'static str); 10] = [
            (
                "clock_frequency",
                self.clock_ghz,
                self.clock_ghz.is_finite() && self.clock_ghz > 0.0,
                "must be a positive GHz value",
            ),
            (
                "processor_performance",
                self.processor_gflops,
                self.processor_gflops.is_finite() && self.processor_gflops > 0.0,
                "must be a positive Gflop/s value",
            ),
            (
                "benchmark_clocks",
                self.benchmark_clocks,
                self.benchmark_clocks.is_finite() && self.benchmark_clocks > 0.0,
                "must be a positive clock-period count",
            ),
            (
                "context_switch_cycles",
                self.context_switch_cycles,
                self.context_switch_cycles.is_finite() && self.context_switch_cycles >= 0.0,
                "must be nonnegative",
            ),
            (
                "context_switches_per_run",
                self.context_switches_per_run,
                self.context_switches_per_run.is_finite() && self.context_switches_per_run >= 0.0,
                "must be nonnegative",
            ),
            (
                "cable_distance_m",
                self.cable_distance_m,
                self.cable_distance_m.is_finite() && self.cable_distance_m >= 0.0,
                "must be nonnegative meters",
            ),
            (
                "signal_velocity_factor",
                self.signal_velocity_factor,
                self.signal_velocity_factor > 0.0 && self.signal_velocity_factor <= 1.0,
                "must lie in (0, 1]",
            ),
            (
                "clustering_factor",
                self.clustering_factor,
                self.clustering_factor >= 1.0,
                "must be >= 1 (inf allowed)",
            ),
            (
                "alpha_sw",
                self.alpha_sw,
                self.alpha_sw.is_finite() && self.alpha_sw >= 0.0,
                "must be nonnegative",
            ),
            (
                "access_time_s",
                self.access_time_s,
                self.access_time_s.is_finite() && self.access_time_s >= 0.0,
                "must be nonnegative seconds",
            ),
        ];
        for (name, value, ok, constraint) in checks {
            if !ok {
                return Err(Error::OutOfRange {
                    name,
                    value,
                    constraint,
                });
            }
        }
        let overhead = self.context_switch_cycles * self.context_switches_per_run;
        if self.benchmark_clocks < overhead {
            return Err(Error::Inconsistent(format!(
                "benchmark run ({} clocks) shorter than its own context-switch overhead ({overhead} cycles)",
                self.benchmark_clocks
            )));
        }
        Ok(())
    }

    /// Parses the key/value config format. Keys match the field names;
    /// `benchmark_seconds` may replace `benchmark_clocks`.
    pub fn from_kv(text: &str) -> Result<Self> {
        let mut kv = KvFile::parse(text)?;
        let required = |value: Option<f64>, key: &str| {
            value.ok_or_else(|| Error::Config {
                line: 0,
                message: format!("missing required key `{key}`"),
            })
        };
        let clock_ghz = required(kv.take_f64("clock_frequency")?, "clock_frequency")?;
        let processor_gflops = required(
            kv.take_f64("processor_performance")?,
            "processor_performance",
        )?;
        let benchmark_clocks = match kv.take_f64("benchmark_clocks")? {
            Some(clocks) => {
                if kv.take_f64("benchmark_seconds")?.is_some() {
                    return Err(Error::Config {
                        line: 0,
                        message: "give either benchmark_clocks or benchmark_seconds, not both"
                            .to_string(),
                    });
                }
                clocks
            }
            None => {
                let seconds = required(kv.take_f64("benchmark_seconds")?, "benchmark_clocks")?;
                seconds * clock_ghz * 1e9
            }
        };
        let mut spec = Self::new(clock_ghz, processor_gflops, benchmark_clocks);
        if let Some(v) = kv.take_f64("context_switch_cycles")? {
            spec.context_switch_cycles = v;
        }
        if let Some(v) = kv.take_f64("context_switches_per_run")? {
            spec.context_switches_per_run = v;
        }
        if let Some(v) = kv.take_f64("cable_distance_m")? {
            spec.cable_distance_m = v;
        }
        if let Some(v) = kv.take_f64("signal_velocity_factor")? {
            spec.signal_velocity_factor = v;
        }
        if let Some(v) = kv.take_f64("clustering_factor")? {
            spec.clustering_factor = v;
        }
        if let Some(v) = kv.take_f64("alpha_sw")? {
            spec.alpha_sw = v;
        }
        if let Some(v) = kv.take_f64("access_time_s")? {
            spec.access_time_s = v;
        }
        kv.finish()?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        Self::from_kv(&std::fs::read_to_string(path)?)
    }

    /// OS context-switch contribution: `ctx_cycles * switches / clocks`.
    pub fn contribution_context_switch(&self) -> f64 {
        self.context_switch_cycles * self.context_switches_per_run / self.benchmark_clocks
    }

    /// Addressing/looping contribution at `k` processors:
    /// `(k / clustering) / clocks`. One addressing step per processor per
    /// run, reduced by clustering.
    pub fn contribution_addressing(&self, k: f64) -> f64 {
        (k / self.clustering_factor) / self.benchmark_clocks
    }

    /// Signal round-trip cycles over the cable distance.
    pub fn propagation_round_trip_cycles(&self) -> f64 {
        let round_trip_s =
            2.0 * self.cable_distance_m / (SPEED_OF_LIGHT_M_PER_S * self.signal_velocity_factor);
        round_trip_s * self.clock_ghz * 1e9
    }

    /// Propagation-delay contribution: round-trip cycles over the run length.
    pub fn contribution_propagation(&self) -> f64 {
        self.propagation_round_trip_cycles() / self.benchmark_clocks
    }

    /// The full serial-fraction breakdown at `k` processors.
    pub fn total_sequential_fraction(&self, k: f64) -> Result<ContributionBreakdown> {
        if k < 1.0 {
            return Err(Error::OutOfRange {
                name: "k",
                value: k,
                constraint: "must be >= 1",
            });
        }
        let sw = self.alpha_sw;
        let os_context = self.contribution_context_switch();
        let addressing = self.contribution_addressing(k);
        let propagation = self.contribution_propagation();
        let total = sw + os_context + addressing + propagation;
        if total >= 1.0 {
            return Err(Error::OverheadExceedsRun { total, k });
        }
        Ok(ContributionBreakdown {
            sw,
            os_context,
            addressing,
            propagation,
            total,
        })
    }

    /// The k-independent part of the serial fraction (everything except
    /// addressing).
    pub fn per_run_fraction(&self) -> f64 {
        self.alpha_sw + self.contribution_context_switch() + self.contribution_propagation()
    }

    fn sample_at(&self, r_peak: f64) -> Result<SweepSample> {
        // A machine has at least one processor; below that the model is the
        // single-processor identity r_max = r_peak.
        let k = (r_peak / self.processor_gflops).max(1.0);
        let breakdown = self.total_sequential_fraction(k)?;
        let efficiency = 1.0 / amdahl_denominator(breakdown.total, k);
        Ok(SweepSample {
            r_peak,
            breakdown,
            efficiency,
            r_max: r_peak * efficiency,
        })
    }

    /// Payload performance at nominal performance `r_peak` (Gflop/s), with
    /// the serial fraction recomposed at each machine size.
    pub fn payload_at(&self, r_peak: f64) -> Result<f64> {
        Ok(self.sample_at(r_peak)?.r_max)
    }

    /// Sweeps payload performance against nominal performance over
    /// `[r_peak_min, r_peak_max]` with `n_samples` points, locating the
    /// payload peak by a scan plus golden-section refinement.
    pub fn sweep_payload(
        &self,
        r_peak_min: f64,
        r_peak_max: f64,
        n_samples: usize,
        log_spacing: bool,
    ) -> Result<SweepCurve> {
        self.validate()?;
        if !(r_peak_min > 0.0 && r_peak_max > r_peak_min) {
            return Err(Error::OutOfRange {
                name: "sweep range",
                value: r_peak_min,
                constraint: "requires 0 < min < max",
            });
        }
        if n_samples < 2 {
            return Err(Error::OutOfRange {
                name: "n_samples",
                value: n_samples as f64,
                constraint: "requires at least 2 samples",
            });
        }
        let grid = if log_spacing {
            log_spaced(r_peak_min, r_peak_max, n_samples)
        } else {
            linear_spaced(r_peak_min, r_peak_max, n_samples)
        };
        let mut samples = Vec::with_capacity(n_samples);
        let mut best = 0usize;
        for (i, &x) in grid.iter().enumerate() {
            let sample = self.sample_at(x)?;
            if sample.r_max > samples.get(best).map_or(f64::NEG_INFINITY, |s: &SweepSample| s.r_max)
            {
                best = i;
            }
            samples.push(sample);
        }
        // Refine within the bracket around the best grid sample. The curve is
        // unimodal under this model, so golden-section search converges.
        let lo = if best == 0 { grid[0] } else { grid[best - 1] };
        let hi = if best + 1 == grid.len() {
            grid[grid.len() - 1]
        } else {
            grid[best + 1]
        };
        let (peak_r_peak, peak_r_max) = self.golden_section_peak(lo, hi)?;
        Ok(SweepCurve {
            samples,
            peak_r_peak,
            peak_r_max,
        })
    }

    fn golden_section_peak(&self, mut a: f64, mut b: f64) -> Result<(f64, f64)> {
        const INV_PHI: f64 = 0.618_033_988_749_894_9;
        let scale = b.max(1.0);
        let mut c = b - INV_PHI * (b - a);
        let mut d = a + INV_PHI * (b - a);
        let mut fc = self.payload_at(c)?;
        let mut fd = self.payload_at(d)?;
        let mut iterations = 0usize;
        while (b - a) > 1e-6 * scale {
            if fc > fd {
                b = d;
                d = c;
                fd = fc;
                c = b - INV_PHI * (b - a);
                fc = self.payload_at(c)?;
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + INV_PHI * (b - a);
                fd = self.payload_at(d)?;
            }
            iterations += 1;
            if iterations > 500 {
                return Err(Error::Internal(
                    "golden-section peak refinement failed to converge".to_string(),
                ));
            }
        }
        let x = 0.5 * (a + b);
        Ok((x, self.payload_at(x)?))
    }

    /// Closed-form wall location. With the denominator written as
    /// `1 + a*x + b*x^2`, the payload maximum sits at `x* = 1/sqrt(b)`,
    /// independent of every k-independent contribution; only the addressing
    /// coefficient `b = 1/(p^2 * clustering * clocks)` matters.
    pub fn peak_location(&self) -> Result<PeakLocation> {
        self.validate()?;
        if self.per_run_fraction() >= 1.0 {
            return Err(Error::OverheadExceedsRun {
                total: self.per_run_fraction(),
                k: 1.0,
            });
        }
        let b = 1.0
            / (self.processor_gflops
                * self.processor_gflops
                * self.clustering_factor
                * self.benchmark_clocks);
        if b <= 0.0 || !b.is_finite() {
            return Ok(PeakLocation::Unbounded);
        }
        let r_peak = 1.0 / b.sqrt();
        let r_max = self.payload_at(r_peak)?;
        Ok(PeakLocation::Finite { r_peak, r_max })
    }
}

/// Per-source serial-fraction contributions, as time ratios relative to the
/// benchmark duration. `total` is always the plain sum of the parts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ContributionBreakdown {
    pub sw: f64,
    pub os_context: f64,
    pub addressing: f64,
    pub propagation: f64,
    pub total: f64,
}

/// One point of a payload-vs-nominal sweep. All rates in Gflop/s.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SweepSample {
    pub r_peak: f64,
    pub breakdown: ContributionBreakdown,
    pub efficiency: f64,
    pub r_max: f64,
}

/// Ordered sweep samples plus the refined payload peak.
#[derive(Debug, Clone, Serialize)]
pub struct SweepCurve {
    pub samples: Vec<SweepSample>,
    pub peak_r_peak: f64,
    pub peak_r_max: f64,
}

impl SweepCurve {
    pub const CSV_HEADER: &'static str = "r_peak_gflops,alpha_sw,alpha_os,alpha_addr,alpha_pd,one_minus_alpha_total,efficiency,r_max_gflops";

    /// Writes the curve as CSV with full-precision scientific notation.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "{}", Self::CSV_HEADER)?;
        for s in &self.samples {
            writeln!(
                out,
                "{:e},{:e},{:e},{:e},{:e},{:e},{:e},{:e}",
                s.r_peak,
                s.breakdown.sw,
                s.breakdown.os_context,
                s.breakdown.addressing,
                s.breakdown.propagation,
                s.breakdown.total,
                s.efficiency,
                s.r_max
            )?;
        }
        Ok(())
    }
}

/// Location of the payload maximum; `Unbounded` when no addressing cost
/// exists (infinite clustering) and payload grows without a wall.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PeakLocation {
    Finite { r_peak: f64, r_max: f64 },
    Unbounded,
}

/// One node of the efficiency surface.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SurfaceNode {
    pub one_minus_alpha: f64,
    pub k: f64,
    pub efficiency: f64,
}

/// Efficiency over a log-spaced `(1-alpha) x k` grid, emitted row-major with
/// the `(1-alpha)` axis outermost.
pub fn efficiency_surface(
    one_minus_alpha_range: (f64, f64),
    k_range: (f64, f64),
    grid: (usize, usize),
) -> Result<Vec<SurfaceNode>> {
    let (alo, ahi) = one_minus_alpha_range;
    let (klo, khi) = k_range;
    if !(alo > 0.0 && ahi >= alo && ahi <= 1.0) {
        return Err(Error::OutOfRange {
            name: "one_minus_alpha_range",
            value: alo,
            constraint: "requires 0 < lo <= hi <= 1",
        });
    }
    if !(klo >= 1.0 && khi >= klo) {
        return Err(Error::OutOfRange {
            name: "k_range",
            value: klo,
            constraint: "requires 1 <= lo <= hi",
        });
    }
    if grid.0 < 1 || grid.1 < 1 {
        return Err(Error::OutOfRange {
            name: "grid",
            value: 0.0,
            constraint: "requires at least 1x1 nodes",
        });
    }
    let alphas = log_spaced(alo, ahi, grid.0);
    let ks = log_spaced(klo, khi, grid.1);
    let mut nodes = Vec::with_capacity(grid.0 * grid.1);
    for &oma in &alphas {
        for &k in &ks {
            nodes.push(SurfaceNode {
                one_minus_alpha: oma,
                k,
                efficiency: 1.0 / amdahl_denominator(oma, k),
            });
        }
    }
    Ok(nodes)
}

/// `n` logarithmically spaced values from `lo` to `hi` inclusive.
pub fn log_spaced(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    let (llo, lhi) = (lo.log10(), hi.log10());
    (0..n)
        .map(|i| {
            if i == n - 1 {
                hi
            } else {
                10f64.powf(llo + (lhi - llo) * i as f64 / (n - 1) as f64)
            }
        })
        .collect()
}

/// `n` linearly spaced values from `lo` to `hi` inclusive.
pub fn linear_spaced(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    (0..n)
        .map(|i| {
            if i == n - 1 {
                hi
            } else {
                lo + (hi - lo) * i as f64 / (n - 1) as f64
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel_err(actual: f64, expected: f64) -> f64 {
        if expected == 0.0 {
            actual.abs()
        } else {
            ((actual - expected) / expected).abs()
        }
    }

    /// The reference machine behind the payload-breakdown curves: 1 GHz,
    /// 100 Gflop/s per processor, 2e13 benchmark clocks, 1e4-cycle context
    /// switch, no cable.
    fn reference_machine(alpha_sw: f64) -> MachineSpec {
        let mut spec = MachineSpec::new(1.0, 100.0, 2e13);
        spec.context_switch_cycles = 1e4;
        spec.alpha_sw = alpha_sw;
        spec
    }

    #[test]
    fn context_switch_ratios() {
        let mut spec = MachineSpec::new(1.0, 100.0, 2e13);
        spec.context_switch_cycles = 2e4;
        assert_eq!(spec.contribution_context_switch(), 1e-9);

        spec.benchmark_clocks = 2e9;
        assert_eq!(spec.contribution_context_switch(), 1e-5);

        spec.context_switch_cycles = 0.0;
        assert_eq!(spec.contribution_context_switch(), 0.0);
    }

    #[test]
    fn addressing_ratios() {
        let spec = MachineSpec::new(1.0, 100.0, 2e13);
        assert_eq!(spec.contribution_addressing(1e7), 5e-7);
        assert_eq!(spec.contribution_addressing(1.0), 1.0 / 2e13);

        let mut clustered = spec.clone();
        clustered.clustering_factor = 5e3;
        assert_eq!(clustered.contribution_addressing(1e7), 1e-10);
    }

    #[test]
    fn propagation_hundred_meters_is_thousand_cycles() {
        let mut spec = MachineSpec::new(1.0, 100.0, 2e13);
        spec.cable_distance_m = 100.0;
        assert_eq!(spec.propagation_round_trip_cycles(), 1e3);
        assert_eq!(spec.contribution_propagation(), 5e-11);

        spec.cable_distance_m = 0.0;
        assert_eq!(spec.contribution_propagation(), 0.0);
    }

    #[test]
    fn total_sums_named_constants() {
        let mut spec = MachineSpec::new(1.0, 100.0, 2e13);
        spec.context_switch_cycles = 2e4;
        spec.alpha_sw = 2e-8;
        let b = spec.total_sequential_fraction(1e7).unwrap();
        assert_eq!(b.total, 5.21e-7);
        assert_eq!(b.total, b.sw + b.os_context + b.addressing + b.propagation);
    }

    #[test]
    fn total_single_term_and_single_core() {
        let mut spec = MachineSpec::new(1.0, 100.0, 2e13);
        spec.alpha_sw = 2e-6;
        // k = 1 leaves only the software term plus one addressing step.
        let b = spec.total_sequential_fraction(1.0).unwrap();
        assert_eq!(b.sw, 2e-6);
        assert_eq!(b.addressing, 5e-14);

        let mut bare = MachineSpec::new(1.0, 100.0, 2e13);
        bare.alpha_sw = 0.0;
        let b = bare.total_sequential_fraction(1.0).unwrap();
        assert_eq!(b.total, 5e-14);
    }

    #[test]
    fn total_rejects_full_overhead() {
        let spec = MachineSpec::new(1.0, 100.0, 1e6);
        assert!(matches!(
            spec.total_sequential_fraction(1e7),
            Err(Error::OverheadExceedsRun { .. })
        ));
    }

    #[test]
    fn run_shorter_than_switch_overhead_rejected() {
        let mut spec = MachineSpec::new(1.0, 100.0, 1e3);
        spec.context_switch_cycles = 1e4;
        assert!(matches!(spec.validate(), Err(Error::Inconsistent(_))));
    }

    #[test]
    fn sweep_peak_matches_dense_oracle() {
        // Frozen from an independent dense-grid scan (1e5 Gflop/s steps plus
        // golden refinement) of r_max(x) = x / (1 + (k-1)*total(k)).
        let hpl = reference_machine(2e-8);
        let curve = hpl.sweep_payload(1e6, 1.1e9, 500, true).unwrap();
        assert!(rel_err(curve.peak_r_peak, 4.472135995523741e8) < 1e-6);
        assert!(rel_err(curve.peak_r_max, 2.138060826807572e8) < 1e-6);

        let hpcg = reference_machine(2e-6);
        let curve = hpcg.sweep_payload(1e6, 1.1e9, 500, true).unwrap();
        assert!(rel_err(curve.peak_r_peak, 4.4721316222819257e8) < 1e-6);
        assert!(rel_err(curve.peak_r_max, 4.085446128248714e7) < 1e-6);
    }

    #[test]
    fn sweep_identity_when_overhead_free() {
        // k <= 1 over the whole range: the single-processor identity holds
        // exactly, whatever the per-run constants are.
        let spec = MachineSpec::new(1.0, 100.0, 2e13);
        let curve = spec.sweep_payload(1.0, 100.0, 10, false).unwrap();
        for s in &curve.samples {
            assert_eq!(s.r_max, s.r_peak);
        }
    }

    #[test]
    fn closed_form_peak_matches_sweep() {
        for alpha_sw in [0.0, 2e-8, 2e-6] {
            let spec = reference_machine(alpha_sw);
            let PeakLocation::Finite { r_peak, r_max } = spec.peak_location().unwrap() else {
                panic!("expected a finite wall");
            };
            assert_eq!(r_peak, 100.0 * 2e13f64.sqrt());
            let curve = spec.sweep_payload(1e6, 1.1e9, 200, true).unwrap();
            assert!(rel_err(r_peak, curve.peak_r_peak) < 1e-3);
            assert!(rel_err(r_max, curve.peak_r_max) < 1e-3);
        }
    }

    #[test]
    fn infinite_clustering_removes_the_wall() {
        let mut spec = reference_machine(2e-8);
        spec.clustering_factor = f64::INFINITY;
        assert_eq!(spec.peak_location().unwrap(), PeakLocation::Unbounded);
    }

    #[test]
    fn surface_nodes() {
        let nodes = efficiency_surface((1e-6, 1e-2), (1e4, 1e6), (2, 2)).unwrap();
        assert_eq!(nodes.len(), 4);
        let near_half = nodes
            .iter()
            .find(|n| n.one_minus_alpha == 1e-6 && n.k == 1e6)
            .unwrap();
        assert!(rel_err(near_half.efficiency, 0.5) < 1e-5);
        let small = nodes
            .iter()
            .find(|n| n.one_minus_alpha == 1e-2 && n.k == 1e4)
            .unwrap();
        assert!(rel_err(small.efficiency, 1.0 / 100.99) < 1e-12);
    }

    #[test]
    fn config_round_trip_with_seconds() {
        let spec = MachineSpec::from_kv(
            "clock_frequency = 1.45\nprocessor_performance = 11.78\nbenchmark_seconds = 13298\nalpha_sw = 2e-8\n",
        )
        .unwrap();
        assert!(rel_err(spec.benchmark_clocks, 13298.0 * 1.45e9) < 1e-12);

        let err = MachineSpec::from_kv("clock_frequency = 1\n");
        assert!(matches!(err, Err(Error::Config { .. })));
    }
}
