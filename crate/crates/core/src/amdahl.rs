//! Amdahl's-law algebra: speedup, efficiency, effective parallelization,
//! performance gain, and payload performance, with numerically stable
//! inversions.
//!
//! With `k` processors and a parallelizable fraction `alpha` of the total
//! single-processor time, the classic relations are
//!
//! ```text
//! S(alpha, k) = k / (k*(1-alpha) + alpha)        speedup
//! E(alpha, k) = S/k = 1 / (k*(1-alpha) + alpha)  efficiency
//! G(alpha)    = 1 / (1-alpha)                    gain, the k -> infinity speedup
//! ```
//!
//! and the inversions from measured values
//!
//! ```text
//! alpha_eff(S, k) = (k/(k-1)) * (S-1)/S
//! alpha(E, k)     = (E*k - 1) / (E*(k-1))
//! ```
//!
//! Every quantity of practical interest sits within about `1e-5` of
//! `alpha = 1`, so [`AlphaFraction`] stores the complement `1 - alpha`; storing
//! `alpha` itself would round away all significant digits of serial fractions
//! in the `1e-8` range. For the same reason the inversions are evaluated in
//! the subtraction-free forms
//!
//! ```text
//! 1 - alpha_eff = (k - S) / (S * (k-1))          (equals the Karp-Flatt serial fraction)
//! 1 - alpha     = (1 - E) / (E * (k-1))
//! ```
//!
//! which are algebraically identical to the textbook expressions but keep full
//! precision near `alpha = 1`. The shared denominator `k*(1-alpha) + alpha` is
//! computed as `1 + (k-1)*(1-alpha)` throughout.

use serde::Serialize;

use crate::error::{Error, Result};

/// Relative slack accepted on the `alpha = 0` boundary before a measurement
/// is declared inconsistent (absorbs last-place rounding of exact boundary
/// inputs such as `E = 1/k`).
const BOUNDARY_SLACK: f64 = 1e-9;

/// The parallelizable fraction of a workload, stored as its complement
/// `1 - alpha` to preserve precision near `alpha = 1`.
///
/// `one_minus_alpha = 1` means fully sequential (`alpha = 0`);
/// `one_minus_alpha = 0` is the perfectly parallel limit, representable so
/// that measured `E = 1` or `S = k` round-trip, but rejected by [`gain`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AlphaFraction {
    one_minus_alpha: f64,
}

impl AlphaFraction {
    /// Builds the fraction from the serial complement `1 - alpha`.
    pub fn from_one_minus(one_minus_alpha: f64) -> Result<Self> {
        if !one_minus_alpha.is_finite() || !(0.0..=1.0).contains(&one_minus_alpha) {
            return Err(Error::OutOfRange {
                name: "one_minus_alpha",
                value: one_minus_alpha,
                constraint: "must lie in [0, 1]",
            });
        }
        Ok(Self { one_minus_alpha })
    }

    /// Builds the fraction from `alpha` itself.
    ///
    /// Prefer [`AlphaFraction::from_one_minus`] when the serial complement is
    /// what was measured; `1 - alpha` loses digits once `alpha` is within a
    /// few ulp of 1.
    pub fn from_alpha(alpha: f64) -> Result<Self> {
        if !alpha.is_finite() || !(0.0..=1.0).contains(&alpha) {
            return Err(Error::OutOfRange {
                name: "alpha",
                value: alpha,
                constraint: "must lie in [0, 1]",
            });
        }
        Self::from_one_minus(1.0 - alpha)
    }

    /// The serial complement `1 - alpha`.
    pub const fn one_minus(self) -> f64 {
        self.one_minus_alpha
    }

    /// The parallelizable fraction `alpha`.
    pub fn alpha(self) -> f64 {
        1.0 - self.one_minus_alpha
    }

    /// True in the perfectly parallel limit `alpha = 1`.
    pub fn is_fully_parallel(self) -> bool {
        self.one_minus_alpha == 0.0
    }
}

/// A measured or modeled speedup together with the processor count it was
/// obtained at. Values outside `[1, k]` are rejected: superlinear or
/// slower-than-serial measurements indicate data problems the caller must see.
///
/// The unrealized speedup `k - S` is carried alongside the value; when the
/// speedup is produced by [`speedup_from_alpha`] it is computed without the
/// cancellation that `k - S` would suffer near `S = k`, which is what keeps
/// the inversion round trip tight.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Speedup {
    value: f64,
    k: u64,
    #[serde(skip)]
    deficit: f64,
}

impl Speedup {
    pub fn new(value: f64, k: u64) -> Result<Self> {
        if k < 1 {
            return Err(Error::ProcessorCount {
                what: "speedup",
                k,
                min: 1,
            });
        }
        if !value.is_finite() || value < 1.0 {
            return Err(Error::Inconsistent(format!(
                "speedup {value} below 1 (parallel run no faster than serial)"
            )));
        }
        if value > k as f64 {
            return Err(Error::Inconsistent(format!(
                "speedup {value} exceeds processor count {k} (superlinear)"
            )));
        }
        Ok(Self {
            value,
            k,
            deficit: k as f64 - value,
        })
    }

    pub const fn value(self) -> f64 {
        self.value
    }

    pub const fn k(self) -> u64 {
        self.k
    }

    /// The unrealized speedup `k - S`.
    pub const fn deficit(self) -> f64 {
        self.deficit
    }
}

/// Parallelization efficiency `E = S/k`, in `(0, 1]`. For supercomputer
/// records this is the published `R_Max / R_Peak` ratio.
///
/// The efficiency shortfall `1 - E` is carried alongside the value, computed
/// cancellation-free when the efficiency comes out of [`efficiency`]; for
/// values in `[0.5, 1]` the plain subtraction in [`Efficiency::new`] is exact
/// anyway.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Efficiency {
    value: f64,
    k: u64,
    #[serde(skip)]
    shortfall: f64,
}

impl Efficiency {
    pub fn new(value: f64, k: u64) -> Result<Self> {
        if k < 1 {
            return Err(Error::ProcessorCount {
                what: "efficiency",
                k,
                min: 1,
            });
        }
        if !value.is_finite() || value <= 0.0 {
            return Err(Error::OutOfRange {
                name: "efficiency",
                value,
                constraint: "must lie in (0, 1]",
            });
        }
        if value > 1.0 {
            return Err(Error::Inconsistent(format!(
                "efficiency {value} above 1 (payload above nominal)"
            )));
        }
        Ok(Self {
            value,
            k,
            shortfall: 1.0 - value,
        })
    }

    pub const fn value(self) -> f64 {
        self.value
    }

    pub const fn k(self) -> u64 {
        self.k
    }

    /// The efficiency shortfall `1 - E`.
    pub const fn shortfall(self) -> f64 {
        self.shortfall
    }
}

/// The performance gain `G = 1/(1-alpha)`: the speedup ceiling reached with
/// an unbounded number of processors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Gain {
    value: f64,
}

impl Gain {
    pub const fn value(self) -> f64 {
        self.value
    }
}

/// A floating-point rate in Gflop/s.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
pub struct Performance {
    gflops: f64,
}

impl Performance {
    /// Gflop/s per Eflop/s, for converting suffixed inputs.
    pub const GFLOPS_PER_EFLOPS: f64 = 1e9;

    pub fn gflops(value: f64) -> Result<Self> {
        if !value.is_finite() || value < 0.0 {
            return Err(Error::OutOfRange {
                name: "performance",
                value,
                constraint: "must be a nonnegative Gflop/s value",
            });
        }
        Ok(Self { gflops: value })
    }

    pub const fn value(self) -> f64 {
        self.gflops
    }
}

/// The Amdahl denominator `k*(1-alpha) + alpha`, evaluated as
/// `1 + (k-1)*(1-alpha)` so that serial fractions near zero keep their
/// precision. `k` is a real number here: dataset-derived counts are exact
/// integers, model-derived counts are continuous sweep variables.
pub(crate) fn amdahl_denominator(one_minus_alpha: f64, k: f64) -> f64 {
    1.0 + (k - 1.0) * one_minus_alpha
}

/// Speedup at `k` processors: `S = k / (k*(1-alpha) + alpha)`.
pub fn speedup_from_alpha(alpha: AlphaFraction, k: u64) -> Result<Speedup> {
    if k < 1 {
        return Err(Error::ProcessorCount {
            what: "speedup_from_alpha",
            k,
            min: 1,
        });
    }
    let kf = k as f64;
    let denom = amdahl_denominator(alpha.one_minus(), kf);
    let value = kf / denom;
    // k - S = k*(k-1)*(1-alpha) / denom, free of the cancellation that the
    // literal subtraction hits once S sits within an ulp of k.
    let deficit = kf * (kf - 1.0) * alpha.one_minus() / denom;
    Ok(Speedup {
        value: value.clamp(1.0, kf),
        k,
        deficit,
    })
}

/// Effective parallelization from a measured speedup, stored via its serial
/// complement `1 - alpha_eff = (k - S) / (S*(k-1))`.
///
/// This complement is numerically identical to the Karp-Flatt experimentally
/// determined serial fraction `f = (1/S - 1/k) / (1 - 1/k)`.
pub fn alpha_eff_from_speedup(s: Speedup) -> Result<AlphaFraction> {
    if s.k() < 2 {
        return Err(Error::ProcessorCount {
            what: "alpha_eff_from_speedup",
            k: s.k(),
            min: 2,
        });
    }
    let kf = s.k() as f64;
    let one_minus = s.deficit() / (s.value() * (kf - 1.0));
    AlphaFraction::from_one_minus(one_minus.clamp(0.0, 1.0))
}

/// Efficiency at `k` processors: `E = 1 / (k*(1-alpha) + alpha)`.
pub fn efficiency(alpha: AlphaFraction, k: u64) -> Result<Efficiency> {
    if k < 1 {
        return Err(Error::ProcessorCount {
            what: "efficiency",
            k,
            min: 1,
        });
    }
    let denom = amdahl_denominator(alpha.one_minus(), k as f64);
    // 1 - E = (k-1)*(1-alpha) / denom, cancellation-free.
    Ok(Efficiency {
        value: 1.0 / denom,
        k,
        shortfall: (k as f64 - 1.0) * alpha.one_minus() / denom,
    })
}

/// Parallelizable fraction from a measured efficiency, evaluated as
/// `1 - alpha = (1 - E) / (E*(k-1))`.
///
/// Rejects `E < 1/k` (a negative parallel fraction) as inconsistent rather
/// than clamping; `E = 1/k` itself is the valid fully sequential boundary.
pub fn alpha_from_efficiency(e: Efficiency) -> Result<AlphaFraction> {
    if e.k() < 2 {
        return Err(Error::ProcessorCount {
            what: "alpha_from_efficiency",
            k: e.k(),
            min: 2,
        });
    }
    let kf = e.k() as f64;
    let one_minus = e.shortfall() / (e.value() * (kf - 1.0));
    if one_minus > 1.0 + BOUNDARY_SLACK {
        return Err(Error::Inconsistent(format!(
            "efficiency {} below 1/k for k = {} (negative parallel fraction)",
            e.value(),
            e.k()
        )));
    }
    AlphaFraction::from_one_minus(one_minus.min(1.0))
}

/// Maximum achievable performance gain `G = 1/(1-alpha)`.
pub fn gain(alpha: AlphaFraction) -> Result<Gain> {
    if alpha.is_fully_parallel() {
        return Err(Error::UnboundedGain);
    }
    Ok(Gain {
        value: 1.0 / alpha.one_minus(),
    })
}

/// Total payload performance `G * P_single`.
///
/// Valid only under the assumption that the effective parallelization does
/// not itself depend on the processor count; the machine-contribution model
/// drops that assumption.
pub fn payload_performance(g: Gain, p_single: Performance) -> Result<Performance> {
    Performance::gflops(g.value() * p_single.value())
}

/// Payload performance at a given nominal performance:
/// `R_Max = R_Peak / (k*(1-alpha) + alpha)` with `k = R_Peak / P_single`
/// kept as a real number.
pub fn payload_from_nominal(
    alpha: AlphaFraction,
    r_peak: Performance,
    p_single: Performance,
) -> Result<Performance> {
    if p_single.value() <= 0.0 {
        return Err(Error::OutOfRange {
            name: "p_single",
            value: p_single.value(),
            constraint: "must be positive",
        });
    }
    let k = r_peak.value() / p_single.value();
    if k < 1.0 {
        return Err(Error::Inconsistent(format!(
            "nominal performance {} Gflop/s below single-processor performance {} Gflop/s",
            r_peak.value(),
            p_single.value()
        )));
    }
    Performance::gflops(r_peak.value() / amdahl_denominator(alpha.one_minus(), k))
}
