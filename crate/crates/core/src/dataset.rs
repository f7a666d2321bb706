//! TOP500-style measurement records: CSV ingestion with per-row diagnostics,
//! per-record derived metrics, and the regression fits behind the trend and
//! ranking analyses.
//!
//! Input CSV schema (exact header):
//!
//! ```text
//! name,year,rank,cores,rpeak_gflops,rmax_gflops,benchmark,accelerator
//! ```
//!
//! `rank` and `accelerator` may be empty; a missing `accelerator` column is
//! accepted with a per-file warning and defaults every row to `none`.
//! Performance columns are Gflop/s, matching what TOP500 exports use.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Read;
use std::path::Path;
use std::str::FromStr;

use serde::Serialize;

use crate::amdahl::{
    alpha_from_efficiency, gain, AlphaFraction, Efficiency, Gain, Performance,
};
use crate::error::{Error, Result};

pub const CSV_COLUMNS: [&str; 8] = [
    "name",
    "year",
    "rank",
    "cores",
    "rpeak_gflops",
    "rmax_gflops",
    "benchmark",
    "accelerator",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Benchmark {
    Hpl,
    Hpcg,
}

impl FromStr for Benchmark {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.trim().to_ascii_uppercase().as_str() {
            "HPL" => Ok(Self::Hpl),
            "HPCG" => Ok(Self::Hpcg),
            other => Err(format!("unknown benchmark `{other}` (expected HPL or HPCG)")),
        }
    }
}

impl fmt::Display for Benchmark {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Hpl => "HPL",
            Self::Hpcg => "HPCG",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Accelerator {
    None,
    Gpu,
    Coprocessor,
}

impl FromStr for Accelerator {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.trim().to_ascii_lowercase().as_str() {
            "" | "none" => Ok(Self::None),
            "gpu" => Ok(Self::Gpu),
            "coprocessor" => Ok(Self::Coprocessor),
            other => Err(format!(
                "unknown accelerator `{other}` (expected none, gpu or coprocessor)"
            )),
        }
    }
}

impl fmt::Display for Accelerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::None => "none",
            Self::Gpu => "gpu",
            Self::Coprocessor => "coprocessor",
        })
    }
}

/// One measured machine/benchmark row.
#[derive(Debug, Clone, Serialize)]
pub struct BenchmarkRecord {
    pub name: String,
    pub year: i32,
    pub rank: Option<u32>,
    pub cores: u64,
    /// Nominal performance in Gflop/s.
    pub r_peak: f64,
    /// Measured payload performance in Gflop/s.
    pub r_max: f64,
    pub benchmark: Benchmark,
    pub accelerator: Accelerator,
}

impl BenchmarkRecord {
    pub fn validate(&self) -> Result<()> {
        if self.cores < 1 {
            return Err(Error::ProcessorCount {
                what: "benchmark record",
                k: self.cores,
                min: 1,
            });
        }
        if !(self.r_peak.is_finite() && self.r_peak > 0.0) {
            return Err(Error::OutOfRange {
                name: "rpeak_gflops",
                value: self.r_peak,
                constraint: "must be positive",
            });
        }
        if !(self.r_max.is_finite() && self.r_max > 0.0) {
            return Err(Error::OutOfRange {
                name: "rmax_gflops",
                value: self.r_max,
                constraint: "must be positive",
            });
        }
        if self.r_max > self.r_peak {
            return Err(Error::Inconsistent(format!(
                "r_max {} exceeds r_peak {}",
                self.r_max, self.r_peak
            )));
        }
        Ok(())
    }

    /// Published efficiency `R_Max / R_Peak`.
    pub fn efficiency(&self) -> f64 {
        self.r_max / self.r_peak
    }
}

/// A rejected row: 1-based data row number plus what was wrong with it.
#[derive(Debug, Clone, Serialize)]
pub struct RowIssue {
    pub row: usize,
    pub message: String,
}

/// Ingestion outcome: the valid records, per-row rejections, and file-level
/// warnings (missing accelerator column, empty file).
#[derive(Debug, Clone, Serialize)]
pub struct IngestReport {
    pub records: Vec<BenchmarkRecord>,
    pub issues: Vec<RowIssue>,
    pub warnings: Vec<String>,
}

pub fn ingest(path: &Path) -> Result<IngestReport> {
    let file = std::fs::File::open(path)?;
    ingest_reader(file)
}

pub fn ingest_reader<R: Read>(reader: R) -> Result<IngestReport> {
    let mut csv_reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .from_reader(reader);

    let headers = csv_reader.headers()?.clone();
    let mut warnings = Vec::new();
    let has_accelerator = match headers.len() {
        8 => {
            for (found, expected) in headers.iter().zip(CSV_COLUMNS) {
                if found.trim() != expected {
                    return Err(Error::Degenerate(format!(
                        "unexpected CSV column `{found}` (expected `{expected}`)"
                    )));
                }
            }
            true
        }
        7 => {
            for (found, expected) in headers.iter().zip(&CSV_COLUMNS[..7]) {
                if found.trim() != *expected {
                    return Err(Error::Degenerate(format!(
                        "unexpected CSV column `{found}` (expected `{expected}`)"
                    )));
                }
            }
            warnings
                .push("accelerator column missing; defaulting every row to `none`".to_string());
            false
        }
        n => {
            return Err(Error::Degenerate(format!(
                "expected 7 or 8 CSV columns, found {n}"
            )))
        }
    };

    let mut records = Vec::new();
    let mut issues = Vec::new();
    for (idx, row) in csv_reader.records().enumerate() {
        let row_no = idx + 1;
        let row = match row {
            Ok(row) => row,
            Err(e) => {
                issues.push(RowIssue {
                    row: row_no,
                    message: format!("malformed row: {e}"),
                });
                continue;
            }
        };
        match parse_row(&row, has_accelerator) {
            Ok(record) => records.push(record),
            Err(message) => issues.push(RowIssue {
                row: row_no,
                message,
            }),
        }
    }
    if records.is_empty() && issues.is_empty() {
        warnings.push("file contains no data rows".to_string());
    }
    Ok(IngestReport {
        records,
        issues,
        warnings,
    })
}

fn parse_row(
    row: &csv::StringRecord,
    has_accelerator: bool,
) -> std::result::Result<BenchmarkRecord, String> {
    let expected = if has_accelerator { 8 } else { 7 };
    if row.len() != expected {
        return Err(format!("expected {expected} fields, found {}", row.len()));
    }
    let field = |i: usize| row.get(i).unwrap_or("").trim();

    let name = field(0).to_string();
    if name.is_empty() {
        return Err("empty name".to_string());
    }
    let year: i32 = field(1)
        .parse()
        .map_err(|_| format!("year `{}` is not an integer", field(1)))?;
    let rank: Option<u32> = if field(2).is_empty() {
        None
    } else {
        let r: u32 = field(2)
            .parse()
            .map_err(|_| format!("rank `{}` is not a positive integer", field(2)))?;
        if r == 0 {
            return Err("rank must be positive".to_string());
        }
        Some(r)
    };
    let cores: u64 = field(3)
        .parse()
        .map_err(|_| format!("cores `{}` is not a positive integer", field(3)))?;
    let r_peak: f64 = field(4)
        .parse()
        .map_err(|_| format!("rpeak_gflops `{}` is not a number", field(4)))?;
    let r_max: f64 = field(5)
        .parse()
        .map_err(|_| format!("rmax_gflops `{}` is not a number", field(5)))?;
    let benchmark: Benchmark = field(6).parse()?;
    let accelerator: Accelerator = if has_accelerator {
        field(7).parse()?
    } else {
        Accelerator::None
    };

    let record = BenchmarkRecord {
        name,
        year,
        rank,
        cores,
        r_peak,
        r_max,
        benchmark,
        accelerator,
    };
    record.validate().map_err(|e| e.to_string())?;
    Ok(record)
}

/// Quantities derived from one record. `gain` is `None` when the measured
/// efficiency is exactly 1 (zero serial fraction, unbounded gain).
#[derive(Debug, Clone, Serialize)]
pub struct DerivedMetrics {
    pub efficiency: Efficiency,
    pub one_minus_alpha: AlphaFraction,
    pub gain: Option<Gain>,
    pub p_single: Performance,
}

/// Derives `E = R_Max/R_Peak`, the serial complement, the gain, and the
/// per-processor performance `R_Peak / cores` from a record.
pub fn derive(record: &BenchmarkRecord) -> Result<DerivedMetrics> {
    record.validate()?;
    if record.cores < 2 {
        return Err(Error::ProcessorCount {
            what: "derive",
            k: record.cores,
            min: 2,
        });
    }
    let efficiency = Efficiency::new(record.efficiency(), record.cores)?;
    let one_minus_alpha = alpha_from_efficiency(efficiency)?;
    let gain = gain(one_minus_alpha).ok();
    let p_single = Performance::gflops(record.r_peak / record.cores as f64)?;
    Ok(DerivedMetrics {
        efficiency,
        one_minus_alpha,
        gain,
        p_single,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Transform {
    Linear,
    LogY,
    LogX,
    LogLog,
}

impl Transform {
    fn apply(self, (x, y): (f64, f64)) -> std::result::Result<(f64, f64), String> {
        let log = |v: f64, axis: &str| {
            if v > 0.0 {
                Ok(v.log10())
            } else {
                Err(format!("{axis} value {v} not positive under log transform"))
            }
        };
        Ok(match self {
            Self::Linear => (x, y),
            Self::LogY => (x, log(y, "y")?),
            Self::LogX => (log(x, "x")?, y),
            Self::LogLog => (log(x, "x")?, log(y, "y")?),
        })
    }
}

/// Ordinary least squares in the transformed coordinates.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct RegressionFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    pub transform: Transform,
    pub n_points: usize,
}

/// Fits `y' = intercept + slope * x'` by least squares after applying the
/// transform. Points are canonicalized (sorted) first, so the fit is exactly
/// invariant under reordering of the input.
pub fn fit_regression(points: &[(f64, f64)], transform: Transform) -> Result<RegressionFit> {
    if points.len() < 2 {
        return Err(Error::Degenerate(format!(
            "regression requires at least 2 points, got {}",
            points.len()
        )));
    }
    let mut transformed = Vec::with_capacity(points.len());
    for &p in points {
        transformed.push(transform.apply(p).map_err(Error::Degenerate)?);
    }
    transformed.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));

    let n = transformed.len() as f64;
    let x_mean = transformed.iter().map(|p| p.0).sum::<f64>() / n;
    let y_mean = transformed.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = transformed.iter().map(|p| (p.0 - x_mean).powi(2)).sum();
    let sxy: f64 = transformed
        .iter()
        .map(|p| (p.0 - x_mean) * (p.1 - y_mean))
        .sum();
    if sxx == 0.0 {
        return Err(Error::Degenerate(
            "all x values coincide after transform".to_string(),
        ));
    }
    let slope = sxy / sxx;
    let intercept = y_mean - slope * x_mean;
    let ss_tot: f64 = transformed.iter().map(|p| (p.1 - y_mean).powi(2)).sum();
    let ss_res: f64 = transformed
        .iter()
        .map(|p| (p.1 - (intercept + slope * p.0)).powi(2))
        .sum();
    // Flat data fitted by a flat line is a perfect fit.
    let r_squared = if ss_tot == 0.0 {
        1.0
    } else {
        (1.0 - ss_res / ss_tot).clamp(0.0, 1.0)
    };
    Ok(RegressionFit {
        slope,
        intercept,
        r_squared,
        transform,
        n_points: points.len(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AlphaDeltaWarning {
    /// Negative slope of 1/E vs k: superlinear data.
    SuperlinearSlope,
    /// Zero slope: efficiency independent of k, so alpha varies with k.
    FlatSlope,
    /// Slope above 1: the fitted serial fraction exceeds 1.
    SerialFractionAboveOne,
}

/// Result of the 1/E-versus-k linear fit. The slope estimates the serial
/// complement `1 - alpha`; the intercept estimates `alpha` itself.
#[derive(Debug, Clone, Serialize)]
pub struct AlphaDeltaFit {
    pub slope: f64,
    pub intercept: f64,
    pub alpha_delta: Option<AlphaFraction>,
    pub warning: Option<AlphaDeltaWarning>,
    pub r_squared: f64,
}

/// Estimates the serial fraction from `(k, E)` pairs without needing a
/// single-processor run: `1/E = alpha + (1-alpha) * k` is linear in `k` with
/// slope `1 - alpha`.
pub fn alpha_delta(points: &[(f64, f64)]) -> Result<AlphaDeltaFit> {
    if points.len() < 2 {
        return Err(Error::Degenerate(format!(
            "alpha_delta requires at least 2 points, got {}",
            points.len()
        )));
    }
    for &(k, e) in points {
        if !(k >= 1.0 && k.is_finite()) {
            return Err(Error::OutOfRange {
                name: "k",
                value: k,
                constraint: "must be >= 1",
            });
        }
        if !(e > 0.0 && e <= 1.0) {
            return Err(Error::OutOfRange {
                name: "efficiency",
                value: e,
                constraint: "must lie in (0, 1]",
            });
        }
    }
    let inverse: Vec<(f64, f64)> = points.iter().map(|&(k, e)| (k, 1.0 / e)).collect();
    let fit = fit_regression(&inverse, Transform::Linear)?;
    let (alpha_delta, warning) = if fit.slope < 0.0 {
        (None, Some(AlphaDeltaWarning::SuperlinearSlope))
    } else if fit.slope == 0.0 {
        (
            AlphaFraction::from_one_minus(0.0).ok(),
            Some(AlphaDeltaWarning::FlatSlope),
        )
    } else if fit.slope <= 1.0 {
        (AlphaFraction::from_one_minus(fit.slope).ok(), None)
    } else {
        (None, Some(AlphaDeltaWarning::SerialFractionAboveOne))
    };
    Ok(AlphaDeltaFit {
        slope: fit.slope,
        intercept: fit.intercept,
        alpha_delta,
        warning,
        r_squared: fit.r_squared,
    })
}

/// The best (smallest) serial complement of one year.
#[derive(Debug, Clone, Serialize)]
pub struct YearBest {
    pub year: i32,
    pub name: String,
    pub cores: u64,
    pub one_minus_alpha: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct TrendFit {
    pub per_year: Vec<YearBest>,
    /// Slope in decades of `(1-alpha)` per year (log10 y over linear year).
    pub fit: RegressionFit,
}

/// Selects the best `(1-alpha)` per year (ties broken by larger core count)
/// and fits `log10(1-alpha)` against the year.
pub fn trend_over_years(records: &[BenchmarkRecord]) -> Result<TrendFit> {
    let mut best: BTreeMap<i32, YearBest> = BTreeMap::new();
    for record in records {
        let Ok(metrics) = derive(record) else {
            continue;
        };
        let oma = metrics.one_minus_alpha.one_minus();
        if oma <= 0.0 {
            continue; // perfect efficiency cannot sit on a log axis
        }
        let candidate = YearBest {
            year: record.year,
            name: record.name.clone(),
            cores: record.cores,
            one_minus_alpha: oma,
        };
        match best.get(&record.year) {
            Some(current)
                if current.one_minus_alpha < oma
                    || (current.one_minus_alpha == oma && current.cores >= record.cores) => {}
            _ => {
                best.insert(record.year, candidate);
            }
        }
    }
    if best.len() < 2 {
        return Err(Error::Degenerate(format!(
            "trend requires records from at least 2 years, got {}",
            best.len()
        )));
    }
    let per_year: Vec<YearBest> = best.into_values().collect();
    let points: Vec<(f64, f64)> = per_year
        .iter()
        .map(|b| (b.year as f64, b.one_minus_alpha))
        .collect();
    let fit = fit_regression(&points, Transform::LogY)?;
    Ok(TrendFit { per_year, fit })
}

/// Per-accelerator-class summary: medians of the per-processor performance
/// and of the gain, plus the fits against ranking where ranks exist.
#[derive(Debug, Clone, Serialize)]
pub struct ClassSummary {
    pub class: Accelerator,
    pub count: usize,
    pub median_p_single: f64,
    pub median_gain: Option<f64>,
    pub p_single_vs_rank: Option<RegressionFit>,
    pub gain_vs_rank: Option<RegressionFit>,
    pub notes: Vec<String>,
}

/// Groups records by accelerator class. Classes with no derivable records are
/// omitted; the result is ordered none, gpu, coprocessor.
pub fn group_by_accelerator(records: &[BenchmarkRecord]) -> Vec<ClassSummary> {
    let classes = [Accelerator::None, Accelerator::Gpu, Accelerator::Coprocessor];
    let mut summaries = Vec::new();
    for class in classes {
        let mut notes = Vec::new();
        let mut p_singles = Vec::new();
        let mut gains = Vec::new();
        let mut p_rank_points = Vec::new();
        let mut gain_rank_points = Vec::new();
        for record in records.iter().filter(|r| r.accelerator == class) {
            let metrics = match derive(record) {
                Ok(m) => m,
                Err(e) => {
                    notes.push(format!("{} skipped: {e}", record.name));
                    continue;
                }
            };
            p_singles.push(metrics.p_single.value());
            if let Some(rank) = record.rank {
                p_rank_points.push((rank as f64, metrics.p_single.value()));
            }
            if let Some(g) = metrics.gain {
                gains.push(g.value());
                if let Some(rank) = record.rank {
                    gain_rank_points.push((rank as f64, g.value()));
                }
            } else {
                notes.push(format!("{}: unbounded gain excluded from median", record.name));
            }
        }
        if p_singles.is_empty() {
            continue;
        }
        // Processor performance ranks on a linear axis, gain on a log axis.
        let p_single_vs_rank = fit_regression(&p_rank_points, Transform::Linear).ok();
        let gain_vs_rank = fit_regression(&gain_rank_points, Transform::LogY).ok();
        summaries.push(ClassSummary {
            class,
            count: p_singles.len(),
            median_p_single: median(&mut p_singles),
            median_gain: if gains.is_empty() {
                None
            } else {
                Some(median(&mut gains))
            },
            p_single_vs_rank,
            gain_vs_rank,
            notes,
        });
    }
    summaries
}

/// Median of a slice (averaging the middle pair for even lengths).
pub fn median(values: &mut [f64]) -> f64 {
    values.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2]
    } else {
        0.5 * (values[n / 2 - 1] + values[n / 2])
    }
}
