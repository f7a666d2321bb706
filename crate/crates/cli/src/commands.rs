//! One function per CLI verb, plus the argument parsing helpers they share.
//!
//! Conventions: stdout carries the requested payload (tables, CSV, JSON) and
//! nothing else; diagnostics, row rejections, and contextual notes go to
//! stderr. Identical arguments and files produce byte-identical stdout.

use std::io::Write;
use std::path::Path;

use anyhow::{anyhow, bail, Context};
use serde_json::json;

use perfwall::amdahl::{
    alpha_eff_from_speedup, alpha_from_efficiency, gain, AlphaFraction, Efficiency, Performance,
    Speedup,
};
use perfwall::analysis;
use perfwall::contrib::{efficiency_surface, MachineSpec};
use perfwall::dataset::{
    self, fit_regression, group_by_accelerator, trend_over_years, BenchmarkRecord, Transform,
};
use perfwall::sim::{self, SimScenario};

use crate::format::{full, short, Table};
use crate::OutputMode;

// ---- shared parsing ------------------------------------------------------

/// Parses a performance value in Gflop/s, honoring explicit unit suffixes
/// (`eflops`/`eflop/s` scale by 1e9, `gflops`/`gflop/s` by 1).
pub fn parse_performance(s: &str) -> anyhow::Result<f64> {
    let trimmed = s.trim();
    let lower = trimmed.to_ascii_lowercase();
    let (number, scale) = if let Some(prefix) = lower
        .strip_suffix("eflop/s")
        .or_else(|| lower.strip_suffix("eflops"))
    {
        (prefix, Performance::GFLOPS_PER_EFLOPS)
    } else if let Some(prefix) = lower
        .strip_suffix("gflop/s")
        .or_else(|| lower.strip_suffix("gflops"))
    {
        (prefix, 1.0)
    } else {
        (lower.as_str(), 1.0)
    };
    let value: f64 = number
        .trim()
        .parse()
        .map_err(|_| anyhow!("`{trimmed}` is not a performance value"))?;
    if !value.is_finite() || value < 0.0 {
        bail!("performance `{trimmed}` must be nonnegative and finite");
    }
    Ok(value * scale)
}

/// Parses `MIN,MAX,N` where MIN and MAX are performance values.
fn parse_sweep_spec(s: &str) -> anyhow::Result<(f64, f64, usize)> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        bail!("expected MIN,MAX,N, got `{s}`");
    }
    let min = parse_performance(parts[0])?;
    let max = parse_performance(parts[1])?;
    let n: usize = parts[2]
        .trim()
        .parse()
        .map_err(|_| anyhow!("sample count `{}` is not an integer", parts[2].trim()))?;
    Ok((min, max, n))
}

/// Parses a plain `LO,HI` pair.
fn parse_pair(s: &str, what: &str) -> anyhow::Result<(f64, f64)> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        bail!("expected LO,HI for {what}, got `{s}`");
    }
    let lo: f64 = parts[0]
        .trim()
        .parse()
        .map_err(|_| anyhow!("{what} bound `{}` is not a number", parts[0].trim()))?;
    let hi: f64 = parts[1]
        .trim()
        .parse()
        .map_err(|_| anyhow!("{what} bound `{}` is not a number", parts[1].trim()))?;
    Ok((lo, hi))
}

/// Parses `N1xN2`.
fn parse_grid(s: &str) -> anyhow::Result<(usize, usize)> {
    let lower = s.trim().to_ascii_lowercase();
    let parts: Vec<&str> = lower.split('x').collect();
    if parts.len() != 2 {
        bail!("expected N1xN2 for --grid, got `{s}`");
    }
    let n1: usize = parts[0]
        .trim()
        .parse()
        .map_err(|_| anyhow!("grid size `{}` is not an integer", parts[0].trim()))?;
    let n2: usize = parts[1]
        .trim()
        .parse()
        .map_err(|_| anyhow!("grid size `{}` is not an integer", parts[1].trim()))?;
    Ok((n1, n2))
}

/// Ingests a measurement CSV, routing row diagnostics to stderr.
fn load_records(path: &Path) -> anyhow::Result<Vec<BenchmarkRecord>> {
    let report =
        dataset::ingest(path).with_context(|| format!("reading {}", path.display()))?;
    for warning in &report.warnings {
        eprintln!("warning: {}: {warning}", path.display());
    }
    for issue in &report.issues {
        eprintln!(
            "warning: {}: row {} rejected: {}",
            path.display(),
            issue.row,
            issue.message
        );
    }
    Ok(report.records)
}

fn gain_cell(g: Option<f64>, mode: OutputMode) -> String {
    match (g, mode) {
        (Some(v), OutputMode::Text) => short(v),
        (Some(v), _) => full(v),
        (None, OutputMode::Text) => "unbounded".to_string(),
        (None, _) => String::new(),
    }
}

// ---- estimate --------------------------------------------------------------

pub fn estimate(
    speedup: Option<f64>,
    efficiency: Option<f64>,
    k: u64,
    mode: OutputMode,
) -> anyhow::Result<()> {
    let (alpha, input) = match (speedup, efficiency) {
        (Some(s), None) => {
            let s = Speedup::new(s, k)?;
            (alpha_eff_from_speedup(s)?, json!({ "speedup": s.value() }))
        }
        (None, Some(e)) => {
            let e = Efficiency::new(e, k)?;
            (alpha_from_efficiency(e)?, json!({ "efficiency": e.value() }))
        }
        _ => bail!("give exactly one of --speedup or --efficiency"),
    };
    let g = gain(alpha).ok().map(|g| g.value());
    match mode {
        OutputMode::Text => {
            let mut table = Table::new(&["alpha_eff", "one_minus_alpha_eff", "gain"]);
            table.row(vec![
                short(alpha.alpha()),
                short(alpha.one_minus()),
                gain_cell(g, mode),
            ]);
            print!("{}", table.render());
        }
        OutputMode::Csv => {
            println!("alpha_eff,one_minus_alpha_eff,gain");
            println!(
                "{},{},{}",
                full(alpha.alpha()),
                full(alpha.one_minus()),
                gain_cell(g, mode)
            );
        }
        OutputMode::Json => {
            let doc = json!({
                "k": k,
                "input": input,
                "alpha_eff": alpha.alpha(),
                "one_minus_alpha_eff": alpha.one_minus(),
                "gain": g,
            });
            println!("{}", serde_json::to_string_pretty(&doc)?);
        }
    }
    Ok(())
}

// ---- model -----------------------------------------------------------------

pub fn model(
    config: &Path,
    sweep: &str,
    log: bool,
    out: Option<&Path>,
    mode: OutputMode,
) -> anyhow::Result<()> {
    let spec = MachineSpec::from_path(config)
        .with_context(|| format!("reading {}", config.display()))?;
    let (min, max, n) = parse_sweep_spec(sweep)?;
    let curve = spec.sweep_payload(min, max, n, log)?;
    let report = analysis::wall_report(&spec)?;

    if let Some(path) = out {
        let mut file = std::fs::File::create(path)
            .with_context(|| format!("creating {}", path.display()))?;
        curve.write_csv(&mut file)?;
        file.flush()?;
    }
    match mode {
        OutputMode::Text => {
            print!("{report}");
            println!(
                "sweep: {} samples over [{:.6e}, {:.6e}] Gflop/s ({}); peak r_max {:.6e} at r_peak {:.6e}",
                curve.samples.len(),
                min,
                max,
                if log { "log-spaced" } else { "linear" },
                curve.peak_r_max,
                curve.peak_r_peak
            );
            match out {
                Some(path) => println!("sweep curve written to {}", path.display()),
                None => println!("use --csv or --out FILE for the full curve"),
            }
        }
        OutputMode::Csv => {
            let mut stdout = std::io::stdout().lock();
            curve.write_csv(&mut stdout)?;
            stdout.flush()?;
            eprint!("{report}");
        }
        OutputMode::Json => {
            let doc = json!({ "report": report, "curve": curve });
            println!("{}", serde_json::to_string_pretty(&doc)?);
        }
    }
    Ok(())
}

// ---- simulate ----------------------------------------------------------------

pub struct SimulateArgs {
    pub alpha: Option<f64>,
    pub one_minus_alpha: Option<f64>,
    pub k: Option<u64>,
    pub latency: Option<f64>,
    pub skew: Option<String>,
    pub t1: Option<f64>,
    pub scenario: Option<std::path::PathBuf>,
    pub tolerance: f64,
    pub mode: OutputMode,
}

pub fn simulate(args: SimulateArgs) -> anyhow::Result<()> {
    let scenario = match &args.scenario {
        Some(path) => SimScenario::from_path(path)
            .with_context(|| format!("reading {}", path.display()))?,
        None => {
            let alpha = match (args.alpha, args.one_minus_alpha) {
                (Some(a), None) => AlphaFraction::from_alpha(a)?,
                (None, Some(m)) => AlphaFraction::from_one_minus(m)?,
                _ => bail!("give --alpha or --one-minus-alpha (or --scenario FILE)"),
            };
            let k = args.k.ok_or_else(|| anyhow!("--k is required"))?;
            let mut scn = SimScenario::from_alpha(alpha, k, args.t1.unwrap_or(1.0))?
                .with_latency(args.latency.unwrap_or(0.0))?;
            if let Some(skew) = &args.skew {
                let factors: Vec<f64> = skew
                    .split(',')
                    .map(|p| {
                        p.trim()
                            .parse::<f64>()
                            .map_err(|_| anyhow!("skew factor `{}` is not a number", p.trim()))
                    })
                    .collect::<anyhow::Result<_>>()?;
                scn = scn.with_skew(factors)?;
            }
            scn
        }
    };

    let result = sim::simulate(&scenario)?;
    let t1 = scenario.total_single_processor_time();
    let scenario_alpha =
        AlphaFraction::from_one_minus((scenario.seq_time / t1).clamp(0.0, 1.0))?;
    let closed = perfwall::amdahl::speedup_from_alpha(scenario_alpha, scenario.k)?.value();
    let rel_deviation = ((result.speedup - closed) / closed).abs();
    let ideal = scenario.addressing_latency == 0.0 && scenario.chunk_skew.is_empty();

    match args.mode {
        OutputMode::Text => {
            let mut table = Table::new(&[
                "k",
                "t1",
                "t_parallel",
                "speedup",
                "closed_form",
                "rel_deviation",
                "alpha_eff",
                "one_minus_alpha_eff",
            ]);
            let (a_txt, m_txt) = match result.alpha_eff {
                Some(a) => (short(a.alpha()), short(a.one_minus())),
                None => ("n/a".to_string(), "n/a".to_string()),
            };
            table.row(vec![
                scenario.k.to_string(),
                short(t1),
                short(result.t_parallel),
                short(result.speedup),
                short(closed),
                short(rel_deviation),
                a_txt,
                m_txt,
            ]);
            print!("{}", table.render());
            if scenario.k <= 16 {
                let mut finishes = Table::new(&["worker", "finish"]);
                for (i, f) in result.per_worker_finish.iter().enumerate() {
                    finishes.row(vec![i.to_string(), short(*f)]);
                }
                print!("{}", finishes.render());
            }
            if ideal {
                println!(
                    "closed-form comparison: {} (deviation {:.3e}, tolerance {:.3e})",
                    if rel_deviation <= args.tolerance {
                        "PASS"
                    } else {
                        "FAIL"
                    },
                    rel_deviation,
                    args.tolerance
                );
            } else {
                println!(
                    "scenario includes addressing latency or skew; deviation from the ideal closed form is expected"
                );
            }
        }
        OutputMode::Csv => {
            println!("k,t1,t_parallel,speedup,closed_form,rel_deviation,alpha_eff,one_minus_alpha_eff");
            let (a_csv, m_csv) = match result.alpha_eff {
                Some(a) => (full(a.alpha()), full(a.one_minus())),
                None => (String::new(), String::new()),
            };
            println!(
                "{},{},{},{},{},{},{},{}",
                scenario.k,
                full(t1),
                full(result.t_parallel),
                full(result.speedup),
                full(closed),
                full(rel_deviation),
                a_csv,
                m_csv
            );
        }
        OutputMode::Json => {
            let doc = json!({
                "scenario": scenario,
                "result": result,
                "closed_form_speedup": closed,
                "rel_deviation": rel_deviation,
                "ideal_scenario": ideal,
                "tolerance": args.tolerance,
                "within_tolerance": rel_deviation <= args.tolerance,
            });
            println!("{}", serde_json::to_string_pretty(&doc)?);
        }
    }
    Ok(())
}

// ---- analyze -----------------------------------------------------------------

struct AnalyzedRow {
    record: BenchmarkRecord,
    efficiency: f64,
    one_minus_alpha: f64,
    gain: Option<f64>,
    p_single: f64,
}

struct BenchmarkSection {
    benchmark: dataset::Benchmark,
    fit_cores: Option<dataset::RegressionFit>,
    fit_cores_top: Option<dataset::RegressionFit>,
    fit_oma: Option<dataset::RegressionFit>,
    fit_oma_top: Option<dataset::RegressionFit>,
    classes: Vec<dataset::ClassSummary>,
}

/// Rank regressions and accelerator summaries for one benchmark's records.
/// Rankings from different benchmarks are never merged.
fn benchmark_section(
    benchmark: dataset::Benchmark,
    rows: &[AnalyzedRow],
    top: usize,
) -> Option<BenchmarkSection> {
    let subset: Vec<&AnalyzedRow> = rows
        .iter()
        .filter(|r| r.record.benchmark == benchmark)
        .collect();
    if subset.is_empty() {
        return None;
    }
    let ranked: Vec<&&AnalyzedRow> = subset.iter().filter(|r| r.record.rank.is_some()).collect();
    let points_cores: Vec<(f64, f64)> = ranked
        .iter()
        .map(|r| (f64::from(r.record.rank.unwrap()), r.record.cores as f64))
        .collect();
    let points_oma: Vec<(f64, f64)> = ranked
        .iter()
        .map(|r| (f64::from(r.record.rank.unwrap()), r.one_minus_alpha))
        .collect();
    let top_filter = |points: &[(f64, f64)]| -> Vec<(f64, f64)> {
        points
            .iter()
            .copied()
            .filter(|(rank, _)| *rank <= top as f64)
            .collect()
    };
    let records: Vec<BenchmarkRecord> = subset.iter().map(|r| r.record.clone()).collect();
    Some(BenchmarkSection {
        benchmark,
        fit_cores: fit_regression(&points_cores, Transform::LogY).ok(),
        fit_cores_top: fit_regression(&top_filter(&points_cores), Transform::LogY).ok(),
        fit_oma: fit_regression(&points_oma, Transform::LogY).ok(),
        fit_oma_top: fit_regression(&top_filter(&points_oma), Transform::LogY).ok(),
        classes: group_by_accelerator(&records),
    })
}

pub fn analyze(file: &Path, top: usize, mode: OutputMode) -> anyhow::Result<()> {
    let records = load_records(file)?;
    if records.is_empty() {
        bail!("no valid records in {}", file.display());
    }
    let mut rows = Vec::new();
    for record in records {
        match dataset::derive(&record) {
            Ok(m) => rows.push(AnalyzedRow {
                efficiency: m.efficiency.value(),
                one_minus_alpha: m.one_minus_alpha.one_minus(),
                gain: m.gain.map(|g| g.value()),
                p_single: m.p_single.value(),
                record,
            }),
            Err(e) => eprintln!("warning: {}: not derivable: {e}", record.name),
        }
    }
    if rows.is_empty() {
        bail!("no derivable records in {}", file.display());
    }

    let sections: Vec<BenchmarkSection> = [dataset::Benchmark::Hpl, dataset::Benchmark::Hpcg]
        .into_iter()
        .filter_map(|b| benchmark_section(b, &rows, top))
        .collect();

    match mode {
        OutputMode::Text => {
            let mut table = Table::new(&[
                "name",
                "year",
                "rank",
                "cores",
                "benchmark",
                "accelerator",
                "efficiency",
                "one_minus_alpha",
                "gain",
                "p_single_gflops",
            ]);
            for r in &rows {
                table.row(vec![
                    r.record.name.clone(),
                    r.record.year.to_string(),
                    r.record.rank.map_or_else(String::new, |v| v.to_string()),
                    r.record.cores.to_string(),
                    r.record.benchmark.to_string(),
                    r.record.accelerator.to_string(),
                    short(r.efficiency),
                    short(r.one_minus_alpha),
                    gain_cell(r.gain, mode),
                    short(r.p_single),
                ]);
            }
            print!("{}", table.render());
            for section in &sections {
                println!();
                println!("benchmark {}:", section.benchmark);
                let mut fits = Table::new(&[
                    "fit (log10 y vs rank)",
                    "slope",
                    "intercept",
                    "r_squared",
                    "points",
                ]);
                let mut have_fits = false;
                for (name, fit) in [
                    ("cores, all ranked", &section.fit_cores),
                    (&format!("cores, rank <= {top}"), &section.fit_cores_top),
                    ("one_minus_alpha, all ranked", &section.fit_oma),
                    (
                        &format!("one_minus_alpha, rank <= {top}"),
                        &section.fit_oma_top,
                    ),
                ] {
                    if let Some(f) = fit {
                        have_fits = true;
                        fits.row(vec![
                            name.to_string(),
                            short(f.slope),
                            short(f.intercept),
                            short(f.r_squared),
                            f.n_points.to_string(),
                        ]);
                    }
                }
                if have_fits {
                    print!("{}", fits.render());
                } else {
                    println!("no ranked records, rank regressions skipped");
                }
                println!();
                let mut class_table = Table::new(&[
                    "accelerator",
                    "records",
                    "median_p_single",
                    "median_gain",
                    "gain_vs_rank_slope",
                ]);
                for c in &section.classes {
                    class_table.row(vec![
                        c.class.to_string(),
                        c.count.to_string(),
                        short(c.median_p_single),
                        gain_cell(c.median_gain, mode),
                        c.gain_vs_rank
                            .map_or_else(|| "n/a".to_string(), |f| short(f.slope)),
                    ]);
                }
                print!("{}", class_table.render());
                for c in &section.classes {
                    for note in &c.notes {
                        eprintln!("note: {} {}: {note}", section.benchmark, c.class);
                    }
                }
            }
        }
        OutputMode::Csv => {
            println!("name,year,rank,cores,benchmark,accelerator,efficiency,one_minus_alpha,gain,p_single_gflops");
            for r in &rows {
                println!(
                    "{},{},{},{},{},{},{},{},{},{}",
                    r.record.name,
                    r.record.year,
                    r.record.rank.map_or_else(String::new, |v| v.to_string()),
                    r.record.cores,
                    r.record.benchmark,
                    r.record.accelerator,
                    full(r.efficiency),
                    full(r.one_minus_alpha),
                    gain_cell(r.gain, mode),
                    full(r.p_single)
                );
            }
        }
        OutputMode::Json => {
            let records_json: Vec<serde_json::Value> = rows
                .iter()
                .map(|r| {
                    json!({
                        "record": r.record,
                        "efficiency": r.efficiency,
                        "one_minus_alpha": r.one_minus_alpha,
                        "gain": r.gain,
                        "p_single_gflops": r.p_single,
                    })
                })
                .collect();
            let sections_json: Vec<serde_json::Value> = sections
                .iter()
                .map(|s| {
                    json!({
                        "benchmark": s.benchmark,
                        "regressions": {
                            "cores_vs_rank": s.fit_cores,
                            "cores_vs_rank_top": s.fit_cores_top,
                            "one_minus_alpha_vs_rank": s.fit_oma,
                            "one_minus_alpha_vs_rank_top": s.fit_oma_top,
                            "top": top,
                        },
                        "accelerator_classes": s.classes,
                    })
                })
                .collect();
            let doc = json!({
                "records": records_json,
                "by_benchmark": sections_json,
            });
            println!("{}", serde_json::to_string_pretty(&doc)?);
        }
    }
    Ok(())
}

// ---- trend -------------------------------------------------------------------

pub fn trend(file: &Path, mode: OutputMode) -> anyhow::Result<()> {
    let records = load_records(file)?;
    let trend = trend_over_years(&records)?;
    match mode {
        OutputMode::Text => {
            let mut table = Table::new(&["year", "name", "cores", "one_minus_alpha"]);
            for b in &trend.per_year {
                table.row(vec![
                    b.year.to_string(),
                    b.name.clone(),
                    b.cores.to_string(),
                    short(b.one_minus_alpha),
                ]);
            }
            print!("{}", table.render());
            println!(
                "trend: slope {:.6e} decades/year, intercept {:.6e}, r_squared {:.6}",
                trend.fit.slope, trend.fit.intercept, trend.fit.r_squared
            );
        }
        OutputMode::Csv => {
            println!("year,name,cores,one_minus_alpha");
            for b in &trend.per_year {
                println!(
                    "{},{},{},{}",
                    b.year,
                    b.name,
                    b.cores,
                    full(b.one_minus_alpha)
                );
            }
            eprintln!(
                "trend: slope {} decades/year, intercept {}, r_squared {}",
                full(trend.fit.slope),
                full(trend.fit.intercept),
                full(trend.fit.r_squared)
            );
        }
        OutputMode::Json => {
            println!("{}", serde_json::to_string_pretty(&trend)?);
        }
    }
    Ok(())
}

// ---- predict -----------------------------------------------------------------

pub fn predict(
    file: &Path,
    row: &str,
    rpeak: &str,
    log: bool,
    mode: OutputMode,
) -> anyhow::Result<()> {
    let records = load_records(file)?;
    let base = records
        .iter()
        .find(|r| r.name == row)
        .ok_or_else(|| {
            let names: Vec<&str> = records.iter().map(|r| r.name.as_str()).collect();
            anyhow!("no record named `{row}` (available: {})", names.join(", "))
        })?;
    let (min, max, n) = parse_sweep_spec(rpeak)?;
    if !(min > 0.0 && max > min && n >= 2) {
        bail!("--rpeak requires 0 < MIN < MAX and N >= 2");
    }
    let r_peaks = if log {
        perfwall::contrib::log_spaced(min, max, n)
    } else {
        perfwall::contrib::linear_spaced(min, max, n)
    };
    let curve = analysis::predict(base, &r_peaks)?;
    for s in &curve.skipped {
        eprintln!("note: r_peak {:.6e} skipped: {}", s.r_peak, s.reason);
    }
    match mode {
        OutputMode::Text => {
            println!(
                "base: {} (cores {}, p_single {:.6e} Gflop/s, one_minus_alpha {:.6e})",
                curve.base_name,
                base.cores,
                curve.p_single,
                curve.one_minus_alpha
            );
            match curve.asymptote_gflops {
                Some(a) => println!("asymptote: {a:.6e} Gflop/s (optimistic, frozen alpha)"),
                None => println!("asymptote: unbounded (zero serial fraction)"),
            }
            let mut table = Table::new(&["r_peak_gflops", "r_max_gflops"]);
            for s in &curve.samples {
                table.row(vec![short(s.r_peak), short(s.r_max)]);
            }
            print!("{}", table.render());
        }
        OutputMode::Csv => {
            println!("r_peak_gflops,r_max_gflops");
            for s in &curve.samples {
                println!("{},{}", full(s.r_peak), full(s.r_max));
            }
        }
        OutputMode::Json => {
            println!("{}", serde_json::to_string_pretty(&curve)?);
        }
    }
    Ok(())
}

// ---- roofline ----------------------------------------------------------------

pub fn roofline(file: &Path, brain_gain: f64, mode: OutputMode) -> anyhow::Result<()> {
    let records = load_records(file)?;
    if records.is_empty() {
        bail!("no valid records in {}", file.display());
    }
    let roofs = analysis::roofline(&records, brain_gain);
    match mode {
        OutputMode::Text => {
            let mut table = Table::new(&["class", "roof_gain", "source", "supporting_records"]);
            for level in &roofs.levels {
                let source = match &level.source {
                    analysis::RoofSource::Measured { record } => format!("measured ({record})"),
                    analysis::RoofSource::Constant => "constant".to_string(),
                };
                table.row(vec![
                    level.class.clone(),
                    short(level.gain),
                    source,
                    level.supporting_records.to_string(),
                ]);
            }
            print!("{}", table.render());
            println!(
                "roof ordering (highest to lowest): {}",
                if roofs.expected_ordering {
                    "as expected"
                } else {
                    "NOT in the expected order"
                }
            );
            for note in &roofs.notes {
                eprintln!("note: {note}");
            }
        }
        OutputMode::Csv => {
            println!("class,roof_gain,source,supporting_records");
            for level in &roofs.levels {
                let source = match &level.source {
                    analysis::RoofSource::Measured { .. } => "measured",
                    analysis::RoofSource::Constant => "constant",
                };
                println!(
                    "{},{},{},{}",
                    level.class,
                    full(level.gain),
                    source,
                    level.supporting_records
                );
            }
        }
        OutputMode::Json => {
            println!("{}", serde_json::to_string_pretty(&roofs)?);
        }
    }
    Ok(())
}

// ---- surface -----------------------------------------------------------------

pub fn surface(
    alpha_range: &str,
    k_range: &str,
    grid: &str,
    mode: OutputMode,
) -> anyhow::Result<()> {
    let alpha = parse_pair(alpha_range, "--alpha-range")?;
    let k = parse_pair(k_range, "--k-range")?;
    let grid = parse_grid(grid)?;
    let nodes = efficiency_surface(alpha, k, grid)?;
    match mode {
        OutputMode::Text => {
            let mut table = Table::new(&["one_minus_alpha", "k", "efficiency"]);
            for n in &nodes {
                table.row(vec![short(n.one_minus_alpha), short(n.k), short(n.efficiency)]);
            }
            print!("{}", table.render());
        }
        OutputMode::Csv => {
            println!("one_minus_alpha,k,efficiency");
            for n in &nodes {
                println!("{},{},{}", full(n.one_minus_alpha), full(n.k), full(n.efficiency));
            }
        }
        OutputMode::Json => {
            println!("{}", serde_json::to_string_pretty(&nodes)?);
        }
    }
    Ok(())
}
