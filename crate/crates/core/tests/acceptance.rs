//! End-to-end acceptance checks. Each test covers one numbered criterion and
//! prints a `[PASS] criterion N` line (visible with `--nocapture`); a failed
//! assertion fails the corresponding criterion.
//!
//! Expected values marked "frozen from the dense-grid oracle" were computed
//! by the independent scan in `dense_grid_peak` below before the library
//! implementation existed, and must not be regenerated from library output.

use perfwall::amdahl::{
    alpha_from_efficiency, efficiency, gain, AlphaFraction, Efficiency,
};
use perfwall::contrib::{MachineSpec, PeakLocation};
use perfwall::dataset::{
    alpha_delta, fit_regression, group_by_accelerator, Accelerator, Benchmark, BenchmarkRecord,
    Transform,
};
use perfwall::sim::validate_against_closed_form;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rel_err(actual: f64, expected: f64) -> f64 {
    if expected == 0.0 {
        actual.abs()
    } else {
        ((actual - expected) / expected).abs()
    }
}

/// The reference machine of the payload-breakdown reproduction: 1 GHz,
/// 100 Gflop/s per processor, 2e13 benchmark clocks, one 1e4-cycle context
/// switch per run, no cable.
fn reference_machine(alpha_sw: f64) -> MachineSpec {
    let mut spec = MachineSpec::new(1.0, 100.0, 2e13);
    spec.context_switch_cycles = 1e4;
    spec.alpha_sw = alpha_sw;
    spec
}

/// Independent model evaluation for the dense-grid oracle: recomposes the
/// serial fraction directly from the raw constants, bypassing the library's
/// breakdown and peak machinery.
fn oracle_r_max(r_peak: f64, alpha_sw: f64) -> f64 {
    let p = 100.0;
    let clocks = 2e13;
    let ctx = 1e4;
    let k = (r_peak / p).max(1.0);
    let total = alpha_sw + ctx / clocks + k / clocks;
    r_peak / (1.0 + (k - 1.0) * total)
}

/// Brute-force peak scan at 1e5 Gflop/s (1e-4 Eflop/s) resolution.
fn dense_grid_peak(alpha_sw: f64) -> (f64, f64) {
    let (mut best_x, mut best_r) = (1e6, oracle_r_max(1e6, alpha_sw));
    let mut x = 1e6;
    while x <= 1.1e9 {
        let r = oracle_r_max(x, alpha_sw);
        if r > best_r {
            best_x = x;
            best_r = r;
        }
        x += 1e5;
    }
    (best_x, best_r)
}

#[test]
fn criterion_1_taihulight_cross_check() {
    let e = Efficiency::new(0.7415, 10_649_600).unwrap();
    let alpha = alpha_from_efficiency(e).unwrap();
    let one_minus = alpha.one_minus();
    assert!(
        rel_err(one_minus, 3.273e-8) < 0.01,
        "(1-alpha) = {one_minus}, expected within 1% of 3.273e-8"
    );
    let g = gain(alpha).unwrap().value();
    assert!(
        rel_err(g, 3.06e7) < 0.01,
        "gain = {g}, expected within 1% of 3.06e7"
    );
    println!(
        "[PASS] criterion 1: (E=0.7415, k=10649600) -> (1-alpha) = {one_minus:.4e}, gain = {g:.4e}"
    );
}

#[test]
fn criterion_2_gyoukou_summit_fixtures() {
    let fixtures = [(2_500_000u64, 1.9e-7), (2_400_000u64, 1.7e-7)];
    for (cores, one_minus) in fixtures {
        let alpha = AlphaFraction::from_one_minus(one_minus).unwrap();
        let e = efficiency(alpha, cores).unwrap();
        let back = alpha_from_efficiency(e).unwrap();
        let err = rel_err(back.one_minus(), one_minus);
        assert!(
            err <= 1e-12,
            "round trip at (k={cores}, 1-alpha={one_minus}) drifted by {err:e}"
        );
    }
    let g_gyoukou = gain(AlphaFraction::from_one_minus(1.9e-7).unwrap())
        .unwrap()
        .value();
    let g_summit = gain(AlphaFraction::from_one_minus(1.7e-7).unwrap())
        .unwrap()
        .value();
    assert_eq!(
        g_summit / g_gyoukou,
        1.9 / 1.7,
        "gain ratio must equal 1.9/1.7 exactly"
    );
    println!(
        "[PASS] criterion 2: fixtures round-trip to 1e-12; gain ratio {} = 1.9/1.7 exactly",
        g_summit / g_gyoukou
    );
}

#[test]
fn criterion_3_payload_breakdown_reproduction() {
    // Frozen from the dense-grid oracle (1e-4 Eflop/s resolution plus local
    // refinement), computed before the sweep implementation.
    const ORACLE_HPL: (f64, f64) = (4.472135995523741e8, 2.138060826807572e8);
    const ORACLE_HPCG: (f64, f64) = (4.4721316222819257e8, 4.085446128248714e7);
    let one_over_sqrt5_eflops = 1e9 / 5f64.sqrt();

    for (alpha_sw, frozen, printed_r_max, label) in [
        (2e-8, ORACLE_HPL, 0.2138e9, "best-case benchmark class"),
        (2e-6, ORACLE_HPCG, 0.0409e9, "real-life benchmark class"),
    ] {
        let (grid_x, grid_r) = dense_grid_peak(alpha_sw);
        assert!(
            rel_err(grid_x, frozen.0) < 3e-4,
            "dense grid peak {grid_x} disagrees with frozen value {}",
            frozen.0
        );
        assert!(rel_err(grid_r, frozen.1) < 1e-6);

        let spec = reference_machine(alpha_sw);
        let curve = spec.sweep_payload(1e6, 1.1e9, 500, true).unwrap();
        assert!(
            rel_err(curve.peak_r_peak, one_over_sqrt5_eflops) < 1e-3,
            "peak at {} Gflop/s, expected 1/sqrt(5) Eflop/s within 0.1%",
            curve.peak_r_peak
        );
        assert!(rel_err(curve.peak_r_peak, frozen.0) < 1e-6);
        assert!(rel_err(curve.peak_r_max, frozen.1) < 1e-6);
        assert!(
            rel_err(curve.peak_r_max, printed_r_max) < 2e-3,
            "peak r_max {} vs published {printed_r_max}",
            curve.peak_r_max
        );

        // Payload breaks down approaching 1 Eflop/s nominal.
        let at_one_eflops = spec.payload_at(1e9).unwrap();
        assert!(at_one_eflops < curve.peak_r_max, "{label}");
    }
    println!(
        "[PASS] criterion 3: sweep peak at 1/sqrt(5) Eflop/s +/- 0.1%; r_max 0.2138 / 0.0409 Eflop/s vs dense-grid oracle"
    );
}

#[test]
fn criterion_4_peak_location_invariance() {
    let mut peaks = Vec::new();
    for alpha_sw in [0.0, 2e-8, 2e-6] {
        match reference_machine(alpha_sw).peak_location().unwrap() {
            PeakLocation::Finite { r_peak, .. } => peaks.push(r_peak),
            PeakLocation::Unbounded => panic!("expected a finite wall"),
        }
    }
    for pair in peaks.windows(2) {
        assert!(
            rel_err(pair[0], pair[1]) <= 1e-6,
            "wall moved between software fractions: {} vs {}",
            pair[0],
            pair[1]
        );
    }
    // Cross-check the closed form against the sweep-located peak.
    for alpha_sw in [0.0, 2e-8, 2e-6] {
        let spec = reference_machine(alpha_sw);
        let PeakLocation::Finite { r_peak, r_max } = spec.peak_location().unwrap() else {
            unreachable!()
        };
        let curve = spec.sweep_payload(1e6, 1.1e9, 300, true).unwrap();
        assert!(rel_err(r_peak, curve.peak_r_peak) < 1e-3);
        assert!(rel_err(r_max, curve.peak_r_max) < 1e-3);
    }
    println!(
        "[PASS] criterion 4: wall location {:.6e} Gflop/s invariant over alpha_sw in {{0, 2e-8, 2e-6}}",
        peaks[0]
    );
}

#[test]
fn criterion_5_simulator_oracle_equivalence() {
    let k_values: Vec<u64> = (0..=20).map(|e| 1u64 << e).collect();
    let mut worst = 0.0f64;
    for alpha in [0.0, 0.5, 0.9, 0.99, 0.999999] {
        let a = AlphaFraction::from_alpha(alpha).unwrap();
        let report = validate_against_closed_form(a, &k_values, 1e-9).unwrap();
        assert!(
            report.passed,
            "alpha = {alpha}: max deviation {} at k = {}",
            report.max_deviation, report.worst_k
        );
        worst = worst.max(report.max_deviation);
    }
    println!(
        "[PASS] criterion 5: simulator vs closed form over 5 alphas x k in 1..2^20, max relative deviation {worst:e} <= 1e-9"
    );
}

#[test]
fn criterion_6_trend_anchor_slope_exact() {
    let anchors = [(1993.0, 1e-3), (2018.0, 1e-7)];
    let fit = fit_regression(&anchors, Transform::LogY).unwrap();
    assert_eq!(fit.slope, -0.16, "two-point fit must be exact");
    assert_eq!(fit.r_squared, 1.0);

    // Flat and exact-exponential sanity companions.
    let flat = fit_regression(&[(2000.0, 1e-5), (2010.0, 1e-5)], Transform::LogY).unwrap();
    assert_eq!(flat.slope, 0.0);
    println!("[PASS] criterion 6: anchor points (1993, 1e-3), (2018, 1e-7) -> slope exactly -0.16 decades/year");
}

#[test]
fn criterion_7_alpha_delta_recovery() {
    // Four-decade k spans, placed where each serial fraction is resolvable.
    let cases: [(f64, f64, f64); 3] = [
        (0.9, 1e1, 1e5),
        (0.999, 1e2, 1e6),
        (0.9999999, 1e4, 1e8),
    ];
    let mut worst_exact = 0.0f64;
    for &(alpha, k_lo, k_hi) in &cases {
        let one_minus = 1.0 - alpha;
        let points: Vec<(f64, f64)> = (0..13)
            .map(|i| {
                let k = k_lo * (k_hi / k_lo).powf(i as f64 / 12.0);
                (k, 1.0 / (1.0 + (k - 1.0) * one_minus))
            })
            .collect();
        let fit = alpha_delta(&points).unwrap();
        let err = rel_err(fit.slope, one_minus);
        assert!(
            err <= 1e-13,
            "alpha = {alpha}: slope {} vs {one_minus}, rel err {err:e}",
            fit.slope
        );
        worst_exact = worst_exact.max(err);
    }

    // 0.1% multiplicative noise on E: recovery within 1%.
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst_noisy = 0.0f64;
    for &(alpha, k_lo, k_hi) in &cases {
        let one_minus = 1.0 - alpha;
        let points: Vec<(f64, f64)> = (0..13)
            .map(|i| {
                let k = k_lo * (k_hi / k_lo).powf(i as f64 / 12.0);
                let noise = 1.0 + 0.001 * (2.0 * rng.random::<f64>() - 1.0);
                (k, (1.0 / (1.0 + (k - 1.0) * one_minus) * noise).min(1.0))
            })
            .collect();
        let fit = alpha_delta(&points).unwrap();
        let err = rel_err(fit.slope, one_minus);
        assert!(err <= 0.01, "noisy alpha = {alpha}: rel err {err}");
        worst_noisy = worst_noisy.max(err);
    }
    println!(
        "[PASS] criterion 7: 1/E-vs-k slope recovery, exact to {worst_exact:e}, with 0.1% noise to {worst_noisy:.2e}"
    );
}

/// Ranked 2017 per-processor performance (Gflop/s) by accelerator class.
const PROC_PERF_GPU: [(u32, f64); 9] = [
    (3, 70.0),
    (5, 48.4),
    (27, 84.2),
    (28, 84.2),
    (30, 83.9),
    (33, 36.7),
    (39, 79.4),
    (40, 25.2),
    (49, 69.4),
];

const PROC_PERF_PLAIN: [(u32, f64); 38] = [
    (1, 11.78),
    (5, 12.8),
    (6, 44.8),
    (7, 44.8),
    (8, 16.1),
    (9, 12.8),
    (10, 36.8),
    (11, 33.6),
    (12, 52.9),
    (13, 66.96),
    (14, 44.8),
    (15, 29.5),
    (16, 41.6),
    (17, 40.0),
    (18, 36.8),
    (19, 30.4),
    (20, 18.4),
    (21, 12.8),
    (22, 36.8),
    (23, 12.8),
    (24, 36.8),
    (25, 33.6),
    (26, 33.6),
    (29, 26.8),
    (31, 31.6),
    (32, 21.6),
    (34, 35.2),
    (35, 21.6),
    (36, 41.6),
    (37, 33.6),
    (38, 33.6),
    (41, 35.4),
    (43, 36.8),
    (44, 41.6),
    (45, 41.6),
    (46, 31.6),
    (47, 40.0),
    (48, 35.2),
];

const PROC_PERF_COPROC: [(u32, f64); 3] = [(2, 9.37), (42, 9.25), (50, 9.37)];

/// Ranked 2017 performance gains by accelerator class.
const GAIN_GPU: [(u32, f64); 9] = [
    (3, 0.124e7),
    (4, 0.104e7),
    (27, 0.102e6),
    (28, 0.114e6),
    (30, 0.162e6),
    (33, 0.192e6),
    (39, 0.735e5),
    (40, 0.224e6),
    (49, 0.104e6),
];

const GAIN_PLAIN: [(u32, f64); 38] = [
    (1, 0.306e8),
    (5, 0.909e7),
    (6, 0.629e6),
    (7, 0.662e6),
    (8, 0.961e7),
    (9, 0.457e7),
    (10, 0.820e6),
    (11, 0.156e7),
    (12, 0.275e6),
    (13, 0.248e6),
    (14, 0.327e6),
    (15, 0.124e7),
    (16, 0.364e6),
    (17, 0.595e6),
    (18, 0.641e6),
    (19, 0.820e6),
    (20, 0.610e6),
    (21, 0.266e7),
    (22, 0.128e7),
    (23, 0.228e7),
    (24, 0.444e6),
    (25, 0.164e7),
    (26, 0.164e7),
    (29, 0.329e6),
    (31, 0.107e7),
    (32, 0.408e6),
    (34, 0.192e6),
    (35, 0.8e6),
    (36, 0.316e6),
    (37, 0.116e7),
    (38, 0.116e7),
    (41, 0.373e6),
    (43, 0.207e6),
    (44, 0.334e6),
    (45, 0.334e6),
    (46, 0.806e6),
    (47, 0.216e6),
    (48, 0.426e6),
];

const GAIN_COPROC: [(u32, f64); 3] = [(2, 0.943e7), (42, 0.110e7), (50, 0.676e6)];

/// Encodes a ranked per-processor performance into a benchmark record.
fn record_with_p_single(rank: u32, p_single: f64, accelerator: Accelerator) -> BenchmarkRecord {
    let cores = 1000u64;
    let r_peak = p_single * cores as f64;
    BenchmarkRecord {
        name: format!("perf-{accelerator}-{rank}"),
        year: 2017,
        rank: Some(rank),
        cores,
        r_peak,
        r_max: r_peak * 0.5,
        benchmark: Benchmark::Hpl,
        accelerator,
    }
}

/// Encodes a ranked gain into a benchmark record.
fn record_with_gain(rank: u32, gain_value: f64, accelerator: Accelerator) -> BenchmarkRecord {
    let cores = 1_000_000u64;
    let one_minus = 1.0 / gain_value;
    let e = 1.0 / (1.0 + (cores as f64 - 1.0) * one_minus);
    let r_peak = 1e9;
    BenchmarkRecord {
        name: format!("gain-{accelerator}-{rank}"),
        year: 2017,
        rank: Some(rank),
        cores,
        r_peak,
        r_max: r_peak * e,
        benchmark: Benchmark::Hpl,
        accelerator,
    }
}

#[test]
fn criterion_8_accelerator_medians() {
    let mut perf_records = Vec::new();
    for (rank, v) in PROC_PERF_GPU {
        perf_records.push(record_with_p_single(rank, v, Accelerator::Gpu));
    }
    for (rank, v) in PROC_PERF_PLAIN {
        perf_records.push(record_with_p_single(rank, v, Accelerator::None));
    }
    for (rank, v) in PROC_PERF_COPROC {
        perf_records.push(record_with_p_single(rank, v, Accelerator::Coprocessor));
    }
    let summaries = group_by_accelerator(&perf_records);
    let median_of = |class: Accelerator| {
        summaries
            .iter()
            .find(|s| s.class == class)
            .unwrap_or_else(|| panic!("missing class {class}"))
            .median_p_single
    };
    let ratio = median_of(Accelerator::Gpu) / median_of(Accelerator::None);
    assert!(
        (2.0..=3.0).contains(&ratio),
        "GPU/plain processor-performance median ratio {ratio} outside [2, 3]"
    );

    let mut gain_records = Vec::new();
    for (rank, v) in GAIN_GPU {
        gain_records.push(record_with_gain(rank, v, Accelerator::Gpu));
    }
    for (rank, v) in GAIN_PLAIN {
        gain_records.push(record_with_gain(rank, v, Accelerator::None));
    }
    for (rank, v) in GAIN_COPROC {
        gain_records.push(record_with_gain(rank, v, Accelerator::Coprocessor));
    }
    let summaries = group_by_accelerator(&gain_records);
    let gain_median = |class: Accelerator| {
        summaries
            .iter()
            .find(|s| s.class == class)
            .and_then(|s| s.median_gain)
            .unwrap_or_else(|| panic!("missing gain median for {class}"))
    };
    let gpu = gain_median(Accelerator::Gpu);
    let plain = gain_median(Accelerator::None);
    assert!(
        gpu < plain,
        "GPU median gain {gpu} should sit below non-accelerated {plain}"
    );
    println!(
        "[PASS] criterion 8: GPU/plain median processor performance ratio {ratio:.3} in [2, 3]; GPU median gain {gpu:.3e} < plain {plain:.3e}"
    );
}

#[test]
fn criterion_9_prediction_properties() {
    // The published TOP10 saturation level depends on untabulated inputs, so
    // the quantitative check is replaced by self-consistency and saturation
    // shape, per the acceptance terms.
    let cores = 2_400_000u64;
    let one_minus = 1.7e-7;
    let e = 1.0 / (1.0 + (cores as f64 - 1.0) * one_minus);
    let r_peak = 4.8e7;
    let base = BenchmarkRecord {
        name: "base".into(),
        year: 2018,
        rank: Some(1),
        cores,
        r_peak,
        r_max: r_peak * e,
        benchmark: Benchmark::Hpl,
        accelerator: Accelerator::None,
    };

    let through_base = perfwall::analysis::predict(&base, &[base.r_peak]).unwrap();
    assert!(
        rel_err(through_base.samples[0].r_max, base.r_max) <= 1e-12,
        "prediction through the base point must return the base payload"
    );

    let r_peaks: Vec<f64> = (0..60).map(|i| r_peak * 1.2f64.powi(i)).collect();
    let curve = perfwall::analysis::predict(&base, &r_peaks).unwrap();
    let asymptote = curve.asymptote_gflops.unwrap();
    let mut prev = 0.0;
    for s in &curve.samples {
        assert!(s.r_max > prev, "strictly increasing");
        assert!(s.r_max < asymptote, "below the asymptote");
        prev = s.r_max;
    }
    for w in curve.samples.windows(3) {
        // Concavity: the middle sample lies on or above the chord of its
        // neighbors, evaluated at its own nominal performance.
        let t = (w[1].r_peak - w[0].r_peak) / (w[2].r_peak - w[0].r_peak);
        let chord = w[0].r_max + t * (w[2].r_max - w[0].r_max);
        assert!(w[1].r_max >= chord - 1e-9 * asymptote, "concave saturation");
    }
    assert!(
        curve.samples.last().unwrap().r_max > 0.99 * asymptote,
        "approaches the asymptote from below"
    );
    println!(
        "[PASS] criterion 9: prediction self-consistency at 1e-12 and monotone concave saturation toward {asymptote:.4e} Gflop/s"
    );
}

#[test]
fn criterion_10_property_suite_compact() {
    // Round trips.
    let mut worst = 0.0f64;
    for &one_minus in &[1e-9, 3.273e-8, 1.7e-7, 1e-5, 1e-3, 0.5, 1.0] {
        for &k in &[2u64, 64, 10_000, 10_649_600, 100_000_000] {
            let a = AlphaFraction::from_one_minus(one_minus).unwrap();
            let via_e = alpha_from_efficiency(efficiency(a, k).unwrap()).unwrap();
            worst = worst.max(rel_err(via_e.one_minus(), one_minus));
            let via_s =
                perfwall::amdahl::alpha_eff_from_speedup(perfwall::amdahl::speedup_from_alpha(a, k).unwrap())
                    .unwrap();
            worst = worst.max(rel_err(via_s.one_minus(), one_minus));
        }
    }
    assert!(worst <= 1e-12, "round-trip drift {worst:e}");

    // Additivity and clock-doubling scaling.
    let mut spec = reference_machine(2e-8);
    spec.cable_distance_m = 100.0;
    let b = spec.total_sequential_fraction(1e6).unwrap();
    assert_eq!(b.total, b.sw + b.os_context + b.addressing + b.propagation);
    let mut doubled = spec.clone();
    doubled.benchmark_clocks *= 2.0;
    let d = doubled.total_sequential_fraction(1e6).unwrap();
    assert_eq!(d.os_context, b.os_context / 2.0);
    assert_eq!(d.addressing, b.addressing / 2.0);
    assert_eq!(d.propagation, b.propagation / 2.0);
    assert_eq!(d.sw, b.sw);

    // Regression permutation invariance (bitwise).
    let points = [(1.0, 2.1), (2.0, 3.9), (3.0, 6.2), (4.0, 8.1), (5.0, 9.8)];
    let reference = fit_regression(&points, Transform::Linear).unwrap();
    let mut reversed = points;
    reversed.reverse();
    let permuted = fit_regression(&reversed, Transform::Linear).unwrap();
    assert_eq!(reference.slope.to_bits(), permuted.slope.to_bits());
    assert_eq!(reference.intercept.to_bits(), permuted.intercept.to_bits());

    // Prediction concavity/asymptote are exercised in criterion 9; re-run the
    // base identity here to keep this suite self-contained.
    let base = BenchmarkRecord {
        name: "p".into(),
        year: 2017,
        rank: None,
        cores: 1000,
        r_peak: 1e6,
        r_max: 5e5,
        benchmark: Benchmark::Hpl,
        accelerator: Accelerator::None,
    };
    let curve = perfwall::analysis::predict(&base, &[1e6]).unwrap();
    assert!(rel_err(curve.samples[0].r_max, 5e5) <= 1e-12);

    println!("[PASS] criterion 10: round trips, additivity/scaling, permutation invariance, prediction identity");
}
