use std::f64::consts::{E, FRAC_1_SQRT_2, TAU};
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::config::{ExperimentConfig, ExperimentKind};
use super::montecarlo::{agrees_to_three_digits, StratifiedOracle};
use super::report::{BlowupConstants, Check, ExperimentReport, StepRecord, Verdict};
use crate::divided_difference::{
    classify_trace, derivative_by_limit_with, support_bound_of, CurveMap, DividedDifferences, Gauge, LimitCriteria,
    LimitVerdict, NodeTuple, ShrinkSchedule,
};
use crate::error::{Error, Result};
use crate::maps::{annulus_map, ExampleId, ExampleMap};
use crate::measure::{annulus, erf, lower_left_quadrant, mu_grid, mu_radial, vertical_strip, Region, SetOp};

/// Number of trailing steps used for log-log slope fits.
pub const SLOPE_WINDOW: usize = 10;
/// Allowed deviation of a fitted slope from its predicted value.
pub const SLOPE_TOL: f64 = 0.05;
/// Last halving exponent tried when chasing the second-difference blow-up.
pub const MAX_BLOWUP_STEPS: usize = 480;

const DEFAULT_CENTER_COUNT: usize = 5;
const SHRINKING_PAIRS: usize = 8;
const RANDOM_PAIRS: usize = 200;

struct Run {
    steps: Vec<StepRecord>,
    checks: Vec<Check>,
}

impl Run {
    fn new() -> Self {
        Self { steps: Vec::new(), checks: Vec::new() }
    }

    fn check(&mut self, name: impl Into<String>, verdict: Verdict, detail: impl Into<String>) {
        self.checks.push(Check::new(name, verdict, detail));
    }

    fn finish(self, cfg: ExperimentConfig, success: Verdict, constants: Option<BlowupConstants>, start: Instant) -> ExperimentReport {
        let verdict = Verdict::combine(self.checks.iter().map(|c| c.verdict), success);
        ExperimentReport {
            config: cfg,
            steps: self.steps,
            verdict,
            checks: self.checks,
            constants,
            wall_time_ms: start.elapsed().as_millis() as u64,
        }
    }
}

fn prepare(cfg: &ExperimentConfig, kind: ExperimentKind) -> Result<ExperimentConfig> {
    let cfg = ExperimentConfig { experiment: kind, ..cfg.clone() };
    cfg.check_runnable()?;
    Ok(cfg)
}

fn example_map(cfg: &ExperimentConfig) -> Result<ExampleMap> {
    let id = cfg.example.ok_or_else(|| Error::InvalidConfig(format!("{} needs an example", cfg.experiment)))?;
    ExampleMap::new(id, cfg.p)
}

/// Independent stream per purpose so adding one sampler never shifts another.
fn rng(cfg: &ExperimentConfig, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(cfg.seed);
    r.set_stream(stream);
    r
}

fn random_point(r: &mut ChaCha8Rng, real: bool) -> Complex64 {
    let re = r.random_range(-2.0..2.0);
    let im = if real { 0.0 } else { r.random_range(-2.0..2.0) };
    Complex64::new(re, im)
}

fn centers(cfg: &ExperimentConfig, real: bool) -> Vec<Complex64> {
    if !cfg.centers.is_empty() {
        return cfg.centers.iter().map(|c| if real { Complex64::new(c.re, 0.0) } else { *c }).collect();
    }
    let mut r = rng(cfg, 1);
    (0..DEFAULT_CENTER_COUNT).map(|_| random_point(&mut r, real)).collect()
}

fn criteria(cfg: &ExperimentConfig) -> LimitCriteria {
    LimitCriteria {
        convergence_tol: cfg.tolerances.convergence,
        divergence_ceiling: cfg.tolerances.divergence_ceiling,
        ..LimitCriteria::default()
    }
}

fn engine(cfg: &ExperimentConfig) -> DividedDifferences {
    DividedDifferences::new(cfg.tolerances.coefficient_zero)
}

fn max_distance(t: &NodeTuple, z: Complex64) -> f64 {
    t.nodes().iter().map(|w| (w - z).norm()).fold(0.0, f64::max)
}

/// Least-squares slope of `ys` against `xs`.
pub fn fitted_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
    }
    sxy / sxx
}

/// Slope of `log2 gauge` against `log2 scale` over the last [`SLOPE_WINDOW`]
/// entries; `None` when the window is short or touches a zero gauge.
fn tail_log_slope(scales: &[f64], gauges: &[f64]) -> Option<f64> {
    if gauges.len() < SLOPE_WINDOW {
        return None;
    }
    let from = gauges.len() - SLOPE_WINDOW;
    let (s, g) = (&scales[from..], &gauges[from..]);
    if g.iter().chain(s).any(|v| *v <= 0.0) {
        return None;
    }
    let xs: Vec<f64> = s.iter().map(|v| v.log2()).collect();
    let ys: Vec<f64> = g.iter().map(|v| v.log2()).collect();
    Some(fitted_slope(&xs, &ys))
}

fn limit_verdict(trace_verdict: LimitVerdict, expected: LimitVerdict, steps: usize, c: &LimitCriteria) -> Verdict {
    if trace_verdict == expected {
        Verdict::Pass
    } else if steps < c.tail.max(2) {
        Verdict::Inconclusive
    } else {
        Verdict::Fail
    }
}

/// `g_n = f<z_{n,0}, …, z_{n,k}>` along a shrinking schedule at one center.
fn smoothness_at(
    run: &mut Run,
    cfg: &ExperimentConfig,
    map: &ExampleMap,
    center: Complex64,
    schedule: &ShrinkSchedule,
    phase: &str,
) -> Result<()> {
    let dd = engine(cfg);
    let mut trace = Vec::with_capacity(schedule.steps);
    let mut all_ok = true;
    for n in 1..=schedule.steps {
        let t = schedule.tuple_at(center, n)?;
        let g = dd.recursive(map, &t)?;
        let gauge = Gauge::L0.measure(&g)?;
        let support = support_bound_of(&t, map.family());
        let support_measure = support.region.measure();
        let bound = 4.0 * max_distance(&t, center);
        let ok = g.supported_in(&support)? && gauge <= support_measure * (1.0 + 1e-12) && support_measure <= bound;
        all_ok &= ok;
        trace.push(gauge);
        run.steps.push(
            StepRecord::new(n, t.nodes().to_vec(), gauge, bound, ok)
                .phase(phase)
                .center(center)
                .order(cfg.k)
                .support_measure(support_measure),
        );
    }
    let c = criteria(cfg);
    let tv = classify_trace(&trace, &c);
    let verdict = match limit_verdict(tv, LimitVerdict::ConvergedToZero, schedule.steps, &c) {
        Verdict::Pass if !all_ok => Verdict::Fail,
        v => v,
    };
    let last = trace.last().copied().unwrap_or(f64::NAN);
    run.check(
        format!("{phase} k={} at {center}", cfg.k),
        verdict,
        format!("trace {tv:?}, last gauge {last:.3e}, support checks {}", if all_ok { "ok" } else { "violated" }),
    );
    Ok(())
}

/// Divided differences of order `k` shrink to zero in `L⁰` and stay
/// supported near their nodes.
pub fn exp_smoothness(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let start = Instant::now();
    let cfg = prepare(cfg, ExperimentKind::Smoothness)?;
    let map = example_map(&cfg)?;
    let schedule = ShrinkSchedule::roots_of_unity(cfg.k).with_ratio(cfg.rho).with_steps(cfg.steps);
    schedule.validate(cfg.k)?;
    let mut run = Run::new();
    for z in centers(&cfg, false) {
        smoothness_at(&mut run, &cfg, &map, z, &schedule, "smoothness")?;
    }
    Ok(run.finish(cfg, Verdict::Pass, None, start))
}

/// Every derivative of the quadrant map vanishes, yet the map is injective:
/// a non-constant curve whose Taylor series is identically zero.
pub fn exp_taylor_failure(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let start = Instant::now();
    let cfg = prepare(cfg, ExperimentKind::TaylorFailure)?;
    let map = example_map(&cfg)?;
    let base = if cfg.centers.is_empty() {
        let mut r = rng(&cfg, 1);
        std::iter::once(Complex64::new(0.0, 0.0))
            .chain((1..DEFAULT_CENTER_COUNT).map(|_| random_point(&mut r, false)))
            .collect()
    } else {
        cfg.centers.clone()
    };
    let c = criteria(&cfg);
    let mut run = Run::new();
    for z0 in base {
        let a0 = lower_left_quadrant(z0);
        let mut witnesses_ok = true;
        for (i, r) in (1..=8).map(|e| (e, 10f64.powi(-e))) {
            let candidates = [
                z0 + Complex64::new(r, 0.0),
                z0 + Complex64::new(0.0, r),
                z0 + Complex64::new(r, r) * FRAC_1_SQRT_2,
            ];
            let found = candidates.iter().map(|&z| (z, a0.combine(&lower_left_quadrant(z), SetOp::SymmetricDifference).measure())).find(|(_, m)| *m > 0.0);
            let (z, m) = found.unwrap_or((candidates[0], 0.0));
            let bound = 2.0 * (z - z0).norm();
            let ok = m > 0.0 && m <= bound;
            witnesses_ok &= ok;
            run.steps.push(StepRecord::new(i as usize, vec![z0, z], m, bound, ok).phase("witness").center(z0));
        }
        run.check(
            format!("witnesses at {z0}"),
            if witnesses_ok { Verdict::Pass } else { Verdict::Fail },
            "f(z) != f(z0) at every radius 1e-1 .. 1e-8",
        );
        for k in 1..=4 {
            let schedule = ShrinkSchedule::roots_of_unity(k).with_ratio(cfg.rho).with_steps(cfg.steps);
            let report = derivative_by_limit_with(&map, z0, k, &schedule, Gauge::L0, &c, engine(&cfg))?;
            let mut bounds_ok = true;
            for (n, (t, g)) in report.tuples.iter().zip(&report.gauge_trace).enumerate() {
                let bound = 4.0 * max_distance(t, z0);
                let ok = *g <= bound;
                bounds_ok &= ok;
                run.steps.push(StepRecord::new(n + 1, t.nodes().to_vec(), *g, bound, ok).phase("derivative").center(z0).order(k));
            }
            let verdict = match limit_verdict(report.verdict, LimitVerdict::ConvergedToZero, cfg.steps, &c) {
                Verdict::Pass if !bounds_ok => Verdict::Fail,
                v => v,
            };
            run.check(format!("derivative k={k} at {z0}"), verdict, format!("trace {:?}", report.verdict));
        }
    }
    Ok(run.finish(cfg, Verdict::Pass, None, start))
}

/// The annulus map vanishes on `|z| >= 1` but not inside the unit disc,
/// although it is smooth everywhere.
pub fn exp_identity_theorem_failure(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let start = Instant::now();
    let cfg = prepare(cfg, ExperimentKind::IdentityTheoremFailure)?;
    let map = example_map(&cfg)?;
    let mut run = Run::new();

    let mut outside_ok = true;
    let mut inside_ok = true;
    let mut n = 0;
    for i in 0..10 {
        for j in 0..10 {
            let theta = TAU * j as f64 / 10.0;
            // outside: radii 1 .. 3; inside: radii 0.05 .. 0.95
            let (r_out, r_in) = (1.0 + 2.0 * i as f64 / 9.0, 0.05 + 0.1 * i as f64);
            let z_out = Complex64::from_polar(r_out, theta);
            let f_out = annulus_map(z_out);
            let g_out = f_out.l0_gauge();
            let ok_out = f_out.is_zero() && g_out == 0.0;
            outside_ok &= ok_out;
            n += 1;
            run.steps.push(StepRecord::new(n, vec![z_out], g_out, 0.0, ok_out).phase("outside"));

            let z_in = Complex64::from_polar(r_in, theta);
            let f_in = annulus_map(z_in);
            let g_in = f_in.l0_gauge();
            let closed = (-z_in.norm_sqr()).exp() - (-1f64).exp();
            let ok_in = !f_in.is_zero() && g_in > 0.0 && (g_in - closed).abs() <= 1e-12;
            inside_ok &= ok_in;
            n += 1;
            run.steps.push(StepRecord::new(n, vec![z_in], g_in, closed, ok_in).phase("inside").closed_form(closed));
        }
    }
    run.check("zero outside the unit disc", if outside_ok { Verdict::Pass } else { Verdict::Fail }, "100 points with |z| >= 1");
    run.check("nonzero inside the unit disc", if inside_ok { Verdict::Pass } else { Verdict::Fail }, "100 points with |z| <= 0.95");

    let smooth_centers = if cfg.centers.is_empty() {
        vec![Complex64::new(0.4, 0.0), Complex64::new(-0.3, 0.5), Complex64::new(1.5, 0.0), Complex64::new(0.0, -1.2)]
    } else {
        cfg.centers.clone()
    };
    let schedule = ShrinkSchedule::roots_of_unity(cfg.k).with_ratio(cfg.rho).with_steps(cfg.steps);
    schedule.validate(cfg.k)?;
    for z in smooth_centers {
        smoothness_at(&mut run, &cfg, &map, z, &schedule, "smoothness")?;
    }
    Ok(run.finish(cfg, Verdict::Pass, None, start))
}

fn first_differences(run: &mut Run, cfg: &ExperimentConfig, map: &ExampleMap, p: f64, real: bool) -> Result<()> {
    let dd = engine(cfg);
    let mut r = rng(cfg, 2);
    for pair in 0..SHRINKING_PAIRS {
        let z1 = random_point(&mut r, real);
        let dir = if real {
            Complex64::new(if r.random::<bool>() { 1.0 } else { -1.0 }, 0.0)
        } else {
            Complex64::from_polar(1.0, r.random_range(0.0..TAU))
        };
        let (mut scales, mut gauges) = (Vec::new(), Vec::new());
        let mut bounds_ok = true;
        for m in 1..=cfg.steps {
            let z2 = z1 + dir * cfg.rho.powi(m as i32);
            let t = NodeTuple::new(vec![z2, z1])?;
            let q = dd.recursive(map, &t)?;
            let gauge = q.lp_gauge(p)?;
            let dz = (z2 - z1).norm();
            let bound = dz.powf(1.0 - p);
            let ok = gauge <= bound * (1.0 + 1e-12);
            bounds_ok &= ok;
            scales.push(dz);
            gauges.push(gauge);
            run.steps.push(StepRecord::new(m, t.nodes().to_vec(), gauge, bound, ok).phase("A").center(z1));
        }
        let tail_ok = gauges.len() >= SLOPE_WINDOW && gauges[gauges.len() - SLOPE_WINDOW..].windows(2).all(|w| w[1] <= w[0]);
        let slope = tail_log_slope(&scales, &gauges);
        let verdict = match slope {
            _ if !bounds_ok => Verdict::Fail,
            None if gauges.len() < SLOPE_WINDOW => Verdict::Inconclusive,
            None => if gauges.iter().all(|g| *g == 0.0) { Verdict::Pass } else { Verdict::Fail },
            Some(s) if tail_ok && (s - (1.0 - p)).abs() <= SLOPE_TOL => Verdict::Pass,
            Some(_) => Verdict::Fail,
        };
        run.check(
            format!("first difference pair {pair}"),
            verdict,
            format!("slope {} vs {:.4}, tail non-increasing: {tail_ok}", slope.map_or("n/a".into(), |s| format!("{s:.4}")), 1.0 - p),
        );
    }

    let mut all_ok = true;
    for i in 0..RANDOM_PAIRS {
        let (z1, z2) = (random_point(&mut r, real), random_point(&mut r, real));
        if z1 == z2 {
            continue;
        }
        let t = NodeTuple::new(vec![z2, z1])?;
        let gauge = dd.recursive(map, &t)?.lp_gauge(p)?;
        let bound = (z2 - z1).norm().powf(1.0 - p);
        let ok = gauge <= bound * (1.0 + 1e-12);
        all_ok &= ok;
        run.steps.push(StepRecord::new(i + 1, t.nodes().to_vec(), gauge, bound, ok).phase("A-random"));
    }
    run.check(
        "first difference bound on random pairs",
        if all_ok { Verdict::Pass } else { Verdict::Fail },
        format!("gauge <= |z2 - z1|^{} on {RANDOM_PAIRS} pairs", 1.0 - p),
    );
    Ok(())
}

fn second_difference_blowup(run: &mut Run, cfg: &ExperimentConfig, map: &ExampleMap, p: f64) -> Result<BlowupConstants> {
    let dd = engine(cfg);
    let k = BlowupConstants::for_exponent(p);
    let ceiling = cfg.tolerances.divergence_ceiling;
    let (mut ts, mut gauges) = (Vec::new(), Vec::new());
    let mut all_ok = true;
    for m in 1..=MAX_BLOWUP_STEPS {
        let t = 0.5f64.powi(m as i32);
        let nodes = NodeTuple::real(&[t, 0.0, 2.0 * t])?;
        let g = dd.recursive(map, &nodes)?;
        let gauge = g.lp_gauge(p)?;
        let closed = (0.5 / (t * t)).powf(p) * erf(2.0 * t) / 2.0;
        let lower = k.lower_bound(t);
        let ok = gauge >= lower * (1.0 - 1e-12) && (gauge - closed).abs() <= 1e-10 * closed;
        all_ok &= ok;
        ts.push(t);
        gauges.push(gauge);
        run.steps.push(StepRecord::new(m, nodes.nodes().to_vec(), gauge, lower, ok).phase("B").closed_form(closed));
        if m >= cfg.steps && gauge > ceiling {
            break;
        }
    }
    let c = criteria(cfg);
    let tv = classify_trace(&gauges, &c);
    let slope = tail_log_slope(&ts, &gauges);
    let expected = k.exponent;
    let verdict = match (all_ok, tv, slope) {
        (false, _, _) => Verdict::Fail,
        (true, LimitVerdict::Divergent, Some(s)) if (s - expected).abs() <= SLOPE_TOL => Verdict::DivergentAsExpected,
        (true, LimitVerdict::Divergent, _) => Verdict::Fail,
        // ceiling never reached within the halving cap
        (true, _, _) if gauges.last().is_some_and(|g| *g <= ceiling) => Verdict::Inconclusive,
        _ => Verdict::Fail,
    };
    run.check(
        "second difference blow-up",
        verdict,
        format!(
            "{} halvings, last gauge {:.3e}, slope {} vs {expected:.4}",
            gauges.len(),
            gauges.last().copied().unwrap_or(f64::NAN),
            slope.map_or("n/a".into(), |s| format!("{s:.4}"))
        ),
    );
    Ok(k)
}

fn c1_not_c2(cfg: ExperimentConfig, real: bool, start: Instant) -> Result<ExperimentReport> {
    let map = example_map(&cfg)?;
    let p = match map {
        ExampleMap::Halfplane { p } => p,
        _ => return Err(Error::InvalidConfig("the C¹-not-C² check needs example3".into())),
    };
    let mut run = Run::new();
    first_differences(&mut run, &cfg, &map, p, real)?;
    let constants = second_difference_blowup(&mut run, &cfg, &map, p)?;
    Ok(run.finish(cfg, Verdict::DivergentAsExpected, Some(constants), start))
}

/// First differences of the half-plane map vanish like `|dz|^{1-p}` in `Lᵖ`
/// while second differences blow up like `t^{1-2p}`.
pub fn exp_c1_not_c2(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let start = Instant::now();
    let cfg = prepare(cfg, ExperimentKind::C1NotC2)?;
    c1_not_c2(cfg, false, start)
}

/// The same phenomena restricted to real parameters.
pub fn exp_real_restriction(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let start = Instant::now();
    let cfg = prepare(cfg, ExperimentKind::RealRestriction)?;
    match cfg.example {
        Some(ExampleId::Example3) => c1_not_c2(cfg, true, start),
        _ => {
            let map = example_map(&cfg)?;
            let schedule = ShrinkSchedule::real_line(cfg.k).with_ratio(cfg.rho).with_steps(cfg.steps);
            schedule.validate(cfg.k)?;
            let mut run = Run::new();
            for z in centers(&cfg, true) {
                smoothness_at(&mut run, &cfg, &map, z, &schedule, "real-smoothness")?;
            }
            if cfg.example == Some(ExampleId::Example2) {
                // the annulus map only sees |z|, so injectivity is not claimed
                return Ok(run.finish(cfg, Verdict::Pass, None, start));
            }
            let mut r = rng(&cfg, 3);
            let mut all_ok = true;
            for i in 0..100 {
                let (x1, x2) = (random_point(&mut r, true), random_point(&mut r, true));
                let m = lower_left_quadrant(x1).combine(&lower_left_quadrant(x2), SetOp::SymmetricDifference).measure();
                let bound = 2.0 * (x2 - x1).norm();
                let ok = x1 != x2 && m > 0.0 && m <= bound;
                all_ok &= ok;
                run.steps.push(StepRecord::new(i + 1, vec![x1, x2], m, bound, ok).phase("injectivity"));
            }
            run.check("injective on the real line", if all_ok { Verdict::Pass } else { Verdict::Fail }, "100 random real pairs");
            Ok(run.finish(cfg, Verdict::Pass, None, start))
        }
    }
}

/// Closed forms and bounds for `μ` on annuli and strips, the supremum of
/// `2t e^{-t²}`, and Monte-Carlo cross-checks.
pub fn exp_measure_identities(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let start = Instant::now();
    let cfg = prepare(cfg, ExperimentKind::MeasureIdentities)?;
    let mut run = Run::new();
    let grid = |lo: f64, hi: f64| -> Vec<f64> { (0..100).map(|i| lo + (hi - lo) * i as f64 / 99.0).collect() };

    // annuli: 100 × 100 ordered pairs (r, R)
    let radii = grid(0.0, 4.0);
    let mut ok_all = true;
    let mut n = 0;
    for &u in &radii {
        for &v in &radii {
            let (r, big_r) = (u.min(v), u.max(v));
            let m = mu_radial(&annulus(r, big_r)?);
            let closed = (-r * r).exp() - (-big_r * big_r).exp();
            let ok = (m - closed).abs() <= 1e-12 && m <= big_r - r;
            ok_all &= ok;
            n += 1;
            run.steps.push(StepRecord::new(n, vec![Complex64::new(r, 0.0), Complex64::new(big_r, 0.0)], m, big_r - r, ok).phase("annulus").closed_form(closed));
        }
    }
    run.check("annulus measure", if ok_all { Verdict::Pass } else { Verdict::Fail }, "closed form to 1e-12 and mu <= R - r on 10^4 pairs");

    // strips: 100 × 100 ordered pairs (a, b)
    let ends = grid(-4.0, 4.0);
    ok_all = true;
    n = 0;
    for &u in &ends {
        for &v in &ends {
            let (a, b) = (u.min(v), u.max(v));
            let m = mu_grid(&vertical_strip(a, b)?);
            let closed = (erf(b) - erf(a)) / 2.0;
            let ok = (m - closed).abs() <= 1e-12 && m <= b - a;
            ok_all &= ok;
            n += 1;
            run.steps.push(StepRecord::new(n, vec![Complex64::new(a, 0.0), Complex64::new(b, 0.0)], m, b - a, ok).phase("strip").closed_form(closed));
        }
    }
    run.check("strip measure", if ok_all { Verdict::Pass } else { Verdict::Fail }, "closed form to 1e-12 and mu <= b - a on 10^4 pairs");

    // sup of 2t e^{-t²} over [0, 10]
    let cap = (2.0 / E).sqrt();
    let samples = 1_000_000;
    let (mut best_t, mut best) = (0.0, f64::NEG_INFINITY);
    let mut below = true;
    for i in 0..=samples {
        let t = 10.0 * i as f64 / samples as f64;
        let h = 2.0 * t * (-t * t).exp();
        below &= h <= cap * (1.0 + 1e-15);
        if h > best {
            (best_t, best) = (t, h);
        }
    }
    let ok = below && (best - cap).abs() <= 1e-9 && (best_t - FRAC_1_SQRT_2).abs() <= 1e-5 && cap < 1.0;
    run.steps.push(StepRecord::new(1, vec![Complex64::new(best_t, 0.0)], best, cap, ok).phase("sup").closed_form(cap));
    run.check(
        "sup 2t exp(-t^2)",
        if ok { Verdict::Pass } else { Verdict::Fail },
        format!("max {best:.12} at t = {best_t:.6}; sqrt(2/e) = {cap:.12}"),
    );

    // Monte-Carlo cross-checks against closed forms
    let q = |z: Complex64| -> Region { lower_left_quadrant(z).into() };
    let half_erf1 = erf(1.0) / 2.0;
    let cases: Vec<(&str, Region, f64)> = vec![
        ("K(0.3,0.7)", annulus(0.3, 0.7)?.into(), (-0.09f64).exp() - (-0.49f64).exp()),
        ("K(0,0.5)", annulus(0.0, 0.5)?.into(), 1.0 - (-0.25f64).exp()),
        ("K(0,1)", annulus(0.0, 1.0)?.into(), 1.0 - (-1f64).exp()),
        ("K(1,2)", annulus(1.0, 2.0)?.into(), (-1f64).exp() - (-4f64).exp()),
        ("S(0,1)", vertical_strip(0.0, 1.0)?.into(), half_erf1),
        ("S(-0.5,0.25)", vertical_strip(-0.5, 0.25)?.into(), (erf(0.25) + erf(0.5)) / 2.0),
        ("A(0)", q(Complex64::new(0.0, 0.0)), 0.25),
        ("A(1+i)", q(Complex64::new(1.0, 1.0)), (0.5 + half_erf1).powi(2)),
        ("A(0) sym A(1)", q(Complex64::new(0.0, 0.0)).symmetric_difference(&q(Complex64::new(1.0, 0.0)))?, half_erf1 / 2.0),
    ];
    let mut failed = Vec::new();
    for (i, (label, region, exact)) in cases.into_iter().enumerate() {
        let engine_value = region.measure();
        let mc = StratifiedOracle::with_samples(cfg.monte_carlo_samples, cfg.seed.wrapping_add(i as u64)).estimate(&region);
        let ok = (engine_value - exact).abs() <= 1e-12 && agrees_to_three_digits(mc, exact);
        if !ok {
            failed.push(format!("{label}: engine {engine_value:.12}, oracle {mc:.6}, exact {exact:.12}"));
        }
        run.steps.push(StepRecord::new(i + 1, vec![], engine_value, exact, ok).phase(label).closed_form(exact).oracle(mc));
    }
    run.check(
        "Monte-Carlo agreement",
        if failed.is_empty() { Verdict::Pass } else { Verdict::Fail },
        if failed.is_empty() { "three significant digits".to_string() } else { failed.join("; ") },
    );

    Ok(run.finish(cfg, Verdict::Pass, None, start))
}

pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    match cfg.experiment {
        ExperimentKind::Smoothness => exp_smoothness(cfg),
        ExperimentKind::TaylorFailure => exp_taylor_failure(cfg),
        ExperimentKind::IdentityTheoremFailure => exp_identity_theorem_failure(cfg),
        ExperimentKind::C1NotC2 => exp_c1_not_c2(cfg),
        ExperimentKind::RealRestriction => exp_real_restriction(cfg),
        ExperimentKind::MeasureIdentities => exp_measure_identities(cfg),
    }
}

/// The configurations run by `verify all`.
pub fn suite_configs(seed: u64) -> Vec<ExperimentConfig> {
    use ExperimentKind::*;
    let cfg = |kind, ex| ExperimentConfig::new(kind, ex).with_seed(seed);
    let mut out = vec![cfg(MeasureIdentities, None)];
    for ex in [ExampleId::Example1, ExampleId::Example2] {
        out.extend((1..=4).map(|k| cfg(Smoothness, Some(ex)).with_k(k)));
    }
    out.push(cfg(TaylorFailure, Some(ExampleId::Example1)));
    out.push(cfg(IdentityTheoremFailure, Some(ExampleId::Example2)).with_k(2));
    out.extend([0.75, 0.6, 0.9].map(|p| cfg(C1NotC2, Some(ExampleId::Example3)).with_p(p)));
    out.extend((1..=3).map(|k| cfg(RealRestriction, Some(ExampleId::Example1)).with_k(k)));
    out.push(cfg(RealRestriction, Some(ExampleId::Example2)).with_k(2));
    out.push(cfg(RealRestriction, Some(ExampleId::Example3)));
    out
}

/// Runs every suite configuration after full validation.
pub fn run_suite(seed: u64) -> Result<Vec<ExperimentReport>> {
    suite_configs(seed)
        .iter()
        .map(|c| {
            c.validate()?;
            run_experiment(c)
        })
        .collect()
}
