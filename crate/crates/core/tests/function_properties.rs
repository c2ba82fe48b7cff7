mod common;

use common::*;
use nlcalc::divided_difference::{support_bound_of, CurveMap, DividedDifferences, NodeTuple, ScalarCurve};
use nlcalc::maps::{halfplane_map, ExampleMap};
use nlcalc::measure::{annulus, lower_left_quadrant, vertical_strip, Family, GridRegion, Interval, Region};
use nlcalc::simple_function::{approx_equal, SimpleFunction, DEFAULT_ZERO_TOL};
use num_complex::Complex64;
use proptest::prelude::*;

fn coefficient() -> impl Strategy<Value = Complex64> {
    prop_oneof![
        2 => (-3i32..=3).prop_map(|i| Complex64::new(i as f64, 0.0)),
        3 => (-5.0..5.0f64, -5.0..5.0f64).prop_map(|(a, b)| Complex64::new(a, b)),
    ]
}

fn end() -> impl Strategy<Value = f64> {
    prop_oneof![(-8i32..=8).prop_map(|i| i as f64 / 4.0), -2.0..2.0f64, Just(f64::INFINITY), Just(f64::NEG_INFINITY)]
}

fn grid_region() -> impl Strategy<Value = Region> {
    (end(), end(), end(), end()).prop_map(|(a, b, c, d)| {
        let x = Interval::new(a.min(b), a.max(b)).unwrap();
        let y = Interval::new(c.min(d), c.max(d)).unwrap();
        Region::Grid(GridRegion::rect(x, y))
    })
}

fn radial_region() -> impl Strategy<Value = Region> {
    (0.0..2.5f64, 0.0..2.5f64).prop_map(|(a, b)| annulus(a.min(b), a.max(b)).unwrap().into())
}

fn function_in(family: Family) -> BoxedStrategy<SimpleFunction> {
    let region = match family {
        Family::Grid => grid_region().boxed(),
        Family::Radial => radial_region().boxed(),
    };
    prop::collection::vec((coefficient(), region), 0..5)
        .prop_map(move |terms| SimpleFunction::from_terms(family, terms, DEFAULT_ZERO_TOL).unwrap())
        .boxed()
}

fn function_pair() -> impl Strategy<Value = (SimpleFunction, SimpleFunction)> {
    prop_oneof![(function_in(Family::Grid), function_in(Family::Grid)), (function_in(Family::Radial), function_in(Family::Radial))]
}

fn point() -> impl Strategy<Value = Complex64> {
    prop_oneof![
        ((-8i32..=8), (-8i32..=8)).prop_map(|(a, b)| Complex64::new(a as f64 / 4.0, b as f64 / 4.0)),
        (-3.0..3.0f64, -3.0..3.0f64).prop_map(|(a, b)| Complex64::new(a, b)),
    ]
}

fn exponent() -> impl Strategy<Value = f64> {
    0.51..0.99f64
}

fn min_gap(nodes: &[Complex64]) -> f64 {
    let mut gap = f64::INFINITY;
    for i in 0..nodes.len() {
        for j in i + 1..nodes.len() {
            gap = gap.min((nodes[i] - nodes[j]).norm());
        }
    }
    gap
}

/// `k + 1` nodes in `[-2, 2]²` at least `0.05` apart.
fn tuple(max_k: usize) -> impl Strategy<Value = NodeTuple> {
    (1..=max_k)
        .prop_flat_map(|k| prop::collection::vec((-2.0..2.0f64, -2.0..2.0f64).prop_map(|(a, b)| Complex64::new(a, b)), k + 1))
        .prop_filter("well separated", |v| min_gap(v) >= 0.05)
        .prop_map(|v| NodeTuple::new(v).unwrap())
}

fn example() -> impl Strategy<Value = ExampleMap> {
    prop_oneof![Just(ExampleMap::Quadrant), Just(ExampleMap::Annulus), exponent().prop_map(|p| ExampleMap::Halfplane { p })]
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn atoms_agree_with_term_sums(f in function_in(Family::Grid), g in function_in(Family::Radial), ws in prop::collection::vec(point(), 12)) {
        for h in [&f, &g] {
            let tol = 1e-9 * h.terms().iter().map(|(c, _)| c.norm()).fold(0.0, f64::max);
            for &w in &ws {
                prop_assert!((h.value_at(w) - h.term_sum_at(w)).norm() <= tol, "at {}", w);
            }
        }
    }

    #[test]
    fn canonical_form_is_stable(f in function_in(Family::Grid)) {
        prop_assert_eq!(f.canonicalize(), f.clone());
        prop_assert!(f.sub(&f).unwrap().is_zero());
        prop_assert_eq!(f.add(&SimpleFunction::zero(Family::Grid)).unwrap(), f);
    }

    #[test]
    fn gauge_in_measure_is_antitone(f in function_in(Family::Grid), a in 0.01..5.0f64, b in 0.01..5.0f64) {
        let (lo, hi) = (a.min(b), a.max(b));
        prop_assert!(f.gauge_in_measure(lo) >= f.gauge_in_measure(hi));
        // Chebyshev: min(1, eps) μ(|f| >= eps) <= ∫ min(1, |f|)
        prop_assert!(lo.min(1.0) * f.gauge_in_measure(lo) <= f.l0_gauge() + 1e-15);
    }

    #[test]
    fn wk_neighbourhoods_are_nested(f in function_in(Family::Radial), k in 1u64..50) {
        if f.wk_member(k + 1) {
            prop_assert!(f.wk_member(k));
        }
    }

    #[test]
    fn gauges_are_subadditive((f, g) in function_pair(), p in exponent()) {
        let sum = f.add(&g).unwrap();
        prop_assert!(sum.lp_gauge(p).unwrap() <= f.lp_gauge(p).unwrap() + g.lp_gauge(p).unwrap() + 1e-12);
        prop_assert!(sum.l0_gauge() <= f.l0_gauge() + g.l0_gauge() + 1e-12);
    }

    #[test]
    fn lp_gauge_is_p_homogeneous(f in function_in(Family::Grid), c in coefficient(), p in exponent()) {
        prop_assume!(c.norm() > 1e-3);
        let scaled = f.scale(c).lp_gauge(p).unwrap();
        let expected = c.norm().powf(p) * f.lp_gauge(p).unwrap();
        prop_assert!((scaled - expected).abs() <= 1e-12 * expected.max(1.0));
        prop_assert!(f.scale(c).l0_gauge() <= c.norm().max(1.0) * f.l0_gauge() + 1e-12);
    }

    #[test]
    fn recursion_matches_lagrange(f in example(), t in tuple(5)) {
        let dd = DividedDifferences::default();
        let a = dd.recursive(&f, &t).unwrap();
        let b = dd.lagrange(&f, &t).unwrap();
        prop_assert!(approx_equal(&a, &b, 1e-9).unwrap());
    }

    #[test]
    fn divided_differences_are_symmetric(f in example(), (t, perm) in tuple(4).prop_flat_map(|t| { let n = t.nodes().len(); (Just(t), permutation(n)) })) {
        prop_assert!(DividedDifferences::default().symmetric_under(&f, &t, &perm).unwrap());
    }

    #[test]
    fn split_branch_does_not_matter(f in example(), t in tuple(4), i in 0usize..5, j in 0usize..5) {
        let n = t.nodes().len();
        let (i, j) = (i % n, j % n);
        prop_assume!(i != j);
        let dd = DividedDifferences::default();
        let base = dd.recursive(&f, &t).unwrap();
        prop_assert!(approx_equal(&base, &dd.split(&f, &t, i, j).unwrap(), 1e-9).unwrap());
    }

    #[test]
    fn divided_differences_stay_local(f in example(), t in tuple(4)) {
        let g = DividedDifferences::default().recursive(&f, &t).unwrap();
        prop_assert!(g.supported_in(&support_bound_of(&t, f.family())).unwrap());
    }

    #[test]
    fn powers_are_reproduced(m in 0usize..=4, t in tuple(5)) {
        let curve = ScalarCurve::new(Family::Grid, move |z: Complex64| z.powu(m as u32));
        let k = t.order();
        let g = DividedDifferences::default().recursive(&curve, &t).unwrap();
        let want = if m >= k { complete_homogeneous(t.nodes(), m - k) } else { Complex64::new(0.0, 0.0) };
        let got = g.value_at(Complex64::new(0.3, -0.7));
        let scale = t.nodes().iter().map(|z| z.norm()).fold(1.0, f64::max).powi(m as i32);
        prop_assert!((got - want).norm() <= 1e-9 * scale, "{} vs {}", got, want);
    }

    #[test]
    fn halfplane_map_is_continuous(z1 in (-2.0..2.0f64, -2.0..2.0f64), h in 1e-9..1e-1f64, theta in 0.0..std::f64::consts::TAU, p in exponent()) {
        let z1 = Complex64::new(z1.0, z1.1);
        let z2 = z1 + Complex64::from_polar(h, theta);
        let d = halfplane_map(z2).sub(&halfplane_map(z1)).unwrap();
        // |f(z2) - f(z1)| is the strip indicator, of measure <= |dx|/√π
        prop_assert!(d.lp_gauge(p).unwrap() <= h / std::f64::consts::PI.sqrt() + 1e-15);
    }
}

#[test]
fn taylor_coefficients_of_powers() {
    use nlcalc::divided_difference::{derivative_by_limit, Gauge, LimitEstimate, ShrinkSchedule};
    // k! f<k>(z, …, z) = f⁽ᵏ⁾(z) = m!/(m-k)! z^{m-k}
    let z0 = cx(0.4, -0.3);
    for m in 1..=4u32 {
        for k in 1..=m as usize {
            let exact = (0..k).map(|i| (m as usize - i) as f64).product::<f64>() * z0.powu(m - k as u32);
            let curve = ScalarCurve::new(Family::Grid, move |z: Complex64| z.powu(m));
            // roots-of-unity offsets make the error O(δ^{k+1}) while round-off grows
            // like ε/δ^k, so stop near δ = ε^{1/(2k+1)}
            let schedule = ShrinkSchedule::roots_of_unity(k).with_steps(52 / (2 * k + 1));
            let report = derivative_by_limit(&curve, z0, k, &schedule, Gauge::L0).unwrap();
            let LimitEstimate::Value(last) = report.estimate else { panic!("m={m} k={k} diverged") };
            let got = last.value_at(cx(0.0, 0.0));
            assert!((got - exact).norm() <= 1e-6 * exact.norm().max(1.0), "m={m} k={k}: {got} vs {exact}");
        }
    }
}

#[test]
fn second_difference_shape() {
    // f<2>(t, 0, 2t) = (1/t²)(1_{S(t,2t)} - ½ 1_{S(0,2t)})
    for t in [0.25, 0.1, 1e-3] {
        let g = DividedDifferences::default().recursive(&ExampleMap::Halfplane { p: 0.75 }, &NodeTuple::real(&[t, 0.0, 2.0 * t]).unwrap()).unwrap();
        let a = SimpleFunction::indicator(vertical_strip(t, 2.0 * t).unwrap().into());
        let b = SimpleFunction::indicator(vertical_strip(0.0, 2.0 * t).unwrap().into());
        let expected = a.sub(&b.scale(Complex64::new(0.5, 0.0))).unwrap().scale(Complex64::new(1.0 / (t * t), 0.0));
        assert!(approx_equal(&g, &expected, 1e-12).unwrap());
    }
}

#[test]
fn quadrant_first_difference_on_unit_step() {
    let t = NodeTuple::real(&[0.0, 1.0]).unwrap();
    let g = DividedDifferences::default().recursive(&ExampleMap::Quadrant, &t).unwrap();
    // A(0) ⊂ A(1), so (1_{A(0)} - 1_{A(1)}) / (0 - 1) is the indicator of the difference
    let d = Region::Grid(lower_left_quadrant(cx(1.0, 0.0))).difference(&lower_left_quadrant(cx(0.0, 0.0)).into()).unwrap();
    assert_eq!(g, SimpleFunction::indicator(d));
}
