mod common;

use approx::assert_relative_eq;
use common::*;
use nlcalc::divided_difference::{divided_diff, NodeTuple};
use nlcalc::maps::{annulus_map, halfplane_map, quadrant_map, ExampleMap};
use nlcalc::measure::{annulus, lower_left_quadrant, nu_mass, vertical_strip, Interval, Region};
use nlcalc::verifier::BlowupConstants;

#[test]
fn strip_and_ring_masses_match_quadrature() {
    assert_relative_eq!(nu_quad(0.0, 1.0), 0.421350396474857434670610317541, max_relative = 1e-12);
    assert_relative_eq!(ring_quad(0.3, 0.7), 0.301304791086812115361560486381, max_relative = 1e-12);
    for (a, b) in [(-3.0, -0.5), (-0.2, 0.9), (1.5, 4.0), (2.0, 2.001)] {
        let exact = nu_mass(&Interval::new(a, b).unwrap());
        assert_relative_eq!(exact, nu_quad(a, b), max_relative = 1e-11);
    }
    for (r, big_r) in [(0.0, 0.5), (0.0, 1.0), (1.0, 2.0), (0.9, 0.91), (2.5, 6.0)] {
        assert_relative_eq!(annulus(r, big_r).unwrap().measure(), ring_quad(r, big_r), max_relative = 1e-11);
    }
}

#[test]
fn example_values_match_quadrature() {
    // A(0) and A(1+i)
    assert_relative_eq!(grid_quad(&lower_left_quadrant(cx(0.0, 0.0))), 0.25, max_relative = 1e-12);
    let a11 = grid_quad(&lower_left_quadrant(cx(1.0, 1.0)));
    assert_relative_eq!(a11, 0.848886553084376987180111474519, max_relative = 1e-12);
    assert_relative_eq!(quadrant_map(cx(1.0, 1.0)).l0_gauge(), a11, max_relative = 1e-13);

    // symdiff(A(0), A(1)) = ]0, 1] × ]-inf, 0]
    let d = lower_left_quadrant(cx(0.0, 0.0)).combine(&lower_left_quadrant(cx(1.0, 0.0)), nlcalc::measure::SetOp::SymmetricDifference);
    assert_relative_eq!(grid_quad(&d), 0.210675198237428717335305158771, max_relative = 1e-12);
    assert_relative_eq!(d.measure(), 0.210675198237428717335305158771, max_relative = 1e-14);

    // f(0) and f(1/2) for the annulus map
    assert_relative_eq!(annulus_map(cx(0.0, 0.0)).l0_gauge(), ring_quad(0.0, 1.0), max_relative = 1e-12);
    assert_relative_eq!(ring_quad(0.5, 1.0), 0.410921341899962546649646496817, max_relative = 1e-12);
    assert_relative_eq!(ring_quad(0.0, 0.5), 0.221199216928595131754829733022, max_relative = 1e-12);
    assert_relative_eq!(ring_quad(0.0, 2.0), 0.981684361111265819706281978727, max_relative = 1e-12);

    assert_eq!(halfplane_map(cx(0.0, -4.0)).l0_gauge(), 0.5);
}

#[test]
fn second_difference_at_a_quarter() {
    let t = 0.25;
    let f = ExampleMap::Halfplane { p: 0.75 };
    let g = divided_diff(&f, &NodeTuple::real(&[t, 0.0, 2.0 * t]).unwrap()).unwrap();
    // (1/(2t²))^p ν(]0, 2t]) with ν by quadrature
    let oracle = (1.0 / (2.0 * t * t)).powf(0.75) * nu_quad(0.0, 2.0 * t);
    assert_relative_eq!(oracle, 1.2379643161066437946648356317, max_relative = 1e-12);
    assert_relative_eq!(g.lp_gauge(0.75).unwrap(), oracle, max_relative = 1e-10);
    let k = BlowupConstants::for_exponent(0.75);
    assert_relative_eq!(k.lower_bound(t), 0.49364878942354490393897715337, max_relative = 1e-13);
    assert!(g.lp_gauge(0.75).unwrap() >= k.lower_bound(t));
}

#[test]
fn supremum_of_ring_density() {
    // max of 2t e^{-t²} = sqrt(2/e), found by golden-section search
    let h = |t: f64| 2.0 * t * (-t * t).exp();
    let (mut a, mut b) = (0.0f64, 3.0f64);
    let g = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..200 {
        let (c, d) = (b - g * (b - a), a + g * (b - a));
        if h(c) > h(d) {
            b = d;
        } else {
            a = c;
        }
    }
    assert_relative_eq!(h(a), 0.857763884960706796480189641279, max_relative = 1e-14);
    assert!((a - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-7);
}

#[test]
fn taylor_witness_size() {
    // diagonal move by r(1+i)/√2 from 0, checked cell by cell
    let r = 1e-6;
    let z = cx(r, r) * std::f64::consts::FRAC_1_SQRT_2;
    let m = lower_left_quadrant(cx(0.0, 0.0)).combine(&lower_left_quadrant(z), nlcalc::measure::SetOp::SymmetricDifference).measure();
    let direct = grid_quad(&lower_left_quadrant(cx(0.0, 0.0)).combine(&lower_left_quadrant(z), nlcalc::measure::SetOp::SymmetricDifference));
    assert_relative_eq!(m, direct, max_relative = 1e-9);
    // real move by r: ν(]0, r]) · ½ ≈ r / (2√π)
    let m_real = lower_left_quadrant(cx(0.0, 0.0)).combine(&lower_left_quadrant(cx(r, 0.0)), nlcalc::measure::SetOp::SymmetricDifference).measure();
    assert_relative_eq!(m_real, 2.82094791773784e-7, max_relative = 1e-6);
}

#[test]
fn monte_carlo_oracles_agree() {
    let cases: Vec<(Region, f64)> = vec![
        (annulus(0.3, 0.7).unwrap().into(), 0.301304791086812115361560486381),
        (vertical_strip(0.0, 1.0).unwrap().into(), 0.421350396474857434670610317541),
        (lower_left_quadrant(cx(1.0, 1.0)).into(), 0.848886553084376987180111474519),
    ];
    for (i, (region, exact)) in cases.iter().enumerate() {
        let est = mc_normal(region, 400_000, 11 + i as u64);
        // 5 standard errors of a Bernoulli mean
        let se = (exact * (1.0 - exact) / 400_000.0).sqrt();
        assert!((est - exact).abs() < 5.0 * se, "{region:?}: {est} vs {exact}");
        assert_relative_eq!(region.measure(), *exact, max_relative = 1e-14);
    }
}
