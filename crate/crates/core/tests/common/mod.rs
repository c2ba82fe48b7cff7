//! Oracles that share no code path with the library's closed forms.
#![allow(dead_code)]

use std::f64::consts::PI;

use nlcalc::measure::{GridRegion, Region};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

/// Past this the Gauss density is below `1e-43`.
pub const CUTOFF: f64 = 10.0;

pub fn density(x: f64) -> f64 {
    (-x * x).exp() / PI.sqrt()
}

/// Adaptive Simpson with Richardson correction.
pub fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    fn step<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
        let m = (a + b) / 2.0;
        let (lm, rm) = ((a + m) / 2.0, (m + b) / 2.0);
        let (flm, frm) = (f(lm), f(rm));
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        step(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) + step(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
    }
    if b <= a {
        return 0.0;
    }
    let (fa, fb, fm) = (f(a), f(b), f((a + b) / 2.0));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    step(f, a, b, fa, fm, fb, whole, tol, 50)
}

/// `ν(]a, b])` by quadrature of the density, infinite ends clipped.
pub fn nu_quad(a: f64, b: f64) -> f64 {
    let (a, b) = (a.max(-CUTOFF), b.min(CUTOFF));
    simpson(&density, a, b, 1e-15)
}

/// `μ(K(r, R))` in polar coordinates: `∫_r^R 2ρ e^{-ρ²} dρ`.
pub fn ring_quad(r: f64, big_r: f64) -> f64 {
    let big_r = big_r.min(CUTOFF);
    simpson(&|rho: f64| 2.0 * rho * (-rho * rho).exp(), r, big_r, 1e-15)
}

/// `μ` of a grid region cell by cell, each factor by quadrature.
pub fn grid_quad(g: &GridRegion) -> f64 {
    g.cells()
        .map(|(x, y)| nu_quad(x.lo().value(), x.hi().value()) * nu_quad(y.lo().value(), y.hi().value()))
        .sum()
}

/// Plain Monte-Carlo: μ is the law of two independent `N(0, 1/2)` variables.
pub fn mc_normal(region: &Region, samples: usize, seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let normal = Normal::new(0.0, std::f64::consts::FRAC_1_SQRT_2).unwrap();
    let hits = (0..samples)
        .filter(|_| region.contains(Complex64::new(normal.sample(&mut rng), normal.sample(&mut rng))))
        .count();
    hits as f64 / samples as f64
}

/// Complete homogeneous symmetric polynomial `h_d(z_0, …, z_k)`, the divided
/// difference of `z^{k+d}` at those nodes.
pub fn complete_homogeneous(nodes: &[Complex64], d: usize) -> Complex64 {
    // h_d(z_0..z_j) = Σ_i z_j^i h_{d-i}(z_0..z_{j-1})
    let mut h = vec![Complex64::new(0.0, 0.0); d + 1];
    h[0] = Complex64::new(1.0, 0.0);
    for z in nodes {
        for deg in 1..=d {
            let prev = h[deg - 1];
            h[deg] += z * prev;
        }
    }
    h[d]
}

pub fn cx(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}
