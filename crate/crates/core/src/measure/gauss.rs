//! Closed forms for the Gauss measure `dν(x) = π^{-1/2} e^{-x²} dx` on ℝ and the
//! product measure `μ = ν ⊗ ν` on the plane.

use std::f64::consts::PI;

use super::interval::Interval;

pub fn erf(x: f64) -> f64 {
    libm::erf(x)
}

pub fn erfc(x: f64) -> f64 {
    libm::erfc(x)
}

/// Density of ν at `x`.
pub fn nu_density(x: f64) -> f64 {
    (-x * x).exp() / PI.sqrt()
}

/// Density of μ at `(x, y)`.
pub fn mu_density(x: f64, y: f64) -> f64 {
    (-(x * x + y * y)).exp() / PI
}

/// Intervals at most this wide are integrated directly, since any
/// difference of `erf` values loses relative precision on them.
const THIN: f64 = 0.05;

/// `ν(]lo, hi]) = (erf(hi) - erf(lo)) / 2`.
///
/// Each branch avoids cancellation: thin intervals use Gauss–Legendre
/// quadrature, tails use `erfc`, the rest use `erf`.
pub fn nu_mass(iv: &Interval) -> f64 {
    if iv.is_empty() {
        return 0.0;
    }
    let (a, b) = (iv.lo().value(), iv.hi().value());
    let mass = if b - a <= THIN {
        gauss_legendre(a, b)
    } else if a >= 0.5 {
        (erfc(a) - erfc(b)) / 2.0
    } else if b <= -0.5 {
        (erfc(-b) - erfc(-a)) / 2.0
    } else {
        (erf(b) - erf(a)) / 2.0
    };
    mass.max(0.0)
}

/// Five-point Gauss–Legendre rule for `∫_a^b nu_density`.
fn gauss_legendre(a: f64, b: f64) -> f64 {
    const NODES: [(f64, f64); 5] = [
        (0.0, 0.568_888_888_888_888_9),
        (0.538_469_310_105_683_1, 0.478_628_670_499_366_5),
        (-0.538_469_310_105_683_1, 0.478_628_670_499_366_5),
        (0.906_179_845_938_664, 0.236_926_885_056_189_08),
        (-0.906_179_845_938_664, 0.236_926_885_056_189_08),
    ];
    let (mid, half) = ((a + b) / 2.0, (b - a) / 2.0);
    half * NODES.iter().map(|(x, w)| w * nu_density(mid + half * x)).sum::<f64>()
}

/// `μ(K(lo, hi)) = e^{-lo²} - e^{-hi²}` for `0 <= lo <= hi <= +inf`.
pub fn ring_mass(lo: f64, hi: f64) -> f64 {
    if hi <= lo {
        return 0.0;
    }
    let outer = (-lo * lo).exp();
    if hi.is_infinite() {
        return outer;
    }
    (outer * -(-(hi - lo) * (hi + lo)).exp_m1()).max(0.0)
}
