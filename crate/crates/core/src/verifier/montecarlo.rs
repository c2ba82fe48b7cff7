//! Jittered-stratified Monte-Carlo estimate of `μ(E)`, used as an oracle
//! that only needs pointwise membership.
//!
//! `(u, v) ↦ √(-ln u) · e^{2πiv}` pushes the uniform law on `]0, 1]²` forward
//! to `μ`, so each of the `n²` strata of the unit square carries mass `1/n²`
//! and the estimate is the jittered hit fraction.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::measure::Region;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StratifiedOracle {
    pub per_axis: usize,
    pub seed: u64,
}

impl StratifiedOracle {
    /// Roughly `samples` strata, one jittered point each.
    pub fn with_samples(samples: usize, seed: u64) -> Self {
        let per_axis = ((samples as f64).sqrt().ceil() as usize).max(1);
        Self { per_axis, seed }
    }

    pub fn estimate(&self, region: &Region) -> f64 {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let n = self.per_axis as f64;
        let mut hits: u64 = 0;
        for i in 0..self.per_axis {
            for j in 0..self.per_axis {
                // 1 - ... keeps u in ]0, 1]
                let u = 1.0 - (i as f64 + rng.random::<f64>()) / n;
                let v = (j as f64 + rng.random::<f64>()) / n;
                if region.contains(Complex64::from_polar((-u.ln()).sqrt(), TAU * v)) {
                    hits += 1;
                }
            }
        }
        hits as f64 / (n * n)
    }
}

/// Agreement to three significant digits: half a unit in the third
/// significant place of `exact`.
pub fn agrees_to_three_digits(estimate: f64, exact: f64) -> bool {
    if exact == 0.0 {
        return estimate.abs() < 5e-4;
    }
    let unit = 10f64.powf(exact.abs().log10().floor() - 2.0);
    (estimate - exact).abs() <= 0.5 * unit
}
