//! Higher-order divided differences of curves `U ⊆ ℂ → E`.
//!
//! For pairwise distinct nodes the order-`k` divided difference is given by the
//! recursion
//!
//! ```text
//! f<0>(x1)          = f(x1)
//! f<k>(x1, …, xk+1) = (f<k-1>(x1, x3, …, xk+1) - f<k-1>(x2, x3, …, xk+1)) / (x1 - x2)
//! ```
//!
//! which is symmetric in its arguments and satisfies `k! f<k>(x, …, x) = f⁽ᵏ⁾(x)`
//! wherever it extends continuously to the diagonal. Coincident nodes are
//! rejected here; limits towards the diagonal go through
//! [`derivative_by_limit`].

use std::collections::HashMap;
use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::measure::{Family, GridRegion, Interval, RadialRegion, Region};
use crate::simple_function::{approx_equal, linear_combine_tol, SimpleFunction, SupportBound, DEFAULT_ZERO_TOL};

/// A map from complex nodes to simple functions of one family.
pub trait CurveMap {
    fn family(&self) -> Family;
    fn eval(&self, z: Complex64) -> SimpleFunction;
}

impl<T: CurveMap + ?Sized> CurveMap for &T {
    fn family(&self) -> Family {
        (**self).family()
    }
    fn eval(&self, z: Complex64) -> SimpleFunction {
        (**self).eval(z)
    }
}

impl<T: CurveMap + ?Sized> CurveMap for Box<T> {
    fn family(&self) -> Family {
        (**self).family()
    }
    fn eval(&self, z: Complex64) -> SimpleFunction {
        (**self).eval(z)
    }
}

/// `z ↦ φ(z) · 1_ℂ`, a scalar curve embedded in the function space.
pub struct ScalarCurve<F> {
    family: Family,
    phi: F,
}

impl<F: Fn(Complex64) -> Complex64> ScalarCurve<F> {
    pub fn new(family: Family, phi: F) -> Self {
        Self { family, phi }
    }
}

impl<F: Fn(Complex64) -> Complex64> CurveMap for ScalarCurve<F> {
    fn family(&self) -> Family {
        self.family
    }
    fn eval(&self, z: Complex64) -> SimpleFunction {
        SimpleFunction::constant(self.family, (self.phi)(z))
    }
}

/// `z ↦ γ₀` for a fixed function `γ₀`.
pub struct ConstantCurve(pub SimpleFunction);

impl CurveMap for ConstantCurve {
    fn family(&self) -> Family {
        self.0.family()
    }
    fn eval(&self, _z: Complex64) -> SimpleFunction {
        self.0.clone()
    }
}

/// Ordered evaluation nodes `z₁, …, z_{k+1}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NodeTuple {
    nodes: Vec<Complex64>,
    #[serde(skip)]
    distinct: bool,
}

impl NodeTuple {
    pub fn new(nodes: Vec<Complex64>) -> Result<Self> {
        if nodes.is_empty() {
            return Err(Error::EmptyTuple);
        }
        let distinct = first_repeat(&nodes).is_none();
        Ok(Self { nodes, distinct })
    }

    pub fn real(xs: &[f64]) -> Result<Self> {
        Self::new(xs.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn nodes(&self) -> &[Complex64] {
        &self.nodes
    }

    pub fn order(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn is_distinct(&self) -> bool {
        self.distinct
    }

    /// The tuple `(z_{perm[0]}, z_{perm[1]}, …)`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let n = self.nodes.len();
        if perm.len() != n {
            return Err(Error::InvalidPermutation(format!("length {} for {} nodes", perm.len(), n)));
        }
        let mut seen = vec![false; n];
        for &i in perm {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidPermutation(format!("{perm:?} is not a permutation of 0..{n}")));
            }
        }
        Self::new(perm.iter().map(|&i| self.nodes[i]).collect())
    }

    fn require_distinct(&self) -> Result<()> {
        match first_repeat(&self.nodes) {
            Some((first, second)) => Err(Error::RepeatedNode { first, second }),
            None => Ok(()),
        }
    }
}

fn first_repeat(nodes: &[Complex64]) -> Option<(usize, usize)> {
    (0..nodes.len()).find_map(|i| (i + 1..nodes.len()).find(|&j| nodes[i] == nodes[j]).map(|j| (i, j)))
}

/// Coordinate extremes of a node tuple.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum BoundingData {
    Grid { x_lo: f64, x_hi: f64, y_lo: f64, y_hi: f64 },
    Radial { r_lo: f64, r_hi: f64 },
}

impl BoundingData {
    pub fn of(t: &NodeTuple, family: Family) -> Self {
        let fold = |f: fn(&Complex64) -> f64| {
            t.nodes.iter().map(f).fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)))
        };
        match family {
            Family::Grid => {
                let (x_lo, x_hi) = fold(|z| z.re);
                let (y_lo, y_hi) = fold(|z| z.im);
                BoundingData::Grid { x_lo, x_hi, y_lo, y_hi }
            }
            Family::Radial => {
                let (r_lo, r_hi) = fold(|z| z.norm());
                BoundingData::Radial { r_lo, r_hi }
            }
        }
    }

    pub fn region(&self) -> Region {
        match *self {
            BoundingData::Grid { x_lo, x_hi, y_lo, y_hi } => {
                let v = GridRegion::vertical_strip(Interval::new(x_lo, x_hi).expect("min <= max"));
                let h = GridRegion::horizontal_strip(Interval::new(y_lo, y_hi).expect("min <= max"));
                Region::Grid(v.combine(&h, crate::measure::SetOp::Union))
            }
            BoundingData::Radial { r_lo, r_hi } => {
                Region::Radial(RadialRegion::annulus(r_lo, r_hi).expect("0 <= min <= max"))
            }
        }
    }
}

/// The strip cross `([x_*, x^*] + iℝ) ∪ (ℝ + i[y_*, y^*])` for grid curves, or
/// the annulus `K(r_*, r^*)` for radial ones. Degenerate strips are null sets
/// and come out empty.
pub fn support_bound_of(t: &NodeTuple, family: Family) -> SupportBound {
    SupportBound { region: BoundingData::of(t, family).region() }
}

/// Divided-difference evaluator with a fixed relative zero tolerance.
#[derive(Clone, Copy, Debug)]
pub struct DividedDifferences {
    pub zero_tol: f64,
}

impl Default for DividedDifferences {
    fn default() -> Self {
        Self { zero_tol: DEFAULT_ZERO_TOL }
    }
}

const MAX_NODES: usize = 64;

impl DividedDifferences {
    pub fn new(zero_tol: f64) -> Self {
        Self { zero_tol }
    }

    /// Recursive (triangular-table) evaluation.
    pub fn recursive<F: CurveMap + ?Sized>(&self, f: &F, t: &NodeTuple) -> Result<SimpleFunction> {
        self.split(f, t, 0, 1.min(t.order()))
    }

    /// Same recursion, but the outermost step divides by `z_i - z_j` instead
    /// of `z_1 - z_2`.
    pub fn split<F: CurveMap + ?Sized>(&self, f: &F, t: &NodeTuple, i: usize, j: usize) -> Result<SimpleFunction> {
        t.require_distinct()?;
        let n = t.nodes.len();
        if n > MAX_NODES {
            return Err(Error::InvalidSchedule(format!("{n} nodes exceed the supported {MAX_NODES}")));
        }
        let full: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let mut memo = HashMap::new();
        if n == 1 {
            return Ok(self.table(f, &t.nodes, full, &mut memo));
        }
        if i == j || i >= n || j >= n {
            return Err(Error::InvalidPermutation(format!("split indices ({i}, {j}) for {n} nodes")));
        }
        let keep_i = self.table(f, &t.nodes, full & !(1 << j), &mut memo);
        let keep_j = self.table(f, &t.nodes, full & !(1 << i), &mut memo);
        Ok(self.quotient(&keep_i, &keep_j, t.nodes[i] - t.nodes[j]))
    }

    fn quotient(&self, a: &SimpleFunction, b: &SimpleFunction, dz: Complex64) -> SimpleFunction {
        let w = dz.inv();
        linear_combine_tol(&[w, -w], &[a, b], self.zero_tol).expect("one family per curve")
    }

    /// Divided difference over the nodes selected by `mask`, taken in index
    /// order. Every sub-tuple reached from the full tuple is an increasing
    /// subsequence, so the mask identifies it.
    fn table<F: CurveMap + ?Sized>(
        &self,
        f: &F,
        nodes: &[Complex64],
        mask: u64,
        memo: &mut HashMap<u64, SimpleFunction>,
    ) -> SimpleFunction {
        if let Some(hit) = memo.get(&mask) {
            return hit.clone();
        }
        let first = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << first);
        let value = if rest == 0 {
            f.eval(nodes[first])
        } else {
            let second = rest.trailing_zeros() as usize;
            let a = self.table(f, nodes, mask & !(1 << second), memo);
            let b = self.table(f, nodes, rest, memo);
            self.quotient(&a, &b, nodes[first] - nodes[second])
        };
        memo.insert(mask, value.clone());
        value
    }

    /// `Σ_i f(z_i) / Π_{j≠i} (z_i - z_j)` in a single linear combination.
    pub fn lagrange<F: CurveMap + ?Sized>(&self, f: &F, t: &NodeTuple) -> Result<SimpleFunction> {
        t.require_distinct()?;
        let weights: Vec<Complex64> = t
            .nodes
            .iter()
            .enumerate()
            .map(|(i, zi)| {
                let prod = t
                    .nodes
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .fold(Complex64::new(1.0, 0.0), |acc, (_, zj)| acc * (zi - zj));
                prod.inv()
            })
            .collect();
        let values: Vec<SimpleFunction> = t.nodes.iter().map(|&z| f.eval(z)).collect();
        let refs: Vec<&SimpleFunction> = values.iter().collect();
        linear_combine_tol(&weights, &refs, self.zero_tol)
    }

    pub fn symmetric_under<F: CurveMap + ?Sized>(&self, f: &F, t: &NodeTuple, perm: &[usize]) -> Result<bool> {
        let base = self.recursive(f, t)?;
        let moved = self.recursive(f, &t.permuted(perm)?)?;
        approx_equal(&base, &moved, self.zero_tol)
    }
}

pub fn divided_diff<F: CurveMap + ?Sized>(f: &F, t: &NodeTuple) -> Result<SimpleFunction> {
    DividedDifferences::default().recursive(f, t)
}

pub fn divided_diff_lagrange<F: CurveMap + ?Sized>(f: &F, t: &NodeTuple) -> Result<SimpleFunction> {
    DividedDifferences::default().lagrange(f, t)
}

pub fn symmetry_check<F: CurveMap + ?Sized>(f: &F, t: &NodeTuple, perm: &[usize]) -> Result<bool> {
    DividedDifferences::default().symmetric_under(f, t, perm)
}

/// Which functional measures the size of an element of the target space.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Gauge {
    /// `∫ min(1, |γ|) dμ` on `L⁰(ℂ, μ)`.
    L0,
    /// `∫ |γ|^p dμ` on `Lᵖ(ℂ, μ)`.
    Lp { p: f64 },
}

impl Gauge {
    pub fn measure(&self, f: &SimpleFunction) -> Result<f64> {
        match *self {
            Gauge::L0 => Ok(f.l0_gauge()),
            Gauge::Lp { p } => f.lp_gauge(p),
        }
    }
}

/// Node tuples `z + ratioⁿ · u_i` for `n = 1, …, steps`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ShrinkSchedule {
    pub offsets: Vec<Complex64>,
    pub ratio: f64,
    pub steps: usize,
}

impl ShrinkSchedule {
    /// Offsets `e^{2πij/(k+1)}`, ratio 1/2, 40 steps.
    pub fn roots_of_unity(k: usize) -> Self {
        let m = (k + 1) as f64;
        Self {
            offsets: (0..=k).map(|j| Complex64::from_polar(1.0, TAU * j as f64 / m)).collect(),
            ratio: 0.5,
            steps: 40,
        }
    }

    /// Offsets spread evenly over `[-1, 1]` on the real axis.
    pub fn real_line(k: usize) -> Self {
        let offsets = if k == 0 {
            vec![Complex64::new(1.0, 0.0)]
        } else {
            (0..=k).map(|j| Complex64::new(-1.0 + 2.0 * j as f64 / k as f64, 0.0)).collect()
        };
        Self { offsets, ratio: 0.5, steps: 40 }
    }

    pub fn with_ratio(mut self, ratio: f64) -> Self {
        self.ratio = ratio;
        self
    }

    pub fn with_steps(mut self, steps: usize) -> Self {
        self.steps = steps;
        self
    }

    pub fn validate(&self, k: usize) -> Result<()> {
        if k == 0 {
            return Err(Error::InvalidSchedule("derivative order must be at least 1".into()));
        }
        if self.offsets.len() != k + 1 {
            return Err(Error::InvalidSchedule(format!(
                "order {k} needs {} offsets, got {}",
                k + 1,
                self.offsets.len()
            )));
        }
        if first_repeat(&self.offsets).is_some() {
            return Err(Error::InvalidSchedule("offsets must be pairwise distinct".into()));
        }
        if !(self.ratio > 0.0 && self.ratio < 1.0) {
            return Err(Error::InvalidSchedule(format!("ratio {} outside ]0, 1[", self.ratio)));
        }
        if self.steps == 0 {
            return Err(Error::InvalidSchedule("at least one step is required".into()));
        }
        Ok(())
    }

    pub fn tuple_at(&self, z: Complex64, n: usize) -> Result<NodeTuple> {
        let scale = self.ratio.powi(n as i32);
        NodeTuple::new(self.offsets.iter().map(|u| z + u * scale).collect())
    }

    pub fn max_offset(&self) -> f64 {
        self.offsets.iter().map(|u| u.norm()).fold(0.0, f64::max)
    }
}

/// Thresholds for reading a gauge trace.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LimitCriteria {
    pub convergence_tol: f64,
    pub divergence_ceiling: f64,
    /// Number of trailing entries that must be monotone.
    pub tail: usize,
}

impl Default for LimitCriteria {
    fn default() -> Self {
        Self { convergence_tol: 1e-6, divergence_ceiling: 1e6, tail: 5 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING-KEBAB-CASE")]
pub enum LimitVerdict {
    ConvergedToZero,
    Divergent,
    Inconclusive,
}

/// Classifies a gauge trace: below tolerance with a non-increasing tail
/// converges to zero, above the ceiling with a strictly increasing tail
/// diverges, anything else (including traces shorter than the tail) is
/// inconclusive.
pub fn classify_trace(trace: &[f64], criteria: &LimitCriteria) -> LimitVerdict {
    let window = criteria.tail.max(2);
    if trace.len() < window {
        return LimitVerdict::Inconclusive;
    }
    let tail = &trace[trace.len() - window..];
    let last = tail[window - 1];
    if last < criteria.convergence_tol && tail.windows(2).all(|w| w[1] <= w[0]) {
        LimitVerdict::ConvergedToZero
    } else if last > criteria.divergence_ceiling && tail.windows(2).all(|w| w[1] > w[0]) {
        LimitVerdict::Divergent
    } else {
        LimitVerdict::Inconclusive
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum LimitEstimate {
    Value(SimpleFunction),
    Divergent,
}

#[derive(Clone, Debug)]
pub struct LimitReport {
    pub verdict: LimitVerdict,
    pub estimate: LimitEstimate,
    /// Gauge of `k! · f<k>` at each step.
    pub gauge_trace: Vec<f64>,
    /// Gauge of the difference between consecutive estimates.
    pub cauchy_trace: Vec<f64>,
    pub tuples: Vec<NodeTuple>,
}

/// Estimates `f⁽ᵏ⁾(z) = k! f<k>(z, …, z)` along the schedule's shrinking tuples.
pub fn derivative_by_limit<F: CurveMap + ?Sized>(
    f: &F,
    z: Complex64,
    k: usize,
    schedule: &ShrinkSchedule,
    gauge: Gauge,
) -> Result<LimitReport> {
    derivative_by_limit_with(f, z, k, schedule, gauge, &LimitCriteria::default(), DividedDifferences::default())
}

pub fn derivative_by_limit_with<F: CurveMap + ?Sized>(
    f: &F,
    z: Complex64,
    k: usize,
    schedule: &ShrinkSchedule,
    gauge: Gauge,
    criteria: &LimitCriteria,
    dd: DividedDifferences,
) -> Result<LimitReport> {
    schedule.validate(k)?;
    let factorial: f64 = (1..=k).map(|i| i as f64).product();
    let mut gauge_trace = Vec::with_capacity(schedule.steps);
    let mut cauchy_trace = Vec::with_capacity(schedule.steps);
    let mut tuples = Vec::with_capacity(schedule.steps);
    let mut previous: Option<SimpleFunction> = None;
    for n in 1..=schedule.steps {
        let t = schedule.tuple_at(z, n)?;
        let estimate = dd.recursive(f, &t)?.scale(Complex64::new(factorial, 0.0));
        gauge_trace.push(gauge.measure(&estimate)?);
        if let Some(prev) = &previous {
            cauchy_trace.push(gauge.measure(&estimate.sub(prev)?)?);
        }
        tuples.push(t);
        previous = Some(estimate);
    }
    let verdict = classify_trace(&gauge_trace, criteria);
    let estimate = match verdict {
        LimitVerdict::ConvergedToZero => LimitEstimate::Value(SimpleFunction::zero(f.family())),
        LimitVerdict::Divergent => LimitEstimate::Divergent,
        LimitVerdict::Inconclusive => LimitEstimate::Value(previous.expect("at least one step")),
    };
    Ok(LimitReport { verdict, estimate, gauge_trace, cauchy_trace, tuples })
}
