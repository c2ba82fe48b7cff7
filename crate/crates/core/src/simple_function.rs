//! Finite complex combinations of region indicators, the stand-in for elements
//! of `L⁰(ℂ, μ)` and `Lᵖ(ℂ, μ)`.
//!
//! Every [`SimpleFunction`] keeps the terms it was built from together with a
//! canonical decomposition into disjoint atoms, computed once at construction.
//! Atoms come from a global breakpoint sort over all terms: each elementary
//! cell (grid) or elementary ring (radial) accumulates the coefficients of the
//! terms covering it, in term order. Cells sharing a coefficient are merged
//! into one canonical region.

use std::collections::HashMap;

use num_complex::Complex64;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::measure::{ExtendedReal, Family, GridRegion, Interval, IntervalSet, RadialRegion, Region};

/// Relative threshold below which an atom coefficient counts as zero, as a
/// fraction of the largest term coefficient modulus.
pub const DEFAULT_ZERO_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct Atom {
    pub region: Region,
    pub coefficient: Complex64,
}

impl Serialize for Atom {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Atom", 3)?;
        s.serialize_field("region", &self.region)?;
        s.serialize_field("re", &self.coefficient.re)?;
        s.serialize_field("im", &self.coefficient.im)?;
        s.end()
    }
}

#[derive(Clone, Debug)]
pub struct SimpleFunction {
    family: Family,
    terms: Vec<(Complex64, Region)>,
    atoms: Vec<Atom>,
}

/// Two functions are equal when their canonical atoms agree; the terms they
/// were built from do not matter.
impl PartialEq for SimpleFunction {
    fn eq(&self, other: &Self) -> bool {
        self.family == other.family && self.atoms == other.atoms
    }
}

impl Serialize for SimpleFunction {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("SimpleFunction", 2)?;
        s.serialize_field("family", &self.family)?;
        s.serialize_field("atoms", &self.atoms)?;
        s.end()
    }
}

/// A region in which a function may be asked to be supported.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SupportBound {
    pub region: Region,
}

impl SimpleFunction {
    pub fn zero(family: Family) -> Self {
        Self { family, terms: Vec::new(), atoms: Vec::new() }
    }

    pub fn indicator(region: Region) -> Self {
        let family = region.family();
        Self::from_terms(family, vec![(Complex64::new(1.0, 0.0), region)], DEFAULT_ZERO_TOL)
            .expect("single term has the right family")
    }

    /// `c · 1_ℂ`.
    pub fn constant(family: Family, c: Complex64) -> Self {
        Self::from_terms(family, vec![(c, Region::plane(family))], DEFAULT_ZERO_TOL)
            .expect("single term has the right family")
    }

    /// Builds a function from `(coefficient, region)` terms, which may overlap.
    /// Atoms with modulus at most `rel_zero_tol · max |term coefficient|` are
    /// dropped; `rel_zero_tol = 0` keeps every nonzero atom.
    pub fn from_terms(family: Family, terms: Vec<(Complex64, Region)>, rel_zero_tol: f64) -> Result<Self> {
        if let Some((_, r)) = terms.iter().find(|(_, r)| r.family() != family) {
            return Err(Error::FamilyMismatch { left: family, right: r.family() });
        }
        let max_mod = terms.iter().map(|(c, _)| c.norm()).fold(0.0, f64::max);
        let zero_cut = rel_zero_tol * max_mod;
        let atoms = match family {
            Family::Grid => refine_grid(&terms, zero_cut),
            Family::Radial => refine_radial(&terms, zero_cut),
        };
        Ok(Self { family, terms, atoms })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn terms(&self) -> &[(Complex64, Region)] {
        &self.terms
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn is_zero(&self) -> bool {
        self.atoms.is_empty()
    }

    /// Rebuilds the function from its own atoms.
    pub fn canonicalize(&self) -> Self {
        let terms = self.atoms.iter().map(|a| (a.coefficient, a.region.clone())).collect();
        Self::from_terms(self.family, terms, DEFAULT_ZERO_TOL).expect("atoms share the family")
    }

    /// Value at `w` read off the unique atom containing it.
    pub fn value_at(&self, w: Complex64) -> Complex64 {
        self.atoms
            .iter()
            .find(|a| a.region.contains(w))
            .map_or(Complex64::new(0.0, 0.0), |a| a.coefficient)
    }

    /// Value at `w` summed over the terms, in term order.
    pub fn term_sum_at(&self, w: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (c, r) in &self.terms {
            if r.contains(w) {
                acc += c;
            }
        }
        acc
    }

    pub fn max_coefficient(&self) -> f64 {
        self.atoms.iter().map(|a| a.coefficient.norm()).fold(0.0, f64::max)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        linear_combine(&[c], &[self]).expect("single function")
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let one = Complex64::new(1.0, 0.0);
        linear_combine(&[one, one], &[self, other])
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        linear_combine(&[Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0)], &[self, other])
    }

    /// `μ({w : |f(w)| >= eps})`.
    pub fn gauge_in_measure(&self, eps: f64) -> f64 {
        assert!(eps > 0.0, "gauge_in_measure needs eps > 0, got {eps}");
        self.atoms
            .iter()
            .filter(|a| a.coefficient.norm() >= eps)
            .map(|a| a.region.measure())
            .sum()
    }

    /// Membership in the basic zero-neighbourhood `W_k = {μ(|f| >= 1/k) < 1/k}`.
    pub fn wk_member(&self, k: u64) -> bool {
        assert!(k >= 1, "W_k is indexed by k >= 1");
        let eps = 1.0 / k as f64;
        self.gauge_in_measure(eps) < eps
    }

    /// `∫ min(1, |f|) dμ`, a metric gauge for convergence in measure.
    pub fn l0_gauge(&self) -> f64 {
        self.atoms
            .iter()
            .map(|a| a.coefficient.norm().min(1.0) * a.region.measure())
            .sum()
    }

    /// `∫ |f|^p dμ` for `p ∈ ]1/2, 1[`.
    pub fn lp_gauge(&self, p: f64) -> Result<f64> {
        check_exponent(p)?;
        Ok(self
            .atoms
            .iter()
            .map(|a| a.coefficient.norm().powf(p) * a.region.measure())
            .sum())
    }

    /// True iff every atom lies inside the bound.
    pub fn supported_in(&self, bound: &SupportBound) -> Result<bool> {
        if bound.region.family() != self.family {
            return Err(Error::FamilyMismatch { left: self.family, right: bound.region.family() });
        }
        for atom in &self.atoms {
            if !atom.region.is_subset(&bound.region)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

pub fn check_exponent(p: f64) -> Result<()> {
    if p > 0.5 && p < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidExponent(p))
    }
}

pub fn indicator(r: Region) -> SimpleFunction {
    SimpleFunction::indicator(r)
}

/// `Σ coeffs[i] · fns[i]` with the default zero tolerance.
pub fn linear_combine(coeffs: &[Complex64], fns: &[&SimpleFunction]) -> Result<SimpleFunction> {
    linear_combine_tol(coeffs, fns, DEFAULT_ZERO_TOL)
}

pub fn linear_combine_tol(coeffs: &[Complex64], fns: &[&SimpleFunction], rel_zero_tol: f64) -> Result<SimpleFunction> {
    assert_eq!(coeffs.len(), fns.len(), "one coefficient per function");
    let Some(first) = fns.first() else {
        return Err(Error::InvalidConfig("linear combination of no functions".into()));
    };
    let family = first.family;
    let mut terms = Vec::new();
    for (c, f) in coeffs.iter().zip(fns) {
        if f.family != family {
            return Err(Error::FamilyMismatch { left: family, right: f.family });
        }
        terms.extend(f.atoms.iter().map(|a| (c * a.coefficient, a.region.clone())));
    }
    SimpleFunction::from_terms(family, terms, rel_zero_tol)
}

/// Largest coefficient modulus of `a - b` on the common refinement, without
/// any zero threshold.
pub fn coefficient_distance(a: &SimpleFunction, b: &SimpleFunction) -> Result<f64> {
    let d = linear_combine_tol(&[Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0)], &[a, b], 0.0)?;
    Ok(d.max_coefficient())
}

/// `coefficient_distance(a, b) <= rel_tol · max(|a|_max, |b|_max)`.
pub fn approx_equal(a: &SimpleFunction, b: &SimpleFunction, rel_tol: f64) -> Result<bool> {
    let scale = a.max_coefficient().max(b.max_coefficient());
    Ok(coefficient_distance(a, b)? <= rel_tol * scale)
}

pub fn gauge_in_measure(f: &SimpleFunction, eps: f64) -> f64 {
    f.gauge_in_measure(eps)
}

pub fn wk_member(f: &SimpleFunction, k: u64) -> bool {
    f.wk_member(k)
}

pub fn l0_gauge(f: &SimpleFunction) -> f64 {
    f.l0_gauge()
}

pub fn lp_gauge(f: &SimpleFunction, p: f64) -> Result<f64> {
    f.lp_gauge(p)
}

pub fn supported_in(f: &SimpleFunction, bound: &SupportBound) -> Result<bool> {
    f.supported_in(bound)
}

fn sorted_breaks<I: Iterator<Item = ExtendedReal>>(it: I) -> Vec<ExtendedReal> {
    let mut v: Vec<ExtendedReal> = it.collect();
    v.sort();
    v.dedup();
    v
}

fn index_of(breaks: &[ExtendedReal], x: ExtendedReal) -> usize {
    breaks.binary_search(&x).expect("breakpoint collected from the same terms")
}

fn elementary(breaks: &[ExtendedReal], i: usize) -> Interval {
    Interval::from_ends(breaks[i], breaks[i + 1]).expect("sorted breakpoints")
}

type CoefKey = (u64, u64);

fn key(c: Complex64) -> CoefKey {
    // +0.0 and -0.0 never reach here: zero atoms are dropped first
    (c.re.to_bits(), c.im.to_bits())
}

fn refine_grid(terms: &[(Complex64, Region)], zero_cut: f64) -> Vec<Atom> {
    let grids: Vec<(Complex64, &GridRegion)> = terms
        .iter()
        .filter_map(|(c, r)| match r {
            Region::Grid(g) => Some((*c, g)),
            Region::Radial(_) => None,
        })
        .collect();
    let xb = sorted_breaks(grids.iter().flat_map(|(_, g)| g.x_breakpoints()));
    let yb = sorted_breaks(grids.iter().flat_map(|(_, g)| g.y_breakpoints()));
    if xb.len() < 2 || yb.len() < 2 {
        return Vec::new();
    }
    let (nx, ny) = (xb.len() - 1, yb.len() - 1);
    let mut acc = vec![Complex64::new(0.0, 0.0); nx * ny];
    for (c, g) in &grids {
        for slab in g.slabs() {
            let (x0, x1) = (index_of(&xb, slab.x.lo()), index_of(&xb, slab.x.hi()));
            for y in slab.ys.intervals() {
                let (y0, y1) = (index_of(&yb, y.lo()), index_of(&yb, y.hi()));
                for ix in x0..x1 {
                    for iy in y0..y1 {
                        acc[ix * ny + iy] += c;
                    }
                }
            }
        }
    }

    // group surviving cells by coefficient, in scan order
    let mut order: Vec<Complex64> = Vec::new();
    let mut groups: HashMap<CoefKey, Vec<(usize, Vec<usize>)>> = HashMap::new();
    for ix in 0..nx {
        for iy in 0..ny {
            let c = acc[ix * ny + iy];
            if c.norm() <= zero_cut || c.norm() == 0.0 {
                continue;
            }
            let cols = groups.entry(key(c)).or_insert_with(|| {
                order.push(c);
                Vec::new()
            });
            match cols.last_mut() {
                Some((last_ix, rows)) if *last_ix == ix => rows.push(iy),
                _ => cols.push((ix, vec![iy])),
            }
        }
    }
    order
        .into_iter()
        .map(|c| {
            let mut region = GridRegion::empty();
            for (ix, rows) in &groups[&key(c)] {
                let ys = IntervalSet::from_intervals(rows.iter().map(|&iy| elementary(&yb, iy)));
                region.push_slab(elementary(&xb, *ix), ys);
            }
            Atom { region: Region::Grid(region), coefficient: c }
        })
        .collect()
}

fn refine_radial(terms: &[(Complex64, Region)], zero_cut: f64) -> Vec<Atom> {
    let radials: Vec<(Complex64, &RadialRegion)> = terms
        .iter()
        .filter_map(|(c, r)| match r {
            Region::Radial(k) => Some((*c, k)),
            Region::Grid(_) => None,
        })
        .collect();
    let rb = sorted_breaks(radials.iter().flat_map(|(_, k)| k.ring_set().breakpoints()));
    if rb.len() < 2 {
        return Vec::new();
    }
    let mut acc = vec![Complex64::new(0.0, 0.0); rb.len() - 1];
    for (c, k) in &radials {
        for ring in k.rings() {
            for slot in &mut acc[index_of(&rb, ring.lo())..index_of(&rb, ring.hi())] {
                *slot += c;
            }
        }
    }
    let mut order: Vec<Complex64> = Vec::new();
    let mut groups: HashMap<CoefKey, Vec<usize>> = HashMap::new();
    for (i, &c) in acc.iter().enumerate() {
        if c.norm() <= zero_cut || c.norm() == 0.0 {
            continue;
        }
        groups
            .entry(key(c))
            .or_insert_with(|| {
                order.push(c);
                Vec::new()
            })
            .push(i);
    }
    order
        .into_iter()
        .map(|c| {
            let rings = IntervalSet::from_intervals(groups[&key(c)].iter().map(|&i| elementary(&rb, i)));
            Atom { region: Region::Radial(RadialRegion::from_set(rings)), coefficient: c }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::{annulus, lower_left_quadrant, vertical_strip};
    use approx::assert_relative_eq;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn quad(x: f64, y: f64) -> SimpleFunction {
        indicator(lower_left_quadrant(Complex64::new(x, y)).into())
    }

    fn disc_ring(r: f64, big_r: f64) -> SimpleFunction {
        indicator(annulus(r, big_r).unwrap().into())
    }

    #[test]
    fn indicator_of_empty_region_is_zero() {
        assert!(indicator(Region::empty(Family::Grid)).is_zero());
        assert!(indicator(Region::empty(Family::Radial)).is_zero());
    }

    #[test]
    fn indicator_pointwise() {
        let f = quad(0.0, 0.0);
        assert_eq!(f.value_at(Complex64::new(-1.0, -1.0)), c(1.0));
        assert_eq!(f.value_at(Complex64::new(1.0, 0.0)), c(0.0));
    }

    #[test]
    fn f_minus_f_is_zero() {
        let f = quad(0.3, -0.2);
        let z = linear_combine(&[c(1.0), c(-1.0)], &[&f, &f]).unwrap();
        assert!(z.is_zero());
        assert_eq!(z, SimpleFunction::zero(Family::Grid));
    }

    #[test]
    fn scaled_quadrant_difference_is_a_single_atom() {
        // (1/(z1 - z2)) (1_{A(0)} - 1_{A(1)}) with z1 = 0, z2 = 1; A(0) ⊂ A(1),
        // so the difference is -1 on ]0,1]×]-inf,0] and dividing by -1 flips it
        let w = 1.0 / (0.0 - 1.0);
        let d = linear_combine(&[c(w), c(-w)], &[&quad(0.0, 0.0), &quad(1.0, 0.0)]).unwrap();
        assert_eq!(d.atoms().len(), 1);
        let atom = &d.atoms()[0];
        assert_eq!(atom.coefficient, c(1.0));
        assert_eq!(
            atom.region,
            Region::Grid(GridRegion::rect(Interval::new(0.0, 1.0).unwrap(), Interval::up_to(0.0).unwrap()))
        );
    }

    #[test]
    fn halfplane_difference_is_strip_indicator() {
        let h = |x: f64| indicator(GridRegion::vertical_strip(Interval::up_to(x).unwrap()).into());
        let d = h(0.7).sub(&h(-0.2)).unwrap();
        assert_eq!(d, indicator(vertical_strip(-0.2, 0.7).unwrap().into()));
    }

    #[test]
    fn family_mismatch_in_combination() {
        let err = linear_combine(&[c(1.0), c(1.0)], &[&quad(0.0, 0.0), &disc_ring(0.0, 1.0)]).unwrap_err();
        assert!(matches!(err, Error::FamilyMismatch { .. }));
        let bound = SupportBound { region: Region::plane(Family::Radial) };
        assert!(quad(0.0, 0.0).supported_in(&bound).is_err());
    }

    #[test]
    fn gauge_in_measure_thresholds() {
        assert_eq!(SimpleFunction::zero(Family::Radial).gauge_in_measure(0.1), 0.0);
        let f = disc_ring(0.0, 0.5).scale(c(3.0));
        assert_relative_eq!(f.gauge_in_measure(1.0), 0.221199216928595131754829733022, max_relative = 1e-14);
        assert_eq!(disc_ring(0.0, 0.5).scale(c(0.5)).gauge_in_measure(1.0), 0.0);
    }

    #[test]
    fn wk_membership() {
        assert!(SimpleFunction::zero(Family::Grid).wk_member(1_000_000));
        assert!(disc_ring(0.0, 2.0).wk_member(1));
        assert!(!disc_ring(0.0, 2.0).wk_member(2));
    }

    #[test]
    fn l0_gauge_values() {
        assert_eq!(SimpleFunction::zero(Family::Grid).l0_gauge(), 0.0);
        assert_eq!(disc_ring(0.0, f64::INFINITY).l0_gauge(), 1.0);
        let f = indicator(vertical_strip(0.0, 1.0).unwrap().into()).scale(c(2.0));
        assert_relative_eq!(f.l0_gauge(), 0.421350396474857434670610317541, max_relative = 1e-14);
    }

    #[test]
    fn lp_gauge_values_and_range() {
        let s = indicator(vertical_strip(0.0, 1.0).unwrap().into());
        assert_relative_eq!(s.lp_gauge(0.75).unwrap(), 0.421350396474857434670610317541, max_relative = 1e-14);
        assert_eq!(SimpleFunction::zero(Family::Grid).lp_gauge(0.75).unwrap(), 0.0);
        for bad in [0.5, 1.0, 0.2, 1.5, f64::NAN] {
            assert!(matches!(s.lp_gauge(bad), Err(Error::InvalidExponent(_))));
        }
        // (1/t²)(1_{S(t,2t)} - ½ 1_{S(0,2t)}) at t = 1/4
        let t: f64 = 0.25;
        let a = indicator(vertical_strip(t, 2.0 * t).unwrap().into());
        let b = indicator(vertical_strip(0.0, 2.0 * t).unwrap().into());
        let g = linear_combine(&[c(1.0 / (t * t)), c(-0.5 / (t * t))], &[&a, &b]).unwrap();
        assert_relative_eq!(g.lp_gauge(0.75).unwrap(), 1.2379643161066437946648356317, max_relative = 1e-13);
    }

    #[test]
    fn support_checks() {
        assert!(SimpleFunction::zero(Family::Grid)
            .supported_in(&SupportBound { region: Region::empty(Family::Grid) })
            .unwrap());
        let right = SupportBound { region: GridRegion::vertical_strip(Interval::from(0.0).unwrap()).into() };
        assert!(!quad(0.0, 0.0).supported_in(&right).unwrap());
    }

    #[test]
    fn relative_zero_tolerance_drops_cancellation_residue() {
        let f = quad(0.0, 0.0);
        // 0.1 + 0.2 - 0.3 leaves a rounding residue on the shared quadrant
        let z = linear_combine(&[c(0.1), c(0.2), c(-0.3)], &[&f, &f, &f]).unwrap();
        assert!(z.is_zero());
        let exact = linear_combine_tol(&[c(0.1), c(0.2), c(-0.3)], &[&f, &f, &f], 0.0).unwrap();
        assert!(!exact.is_zero());
    }

    #[test]
    fn canonicalize_is_idempotent_on_overlapping_terms() {
        let terms = vec![
            (c(2.0), Region::from(lower_left_quadrant(Complex64::new(1.0, 1.0)))),
            (Complex64::new(0.0, 1.0), Region::from(vertical_strip(-1.0, 0.5).unwrap())),
            (c(-2.0), Region::from(lower_left_quadrant(Complex64::new(-0.5, 0.2)))),
        ];
        let f = SimpleFunction::from_terms(Family::Grid, terms, DEFAULT_ZERO_TOL).unwrap();
        let g = f.canonicalize();
        assert_eq!(f, g);
        assert_eq!(g.canonicalize().atoms(), g.atoms());
    }

    #[test]
    fn serializes_atoms_with_coefficients() {
        let f = disc_ring(0.0, 1.0).scale(Complex64::new(0.5, -2.0));
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(
            json,
            r#"{"family":"radial","atoms":[{"region":{"family":"radial","rings":[[0.0,1.0]]},"re":0.5,"im":-2.0}]}"#
        );
    }
}
