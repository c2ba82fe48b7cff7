//! Finite unions of annuli, stored as radius intervals.

use std::fmt;

use num_complex::Complex64;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::gauss::ring_mass;
use super::interval::{ExtendedReal, Interval, IntervalSet, SetOp};
use crate::error::{Error, Result};

/// A union of rings `{w : lo < |w| <= hi}`. A ring with `lo = 0` also contains
/// the origin, so the universe is `[0, +inf]` in radius and complements are
/// taken there.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct RadialRegion {
    rings: IntervalSet,
}

impl RadialRegion {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn plane() -> Self {
        Self { rings: IntervalSet::single(Self::universe()) }
    }

    fn universe() -> Interval {
        Interval::from(0.0).expect("]0, inf] is well formed")
    }

    /// The annulus `K(r, R) = {r <= |w| <= R}`, stored as `]r, R]`.
    pub fn annulus(r: f64, big_r: f64) -> Result<Self> {
        let iv = Interval::new(r, big_r)?;
        Self::from_rings([iv])
    }

    pub fn from_rings<I: IntoIterator<Item = Interval>>(rings: I) -> Result<Self> {
        let rings: Vec<Interval> = rings.into_iter().collect();
        if let Some(bad) = rings.iter().find(|iv| iv.lo() < ExtendedReal::ZERO) {
            return Err(Error::NegativeRadius { lo: bad.lo().value(), hi: bad.hi().value() });
        }
        Ok(Self { rings: IntervalSet::from_intervals(rings) })
    }

    pub(crate) fn from_set(rings: IntervalSet) -> Self {
        debug_assert!(rings.intervals().first().is_none_or(|iv| iv.lo() >= ExtendedReal::ZERO));
        Self { rings }
    }

    pub fn rings(&self) -> &[Interval] {
        self.rings.intervals()
    }

    pub fn ring_set(&self) -> &IntervalSet {
        &self.rings
    }

    pub fn is_empty(&self) -> bool {
        self.rings.is_empty()
    }

    pub fn contains(&self, w: Complex64) -> bool {
        let r = w.norm();
        if r == 0.0 {
            return self.rings().first().is_some_and(|iv| iv.lo() == ExtendedReal::ZERO && !iv.is_empty());
        }
        self.rings.contains(r)
    }

    pub fn combine(&self, other: &RadialRegion, op: SetOp) -> RadialRegion {
        Self { rings: self.rings.combine(&other.rings, op) }
    }

    pub fn complement(&self) -> RadialRegion {
        RadialRegion::plane().combine(self, SetOp::Difference)
    }

    pub fn is_subset(&self, other: &RadialRegion) -> bool {
        self.rings.is_subset(&other.rings)
    }

    /// `Σ (e^{-lo²} - e^{-hi²})` over the rings.
    pub fn measure(&self) -> f64 {
        self.rings.total(|iv| ring_mass(iv.lo().value(), iv.hi().value()))
    }
}

impl fmt::Debug for RadialRegion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K{:?}", self.rings)
    }
}

impl Serialize for RadialRegion {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("RadialRegion", 1)?;
        s.serialize_field("rings", self.rings.intervals())?;
        s.end()
    }
}
