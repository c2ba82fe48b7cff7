//! Extended reals, half-open intervals `]lo, hi]`, and canonical finite
//! unions of such intervals.

use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A real number or one of `-inf`, `+inf`. Never NaN, and `-0.0` is stored as `0.0`
/// so that equality and ordering agree.
#[derive(Clone, Copy, PartialEq)]
pub struct ExtendedReal(f64);

impl ExtendedReal {
    pub const NEG_INF: Self = Self(f64::NEG_INFINITY);
    pub const POS_INF: Self = Self(f64::INFINITY);
    pub const ZERO: Self = Self(0.0);

    pub fn new(x: f64) -> Result<Self> {
        if x.is_nan() {
            Err(Error::NotANumber)
        } else {
            Ok(Self(x + 0.0))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_finite(self) -> bool {
        self.0.is_finite()
    }
}

impl Eq for ExtendedReal {}

impl PartialOrd for ExtendedReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtendedReal {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

impl fmt::Debug for ExtendedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for ExtendedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == f64::INFINITY {
            f.write_str("inf")
        } else if self.0 == f64::NEG_INFINITY {
            f.write_str("-inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl Serialize for ExtendedReal {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        if self.0 == f64::INFINITY {
            serializer.serialize_str("inf")
        } else if self.0 == f64::NEG_INFINITY {
            serializer.serialize_str("-inf")
        } else {
            serializer.serialize_f64(self.0)
        }
    }
}

/// The half-open interval `]lo, hi]`; `lo == hi` is the empty interval.
#[derive(Clone, Copy, PartialEq, Eq)]
pub struct Interval {
    lo: ExtendedReal,
    hi: ExtendedReal,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        let (lo, hi) = (ExtendedReal::new(lo)?, ExtendedReal::new(hi)?);
        Self::from_ends(lo, hi)
    }

    pub fn from_ends(lo: ExtendedReal, hi: ExtendedReal) -> Result<Self> {
        if lo > hi {
            return Err(Error::MalformedInterval { lo: lo.0, hi: hi.0 });
        }
        Ok(Self { lo, hi })
    }

    /// `]-inf, +inf]`, i.e. all of ℝ.
    pub const fn real_line() -> Self {
        Self { lo: ExtendedReal::NEG_INF, hi: ExtendedReal::POS_INF }
    }

    /// `]-inf, b]`.
    pub fn up_to(b: f64) -> Result<Self> {
        Self::new(f64::NEG_INFINITY, b)
    }

    /// `]a, +inf]`.
    pub fn from(a: f64) -> Result<Self> {
        Self::new(a, f64::INFINITY)
    }

    pub fn lo(&self) -> ExtendedReal {
        self.lo
    }

    pub fn hi(&self) -> ExtendedReal {
        self.hi
    }

    pub fn is_empty(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo.0 < x && x <= self.hi.0
    }

    pub fn is_subset(&self, other: &Interval) -> bool {
        self.is_empty() || (other.lo <= self.lo && self.hi <= other.hi)
    }

    pub fn width(&self) -> f64 {
        if self.is_empty() {
            0.0
        } else {
            self.hi.0 - self.lo.0
        }
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "]{}, {}]", self.lo, self.hi)
    }
}

impl Serialize for Interval {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        [self.lo, self.hi].serialize(serializer)
    }
}

/// Boolean set operation applied cell-by-cell during a sweep.
///
/// Every operation maps `(false, false)` to `false`, which is what lets a sweep
/// over the combined breakpoints ignore everything outside them.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SetOp {
    Union,
    Intersection,
    Difference,
    SymmetricDifference,
}

impl SetOp {
    pub fn apply(self, a: bool, b: bool) -> bool {
        match self {
            SetOp::Union => a || b,
            SetOp::Intersection => a && b,
            SetOp::Difference => a && !b,
            SetOp::SymmetricDifference => a != b,
        }
    }
}

/// A finite union of half-open intervals in canonical form: sorted, every
/// interval nonempty, and consecutive intervals separated by a gap
/// (`prev.hi < next.lo`). Two sets are equal as subsets of ℝ iff they are
/// structurally equal.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct IntervalSet {
    parts: Vec<Interval>,
}

impl IntervalSet {
    pub fn empty() -> Self {
        Self { parts: Vec::new() }
    }

    pub fn single(iv: Interval) -> Self {
        Self::from_intervals([iv])
    }

    pub fn from_intervals<I: IntoIterator<Item = Interval>>(ivs: I) -> Self {
        let mut ivs: Vec<Interval> = ivs.into_iter().filter(|iv| !iv.is_empty()).collect();
        ivs.sort_by(|a, b| a.lo.cmp(&b.lo).then(a.hi.cmp(&b.hi)));
        let mut out = Self::empty();
        for iv in ivs {
            out.push_merging(iv);
        }
        out
    }

    /// Appends an interval that starts no earlier than the last one, merging
    /// when it overlaps or touches.
    pub(crate) fn push_merging(&mut self, iv: Interval) {
        if iv.is_empty() {
            return;
        }
        if let Some(last) = self.parts.last_mut() {
            debug_assert!(last.lo <= iv.lo);
            if iv.lo <= last.hi {
                if iv.hi > last.hi {
                    last.hi = iv.hi;
                }
                return;
            }
        }
        self.parts.push(iv);
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn contains(&self, x: f64) -> bool {
        let idx = self.parts.partition_point(|iv| iv.hi.0 < x);
        self.parts.get(idx).is_some_and(|iv| iv.contains(x))
    }

    /// True iff the (nonempty) interval `e` lies inside one of the parts.
    pub fn covers(&self, e: &Interval) -> bool {
        if e.is_empty() {
            return true;
        }
        let idx = self.parts.partition_point(|iv| iv.lo <= e.lo);
        idx > 0 && e.hi <= self.parts[idx - 1].hi
    }

    pub fn breakpoints(&self) -> impl Iterator<Item = ExtendedReal> + '_ {
        self.parts.iter().flat_map(|iv| [iv.lo, iv.hi])
    }

    pub fn combine(&self, other: &IntervalSet, op: SetOp) -> IntervalSet {
        let mut breaks: Vec<ExtendedReal> = self.breakpoints().chain(other.breakpoints()).collect();
        breaks.sort();
        breaks.dedup();
        let mut out = IntervalSet::empty();
        for w in breaks.windows(2) {
            let e = Interval { lo: w[0], hi: w[1] };
            if op.apply(self.covers(&e), other.covers(&e)) {
                out.push_merging(e);
            }
        }
        out
    }

    pub fn union(&self, other: &IntervalSet) -> IntervalSet {
        self.combine(other, SetOp::Union)
    }

    pub fn intersection(&self, other: &IntervalSet) -> IntervalSet {
        self.combine(other, SetOp::Intersection)
    }

    pub fn difference(&self, other: &IntervalSet) -> IntervalSet {
        self.combine(other, SetOp::Difference)
    }

    pub fn is_subset(&self, other: &IntervalSet) -> bool {
        self.parts.iter().all(|iv| other.covers(iv))
    }

    pub fn total<F: Fn(&Interval) -> f64>(&self, mass: F) -> f64 {
        self.parts.iter().map(mass).sum()
    }
}

impl fmt::Debug for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.parts.iter()).finish()
    }
}
