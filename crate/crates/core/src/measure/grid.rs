//! Finite unions of axis-aligned half-open rectangles `]a,b] × ]c,d]`.

use std::fmt;

use num_complex::Complex64;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::gauss::nu_mass;
use super::interval::{ExtendedReal, Interval, IntervalSet, SetOp};

/// One vertical slab: the points with real part in `x` and imaginary part in `ys`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Slab {
    pub x: Interval,
    pub ys: IntervalSet,
}

/// A grid region stored as maximal vertical slabs: slabs are sorted by `x`,
/// pairwise disjoint, each has a nonempty cross-section, and two touching
/// slabs never share a cross-section. That form is unique per set, so
/// `==` is set equality.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct GridRegion {
    slabs: Vec<Slab>,
}

impl GridRegion {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn plane() -> Self {
        Self::rect(Interval::real_line(), Interval::real_line())
    }

    pub fn rect(x: Interval, y: Interval) -> Self {
        let mut out = Self::empty();
        out.push_slab(x, IntervalSet::single(y));
        out
    }

    /// Union of possibly overlapping rectangles.
    pub fn from_cells<I: IntoIterator<Item = (Interval, Interval)>>(cells: I) -> Self {
        cells
            .into_iter()
            .fold(Self::empty(), |acc, (x, y)| acc.combine(&Self::rect(x, y), SetOp::Union))
    }

    /// `]a, b] × ℝ`.
    pub fn vertical_strip(x: Interval) -> Self {
        Self::rect(x, Interval::real_line())
    }

    /// `ℝ × ]c, d]`.
    pub fn horizontal_strip(y: Interval) -> Self {
        Self::rect(Interval::real_line(), y)
    }

    /// Appends a slab to the right of every existing slab, merging with the last
    /// one when they touch and agree. Empty slabs are dropped.
    pub(crate) fn push_slab(&mut self, x: Interval, ys: IntervalSet) {
        if x.is_empty() || ys.is_empty() {
            return;
        }
        if let Some(last) = self.slabs.last_mut() {
            debug_assert!(last.x.hi() <= x.lo());
            if last.x.hi() == x.lo() && last.ys == ys {
                last.x = Interval::from_ends(last.x.lo(), x.hi()).expect("ordered slabs");
                return;
            }
        }
        self.slabs.push(Slab { x, ys });
    }

    pub fn slabs(&self) -> &[Slab] {
        &self.slabs
    }

    /// The region as a list of disjoint rectangles.
    pub fn cells(&self) -> impl Iterator<Item = (Interval, Interval)> + '_ {
        self.slabs.iter().flat_map(|s| s.ys.intervals().iter().map(move |y| (s.x, *y)))
    }

    pub fn is_empty(&self) -> bool {
        self.slabs.is_empty()
    }

    pub fn x_breakpoints(&self) -> impl Iterator<Item = ExtendedReal> + '_ {
        self.slabs.iter().flat_map(|s| [s.x.lo(), s.x.hi()])
    }

    pub fn y_breakpoints(&self) -> impl Iterator<Item = ExtendedReal> + '_ {
        self.slabs.iter().flat_map(|s| s.ys.breakpoints())
    }

    /// Cross-section over an elementary x-interval that no slab boundary splits.
    fn section(&self, e: &Interval) -> Option<&IntervalSet> {
        let idx = self.slabs.partition_point(|s| s.x.lo() <= e.lo());
        (idx > 0 && e.hi() <= self.slabs[idx - 1].x.hi()).then(|| &self.slabs[idx - 1].ys)
    }

    pub fn contains(&self, w: Complex64) -> bool {
        let idx = self.slabs.partition_point(|s| s.x.hi().value() < w.re);
        self.slabs
            .get(idx)
            .is_some_and(|s| s.x.contains(w.re) && s.ys.contains(w.im))
    }

    pub fn combine(&self, other: &GridRegion, op: SetOp) -> GridRegion {
        let mut breaks: Vec<ExtendedReal> = self.x_breakpoints().chain(other.x_breakpoints()).collect();
        breaks.sort();
        breaks.dedup();
        let empty = IntervalSet::empty();
        let mut out = GridRegion::empty();
        for w in breaks.windows(2) {
            let e = Interval::from_ends(w[0], w[1]).expect("sorted breakpoints");
            let a = self.section(&e).unwrap_or(&empty);
            let b = other.section(&e).unwrap_or(&empty);
            out.push_slab(e, a.combine(b, op));
        }
        out
    }

    pub fn complement(&self) -> GridRegion {
        GridRegion::plane().combine(self, SetOp::Difference)
    }

    pub fn is_subset(&self, other: &GridRegion) -> bool {
        self.combine(other, SetOp::Difference).is_empty()
    }

    /// `μ` of the region: `Σ ν(x-slab) · ν(cross-section)`.
    pub fn measure(&self) -> f64 {
        self.slabs.iter().map(|s| nu_mass(&s.x) * s.ys.total(nu_mass)).sum()
    }
}

impl fmt::Debug for GridRegion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.cells().map(|(x, y)| CellDebug(x, y))).finish()
    }
}

struct CellDebug(Interval, Interval);

impl fmt::Debug for CellDebug {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}×{:?}", self.0, self.1)
    }
}

impl Serialize for GridRegion {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let cells: Vec<[Interval; 2]> = self.cells().map(|(x, y)| [x, y]).collect();
        let mut s = serializer.serialize_struct("GridRegion", 1)?;
        s.serialize_field("cells", &cells)?;
        s.end()
    }
}
