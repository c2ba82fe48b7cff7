//! Exact Boolean algebra of plane regions and their Gauss measure.
//!
//! Two closed families of regions are supported: grid regions (finite unions
//! of axis-aligned rectangles) and radial regions (finite unions of annuli).
//! All intervals use the half-open convention `]lo, hi]`; the Gauss measure
//! has no atoms, so closed and half-open versions of a set have the same
//! measure. Operations never mix the two families.

mod gauss;
mod grid;
mod interval;
mod radial;

use std::fmt;

use num_complex::Complex64;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub use gauss::{erf, erfc, mu_density, nu_density, nu_mass, ring_mass};
pub use grid::{GridRegion, Slab};
pub use interval::{ExtendedReal, Interval, IntervalSet, SetOp};
pub use radial::RadialRegion;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Grid,
    Radial,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Grid => "grid",
            Family::Radial => "radial",
        })
    }
}

impl Serialize for Family {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// A measurable plane set from one of the two region families.
#[derive(Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum Region {
    Grid(GridRegion),
    Radial(RadialRegion),
}

impl Region {
    pub fn empty(family: Family) -> Self {
        match family {
            Family::Grid => Region::Grid(GridRegion::empty()),
            Family::Radial => Region::Radial(RadialRegion::empty()),
        }
    }

    pub fn plane(family: Family) -> Self {
        match family {
            Family::Grid => Region::Grid(GridRegion::plane()),
            Family::Radial => Region::Radial(RadialRegion::plane()),
        }
    }

    pub fn family(&self) -> Family {
        match self {
            Region::Grid(_) => Family::Grid,
            Region::Radial(_) => Family::Radial,
        }
    }

    pub fn is_empty(&self) -> bool {
        match self {
            Region::Grid(g) => g.is_empty(),
            Region::Radial(r) => r.is_empty(),
        }
    }

    pub fn contains(&self, w: Complex64) -> bool {
        match self {
            Region::Grid(g) => g.contains(w),
            Region::Radial(r) => r.contains(w),
        }
    }

    pub fn measure(&self) -> f64 {
        match self {
            Region::Grid(g) => g.measure(),
            Region::Radial(r) => r.measure(),
        }
    }

    pub fn combine(&self, other: &Region, op: SetOp) -> Result<Region> {
        match (self, other) {
            (Region::Grid(a), Region::Grid(b)) => Ok(Region::Grid(a.combine(b, op))),
            (Region::Radial(a), Region::Radial(b)) => Ok(Region::Radial(a.combine(b, op))),
            _ => Err(Error::FamilyMismatch { left: self.family(), right: other.family() }),
        }
    }

    pub fn union(&self, other: &Region) -> Result<Region> {
        self.combine(other, SetOp::Union)
    }

    pub fn intersection(&self, other: &Region) -> Result<Region> {
        self.combine(other, SetOp::Intersection)
    }

    pub fn difference(&self, other: &Region) -> Result<Region> {
        self.combine(other, SetOp::Difference)
    }

    pub fn symmetric_difference(&self, other: &Region) -> Result<Region> {
        self.combine(other, SetOp::SymmetricDifference)
    }

    pub fn complement(&self) -> Region {
        match self {
            Region::Grid(g) => Region::Grid(g.complement()),
            Region::Radial(r) => Region::Radial(r.complement()),
        }
    }

    pub fn is_subset(&self, other: &Region) -> Result<bool> {
        match (self, other) {
            (Region::Grid(a), Region::Grid(b)) => Ok(a.is_subset(b)),
            (Region::Radial(a), Region::Radial(b)) => Ok(a.is_subset(b)),
            _ => Err(Error::FamilyMismatch { left: self.family(), right: other.family() }),
        }
    }
}

impl fmt::Debug for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Region::Grid(g) => g.fmt(f),
            Region::Radial(r) => r.fmt(f),
        }
    }
}

impl From<GridRegion> for Region {
    fn from(g: GridRegion) -> Self {
        Region::Grid(g)
    }
}

impl From<RadialRegion> for Region {
    fn from(r: RadialRegion) -> Self {
        Region::Radial(r)
    }
}

pub fn mu_grid(r: &GridRegion) -> f64 {
    r.measure()
}

pub fn mu_radial(r: &RadialRegion) -> f64 {
    r.measure()
}

pub fn region_union(a: &Region, b: &Region) -> Result<Region> {
    a.union(b)
}

pub fn region_intersect(a: &Region, b: &Region) -> Result<Region> {
    a.intersection(b)
}

pub fn region_complement(a: &Region) -> Region {
    a.complement()
}

pub fn region_symdiff(a: &Region, b: &Region) -> Result<Region> {
    a.symmetric_difference(b)
}

/// `A(z) = ]-inf, Re z] × ]-inf, Im z]`, the closed quadrant below-left of `z`.
pub fn lower_left_quadrant(z: Complex64) -> GridRegion {
    GridRegion::rect(
        Interval::up_to(z.re).expect("finite coordinate"),
        Interval::up_to(z.im).expect("finite coordinate"),
    )
}

/// `S(a, b) = ]a, b] × ℝ`.
pub fn vertical_strip(a: f64, b: f64) -> Result<GridRegion> {
    Ok(GridRegion::vertical_strip(Interval::new(a, b)?))
}

/// `K(r, R)`.
pub fn annulus(r: f64, big_r: f64) -> Result<RadialRegion> {
    RadialRegion::annulus(r, big_r)
}
