//! The three indicator-valued example curves `f(z) = 1_{A(z)}`.
//!
//! | id         | `A(z)`                               | target   |
//! |------------|--------------------------------------|----------|
//! | `example1` | `{Re w <= Re z, Im w <= Im z}`       | `L⁰`     |
//! | `example2` | `{|z| <= |w| <= 1}`                  | `L⁰`     |
//! | `example3` | `{Re w <= Re z}`                     | `Lᵖ`     |

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::divided_difference::{CurveMap, Gauge};
use crate::error::{Error, Result};
use crate::measure::{lower_left_quadrant, Family, GridRegion, Interval, RadialRegion, Region};
use crate::simple_function::{check_exponent, SimpleFunction};

/// Exponent used for `example3` when none is given.
pub const DEFAULT_P: f64 = 0.75;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExampleId {
    Example1,
    Example2,
    Example3,
}

impl ExampleId {
    pub const ALL: [ExampleId; 3] = [ExampleId::Example1, ExampleId::Example2, ExampleId::Example3];

    pub fn as_str(self) -> &'static str {
        match self {
            ExampleId::Example1 => "example1",
            ExampleId::Example2 => "example2",
            ExampleId::Example3 => "example3",
        }
    }
}

impl fmt::Display for ExampleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ExampleId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ExampleId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown example {s:?}; expected example1, example2 or example3")))
    }
}

/// `f(z) = 1_{]-inf, Re z] × ]-inf, Im z]}`.
pub fn quadrant_map(z: Complex64) -> SimpleFunction {
    SimpleFunction::indicator(lower_left_quadrant(z).into())
}

/// `f(z) = 1_{K(|z|, 1)}`, the zero function once `|z| >= 1`.
pub fn annulus_map(z: Complex64) -> SimpleFunction {
    let r = z.norm();
    if r >= 1.0 {
        return SimpleFunction::zero(Family::Radial);
    }
    SimpleFunction::indicator(RadialRegion::annulus(r, 1.0).expect("0 <= |z| < 1").into())
}

/// `f(z) = 1_{]-inf, Re z] × ℝ}`.
pub fn halfplane_map(z: Complex64) -> SimpleFunction {
    let left = GridRegion::vertical_strip(Interval::up_to(z.re).expect("finite coordinate"));
    SimpleFunction::indicator(Region::Grid(left))
}

/// An example curve together with the data its target space needs.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ExampleMap {
    Quadrant,
    Annulus,
    Halfplane { p: f64 },
}

impl ExampleMap {
    /// `p` is only consulted (and validated) for `example3`.
    pub fn new(id: ExampleId, p: f64) -> Result<Self> {
        Ok(match id {
            ExampleId::Example1 => ExampleMap::Quadrant,
            ExampleId::Example2 => ExampleMap::Annulus,
            ExampleId::Example3 => {
                check_exponent(p)?;
                ExampleMap::Halfplane { p }
            }
        })
    }

    pub fn id(&self) -> ExampleId {
        match self {
            ExampleMap::Quadrant => ExampleId::Example1,
            ExampleMap::Annulus => ExampleId::Example2,
            ExampleMap::Halfplane { .. } => ExampleId::Example3,
        }
    }

    /// The gauge of the target space: `L⁰` for examples 1 and 2, `Lᵖ` for 3.
    pub fn gauge(&self) -> Gauge {
        match *self {
            ExampleMap::Quadrant | ExampleMap::Annulus => Gauge::L0,
            ExampleMap::Halfplane { p } => Gauge::Lp { p },
        }
    }
}

impl CurveMap for ExampleMap {
    fn family(&self) -> Family {
        match self {
            ExampleMap::Annulus => Family::Radial,
            ExampleMap::Quadrant | ExampleMap::Halfplane { .. } => Family::Grid,
        }
    }

    fn eval(&self, z: Complex64) -> SimpleFunction {
        match self {
            ExampleMap::Quadrant => quadrant_map(z),
            ExampleMap::Annulus => annulus_map(z),
            ExampleMap::Halfplane { .. } => halfplane_map(z),
        }
    }
}
