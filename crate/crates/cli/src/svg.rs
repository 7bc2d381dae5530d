//! SVG point-cloud plots of limit-set samples.

use std::fmt::Write as _;
use std::str::FromStr;

use cuspcraft_core::{Error, Result};

/// How unit sphere points land on the drawing plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Projection {
    /// Drop the y coordinate; the invariant circle of the plane-preserving
    /// fixtures maps onto the unit circle.
    Equatorial,
    /// Drop the named axis.
    Orthographic(Axis),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl FromStr for Projection {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "equatorial" => Ok(Projection::Equatorial),
            "orthographic:x" => Ok(Projection::Orthographic(Axis::X)),
            "orthographic:y" => Ok(Projection::Orthographic(Axis::Y)),
            "orthographic:z" => Ok(Projection::Orthographic(Axis::Z)),
            other => Err(Error::InvalidParams(format!(
                "unknown projection {other:?} (equatorial, orthographic:x|y|z)"
            ))),
        }
    }
}

impl Projection {
    fn project(&self, p: &[f64; 3]) -> (f64, f64) {
        match self {
            Projection::Equatorial | Projection::Orthographic(Axis::Y) => (p[0], p[2]),
            Projection::Orthographic(Axis::X) => (p[1], p[2]),
            Projection::Orthographic(Axis::Z) => (p[0], p[1]),
        }
    }
}

/// One filled circle per point, in input order, on a fixed [-1.05, 1.05]
/// viewBox. Errors on an empty sample.
pub fn svg_plot(points: &[[f64; 3]], projection: Projection) -> Result<String> {
    if points.is_empty() {
        return Err(Error::EmptySample { words_examined: 0 });
    }
    let mut out = String::with_capacity(96 + 64 * points.len());
    out.push_str(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" \
         viewBox=\"-1.05 -1.05 2.1 2.1\">\n",
    );
    for p in points {
        let (u, v) = projection.project(p);
        // SVG y grows downward; flip the second coordinate.
        writeln!(
            out,
            "<circle cx=\"{:.6}\" cy=\"{:.6}\" r=\"0.008\" fill=\"#000\"/>",
            u, -v
        )
        .expect("writing to a String cannot fail");
    }
    out.push_str("</svg>\n");
    Ok(out)
}
