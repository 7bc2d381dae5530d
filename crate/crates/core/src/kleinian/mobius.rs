//! Möbius transformations acting on upper half-space and their isometry
//! classification.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Determinant residual allowed on a normalized matrix.
pub const DET_TOLERANCE: f64 = 1e-12;
/// Trace tolerance separating parabolic from the neighboring classes.
pub const CLASS_TOLERANCE: f64 = 1e-9;

/// A determinant-one complex 2x2 matrix acting on upper half-space and its
/// boundary sphere.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MobiusTransform {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
}

impl MobiusTransform {
    /// Accept a matrix that is already normalized to det = 1.
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<Self> {
        let m = MobiusTransform { a, b, c, d };
        let residual = m.det_residual();
        if residual > DET_TOLERANCE {
            return Err(Error::NonNormalized { residual });
        }
        Ok(m)
    }

    /// Scale an arbitrary invertible matrix to det = 1.
    pub fn normalized(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<Self> {
        let det = a * d - b * c;
        if det.norm() < 1e-300 {
            return Err(Error::InvalidParams("matrix is singular".into()));
        }
        let s = det.sqrt();
        Ok(MobiusTransform {
            a: a / s,
            b: b / s,
            c: c / s,
            d: d / s,
        })
    }

    pub fn identity() -> Self {
        MobiusTransform {
            a: Complex64::new(1.0, 0.0),
            b: Complex64::new(0.0, 0.0),
            c: Complex64::new(0.0, 0.0),
            d: Complex64::new(1.0, 0.0),
        }
    }

    pub fn det_residual(&self) -> f64 {
        (self.a * self.d - self.b * self.c - Complex64::new(1.0, 0.0)).norm()
    }

    pub fn trace(&self) -> Complex64 {
        self.a + self.d
    }

    pub fn compose(&self, rhs: &MobiusTransform) -> MobiusTransform {
        MobiusTransform {
            a: self.a * rhs.a + self.b * rhs.c,
            b: self.a * rhs.b + self.b * rhs.d,
            c: self.c * rhs.a + self.d * rhs.c,
            d: self.c * rhs.b + self.d * rhs.d,
        }
    }

    /// Inverse of a det-one matrix.
    pub fn inverse(&self) -> MobiusTransform {
        MobiusTransform {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    /// Entry-wise distance to the nearer of +-identity; matrices acting
    /// trivially have a small residual.
    pub fn pm_identity_residual(&self) -> f64 {
        let one = Complex64::new(1.0, 0.0);
        let plus = (self.a - one)
            .norm()
            .max(self.b.norm())
            .max(self.c.norm())
            .max((self.d - one).norm());
        let minus = (self.a + one)
            .norm()
            .max(self.b.norm())
            .max(self.c.norm())
            .max((self.d + one).norm());
        plus.min(minus)
    }

    /// Whether this matrix and `other` define the same isometry (equal up to
    /// sign within tolerance).
    pub fn same_isometry(&self, other: &MobiusTransform, tol: f64) -> bool {
        self.compose(&other.inverse()).pm_identity_residual() <= tol
    }

    pub fn max_imag(&self) -> f64 {
        self.a
            .im
            .abs()
            .max(self.b.im.abs())
            .max(self.c.im.abs())
            .max(self.d.im.abs())
    }

    /// Trace-based isometry type of the associated hyperbolic isometry.
    pub fn classify(&self) -> Result<Classification> {
        let residual = self.det_residual();
        if residual > DET_TOLERANCE {
            return Err(Error::NonNormalized { residual });
        }
        if self.pm_identity_residual() <= CLASS_TOLERANCE {
            return Ok(Classification {
                class: IsometryClass::Identity,
                translation_length: 0.0,
            });
        }
        let tau = self.trace();
        if (tau * tau - Complex64::new(4.0, 0.0)).norm() <= CLASS_TOLERANCE {
            return Ok(Classification {
                class: IsometryClass::Parabolic,
                translation_length: 0.0,
            });
        }
        if tau.im.abs() <= CLASS_TOLERANCE && tau.re * tau.re < 4.0 {
            return Ok(Classification {
                class: IsometryClass::Elliptic,
                translation_length: 0.0,
            });
        }
        let length = 2.0 * (tau / 2.0).acosh().re.abs();
        Ok(Classification {
            class: IsometryClass::Loxodromic,
            translation_length: length,
        })
    }

    /// Poincaré extension of z -> (az + b) / (cz + d) to upper half-space.
    pub fn apply(&self, p: &UpperHalfSpacePoint) -> Result<UpperHalfSpacePoint> {
        p.check()?;
        let z = Complex64::new(p.x, p.y);
        let w2 = self.c * z + self.d;
        let denom = w2.norm_sqr() + self.c.norm_sqr() * p.t * p.t;
        let znew = ((self.a * z + self.b) * w2.conj() + self.a * self.c.conj() * p.t * p.t) / denom;
        UpperHalfSpacePoint::new(znew.re, znew.im, p.t / denom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IsometryClass {
    Identity,
    Elliptic,
    Parabolic,
    Loxodromic,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub class: IsometryClass,
    pub translation_length: f64,
}

/// A point of upper half-space: boundary-plane coordinates (x, y) and height
/// t > 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UpperHalfSpacePoint {
    pub x: f64,
    pub y: f64,
    pub t: f64,
}

impl UpperHalfSpacePoint {
    pub fn new(x: f64, y: f64, t: f64) -> Result<Self> {
        let p = UpperHalfSpacePoint { x, y, t };
        p.check()?;
        Ok(p)
    }

    pub fn basepoint() -> Self {
        UpperHalfSpacePoint {
            x: 0.0,
            y: 0.0,
            t: 1.0,
        }
    }

    fn check(&self) -> Result<()> {
        if self.t > 0.0 && self.t.is_finite() {
            Ok(())
        } else {
            Err(Error::NonPositiveHeight { t: self.t })
        }
    }
}

/// Hyperbolic distance in the upper half-space model.
pub fn hyperbolic_distance(p: &UpperHalfSpacePoint, q: &UpperHalfSpacePoint) -> f64 {
    let dx = p.x - q.x;
    let dy = p.y - q.y;
    let dt = p.t - q.t;
    let arg = 1.0 + (dx * dx + dy * dy + dt * dt) / (2.0 * p.t * q.t);
    arg.acosh()
}

/// Map upper half-space to the unit ball, sending (0,0,1) to the origin and
/// the boundary plane to the sphere.
pub fn to_ball(p: &UpperHalfSpacePoint) -> [f64; 3] {
    let norm_sq = p.x * p.x + p.y * p.y + p.t * p.t;
    let denom = p.x * p.x + p.y * p.y + (p.t + 1.0) * (p.t + 1.0);
    [2.0 * p.x / denom, 2.0 * p.y / denom, (norm_sq - 1.0) / denom]
}
