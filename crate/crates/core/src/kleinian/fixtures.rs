//! The named generator sets used by the limit-set and acylindricity
//! experiments, generated from their defining recipes at startup and
//! self-validated against their relators.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::mobius::{Classification, MobiusTransform};
use crate::error::{Error, Result};
use crate::groups::{exponent_sum, Word};

/// Residual allowed when a fixture's relator is evaluated on its matrices.
pub const RELATOR_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FixtureName {
    /// Genus-2 surface group: the four side-pairing translations of the
    /// regular hyperbolic octagon, acting on the half-plane inside
    /// half-space. Limit set: a circle.
    Octagon,
    /// Figure-eight knot group in its parabolic representation. Limit set:
    /// the full sphere.
    Fig8Full,
    /// Same generators as `Fig8Full` with the zero-exponent-sum word filter
    /// enabled, cutting out the fiber subgroup; by normality it shares the
    /// full-sphere limit set.
    Fig8Fiber,
    /// Two loxodromics with disjoint isometric circles; free and discrete,
    /// with a Cantor limit set. A contrast fixture.
    Schottky,
    /// The octagon matrices, tagged as acting on half-space through the
    /// plane embedding.
    FuchsianEmbed,
}

impl fmt::Display for FixtureName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FixtureName::Octagon => "octagon",
            FixtureName::Fig8Full => "fig8_full",
            FixtureName::Fig8Fiber => "fig8_fiber",
            FixtureName::Schottky => "schottky",
            FixtureName::FuchsianEmbed => "fuchsian_embed",
        };
        write!(f, "{s}")
    }
}

impl FromStr for FixtureName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "octagon" => Ok(FixtureName::Octagon),
            "fig8_full" => Ok(FixtureName::Fig8Full),
            "fig8_fiber" => Ok(FixtureName::Fig8Fiber),
            "schottky" => Ok(FixtureName::Schottky),
            "fuchsian_embed" => Ok(FixtureName::FuchsianEmbed),
            other => Err(Error::UnknownFixture {
                name: other.to_string(),
            }),
        }
    }
}

/// A generator set with its relators and sampling defaults.
#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: FixtureName,
    pub generators: Vec<MobiusTransform>,
    /// Relator words over the generator indices; each evaluates to +-identity.
    pub relators: Vec<Word>,
    /// Restrict orbit enumeration to zero-exponent-sum words.
    pub zero_exponent_filter: bool,
    /// All generator entries are real (the action preserves the y = 0 plane).
    pub real_entries: bool,
}

impl Fixture {
    /// Matrix of a word in the fixture's generators.
    pub fn word_matrix(&self, w: &Word) -> Result<MobiusTransform> {
        let mut m = MobiusTransform::identity();
        for l in w.letters() {
            let g = self
                .generators
                .get(l.index as usize)
                .ok_or(Error::LetterOutOfRange {
                    index: l.index as usize,
                    count: self.generators.len(),
                })?;
            m = m.compose(&if l.inverted { g.inverse() } else { *g });
        }
        Ok(m)
    }

    /// Relator residuals and generator classifications.
    pub fn validate(&self) -> Result<FixtureReport> {
        let mut residuals = Vec::with_capacity(self.relators.len());
        for r in &self.relators {
            residuals.push(self.word_matrix(r)?.pm_identity_residual());
        }
        let generator_classes = self
            .generators
            .iter()
            .map(|g| g.classify())
            .collect::<Result<Vec<_>>>()?;
        Ok(FixtureReport {
            name: self.name,
            relator_residuals: residuals,
            generator_classes,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FixtureReport {
    pub name: FixtureName,
    pub relator_residuals: Vec<f64>,
    pub generator_classes: Vec<Classification>,
}

impl FixtureReport {
    pub fn residuals_ok(&self) -> bool {
        self.relator_residuals
            .iter()
            .all(|&r| r <= RELATOR_TOLERANCE)
    }
}

/// Build a fixture by name. The matrices are generated from their defining
/// recipes and checked against the relators before being handed out.
pub fn fixture(name: FixtureName) -> Result<Fixture> {
    let f = match name {
        FixtureName::Octagon => octagon(name),
        FixtureName::FuchsianEmbed => octagon(name),
        FixtureName::Fig8Full => fig8(false),
        FixtureName::Fig8Fiber => fig8(true),
        FixtureName::Schottky => schottky(),
    }?;
    let report = f.validate()?;
    if !report.residuals_ok() {
        return Err(Error::InvalidParams(format!(
            "fixture {name} failed self-validation: residuals {:?}",
            report.relator_residuals
        )));
    }
    Ok(f)
}

/// The four octagon side-pairing translations: rotation conjugates (by k
/// pi/4 about the origin of the disk) of the translation whose length l has
/// cosh(l/2) = 1 + sqrt(2), converted to real half-plane matrices.
fn octagon(name: FixtureName) -> Result<Fixture> {
    let cosh_half = 1.0 + 2.0f64.sqrt();
    let sinh_half = (cosh_half * cosh_half - 1.0).sqrt();
    let translation = [
        [Complex64::new(cosh_half, 0.0), Complex64::new(sinh_half, 0.0)],
        [Complex64::new(sinh_half, 0.0), Complex64::new(cosh_half, 0.0)],
    ];

    let mut generators = Vec::with_capacity(4);
    for k in 0..4 {
        let theta = k as f64 * PI / 4.0;
        let rot = [
            [Complex64::from_polar(1.0, theta / 2.0), Complex64::new(0.0, 0.0)],
            [Complex64::new(0.0, 0.0), Complex64::from_polar(1.0, -theta / 2.0)],
        ];
        let rot_inv = [
            [rot[1][1], Complex64::new(0.0, 0.0)],
            [Complex64::new(0.0, 0.0), rot[0][0]],
        ];
        let disk = mat_mul(&mat_mul(&rot, &translation), &rot_inv);
        let half_plane = disk_to_half_plane(&disk);
        // The conjugated matrices are real up to rounding; realify exactly so
        // orbits of y = 0 basepoints stay in the plane bit-for-bit.
        let max_imag = half_plane
            .iter()
            .flatten()
            .map(|z| z.im.abs())
            .fold(0.0, f64::max);
        debug_assert!(max_imag < 1e-12);
        let m = MobiusTransform::normalized(
            Complex64::new(half_plane[0][0].re, 0.0),
            Complex64::new(half_plane[0][1].re, 0.0),
            Complex64::new(half_plane[1][0].re, 0.0),
            Complex64::new(half_plane[1][1].re, 0.0),
        )?;
        generators.push(m);
    }

    // Opposite-side pairing of the regular octagon: one vertex cycle, with
    // relator g0 g1^-1 g2 g3^-1 g0^-1 g1 g2^-1 g3.
    let relator = Word::parse_compact("aBcDAbCd")?;
    Ok(Fixture {
        name,
        generators,
        relators: vec![relator],
        zero_exponent_filter: false,
        real_entries: true,
    })
}

/// Figure-eight knot group: the standard parabolic pair
/// [[1,1],[0,1]] and [[1,0],[-w,1]] with w = exp(2 i pi / 3) a primitive
/// Eisenstein unit.
fn fig8(fiber: bool) -> Result<Fixture> {
    let omega = Complex64::from_polar(1.0, 2.0 * PI / 3.0);
    let x = MobiusTransform::new(
        Complex64::new(1.0, 0.0),
        Complex64::new(1.0, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(1.0, 0.0),
    )?;
    let y = MobiusTransform::new(
        Complex64::new(1.0, 0.0),
        Complex64::new(0.0, 0.0),
        -omega,
        Complex64::new(1.0, 0.0),
    )?;
    // Wirtinger relator w x w^-1 y^-1 with w = x^-1 y x y^-1.
    let relator = Word::parse_compact("AbaBabABaB")?;
    debug_assert_eq!(exponent_sum(&relator), 0);
    Ok(Fixture {
        name: if fiber {
            FixtureName::Fig8Fiber
        } else {
            FixtureName::Fig8Full
        },
        generators: vec![x, y],
        relators: vec![relator],
        zero_exponent_filter: fiber,
        real_entries: false,
    })
}

/// Free two-generator Schottky group: isometric circles of radius 1/4
/// centered at +-3/4 and +-3i/4, pairwise disjoint.
fn schottky() -> Result<Fixture> {
    let g1 = MobiusTransform::new(
        Complex64::new(3.0, 0.0),
        Complex64::new(2.0, 0.0),
        Complex64::new(4.0, 0.0),
        Complex64::new(3.0, 0.0),
    )?;
    let g2 = MobiusTransform::new(
        Complex64::new(3.0, 0.0),
        Complex64::new(0.0, 2.0),
        Complex64::new(0.0, -4.0),
        Complex64::new(3.0, 0.0),
    )?;
    Ok(Fixture {
        name: FixtureName::Schottky,
        generators: vec![g1, g2],
        relators: vec![],
        zero_exponent_filter: false,
        real_entries: false,
    })
}

type Mat = [[Complex64; 2]; 2];

fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    [
        [
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
        ],
        [
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        ],
    ]
}

/// Conjugate a disk-model matrix by the Cayley map z -> (z - i)/(z + i),
/// giving the half-plane form.
fn disk_to_half_plane(m: &Mat) -> Mat {
    let i = Complex64::new(0.0, 1.0);
    let one = Complex64::new(1.0, 0.0);
    let cayley = [[one, -i], [one, i]];
    // inverse of [[1, -i], [1, i]] up to the 1/(2i) determinant factor,
    // which cancels in the conjugation
    let cayley_inv = [[i, i], [-one, one]];
    let t = mat_mul(&mat_mul(&cayley_inv, m), &cayley);
    let det = t[0][0] * t[1][1] - t[0][1] * t[1][0];
    let s = det.sqrt();
    [
        [t[0][0] / s, t[0][1] / s],
        [t[1][0] / s, t[1][1] / s],
    ]
}
