//! Quantitative obstruction experiments: the dagger bounds whose
//! incompatibility rules out a quasi-isometry between the 2^n and 2^(2^n)
//! horoballs, and the measurable divergence of the two line metrics.
//!
//! All log arithmetic is integer-exact: floor logs come from bit lengths and
//! the iterated-log ceiling from comparisons against 2^(2^t), so thresholds
//! are bit-for-bit reproducible.

use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::horoball::{line_distance_closed_form, line_distance_dp, sufficient_depth};
use crate::scaling::ScalingFunction;

pub type Rational = Ratio<i64>;

/// Constant bundle of a hypothetical (c,c) quasi-isometry between the two
/// horoballs: `c` the QI constants, `b` the geodesic/quasi-geodesic gap,
/// `e` the horizontal-step bound. `d` bounds image heights; it is carried
/// for reporting but no displayed formula consumes it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QiBoundParams {
    pub c: Rational,
    pub b: Rational,
    pub d: Rational,
    pub e: Rational,
}

impl QiBoundParams {
    pub fn new(c: Rational, b: Rational, d: Rational, e: Rational) -> Result<Self> {
        if c < Rational::from_integer(1) {
            return Err(Error::InvalidParams(format!("c must be >= 1, got {c}")));
        }
        if b.is_negative() || d.is_negative() {
            return Err(Error::InvalidParams("B and D must be >= 0".into()));
        }
        if e < Rational::from_integer(1) {
            return Err(Error::InvalidParams(format!(
                "E appears inside a log, so E >= 1 is required; got {e}"
            )));
        }
        Ok(QiBoundParams { c, b, d, e })
    }
}

/// The two displayed bounds at a displacement N; the pair is incompatible
/// when the lower bound exceeds the upper.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DaggerPair {
    pub n: u64,
    /// 2 ceil(log2 log2 (E N)) + 3 + 2B
    pub upper: Rational,
    /// (2 floor(log2 N) + 1) / c - c
    pub lower: Rational,
}

impl DaggerPair {
    pub fn incompatible(&self) -> bool {
        self.lower > self.upper
    }
}

fn floor_log2(n: u64) -> u64 {
    63 - n.leading_zeros() as u64
}

/// Smallest t >= 0 with 2^(2^t) >= m, for m >= 2. This equals
/// ceil(log2 log2 x) for any real x with ceil(x) = m.
fn ceil_log2_log2(m: u64) -> u32 {
    let mut t = 0u32;
    // 2^(2^6) = 2^64 tops out u64, so the loop ends by t = 6.
    while t < 6 && (1u128 << (1u64 << t)) < m as u128 {
        t += 1;
    }
    t
}

/// Evaluate both bounds at displacement `n` (n >= 2 so the iterated log is
/// defined for E >= 1).
pub fn dagger_bounds(n: u64, p: &QiBoundParams) -> Result<DaggerPair> {
    if n < 2 {
        return Err(Error::InvalidParams(format!(
            "dagger bounds need N >= 2, got {n}"
        )));
    }
    let n_rat = Rational::from_integer(n.to_i64().ok_or_else(|| {
        Error::InvalidParams(format!("N = {n} too large for exact rational arithmetic"))
    })?);
    let en = p.e * n_rat;
    let en_ceil = en.ceil();
    if en_ceil <= Rational::from_integer(1) {
        return Err(Error::LogArgumentTooSmall {
            value: en.to_string(),
        });
    }
    let m = en_ceil
        .to_integer()
        .to_u64()
        .ok_or_else(|| Error::InvalidParams(format!("E*N = {en} out of range")))?;
    let t = ceil_log2_log2(m) as i64;
    let upper = Rational::from_integer(2 * t + 3) + p.b * 2;
    let lower = Rational::from_integer(2 * floor_log2(n) as i64 + 1) / p.c - p.c;
    Ok(DaggerPair {
        n,
        upper,
        lower,
    })
}

/// Smallest N <= n_max at which the bounds become incompatible, by linear
/// scan (the floor functions make the predicate non-monotone in raw N).
pub fn incompatibility_threshold(p: &QiBoundParams, n_max: u64) -> Result<Option<u64>> {
    if n_max < 2 {
        return Err(Error::InvalidParams("N_max must be >= 2".into()));
    }
    for n in 2..=n_max {
        if dagger_bounds(n, p)?.incompatible() {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

/// One row of the divergence table: exact line distances under both scalings
/// and their ratio.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GrowthRow {
    pub n: u64,
    pub d_exp2: u64,
    pub d_dexp2: u64,
    pub ratio: f64,
}

/// Line distances under exp2 and dexp2 for each requested displacement.
/// Closed-form values are cross-validated against the reachability recursion
/// for N <= 512.
pub fn growth_compare(ns: &[u64]) -> Result<Vec<GrowthRow>> {
    let mut rows = Vec::with_capacity(ns.len());
    for &n in ns {
        if n < 1 {
            return Err(Error::InvalidParams("growth displacements must be >= 1".into()));
        }
        let d_exp2 = line_distance_closed_form(n, &ScalingFunction::Exp2)?;
        let d_dexp2 = line_distance_closed_form(n, &ScalingFunction::DExp2)?;
        if n <= 512 {
            for (scale, claimed) in [
                (ScalingFunction::Exp2, d_exp2),
                (ScalingFunction::DExp2, d_dexp2),
            ] {
                let depth = sufficient_depth(n, &scale)?;
                let dp = line_distance_dp(n, &scale, depth)?;
                if dp != claimed {
                    return Err(Error::InvalidParams(format!(
                        "internal oracle mismatch at N = {n} under {scale}: closed form {claimed}, recursion {dp}"
                    )));
                }
            }
        }
        rows.push(GrowthRow {
            n,
            d_exp2,
            d_dexp2,
            ratio: d_exp2 as f64 / d_dexp2 as f64,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    fn params(c: i64, b: i64, e: i64) -> QiBoundParams {
        QiBoundParams::new(rat(c), rat(b), rat(0), rat(e)).unwrap()
    }

    #[test]
    fn dagger_examples() {
        let p = params(2, 0, 10);
        let pair = dagger_bounds(2, &p).unwrap();
        assert_eq!(pair.upper, rat(9));
        // (2 floor(log2 2) + 1)/2 - 2 = 3/2 - 2
        assert_eq!(pair.lower, Rational::new(-1, 2));
        assert!(!pair.incompatible());

        let pair = dagger_bounds(32768, &p).unwrap();
        assert_eq!(pair.upper, rat(13));
        assert_eq!(pair.lower, Rational::new(27, 2));
        assert!(pair.incompatible());

        let p = params(1, 0, 1);
        let pair = dagger_bounds(16, &p).unwrap();
        assert_eq!(pair.upper, rat(7));
        assert_eq!(pair.lower, rat(8));
        assert!(pair.incompatible());
    }

    #[test]
    fn invalid_params_are_rejected() {
        assert!(QiBoundParams::new(Rational::new(1, 2), rat(0), rat(0), rat(1)).is_err());
        assert!(QiBoundParams::new(rat(1), rat(-1), rat(0), rat(1)).is_err());
        assert!(QiBoundParams::new(rat(1), rat(0), rat(0), Rational::new(1, 2)).is_err());
        assert!(dagger_bounds(1, &params(1, 0, 1)).is_err());
    }

    #[test]
    fn thresholds() {
        let nmax = 1u64 << 20;
        assert_eq!(
            incompatibility_threshold(&params(1, 0, 1), nmax).unwrap(),
            Some(16)
        );
        assert_eq!(
            incompatibility_threshold(&params(2, 0, 10), nmax).unwrap(),
            Some(32768)
        );
        assert_eq!(
            incompatibility_threshold(&params(2, 1, 10), nmax).unwrap(),
            Some(131072)
        );
        // huge c: no threshold in range
        assert_eq!(
            incompatibility_threshold(&params(100, 0, 1), nmax).unwrap(),
            None
        );
    }

    #[test]
    fn growth_rows() {
        let rows = growth_compare(&[1, 16, 65536]).unwrap();
        assert_eq!((rows[0].d_exp2, rows[0].d_dexp2), (1, 1));
        assert_eq!(rows[0].ratio, 1.0);
        assert_eq!((rows[1].d_exp2, rows[1].d_dexp2), (8, 5));
        assert_eq!(rows[1].ratio, 1.6);
        assert_eq!((rows[2].d_exp2, rows[2].d_dexp2), (32, 9));
    }

    #[test]
    fn once_incompatible_along_powers_of_two_stays_incompatible() {
        let p = params(2, 0, 10);
        let mut seen = false;
        for k in 1..=20 {
            let pair = dagger_bounds(1u64 << k, &p).unwrap();
            if seen {
                assert!(pair.incompatible(), "regressed at 2^{k}");
            }
            seen |= pair.incompatible();
        }
        assert!(seen);
    }
}
