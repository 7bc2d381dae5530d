//! Horoball scaling functions and the coarse-exponentiality contract.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Level-to-span function of a combinatorial horoball.
///
/// `Exp2` evaluates to 2^n and `DExp2` to 2^(2^n), both in exact unbounded
/// integers; `Table` carries explicit values for levels 0..len-1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScalingFunction {
    Exp2,
    DExp2,
    Table(Vec<u64>),
}

/// Largest level at which DExp2 is evaluated exactly (2^(2^26) already has
/// 8 MiB of digits; nothing at desk scale goes near it).
const DEXP2_LEVEL_LIMIT: u32 = 26;

impl ScalingFunction {
    /// Exact value f(n).
    pub fn eval(&self, n: u32) -> Result<BigUint> {
        match self {
            ScalingFunction::Exp2 => Ok(BigUint::one() << n),
            ScalingFunction::DExp2 => {
                if n > DEXP2_LEVEL_LIMIT {
                    return Err(Error::CapacityExceeded {
                        what: "dexp2 evaluation level",
                        needed: n as u64,
                        limit: DEXP2_LEVEL_LIMIT as u64,
                    });
                }
                Ok(BigUint::one() << (1u64 << n))
            }
            ScalingFunction::Table(t) => t
                .get(n as usize)
                .map(|&v| BigUint::from(v))
                .ok_or(Error::TableTooShort {
                    needed: n,
                    len: t.len(),
                }),
        }
    }

    /// min(f(n), cap), computed without big-integer arithmetic.
    pub fn eval_clamped(&self, n: u32, cap: u64) -> Result<u64> {
        match self {
            ScalingFunction::Exp2 => Ok(if n >= 63 { cap } else { (1u64 << n).min(cap) }),
            ScalingFunction::DExp2 => {
                if n >= 6 {
                    // 2^(2^6) = 2^64 already exceeds any u64 cap.
                    Ok(cap)
                } else {
                    Ok((1u64 << (1u64 << n)).min(cap))
                }
            }
            ScalingFunction::Table(t) => t
                .get(n as usize)
                .map(|&v| v.min(cap))
                .ok_or(Error::TableTooShort {
                    needed: n,
                    len: t.len(),
                }),
        }
    }

    /// Number of levels on which a table is defined; unbounded otherwise.
    pub fn defined_levels(&self) -> Option<u32> {
        match self {
            ScalingFunction::Table(t) => Some(t.len() as u32),
            _ => None,
        }
    }
}

impl fmt::Display for ScalingFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalingFunction::Exp2 => write!(f, "exp2"),
            ScalingFunction::DExp2 => write!(f, "dexp2"),
            ScalingFunction::Table(t) => {
                write!(f, "table:")?;
                for (i, v) in t.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{v}")?;
                }
                Ok(())
            }
        }
    }
}

impl FromStr for ScalingFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exp2" => Ok(ScalingFunction::Exp2),
            "dexp2" => Ok(ScalingFunction::DExp2),
            _ => {
                let rest = s.strip_prefix("table:").ok_or_else(|| {
                    Error::InvalidParams(format!(
                        "unknown scaling {s:?} (expected exp2, dexp2 or table:v0,v1,...)"
                    ))
                })?;
                let values = rest
                    .split(',')
                    .map(|v| v.trim().parse::<u64>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|e| Error::InvalidParams(format!("bad table entry: {e}")))?;
                Ok(ScalingFunction::Table(values))
            }
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ScalingJson {
    Name(String),
    Table { table: Vec<u64> },
}

impl Serialize for ScalingFunction {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ScalingFunction::Exp2 => ScalingJson::Name("exp2".into()),
            ScalingFunction::DExp2 => ScalingJson::Name("dexp2".into()),
            ScalingFunction::Table(t) => ScalingJson::Table { table: t.clone() },
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ScalingFunction {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        match ScalingJson::deserialize(deserializer)? {
            ScalingJson::Name(name) => match name.as_str() {
                "exp2" => Ok(ScalingFunction::Exp2),
                "dexp2" => Ok(ScalingFunction::DExp2),
                other => Err(D::Error::custom(format!("unknown scaling {other:?}"))),
            },
            ScalingJson::Table { table } => Ok(ScalingFunction::Table(table)),
        }
    }
}

/// Check the coarse-exponentiality contract on levels 0..n_max:
/// f(n) >= 1 and f(n+1) >= 2 f(n) for every n < n_max.
///
/// The error reports the first violating index.
pub fn validate_scaling(f: &ScalingFunction, n_max: u32) -> Result<()> {
    if n_max < 1 {
        return Err(Error::InvalidParams("n_max must be >= 1".into()));
    }
    let mut prev = f.eval(0)?;
    if prev < BigUint::one() {
        return Err(Error::ScalingViolation {
            index: 0,
            detail: "f(0) < 1".into(),
        });
    }
    for n in 0..n_max {
        let next = f.eval(n + 1)?;
        if next < BigUint::one() {
            return Err(Error::ScalingViolation {
                index: n + 1,
                detail: format!("f({}) < 1", n + 1),
            });
        }
        if next < &prev * 2u32 {
            return Err(Error::ScalingViolation {
                index: n,
                detail: format!("f({}) = {} < 2*f({}) = {}", n + 1, next, n, &prev * 2u32),
            });
        }
        prev = next;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_scalings_validate() {
        assert!(validate_scaling(&ScalingFunction::Exp2, 20).is_ok());
        assert!(validate_scaling(&ScalingFunction::DExp2, 5).is_ok());
    }

    #[test]
    fn table_violation_reports_first_index() {
        let t = ScalingFunction::Table(vec![1, 2, 3]);
        match validate_scaling(&t, 2) {
            Err(Error::ScalingViolation { index, .. }) => assert_eq!(index, 1),
            other => panic!("expected violation, got {other:?}"),
        }
        assert!(validate_scaling(&ScalingFunction::Table(vec![1, 2, 4]), 2).is_ok());
    }

    #[test]
    fn table_shorter_than_requested_range() {
        let t = ScalingFunction::Table(vec![1, 2]);
        assert!(matches!(
            validate_scaling(&t, 2),
            Err(Error::TableTooShort { needed: 2, len: 2 })
        ));
    }

    #[test]
    fn exact_values() {
        assert_eq!(ScalingFunction::Exp2.eval(10).unwrap(), BigUint::from(1024u32));
        assert_eq!(
            ScalingFunction::DExp2.eval(4).unwrap(),
            BigUint::from(65536u32)
        );
        assert_eq!(ScalingFunction::DExp2.eval_clamped(5, 1 << 40).unwrap(), 1 << 32);
        assert_eq!(ScalingFunction::DExp2.eval_clamped(6, 12345).unwrap(), 12345);
    }

    #[test]
    fn serde_shapes() {
        let s = serde_json::to_string(&ScalingFunction::Exp2).unwrap();
        assert_eq!(s, "\"exp2\"");
        let t = serde_json::to_string(&ScalingFunction::Table(vec![1, 2, 4])).unwrap();
        assert_eq!(t, "{\"table\":[1,2,4]}");
        let back: ScalingFunction = serde_json::from_str(&t).unwrap();
        assert_eq!(back, ScalingFunction::Table(vec![1, 2, 4]));
    }
}
