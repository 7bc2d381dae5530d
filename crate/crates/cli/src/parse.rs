//! Flag-value parsers shared by the subcommands.

use cuspcraft_core::{BaseGraph, Error, HoroballVertex, Rational, Result, UpperHalfSpacePoint};

/// `line:N`, `cycle:N`, or a path to a graph JSON file.
pub fn parse_base_graph(spec: &str) -> Result<BaseGraph> {
    if let Some(n) = spec.strip_prefix("line:") {
        let n: u32 = n
            .parse()
            .map_err(|_| Error::InvalidParams(format!("bad line length in {spec:?}")))?;
        return Ok(BaseGraph::path(n));
    }
    if let Some(n) = spec.strip_prefix("cycle:") {
        let n: u32 = n
            .parse()
            .map_err(|_| Error::InvalidParams(format!("bad cycle length in {spec:?}")))?;
        return BaseGraph::cycle(n);
    }
    let text = std::fs::read_to_string(spec)
        .map_err(|e| Error::InvalidParams(format!("cannot read {spec:?}: {e}")))?;
    serde_json::from_str(&text)
        .map_err(|e| Error::InvalidGraph(format!("{spec:?} is not a graph file: {e}")))
}

/// `base,level` pair, e.g. `16,0`.
pub fn parse_horoball_vertex(s: &str) -> Result<HoroballVertex> {
    let (base, level) = s
        .split_once(',')
        .ok_or_else(|| Error::InvalidParams(format!("expected base,level, got {s:?}")))?;
    let parse = |part: &str| -> Result<u32> {
        part.trim()
            .parse()
            .map_err(|_| Error::InvalidParams(format!("bad vertex component in {s:?}")))
    };
    Ok(HoroballVertex::new(parse(base)?, parse(level)?))
}

/// `x,y,t` triple with t > 0.
pub fn parse_point(s: &str) -> Result<UpperHalfSpacePoint> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(Error::InvalidParams(format!("expected x,y,t, got {s:?}")));
    }
    let parse = |part: &str| -> Result<f64> {
        part.trim()
            .parse()
            .map_err(|_| Error::InvalidParams(format!("bad coordinate in {s:?}")))
    };
    UpperHalfSpacePoint::new(parse(parts[0])?, parse(parts[1])?, parse(parts[2])?)
}

/// Decimal or fraction literal as an exact rational: `2`, `2.5`, `3/2`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let num: i64 = num
            .trim()
            .parse()
            .map_err(|_| Error::InvalidParams(format!("bad fraction {s:?}")))?;
        let den: i64 = den
            .trim()
            .parse()
            .map_err(|_| Error::InvalidParams(format!("bad fraction {s:?}")))?;
        if den == 0 {
            return Err(Error::InvalidParams("zero denominator".into()));
        }
        return Ok(Rational::new(num, den));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let sign = if whole.trim_start().starts_with('-') { -1 } else { 1 };
        let whole: i64 = whole
            .parse()
            .map_err(|_| Error::InvalidParams(format!("bad decimal {s:?}")))?;
        if frac.is_empty() {
            return Ok(Rational::from_integer(whole));
        }
        let digits: i64 = frac
            .parse()
            .map_err(|_| Error::InvalidParams(format!("bad decimal {s:?}")))?;
        if digits < 0 || frac.len() > 15 {
            return Err(Error::InvalidParams(format!("bad decimal {s:?}")));
        }
        let scale = 10i64.pow(frac.len() as u32);
        return Ok(Rational::from_integer(whole) + Rational::new(sign * digits, scale));
    }
    let n: i64 = s
        .parse()
        .map_err(|_| Error::InvalidParams(format!("bad number {s:?}")))?;
    Ok(Rational::from_integer(n))
}

/// Comma-separated u64 list.
pub fn parse_u64_list(s: &str) -> Result<Vec<u64>> {
    s.split(',')
        .map(|part| {
            part.trim()
                .parse()
                .map_err(|_| Error::InvalidParams(format!("bad integer {part:?} in list")))
        })
        .collect()
}

/// Comma-separated f64 list.
pub fn parse_f64_list(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|part| {
            part.trim()
                .parse()
                .map_err(|_| Error::InvalidParams(format!("bad number {part:?} in list")))
        })
        .collect()
}
