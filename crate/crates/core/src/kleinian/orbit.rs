//! Orbit-based limit-set sampling and acylindricity witness counting.
//!
//! Both walk the tree of freely reduced words over a generator set, carrying
//! the matrix product. Enumeration partitions by first letter and runs those
//! subtrees in parallel; subtree results are concatenated in canonical letter
//! order, so output is deterministic regardless of scheduling.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::mobius::{hyperbolic_distance, to_ball, MobiusTransform, UpperHalfSpacePoint};
use crate::error::{Error, Result};

/// Hard cap on enumeration depth; the tree is exponential in this.
pub const MAX_WORD_LENGTH_LIMIT: u32 = 16;

/// Matrices closer than this (up to sign) count as the same group element
/// when witnesses are deduplicated.
const ELEMENT_DEDUP_TOLERANCE: f64 = 1e-9;

/// Sampling controls for [`orbit_sample`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrbitOptions {
    pub max_word_length: u32,
    pub basepoint: UpperHalfSpacePoint,
    /// Ball-model norm at which an orbit point counts as escaped, in (0, 1).
    pub escape_threshold: f64,
    /// Keep only words with zero exponent sum (the fiber-subgroup filter).
    pub zero_exponent_sum: bool,
    /// Stop descending once a word escapes. Keeps sample sizes proportional
    /// to the escape front instead of the whole word tree; used for the
    /// fast-escaping loxodromic fixtures.
    pub prune_on_escape: bool,
}

impl OrbitOptions {
    pub fn new(max_word_length: u32, escape_threshold: f64) -> Result<Self> {
        if max_word_length > MAX_WORD_LENGTH_LIMIT {
            return Err(Error::InvalidParams(format!(
                "max_word_length {max_word_length} exceeds the limit {MAX_WORD_LENGTH_LIMIT}"
            )));
        }
        if !(escape_threshold > 0.0 && escape_threshold < 1.0) {
            return Err(Error::InvalidParams(format!(
                "escape_threshold must lie in (0, 1), got {escape_threshold}"
            )));
        }
        Ok(OrbitOptions {
            max_word_length,
            basepoint: UpperHalfSpacePoint::basepoint(),
            escape_threshold,
            zero_exponent_sum: false,
            prune_on_escape: false,
        })
    }
}

/// Radially projected orbit points that reached the escape threshold.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LimitSetSample {
    /// Unit vectors on the sphere at infinity of the ball model.
    pub points: Vec<[f64; 3]>,
    /// Which generator set produced the sample.
    pub generator_set: String,
    pub max_word_length: u32,
    pub escape_threshold: f64,
}

struct Walker<'a> {
    letters: Vec<MobiusTransform>,
    opts: &'a OrbitOptions,
    words_examined: u64,
    out: Vec<[f64; 3]>,
}

impl Walker<'_> {
    /// Letter ranks pair generator 2i with its inverse 2i+1.
    fn walk(&mut self, depth: u32, last: Option<usize>, m: &MobiusTransform, exp_sum: i64) {
        self.words_examined += 1;
        let p = m
            .apply(&self.opts.basepoint)
            .expect("group orbits stay in upper half-space");
        let b = to_ball(&p);
        let norm = (b[0] * b[0] + b[1] * b[1] + b[2] * b[2]).sqrt();
        let escaped = norm >= self.opts.escape_threshold;
        if escaped && (!self.opts.zero_exponent_sum || exp_sum == 0) {
            self.out.push([b[0] / norm, b[1] / norm, b[2] / norm]);
        }
        if depth == self.opts.max_word_length || (escaped && self.opts.prune_on_escape) {
            return;
        }
        for l in 0..self.letters.len() {
            if last.is_some_and(|prev| prev ^ 1 == l) {
                continue;
            }
            let next = m.compose(&self.letters[l]);
            let ds = if l % 2 == 0 { 1 } else { -1 };
            self.walk(depth + 1, Some(l), &next, exp_sum + ds);
        }
    }
}

fn letter_matrices(gens: &[MobiusTransform]) -> Vec<MobiusTransform> {
    gens.iter()
        .flat_map(|g| [*g, g.inverse()])
        .collect()
}

/// Enumerate reduced words up to the length bound, keep orbit points that
/// escape past the threshold, and project them to the unit sphere.
///
/// An empty result is reported as [`Error::EmptySample`].
pub fn orbit_sample(
    gens: &[MobiusTransform],
    generator_set: &str,
    opts: &OrbitOptions,
) -> Result<LimitSetSample> {
    if gens.is_empty() {
        return Err(Error::InvalidParams("no generators".into()));
    }
    let letters = letter_matrices(gens);

    // The identity word first.
    let mut points = Vec::new();
    let b = to_ball(&opts.basepoint);
    let norm = (b[0] * b[0] + b[1] * b[1] + b[2] * b[2]).sqrt();
    let root_escaped = norm >= opts.escape_threshold;
    if root_escaped {
        points.push([b[0] / norm, b[1] / norm, b[2] / norm]);
    }
    let mut words_examined = 1u64;

    // One subtree per first letter, in parallel; concatenated in letter
    // order so the point list is schedule-independent.
    if opts.max_word_length > 0 && !(root_escaped && opts.prune_on_escape) {
        let subtrees: Vec<(Vec<[f64; 3]>, u64)> = (0..letters.len())
            .into_par_iter()
            .map(|first| {
                let mut w = Walker {
                    letters: letters.clone(),
                    opts,
                    words_examined: 0,
                    out: Vec::new(),
                };
                let ds = if first % 2 == 0 { 1 } else { -1 };
                w.walk(1, Some(first), &letters[first], ds);
                (w.out, w.words_examined)
            })
            .collect();
        for (sub, n) in subtrees {
            points.extend(sub);
            words_examined += n;
        }
    }

    if points.is_empty() {
        return Err(Error::EmptySample { words_examined });
    }
    Ok(LimitSetSample {
        points,
        generator_set: generator_set.to_string(),
        max_word_length: opts.max_word_length,
        escape_threshold: opts.escape_threshold,
    })
}

/// Count the distinct enumerated group elements that move both points at
/// most `epsilon` in the hyperbolic metric.
pub fn acyl_witness_count(
    gens: &[MobiusTransform],
    max_word_length: u32,
    p: &UpperHalfSpacePoint,
    q: &UpperHalfSpacePoint,
    epsilon: f64,
) -> Result<u64> {
    if max_word_length > MAX_WORD_LENGTH_LIMIT {
        return Err(Error::InvalidParams(format!(
            "max_word_length {max_word_length} exceeds the limit {MAX_WORD_LENGTH_LIMIT}"
        )));
    }
    if epsilon < 0.0 {
        return Err(Error::InvalidParams("epsilon must be >= 0".into()));
    }
    let letters = letter_matrices(gens);

    fn collect(
        letters: &[MobiusTransform],
        depth: u32,
        max_depth: u32,
        last: Option<usize>,
        m: &MobiusTransform,
        p: &UpperHalfSpacePoint,
        q: &UpperHalfSpacePoint,
        epsilon: f64,
        hits: &mut Vec<MobiusTransform>,
    ) {
        let moved_p = hyperbolic_distance(p, &m.apply(p).expect("orbit stays interior"));
        if moved_p <= epsilon {
            let moved_q = hyperbolic_distance(q, &m.apply(q).expect("orbit stays interior"));
            if moved_q <= epsilon {
                hits.push(*m);
            }
        }
        if depth == max_depth {
            return;
        }
        for l in 0..letters.len() {
            if last.is_some_and(|prev| prev ^ 1 == l) {
                continue;
            }
            collect(
                letters,
                depth + 1,
                max_depth,
                Some(l),
                &m.compose(&letters[l]),
                p,
                q,
                epsilon,
                hits,
            );
        }
    }

    let mut hits: Vec<MobiusTransform> = if max_word_length == 0 || gens.is_empty() {
        let mut h = Vec::new();
        collect(
            &letters,
            0,
            0,
            None,
            &MobiusTransform::identity(),
            p,
            q,
            epsilon,
            &mut h,
        );
        h
    } else {
        let mut per_letter: Vec<Vec<MobiusTransform>> = (0..letters.len())
            .into_par_iter()
            .map(|first| {
                let mut h = Vec::new();
                collect(
                    &letters,
                    1,
                    max_word_length,
                    Some(first),
                    &letters[first],
                    p,
                    q,
                    epsilon,
                    &mut h,
                );
                h
            })
            .collect();
        let mut h = vec![MobiusTransform::identity()];
        for sub in &mut per_letter {
            h.append(sub);
        }
        h
    };

    // Words can repeat a group element; count elements, not words.
    let mut distinct: Vec<MobiusTransform> = Vec::new();
    for m in hits.drain(..) {
        if !distinct
            .iter()
            .any(|seen| seen.same_isometry(&m, ELEMENT_DEDUP_TOLERANCE))
        {
            distinct.push(m);
        }
    }
    Ok(distinct.len() as u64)
}
