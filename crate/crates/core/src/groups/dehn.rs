//! Word problem and normal forms for closed-surface groups of genus >= 2.
//!
//! The single relator `[a1,b1]...[ag,bg]` has length 4g, and any two distinct
//! cyclic subwords of the symmetrized relator set share at most one letter,
//! so these presentations satisfy the small-cancellation condition that makes
//! Dehn's algorithm a complete solution to the word problem: a word
//! represents the identity exactly when Dehn reduction kills it.
//!
//! Dehn-reduced words are not unique per element, so the canonical form
//! finishes with a bounded search: starting from the Dehn-reduced word, close
//! under relator substitutions that keep the length within +2 of the current
//! minimum (this covers every region shape a reduced diagram between two
//! geodesics can have), then pick the shortlex-least word of minimal length.

use std::collections::{BTreeSet, VecDeque};

use super::{free_reduce, Letter};
use crate::error::{Error, Result};

/// Visited-set cap for the canonical-form closure. Word lengths in this
/// artifact stay <= ~16 where the closure is tiny; the cap only guards
/// against misuse.
const SEARCH_LIMIT: usize = 200_000;

pub(crate) struct SurfaceGroup {
    relator_len: usize,
    /// All cyclic shifts of the relator and of its inverse.
    symmetrized: Vec<Vec<Letter>>,
}

impl SurfaceGroup {
    pub fn new(genus: u16) -> Self {
        let mut relator = Vec::with_capacity(4 * genus as usize);
        for g in 0..genus {
            let a = Letter::new(2 * g, false);
            let b = Letter::new(2 * g + 1, false);
            relator.extend([a, b, a.inverse(), b.inverse()]);
        }
        let relator_len = relator.len();
        let inverse: Vec<Letter> = relator.iter().rev().map(|l| l.inverse()).collect();
        let mut symmetrized = Vec::with_capacity(2 * relator_len);
        for base in [relator, inverse] {
            for s in 0..relator_len {
                let mut rot = base[s..].to_vec();
                rot.extend_from_slice(&base[..s]);
                symmetrized.push(rot);
            }
        }
        SurfaceGroup {
            relator_len,
            symmetrized,
        }
    }

    /// Longest common prefix of `w[i..]` with relator `r`.
    fn match_len(&self, w: &[Letter], i: usize, r: &[Letter]) -> usize {
        let mut m = 0;
        while i + m < w.len() && m < self.relator_len && w[i + m] == r[m] {
            m += 1;
        }
        m
    }

    /// Replace `w[i..i+m]`, a prefix of relator `r`, by the inverse of the
    /// complementary suffix, then freely reduce.
    fn substitute(&self, w: &[Letter], i: usize, m: usize, r: &[Letter]) -> Vec<Letter> {
        let mut out = Vec::with_capacity(w.len() + self.relator_len);
        out.extend_from_slice(&w[..i]);
        out.extend(r[m..].iter().rev().map(|l| l.inverse()));
        out.extend_from_slice(&w[i + m..]);
        free_reduce(&out)
    }

    /// Dehn reduction: repeatedly replace any subword that covers more than
    /// half of a relator. The result is empty iff the word is trivial.
    pub fn dehn_reduce(&self, letters: &[Letter]) -> Vec<Letter> {
        let half = self.relator_len / 2;
        let mut w = free_reduce(letters);
        'outer: loop {
            for i in 0..w.len() {
                for r in &self.symmetrized {
                    let m = self.match_len(&w, i, r);
                    if m > half {
                        w = self.substitute(&w, i, m, r);
                        continue 'outer;
                    }
                }
            }
            return w;
        }
    }

    pub fn is_trivial(&self, letters: &[Letter]) -> bool {
        self.dehn_reduce(letters).is_empty()
    }

    /// Canonical normal form: shortlex-least among the minimal-length words
    /// reachable from the Dehn-reduced form by relator substitutions with a
    /// matched prefix of at least `half - 1` letters, never growing more than
    /// 2 over the running minimum.
    pub fn canonical(&self, letters: &[Letter]) -> Result<Vec<Letter>> {
        let half = self.relator_len / 2;
        let start = self.dehn_reduce(letters);
        let mut min_len = start.len();
        let mut seen: BTreeSet<Vec<Letter>> = BTreeSet::new();
        seen.insert(start.clone());
        let mut queue = VecDeque::from([start]);
        while let Some(cur) = queue.pop_front() {
            for i in 0..cur.len() {
                for r in &self.symmetrized {
                    let matched = self.match_len(&cur, i, r);
                    for m in (half - 1)..=matched {
                        let cand = self.substitute(&cur, i, m, r);
                        if cand.len() > min_len + 2 || seen.contains(&cand) {
                            continue;
                        }
                        min_len = min_len.min(cand.len());
                        seen.insert(cand.clone());
                        queue.push_back(cand);
                        if seen.len() > SEARCH_LIMIT {
                            return Err(Error::CanonicalSearchOverflow {
                                limit: SEARCH_LIMIT,
                            });
                        }
                    }
                }
            }
        }
        Ok(seen
            .iter()
            .filter(|w| w.len() == min_len)
            .min_by(|a, b| {
                a.iter()
                    .map(|l| l.rank())
                    .cmp(b.iter().map(|l| l.rank()))
            })
            .expect("the reduced start word is always in the visited set")
            .clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn letters(s: &str) -> Vec<Letter> {
        super::super::Word::parse_compact(s).unwrap().0
    }

    #[test]
    fn relator_and_conjugates_are_trivial() {
        let g = SurfaceGroup::new(2);
        assert!(g.is_trivial(&letters("abABcdCD")));
        assert!(g.is_trivial(&letters("cabABcdCDC")));
        assert!(!g.is_trivial(&letters("ab")));
        assert!(g.canonical(&letters("abABcdCD")).unwrap().is_empty());
    }

    #[test]
    fn half_relator_words_share_a_canonical_form() {
        let g = SurfaceGroup::new(2);
        // abAB and dcDC are the two halves of the relator, hence equal.
        let c1 = g.canonical(&letters("abAB")).unwrap();
        let c2 = g.canonical(&letters("dcDC")).unwrap();
        assert_eq!(c1, c2);
        assert_eq!(c1.len(), 4);
    }

    #[test]
    fn genus_three_relator_reduces() {
        let g = SurfaceGroup::new(3);
        assert!(g.is_trivial(&letters("abABcdCDefEF")));
    }
}
