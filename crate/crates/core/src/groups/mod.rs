//! Words over finitely generated presentations, normal forms for the
//! supported families, and Cayley-ball generation.
//!
//! Three families are supported: free groups, free abelian groups, and
//! closed-surface groups of genus >= 2. Each has a computable canonical
//! form, so two words represent the same group element exactly when they
//! reduce to the same output.

mod dehn;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Capacity, Error, Result};
use crate::graph::BaseGraph;

/// One generator occurrence, possibly inverted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub index: u16,
    pub inverted: bool,
}

impl Letter {
    pub fn new(index: u16, inverted: bool) -> Self {
        Letter { index, inverted }
    }

    pub fn inverse(self) -> Self {
        Letter {
            index: self.index,
            inverted: !self.inverted,
        }
    }

    /// Total order used for shortlex comparisons: a < a⁻¹ < b < b⁻¹ < ...
    pub fn rank(self) -> u32 {
        (self.index as u32) * 2 + self.inverted as u32
    }

    fn cancels(self, other: Letter) -> bool {
        self.index == other.index && self.inverted != other.inverted
    }
}

/// A word over the generators; the empty word is the identity.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// Compact file form: one ASCII letter per generator, uppercase marks the
    /// inverse (`a b⁻¹` becomes `"aB"`). The empty string and `"1"` both
    /// denote the identity. Presentations with more than 26 generators have
    /// no compact form.
    pub fn compact(&self) -> String {
        self.0
            .iter()
            .map(|l| {
                let base = b'a' + (l.index as u8 % 26);
                if l.inverted {
                    (base - b'a' + b'A') as char
                } else {
                    base as char
                }
            })
            .collect()
    }

    pub fn parse_compact(s: &str) -> Result<Word> {
        let s = s.trim();
        if s.is_empty() || s == "1" {
            return Ok(Word::identity());
        }
        let mut letters = Vec::with_capacity(s.len());
        for ch in s.chars() {
            let letter = match ch {
                'a'..='z' => Letter::new((ch as u8 - b'a') as u16, false),
                'A'..='Z' => Letter::new((ch as u8 - b'A') as u16, true),
                _ => {
                    return Err(Error::InvalidWord(format!(
                        "unexpected character {ch:?} in word {s:?}"
                    )))
                }
            };
            letters.push(letter);
        }
        Ok(Word(letters))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            let base = (b'a' + (l.index as u8 % 26)) as char;
            if l.inverted {
                write!(f, "{base}\u{207b}\u{00b9}")?;
            } else {
                write!(f, "{base}")?;
            }
        }
        Ok(())
    }
}

/// The supported presentation families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "rank")]
pub enum PresentationFamily {
    /// Free group on k generators.
    Free(u16),
    /// Free abelian group on k generators.
    FreeAbelian(u16),
    /// Fundamental group of the closed orientable surface of the given
    /// genus (>= 2), presented with 2g generators and the single product-of-
    /// commutators relator.
    Surface(u16),
}

impl PresentationFamily {
    pub fn generator_count(&self) -> u16 {
        match *self {
            PresentationFamily::Free(k) | PresentationFamily::FreeAbelian(k) => k,
            PresentationFamily::Surface(g) => 2 * g,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            PresentationFamily::Free(k) | PresentationFamily::FreeAbelian(k) if k == 0 => Err(
                Error::InvalidFamily("need at least one generator".to_string()),
            ),
            PresentationFamily::Surface(g) if g < 2 => Err(Error::InvalidFamily(format!(
                "surface genus must be >= 2, got {g}"
            ))),
            _ if self.generator_count() > 26 => Err(Error::InvalidFamily(
                "at most 26 generators are supported (one ASCII letter each)".to_string(),
            )),
            _ => Ok(()),
        }
    }

    fn check_word(&self, w: &Word) -> Result<()> {
        let count = self.generator_count() as usize;
        for l in w.letters() {
            if l.index as usize >= count {
                return Err(Error::LetterOutOfRange {
                    index: l.index as usize,
                    count,
                });
            }
        }
        Ok(())
    }
}

impl fmt::Display for PresentationFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            PresentationFamily::Free(k) => write!(f, "free:{k}"),
            PresentationFamily::FreeAbelian(k) => write!(f, "free_abelian:{k}"),
            PresentationFamily::Surface(g) => write!(f, "surface:{g}"),
        }
    }
}

impl FromStr for PresentationFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (tag, rank) = s
            .split_once(':')
            .ok_or_else(|| Error::InvalidFamily(format!("expected tag:rank, got {s:?}")))?;
        let rank: u16 = rank
            .parse()
            .map_err(|_| Error::InvalidFamily(format!("bad rank in {s:?}")))?;
        let fam = match tag {
            "free" => PresentationFamily::Free(rank),
            "free_abelian" => PresentationFamily::FreeAbelian(rank),
            "surface" => PresentationFamily::Surface(rank),
            _ => return Err(Error::InvalidFamily(format!("unknown family tag {tag:?}"))),
        };
        fam.validate()?;
        Ok(fam)
    }
}

/// Cancel adjacent inverse pairs until none remain.
pub(crate) fn free_reduce(letters: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(letters.len());
    for &l in letters {
        if out.last().is_some_and(|&last| last.cancels(l)) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// Canonical normal form of `w` in the given family.
///
/// Free groups use free reduction, free abelian groups the sorted exponent
/// vector, and surface groups Dehn reduction followed by a shortlex-minimal
/// representative search (exact for the word lengths used here).
pub fn reduce_word(w: &Word, fam: &PresentationFamily) -> Result<Word> {
    fam.validate()?;
    fam.check_word(w)?;
    match *fam {
        PresentationFamily::Free(_) => Ok(Word(free_reduce(&w.0))),
        PresentationFamily::FreeAbelian(k) => {
            let mut exponents = vec![0i64; k as usize];
            for l in w.letters() {
                exponents[l.index as usize] += if l.inverted { -1 } else { 1 };
            }
            let mut letters = Vec::new();
            for (i, &e) in exponents.iter().enumerate() {
                let letter = Letter::new(i as u16, e < 0);
                for _ in 0..e.unsigned_abs() {
                    letters.push(letter);
                }
            }
            Ok(Word(letters))
        }
        PresentationFamily::Surface(g) => {
            let group = dehn::SurfaceGroup::new(g);
            Ok(Word(group.canonical(&w.0)?))
        }
    }
}

/// Decide whether two words represent the same group element, without going
/// through canonical forms: free and abelian families compare reductions of
/// u^-1 v, surface groups ask Dehn's algorithm whether u^-1 v dies.
pub fn words_equal(u: &Word, v: &Word, fam: &PresentationFamily) -> Result<bool> {
    fam.validate()?;
    fam.check_word(u)?;
    fam.check_word(v)?;
    let product = u.inverse().concat(v);
    match *fam {
        PresentationFamily::Free(_) => Ok(free_reduce(&product.0).is_empty()),
        PresentationFamily::FreeAbelian(_) => {
            Ok(reduce_word(&product, fam)?.is_empty())
        }
        PresentationFamily::Surface(g) => {
            Ok(dehn::SurfaceGroup::new(g).is_trivial(&product.0))
        }
    }
}

/// Sum over letters of +1 (plain) or -1 (inverted).
pub fn exponent_sum(w: &Word) -> i64 {
    w.letters()
        .iter()
        .map(|l| if l.inverted { -1i64 } else { 1 })
        .sum()
}

/// A Cayley ball: the vertices are the normal forms of all elements at word
/// distance at most `radius` from the identity, edges join elements that
/// differ by one right-multiplied generator.
#[derive(Debug, Clone)]
pub struct CayleyBall {
    pub family: PresentationFamily,
    pub radius: u32,
    pub graph: BaseGraph,
    pub words: Vec<Word>,
    index: HashMap<Word, u32>,
}

impl CayleyBall {
    pub fn vertex_of(&self, normal_form: &Word) -> Option<u32> {
        self.index.get(normal_form).copied()
    }

    /// Reduce an arbitrary word and locate it in the ball.
    pub fn locate(&self, w: &Word) -> Result<u32> {
        let nf = reduce_word(w, &self.family)?;
        self.vertex_of(&nf).ok_or_else(|| Error::WordOutsideBall {
            word: w.compact(),
        })
    }

    pub fn identity_vertex(&self) -> u32 {
        self.index[&Word::identity()]
    }
}

fn shortlex_leq(a: &Word, b: &Word) -> std::cmp::Ordering {
    a.len()
        .cmp(&b.len())
        .then_with(|| a.0.iter().map(|l| l.rank()).cmp(b.0.iter().map(|l| l.rank())))
}

/// Generate the Cayley ball of the family out to `radius`.
///
/// Vertices are discovered sphere by sphere and sorted shortlex inside each
/// sphere, so indices, labels and edges are deterministic.
pub fn cayley_ball(
    fam: &PresentationFamily,
    radius: u32,
    capacity: &Capacity,
) -> Result<CayleyBall> {
    fam.validate()?;
    let gens: Vec<Letter> = (0..fam.generator_count())
        .flat_map(|i| [Letter::new(i, false), Letter::new(i, true)])
        .collect();

    let mut index: HashMap<Word, u32> = HashMap::new();
    let mut words: Vec<Word> = Vec::new();
    index.insert(Word::identity(), 0);
    words.push(Word::identity());
    let mut frontier: Vec<Word> = vec![Word::identity()];

    for _ in 0..radius {
        let mut sphere: Vec<Word> = Vec::new();
        for w in &frontier {
            for &g in &gens {
                let next = reduce_word(&Word(w.0.iter().copied().chain([g]).collect()), fam)?;
                if !index.contains_key(&next) && !sphere.contains(&next) {
                    sphere.push(next);
                }
            }
        }
        sphere.sort_by(shortlex_leq);
        sphere.dedup();
        if words.len() as u64 + sphere.len() as u64 > capacity.max_vertices {
            return Err(Error::CapacityExceeded {
                what: "Cayley ball vertex count",
                needed: words.len() as u64 + sphere.len() as u64,
                limit: capacity.max_vertices,
            });
        }
        for w in &sphere {
            index.insert(w.clone(), words.len() as u32);
            words.push(w.clone());
        }
        frontier = sphere;
        if frontier.is_empty() {
            break;
        }
    }

    let mut edges: Vec<(u32, u32)> = Vec::new();
    for (i, w) in words.iter().enumerate() {
        for &g in &gens {
            let next = reduce_word(&Word(w.0.iter().copied().chain([g]).collect()), fam)?;
            if let Some(&j) = index.get(&next) {
                if (i as u32) < j {
                    edges.push((i as u32, j));
                }
            }
        }
    }
    edges.sort_unstable();
    edges.dedup();

    let labels: Vec<String> = words.iter().map(|w| w.compact()).collect();
    let graph = BaseGraph::new(labels, &edges)?;
    Ok(CayleyBall {
        family: *fam,
        radius,
        graph,
        words,
        index,
    })
}
