//! Normal forms and Cayley balls: enumeration oracles, idempotence sweeps,
//! and cross-family invariants.

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cuspcraft_core::{
    cayley_ball, exponent_sum, reduce_word, words_equal, Capacity, Letter, PresentationFamily,
    Word,
};

fn random_word(rng: &mut ChaCha8Rng, gen_count: u16, max_len: usize) -> Word {
    let len = rng.random_range(0..=max_len);
    Word(
        (0..len)
            .map(|_| Letter::new(rng.random_range(0..gen_count), rng.random_bool(0.5)))
            .collect(),
    )
}

#[test]
fn reduction_is_idempotent_for_ten_thousand_words_per_family() {
    for fam in [
        PresentationFamily::Free(2),
        PresentationFamily::FreeAbelian(3),
        PresentationFamily::Surface(2),
    ] {
        let mut rng = ChaCha8Rng::seed_from_u64(0xC0FFEE);
        let max_len = if matches!(fam, PresentationFamily::Surface(_)) {
            12
        } else {
            40
        };
        for _ in 0..10_000 {
            let w = random_word(&mut rng, fam.generator_count(), max_len);
            let once = reduce_word(&w, &fam).unwrap();
            let twice = reduce_word(&once, &fam).unwrap();
            assert_eq!(once, twice, "family {fam}, word {w}");
        }
    }
}

#[test]
fn free2_ball_sizes_match_the_sphere_formula() {
    // |B(r)| = 1 + sum_{i=1..r} 4 * 3^(i-1)
    let cap = Capacity::default();
    let mut expected = 1u64;
    for r in 0..=6u32 {
        if r > 0 {
            expected += 4 * 3u64.pow(r - 1);
        }
        let ball = cayley_ball(&PresentationFamily::Free(2), r, &cap).unwrap();
        assert_eq!(ball.graph.vertex_count() as u64, expected, "radius {r}");
    }
}

#[test]
fn sphere_sizes_by_exhaustive_enumeration() {
    // Enumerate all words (not just reduced ones) of length <= r over the
    // doubled alphabet and count distinct normal forms.
    let cap = Capacity::default();
    for (fam, radius) in [
        (PresentationFamily::Free(2), 2u32),
        (PresentationFamily::FreeAbelian(2), 2),
    ] {
        let k = fam.generator_count();
        let letters: Vec<Letter> = (0..k)
            .flat_map(|i| [Letter::new(i, false), Letter::new(i, true)])
            .collect();
        let mut all = vec![Word::identity()];
        let mut frontier = vec![Word::identity()];
        for _ in 0..radius {
            let mut next = Vec::new();
            for w in &frontier {
                for &l in &letters {
                    next.push(Word(w.0.iter().copied().chain([l]).collect()));
                }
            }
            all.extend(next.iter().cloned());
            frontier = next;
        }
        let mut forms: Vec<Word> = all
            .iter()
            .map(|w| reduce_word(w, &fam).unwrap())
            .collect();
        forms.sort();
        forms.dedup();
        let ball = cayley_ball(&fam, radius, &cap).unwrap();
        assert_eq!(ball.graph.vertex_count(), forms.len(), "family {fam}");
    }
    // free(2) radius 2 must be 17, free_abelian(2) must be 2r^2+2r+1 = 13
    assert_eq!(
        cayley_ball(&PresentationFamily::Free(2), 2, &cap)
            .unwrap()
            .graph
            .vertex_count(),
        17
    );
    assert_eq!(
        cayley_ball(&PresentationFamily::FreeAbelian(2), 2, &cap)
            .unwrap()
            .graph
            .vertex_count(),
        13
    );
}

#[test]
fn every_ball_edge_is_one_generator_step() {
    let cap = Capacity::default();
    for (fam, radius) in [
        (PresentationFamily::Free(2), 3u32),
        (PresentationFamily::FreeAbelian(2), 3),
        (PresentationFamily::Surface(2), 2),
    ] {
        let ball = cayley_ball(&fam, radius, &cap).unwrap();
        let letters: Vec<Letter> = (0..fam.generator_count())
            .flat_map(|i| [Letter::new(i, false), Letter::new(i, true)])
            .collect();
        for (u, v) in ball.graph.edges() {
            let wu = &ball.words[u as usize];
            let wv = &ball.words[v as usize];
            let ok = letters.iter().any(|&l| {
                let stepped = reduce_word(&Word(wu.0.iter().copied().chain([l]).collect()), &fam)
                    .unwrap();
                &stepped == wv
            });
            assert!(ok, "edge ({u}, {v}) in family {fam} is not a generator step");
        }
    }
}

#[test]
fn exponent_sum_is_reduction_invariant_where_relators_are_balanced() {
    for fam in [PresentationFamily::Free(3), PresentationFamily::Surface(2)] {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..2_000 {
            let w = random_word(&mut rng, fam.generator_count(), 12);
            let reduced = reduce_word(&w, &fam).unwrap();
            assert_eq!(exponent_sum(&w), exponent_sum(&reduced));
        }
    }
}

#[test]
fn surface_canonical_forms_agree_with_the_dehn_oracle() {
    let fam = PresentationFamily::Surface(2);
    let cap = Capacity::default();
    let ball = cayley_ball(&fam, 3, &cap).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(99);

    // distinct vertices are distinct group elements, per Dehn
    for _ in 0..3_000 {
        let i = rng.random_range(0..ball.words.len());
        let j = rng.random_range(0..ball.words.len());
        let same_vertex = i == j;
        let equal = words_equal(&ball.words[i], &ball.words[j], &fam).unwrap();
        assert_eq!(same_vertex, equal, "vertices {i}, {j}");
    }

    // inserting a conjugated relator never changes the canonical form
    let relator = Word::parse_compact("abABcdCD").unwrap();
    for _ in 0..1_000 {
        let w = random_word(&mut rng, 4, 10);
        let conj = random_word(&mut rng, 4, 3);
        let padded = w
            .concat(&conj)
            .concat(&relator)
            .concat(&conj.inverse());
        assert_eq!(
            reduce_word(&w, &fam).unwrap(),
            reduce_word(&padded, &fam).unwrap()
        );
    }
}

#[test]
fn surface_sphere_sizes_regression() {
    let fam = PresentationFamily::Surface(2);
    let cap = Capacity::default();
    let sizes: Vec<usize> = (0..=4u32)
        .map(|r| cayley_ball(&fam, r, &cap).unwrap().graph.vertex_count())
        .collect();
    // spheres 1, 8, 56, 392, 2736: identifications start at radius 4, where
    // the eight half-relator pairs merge
    assert_eq!(sizes, vec![1, 9, 65, 457, 3193]);
}

#[test]
fn ball_labels_round_trip_as_words() {
    let cap = Capacity::default();
    let ball = cayley_ball(&PresentationFamily::Free(2), 3, &cap).unwrap();
    for (i, w) in ball.words.iter().enumerate() {
        let label = ball.graph.label(i as u32);
        assert_eq!(&Word::parse_compact(label).unwrap(), w);
        assert_eq!(ball.vertex_of(w), Some(i as u32));
    }
}

proptest! {
    #[test]
    fn free_reduction_never_grows_and_is_idempotent(letters in prop::collection::vec((0u16..3, any::<bool>()), 0..40)) {
        let w = Word(letters.into_iter().map(|(i, inv)| Letter::new(i, inv)).collect());
        let fam = PresentationFamily::Free(3);
        let r = reduce_word(&w, &fam).unwrap();
        prop_assert!(r.len() <= w.len());
        prop_assert_eq!(reduce_word(&r, &fam).unwrap(), r);
    }

    #[test]
    fn abelian_form_is_sorted_and_sum_preserving(letters in prop::collection::vec((0u16..3, any::<bool>()), 0..30)) {
        let w = Word(letters.into_iter().map(|(i, inv)| Letter::new(i, inv)).collect());
        let fam = PresentationFamily::FreeAbelian(3);
        let r = reduce_word(&w, &fam).unwrap();
        prop_assert_eq!(exponent_sum(&w), exponent_sum(&r));
        for pair in r.letters().windows(2) {
            prop_assert!(pair[0].index <= pair[1].index);
        }
    }

    #[test]
    fn word_inverse_cancels(letters in prop::collection::vec((0u16..4, any::<bool>()), 0..20)) {
        let w = Word(letters.into_iter().map(|(i, inv)| Letter::new(i, inv)).collect());
        let fam = PresentationFamily::Free(4);
        let product = w.concat(&w.inverse());
        prop_assert!(reduce_word(&product, &fam).unwrap().is_empty());
    }
}
