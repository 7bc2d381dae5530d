//! Kleinian fixtures and orbit machinery: isometry checks, plane
//! preservation, limit-set samples, box-dimension oracles, and acylindricity
//! witness counts.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cuspcraft_core::{
    acyl_witness_count, box_dimension, exponent_sum, fixture, hyperbolic_distance,
    kleinian::cell_coverage, orbit_sample, FixtureName, Letter, MobiusTransform,
    OrbitOptions, UpperHalfSpacePoint, Word,
};

fn random_mobius(rng: &mut ChaCha8Rng) -> MobiusTransform {
    loop {
        let entry = |rng: &mut ChaCha8Rng| {
            Complex64::new(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0))
        };
        let (a, b, c, d) = (entry(rng), entry(rng), entry(rng), entry(rng));
        if (a * d - b * c).norm() > 0.1 {
            return MobiusTransform::normalized(a, b, c, d).unwrap();
        }
    }
}

fn random_point(rng: &mut ChaCha8Rng) -> UpperHalfSpacePoint {
    UpperHalfSpacePoint::new(
        rng.random_range(-3.0..3.0),
        rng.random_range(-3.0..3.0),
        rng.random_range(0.05..5.0),
    )
    .unwrap()
}

#[test]
fn poincare_extension_is_an_isometry() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for _ in 0..10_000 {
        let m = random_mobius(&mut rng);
        let p = random_point(&mut rng);
        let q = random_point(&mut rng);
        let d0 = hyperbolic_distance(&p, &q);
        let d1 = hyperbolic_distance(&m.apply(&p).unwrap(), &m.apply(&q).unwrap());
        assert!(
            (d0 - d1).abs() <= 1e-9 * (1.0 + d0),
            "isometry defect {} at distance {}",
            (d0 - d1).abs(),
            d0
        );
    }
}

#[test]
fn real_fixtures_preserve_the_vertical_plane() {
    // Orbit of a y = 0 basepoint under the octagon generators: enumerate all
    // reduced words up to length 6 and track the y coordinate exactly.
    let f = fixture(FixtureName::Octagon).unwrap();
    let letters: Vec<MobiusTransform> = f
        .generators
        .iter()
        .flat_map(|g| [*g, g.inverse()])
        .collect();
    let base = UpperHalfSpacePoint::basepoint();
    let mut max_y = 0.0f64;
    let mut stack: Vec<(MobiusTransform, Option<usize>, u32)> =
        vec![(MobiusTransform::identity(), None, 0)];
    while let Some((m, last, depth)) = stack.pop() {
        let p = m.apply(&base).unwrap();
        max_y = max_y.max(p.y.abs());
        if depth == 6 {
            continue;
        }
        for (l, lm) in letters.iter().enumerate() {
            if last.is_some_and(|prev| prev ^ 1 == l) {
                continue;
            }
            stack.push((m.compose(lm), Some(l), depth + 1));
        }
    }
    assert!(max_y <= 1e-12, "max |y| = {max_y}");
}

#[test]
fn fiber_words_stay_in_the_kernel_under_conjugation() {
    // conjugating a zero-exponent-sum word by either generator keeps the
    // exponent sum at zero
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..1_000 {
        let len = rng.random_range(1..=10usize) * 2;
        // build a zero-sum word: half plain, half inverted letters
        let mut letters: Vec<Letter> = (0..len)
            .map(|i| Letter::new(rng.random_range(0..2), i % 2 == 0))
            .collect();
        for i in (1..letters.len()).rev() {
            let j = rng.random_range(0..=i);
            letters.swap(i, j);
        }
        let w = Word(letters);
        assert_eq!(exponent_sum(&w), 0);
        for g in [
            Word(vec![Letter::new(0, false)]),
            Word(vec![Letter::new(1, false)]),
        ] {
            let conj = g.concat(&w).concat(&g.inverse());
            assert_eq!(exponent_sum(&conj), 0);
        }
    }
}

#[test]
fn orbit_samples_are_deterministic() {
    let f = fixture(FixtureName::Schottky).unwrap();
    let opts = OrbitOptions::new(8, 0.98).unwrap();
    let s1 = orbit_sample(&f.generators, "schottky", &opts).unwrap();
    let s2 = orbit_sample(&f.generators, "schottky", &opts).unwrap();
    assert_eq!(s1.points.len(), s2.points.len());
    for (p, q) in s1.points.iter().zip(&s2.points) {
        assert_eq!(p.map(f64::to_bits), q.map(f64::to_bits));
    }
}

#[test]
fn octagon_sample_lies_on_the_equatorial_circle() {
    let f = fixture(FixtureName::Octagon).unwrap();
    let opts = OrbitOptions {
        prune_on_escape: true,
        ..OrbitOptions::new(8, 0.999).unwrap()
    };
    let s = orbit_sample(&f.generators, "octagon", &opts).unwrap();
    assert!(s.points.len() > 1000, "got {} points", s.points.len());
    for p in &s.points {
        assert!(p[1].abs() <= 1e-12);
        let r = (p[0] * p[0] + p[2] * p[2]).sqrt();
        assert!((r - 1.0).abs() <= 1e-9);
    }
    let d = box_dimension(&s.points, &[0.25, 0.125, 0.0625]).unwrap();
    assert!((0.85..=1.15).contains(&d), "circle dimension {d}");
}

#[test]
fn fiber_sample_spreads_over_the_sphere() {
    // smaller than the acceptance run, but already hits most cells
    let f = fixture(FixtureName::Fig8Fiber).unwrap();
    let opts = OrbitOptions {
        zero_exponent_sum: true,
        ..OrbitOptions::new(10, 0.99).unwrap()
    };
    let s = orbit_sample(&f.generators, "fig8_fiber", &opts).unwrap();
    assert!(s.points.len() >= 1000);
    let (occupied, total) = cell_coverage(&s.points, 8);
    assert_eq!(total, 384);
    assert!(occupied * 2 > total, "coverage {occupied}/{total}");
}

#[test]
fn box_dimension_synthetic_oracles() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    // uniform points on a great circle
    let circle: Vec<[f64; 3]> = (0..100_000)
        .map(|_| {
            let t = rng.random_range(0.0..std::f64::consts::TAU);
            [t.cos(), t.sin(), 0.0]
        })
        .collect();
    let d = box_dimension(&circle, &[0.25, 0.125, 0.0625]).unwrap();
    assert!((d - 1.0).abs() <= 0.15, "circle dimension {d}");

    // uniform points on the sphere (area-uniform via z, angle)
    let sphere: Vec<[f64; 3]> = (0..100_000)
        .map(|_| {
            let z: f64 = rng.random_range(-1.0..1.0);
            let t = rng.random_range(0.0..std::f64::consts::TAU);
            let r = (1.0 - z * z).sqrt();
            [r * t.cos(), r * t.sin(), z]
        })
        .collect();
    let d = box_dimension(&sphere, &[0.25, 0.125, 0.0625]).unwrap();
    assert!((d - 2.0).abs() <= 0.15, "sphere dimension {d}");
}

#[test]
fn far_pairs_admit_only_the_identity_witness() {
    let p = UpperHalfSpacePoint::basepoint();
    let q = UpperHalfSpacePoint::new(0.0, 0.0, 10f64.exp()).unwrap();
    assert!(hyperbolic_distance(&p, &q) >= 10.0);
    for name in [FixtureName::Octagon, FixtureName::Schottky] {
        let f = fixture(name).unwrap();
        let count = acyl_witness_count(&f.generators, 6, &p, &q, 0.1).unwrap();
        assert_eq!(count, 1, "fixture {name}");
    }
}

#[test]
fn near_pair_catches_more_witnesses_at_large_epsilon() {
    // sanity check that the counter counts more than the identity when the
    // tolerance swallows a generator
    let f = fixture(FixtureName::Octagon).unwrap();
    let p = UpperHalfSpacePoint::basepoint();
    let length = f.generators[0].classify().unwrap().translation_length;
    let count = acyl_witness_count(&f.generators, 2, &p, &p, length * 3.0).unwrap();
    assert!(count > 1);
}

#[test]
fn words_that_repeat_an_element_are_counted_once() {
    // relator words evaluate to the identity; enumerating past them must not
    // inflate the witness count
    let f = fixture(FixtureName::Octagon).unwrap();
    let p = UpperHalfSpacePoint::basepoint();
    let q = UpperHalfSpacePoint::new(0.0, 0.0, 10f64.exp()).unwrap();
    // length-8 enumeration passes through all relator spellings of the identity
    let count = acyl_witness_count(&f.generators, 8, &p, &q, 0.1).unwrap();
    assert_eq!(count, 1);
}
