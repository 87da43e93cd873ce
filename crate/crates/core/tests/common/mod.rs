//! Deterministic random representation corpus shared by the
//! integration suites.

// each suite uses a different slice of these helpers
#![allow(dead_code)]

use arimat_core::abelian_group::FgGroup;
use arimat_core::Representation;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const ENTRY_RANGE: std::ops::RangeInclusive<i64> = -9..=9;
pub const TORSION_CHOICES: [i64; 4] = [2, 3, 4, 6];

/// Divisibility chain of up to two orders drawn from the allowed set.
pub fn random_torsion_chain(rng: &mut ChaCha8Rng) -> Vec<i64> {
    match rng.gen_range(0..3) {
        0 => vec![],
        1 => vec![*TORSION_CHOICES.choose(rng).unwrap()],
        _ => {
            let d1 = *TORSION_CHOICES.choose(rng).unwrap();
            let multiples: Vec<i64> = TORSION_CHOICES
                .iter()
                .copied()
                .filter(|d| d % d1 == 0)
                .collect();
            vec![d1, *multiples.choose(rng).unwrap()]
        }
    }
}

/// A random representation with `1 <= k <= max_k` elements, free rank
/// up to 4, free coordinates in [-9, 9], and a random torsion chain.
pub fn random_representation(rng: &mut ChaCha8Rng, max_k: usize) -> Representation {
    let k = rng.gen_range(1..=max_k);
    let r = rng.gen_range(0..=4usize);
    let torsion = random_torsion_chain(rng);
    let g = FgGroup::new(r, torsion.iter().map(|&d| d.into()).collect()).unwrap();
    let coords: Vec<Vec<i64>> = (0..k)
        .map(|_| {
            let mut c: Vec<i64> = (0..r).map(|_| rng.gen_range(ENTRY_RANGE)).collect();
            c.extend(torsion.iter().map(|&d| rng.gen_range(0..d)));
            c
        })
        .collect();
    Representation::from_coords(g, &coords).unwrap()
}

/// Fixed per-index seed so every run (and every shard assignment)
/// regenerates the same corpus.
pub fn corpus_rng(index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x5eed_0000 + index)
}

pub fn random_order(rng: &mut ChaCha8Rng, k: usize) -> Vec<usize> {
    let mut seq: Vec<usize> = (0..k).collect();
    seq.shuffle(rng);
    seq
}
