#![allow(dead_code)]

use alexlarge::presentation::{Letter, Presentation, Word};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const NAMES: [&str; 4] = ["a", "b", "c", "d"];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform letters, freely reduced afterwards; may come out shorter than `len`.
pub fn random_word<R: Rng>(rng: &mut R, generators: usize, len: usize) -> Word {
    Word::free_reduce((0..len).map(|_| {
        let g = rng.gen_range(0..generators);
        if rng.gen_bool(0.5) {
            Letter::pos(g)
        } else {
            Letter::neg(g)
        }
    }))
}

pub fn random_presentation<R: Rng>(rng: &mut R, max_generators: usize, max_relators: usize, max_len: usize) -> Presentation {
    let r = rng.gen_range(1..=max_generators);
    let k = rng.gen_range(0..=max_relators);
    let relators = (0..k)
        .map(|_| {
            let len = rng.gen_range(1..=max_len);
            random_word(rng, r, len)
        })
        .collect();
    Presentation::new(NAMES[..r].iter().map(|s| s.to_string()).collect(), relators).unwrap()
}

/// Seeded corpus of small presentations.
pub fn corpus(seed: u64, count: usize, max_generators: usize, max_relators: usize, max_len: usize) -> Vec<Presentation> {
    let mut rng = rng(seed);
    (0..count)
        .map(|_| random_presentation(&mut rng, max_generators, max_relators, max_len))
        .collect()
}

pub fn pres(s: &str) -> Presentation {
    s.parse().unwrap()
}

pub const TREFOIL: &str = "< a, b | a b a b^-1 a^-1 b^-1 >";
pub const F2: &str = "< a, b | >";
