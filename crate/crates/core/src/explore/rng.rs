//! Seeded generator streams.
//!
//! Every stream is xoshiro256++ seeded from a `u64` through SplitMix64
//! (`Xoshiro256PlusPlus::seed_from_u64`). Stream `i` of seed `s` is the base
//! generator for `s` advanced by `i` calls to `jump()`, i.e. by `i * 2^128`
//! outputs, so streams never overlap in practice and do not depend on
//! scheduling.

use rand::SeedableRng;
use rand_xoshiro::Xoshiro256PlusPlus;

use crate::concept::{Concept, ConceptClass, MAX_INSTANCES};
use crate::error::{Error, Result};

pub type StreamRng = Xoshiro256PlusPlus;

/// Generator for stream `index` under `seed`.
pub fn stream(seed: u64, index: u64) -> StreamRng {
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(seed);
    for _ in 0..index {
        rng.jump();
    }
    rng
}

/// `count` distinct concepts over `[n]`, uniformly without replacement.
pub fn random_class_from(rng: &mut StreamRng, n: usize, count: usize) -> Result<ConceptClass> {
    if n == 0 || n > MAX_INSTANCES {
        return Err(Error::Parameter(format!(
            "n = {n} is outside 1..={MAX_INSTANCES}"
        )));
    }
    let universe = 1usize << n;
    if count == 0 || count > universe {
        return Err(Error::Parameter(format!(
            "class size {count} must lie in 1..=2^{n}"
        )));
    }
    let picked = rand::seq::index::sample(rng, universe, count);
    ConceptClass::new(n, picked.into_iter().map(|w| Concept::from_word(w as u32)))
}

/// A uniformly random class of `count` concepts, deterministic in `seed`.
pub fn random_class(n: usize, count: usize, seed: u64) -> Result<ConceptClass> {
    random_class_from(&mut stream(seed, 0), n, count)
}
