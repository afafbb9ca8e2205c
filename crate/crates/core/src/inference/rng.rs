use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Description of the generator and substream scheme, recorded in outputs.
pub const RNG_ALGORITHM: &str =
    "ChaCha8 (rand_chacha 0.9); ChaCha8Rng::seed_from_u64(seed) then set_stream((domain << 56) | index)";

/// Independent uses of randomness under one seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u64)]
pub enum Domain {
    /// Reference samples for the marginal test.
    Reference = 1,
    /// Samples from the joint law (power trials).
    Observed = 2,
    /// Draws of the asymptotic null law.
    Null = 3,
    /// Row permutations.
    Permutation = 4,
}

/// The generator for replicate `index` within `domain`.
pub fn substream(seed: u64, domain: Domain, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((domain as u64) << 56) | (index & ((1 << 56) - 1)));
    rng
}
