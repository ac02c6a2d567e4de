//! Seed derivation and random streams.
//!
//! Every random stream is keyed by `(master seed, index)` through the
//! SplitMix64 finalizer, so trials and generated edges can be produced in
//! any order or in parallel and still reproduce bit for bit.

use rand::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

/// The 64-bit golden-ratio increment used by SplitMix64.
pub const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 output finalizer.
pub fn splitmix64_finalize(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Sub-seed for stream `index` under `master`.
///
/// `finalize((master ^ GAMMA) + (index + 1) * GAMMA)`, i.e. the
/// `(index + 1)`-th SplitMix64 output for initial state `master ^ GAMMA`.
pub fn mix(master: u64, index: u64) -> u64 {
    let state = (master ^ GOLDEN_GAMMA).wrapping_add(index.wrapping_add(1).wrapping_mul(GOLDEN_GAMMA));
    splitmix64_finalize(state)
}

/// The generator behind every stream: xoshiro256++ seeded through SplitMix64.
pub type Stream = Xoshiro256PlusPlus;

pub fn stream(seed: u64) -> Stream {
    Xoshiro256PlusPlus::seed_from_u64(seed)
}

pub fn substream(master: u64, index: u64) -> Stream {
    stream(mix(master, index))
}

/// Uniform double in the open interval (0, 1) with 53 random bits.
pub fn open_unit(rng: &mut impl RngCore) -> f64 {
    loop {
        let bits = rng.next_u64() >> 11;
        if bits != 0 {
            return bits as f64 * (1.0 / (1u64 << 53) as f64);
        }
    }
}
