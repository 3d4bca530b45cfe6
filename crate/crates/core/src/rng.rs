//! Deterministic seeding for randomized suites.
//!
//! Every instance of a suite draws from its own generator, seeded from the
//! master seed and the instance id, so results do not depend on how the
//! instances are scheduled across threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type SuiteRng = ChaCha8Rng;

/// SplitMix64 finalizer.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn instance_seed(master: u64, instance_id: u64) -> u64 {
    mix(mix(master) ^ instance_id.wrapping_mul(0xD1B5_4A32_D192_ED03))
}

pub fn seeded(seed: u64) -> SuiteRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn instance_rng(master: u64, instance_id: u64) -> SuiteRng {
    seeded(instance_seed(master, instance_id))
}
