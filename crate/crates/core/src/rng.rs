//! Seed derivation and random streams.
//!
//! Every random draw in the crate comes from a [`Pcg64`] stream (PCG XSL-RR
//! 128/64: 128-bit LCG state with a 64-bit xorshift-low + random-rotate output
//! permutation). A stream is built from one 64-bit seed `s` as
//!
//! ```text
//! state  = splitmix64(s) << 64 | splitmix64(s + 1)
//! stream = splitmix64(s + 2)            (made odd inside the generator)
//! ```
//!
//! with wrapping `+`. Sub-seeds are always derived with [`splitmix64`], which is
//! a bijection on `u64`.

use rand_pcg::Pcg64;

/// Odd multiplier for the replication index in [`derive_subseed`]; also the
/// column multiplier for error-matrix streams.
pub const SEED_K1: u64 = 0x9E37_79B9_7F4A_7C15;
/// Odd multiplier for the cell index in [`derive_subseed`].
pub const SEED_K2: u64 = 0xC2B2_AE3D_27D4_EB4F;

/// SplitMix64 output function: golden-ratio increment followed by the
/// Stafford variant-13 finalizer.
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed for replication `replication` of grid cell `cell`.
///
/// `splitmix64(master ^ replication·K1 ^ cell·K2)` with wrapping products.
/// For a fixed cell the map from replication to seed is injective.
pub fn derive_subseed(master: u64, replication: u64, cell: u64) -> u64 {
    splitmix64(master ^ replication.wrapping_mul(SEED_K1) ^ cell.wrapping_mul(SEED_K2))
}

/// Seed of column `column` (0-based) of an error matrix drawn with `seed`.
pub fn column_seed(seed: u64, column: u64) -> u64 {
    splitmix64(seed ^ column.wrapping_mul(SEED_K1))
}

pub fn stream(seed: u64) -> Pcg64 {
    let hi = splitmix64(seed) as u128;
    let lo = splitmix64(seed.wrapping_add(1)) as u128;
    let inc = splitmix64(seed.wrapping_add(2)) as u128;
    Pcg64::new((hi << 64) | lo, inc)
}
