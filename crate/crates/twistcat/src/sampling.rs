//! Deterministic small-integer sampling over ℚ(i).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactfield::{is_zero_vec, GaussianRational, Vector};

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Mix a base seed with a stream index so that parallel workers draw independent streams.
pub fn derive_seed(base: u64, stream: u64) -> u64 {
    let mut z = base ^ stream.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn small_int<R: Rng>(rng: &mut R, bound: i64) -> i64 {
    rng.gen_range(-bound..=bound)
}

/// Gaussian integer with both parts in `[-bound, bound]`.
pub fn small_gaussian<R: Rng>(rng: &mut R, bound: i64) -> GaussianRational {
    GaussianRational::from_ints(small_int(rng, bound), small_int(rng, bound))
}

pub fn small_real<R: Rng>(rng: &mut R, bound: i64) -> GaussianRational {
    GaussianRational::int(small_int(rng, bound))
}

pub fn nonzero_gaussian<R: Rng>(rng: &mut R, bound: i64) -> GaussianRational {
    loop {
        let x = small_gaussian(rng, bound);
        if !x.is_zero() {
            return x;
        }
    }
}

pub fn random_vector<R: Rng>(rng: &mut R, len: usize, bound: i64) -> Vector {
    (0..len).map(|_| small_gaussian(rng, bound)).collect()
}

pub fn random_real_vector<R: Rng>(rng: &mut R, len: usize, bound: i64) -> Vector {
    (0..len).map(|_| small_real(rng, bound)).collect()
}

pub fn random_nonzero_vector<R: Rng>(rng: &mut R, len: usize, bound: i64) -> Vector {
    loop {
        let v = random_vector(rng, len, bound);
        if !is_zero_vec(&v) {
            return v;
        }
    }
}
