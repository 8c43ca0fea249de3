use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::dist::{ProbVector, Probability, UNIFORM_BITS};

/// Random stream for replication `replication` of a run seeded with `seed`.
///
/// ChaCha8 keyed by `seed_from_u64(seed)` (PCG32 key expansion, as in
/// `rand_core` 0.6) with the ChaCha stream id set to the replication index.
pub fn replication_rng(seed: u64, replication: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(replication);
    rng
}

/// Draws categories by inverting the cumulative distribution.
///
/// A draw takes the top 53 bits `m` of one `u64` and returns the first
/// category `r` (1-based) with `m < ceil(2^53 * (p_1 + ... + p_r))`, so each
/// category owns the half-open interval `[F_{r-1}, F_r)`.
#[derive(Clone, Debug)]
pub struct CategorySampler {
    thresholds: Vec<u64>,
}

impl CategorySampler {
    pub fn new<P: Probability>(p: &ProbVector<P>) -> Self {
        let mut cumulative = P::zero();
        let mut thresholds: Vec<u64> = p
            .probs()
            .iter()
            .map(|pr| {
                cumulative = cumulative.clone() + pr.clone();
                P::uniform_threshold(&cumulative)
            })
            .collect();
        // Floating totals may fall short of 1 by rounding; give the remainder
        // to the last category with positive probability.
        let full = 1u64 << UNIFORM_BITS;
        if let Some(last) = p.probs().iter().rposition(|pr| *pr > P::zero()) {
            for t in &mut thresholds[last..] {
                *t = full;
            }
        }
        Self { thresholds }
    }

    pub fn sample<R: RngCore>(&self, rng: &mut R) -> u32 {
        let m = rng.next_u64() >> (64 - UNIFORM_BITS);
        self.thresholds.partition_point(|&t| t <= m) as u32 + 1
    }
}
