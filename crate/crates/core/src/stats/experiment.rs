use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::dist::{ProbVector, Probability};
use crate::qcomb::{count_inversions, max_inversions, Composition, OutcomeSequence};
use crate::stats::{replication_rng, CategorySampler};

/// One simulated multinomial experiment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExperimentResult {
    pub sequence: OutcomeSequence,
    pub counts: Composition,
    pub inversions: u64,
    /// `None` when every trial landed in one category.
    pub h: Option<BigRational>,
}

impl ExperimentResult {
    pub fn from_sequence(sequence: OutcomeSequence) -> Self {
        let counts = sequence.counts();
        let inversions = count_inversions(&sequence);
        let h = h_from_counts(&counts, inversions);
        Self {
            sequence,
            counts,
            inversions,
            h,
        }
    }
}

/// `H = 1 - 2 I / sum_{a<b} y_a y_b`, rescaling `I` onto `[-1, 1]`.
///
/// `+1` for the sorted block sequence, `-1` for the reversed one. `None`
/// when the denominator is zero.
pub fn h_statistic(seq: &OutcomeSequence) -> Option<BigRational> {
    h_from_counts(&seq.counts(), count_inversions(seq))
}

/// [`h_statistic`] from a count vector and an inversion number.
pub fn h_from_counts(counts: &Composition, inversions: u64) -> Option<BigRational> {
    let max = max_inversions(counts);
    (max > 0).then(|| {
        BigRational::one() - BigRational::new(BigInt::from(2 * inversions), BigInt::from(max))
    })
}

/// Run `n` trials with the sampler on the given stream.
pub(crate) fn run_trials<R: rand_core::RngCore>(
    n: u32,
    k: usize,
    sampler: &CategorySampler,
    rng: &mut R,
) -> OutcomeSequence {
    let symbols = (0..n).map(|_| sampler.sample(rng)).collect();
    OutcomeSequence::new(symbols, k).expect("sampler yields symbols in 1..=k")
}

/// A single experiment of `n` i.i.d. trials drawn from `p`.
///
/// Uses replication stream 0 of `seed`, so it equals the first result of a
/// [`SimulationConfig`](crate::stats::SimulationConfig) with the same seed.
pub fn simulate_experiment<P: Probability>(
    n: u32,
    p: &ProbVector<P>,
    seed: u64,
) -> ExperimentResult {
    let sampler = CategorySampler::new(p);
    let mut rng = replication_rng(seed, 0);
    ExperimentResult::from_sequence(run_trials(n, p.k(), &sampler, &mut rng))
}
