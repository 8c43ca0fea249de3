use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dist::{rational_to_f64, ProbVector, Probability};
use crate::error::{Error, Result};
use crate::qcomb::{count_inversions, Composition};
use crate::stats::experiment::run_trials;
use crate::stats::{h_from_counts, replication_rng, CategorySampler, ExperimentResult};

/// Replications per parallel work unit.
const CHUNK: u64 = 4096;

/// Parameters of a Monte Carlo run.
#[derive(Clone, Debug, PartialEq)]
pub struct SimulationConfig<P> {
    pub n: u32,
    pub p: ProbVector<P>,
    pub replications: u64,
    pub seed: u64,
}

impl<P: Probability> SimulationConfig<P> {
    pub fn new(n: u32, p: ProbVector<P>, replications: u64, seed: u64) -> Result<Self> {
        if replications == 0 {
            return Err(Error::Parse("replications must be at least 1".into()));
        }
        Ok(Self {
            n,
            p,
            replications,
            seed,
        })
    }

    /// Replication `r` drawn from its own substream.
    pub fn replication(&self, r: u64) -> ExperimentResult {
        let sampler = CategorySampler::new(&self.p);
        self.replication_with(&sampler, r)
    }

    fn replication_with(&self, sampler: &CategorySampler, r: u64) -> ExperimentResult {
        let mut rng = replication_rng(self.seed, r);
        ExperimentResult::from_sequence(run_trials(self.n, self.p.k(), sampler, &mut rng))
    }

    /// All replications in index order.
    pub fn results(&self) -> impl Iterator<Item = ExperimentResult> + '_ {
        let sampler = CategorySampler::new(&self.p);
        (0..self.replications).map(move |r| self.replication_with(&sampler, r))
    }
}

/// Summary statistics of a Monte Carlo run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloSummary {
    pub replications: u64,
    pub mean_i: f64,
    pub var_i: f64,
    pub mean_i_stderr: f64,
    /// Mean of `H` over replications where it is defined.
    pub mean_h: Option<f64>,
    pub mean_h_stderr: Option<f64>,
    pub h_defined: u64,
    /// Replications with all trials in one category (H undefined).
    pub h_undefined: u64,
}

/// Empirical joint distribution of `(Y, I)` from a seeded simulation.
#[derive(Clone, Debug, PartialEq)]
pub struct MonteCarloReport {
    pub n: u32,
    pub k: usize,
    pub seed: u64,
    pub replications: u64,
    /// Integer tallies keyed by `(counts, inversions)`.
    pub tallies: BTreeMap<(Composition, u64), u64>,
    pub summary: MonteCarloSummary,
}

impl MonteCarloReport {
    pub fn frequency(&self, y: &Composition, i: u64) -> f64 {
        let hits = self.tallies.get(&(y.clone(), i)).copied().unwrap_or(0);
        hits as f64 / self.replications as f64
    }

    /// Binomial standard error of a cell frequency with true probability `p`.
    pub fn standard_error(&self, p: f64) -> f64 {
        (p * (1.0 - p) / self.replications as f64).sqrt()
    }

    /// Mean of `I` among replications with counts `y`, its standard error,
    /// and the number of such replications.
    pub fn conditional_mean_i(&self, y: &Composition) -> Option<(f64, f64, u64)> {
        let cells: Vec<(u64, u64)> = self
            .tallies
            .range((y.clone(), 0)..=(y.clone(), u64::MAX))
            .map(|((_, i), &c)| (*i, c))
            .collect();
        let count: u64 = cells.iter().map(|(_, c)| c).sum();
        if count == 0 {
            return None;
        }
        let (s1, s2) = cells.iter().fold((0.0, 0.0), |(s1, s2), &(i, c)| {
            let (i, c) = (i as f64, c as f64);
            (s1 + i * c, s2 + i * i * c)
        });
        let mean = s1 / count as f64;
        let var = (s2 / count as f64 - mean * mean).max(0.0);
        Some((mean, (var / count as f64).sqrt(), count))
    }
}

fn merge(
    mut a: BTreeMap<(Composition, u64), u64>,
    b: BTreeMap<(Composition, u64), u64>,
) -> BTreeMap<(Composition, u64), u64> {
    for (key, c) in b {
        *a.entry(key).or_insert(0) += c;
    }
    a
}

fn summarize(tallies: &BTreeMap<(Composition, u64), u64>, replications: u64) -> MonteCarloSummary {
    let mut s1 = BigInt::zero();
    let mut s2 = BigInt::zero();
    let mut h1 = BigRational::zero();
    let mut h2 = BigRational::zero();
    let mut h_defined = 0u64;
    for ((y, i), &c) in tallies {
        let (bi, bc) = (BigInt::from(*i), BigInt::from(c));
        s1 += &bi * &bc;
        s2 += &bi * &bi * &bc;
        if let Some(h) = h_from_counts(y, *i) {
            let weight = BigRational::from_integer(bc);
            h1 += &h * &weight;
            h2 += &h * &h * weight;
            h_defined += c;
        }
    }
    let reps = BigRational::from_integer(BigInt::from(replications));
    let mean = BigRational::from_integer(s1) / &reps;
    let var = BigRational::from_integer(s2) / &reps - &mean * &mean;
    let var_f = rational_to_f64(&var);
    let (mean_h, mean_h_stderr) = if h_defined > 0 {
        let d = BigRational::from_integer(BigInt::from(h_defined));
        let m = h1 / &d;
        let v = h2 / &d - &m * &m;
        (
            Some(rational_to_f64(&m)),
            Some((rational_to_f64(&v).max(0.0) / h_defined as f64).sqrt()),
        )
    } else {
        (None, None)
    };
    MonteCarloSummary {
        replications,
        mean_i: rational_to_f64(&mean),
        var_i: var_f,
        mean_i_stderr: (var_f.max(0.0) / replications as f64).sqrt(),
        mean_h,
        mean_h_stderr,
        h_defined,
        h_undefined: replications - h_defined,
    }
}

/// Simulate `cfg.replications` experiments and tally `(Y, I)`.
///
/// Replications run in parallel, each on its own substream, and the tallies
/// are integer counts merged into an ordered map, so the report is identical
/// for any thread count.
pub fn monte_carlo_joint<P: Probability>(cfg: &SimulationConfig<P>) -> MonteCarloReport {
    let sampler = CategorySampler::new(&cfg.p);
    let chunks = cfg.replications.div_ceil(CHUNK);
    let tallies = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let start = chunk * CHUNK;
            let end = (start + CHUNK).min(cfg.replications);
            let mut local: BTreeMap<(Composition, u64), u64> = BTreeMap::new();
            for r in start..end {
                let mut rng = replication_rng(cfg.seed, r);
                let seq = run_trials(cfg.n, cfg.p.k(), &sampler, &mut rng);
                let inversions = count_inversions(&seq);
                *local.entry((seq.counts(), inversions)).or_insert(0) += 1;
            }
            local
        })
        .reduce(BTreeMap::new, merge);
    let summary = summarize(&tallies, cfg.replications);
    MonteCarloReport {
        n: cfg.n,
        k: cfg.p.k(),
        seed: cfg.seed,
        replications: cfg.replications,
        tallies,
        summary,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn zero_replications_rejected() {
        let p = ProbVector::<f64>::equal(2).unwrap();
        assert!(SimulationConfig::new(3, p, 0, 1).is_err());
    }

    #[test]
    fn single_replication_is_a_point_mass() {
        let p = ProbVector::<BigRational>::equal(3).unwrap();
        let cfg = SimulationConfig::new(5, p, 1, 11).unwrap();
        let report = monte_carlo_joint(&cfg);
        assert_eq!(report.tallies.len(), 1);
        let ((y, i), c) = report.tallies.iter().next().unwrap();
        assert_eq!(*c, 1);
        assert_eq!(report.frequency(y, *i), 1.0);
        assert_eq!(report.summary.var_i, 0.0);
        let first = cfg.replication(0);
        assert_eq!((&first.counts, first.inversions), (y, *i));
    }

    #[test]
    fn report_is_deterministic() {
        let p = ProbVector::new(vec![q(1, 2), q(1, 3), q(1, 6)]).unwrap();
        let cfg = SimulationConfig::new(6, p, 20_000, 5).unwrap();
        assert_eq!(monte_carlo_joint(&cfg), monte_carlo_joint(&cfg));
    }

    #[test]
    fn results_stream_matches_tallies() {
        let p = ProbVector::<f64>::equal(2).unwrap();
        let cfg = SimulationConfig::new(4, p, 300, 8).unwrap();
        let mut manual: BTreeMap<(Composition, u64), u64> = BTreeMap::new();
        for r in cfg.results() {
            assert!(r.inversions <= crate::qcomb::max_inversions(&r.counts));
            *manual.entry((r.counts, r.inversions)).or_insert(0) += 1;
        }
        assert_eq!(manual, monte_carlo_joint(&cfg).tallies);
    }

    #[test]
    fn undefined_h_counted() {
        let p = ProbVector::new(vec![q(1, 1), q(0, 1)]).unwrap();
        let cfg = SimulationConfig::new(4, p, 50, 2).unwrap();
        let s = monte_carlo_joint(&cfg).summary;
        assert_eq!(s.h_undefined, 50);
        assert_eq!(s.mean_h, None);
    }
}
