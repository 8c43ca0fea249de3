//! Normal approximation to the inversion number under equal probabilities.
//!
//! With `p_j = 1/k` the exact pmf of `I` is compared against a normal with
//!
//! ```text
//! mu      = n (n - 1) (k - 1) / (4k)
//! sigma^2 = (k - 1)(k + 1)(n - 1) n (2n + 5) / (72 k^2)
//! ```
//!
//! The comparison standardizes by `(I - mu) / sigma` and assigns the normal
//! mass `Phi((i + 1/2 - mu)/sigma) - Phi((i - 1/2 - mu)/sigma)` to lattice
//! point `i`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::dist::{equal_probability_counts, rational_to_f64, support_bound_i};
use crate::error::{Error, Result};
use crate::qcomb::composition_count;

/// Default cap on the number of weak compositions a fit may cover.
pub const DEFAULT_FIT_BUDGET: u64 = 5_000_000;

/// Note attached to every fit report.
pub const STANDARDIZATION_NOTE: &str = "statistic standardized as (I - mu)/sigma; an extra \
sqrt(n)/C(n,2) prefactor would drive it to 0 and is not applied";

/// Mean and variance of the limiting normal for equal probabilities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalParams {
    pub mu: BigRational,
    pub sigma2: BigRational,
}

impl NormalParams {
    pub fn sigma(&self) -> f64 {
        rational_to_f64(&self.sigma2).sqrt()
    }

    pub fn is_degenerate(&self) -> bool {
        self.sigma2.is_zero()
    }
}

fn rat(num: BigInt, den: BigInt) -> BigRational {
    BigRational::new(num, den)
}

pub fn normal_params_equal(n: u32, k: usize) -> NormalParams {
    let n = BigInt::from(n);
    let k = BigInt::from(k);
    let one = BigInt::from(1);
    let mu = rat(&n * (&n - &one) * (&k - &one), BigInt::from(4) * &k);
    let sigma2 = rat(
        (&k - &one) * (&k + &one) * (&n - &one) * &n * (BigInt::from(2) * &n + 5),
        BigInt::from(72) * &k * &k,
    );
    NormalParams { mu, sigma2 }
}

/// Standard normal CDF.
pub fn std_normal_cdf(x: f64) -> f64 {
    0.5 * libm::erfc(-x / std::f64::consts::SQRT_2)
}

/// One lattice point of the comparison.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LatticePoint {
    pub i: u64,
    pub exact: f64,
    pub normal: f64,
}

/// Exact moments of the equal-probability pmf and its distance to the
/// discretized normal.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FitReport {
    pub n: u32,
    pub k: usize,
    pub mu: f64,
    pub sigma2: f64,
    pub exact_mean: f64,
    pub exact_variance: f64,
    /// Exact rational equality of the pmf mean with `mu`.
    pub mean_matches: bool,
    /// Exact rational equality of the pmf variance with `sigma2`.
    pub variance_matches: bool,
    /// `sigma2 == 0`; no standardization is attempted.
    pub degenerate: bool,
    pub total_variation: Option<f64>,
    pub kolmogorov: Option<f64>,
    pub skewness: Option<f64>,
    pub excess_kurtosis: Option<f64>,
    pub note: String,
    #[serde(skip)]
    pub lattice: Vec<LatticePoint>,
}

/// Compare the exact equal-probability pmf of `I` with its normal limit.
///
/// Refuses when the number of weak k-compositions of `n` exceeds `budget`.
pub fn normal_fit_report(n: u32, k: usize, budget: u64) -> Result<FitReport> {
    if k == 0 {
        return Err(Error::InvalidProbabilities(
            "need at least one category".into(),
        ));
    }
    let needed = composition_count(n, k);
    if needed > BigUint::from(budget) {
        return Err(Error::BudgetExceeded {
            needed: needed.to_string(),
            budget,
        });
    }
    let params = normal_params_equal(n, k);
    let counts = equal_probability_counts(n, k);
    let total = BigInt::from(BigUint::from(k).pow(n));

    let central_sum = |center: &BigRational, power: u32| -> BigRational {
        let mut acc = BigRational::zero();
        for (i, c) in counts.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let d = BigRational::from_integer(BigInt::from(i)) - center;
            acc += num_traits::pow(d, power as usize)
                * BigRational::from_integer(BigInt::from(c.clone()));
        }
        acc / BigRational::from_integer(total.clone())
    };
    let exact_mean = central_sum(&BigRational::zero(), 1);
    let exact_variance = central_sum(&exact_mean, 2);

    let mut report = FitReport {
        n,
        k,
        mu: rational_to_f64(&params.mu),
        sigma2: rational_to_f64(&params.sigma2),
        exact_mean: rational_to_f64(&exact_mean),
        exact_variance: rational_to_f64(&exact_variance),
        mean_matches: exact_mean == params.mu,
        variance_matches: exact_variance == params.sigma2,
        degenerate: params.is_degenerate(),
        total_variation: None,
        kolmogorov: None,
        skewness: None,
        excess_kurtosis: None,
        note: STANDARDIZATION_NOTE.to_string(),
        lattice: Vec::new(),
    };
    if report.degenerate || !exact_variance.is_positive() {
        report.degenerate = true;
        return Ok(report);
    }

    let m3 = rational_to_f64(&central_sum(&exact_mean, 3));
    let m4 = rational_to_f64(&central_sum(&exact_mean, 4));
    let var = report.exact_variance;
    report.skewness = Some(m3 / var.powf(1.5));
    report.excess_kurtosis = Some(m4 / (var * var) - 3.0);

    let mu = report.mu;
    let sigma = params.sigma();
    let phi = |x: f64| std_normal_cdf((x - mu) / sigma);
    let bound = support_bound_i(n, k);
    let mut tv = phi(-0.5) + (1.0 - phi(bound as f64 + 0.5));
    let mut ks: f64 = 0.0;
    let mut exact_cdf = BigRational::zero();
    for i in 0..=bound {
        let c = counts.coeff(i as usize);
        let p = rat(BigInt::from(c), total.clone());
        exact_cdf += &p;
        let exact = rational_to_f64(&p);
        let normal = phi(i as f64 + 0.5) - phi(i as f64 - 0.5);
        tv += (exact - normal).abs();
        ks = ks.max((rational_to_f64(&exact_cdf) - phi(i as f64 + 0.5)).abs());
        report.lattice.push(LatticePoint { i, exact, normal });
    }
    report.total_variation = Some(0.5 * tv);
    report.kolmogorov = Some(ks);
    Ok(report)
}
