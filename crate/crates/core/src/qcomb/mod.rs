//! Exact combinatorial kernel.
//!
//! Multinomial coefficients, weak compositions, q-integers and the
//! q-multinomial (Gaussian multinomial) polynomial whose coefficient of `q^i`
//! counts the rearrangements of a multiset with exactly `i` inversions.
//!
//! The q-multinomial is built as a product of q-binomials, each produced by
//! the q-Pascal recurrence `[m, a] = [m-1, a-1] + q^a [m-1, a]`. Every step
//! stays in nonnegative integers, so no polynomial division is needed.

mod brute;
mod composition;
mod inversions;
mod poly;
mod sequence;

pub use brute::{brute_force_inv_distribution, DEFAULT_ENUMERATION_BOUND};
pub use composition::{composition_count, enumerate_compositions, Composition, Compositions};
pub use inversions::{count_inversions, count_inversions_in};
pub use poly::IntPolynomial;
pub use sequence::OutcomeSequence;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Binomial coefficient `C(n, r)`, zero when `r > n`.
pub fn binomial(n: u64, r: u64) -> BigUint {
    if r > n {
        return BigUint::zero();
    }
    let r = r.min(n - r);
    let mut acc = BigUint::one();
    for i in 0..r {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `n! / (y_1! ... y_k!)`, computed as a product of binomials.
pub fn multinomial_coefficient(y: &Composition) -> BigUint {
    let mut acc = BigUint::one();
    let mut running = 0u64;
    for &part in y.parts() {
        running += u64::from(part);
        acc *= binomial(running, u64::from(part));
    }
    acc
}

/// `[m]_q = 1 + q + ... + q^(m-1)`.
pub fn q_integer(m: u32) -> Result<IntPolynomial> {
    if m == 0 {
        return Err(Error::ZeroQInteger);
    }
    Ok(IntPolynomial::from_coeffs(vec![BigUint::one(); m as usize]))
}

/// Gaussian binomial `[m choose a]_q` via the q-Pascal recurrence.
pub fn q_binomial(m: u32, a: u32) -> IntPolynomial {
    if a > m {
        return IntPolynomial::zero();
    }
    let a = a.min(m - a) as usize;
    // row[j] holds [r choose j]_q for the current r.
    let mut row: Vec<IntPolynomial> = vec![IntPolynomial::one()];
    for r in 1..=m as usize {
        let width = a.min(r);
        let mut next = Vec::with_capacity(width + 1);
        next.push(IntPolynomial::one());
        for j in 1..=width {
            let left = &row[j - 1];
            let term = match row.get(j) {
                Some(up) => left + &up.shifted(j),
                None => left.clone(),
            };
            next.push(term);
        }
        row = next;
    }
    row.swap_remove(a)
}

/// Lookup table of `[m choose a]_q` for all `0 <= a <= m <= max_m`.
#[derive(Clone, Debug)]
pub struct QBinomialTable {
    rows: Vec<Vec<IntPolynomial>>,
}

impl QBinomialTable {
    pub fn new(max_m: u32) -> Self {
        let mut rows: Vec<Vec<IntPolynomial>> = Vec::with_capacity(max_m as usize + 1);
        rows.push(vec![IntPolynomial::one()]);
        for m in 1..=max_m as usize {
            let prev = &rows[m - 1];
            let mut row = Vec::with_capacity(m + 1);
            row.push(IntPolynomial::one());
            for a in 1..m {
                row.push(&prev[a - 1] + &prev[a].shifted(a));
            }
            row.push(IntPolynomial::one());
            rows.push(row);
        }
        Self { rows }
    }

    pub fn max_m(&self) -> u32 {
        (self.rows.len() - 1) as u32
    }

    /// Panics when `m` exceeds the table size.
    pub fn get(&self, m: u32, a: u32) -> &IntPolynomial {
        &self.rows[m as usize][a as usize]
    }
}

/// The q-multinomial coefficient of `y`.
///
/// Equal to `prod_j [y_1+...+y_j choose y_j]_q`. Its coefficient of `q^i` is
/// the number of permutations of `{1^y_1 ... k^y_k}` with `i` inversions.
pub fn gaussian_multinomial(y: &Composition) -> IntPolynomial {
    let mut acc = IntPolynomial::one();
    let mut running = 0u32;
    for &part in y.parts() {
        running += part;
        if part > 0 && part < running {
            acc = &acc * &q_binomial(running, part);
        }
    }
    acc
}

/// Number of permutations of the multiset `y` with exactly `i` inversions.
pub fn inv_count(y: &Composition, i: u64) -> BigUint {
    usize::try_from(i)
        .map(|i| gaussian_multinomial(y).coeff(i))
        .unwrap_or_default()
}

/// `sum_{a<b} y_a y_b`, the degree of the q-multinomial.
pub fn max_inversions(y: &Composition) -> u64 {
    let mut before = 0u64;
    let mut total = 0u64;
    for &part in y.parts() {
        total += before * u64::from(part);
        before += u64::from(part);
    }
    total
}

/// `f'(1) / f(1)`, the logarithmic derivative at `q = 1`.
pub fn log_derivative_at_one(f: &IntPolynomial) -> BigRational {
    ratio(&f.derivative().eval_at_one(), &f.eval_at_one())
}

/// `d/dq (q d/dq log f)` at `q = 1`, i.e. `(f'(1) + f''(1)) / f(1) - (f'(1)/f(1))^2`.
pub fn log_second_derivative_at_one(f: &IntPolynomial) -> BigRational {
    let d1 = f.derivative();
    let d2 = d1.derivative();
    let at_one = f.eval_at_one();
    let first = log_derivative_at_one(f);
    ratio(&(d1.eval_at_one() + d2.eval_at_one()), &at_one) - &first * &first
}

fn ratio(num: &BigUint, den: &BigUint) -> BigRational {
    BigRational::new(BigInt::from(num.clone()), BigInt::from(den.clone()))
}
