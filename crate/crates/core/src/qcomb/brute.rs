use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::qcomb::{count_inversions_in, multinomial_coefficient, Composition, IntPolynomial};

/// Default cap on the number of permutations the enumeration oracle walks.
pub const DEFAULT_ENUMERATION_BOUND: u64 = 10_000_000;

/// Advance `v` to its lexicographic successor; false when `v` was the last.
fn next_permutation(v: &mut [u32]) -> bool {
    let Some(pivot) = v.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let succ = v
        .iter()
        .rposition(|&x| x > v[pivot])
        .expect("pivot has a successor");
    v.swap(pivot, succ);
    v[pivot + 1..].reverse();
    true
}

/// Inversion distribution of the multiset `{1^y_1 ... k^y_k}` by walking
/// every distinct permutation and tallying its inversions.
///
/// Independent of the q-binomial product used by
/// [`gaussian_multinomial`](crate::qcomb::gaussian_multinomial); refuses when
/// the number of permutations exceeds `bound`.
pub fn brute_force_inv_distribution(y: &Composition, bound: u64) -> Result<IntPolynomial> {
    let total = multinomial_coefficient(y);
    if total > BigUint::from(bound) {
        return Err(Error::EnumerationBound {
            count: total.to_string(),
            bound,
        });
    }
    let total = total.to_u64().expect("bounded by u64");
    let mut word: Vec<u32> = crate::qcomb::OutcomeSequence::sorted_blocks(y)
        .symbols()
        .to_vec();
    let max_inv = crate::qcomb::max_inversions(y) as usize;
    let mut tally = vec![0u64; max_inv + 1];
    let mut seen = 0u64;
    loop {
        tally[count_inversions_in(&word, y.k()) as usize] += 1;
        seen += 1;
        if !next_permutation(&mut word) {
            break;
        }
    }
    debug_assert_eq!(seen, total);
    Ok(IntPolynomial::from_u64s(&tally))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn comp(parts: &[u32]) -> Composition {
        Composition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn small_cases() {
        let b =
            |p: &[u32]| brute_force_inv_distribution(&comp(p), DEFAULT_ENUMERATION_BOUND).unwrap();
        assert_eq!(b(&[1, 1, 1]), IntPolynomial::from_u64s(&[1, 2, 2, 1]));
        assert_eq!(b(&[0, 0, 3]), IntPolynomial::one());
        assert_eq!(b(&[2, 2]), IntPolynomial::from_u64s(&[1, 1, 2, 1, 1]));
        assert_eq!(b(&[0, 0]), IntPolynomial::one());
    }

    #[test]
    fn refuses_above_bound() {
        let err = brute_force_inv_distribution(&comp(&[1, 1, 1]), 5).unwrap_err();
        assert!(err.is_resource_refusal());
        assert!(brute_force_inv_distribution(&comp(&[1, 1, 1]), 6).is_ok());
    }

    #[test]
    fn next_permutation_walks_multiset() {
        let mut v = vec![1, 1, 2];
        let mut seen = vec![v.clone()];
        while next_permutation(&mut v) {
            seen.push(v.clone());
        }
        assert_eq!(seen, vec![vec![1, 1, 2], vec![1, 2, 1], vec![2, 1, 1]]);
    }
}
