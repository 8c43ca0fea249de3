//! Independent oracles shared by the integration tests.
//!
//! Nothing here calls into the q-binomial machinery: counts come from
//! factorials, inversions from the quadratic definition, and distributions
//! from enumerating every word in `{1..k}^n`.

#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn int(v: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// `n! / prod y_i!`.
pub fn multinomial_by_factorials(parts: &[u32]) -> BigUint {
    let n: u64 = parts.iter().map(|&p| u64::from(p)).sum();
    parts
        .iter()
        .fold(factorial(n), |acc, &p| acc / factorial(u64::from(p)))
}

/// Pascal's triangle row lookup.
pub fn binomial_pascal(n: usize, r: usize) -> BigUint {
    let mut row = vec![BigUint::one()];
    for _ in 0..n {
        let mut next = vec![BigUint::one(); row.len() + 1];
        for j in 1..row.len() {
            next[j] = &row[j - 1] + &row[j];
        }
        row = next;
    }
    row.get(r).cloned().unwrap_or_default()
}

/// Pairs `a < b` with `s[a] > s[b]`, straight from the definition.
pub fn inversions_quadratic(s: &[u32]) -> u64 {
    let mut total = 0;
    for a in 0..s.len() {
        for b in a + 1..s.len() {
            if s[a] > s[b] {
                total += 1;
            }
        }
    }
    total
}

/// Every word of length `n` over `1..=k`, in odometer order.
pub fn all_words(n: usize, k: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut w = vec![1u32; n];
    loop {
        out.push(w.clone());
        let mut pos = n;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            if w[pos] < k {
                w[pos] += 1;
                for x in &mut w[pos + 1..] {
                    *x = 1;
                }
                break;
            }
        }
    }
}

fn tally(word: &[u32], k: usize) -> Vec<u32> {
    let mut c = vec![0u32; k];
    for &s in word {
        c[s as usize - 1] += 1;
    }
    c
}

/// `P(Y = y, I = i)` by summing word probabilities.
pub fn joint_by_words(n: usize, p: &[BigRational]) -> BTreeMap<(Vec<u32>, u64), BigRational> {
    let k = p.len();
    let mut out: BTreeMap<(Vec<u32>, u64), BigRational> = BTreeMap::new();
    for w in all_words(n, k as u32) {
        let weight = w
            .iter()
            .fold(BigRational::one(), |acc, &s| acc * &p[s as usize - 1]);
        if weight.is_zero() {
            continue;
        }
        *out.entry((tally(&w, k), inversions_quadratic(&w)))
            .or_insert_with(BigRational::zero) += weight;
    }
    out
}

/// `P(I = i)` by summing word probabilities, indexed by `i`.
pub fn marginal_by_words(n: usize, p: &[BigRational]) -> Vec<BigRational> {
    let mut out: Vec<BigRational> = Vec::new();
    for ((_, i), v) in joint_by_words(n, p) {
        let i = i as usize;
        if out.len() <= i {
            out.resize(i + 1, BigRational::zero());
        }
        out[i] += v;
    }
    out
}

/// Distinct permutations of the multiset by filtering all `k^n` words,
/// tallied by inversion count.
pub fn inversion_tally_by_words(parts: &[u32]) -> Vec<u64> {
    let n: u32 = parts.iter().sum();
    let k = parts.len() as u32;
    let mut out: Vec<u64> = Vec::new();
    for w in all_words(n as usize, k) {
        if tally(&w, parts.len()) != parts {
            continue;
        }
        let i = inversions_quadratic(&w) as usize;
        if out.len() <= i {
            out.resize(i + 1, 0);
        }
        out[i] += 1;
    }
    out
}

/// Second displayed form of the squared-moment sum, written with merged
/// (non-strict) inequalities over index tuples.
pub fn moment_sum2_merged_form(parts: &[u32]) -> BigRational {
    let y: Vec<BigInt> = parts.iter().map(|&v| BigInt::from(v)).collect();
    let k = y.len();
    let mut s = BigInt::zero();
    for i in 0..k {
        for j in i + 1..k {
            s += &y[i] * &y[j];
        }
    }
    for h in 0..k {
        for i in h..k {
            for j in i + 1..k {
                s += &y[h] * &y[i] * &y[j];
            }
        }
    }
    for h in 0..k {
        for i in h + 1..k {
            for j in i..k {
                s += &y[h] * &y[i] * &y[j];
            }
        }
    }
    let mut quad = BigInt::zero();
    for g in 0..k {
        for h in g..k {
            for i in h + 1..k {
                for j in i + 1..k {
                    quad += &y[g] * &y[h] * &y[i] * &y[j];
                }
            }
        }
        for h in g + 1..k {
            for i in h..k {
                for j in i + 1..k {
                    quad += &y[g] * &y[h] * &y[i] * &y[j];
                }
            }
            for i in h + 1..k {
                for j in i..k {
                    quad += &y[g] * &y[h] * &y[i] * &y[j];
                }
            }
        }
    }
    s += BigInt::from(6) * quad;
    for g in 0..k {
        for i in g + 1..k {
            s += BigInt::from(3) * &y[g] * &y[g] * &y[i] * &y[i];
        }
    }
    let m = BigInt::from(multinomial_by_factorials(parts));
    BigRational::new(m * s, BigInt::from(12))
}

/// Integer partitions of `n` into at most `k` parts, parts non-increasing.
pub fn partitions(n: u32, k: usize) -> Vec<Vec<u32>> {
    fn go(n: u32, k: usize, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        if k == 0 {
            return;
        }
        for part in (1..=n.min(max)).rev() {
            prefix.push(part);
            go(n - part, k - 1, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, k, n, &mut Vec::new(), &mut out);
    out
}

/// Small deterministic generator for test inputs (SplitMix64).
pub struct SplitMix(pub u64);

impl SplitMix {
    pub fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, bound: u64) -> u64 {
        self.next() % bound
    }

    /// Random rational probability vector with weights in `0..=10`.
    pub fn rational_probs(&mut self, k: usize) -> Vec<BigRational> {
        loop {
            let w: Vec<u64> = (0..k).map(|_| self.below(11)).collect();
            let total: u64 = w.iter().sum();
            if total > 0 {
                return w.iter().map(|&x| q(x as i64, total as i64)).collect();
            }
        }
    }
}
