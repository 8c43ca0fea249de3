use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qcomb::binomial;

/// Weak k-composition of n: an ordered k-tuple of nonnegative parts.
///
/// Ordering is lexicographic on the parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Composition {
    parts: Vec<u32>,
}

impl Composition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::EmptyComposition);
        }
        Ok(Self { parts })
    }

    /// `(n, 0, ..., 0)` with `k` parts.
    pub fn concentrated(n: u32, k: usize) -> Result<Self> {
        let mut parts = vec![0; k];
        *parts.first_mut().ok_or(Error::EmptyComposition)? = n;
        Ok(Self { parts })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Number of parts.
    pub fn k(&self) -> usize {
        self.parts.len()
    }

    /// Sum of the parts.
    pub fn n(&self) -> u64 {
        self.parts.iter().map(|&p| u64::from(p)).sum()
    }

    /// Number of parts strictly greater than zero.
    pub fn support_size(&self) -> usize {
        self.parts.iter().filter(|&&p| p > 0).count()
    }
}

impl TryFrom<Vec<u32>> for Composition {
    type Error = Error;

    fn try_from(parts: Vec<u32>) -> Result<Self> {
        Self::new(parts)
    }
}

impl From<Composition> for Vec<u32> {
    fn from(c: Composition) -> Self {
        c.parts
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (idx, p) in self.parts.iter().enumerate() {
            if idx > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

impl FromStr for Composition {
    type Err = Error;

    /// Accepts `1,1,1` or `(1,1,1)`.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts = inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|e| Error::Parse(format!("composition part {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(parts)
    }
}

/// Number of weak k-compositions of n, `C(n+k-1, k-1)`.
pub fn composition_count(n: u32, k: usize) -> BigUint {
    if k == 0 {
        return BigUint::from(u32::from(n == 0));
    }
    binomial(u64::from(n) + k as u64 - 1, k as u64 - 1)
}

/// Lexicographic iterator over the weak k-compositions of n.
#[derive(Clone, Debug)]
pub struct Compositions {
    next: Option<Vec<u32>>,
}

impl Compositions {
    pub fn new(n: u32, k: usize) -> Self {
        let next = (k >= 1).then(|| {
            let mut parts = vec![0; k];
            parts[k - 1] = n;
            parts
        });
        Self { next }
    }
}

impl Iterator for Compositions {
    type Item = Composition;

    fn next(&mut self) -> Option<Composition> {
        let current = self.next.take()?;
        let k = current.len();
        let mut succ = current.clone();
        // Rightmost j < k-1 with a positive tail after it; bump it and move
        // the rest of the tail (minus one) to the last slot.
        let mut tail = 0u32;
        let mut found = None;
        for j in (0..k - 1).rev() {
            tail += succ[j + 1];
            if tail > 0 {
                found = Some(j);
                break;
            }
        }
        if let Some(j) = found {
            succ[j] += 1;
            for part in succ.iter_mut().take(k - 1).skip(j + 1) {
                *part = 0;
            }
            succ[k - 1] = tail - 1;
            self.next = Some(succ);
        }
        Some(Composition { parts: current })
    }
}

/// All weak k-compositions of n in lexicographic order.
pub fn enumerate_compositions(n: u32, k: usize) -> Vec<Composition> {
    Compositions::new(n, k).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_into_three() {
        let all = enumerate_compositions(3, 3);
        assert_eq!(all.len(), 10);
        assert_eq!(all[0].parts(), &[0, 0, 3]);
        assert_eq!(all[9].parts(), &[3, 0, 0]);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn zero_total() {
        let all = enumerate_compositions(0, 4);
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].parts(), &[0, 0, 0, 0]);
    }

    #[test]
    fn single_part() {
        let all = enumerate_compositions(7, 1);
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].parts(), &[7]);
    }

    #[test]
    fn five_into_four() {
        assert_eq!(enumerate_compositions(5, 4).len(), 56);
        assert_eq!(composition_count(5, 4), BigUint::from(56u32));
    }

    #[test]
    fn empty_rejected() {
        assert_eq!(Composition::new(vec![]), Err(Error::EmptyComposition));
        assert_eq!(enumerate_compositions(3, 0).len(), 0);
    }

    #[test]
    fn parse_and_display() {
        let c: Composition = "(1, 2,0)".parse().unwrap();
        assert_eq!(c.parts(), &[1, 2, 0]);
        assert_eq!(c.to_string(), "(1,2,0)");
        assert_eq!(c.n(), 3);
        assert!("1,x".parse::<Composition>().is_err());
    }
}
