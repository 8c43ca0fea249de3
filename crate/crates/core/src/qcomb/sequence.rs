use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qcomb::Composition;

/// Outcomes of `n` trials, each a symbol in `1..=k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OutcomeSequence {
    symbols: Vec<u32>,
    k: usize,
}

impl OutcomeSequence {
    pub fn new(symbols: Vec<u32>, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::EmptyComposition);
        }
        if let Some(&bad) = symbols.iter().find(|&&s| s == 0 || s as usize > k) {
            return Err(Error::SymbolOutOfRange { symbol: bad, k });
        }
        Ok(Self { symbols, k })
    }

    /// Uses the largest symbol (at least 1) as the alphabet size.
    pub fn from_symbols(symbols: Vec<u32>) -> Result<Self> {
        let k = symbols.iter().copied().max().unwrap_or(1).max(1) as usize;
        Self::new(symbols, k)
    }

    /// Parses `1,1,2,3` or, when there are no separators, `1123`.
    pub fn parse(text: &str, k: Option<usize>) -> Result<Self> {
        let text = text.trim();
        let symbols = if text.is_empty() {
            Vec::new()
        } else if text.contains(',') || text.contains(char::is_whitespace) {
            text.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<u32>()
                        .map_err(|e| Error::Parse(format!("symbol {t:?}: {e}")))
                })
                .collect::<Result<Vec<_>>>()?
        } else {
            text.chars()
                .map(|c| {
                    c.to_digit(10)
                        .ok_or_else(|| Error::Parse(format!("symbol {c:?} is not a digit")))
                })
                .collect::<Result<Vec<_>>>()?
        };
        match k {
            Some(k) => Self::new(symbols, k),
            None => Self::from_symbols(symbols),
        }
    }

    /// Block sequence `1^y_1 2^y_2 ... k^y_k`.
    pub fn sorted_blocks(counts: &Composition) -> Self {
        let symbols = counts
            .parts()
            .iter()
            .enumerate()
            .flat_map(|(idx, &c)| std::iter::repeat_n(idx as u32 + 1, c as usize))
            .collect();
        Self {
            symbols,
            k: counts.k(),
        }
    }

    /// Block sequence `k^y_k ... 2^y_2 1^y_1`.
    pub fn reversed_blocks(counts: &Composition) -> Self {
        let mut s = Self::sorted_blocks(counts);
        s.symbols.reverse();
        s
    }

    pub fn symbols(&self) -> &[u32] {
        &self.symbols
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Tally of each symbol.
    pub fn counts(&self) -> Composition {
        let mut parts = vec![0u32; self.k];
        for &s in &self.symbols {
            parts[s as usize - 1] += 1;
        }
        Composition::new(parts).expect("k >= 1")
    }
}

impl fmt::Display for OutcomeSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (idx, s) in self.symbols.iter().enumerate() {
            if idx > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        let a = OutcomeSequence::parse("321", None).unwrap();
        assert_eq!(a.symbols(), &[3, 2, 1]);
        assert_eq!(a.k(), 3);
        let b = OutcomeSequence::parse("1, 1,2,12", None).unwrap();
        assert_eq!(b.symbols(), &[1, 1, 2, 12]);
        assert_eq!(b.k(), 12);
        assert!(OutcomeSequence::parse("", Some(2)).unwrap().is_empty());
    }

    #[test]
    fn out_of_range_symbols() {
        assert_eq!(
            OutcomeSequence::new(vec![1, 4], 3),
            Err(Error::SymbolOutOfRange { symbol: 4, k: 3 })
        );
        assert!(OutcomeSequence::new(vec![0], 3).is_err());
        assert!(OutcomeSequence::parse("1a", None).is_err());
    }

    #[test]
    fn blocks() {
        let y = Composition::new(vec![2, 0, 1]).unwrap();
        assert_eq!(OutcomeSequence::sorted_blocks(&y).symbols(), &[1, 1, 3]);
        assert_eq!(OutcomeSequence::reversed_blocks(&y).symbols(), &[3, 1, 1]);
        assert_eq!(OutcomeSequence::sorted_blocks(&y).counts(), y);
    }
}
