use crate::qcomb::OutcomeSequence;

/// Binary indexed tree over symbol values `1..=size`.
struct Fenwick {
    tree: Vec<u64>,
}

impl Fenwick {
    fn new(size: usize) -> Self {
        Self {
            tree: vec![0; size + 1],
        }
    }

    fn add(&mut self, mut idx: usize, delta: u64) {
        while idx < self.tree.len() {
            self.tree[idx] += delta;
            idx += idx & idx.wrapping_neg();
        }
    }

    /// Sum over `1..=idx`.
    fn prefix(&self, mut idx: usize) -> u64 {
        let mut acc = 0;
        while idx > 0 {
            acc += self.tree[idx];
            idx &= idx - 1;
        }
        acc
    }
}

/// Number of position pairs `a < b` with `s[a] > s[b]`.
///
/// Scans right to left, counting how many strictly smaller symbols were
/// already seen. `O(n log k)`.
pub fn count_inversions(seq: &OutcomeSequence) -> u64 {
    count_inversions_in(seq.symbols(), seq.k())
}

/// Same as [`count_inversions`] on a raw slice with symbols in `1..=k`.
pub fn count_inversions_in(symbols: &[u32], k: usize) -> u64 {
    let mut seen = Fenwick::new(k);
    let mut total = 0;
    for &s in symbols.iter().rev() {
        let s = s as usize;
        total += seen.prefix(s - 1);
        seen.add(s, 1);
    }
    total
}
