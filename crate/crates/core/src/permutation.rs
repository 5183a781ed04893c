//! One-line permutations of `[n] = {1, ..., n}` and their statistics.
//!
//! Labels and positions are 1-based everywhere in the public interface.

use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

/// A bijection of `{1, ..., n}` in one-line notation, `sigma_1 ... sigma_n`.
///
/// Immutable once constructed; every constructor validates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    one_line: Vec<usize>,
}

impl Permutation {
    /// Validates that `one_line` contains each of `1..=n` exactly once.
    pub fn new(one_line: Vec<usize>) -> Result<Self> {
        let n = one_line.len();
        if n == 0 {
            return Err(Error::domain(
                "a permutation must have at least one element",
            ));
        }
        let mut seen = vec![false; n];
        for &v in &one_line {
            if v == 0 || v > n {
                return Err(Error::domain(format!("label {v} out of range 1..={n}")));
            }
            if std::mem::replace(&mut seen[v - 1], true) {
                return Err(Error::domain(format!("label {v} appears twice")));
            }
        }
        Ok(Permutation { one_line })
    }

    /// Caller guarantees `one_line` is a valid permutation of `1..=len`.
    pub(crate) fn from_vec_unchecked(one_line: Vec<usize>) -> Self {
        debug_assert!(Permutation::new(one_line.clone()).is_ok());
        Permutation { one_line }
    }

    pub fn identity(n: usize) -> Self {
        assert!(n > 0, "identity of size zero");
        Permutation {
            one_line: (1..=n).collect(),
        }
    }

    /// `n, n-1, ..., 1`
    pub fn reversal(n: usize) -> Self {
        assert!(n > 0, "reversal of size zero");
        Permutation {
            one_line: (1..=n).rev().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.one_line.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.one_line
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.one_line
    }

    /// `sigma_i` for a 1-based position `i`.
    pub fn image(&self, i: usize) -> usize {
        self.one_line[i - 1]
    }

    /// Number of pairs `i < j` with `sigma_j < sigma_i`.
    ///
    /// Scans right to left, counting already-seen smaller values with a
    /// Fenwick tree over value ranks; `O(n log n)`.
    pub fn inversions(&self) -> u64 {
        let mut seen = Fenwick::new(self.len());
        let mut total = 0u64;
        for &v in self.one_line.iter().rev() {
            total += seen.prefix_sum(v - 1);
            seen.add(v);
        }
        total
    }

    /// Quadratic reference implementation of [`Permutation::inversions`].
    pub fn inversions_naive(&self) -> u64 {
        let s = &self.one_line;
        let mut total = 0u64;
        for i in 0..s.len() {
            for j in i + 1..s.len() {
                if s[j] < s[i] {
                    total += 1;
                }
            }
        }
        total
    }

    /// Positions `i` with `sigma_i = i`, ascending.
    pub fn fixed_points(&self) -> Vec<usize> {
        self.one_line
            .iter()
            .enumerate()
            .filter_map(|(p, &v)| (p + 1 == v).then_some(v))
            .collect()
    }

    pub fn fixed_point_count(&self) -> usize {
        self.one_line
            .iter()
            .enumerate()
            .filter(|(p, &v)| p + 1 == v)
            .count()
    }

    pub fn is_derangement(&self) -> bool {
        self.fixed_point_count() == 0
    }

    /// The permutation `tau` with `tau_{sigma_i} = i`; `tau_v` is the position of
    /// value `v` in `self`.
    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (p, &v) in self.one_line.iter().enumerate() {
            inv[v - 1] = p + 1;
        }
        Permutation { one_line: inv }
    }

    /// Position of value `v`, 1-based.
    pub fn position_of(&self, v: usize) -> usize {
        self.one_line
            .iter()
            .position(|&x| x == v)
            .expect("label in range")
            + 1
    }

    /// Whether value `i` appears strictly to the left of value `j`.
    pub fn precedes(&self, i: usize, j: usize) -> Result<bool> {
        let n = self.len();
        if i == j || i == 0 || j == 0 || i > n || j > n {
            return Err(Error::domain(format!(
                "precedes({i}, {j}) requires distinct labels in 1..={n}"
            )));
        }
        for &v in &self.one_line {
            if v == i {
                return Ok(true);
            }
            if v == j {
                return Ok(false);
            }
        }
        unreachable!("both labels occur in a valid permutation")
    }
}

/// Space-separated labels, e.g. `2 3 1`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (idx, v) in self.one_line.iter().enumerate() {
            if idx > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let labels = s
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>()
                    .map_err(|_| Error::domain(format!("invalid label {tok:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Permutation::new(labels)
    }
}

/// Binary indexed tree of counts over values `1..=n`.
struct Fenwick {
    tree: Vec<u64>,
}

impl Fenwick {
    fn new(n: usize) -> Self {
        Fenwick {
            tree: vec![0; n + 1],
        }
    }

    fn add(&mut self, mut i: usize) {
        while i < self.tree.len() {
            self.tree[i] += 1;
            i += i & i.wrapping_neg();
        }
    }

    /// Count of values in `1..=i`.
    fn prefix_sum(&self, mut i: usize) -> u64 {
        let mut sum = 0;
        while i > 0 {
            sum += self.tree[i];
            i -= i & i.wrapping_neg();
        }
        sum
    }
}
