//! Ground truth by exhaustive enumeration of `S_n` for `n <= 10`.
//!
//! Nothing here uses a closed form: class sizes, inversion means and
//! precedence frequencies are counted directly.

use num_bigint::BigUint;

use crate::permutation::Permutation;
use crate::rational::{nat_ratio, ExactRational, Nat};
use crate::{Error, Result};

/// Largest `n` accepted by the enumerator (`10! = 3,628,800`).
pub const MAX_ENUMERATION_N: usize = 10;

fn check_size(n: usize, k: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::domain("enumeration requires n >= 1"));
    }
    if n > MAX_ENUMERATION_N {
        return Err(Error::SizeCap {
            n,
            cap: MAX_ENUMERATION_N,
        });
    }
    if k > n {
        return Err(Error::domain(format!(
            "enumeration requires k <= n, got n = {n}, k = {k}"
        )));
    }
    Ok(())
}

/// All of `S_n` in lexicographic order.
#[derive(Debug, Clone)]
pub struct LexPermutations {
    next: Option<Vec<usize>>,
}

impl LexPermutations {
    pub fn new(n: usize) -> Self {
        LexPermutations {
            next: (n > 0).then(|| (1..=n).collect()),
        }
    }
}

/// Advances `v` to its lexicographic successor; false at the last permutation.
fn next_permutation(v: &mut [usize]) -> bool {
    let Some(pivot) = v.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let succ = v
        .iter()
        .rposition(|&x| x > v[pivot])
        .expect("successor exists");
    v.swap(pivot, succ);
    v[pivot + 1..].reverse();
    true
}

impl Iterator for LexPermutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        if next_permutation(&mut succ) {
            self.next = Some(succ);
        }
        Some(Permutation::from_vec_unchecked(current))
    }
}

/// Every member of `D_{n;k}`, each once, in lexicographic order.
pub fn enumerate_class(n: usize, k: usize) -> Result<impl Iterator<Item = Permutation>> {
    check_size(n, k)?;
    Ok(LexPermutations::new(n).filter(move |p| p.fixed_point_count() == k))
}

/// Enumeration summary of one class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassSummary {
    pub n: usize,
    pub k: usize,
    pub class_size: Nat,
    pub inversion_total: Nat,
    /// `inversion_total / class_size`
    pub expected_inversions: ExactRational,
}

/// Summarizes an arbitrary stream of class members. Fails with
/// [`Error::EmptyClass`] on an empty stream.
pub fn summarize<I>(n: usize, k: usize, members: I) -> Result<ClassSummary>
where
    I: IntoIterator<Item = Permutation>,
{
    let (mut size, mut total) = (0u64, 0u64);
    for p in members {
        size += 1;
        total += p.inversions();
    }
    if size == 0 {
        return Err(Error::EmptyClass { n, k });
    }
    let (class_size, inversion_total) = (BigUint::from(size), BigUint::from(total));
    let expected_inversions = nat_ratio(&inversion_total, &class_size);
    Ok(ClassSummary {
        n,
        k,
        class_size,
        inversion_total,
        expected_inversions,
    })
}

/// Exact mean inversion count over `D_{n;k}`, by enumeration.
pub fn oracle_expected_inversions(n: usize, k: usize) -> Result<ClassSummary> {
    summarize(n, k, enumerate_class(n, k)?)
}

fn check_pair(n: usize, i: usize, j: usize) -> Result<()> {
    if i == 0 || i >= j || j > n {
        return Err(Error::domain(format!(
            "precedence query requires 1 <= i < j <= n, got i = {i}, j = {j}, n = {n}"
        )));
    }
    Ok(())
}

/// Fraction of `D_{n;k}` in which value `i` appears left of value `j`.
pub fn oracle_precedence(n: usize, k: usize, i: usize, j: usize) -> Result<ExactRational> {
    check_size(n, k)?;
    check_pair(n, i, j)?;
    let (mut size, mut hits) = (0u64, 0u64);
    for p in enumerate_class(n, k)? {
        size += 1;
        if p.position_of(i) < p.position_of(j) {
            hits += 1;
        }
    }
    if size == 0 {
        return Err(Error::EmptyClass { n, k });
    }
    Ok(nat_ratio(&hits.into(), &size.into()))
}

/// Precedence counts for every pair of one class, gathered in one pass.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrecedenceTable {
    n: usize,
    class_size: u64,
    /// `before[(i-1)*n + (j-1)]` counts members with `i` left of `j`.
    before: Vec<u64>,
}

impl PrecedenceTable {
    pub fn class_size(&self) -> u64 {
        self.class_size
    }

    /// Exact `P(i before j)` for any distinct labels.
    pub fn probability(&self, i: usize, j: usize) -> Result<ExactRational> {
        let n = self.n;
        if i == j || i == 0 || j == 0 || i > n || j > n {
            return Err(Error::domain(format!(
                "labels {i}, {j} not distinct in 1..={n}"
            )));
        }
        let hits = self.before[(i - 1) * n + (j - 1)];
        Ok(nat_ratio(&hits.into(), &self.class_size.into()))
    }
}

pub fn oracle_precedence_table(n: usize, k: usize) -> Result<PrecedenceTable> {
    check_size(n, k)?;
    let mut before = vec![0u64; n * n];
    let mut class_size = 0u64;
    for p in enumerate_class(n, k)? {
        class_size += 1;
        let s = p.as_slice();
        for a in 0..n {
            for b in a + 1..n {
                before[(s[a] - 1) * n + (s[b] - 1)] += 1;
            }
        }
    }
    if class_size == 0 {
        return Err(Error::EmptyClass { n, k });
    }
    Ok(PrecedenceTable {
        n,
        class_size,
        before,
    })
}
