//! Exact combinatorial counts.
//!
//! Everything here is unbounded integer or rational arithmetic. Inputs are
//! machine integers; outputs grow factorially, so large arguments are slow
//! rather than wrong.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::rational::{nat_ratio, ExactRational, Nat};
use crate::{Error, Result};

/// `m!`
pub fn factorial(m: usize) -> Nat {
    (1..=m).fold(Nat::one(), |acc, i| acc * i)
}

/// The binomial coefficient `C(m, r)`.
pub fn binomial(m: usize, r: usize) -> Result<Nat> {
    if r > m {
        return Err(Error::domain(format!("binomial({m}, {r}) requires r <= m")));
    }
    let r = r.min(m - r);
    // Each partial product C(m-r+i, i) is an integer, so the division is exact.
    let mut acc = Nat::one();
    for i in 1..=r {
        acc = acc * (m - r + i) / i;
    }
    Ok(acc)
}

/// Number of derangements `d_m` of an `m`-element set.
///
/// Computed with `d_m = (m - 1)(d_{m-1} + d_{m-2})`, seeded by `d_0 = 1`,
/// `d_1 = 0`.
pub fn derangement_count(m: usize) -> Nat {
    let mut prev = Nat::one(); // d_0
    if m == 0 {
        return prev;
    }
    let mut cur = Nat::zero(); // d_1
    for i in 2..=m {
        let next = (&prev + &cur) * (i - 1);
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// Rencontres number `d_{n,k}`: permutations of `[n]` with exactly `k` fixed
/// points, equal to `C(n, k) * d_{n-k}`.
pub fn rencontres_count(n: usize, k: usize) -> Result<Nat> {
    if k > n {
        return Err(Error::domain(format!(
            "rencontres_count({n}, {k}) requires k <= n"
        )));
    }
    Ok(binomial(n, k)? * derangement_count(n - k))
}

/// The truncated series `sum_{l=0}^{m} (-1)^l / l!`, which equals `d_m / m!`.
pub fn alternating_partial_sum(m: usize) -> ExactRational {
    let mut sum = BigRational::zero();
    let mut term = BigRational::one();
    for l in 0..=m {
        if l > 0 {
            term = -term / BigInt::from(l);
        }
        sum += &term;
    }
    sum
}

/// `(-1)^m / m!`, the last term of [`alternating_partial_sum`].
pub fn signed_reciprocal_factorial(m: usize) -> ExactRational {
    let value = BigRational::new(BigInt::one(), BigInt::from(factorial(m)));
    if m.is_multiple_of(2) {
        value
    } else {
        -value
    }
}

/// `P_n(D_{n;k}) = d_{n,k} / n!`, the probability that a uniform permutation of
/// `[n]` has exactly `k` fixed points.
pub fn class_probability(n: usize, k: usize) -> Result<ExactRational> {
    if n == 0 {
        return Err(Error::domain("class_probability requires n >= 1"));
    }
    Ok(nat_ratio(&rencontres_count(n, k)?, &factorial(n)))
}
