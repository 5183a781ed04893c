//! Closed-form evaluators for the expected inversion count and the precedence
//! probabilities of a uniform permutation with exactly `k` fixed points.
//!
//! All values are exact rationals. The exact forms are valid for `n >= 3`;
//! smaller sizes are refused with [`Error::UnsupportedSize`] and should be
//! answered by [`crate::oracle`]. The class with `k = n - 1` fixed points is
//! empty and is reported as [`Error::EmptyClass`].
//!
//! Writing `m = n - k` and `E_m = sum_{l<=m} (-1)^l / l!`, every exact value is
//! a polynomial main term plus a multiple of the tail ratio
//! `t_m = ((-1)^m / m!) / E_m`, which shrinks factorially in `m`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::counting::{alternating_partial_sum, signed_reciprocal_factorial};
use crate::rational::ExactRational;
use crate::{Error, Result};

/// The class `D_{n;k}` of permutations of `[n]` with exactly `k` fixed points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ClassQuery {
    n: usize,
    k: usize,
}

impl ClassQuery {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("class query requires n >= 1"));
        }
        if k > n {
            return Err(Error::domain(format!(
                "class query requires k <= n, got n = {n}, k = {k}"
            )));
        }
        Ok(ClassQuery { n, k })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `D_{n;k}` is empty exactly when `k = n - 1`.
    pub fn is_empty(&self) -> bool {
        self.k + 1 == self.n
    }

    fn require_formula_range(&self) -> Result<()> {
        if self.n < 3 {
            return Err(Error::UnsupportedSize { n: self.n });
        }
        if self.is_empty() {
            return Err(Error::EmptyClass {
                n: self.n,
                k: self.k,
            });
        }
        Ok(())
    }
}

/// The event that value `i` appears before value `j`, within a class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrecedenceQuery {
    class: ClassQuery,
    i: usize,
    j: usize,
}

impl PrecedenceQuery {
    /// Requires `1 <= i < j <= n`.
    pub fn new(class: ClassQuery, i: usize, j: usize) -> Result<Self> {
        if i == 0 || i >= j || j > class.n {
            return Err(Error::domain(format!(
                "precedence query requires 1 <= i < j <= n, got i = {i}, j = {j}, n = {}",
                class.n
            )));
        }
        Ok(PrecedenceQuery { class, i, j })
    }

    pub fn class(&self) -> ClassQuery {
        self.class
    }

    pub fn i(&self) -> usize {
        self.i
    }

    pub fn j(&self) -> usize {
        self.j
    }
}

fn q(x: usize) -> ExactRational {
    BigRational::from_integer(BigInt::from(x))
}

fn qi(x: i64) -> ExactRational {
    BigRational::from_integer(BigInt::from(x))
}

fn half() -> ExactRational {
    BigRational::new(BigInt::one(), BigInt::from(2))
}

/// `((-1)^m / m!) / E_m(-1)`; `m` must not be 1.
fn tail_ratio(m: usize) -> ExactRational {
    debug_assert_ne!(m, 1, "E_1(-1) = 0");
    signed_reciprocal_factorial(m) / alternating_partial_sum(m)
}

/// `n(n-1)/4 - (k-1)n/6 - (k^2-k-1)/12`, without the factorially small
/// correction.
pub fn expected_inversions_main(query: &ClassQuery) -> Result<ExactRational> {
    if query.n < 3 {
        return Err(Error::UnsupportedSize { n: query.n });
    }
    let (n, k) = (q(query.n), q(query.k));
    let one = ExactRational::one();
    Ok(&n * (&n - &one) / qi(4) - (&k - &one) * &n / qi(6) - (&k * &k - &k - &one) / qi(12))
}

/// `t_{n-k} * (n-k-1)/12`, the exact difference between
/// [`expected_inversions`] and [`expected_inversions_main`].
pub fn inversion_correction(query: &ClassQuery) -> Result<ExactRational> {
    query.require_formula_range()?;
    let m = query.n - query.k;
    Ok(tail_ratio(m) * (q(m) - qi(1)) / qi(12))
}

/// Exact `E[I_n]` under the uniform measure on `D_{n;k}`.
///
/// ```
/// use fpinv::closedform::{expected_inversions, ClassQuery};
/// use fpinv::rational::rational;
///
/// let q = ClassQuery::new(3, 1).unwrap();
/// assert_eq!(expected_inversions(&q).unwrap(), rational(5, 3));
/// ```
pub fn expected_inversions(query: &ClassQuery) -> Result<ExactRational> {
    query.require_formula_range()?;
    Ok(expected_inversions_main(query)? + inversion_correction(query)?)
}

/// Ratios of `d_{n-1,k-1}/(n-1)!`, `d_{n-1,k}/(n-1)!` and `d_{n-1,k+1}/(n-1)!`
/// to `P_n(D_{n;k})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassRatios {
    pub lower: ExactRational,
    pub same: ExactRational,
    pub upper: ExactRational,
}

/// Requires `n >= 3` and `k <= n - 2`.
pub fn class_ratios(query: &ClassQuery) -> Result<ClassRatios> {
    if query.n < 3 {
        return Err(Error::UnsupportedSize { n: query.n });
    }
    if query.k + 2 > query.n {
        return Err(Error::domain(format!(
            "class ratios require k <= n - 2, got n = {}, k = {}",
            query.n, query.k
        )));
    }
    let m = query.n - query.k;
    let partial = alternating_partial_sum(m);
    let last = signed_reciprocal_factorial(m);
    let one = ExactRational::one();
    let same = &one - &last / &partial;
    let upper = (&one - (signed_reciprocal_factorial(m - 1) + &last) / &partial) / q(query.k + 1);
    Ok(ClassRatios {
        lower: q(query.k),
        same,
        upper,
    })
}

/// Exact `P(sigma^{-1}_i < sigma^{-1}_j)` under the uniform measure on
/// `D_{n;k}`.
///
/// For `k <= n - 2` the class is split by how the permutation of the other
/// `n - 1` labels looks before `j` is seated last in the Chinese restaurant
/// construction: it has `k - 1`, `k` or `k + 1` fixed points. Each branch
/// contributes its conditional precedence probability weighted by the
/// matching entry of [`class_ratios`]. For `k = n` the class is the identity
/// and the answer is 1.
pub fn precedence_probability(query: &PrecedenceQuery) -> Result<ExactRational> {
    PrecedenceEvaluator::new(query.class)?.probability(query.i, query.j)
}

/// [`precedence_probability`] for many pairs of one class; the class ratios
/// are computed once.
#[derive(Debug, Clone)]
pub struct PrecedenceEvaluator {
    class: ClassQuery,
    /// `None` for the singleton class `k = n`.
    ratios: Option<ClassRatios>,
}

impl PrecedenceEvaluator {
    pub fn new(class: ClassQuery) -> Result<Self> {
        class.require_formula_range()?;
        let ratios = if class.k == class.n {
            None
        } else {
            Some(class_ratios(&class)?)
        };
        Ok(PrecedenceEvaluator { class, ratios })
    }

    pub fn probability(&self, i: usize, j: usize) -> Result<ExactRational> {
        let query = PrecedenceQuery::new(self.class, i, j)?;
        let Some(ratios) = &self.ratios else {
            return Ok(ExactRational::one());
        };
        let (n, k, i, j) = (q(self.class.n), q(self.class.k), q(query.i), q(query.j));
        let one = ExactRational::one();
        let two = qi(2);
        let nn1 = &n * (&n - &one);
        let nn1n2 = &nn1 * (&n - &two);

        // Before j arrives: k - 1 fixed points, and j sits alone.
        let lower_branch = (&k - &one) / &nn1 + (&n - &k) * (&j - &two) / &nn1n2;

        // k fixed points, and j joins a table of two or more.
        let same_branch = &k * (&n - &k - &one) * (&n - &i - &one) / &nn1n2
            + (&n - &k - &one) / &nn1n2
                * (&i - &one + &n - &j + half() * (&n - &two) * (&n - qi(3) - &k));

        // k + 1 fixed points, and j breaks one of them.
        let upper_branch = (&k + &one) * &k * (&n - &i - &one) / &nn1n2
            + (&n - &two - &k) * (&k + &one) / (&two * &nn1);

        Ok(
            &ratios.lower * lower_branch
                + &ratios.same * same_branch
                + &ratios.upper * upper_branch,
        )
    }
}

/// `1/2 + ((2(k-1)(j-i) + k^2 - 3k + 1) n - 2(k^2-k-1)(j-i)) / (2n(n-1)(n-2))`,
/// the leading part of [`precedence_probability`].
pub fn precedence_probability_main(query: &PrecedenceQuery) -> Result<ExactRational> {
    let class = query.class;
    if class.n < 3 {
        return Err(Error::UnsupportedSize { n: class.n });
    }
    let (n, k) = (q(class.n), q(class.k));
    let gap = q(query.j - query.i);
    let one = ExactRational::one();
    let two = qi(2);
    let kk = &k * &k;
    let numer = (&two * (&k - &one) * &gap + &kk - qi(3) * &k + &one) * &n
        - &two * (&kk - &k - &one) * &gap;
    let denom = &two * &n * (&n - &one) * (&n - &two);
    Ok(half() + numer / denom)
}

/// Exact `E[I_n]` for a uniform derangement: `n(n-1)/4 + n/6 + 1/12 + t_n (n-1)/12`.
///
/// Stands on its own so that the general-`k` evaluators can be checked against
/// it at `k = 0`.
pub fn derangement_expected_inversions(n: usize) -> Result<ExactRational> {
    if n < 3 {
        return Err(Error::UnsupportedSize { n });
    }
    let nq = q(n);
    let one = ExactRational::one();
    let main = &nq * (&nq - &one) / qi(4) + &nq / qi(6) + BigRational::new(1.into(), 12.into());
    Ok(main + tail_ratio(n) * (&nq - &one) / qi(12))
}

/// Exact precedence probability for a uniform derangement:
/// `1/2 + ((1 - 2d) n + 2d) / (2n(n-1)(n-2)) + t_n (2d - n) / (2n(n-2))` with
/// `d = j - i`.
pub fn derangement_precedence_probability(n: usize, i: usize, j: usize) -> Result<ExactRational> {
    if n < 3 {
        return Err(Error::UnsupportedSize { n });
    }
    if i == 0 || i >= j || j > n {
        return Err(Error::domain(format!(
            "precedence query requires 1 <= i < j <= n, got i = {i}, j = {j}, n = {n}"
        )));
    }
    let nq = q(n);
    let d = q(j - i);
    let one = ExactRational::one();
    let two = qi(2);
    let main = half()
        + ((&one - &two * &d) * &nq + &two * &d) / (&two * &nq * (&nq - &one) * (&nq - &two));
    let correction = tail_ratio(n) * (&two * &d - &nq) / (&two * &nq * (&nq - &two));
    Ok(main + correction)
}

/// `sum_{1<=i<j<=n} i = (n-1)n(n+1)/6`
pub fn sum_of_smaller_indices(n: usize) -> ExactRational {
    if n == 0 {
        return ExactRational::zero();
    }
    q(n - 1) * q(n) * q(n + 1) / qi(6)
}

/// `sum_{1<=i<j<=n} j = (n-1)n(n+1)/3`
pub fn sum_of_larger_indices(n: usize) -> ExactRational {
    if n == 0 {
        return ExactRational::zero();
    }
    q(n - 1) * q(n) * q(n + 1) / qi(3)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::{class_probability, factorial, rencontres_count};
    use crate::rational::{nat_ratio, rational};

    fn class(n: usize, k: usize) -> ClassQuery {
        ClassQuery::new(n, k).unwrap()
    }

    fn prec(n: usize, k: usize, i: usize, j: usize) -> PrecedenceQuery {
        PrecedenceQuery::new(class(n, k), i, j).unwrap()
    }

    #[test]
    fn query_validation() {
        assert!(ClassQuery::new(0, 0).is_err());
        assert!(ClassQuery::new(3, 4).is_err());
        assert!(class(5, 4).is_empty());
        assert!(!class(5, 5).is_empty());
        assert!(PrecedenceQuery::new(class(4, 0), 2, 2).is_err());
        assert!(PrecedenceQuery::new(class(4, 0), 3, 2).is_err());
        assert!(PrecedenceQuery::new(class(4, 0), 1, 5).is_err());
        assert!(PrecedenceQuery::new(class(4, 0), 0, 2).is_err());
    }

    #[test]
    fn expected_inversion_examples() {
        assert_eq!(expected_inversions(&class(4, 0)).unwrap(), rational(34, 9));
        assert_eq!(expected_inversions(&class(3, 1)).unwrap(), rational(5, 3));
        for n in 3..30 {
            assert_eq!(expected_inversions(&class(n, n)).unwrap(), rational(0, 1));
        }
    }

    #[test]
    fn expected_inversion_errors() {
        assert_eq!(
            expected_inversions(&class(5, 4)),
            Err(Error::EmptyClass { n: 5, k: 4 })
        );
        assert_eq!(
            expected_inversions(&class(2, 0)),
            Err(Error::UnsupportedSize { n: 2 })
        );
        assert_eq!(
            inversion_correction(&class(3, 2)),
            Err(Error::EmptyClass { n: 3, k: 2 })
        );
    }

    #[test]
    fn main_term_examples() {
        assert_eq!(
            expected_inversions_main(&class(4, 0)).unwrap(),
            rational(15, 4)
        );
        for n in 3..30 {
            let n4 = rational((n * (n - 1)) as i64, 4);
            assert_eq!(
                expected_inversions_main(&class(n, 1)).unwrap(),
                n4 + rational(1, 12)
            );
        }
        let diff = expected_inversions(&class(4, 0)).unwrap()
            - expected_inversions_main(&class(4, 0)).unwrap();
        assert_eq!(diff, rational(1, 36));
    }

    #[test]
    fn correction_examples() {
        assert_eq!(inversion_correction(&class(4, 0)).unwrap(), rational(1, 36));
        assert_eq!(inversion_correction(&class(3, 1)).unwrap(), rational(1, 12));
        for n in 3..20 {
            assert_eq!(
                inversion_correction(&class(n, n)).unwrap(),
                rational(-1, 12)
            );
        }
    }

    #[test]
    fn class_ratio_examples() {
        let r = class_ratios(&class(3, 1)).unwrap();
        assert_eq!(
            (r.lower, r.same, r.upper),
            (rational(1, 1), rational(0, 1), rational(1, 1))
        );
        for n in 3..12 {
            assert_eq!(class_ratios(&class(n, 0)).unwrap().lower, rational(0, 1));
        }
        assert!(matches!(class_ratios(&class(5, 4)), Err(Error::Domain(_))));
        assert!(matches!(class_ratios(&class(5, 5)), Err(Error::Domain(_))));
    }

    #[test]
    fn class_ratios_reproduce_rencontres_counts() {
        for n in 3..=14 {
            let prev = factorial(n - 1);
            for k in 0..=n - 2 {
                let r = class_ratios(&class(n, k)).unwrap();
                let p = class_probability(n, k).unwrap();
                if k > 0 {
                    assert_eq!(
                        &r.lower * &p,
                        nat_ratio(&rencontres_count(n - 1, k - 1).unwrap(), &prev)
                    );
                }
                assert_eq!(
                    &r.same * &p,
                    nat_ratio(&rencontres_count(n - 1, k).unwrap(), &prev)
                );
                assert_eq!(
                    &r.upper * &p,
                    nat_ratio(&rencontres_count(n - 1, k + 1).unwrap(), &prev)
                );
            }
        }
    }

    #[test]
    fn precedence_examples() {
        assert_eq!(
            precedence_probability(&prec(4, 0, 1, 2)).unwrap(),
            rational(4, 9)
        );
        assert_eq!(
            precedence_probability(&prec(3, 1, 1, 2)).unwrap(),
            rational(1, 3)
        );
        assert_eq!(
            precedence_probability(&prec(3, 0, 1, 2)).unwrap(),
            rational(1, 2)
        );
        for n in 3..10 {
            assert_eq!(
                precedence_probability(&prec(n, n, 1, n)).unwrap(),
                rational(1, 1)
            );
        }
        assert_eq!(
            precedence_probability(&prec(5, 4, 1, 2)),
            Err(Error::EmptyClass { n: 5, k: 4 })
        );
        assert_eq!(
            precedence_probability(&PrecedenceQuery::new(class(2, 0), 1, 2).unwrap()),
            Err(Error::UnsupportedSize { n: 2 })
        );
    }

    #[test]
    fn precedence_main_examples() {
        assert_eq!(
            precedence_probability_main(&prec(3, 1, 1, 2)).unwrap(),
            rational(5, 12)
        );
        assert_eq!(
            precedence_probability_main(&prec(4, 0, 1, 2)).unwrap(),
            rational(1, 2) - rational(1, 24)
        );
    }

    #[test]
    fn derangement_forms_examples() {
        assert_eq!(derangement_expected_inversions(4).unwrap(), rational(34, 9));
        assert_eq!(derangement_expected_inversions(3).unwrap(), rational(2, 1));
        assert_eq!(
            derangement_precedence_probability(4, 1, 2).unwrap(),
            rational(4, 9)
        );
        assert_eq!(
            derangement_precedence_probability(3, 1, 2).unwrap(),
            rational(1, 2)
        );
        assert!(derangement_precedence_probability(4, 2, 1).is_err());
        assert!(derangement_expected_inversions(2).is_err());
    }

    #[test]
    fn index_sums() {
        for n in 2..=100usize {
            let (mut si, mut sj) = (0u64, 0u64);
            for i in 1..=n {
                for j in i + 1..=n {
                    si += i as u64;
                    sj += j as u64;
                }
            }
            assert_eq!(sum_of_smaller_indices(n), rational(si as i64, 1));
            assert_eq!(sum_of_larger_indices(n), rational(sj as i64, 1));
        }
    }
}
