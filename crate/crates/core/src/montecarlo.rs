//! Monte Carlo estimators for scales where enumeration is out of reach.
//!
//! Trials are split into blocks of [`BLOCK_SIZE`]; block `b` draws from
//! stream `b` of the run's seed (see [`RngState::for_stream`]). Per-block sums
//! are exact integers, so the reduced result is bit-identical whatever the
//! number of worker threads.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::closedform::{self, ClassQuery, PrecedenceQuery};
use crate::counting::factorial;
use crate::oracle;
use crate::rational::{to_f64, ExactRational};
use crate::sampler::{check_class, sample_class, sample_uniform, RngState};
use crate::{Error, Result};

/// Trials per random stream.
pub const BLOCK_SIZE: u64 = 4096;

/// A sample mean with its standard error.
#[derive(Debug, Clone, PartialEq)]
pub struct Estimate {
    pub mean: f64,
    /// Sample standard deviation over `sqrt(trials)`.
    pub std_error: f64,
    pub trials: u64,
    pub seed: u64,
    /// Exact value of the estimated quantity, when known.
    pub target: Option<ExactRational>,
}

impl Estimate {
    /// `(mean - target) / std_error`. `None` without a target; infinite when
    /// the standard error is zero and the mean misses the target.
    pub fn z_score(&self) -> Option<f64> {
        let target = to_f64(self.target.as_ref()?);
        let diff = self.mean - target;
        Some(if diff == 0.0 {
            0.0
        } else {
            diff / self.std_error
        })
    }

    /// Whether `|mean - target| <= sigmas * std_error`.
    pub fn within(&self, sigmas: f64) -> Option<bool> {
        self.z_score().map(|z| z.abs() <= sigmas)
    }
}

/// Exact running sums of an integer-valued statistic.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
struct Moments {
    count: u64,
    sum: u128,
    sum_sq: u128,
}

impl Moments {
    fn push(&mut self, x: u64) {
        let x = x as u128;
        self.count += 1;
        self.sum += x;
        self.sum_sq = self
            .sum_sq
            .checked_add(x * x)
            .expect("sum of squares overflow");
    }

    fn merge(self, other: Moments) -> Moments {
        Moments {
            count: self.count + other.count,
            sum: self.sum + other.sum,
            sum_sq: self
                .sum_sq
                .checked_add(other.sum_sq)
                .expect("sum of squares overflow"),
        }
    }

    fn into_estimate(self, seed: u64, target: Option<ExactRational>) -> Estimate {
        let t = BigInt::from(self.count);
        let sum = BigInt::from(self.sum);
        let mean = BigRational::new(sum.clone(), t.clone());
        // Unbiased variance (t * sum_sq - sum^2) / (t (t - 1)), exactly.
        let var = BigRational::new(&t * BigInt::from(self.sum_sq) - &sum * &sum, &t * (&t - 1));
        let std_error = (var.to_f64().unwrap_or(f64::INFINITY) / self.count as f64).sqrt();
        Estimate {
            mean: mean.to_f64().unwrap_or(f64::NAN),
            std_error,
            trials: self.count,
            seed,
            target,
        }
    }
}

fn blocks(trials: u64) -> impl IndexedParallelIterator<Item = (u64, u64)> {
    let count = trials.div_ceil(BLOCK_SIZE) as usize;
    (0..count).into_par_iter().map(move |b| {
        let b = b as u64;
        let start = b * BLOCK_SIZE;
        (b, (trials - start).min(BLOCK_SIZE))
    })
}

fn run_trials<F>(trials: u64, seed: u64, statistic: F) -> Result<Moments>
where
    F: Fn(&mut RngState) -> Result<u64> + Sync,
{
    let per_block = blocks(trials)
        .map(|(b, len)| {
            let mut rng = RngState::for_stream(seed, b);
            let mut m = Moments::default();
            for _ in 0..len {
                m.push(statistic(&mut rng)?);
            }
            Ok(m)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(per_block
        .into_iter()
        .fold(Moments::default(), Moments::merge))
}

fn check_trials(trials: u64) -> Result<()> {
    if trials < 2 {
        return Err(Error::domain(format!(
            "at least 2 trials are required, got {trials}"
        )));
    }
    Ok(())
}

/// Exact `E[I_n]` over `D_{n;k}`: closed form for `n >= 3`, enumeration below.
fn exact_expected_inversions(n: usize, k: usize) -> Result<ExactRational> {
    if n >= 3 {
        closedform::expected_inversions(&ClassQuery::new(n, k)?)
    } else {
        Ok(oracle::oracle_expected_inversions(n, k)?.expected_inversions)
    }
}

fn exact_precedence(n: usize, k: usize, i: usize, j: usize) -> Result<ExactRational> {
    if n >= 3 {
        closedform::precedence_probability(&PrecedenceQuery::new(ClassQuery::new(n, k)?, i, j)?)
    } else {
        oracle::oracle_precedence(n, k, i, j)
    }
}

/// Mean inversion count of `trials` uniform draws from `D_{n;k}`.
pub fn estimate_expected_inversions(
    n: usize,
    k: usize,
    trials: u64,
    seed: u64,
) -> Result<Estimate> {
    check_class(n, k)?;
    check_trials(trials)?;
    let target = exact_expected_inversions(n, k)?;
    let moments = run_trials(
        trials,
        seed,
        |rng| Ok(sample_class(n, k, rng)?.inversions()),
    )?;
    Ok(moments.into_estimate(seed, Some(target)))
}

/// Frequency of "value `i` left of value `j`" over `trials` draws from `D_{n;k}`.
pub fn estimate_precedence(
    n: usize,
    k: usize,
    i: usize,
    j: usize,
    trials: u64,
    seed: u64,
) -> Result<Estimate> {
    check_class(n, k)?;
    check_trials(trials)?;
    let target = exact_precedence(n, k, i, j)?;
    let moments = run_trials(trials, seed, |rng| {
        Ok(sample_class(n, k, rng)?.precedes(i, j)? as u64)
    })?;
    Ok(moments.into_estimate(seed, Some(target)))
}

/// Pearson statistic of observed cell counts against a uniform null.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChiSquare {
    pub statistic: f64,
    pub dof: u64,
}

/// `sum (o - e)^2 / e` with `e = total / cells`, evaluated exactly as
/// `(cells * sum o^2 - total^2) / total` before conversion.
pub fn pearson_uniform(counts: &[u64]) -> ChiSquare {
    let cells = counts.len() as u64;
    let total: u64 = counts.iter().sum();
    let dof = cells.saturating_sub(1);
    if total == 0 || cells <= 1 {
        return ChiSquare {
            statistic: 0.0,
            dof,
        };
    }
    let sum_sq: BigInt = counts
        .iter()
        .map(|&c| BigInt::from(c) * BigInt::from(c))
        .sum();
    let total = BigInt::from(total);
    let stat = BigRational::new(BigInt::from(cells) * sum_sq - &total * &total, total);
    ChiSquare {
        statistic: stat.to_f64().unwrap_or(f64::INFINITY),
        dof,
    }
}

/// Lexicographic rank of a one-line permutation, in `0..n!`.
fn lehmer_rank(one_line: &[usize]) -> usize {
    let n = one_line.len();
    let mut rank = 0;
    for a in 0..n {
        let smaller_after = one_line[a + 1..]
            .iter()
            .filter(|&&v| v < one_line[a])
            .count();
        rank = rank * (n - a) + smaller_after;
    }
    rank
}

fn count_cells<F>(cells: usize, trials: u64, seed: u64, draw: F) -> Result<Vec<u64>>
where
    F: Fn(&mut RngState) -> Result<usize> + Sync,
{
    let per_block = blocks(trials)
        .map(|(b, len)| {
            let mut rng = RngState::for_stream(seed, b);
            let mut counts = vec![0u64; cells];
            for _ in 0..len {
                counts[draw(&mut rng)?] += 1;
            }
            Ok(counts)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(per_block
        .into_iter()
        .fold(vec![0u64; cells], |mut acc, block| {
            acc.iter_mut().zip(block).for_each(|(a, c)| *a += c);
            acc
        }))
}

/// Largest `n` accepted by the uniformity checks.
pub const MAX_CHI_SQUARE_N: usize = 6;

/// Pearson test of [`sample_uniform`] over all `n!` outcomes.
pub fn chi_square_uniformity(n: usize, trials: u64, seed: u64) -> Result<ChiSquare> {
    if n == 0 || n > MAX_CHI_SQUARE_N {
        return Err(Error::domain(format!(
            "uniformity check supports 1 <= n <= {MAX_CHI_SQUARE_N}, got {n}"
        )));
    }
    let cells = factorial(n).to_usize().expect("n! fits");
    if trials < 10 * cells as u64 {
        return Err(Error::domain(format!(
            "undersampled: {trials} trials for {cells} cells, need at least {}",
            10 * cells
        )));
    }
    let counts = count_cells(cells, trials, seed, |rng| {
        Ok(lehmer_rank(sample_uniform(n, rng)?.as_slice()))
    })?;
    Ok(pearson_uniform(&counts))
}

/// Pearson test of [`sample_class`] over the members of `D_{n;k}`.
pub fn chi_square_class_uniformity(
    n: usize,
    k: usize,
    trials: u64,
    seed: u64,
) -> Result<ChiSquare> {
    if n == 0 || n > MAX_CHI_SQUARE_N {
        return Err(Error::domain(format!(
            "uniformity check supports 1 <= n <= {MAX_CHI_SQUARE_N}, got {n}"
        )));
    }
    check_class(n, k)?;
    let mut cell_of_rank = vec![usize::MAX; factorial(n).to_usize().expect("n! fits")];
    let mut cells = 0;
    for p in oracle::enumerate_class(n, k)? {
        cell_of_rank[lehmer_rank(p.as_slice())] = cells;
        cells += 1;
    }
    if trials < 10 * cells as u64 {
        return Err(Error::domain(format!(
            "undersampled: {trials} trials for {cells} cells, need at least {}",
            10 * cells
        )));
    }
    let counts = count_cells(cells, trials, seed, |rng| {
        let cell = cell_of_rank[lehmer_rank(sample_class(n, k, rng)?.as_slice())];
        debug_assert_ne!(cell, usize::MAX, "sample outside the class");
        Ok(cell)
    })?;
    Ok(pearson_uniform(&counts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::LexPermutations;
    use crate::rational::rational;

    #[test]
    fn lehmer_rank_is_lexicographic() {
        for n in 1..=5 {
            for (idx, p) in LexPermutations::new(n).enumerate() {
                assert_eq!(lehmer_rank(p.as_slice()), idx);
            }
        }
    }

    #[test]
    fn moments_match_direct_formulas() {
        let xs = [3u64, 7, 7, 1, 0, 12];
        let mut m = Moments::default();
        xs.iter().for_each(|&x| m.push(x));
        let e = m.into_estimate(0, None);
        let mean = xs.iter().sum::<u64>() as f64 / 6.0;
        let var = xs.iter().map(|&x| (x as f64 - mean).powi(2)).sum::<f64>() / 5.0;
        assert!((e.mean - mean).abs() < 1e-12);
        assert!((e.std_error - (var / 6.0).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn pearson_examples() {
        assert_eq!(pearson_uniform(&[5, 5, 5, 5]).statistic, 0.0);
        // e = 10: (4 + 4 + 0) / 10
        let c = pearson_uniform(&[12, 8, 10]);
        assert!((c.statistic - 0.8).abs() < 1e-12);
        assert_eq!(c.dof, 2);
    }

    #[test]
    fn singleton_class_has_zero_error() {
        let e = estimate_expected_inversions(7, 7, 100, 1).unwrap();
        assert_eq!((e.mean, e.std_error), (0.0, 0.0));
        assert_eq!(e.z_score(), Some(0.0));
        let p = estimate_precedence(7, 7, 2, 5, 100, 1).unwrap();
        assert_eq!((p.mean, p.std_error), (1.0, 0.0));
    }

    #[test]
    fn two_element_derangement() {
        let e = estimate_expected_inversions(2, 0, 1000, 3).unwrap();
        assert_eq!(e.mean, 1.0);
        assert_eq!(e.target, Some(rational(1, 1)));
    }

    #[test]
    fn argument_errors() {
        assert!(matches!(
            estimate_expected_inversions(5, 0, 1, 0),
            Err(Error::Domain(_))
        ));
        assert_eq!(
            estimate_expected_inversions(5, 4, 100, 0),
            Err(Error::EmptyClass { n: 5, k: 4 })
        );
        assert!(matches!(
            estimate_precedence(5, 0, 3, 3, 100, 0),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            chi_square_uniformity(7, 1_000_000, 0),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            chi_square_uniformity(4, 239, 0),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn trivial_uniformity() {
        assert_eq!(
            chi_square_uniformity(1, 10, 0).unwrap(),
            ChiSquare {
                statistic: 0.0,
                dof: 0
            }
        );
        assert_eq!(chi_square_uniformity(4, 240, 0).unwrap().dof, 23);
    }

    #[test]
    fn small_precedence_estimate() {
        let e = estimate_precedence(3, 0, 1, 2, 10_000, 8).unwrap();
        assert_eq!(e.target, Some(rational(1, 2)));
        assert!(e.within(4.0).unwrap(), "{e:?}");
    }

    #[test]
    fn block_boundaries_are_deterministic() {
        let a = estimate_expected_inversions(9, 1, 2 * BLOCK_SIZE + 17, 44).unwrap();
        let b = estimate_expected_inversions(9, 1, 2 * BLOCK_SIZE + 17, 44).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.trials, 2 * BLOCK_SIZE + 17);
    }
}
