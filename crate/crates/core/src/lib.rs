//! Exact inversion statistics for uniformly random permutations conditioned
//! on having exactly `k` fixed points.
//!
//! The crate evaluates the expected number of inversions `E[I_n | k fixed
//! points]` and the precedence probabilities `P(value i appears left of value
//! j | k fixed points)` in unbounded rational arithmetic, and ships the tools
//! needed to check those values independently:
//!
//! * [`counting`]: factorials, derangement and rencontres numbers, and the
//!   alternating partial sums of `e^{-1}`.
//! * [`permutation`]: the [`Permutation`] value type with its inversion count,
//!   fixed points, inverse and the precedence predicate.
//! * [`closedform`]: the closed-form evaluators, both exact and leading order.
//! * [`sampler`]: seeded samplers built on the Chinese restaurant construction.
//! * [`oracle`]: exhaustive enumeration for small `n`.
//! * [`montecarlo`]: sample-mean estimators and a chi-square uniformity check.
//! * [`cli`]: the command-line front end used by the `fpinv` binary.
//!
//! ```
//! use fpinv::closedform::{expected_inversions, ClassQuery};
//!
//! let q = ClassQuery::new(4, 0).unwrap();
//! assert_eq!(expected_inversions(&q).unwrap().to_string(), "34/9");
//! ```

pub mod cli;
pub mod closedform;
pub mod counting;
mod error;
pub mod montecarlo;
pub mod oracle;
pub mod permutation;
pub mod rational;
pub mod sampler;

pub use error::{Error, Result};
pub use permutation::Permutation;
pub use rational::{ExactRational, Nat};
