//! Expected inversion counts for permutations with exactly k fixed points,
//! split into the polynomial main term and the factorially small correction.
//!
//!     cargo run --example exact_expectations -- 12

use fpinv::closedform::{
    expected_inversions, expected_inversions_main, inversion_correction, ClassQuery,
};
use fpinv::rational::{rational, to_decimal};

fn main() -> fpinv::Result<()> {
    let n: usize = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(10);
    let baseline = rational((n * (n - 1)) as i64, 4);
    println!("n = {n}, uniform baseline n(n-1)/4 = {baseline}");
    println!(
        "{:>3}  {:>12}  {:>24}  {:>22}",
        "k", "main", "correction", "exact - baseline"
    );
    for k in (0..=n).filter(|&k| k + 1 != n) {
        let q = ClassQuery::new(n, k)?;
        let exact = expected_inversions(&q)?;
        println!(
            "{k:>3}  {:>12}  {:>24}  {:>22}",
            expected_inversions_main(&q)?.to_string(),
            to_decimal(&inversion_correction(&q)?, 6),
            to_decimal(&(exact - &baseline), 12),
        );
    }
    Ok(())
}
