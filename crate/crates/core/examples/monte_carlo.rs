//! Monte Carlo estimates at n = 200, compared with the exact values in units
//! of standard error. Results are reproducible for a given seed regardless of
//! the number of threads.

use fpinv::montecarlo::{estimate_expected_inversions, estimate_precedence};
use fpinv::rational::to_decimal;

fn main() -> fpinv::Result<()> {
    let seed = 0x5eed;
    for k in [0, 1, 2] {
        let e = estimate_expected_inversions(200, k, 100_000, seed)?;
        println!(
            "E[I | n=200, k={k}]: {:.3} +- {:.3}, exact {} (z = {:+.2})",
            e.mean,
            e.std_error,
            to_decimal(e.target.as_ref().unwrap(), 12),
            e.z_score().unwrap()
        );
        let p = estimate_precedence(200, k, 1, 200, 100_000, seed)?;
        println!(
            "P(1 before 200 | k={k}): {:.5} +- {:.5}, exact {} (z = {:+.2})",
            p.mean,
            p.std_error,
            to_decimal(p.target.as_ref().unwrap(), 12),
            p.z_score().unwrap()
        );
    }
    Ok(())
}
