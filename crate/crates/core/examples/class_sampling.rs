//! Uniform draws from the class of permutations with exactly k fixed points,
//! and the acceptance rate of rejection sampling for derangements.

use fpinv::sampler::{sample_class, sample_derangement_counted, RngState};

fn main() -> fpinv::Result<()> {
    let mut rng = RngState::new(7);
    for k in [0, 1, 3, 8] {
        let p = sample_class(12, k, &mut rng)?;
        println!(
            "k = {k}: {p}  (fixed points {:?}, {} inversions)",
            p.fixed_points(),
            p.inversions()
        );
    }

    let (mut attempts, mut draws) = (0u64, 0u64);
    while attempts < 100_000 {
        attempts += sample_derangement_counted(30, &mut rng)?.1;
        draws += 1;
    }
    println!(
        "derangements of 30: {draws} accepted out of {attempts} attempts, rate {:.4} (e^-1 = {:.4})",
        draws as f64 / attempts as f64,
        (-1.0f64).exp()
    );
    Ok(())
}
