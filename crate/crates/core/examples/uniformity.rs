//! Pearson chi-square checks that the samplers are uniform: over all of S_4,
//! and over the nine derangements of 4.

use fpinv::montecarlo::{chi_square_class_uniformity, chi_square_uniformity};

fn main() -> fpinv::Result<()> {
    let all = chi_square_uniformity(4, 100_000, 1)?;
    println!(
        "S_4: statistic {:.2} on {} dof (0.001 critical value 49.73)",
        all.statistic, all.dof
    );
    let der = chi_square_class_uniformity(4, 0, 100_000, 1)?;
    println!(
        "D_4: statistic {:.2} on {} dof (0.001 critical value 26.12)",
        der.statistic, der.dof
    );
    Ok(())
}
