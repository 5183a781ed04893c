//! Rencontres numbers d(n,k) and the fixed-point distribution d(n,k)/n!,
//! which approaches the Poisson(1) law e^{-1}/k!.

use fpinv::counting::{class_probability, derangement_count, rencontres_count};
use fpinv::rational::to_f64;

fn main() -> fpinv::Result<()> {
    for n in 0..=10 {
        let row: Vec<String> = (0..=n)
            .map(|k| rencontres_count(n, k).map(|d| d.to_string()))
            .collect::<Result<_, _>>()?;
        println!("n = {n:>2}: {}", row.join(" "));
    }
    println!("d_30 = {}", derangement_count(30));

    let n = 25;
    let mut poisson = (-1.0f64).exp();
    println!("\nk   P(k fixed points), n = {n}   e^-1/k!");
    for k in 0..=6 {
        if k > 0 {
            poisson /= k as f64;
        }
        println!(
            "{k}   {:<24.17}   {poisson:.17}",
            to_f64(&class_probability(n, k)?)
        );
    }
    Ok(())
}
