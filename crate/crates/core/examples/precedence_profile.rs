//! How likely value i is to appear before value j, conditioned on the number
//! of fixed points. With one fixed point the sign of the deviation from 1/2
//! flips where j - i crosses n/2.

use fpinv::closedform::{precedence_probability, ClassQuery, PrecedenceQuery};
use fpinv::rational::to_decimal;

fn main() -> fpinv::Result<()> {
    let n = 12;
    for k in [0, 1, 2, 5] {
        println!("n = {n}, k = {k}");
        for gap in 1..n {
            let q = PrecedenceQuery::new(ClassQuery::new(n, k)?, 1, 1 + gap)?;
            let p = precedence_probability(&q)?;
            println!(
                "  P(1 before {:>2}) = {:<14} ~ {}",
                1 + gap,
                p.to_string(),
                to_decimal(&p, 10)
            );
        }
    }
    Ok(())
}
