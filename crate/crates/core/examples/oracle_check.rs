//! Checks the closed forms against exhaustive enumeration for every class and
//! every pair (i, j) up to n = 8.

use fpinv::closedform::{expected_inversions, precedence_probability, ClassQuery, PrecedenceQuery};
use fpinv::oracle::{oracle_expected_inversions, oracle_precedence_table};

fn main() -> fpinv::Result<()> {
    let mut comparisons = 0;
    for n in 3..=8 {
        for k in (0..=n).filter(|&k| k + 1 != n) {
            let class = ClassQuery::new(n, k)?;
            let summary = oracle_expected_inversions(n, k)?;
            assert_eq!(expected_inversions(&class)?, summary.expected_inversions);
            let table = oracle_precedence_table(n, k)?;
            for i in 1..=n {
                for j in i + 1..=n {
                    let q = PrecedenceQuery::new(class, i, j)?;
                    assert_eq!(precedence_probability(&q)?, table.probability(i, j)?);
                    comparisons += 1;
                }
            }
            comparisons += 1;
            println!(
                "n = {n}, k = {k}: {} permutations, E = {}",
                summary.class_size, summary.expected_inversions
            );
        }
    }
    println!("{comparisons} exact comparisons, all equal");
    Ok(())
}
