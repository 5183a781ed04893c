//! The Chinese restaurant construction: each arrival sits to the left of a
//! seated person or at a new table. Tables are the cycles of the permutation,
//! and removing the last arrival recovers the previous permutation.

use fpinv::sampler::{CrpState, RngState};

fn main() -> fpinv::Result<()> {
    let mut rng = RngState::new(2024);
    let mut state = CrpState::new();
    for person in 1..=10 {
        let seat = state.insert(person, &mut rng)?;
        let p = state.to_permutation()?;
        println!(
            "{person:>2} -> {seat:<12?} sigma = {p:<22} tables = {:?}",
            state.tables()
        );
    }
    let before = state.clone();
    state.insert(11, &mut rng)?;
    state.remove(11)?;
    assert_eq!(state, before);
    println!("seating 11 and removing it again leaves the permutation unchanged");
    Ok(())
}
