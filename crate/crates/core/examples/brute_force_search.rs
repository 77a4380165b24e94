//! Exhaustive searches: the smallest N for C_2 with degree 2, and a budget
//! stop for C_3.

use std::sync::Arc;

use uhjp::group::{EquivalenceRelation, FiniteGroup, GroupAction};
use uhjp::oracle::{minimal_n_search, uhjp_check, uniform_word_count};
use uhjp::Limits;

fn main() -> uhjp::Result<()> {
    let limits = Limits::default();
    let c2 = GroupAction::regular(Arc::new(FiniteGroup::cyclic(2)?));
    let total = EquivalenceRelation::total(2);
    for n in 2..=3 {
        let rep = uhjp_check(&c2, &total, 2, 2, n, 1 << 20, &limits)?;
        println!(
            "C_2, N = {n}: {:?} after {} colorings, {} candidate words, counterexample {:?}",
            rep.verdict, rep.colorings_checked, rep.candidates, rep.counterexample
        );
    }
    let min = minimal_n_search(&c2, &total, 2, 2, 4, 1 << 20, &limits)?;
    println!("minimal N = {:?}", min.minimal_n);

    let c3 = GroupAction::regular(Arc::new(FiniteGroup::cyclic(3)?));
    let rep = minimal_n_search(&c3, &EquivalenceRelation::total(3), 3, 2, 3, 10, &limits)?;
    println!(
        "C_3, degree 3, budget 10: {:?}, largest decided N = {:?}",
        rep.verdict, rep.largest_decided
    );
    println!(
        "uniform words for C_3, d = 9, N = 12: {}",
        uniform_word_count(3, 3, 9, 12)?
    );
    Ok(())
}
