//! Variable words over S_3 acting on {1, 2, 3}: substitution and shifts.

use num_bigint::BigUint;
use uhjp::group::GroupAction;
use uhjp::words::{render_symbols, Symbol, Word};

fn main() -> uhjp::Result<()> {
    let action = GroupAction::symmetric_natural(3)?;
    let g = action.group().clone();
    // v_e 1 2 v_(1 2 3)^2 v_(1 2 3), points 0-based
    let w = Word::from_symbols(
        3,
        6,
        vec![
            Symbol::Var(0),
            Symbol::Letter(0),
            Symbol::Letter(1),
            Symbol::Var(4),
            Symbol::Var(3),
        ],
    )?;
    println!("W = {}", render_symbols(&w.materialize(100)?));
    for x in 0..3 {
        let letters: Vec<u32> = w
            .substitute(x, &action)?
            .letters(100)?
            .iter()
            .map(|a| a + 1)
            .collect();
        println!("W({}) = {letters:?}", x + 1);
    }
    let tau = 3;
    let shifted = w.shift(tau, &g)?;
    println!("W^tau = {}", render_symbols(&shifted.materialize(100)?));

    let huge = w.repeat(BigUint::from(10u32).pow(40));
    let a = huge.analyze();
    println!(
        "W repeated 10^40 times: length {}, degree {}, tree nodes {}",
        huge.len(),
        a.degree,
        huge.tree_size()
    );
    Ok(())
}
