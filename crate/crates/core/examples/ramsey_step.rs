//! The Ramsey step on 2-subsets of a 5-set, for a seeded random coloring.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use uhjp::extract::{ends_agree, ramsey_step, t_function};
use uhjp::{Limits, Magnitude};

fn main() -> uhjp::Result<()> {
    let limits = Limits::default();
    let n = t_function(3, 2, &limits)?;
    println!("T(3, 2) = {n}");
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let colors: Vec<Vec<bool>> = (0..5)
        .map(|_| (0..5).map(|_| rng.gen()).collect())
        .collect();
    let color = |b: &[usize]| colors[b[0]][b[1]];
    let p = ramsey_step(5, 3, &Magnitude::from(2), &limits, |b| Ok(color(b)))?;
    println!(
        "P = {p:?}, c(P minus min) = {}, c(P minus max) = {}",
        color(&p[1..]),
        color(&p[..2])
    );
    assert!(ends_agree(&p, color));
    Ok(())
}
