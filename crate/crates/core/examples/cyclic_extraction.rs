//! Extraction for C_2 and the base step for C_3, with certificates.

use uhjp::extract::{cyclic_extractor, run_extractor, ColoringSpec, KrizBase};
use uhjp::words::render_symbols;
use uhjp::{Limits, Magnitude};

fn main() -> uhjp::Result<()> {
    let limits = Limits::default();
    let c2 = cyclic_extractor(2)?;
    let oracle = ColoringSpec::Coordinate { index: 1 }.build(3, 2, 2, 0, limits)?;
    let res = run_extractor(c2.as_ref(), &oracle)?;
    println!(
        "C_2, first-coordinate coloring: {}",
        render_symbols(&res.witness.materialize(10)?)
    );

    let base = KrizBase::new(3)?;
    for seed in 0..3 {
        let oracle = ColoringSpec::Random { seed: Some(seed) }.build(5, 3, 2, 0, limits)?;
        let res = run_extractor(&base, &oracle)?;
        let class = &res.certificate.classes[0];
        println!(
            "C_3 base, seed {seed}: {} with {:?} colored {:?}",
            render_symbols(&res.witness.materialize(10)?),
            class.members,
            class.color
        );
    }

    let c3 = cyclic_extractor(3)?;
    let n = c3.plan(&Magnitude::from(2), &limits)?;
    println!("full C_3 at r = 2 needs N = {}", n.render(120));
    Ok(())
}
