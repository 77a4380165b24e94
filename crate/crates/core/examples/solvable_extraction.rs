//! The full pipeline along a subnormal series: C_2 end to end, S_3 at one
//! color, and the S_3 plan at two colors.

use std::sync::Arc;

use uhjp::extract::{run_extractor, solvable_extractor, ColoringSpec};
use uhjp::group::{subnormal_cyclic_series, FiniteGroup};
use uhjp::words::render_symbols;
use uhjp::{Limits, Magnitude};

fn main() -> uhjp::Result<()> {
    let limits = Limits::default();
    let c2 = Arc::new(FiniteGroup::cyclic(2)?);
    let ext = solvable_extractor(&c2, &subnormal_cyclic_series(&c2)?)?;
    let n = ext
        .plan(&Magnitude::from(3), &limits)?
        .to_usize()
        .expect("small plan");
    for seed in 0..4 {
        let oracle = ColoringSpec::Random { seed: Some(seed) }.build(n, 2, 3, 0, limits)?;
        let res = run_extractor(ext.as_ref(), &oracle)?;
        println!(
            "C_2, 3 colors, seed {seed}: {} ({} queries)",
            render_symbols(&res.witness.materialize(10)?),
            res.query_count
        );
    }

    let s3 = Arc::new(FiniteGroup::symmetric(3)?);
    let ext = solvable_extractor(&s3, &subnormal_cyclic_series(&s3)?)?;
    println!("S_3 extractor: degree {}", ext.context().degree);
    let oracle = ColoringSpec::Constant { color: 0 }.build(162, 6, 1, 0, limits)?;
    let res = run_extractor(ext.as_ref(), &oracle)?;
    let a = res.witness.analyze();
    println!(
        "S_3, one color: length {}, degree {}, uniform {}",
        res.witness.len(),
        a.degree,
        a.uniform
    );
    println!(
        "S_3, two colors: N = {}",
        ext.plan(&Magnitude::from(2), &limits)?.render(100)
    );
    Ok(())
}
