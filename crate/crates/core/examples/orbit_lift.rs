//! Lifting the C_2 extractor to C_2 acting on four points with two orbits.

use std::sync::Arc;

use uhjp::extract::{cyclic_extractor, orbit_lift, run_extractor, ColoringSpec};
use uhjp::group::GroupAction;
use uhjp::words::render_symbols;
use uhjp::{Limits, Magnitude};

fn main() -> uhjp::Result<()> {
    let limits = Limits::default();
    let c2 = cyclic_extractor(2)?;
    let g = c2.context().group().clone();
    let action = Arc::new(GroupAction::new(
        g,
        4,
        vec![vec![0, 1, 2, 3], vec![1, 0, 3, 2]],
    )?);
    let ext = orbit_lift(c2, action)?;
    println!(
        "{}: degree {}, classes {:?}",
        ext.name(),
        ext.context().degree,
        ext.context().relation.classes()
    );
    for r in [1, 2] {
        println!(
            "  r = {r}: N = {}",
            ext.plan(&Magnitude::from(r), &limits)?.render(100)
        );
    }
    let n = ext
        .plan(&Magnitude::one(), &limits)?
        .to_usize()
        .expect("small plan");
    let oracle = ColoringSpec::Constant { color: 0 }.build(n, 4, 1, 0, limits)?;
    let res = run_extractor(ext.as_ref(), &oracle)?;
    println!(
        "  one color: {}",
        render_symbols(&res.witness.materialize(100)?)
    );
    Ok(())
}
