//! Tower values and length plans, exact while small and symbolic beyond.

use std::sync::Arc;

use uhjp::extract::{plan_length, solvable_extractor, t_magnitude};
use uhjp::group::{subnormal_cyclic_series, FiniteGroup};
use uhjp::{Limits, Magnitude};

fn main() -> uhjp::Result<()> {
    let limits = Limits::default();
    for n in 1..=6 {
        println!(
            "T({n}, 2) = {}",
            t_magnitude(n, &Magnitude::from(2), &limits)?.render(60)
        );
    }
    let c3 = Arc::new(FiniteGroup::cyclic(3)?);
    let ext = solvable_extractor(&c3, &subnormal_cyclic_series(&c3)?)?;
    let (n, plan) = plan_length(ext.as_ref(), &Magnitude::from(2), &limits)?;
    println!(
        "C_3 at two colors: {} stages, dense budget exceeded: {}",
        plan.stages.len(),
        plan.exceeds_dense_budget()
    );
    for s in plan.stages.iter().take(3) {
        println!(
            "  {} {} = {} -> {}",
            s.stage,
            s.quantity,
            s.expression,
            s.value.render(60)
        );
    }
    println!("  N = {}", n.render(80));
    Ok(())
}
