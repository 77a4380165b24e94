//! HJ-degrees of every subnormal cyclic series of a few small groups.

use uhjp::group::FiniteGroup;
use uhjp::hjdegree::{all_hj_degrees, hj_degree_of_orders};
use uhjp::Limits;

fn main() -> uhjp::Result<()> {
    for (name, g) in [
        ("S_3", FiniteGroup::symmetric(3)?),
        ("C_6", FiniteGroup::cyclic(6)?),
        ("D_4", FiniteGroup::dihedral(4)?),
    ] {
        println!("{name} (order {})", g.order());
        for (series, d) in all_hj_degrees(&g, 100)? {
            println!("  factors {:?}: d = {}", series.factor_orders, d.value);
        }
    }
    let s4 = hj_degree_of_orders(&[2, 2, 3, 2], &Limits::default())?;
    println!("S_4 along 1 < V_4' < V_4 < A_4 < S_4: {}", s4.value);
    Ok(())
}
