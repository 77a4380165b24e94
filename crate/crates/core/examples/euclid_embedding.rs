//! Symmetry groups, the dilation identity, and an isometric embedding of a
//! segment into a scaled power with a monochromatic orbit.

use uhjp::euclid::{cor17_embed, cor17_setup, dilation_check, symmetry_group, PointSet};
use uhjp::extract::ColoringSpec;
use uhjp::words::{Symbol, Word};
use uhjp::Limits;

fn main() -> uhjp::Result<()> {
    let limits = Limits::default();
    let triangle = PointSet::from_json(&serde_json::json!({
        "dim": 3, "points": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    }))?;
    let sym = symmetry_group(&triangle)?;
    println!(
        "triangle: {} isometries, transitive {}",
        sym.group.order(),
        sym.is_transitive()
    );
    let rotations = cor17_setup(triangle.clone(), Some(&[0, 3, 4]), None)?;
    let w = Word::from_symbols(
        3,
        3,
        vec![
            Symbol::Var(0),
            Symbol::Letter(2),
            Symbol::Var(1),
            Symbol::Var(2),
        ],
    )?;
    let rep = dilation_check(&w, &triangle, &rotations.action)?;
    println!(
        "  dilation by degree {}: holds {}, residual {}",
        rep.degree, rep.holds, rep.max_residual
    );
    println!(
        "  rotations: d = {}, lambda = {}, N(2) = {}",
        rotations.hj_degree,
        rotations.lambda_expression(),
        rotations.plan(2, &limits)?.0.render(60)
    );

    let segment = PointSet::from_integers(1, &[vec![0], vec![1]])?;
    let setup = cor17_setup(segment, None, None)?;
    let oracle = ColoringSpec::Random { seed: Some(11) }.build(3, 2, 2, 0, limits)?;
    let e = cor17_embed(&setup, &oracle)?;
    println!(
        "segment: lambda = {}, images {:?}, isometric {}, monochromatic {}",
        e.lambda, e.images, e.isometric, e.monochromatic
    );
    Ok(())
}
