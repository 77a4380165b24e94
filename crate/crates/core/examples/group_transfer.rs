//! Extractors for a subgroup and a quotient read off an extractor for the
//! whole group.

use std::sync::Arc;

use uhjp::extract::{
    group_transfer, run_extractor, ColoringSpec, Context, Extractor, TransferMode,
};
use uhjp::group::FiniteGroup;
use uhjp::oracle::WordSearchExtractor;
use uhjp::words::render_symbols;
use uhjp::Limits;

fn main() -> uhjp::Result<()> {
    let limits = Limits::default();
    let c4 = Arc::new(FiniteGroup::cyclic(4)?);
    let whole: Arc<dyn Extractor> =
        Arc::new(WordSearchExtractor::new(Context::regular(c4, 4u32), 6)?);
    for (mode, h) in [
        (TransferMode::Quotient, vec![0, 2]),
        (TransferMode::Subgroup, vec![0, 2]),
    ] {
        let ext = group_transfer(whole.clone(), &h, mode)?;
        let oracle = ColoringSpec::Histogram { modulus: 2 }.build(6, 2, 2, 0, limits)?;
        let res = run_extractor(&ext, &oracle)?;
        println!(
            "{}: {}",
            ext.name(),
            render_symbols(&res.witness.materialize(10)?)
        );
    }
    Ok(())
}
