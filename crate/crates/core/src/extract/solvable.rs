//! Regular extractors for solvable groups along a subnormal cyclic series.

use std::sync::Arc;

use super::{
    cyclic_extractor, orbit_lift, ExtensionCompose, Extractor, TowerPlan, TrivialExtractor,
};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupAction, GroupHomomorphism, SubnormalCyclicSeries};
use crate::limits::Limits;
use crate::magnitude::Magnitude;

/// Climbs `{e} = G_0 ◁ … ◁ G_n = G`: each step lifts the previous extractor
/// to `G_(i-1)` acting on `G_i` and composes it with the cyclic extractor for
/// `G_i / G_(i-1)`. The degree is the HJ-degree of the series.
pub fn solvable_extractor(
    g: &Arc<FiniteGroup>,
    series: &SubnormalCyclicSeries,
) -> Result<Arc<dyn Extractor>> {
    let n = series.subgroups.len() - 1;
    let mut prev: Arc<dyn Extractor> = Arc::new(TrivialExtractor::for_trivial_group());
    let mut prev_group = prev.context().group().clone();
    for i in 1..=n {
        let (lo, hi) = (&series.subgroups[i - 1], &series.subgroups[i]);
        let gi = if i == n { g.clone() } else { g.subgroup(hi)?.0 };
        let pos = |x: usize| {
            hi.binary_search(&x)
                .map_err(|_| Error::Internal(format!("{x} not in {hi:?}")))
        };
        let iota: Vec<usize> = lo.iter().map(|&x| pos(x)).collect::<Result<_>>()?;
        let table: Vec<Vec<usize>> = iota
            .iter()
            .map(|&h| gi.elements().map(|x| gi.mul(h, x)).collect())
            .collect();
        let action = Arc::new(GroupAction::new(prev_group.clone(), gi.order(), table)?);
        let lifted = orbit_lift(prev, action)?;

        let p = series.factor_orders[i - 1];
        let f = pos(series.factor_generators[i - 1])?;
        let k = Arc::new(FiniteGroup::cyclic(p)?);
        let mut in_lo = vec![false; gi.order()];
        for &h in &iota {
            in_lo[h] = true;
        }
        // π(g) = j for g ∈ f^j ι(G_(i-1))
        let mut pi = vec![usize::MAX; gi.order()];
        for j in 0..p {
            let fj = gi.pow(f, j);
            for &h in &iota {
                pi[gi.mul(fj, h)] = j;
            }
        }
        if pi.contains(&usize::MAX) {
            return Err(Error::Internal(
                "factor generator does not cover the quotient".into(),
            ));
        }
        let section: Vec<usize> = (0..p)
            .map(|j| pi.iter().position(|&x| x == j).unwrap())
            .collect();
        let proj = GroupHomomorphism::new(gi.clone(), k, pi)?;
        prev = Arc::new(ExtensionCompose::new(
            lifted,
            cyclic_extractor(p)?,
            &proj,
            section,
        )?);
        prev_group = gi;
    }
    Ok(prev)
}

/// The solvable extractor lifted to an action, relation its orbits.
pub fn action_extractor(
    action: Arc<GroupAction>,
    series: &SubnormalCyclicSeries,
) -> Result<Arc<dyn Extractor>> {
    let base = solvable_extractor(action.group(), series)?;
    orbit_lift(base, action)
}

/// `N` for `r` colors together with the full recursion trace.
pub fn plan_length(
    ext: &dyn Extractor,
    r: &Magnitude,
    limits: &Limits,
) -> Result<(Magnitude, TowerPlan)> {
    let mut plan = TowerPlan::new(*limits);
    let n = ext.plan_into(r, &mut plan)?;
    Ok((n, plan))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extract::{run_extractor, ColoringSpec};
    use crate::group::subnormal_cyclic_series;
    use crate::words::Symbol;
    use num_bigint::BigUint;

    fn build(g: FiniteGroup) -> Arc<dyn Extractor> {
        let g = Arc::new(g);
        let s = subnormal_cyclic_series(&g).unwrap();
        solvable_extractor(&g, &s).unwrap()
    }

    #[test]
    fn degrees_follow_the_series() {
        assert_eq!(
            build(FiniteGroup::cyclic(2).unwrap()).context().degree,
            BigUint::from(2u32)
        );
        assert_eq!(
            build(FiniteGroup::symmetric(3).unwrap()).context().degree,
            BigUint::from(162u32)
        );
        assert_eq!(
            build(FiniteGroup::trivial()).context().degree,
            BigUint::from(1u32)
        );
    }

    #[test]
    fn c2_pipeline_runs() {
        let ext = build(FiniteGroup::cyclic(2).unwrap());
        let l = Limits::default();
        assert_eq!(
            ext.plan(&Magnitude::from(2), &l).unwrap(),
            Magnitude::from(3)
        );
        let oracle = ColoringSpec::Coordinate { index: 1 }
            .build(3, 2, 2, 0, l)
            .unwrap();
        let res = run_extractor(ext.as_ref(), &oracle).unwrap();
        assert_eq!(
            res.witness.materialize(3).unwrap(),
            vec![Symbol::Letter(0), Symbol::Var(0), Symbol::Var(1)]
        );
        for seed in 0..10 {
            let n = ext
                .plan(&Magnitude::from(3), &l)
                .unwrap()
                .to_usize()
                .unwrap();
            let oracle = ColoringSpec::Random { seed: Some(seed) }
                .build(n, 2, 3, 0, l)
                .unwrap();
            assert!(
                run_extractor(ext.as_ref(), &oracle)
                    .unwrap()
                    .certificate
                    .complete
            );
        }
    }

    #[test]
    fn one_color_short_circuits() {
        let ext = build(FiniteGroup::symmetric(3).unwrap());
        let l = Limits::default();
        let n = ext.plan(&Magnitude::one(), &l).unwrap();
        assert_eq!(n, Magnitude::from(162));
        let oracle = ColoringSpec::Constant { color: 0 }
            .build(162, 6, 1, 0, l)
            .unwrap();
        let res = run_extractor(ext.as_ref(), &oracle).unwrap();
        assert_eq!(res.witness.analyze().degree, BigUint::from(162u32));
    }

    #[test]
    fn traced_plans() {
        let ext = build(FiniteGroup::symmetric(3).unwrap());
        let (n, plan) = plan_length(ext.as_ref(), &Magnitude::from(2), &Limits::default()).unwrap();
        assert!(!n.is_exact());
        assert!(!plan.stages.is_empty());
        assert!(plan.exceeds_dense_budget());
    }
}
