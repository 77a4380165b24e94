//! Regular extractors for a subgroup or a quotient, read off a regular
//! extractor for the whole group through a retraction `φ`.

use std::sync::Arc;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::{check_shape, expect_length, ColoringOracle, Context, Extractor, TowerPlan};
use crate::error::{Error, Result};
use crate::group::{quotient, transversal_section, FiniteGroup};
use crate::magnitude::Magnitude;
use crate::words::{Symbol, SymbolMap, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TransferMode {
    /// `H ≤ G`, `φ(t h) = h` for the left transversal.
    Subgroup,
    /// `H ◁ G`, `φ` the projection onto `G / H`.
    Quotient,
}

pub struct GroupTransfer {
    inner: Arc<dyn Extractor>,
    mode: TransferMode,
    /// `φ(g)` as an index into the target group.
    phi: Vec<u32>,
    ctx: Context,
}

impl Extractor for GroupTransfer {
    fn context(&self) -> &Context {
        &self.ctx
    }

    fn name(&self) -> String {
        let mode = match self.mode {
            TransferMode::Subgroup => "subgroup",
            TransferMode::Quotient => "quotient",
        };
        format!("{mode}-transfer({})", self.inner.name())
    }

    fn plan_into(&self, r: &Magnitude, plan: &mut TowerPlan) -> Result<Magnitude> {
        self.inner.plan_into(r, plan)
    }

    fn constant_plan(&self) -> Option<BigUint> {
        self.inner.constant_plan()
    }

    fn extract(&self, oracle: &Arc<ColoringOracle>) -> Result<Word> {
        let n = expect_length(self, oracle)?;
        let parent = oracle.clone();
        let phi = self.phi.clone();
        let big = self.inner.context().alphabet();
        // c~(g) = c(φ(g))
        let derived = ColoringOracle::new(
            format!("lift({})", oracle.label()),
            oracle.length().clone(),
            big,
            oracle.colors().clone(),
            *oracle.limits(),
            move |gs: &[u32]| {
                parent.query(&gs.iter().map(|&g| phi[g as usize]).collect::<Vec<_>>())
            },
        );
        let w = self.inner.extract(&derived)?;
        let small = self.ctx.alphabet();
        let vars = self.phi.iter().map(|&h| Symbol::Var(h)).collect();
        let out = w.relabel(SymbolMap::new(
            big,
            Some(self.phi.clone()),
            vars,
            small,
            small,
        )?)?;
        check_shape(&out, &self.ctx, n, &self.name())?;
        Ok(out)
    }
}

/// `inner` must be regular with the total relation for its group `G`;
/// `h` is a subgroup of `G`, normal in quotient mode.
pub fn group_transfer(
    inner: Arc<dyn Extractor>,
    h: &[usize],
    mode: TransferMode,
) -> Result<GroupTransfer> {
    let ic = inner.context();
    if !ic.is_regular_total() {
        return Err(Error::PreconditionViolated(format!(
            "{} is not a regular extractor",
            inner.name()
        )));
    }
    let g = ic.group().clone();
    let (target, phi): (Arc<FiniteGroup>, Vec<u32>) = match mode {
        TransferMode::Subgroup => {
            let t = transversal_section(&g, h)?;
            let (sub, _) = g.subgroup(h)?;
            (sub, t.section.iter().map(|&i| i as u32).collect())
        }
        TransferMode::Quotient => {
            let (q, proj) = quotient(&g, h)?;
            (q, proj.map().iter().map(|&i| i as u32).collect())
        }
    };
    let order = target.order() as u64;
    if &ic.degree % order != BigUint::from(0u32) {
        return Err(Error::InvalidDegree(format!(
            "degree {} is not a multiple of {order}",
            ic.degree
        )));
    }
    let ctx = Context::regular(target, ic.degree.clone());
    Ok(GroupTransfer {
        inner,
        mode,
        phi,
        ctx,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extract::{run_extractor, ColoringSpec, FixedWordExtractor};
    use crate::limits::Limits;

    #[test]
    fn subgroup_of_s3_keeps_the_degree() {
        let s3 = Arc::new(FiniteGroup::symmetric(3).unwrap());
        let stub = Arc::new(FixedWordExtractor::balanced(Context::regular(s3, 162u32)).unwrap());
        let ext = group_transfer(stub, &[0, 3, 4], TransferMode::Subgroup).unwrap();
        assert_eq!(ext.context().group().order(), 3);
        let l = Limits::default();
        let oracle = ColoringSpec::Histogram { modulus: 2 }
            .build(162, 3, 2, 0, l)
            .unwrap();
        let res = run_extractor(&ext, &oracle).unwrap();
        let a = res.witness.analyze();
        assert_eq!(a.degree, BigUint::from(162u32));
        assert!(a.per_variable.values().all(|c| c == &BigUint::from(54u32)));
    }

    #[test]
    fn quotient_needs_a_normal_subgroup() {
        let s3 = Arc::new(FiniteGroup::symmetric(3).unwrap());
        let stub = Arc::new(FixedWordExtractor::balanced(Context::regular(s3, 6u32)).unwrap());
        assert!(group_transfer(stub.clone(), &[0, 2], TransferMode::Quotient).is_err());
        let ext = group_transfer(stub, &[0, 3, 4], TransferMode::Quotient).unwrap();
        assert_eq!(ext.context().group().order(), 2);
    }
}
