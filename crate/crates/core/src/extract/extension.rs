//! From `H ◁ G` with `G / H ≅ K`: an extractor for `H` acting on `G` by left
//! multiplication and a regular extractor for `K` give a regular extractor
//! for `G` with degree `d_H * d_K`.

use std::sync::Arc;

use num_bigint::BigUint;

use super::shelah::{shelah_plan, shelah_sequence};
use super::{
    check_shape, expect_length, BlockTable, Color, ColoringOracle, Context, Extractor, TowerPlan,
};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupHomomorphism};
use crate::magnitude::Magnitude;
use crate::words::{Symbol, SymbolMap, Word};

pub struct ExtensionCompose {
    inner: Arc<dyn Extractor>,
    outer: Arc<dyn Extractor>,
    /// `ι(h)` in `G`.
    iota: Vec<usize>,
    /// A preimage of every `κ`, and a second one for the consistency check.
    section: Vec<usize>,
    alternate: Vec<usize>,
    ctx: Context,
}

impl ExtensionCompose {
    /// `inner`: `H` acting on `G` by `h·g = ι(h) g`, relation its orbits.
    /// `outer`: regular for `K` with the total relation. `pi: G → K`.
    pub fn new(
        inner: Arc<dyn Extractor>,
        outer: Arc<dyn Extractor>,
        pi: &GroupHomomorphism,
        section: Vec<usize>,
    ) -> Result<Self> {
        let g: &Arc<FiniteGroup> = pi.src();
        let k = pi.dst();
        let ic = inner.context();
        let action = &ic.action;
        if action.set_size() != g.order() {
            return Err(Error::PreconditionViolated(
                "the inner extractor does not act on G".into(),
            ));
        }
        let iota: Vec<usize> = action
            .group()
            .elements()
            .map(|h| action.act(h, g.identity()))
            .collect();
        let left_mult = action
            .group()
            .elements()
            .all(|h| g.elements().all(|x| action.act(h, x) == g.mul(iota[h], x)));
        if !left_mult || ic.relation != action.orbits() {
            return Err(Error::PreconditionViolated(format!(
                "{} is not an extractor for left multiplication with the orbit relation",
                inner.name()
            )));
        }
        let oc = outer.context();
        if !oc.is_regular_total() || oc.group().table() != k.table() {
            return Err(Error::PreconditionViolated(format!(
                "{} is not a regular extractor for K",
                outer.name()
            )));
        }
        if !pi.is_surjective() {
            return Err(Error::NotAValidSection(
                "the projection is not surjective".into(),
            ));
        }
        let mut kernel = pi.kernel();
        kernel.sort_unstable();
        let mut image = iota.clone();
        image.sort_unstable();
        image.dedup();
        if kernel != image || image.len() != iota.len() {
            return Err(Error::NotAValidSection(
                "the kernel of the projection is not the image of H".into(),
            ));
        }
        if section.len() != k.order()
            || section
                .iter()
                .enumerate()
                .any(|(kappa, &s)| s >= g.order() || pi.apply(s) != kappa)
        {
            return Err(Error::NotAValidSection(
                "the section does not split the projection".into(),
            ));
        }
        let alternate = k
            .elements()
            .map(|kappa| g.elements().rev().find(|&x| pi.apply(x) == kappa).unwrap())
            .collect();
        let ctx = Context::regular(g.clone(), &ic.degree * &oc.degree);
        Ok(ExtensionCompose {
            inner,
            outer,
            iota,
            section,
            alternate,
            ctx,
        })
    }
}

impl Extractor for ExtensionCompose {
    fn context(&self) -> &Context {
        &self.ctx
    }

    fn name(&self) -> String {
        format!("extension({} by {})", self.inner.name(), self.outer.name())
    }

    fn plan_into(&self, r: &Magnitude, plan: &mut TowerPlan) -> Result<Magnitude> {
        let n = self.outer.plan_into(r, plan)?;
        let total = shelah_plan(self.inner.as_ref(), &n, r, plan)?;
        plan.record(
            &self.name(),
            "N",
            format!("N_shelah({}, {})", n.render(40), r.render(40)),
            &total,
        );
        Ok(total)
    }

    fn constant_plan(&self) -> Option<BigUint> {
        Some(self.outer.constant_plan()? * self.inner.constant_plan()?)
    }

    fn extract(&self, oracle: &Arc<ColoringOracle>) -> Result<Word> {
        let total = expect_length(self, oracle)?;
        let limits = *oracle.limits();
        let n = self
            .outer
            .plan(oracle.colors(), &limits)?
            .to_usize()
            .ok_or_else(|| Error::OverflowBudget("block count beyond usize".into()))?;
        let words = shelah_sequence(self.inner.as_ref(), n, oracle)?;
        let inner_action = self.inner.context().action.clone();
        let table = BlockTable::new(words, inner_action.clone(), limits.dense_symbols);

        // c_K(κ) = c(W_1(g_κ1) ⌢ … ⌢ W_n(g_κn)), checked against other preimages
        let parent = oracle.clone();
        let t = table.clone();
        let (section, alternate) = (self.section.clone(), self.alternate.clone());
        let check = self.iota.len() > 1;
        let derived = ColoringOracle::new(
            format!("quotient({})", oracle.label()),
            BigUint::from(n),
            self.outer.context().alphabet(),
            oracle.colors().clone(),
            limits,
            move |ks: &[u32]| -> Result<Color> {
                let c = parent.query(&t.concat(ks.iter().map(|&k| section[k as usize]))?)?;
                if check {
                    let d = parent.query(&t.concat(ks.iter().map(|&k| alternate[k as usize]))?)?;
                    if c != d {
                        return Err(Error::WellDefinednessViolation(format!(
                            "two preimages of {ks:?} get colors {c:?} and {d:?}"
                        )));
                    }
                }
                Ok(c)
            },
        );
        let outer = self.outer.extract(&derived)?;
        let symbols = outer.materialize(limits.dense_symbols)?;

        let g = self.ctx.group();
        let order = g.order();
        let mut parts = Vec::with_capacity(n);
        for (w, s) in table.words().iter().zip(symbols) {
            parts.push(match s {
                Symbol::Letter(kappa) => w
                    .substitute(self.section[kappa as usize], &inner_action)?
                    .into_word(),
                Symbol::Var(kappa) => {
                    let gk = self.section[kappa as usize];
                    let vars = self
                        .iota
                        .iter()
                        .map(|&i| Symbol::Var(g.mul(i, gk) as u32))
                        .collect();
                    w.relabel(SymbolMap::new(order, None, vars, order, order)?)?
                }
            });
        }
        let out = Word::concat(&parts)?;
        check_shape(&out, &self.ctx, total, &self.name())?;
        Ok(out)
    }
}
