//! From a regular extractor for `H` to an extractor for any action of `H`
//! whose relation is the orbit partition, one orbit at a time.

use std::sync::Arc;

use num_bigint::BigUint;

use super::shelah::{shelah_plan, shelah_sequence};
use super::{
    check_shape, expect_length, BlockTable, ColoringOracle, Context, Extractor, TowerPlan,
};
use crate::error::{Error, Result};
use crate::group::{EquivalenceRelation, GroupAction};
use crate::magnitude::Magnitude;
use crate::words::{Symbol, SymbolMap, Word};

/// Smallest point of every orbit, increasing.
pub fn orbit_representatives(action: &GroupAction) -> Vec<usize> {
    action.orbits().classes().iter().map(|c| c[0]).collect()
}

/// One orbit `Hy` as a single class, everything else a singleton.
pub struct SingleOrbit {
    y: usize,
    inner: Arc<dyn Extractor>,
    ctx: Context,
}

impl SingleOrbit {
    /// `inner` must be regular with the total relation for `action.group()`.
    pub fn new(inner: Arc<dyn Extractor>, action: Arc<GroupAction>, y: usize) -> Result<Self> {
        let ic = inner.context();
        if !ic.is_regular_total() || ic.group().table() != action.group().table() {
            return Err(Error::PreconditionViolated(format!(
                "{} is not a regular extractor for the acting group",
                inner.name()
            )));
        }
        if y >= action.set_size() {
            return Err(Error::IndexOutOfRange(format!("point {y}")));
        }
        let orbit: Vec<usize> = {
            let mut o: Vec<usize> = action
                .group()
                .elements()
                .map(|h| action.act(h, y))
                .collect();
            o.sort_unstable();
            o.dedup();
            o
        };
        let relation = EquivalenceRelation::from_classes(action.set_size(), &[orbit])?;
        let degree = inner.context().degree.clone();
        Ok(SingleOrbit {
            y,
            inner,
            ctx: Context::new(action, relation, degree)?,
        })
    }
}

impl Extractor for SingleOrbit {
    fn context(&self) -> &Context {
        &self.ctx
    }

    fn name(&self) -> String {
        format!("orbit({}; {})", self.y, self.inner.name())
    }

    fn plan_into(&self, r: &Magnitude, plan: &mut TowerPlan) -> Result<Magnitude> {
        self.inner.plan_into(r, plan)
    }

    fn constant_plan(&self) -> Option<BigUint> {
        self.inner.constant_plan()
    }

    fn extract(&self, oracle: &Arc<ColoringOracle>) -> Result<Word> {
        let n = expect_length(self, oracle)?;
        let action = self.ctx.action.clone();
        let (y, order) = (self.y, action.group().order());
        let image: Vec<u32> = action
            .group()
            .elements()
            .map(|h| action.act(h, y) as u32)
            .collect();
        let parent = oracle.clone();
        let lookup = image.clone();
        // c_H(h) = c(h y)
        let derived = ColoringOracle::new(
            format!("orbit-{y}({})", oracle.label()),
            oracle.length().clone(),
            order,
            oracle.colors().clone(),
            *oracle.limits(),
            move |hs: &[u32]| {
                let xs: Vec<u32> = hs.iter().map(|&h| lookup[h as usize]).collect();
                parent.query(&xs)
            },
        );
        let w = self.inner.extract(&derived)?;
        let vars = (0..order as u32).map(Symbol::Var).collect();
        let out = w.relabel(SymbolMap::new(
            order,
            Some(image),
            vars,
            action.set_size(),
            order,
        )?)?;
        check_shape(&out, &self.ctx, n, &self.name())?;
        Ok(out)
    }
}

/// Adds one more orbit class to `prev`, degree times `d`.
pub struct OrbitStep {
    prev: Arc<dyn Extractor>,
    single: SingleOrbit,
    ctx: Context,
}

impl OrbitStep {
    pub fn new(prev: Arc<dyn Extractor>, single: SingleOrbit) -> Result<Self> {
        let (pc, sc) = (prev.context(), single.context());
        if pc.action.table() != sc.action.table() || pc.alphabet() != sc.alphabet() {
            return Err(Error::PreconditionViolated(
                "orbit steps need the same action".into(),
            ));
        }
        let y = single.y;
        let orbit = sc
            .relation
            .classes()
            .into_iter()
            .find(|c| c.contains(&y))
            .unwrap_or_default();
        if orbit.iter().any(|&x| {
            pc.relation
                .classes()
                .iter()
                .any(|c| c.len() > 1 && c.contains(&x))
        }) {
            return Err(Error::PreconditionViolated(format!(
                "the orbit of {y} is already covered"
            )));
        }
        let mut classes: Vec<Vec<usize>> = pc
            .relation
            .classes()
            .into_iter()
            .filter(|c| c.len() > 1)
            .collect();
        classes.push(orbit);
        let relation = EquivalenceRelation::from_classes(pc.alphabet(), &classes)?;
        let degree = &pc.degree * &sc.degree;
        let ctx = Context::new(pc.action.clone(), relation, degree)?;
        Ok(OrbitStep { prev, single, ctx })
    }
}

impl Extractor for OrbitStep {
    fn context(&self) -> &Context {
        &self.ctx
    }

    fn name(&self) -> String {
        format!("orbit-step({}; {})", self.single.y, self.prev.name())
    }

    fn plan_into(&self, r: &Magnitude, plan: &mut TowerPlan) -> Result<Magnitude> {
        let n = self.prev.plan_into(r, plan)?;
        let total = shelah_plan(&self.single, &n, r, plan)?;
        plan.record(
            &self.name(),
            "N",
            format!("N_shelah({}, {})", n.render(40), r.render(40)),
            &total,
        );
        Ok(total)
    }

    fn constant_plan(&self) -> Option<BigUint> {
        Some(self.prev.constant_plan()? * self.single.constant_plan()?)
    }

    fn extract(&self, oracle: &Arc<ColoringOracle>) -> Result<Word> {
        let total = expect_length(self, oracle)?;
        let limits = *oracle.limits();
        let n = self
            .prev
            .plan(oracle.colors(), &limits)?
            .to_usize()
            .ok_or_else(|| Error::OverflowBudget("block count beyond usize".into()))?;
        let words = shelah_sequence(&self.single, n, oracle)?;
        let action = self.ctx.action.clone();
        let table = BlockTable::new(words, action.clone(), limits.dense_symbols);

        // c'(x) = c(W_1(x_1) ⌢ … ⌢ W_n(x_n))
        let parent = oracle.clone();
        let t = table.clone();
        let derived = ColoringOracle::new(
            format!("blocks({})", oracle.label()),
            BigUint::from(n),
            action.set_size(),
            oracle.colors().clone(),
            limits,
            move |xs: &[u32]| parent.query(&t.concat(xs.iter().map(|&x| x as usize))?),
        );
        let outer = self.prev.extract(&derived)?;
        let symbols = outer.materialize(limits.dense_symbols)?;
        let group = action.group();
        let mut parts = Vec::with_capacity(n);
        for (w, s) in table.words().iter().zip(symbols) {
            parts.push(match s {
                Symbol::Letter(x) => w.substitute(x as usize, &action)?.into_word(),
                Symbol::Var(h) => w.shift(h as usize, group)?,
            });
        }
        let out = Word::concat(&parts)?;
        check_shape(&out, &self.ctx, total, &self.name())?;
        Ok(out)
    }
}

/// Chains one orbit after another; the result has the orbit partition as
/// its relation and degree `d^(number of orbits)`.
pub fn orbit_lift(
    inner: Arc<dyn Extractor>,
    action: Arc<GroupAction>,
) -> Result<Arc<dyn Extractor>> {
    let reps = orbit_representatives(&action);
    let mut out: Arc<dyn Extractor> =
        Arc::new(SingleOrbit::new(inner.clone(), action.clone(), reps[0])?);
    for &y in &reps[1..] {
        out = Arc::new(OrbitStep::new(
            out,
            SingleOrbit::new(inner.clone(), action.clone(), y)?,
        )?);
    }
    Ok(out)
}
