//! Extractors for cyclic groups.
//!
//! `C_p = {τ^0, …, τ^(p-1)}` with element `i` standing for `τ^i`. The base
//! extractor makes `{W(e), W(τ)}` monochromatic with degree `p`; each step
//! adds the next power of `τ` and multiplies the degree by `p`, so after
//! `p - 1` stages the whole group is monochromatic with degree `p^(p-1)`.

use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::One;

use super::ramsey::ramsey_step;
use super::shelah::{shelah_plan, shelah_sequence};
use super::tower::t_magnitude;
use super::{
    check_shape, expect_length, spot_check_shift, BlockTable, Color, ColoringOracle, Context,
    Extractor, TowerPlan,
};
use crate::error::{Error, Result};
use crate::group::{EquivalenceRelation, FiniteGroup, GroupAction};
use crate::magnitude::Magnitude;
use crate::words::{Symbol, Word};

/// `E_k` on `C_p`: `{τ^0, …, τ^k}` is one class, every other point alone.
pub fn cyclic_prefix_relation(p: usize, k: usize) -> Result<EquivalenceRelation> {
    EquivalenceRelation::from_classes(p, &[(0..=k.min(p - 1)).collect()])
}

/// The single word `(v_e)` for a trivial group acting on any set. Every
/// class of the orbit relation is a singleton, so any coloring works.
pub struct TrivialExtractor {
    ctx: Context,
}

impl TrivialExtractor {
    pub fn new(action: Arc<GroupAction>) -> Result<Self> {
        if action.group().order() != 1 {
            return Err(Error::InvalidInput(
                "the trivial extractor needs the trivial group".into(),
            ));
        }
        let relation = action.orbits();
        Ok(TrivialExtractor {
            ctx: Context::new(action, relation, 1u32)?,
        })
    }

    pub fn for_trivial_group() -> Self {
        Self::new(Arc::new(GroupAction::regular(Arc::new(
            FiniteGroup::trivial(),
        ))))
        .expect("trivial group")
    }
}

impl Extractor for TrivialExtractor {
    fn context(&self) -> &Context {
        &self.ctx
    }

    fn name(&self) -> String {
        "trivial".into()
    }

    fn plan_into(&self, _r: &Magnitude, _plan: &mut TowerPlan) -> Result<Magnitude> {
        Ok(Magnitude::one())
    }

    fn constant_plan(&self) -> Option<BigUint> {
        Some(BigUint::one())
    }

    fn extract(&self, oracle: &Arc<ColoringOracle>) -> Result<Word> {
        expect_length(self, oracle)?;
        Word::from_symbols(self.ctx.alphabet(), 1, vec![Symbol::Var(0)])
    }
}

/// `{W(e), W(τ)}` monochromatic, degree `p`, length `T(p, r)`.
pub struct KrizBase {
    p: usize,
    ctx: Context,
}

impl KrizBase {
    pub fn new(p: usize) -> Result<Self> {
        if p < 2 {
            return Err(Error::InvalidInput("the base step needs p >= 2".into()));
        }
        let g = Arc::new(FiniteGroup::cyclic(p)?);
        let action = Arc::new(GroupAction::regular(g));
        Ok(KrizBase {
            p,
            ctx: Context::new(action, cyclic_prefix_relation(p, 1)?, p as u64)?,
        })
    }
}

impl Extractor for KrizBase {
    fn context(&self) -> &Context {
        &self.ctx
    }

    fn name(&self) -> String {
        format!("kriz-base(p={})", self.p)
    }

    fn plan_into(&self, r: &Magnitude, plan: &mut TowerPlan) -> Result<Magnitude> {
        let n = t_magnitude(self.p as u64, r, &plan.limits)?;
        plan.record(
            &self.name(),
            "N",
            format!("T({}, {})", self.p, r.render(60)),
            &n,
        );
        Ok(n)
    }

    fn extract(&self, oracle: &Arc<ColoringOracle>) -> Result<Word> {
        let n = expect_length(self, oracle)?;
        let p = self.p;
        // τ^B: τ^q at the q-th element of B, e elsewhere
        let mut buf = vec![0u32; n];
        let tilde = |b: &[usize]| -> Result<Color> {
            for (q, &i) in b.iter().enumerate() {
                buf[i] = (q + 1) as u32;
            }
            let c = oracle.query(&buf);
            for &i in b {
                buf[i] = 0;
            }
            c
        };
        let set = ramsey_step(n, p, oracle.colors(), oracle.limits(), tilde)?;
        let mut symbols = vec![Symbol::Letter(0); n];
        for (q, &i) in set.iter().enumerate() {
            symbols[i] = Symbol::Var(q as u32);
        }
        let w = Word::from_symbols(p, p, symbols)?;
        check_shape(&w, &self.ctx, n, &self.name())?;
        Ok(w)
    }
}

/// From `{τ^0..τ^k}` to `{τ^0..τ^(k+1)}`, degree times `p`.
pub struct KrizStep {
    p: usize,
    k: usize,
    inner: Arc<dyn Extractor>,
    ctx: Context,
}

impl KrizStep {
    /// `inner` must work for `C_p` with `E_k` and degree `p^k`.
    pub fn new(p: usize, k: usize, inner: Arc<dyn Extractor>) -> Result<Self> {
        if p < 3 || k == 0 || k > p - 2 {
            return Err(Error::InvalidInput(format!(
                "step k = {k} needs 1 <= k <= p - 2 for p = {p}"
            )));
        }
        let g = Arc::new(FiniteGroup::cyclic(p)?);
        let ictx = inner.context();
        if !ictx.action.is_regular_of(&g)
            || ictx.relation != cyclic_prefix_relation(p, k)?
            || ictx.degree != BigUint::from(p).pow(k as u32)
        {
            return Err(Error::PreconditionViolated(format!(
                "{} does not extract for C_{p} with E_{k} and degree {p}^{k}",
                inner.name()
            )));
        }
        let action = Arc::new(GroupAction::regular(g));
        let ctx = Context::new(
            action,
            cyclic_prefix_relation(p, k + 1)?,
            BigUint::from(p).pow(k as u32 + 1),
        )?;
        Ok(KrizStep { p, k, inner, ctx })
    }

    /// Number of blocks, `T(p, r^(k+1))`.
    fn blocks(&self, r: &Magnitude, plan: &mut TowerPlan) -> Result<Magnitude> {
        let rk = r.pow(&Magnitude::from(self.k as u64 + 1), &plan.limits)?;
        let n = t_magnitude(self.p as u64, &rk, &plan.limits)?;
        plan.record(
            &self.name(),
            "n",
            format!("T({}, {}^{})", self.p, r.render(60), self.k + 1),
            &n,
        );
        Ok(n)
    }
}

impl Extractor for KrizStep {
    fn context(&self) -> &Context {
        &self.ctx
    }

    fn name(&self) -> String {
        format!("kriz-step(p={}, k={})", self.p, self.k)
    }

    fn plan_into(&self, r: &Magnitude, plan: &mut TowerPlan) -> Result<Magnitude> {
        let n = self.blocks(r, plan)?;
        let total = shelah_plan(self.inner.as_ref(), &n, r, plan)?;
        plan.record(
            &self.name(),
            "N",
            format!("N_shelah({}, {})", n.render(40), r.render(40)),
            &total,
        );
        Ok(total)
    }

    fn extract(&self, oracle: &Arc<ColoringOracle>) -> Result<Word> {
        let total = expect_length(self, oracle)?;
        let limits = *oracle.limits();
        let (p, k) = (self.p, self.k);
        let mut scratch = TowerPlan::new(limits);
        let n = self
            .blocks(oracle.colors(), &mut scratch)?
            .to_usize()
            .ok_or_else(|| Error::OverflowBudget("block count beyond usize".into()))?;
        let words = shelah_sequence(self.inner.as_ref(), n, oracle)?;
        let action = self.inner.context().action.clone();
        let table = BlockTable::new(words, action.clone(), limits.dense_symbols);

        // tilde-c(B) = (c(∏ W_i(τ^{B,j}_i)))_{j=0..k}
        let tilde = |b: &[usize]| -> Result<Color> {
            let mut parts = Vec::with_capacity(k + 1);
            for j in 0..=k {
                let picks = (0..n).map(|i| match b.iter().position(|&x| x == i) {
                    Some(q) => (q + 1 + j) % p,
                    None => 0,
                });
                parts.push(oracle.query(&table.concat(picks)?)?);
            }
            Ok(Color::tuple(&parts))
        };
        let rk = oracle
            .colors()
            .pow(&Magnitude::from(k as u64 + 1), &limits)?;
        let set = ramsey_step(n, p, &rk, &limits, tilde)?;

        let g = action.group();
        let mut parts = Vec::with_capacity(n);
        for (i, w) in table.words().iter().enumerate() {
            match set.iter().position(|&x| x == i) {
                Some(q) => {
                    let shifted = w.shift(q, g)?;
                    spot_check_shift(&shifted, w, q, &action, &action, 0)?;
                    parts.push(shifted);
                }
                None => parts.push(w.substitute(0, &action)?.into_word()),
            }
        }
        let out = Word::concat(&parts)?;
        check_shape(&out, &self.ctx, total, &self.name())?;
        Ok(out)
    }
}

/// The full cyclic chain: `C_1` gives `(v_e)`, otherwise the base step
/// followed by steps `k = 1..p-2`, degree `p^(p-1)`.
pub fn cyclic_extractor(p: usize) -> Result<Arc<dyn Extractor>> {
    match p {
        0 => Err(Error::InvalidInput("cyclic group of order 0".into())),
        1 => Ok(Arc::new(TrivialExtractor::for_trivial_group())),
        _ => {
            let mut ext: Arc<dyn Extractor> = Arc::new(KrizBase::new(p)?);
            for k in 1..p - 1 {
                ext = Arc::new(KrizStep::new(p, k, ext)?);
            }
            Ok(ext)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extract::{run_extractor, ColoringSpec, FixedWordExtractor};
    use crate::limits::Limits;

    #[test]
    fn base_step_on_the_first_coordinate() {
        let ext = KrizBase::new(2).unwrap();
        let oracle = ColoringSpec::Coordinate { index: 1 }
            .build(3, 2, 2, 0, Limits::default())
            .unwrap();
        let res = run_extractor(&ext, &oracle).unwrap();
        assert_eq!(
            res.witness.materialize(10).unwrap(),
            vec![Symbol::Letter(0), Symbol::Var(0), Symbol::Var(1)]
        );
        assert_eq!(res.certificate.classes[0].color, Some(Color::Index(0)));
    }

    #[test]
    fn base_step_on_a_constant_coloring() {
        let ext = KrizBase::new(2).unwrap();
        let oracle = ColoringSpec::Constant { color: 1 }
            .build(4, 2, 3, 0, Limits::default())
            .unwrap();
        let w = run_extractor(&ext, &oracle).unwrap().witness;
        assert_eq!(
            w.materialize(10).unwrap()[..2],
            [Symbol::Var(0), Symbol::Var(1)]
        );
    }

    #[test]
    fn base_step_for_c3_on_random_colorings() {
        let ext = KrizBase::new(3).unwrap();
        for seed in 0..50 {
            let oracle = ColoringSpec::Random { seed: Some(seed) }
                .build(5, 3, 2, 0, Limits::default())
                .unwrap();
            let res = run_extractor(&ext, &oracle).unwrap();
            assert!(res.certificate.complete);
            assert_eq!(res.witness.analyze().degree, BigUint::from(3u32));
        }
    }

    #[test]
    fn plans() {
        let l = Limits::default();
        assert_eq!(
            cyclic_extractor(1)
                .unwrap()
                .plan(&Magnitude::from(7), &l)
                .unwrap(),
            Magnitude::one()
        );
        let c2 = cyclic_extractor(2).unwrap();
        assert_eq!(
            c2.plan(&Magnitude::from(2), &l).unwrap(),
            Magnitude::from(3)
        );
        assert_eq!(c2.context().degree, BigUint::from(2u32));
        let c3 = cyclic_extractor(3).unwrap();
        assert_eq!(c3.context().degree, BigUint::from(9u32));
        assert!(!c3.plan(&Magnitude::from(2), &l).unwrap().is_exact());
    }

    #[test]
    fn step_assembles_shifted_blocks_with_a_stub() {
        let g = Arc::new(FiniteGroup::cyclic(3).unwrap());
        let ctx = Context::new(
            Arc::new(GroupAction::regular(g)),
            cyclic_prefix_relation(3, 1).unwrap(),
            3u32,
        )
        .unwrap();
        let stub: Arc<dyn Extractor> = Arc::new(FixedWordExtractor::balanced(ctx).unwrap());
        let step = KrizStep::new(3, 1, stub).unwrap();
        let l = Limits::default();
        // T(3, 2^2) = 17 blocks of length 3
        assert_eq!(
            step.plan(&Magnitude::from(2), &l).unwrap(),
            Magnitude::from(51)
        );
        let oracle = ColoringSpec::Histogram { modulus: 2 }
            .build(51, 3, 2, 0, l)
            .unwrap();
        let res = run_extractor(&step, &oracle).unwrap();
        assert_eq!(res.witness.analyze().degree, BigUint::from(9u32));
        assert!(res.certificate.complete);
    }
}
