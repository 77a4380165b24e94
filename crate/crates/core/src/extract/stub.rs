use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use super::{expect_length, ColoringOracle, Context, Extractor, TowerPlan};
use crate::error::{Error, Result};
use crate::magnitude::Magnitude;
use crate::words::{Symbol, Word};

/// Returns one fixed word whatever the coloring. Only sound for colorings
/// that cannot tell the substitutions apart, such as constant colorings or
/// letter-sum colorings with a balanced word; used to exercise combinators
/// at sizes where the real recursion is out of reach.
pub struct FixedWordExtractor {
    word: Word,
    ctx: Context,
}

impl FixedWordExtractor {
    pub fn new(ctx: Context, word: Word) -> Result<Self> {
        if word.alphabet() != ctx.alphabet() || word.var_space() != ctx.group().order() {
            return Err(Error::AlphabetMismatch(
                "fixed word does not fit the context".into(),
            ));
        }
        let a = word.analyze();
        if !a.uniform || a.degree != ctx.degree || a.per_variable.len() != ctx.group().order() {
            return Err(Error::InvalidDegree(format!(
                "fixed word is not uniform of degree {}",
                ctx.degree
            )));
        }
        Ok(FixedWordExtractor { word, ctx })
    }

    /// `(v_0 v_1 … v_(|H|-1))` repeated `d / |H|` times.
    pub fn balanced(ctx: Context) -> Result<Self> {
        let order = ctx.group().order();
        if (&ctx.degree % order).is_zero() && !ctx.degree.is_zero() {
            let base = Word::from_symbols(
                ctx.alphabet(),
                order,
                (0..order as u32).map(Symbol::Var).collect(),
            )?;
            let times = &ctx.degree / order;
            let word = match times.to_u64() {
                Some(1) => base,
                _ => base.repeat(times),
            };
            Self::new(ctx, word)
        } else {
            Err(Error::InvalidDegree(format!(
                "{} is not a positive multiple of {order}",
                ctx.degree
            )))
        }
    }
}

impl Extractor for FixedWordExtractor {
    fn context(&self) -> &Context {
        &self.ctx
    }

    fn name(&self) -> String {
        format!(
            "fixed-word(length {}, symmetric colorings only)",
            self.word.len()
        )
    }

    fn plan_into(&self, _r: &Magnitude, _plan: &mut TowerPlan) -> Result<Magnitude> {
        Ok(Magnitude::from(self.word.len().clone()))
    }

    fn constant_plan(&self) -> Option<BigUint> {
        Some(self.word.len().clone())
    }

    fn extract(&self, oracle: &Arc<ColoringOracle>) -> Result<Word> {
        expect_length(self, oracle)?;
        Ok(self.word.clone())
    }
}
