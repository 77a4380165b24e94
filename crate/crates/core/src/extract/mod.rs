//! Witness extraction.
//!
//! An [`Extractor`] is a witness-finder for a [`Context`]: a group `H`
//! acting on a set `X`, an equivalence relation `E` on `X`, and a degree `d`.
//! Given any coloring of `X^N` with `N = plan(r)`, it returns a uniform
//! `H`-variable word of degree `d` and length `N` whose substitutions are
//! monochromatic on every `E`-class. The combinators in the submodules build
//! extractors for larger contexts out of extractors for smaller ones.

mod coloring;
mod extension;
mod kriz;
mod orbit;
mod ramsey;
mod shelah;
mod solvable;
mod stub;
mod tower;
mod transfer;

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use parking_lot::Mutex;
use serde::Serialize;

pub use coloring::{Color, ColoringOracle, ColoringSpec};
pub use extension::ExtensionCompose;
pub use kriz::{cyclic_extractor, cyclic_prefix_relation, KrizBase, KrizStep, TrivialExtractor};
pub use orbit::{orbit_lift, orbit_representatives, OrbitStep, SingleOrbit};
pub use ramsey::{ends_agree, ramsey_step, ramsey_step_unchecked};
pub use shelah::{shelah_plan, shelah_sequence};
pub use solvable::{action_extractor, plan_length, solvable_extractor};
pub use stub::FixedWordExtractor;
pub use tower::{t_function, t_magnitude, PlanStage, TowerPlan};
pub use transfer::{group_transfer, GroupTransfer, TransferMode};

use crate::error::{Error, Result};
use crate::group::{EquivalenceRelation, FiniteGroup, GroupAction};
use crate::limits::Limits;
use crate::magnitude::Magnitude;
use crate::words::{Word, WordDoc};

/// Group, action, relation and degree an extractor works for.
#[derive(Clone, Debug)]
pub struct Context {
    pub action: Arc<GroupAction>,
    pub relation: EquivalenceRelation,
    pub degree: BigUint,
}

impl Context {
    pub fn new(
        action: Arc<GroupAction>,
        relation: EquivalenceRelation,
        degree: impl Into<BigUint>,
    ) -> Result<Self> {
        if relation.set_size() != action.set_size() {
            return Err(Error::InvalidInput(
                "relation and action live on different sets".into(),
            ));
        }
        Ok(Context {
            action,
            relation,
            degree: degree.into(),
        })
    }

    /// `G` acting on itself with the total relation.
    pub fn regular(group: Arc<FiniteGroup>, degree: impl Into<BigUint>) -> Self {
        let n = group.order();
        Context {
            action: Arc::new(GroupAction::regular(group)),
            relation: EquivalenceRelation::total(n),
            degree: degree.into(),
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.action.group()
    }

    pub fn alphabet(&self) -> usize {
        self.action.set_size()
    }

    pub fn is_regular_total(&self) -> bool {
        self.relation.class_count() == 1 && self.action.is_regular_of(self.group())
    }
}

pub trait Extractor: Send + Sync {
    fn context(&self) -> &Context;

    fn name(&self) -> String;

    /// `N` as a function of the color count, recording stages into `plan`.
    fn plan_into(&self, r: &Magnitude, plan: &mut TowerPlan) -> Result<Magnitude>;

    /// `Some(N)` when the length does not depend on the color count.
    fn constant_plan(&self) -> Option<BigUint> {
        None
    }

    /// A witness for a coloring of length `plan(r)`.
    fn extract(&self, oracle: &Arc<ColoringOracle>) -> Result<Word>;

    fn plan(&self, r: &Magnitude, limits: &Limits) -> Result<Magnitude> {
        let mut scratch = TowerPlan::new(*limits);
        scratch.max_stages = 0;
        self.plan_into(r, &mut scratch)
    }
}

/// The oracle length for `ext`, as a dense index.
pub fn expect_length(ext: &dyn Extractor, oracle: &ColoringOracle) -> Result<usize> {
    if oracle.alphabet() != ext.context().alphabet() {
        return Err(Error::AlphabetMismatch(format!(
            "{} expects alphabet {}, oracle has {}",
            ext.name(),
            ext.context().alphabet(),
            oracle.alphabet()
        )));
    }
    let planned = ext.plan(oracle.colors(), oracle.limits())?;
    match planned.exact() {
        Some(n) if n == oracle.length() => oracle.length_usize().or_else(|e| {
            // a monochrome oracle never needs dense words, but positions still index into usize
            oracle
                .length()
                .to_usize()
                .filter(|_| oracle.is_monochrome())
                .ok_or(e)
        }),
        _ => Err(Error::LengthMismatch {
            expected: planned.to_report_string(),
            actual: oracle.length().to_string(),
        }),
    }
}

/// Uniformity, degree, variable set, alphabet and length of a produced word.
pub(crate) fn check_shape(word: &Word, ctx: &Context, length: usize, who: &str) -> Result<()> {
    let a = word.analyze();
    let order = ctx.group().order();
    let problem = if word.alphabet() != ctx.alphabet() || word.var_space() != order {
        Some(format!(
            "symbol ranges {}x{}",
            word.alphabet(),
            word.var_space()
        ))
    } else if word.len() != &BigUint::from(length) {
        Some(format!("length {} instead of {length}", word.len()))
    } else if a.per_variable.len() != order {
        Some(format!(
            "{} of {order} variables occur",
            a.per_variable.len()
        ))
    } else if !a.uniform {
        Some("non-uniform word".into())
    } else if a.degree != ctx.degree {
        Some(format!("degree {} instead of {}", a.degree, ctx.degree))
    } else {
        None
    };
    match problem {
        Some(p) => Err(Error::Internal(format!(
            "{who} produced a malformed word: {p}"
        ))),
        None => Ok(()),
    }
}

/// Checks `W^τ(x) = W(τx)` on a prefix of the word.
pub(crate) fn spot_check_shift(
    shifted: &Word,
    original: &Word,
    tau: usize,
    shifted_action: &GroupAction,
    original_action: &GroupAction,
    x: usize,
) -> Result<()> {
    let a = shifted.substitute(x, shifted_action)?;
    let b = original.substitute(original_action.act(tau, x), original_action)?;
    let probe = a.len().to_usize().unwrap_or(usize::MAX).min(32);
    for i in 0..probe {
        let pos = BigUint::from(i);
        if a.letter_at(&pos)? != b.letter_at(&pos)? {
            return Err(Error::Internal(format!(
                "shift identity fails at position {}",
                i + 1
            )));
        }
    }
    Ok(())
}

type BlockCache = HashMap<(usize, usize), Arc<[u32]>>;

/// Dense substitutions `W_i(x)` of a block sequence, cached per `(i, x)`.
pub(crate) struct BlockTable {
    words: Vec<Word>,
    action: Arc<GroupAction>,
    budget: u64,
    cache: Mutex<BlockCache>,
}

impl BlockTable {
    pub fn new(words: Vec<Word>, action: Arc<GroupAction>, budget: u64) -> Arc<Self> {
        Arc::new(BlockTable {
            words,
            action,
            budget,
            cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    fn block(&self, i: usize, x: usize) -> Result<Arc<[u32]>> {
        if let Some(b) = self.cache.lock().get(&(i, x)) {
            return Ok(b.clone());
        }
        let b: Arc<[u32]> = self.words[i]
            .substitute(x, &self.action)?
            .letters(self.budget)?
            .into();
        self.cache.lock().insert((i, x), b.clone());
        Ok(b)
    }

    /// `W_1(x_1) ⌢ … ⌢ W_n(x_n)`.
    pub fn concat(&self, xs: impl IntoIterator<Item = usize>) -> Result<Vec<u32>> {
        let mut out = Vec::new();
        for (i, x) in xs.into_iter().enumerate() {
            out.extend_from_slice(&self.block(i, x)?);
        }
        Ok(out)
    }
}

/// The color of every member of one class.
#[derive(Clone, Debug, Serialize)]
pub struct ClassCertificate {
    pub members: Vec<usize>,
    /// Present when the class was checked.
    pub color: Option<Color>,
    pub checked: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub classes: Vec<ClassCertificate>,
    pub complete: bool,
}

#[derive(Clone, Debug)]
pub struct ExtractionResult {
    pub witness: Word,
    pub certificate: Certificate,
    /// Oracle queries made during extraction, memo hits included.
    pub query_count: u64,
    pub extractor: String,
}

impl ExtractionResult {
    pub fn to_json(&self) -> serde_json::Value {
        let a = self.witness.analyze();
        serde_json::json!({
            "extractor": self.extractor,
            "length": self.witness.len().to_string(),
            "degree": a.degree.to_string(),
            "uniform": a.uniform,
            "witness": WordDoc::from_word(&self.witness),
            "certificate": self.certificate,
            "query_count": self.query_count,
        })
    }
}

/// Runs `ext` on `oracle`, checks the witness shape, and certifies every
/// non-singleton class that fits the verification budget.
pub fn run_extractor(
    ext: &dyn Extractor,
    oracle: &Arc<ColoringOracle>,
) -> Result<ExtractionResult> {
    let n = expect_length(ext, oracle)?;
    let before = oracle.calls();
    let witness = ext.extract(oracle)?;
    let query_count = oracle.calls() - before;
    check_shape(&witness, ext.context(), n, &ext.name())?;
    let certificate = certify(&witness, ext.context(), oracle)?;
    Ok(ExtractionResult {
        witness,
        certificate,
        query_count,
        extractor: ext.name(),
    })
}

/// Colors of `W(x)` over every non-singleton class; `WitnessRejected` if a
/// checked class is not monochromatic.
pub fn certify(word: &Word, ctx: &Context, oracle: &ColoringOracle) -> Result<Certificate> {
    let limits = oracle.limits();
    let mut classes = Vec::new();
    let mut complete = true;
    for members in ctx.relation.classes().into_iter().filter(|c| c.len() > 1) {
        let cost = word.len() * BigUint::from(members.len());
        let affordable = oracle.is_monochrome()
            || (word.len() <= &BigUint::from(limits.dense_symbols)
                && cost <= BigUint::from(limits.verify_cost));
        if !affordable {
            complete = false;
            classes.push(ClassCertificate {
                members,
                color: None,
                checked: false,
            });
            continue;
        }
        let mut seen: Option<Color> = None;
        for &x in &members {
            let c = oracle.query_word(&word.substitute(x, &ctx.action)?)?;
            match seen {
                None => seen = Some(c),
                Some(s) if s != c => {
                    return Err(Error::WitnessRejected(format!(
                        "class {members:?}: point {x} gets color {c:?}, expected {s:?}"
                    )))
                }
                _ => {}
            }
        }
        classes.push(ClassCertificate {
            members,
            color: seen,
            checked: true,
        });
    }
    Ok(Certificate { classes, complete })
}
