use serde::Serialize;

use crate::error::{Error, Result};
use crate::extract::{Color, ColoringOracle};
use crate::group::{EquivalenceRelation, GroupAction};
use crate::words::{Symbol, Word};

#[derive(Clone, Debug, Serialize)]
pub struct ClassReport {
    pub members: Vec<usize>,
    /// Color of `W(x)` for every member, in member order.
    pub colors: Vec<Color>,
    pub monochromatic: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub verified: bool,
    pub classes: Vec<ClassReport>,
}

/// Substitutes every point densely, without going through the word tree's
/// own substitution, and checks that each class gets a single color.
pub fn verify_witness(
    w: &Word,
    oracle: &ColoringOracle,
    relation: &EquivalenceRelation,
    action: &GroupAction,
) -> Result<VerifyReport> {
    if w.len() != oracle.length() {
        return Err(Error::LengthMismatch {
            expected: oracle.length().to_string(),
            actual: w.len().to_string(),
        });
    }
    if w.alphabet() != action.set_size() || relation.set_size() != action.set_size() {
        return Err(Error::AlphabetMismatch(
            "word, relation and action disagree on the point set".into(),
        ));
    }
    if w.var_space() != action.group().order() {
        return Err(Error::AlphabetMismatch(
            "word variables do not match the acting group".into(),
        ));
    }
    let symbols = w.materialize(oracle.limits().dense_symbols)?;
    let mut classes = Vec::new();
    let mut buf = vec![0u32; symbols.len()];
    for members in relation.classes() {
        let mut colors = Vec::with_capacity(members.len());
        for &x in &members {
            for (slot, s) in buf.iter_mut().zip(&symbols) {
                *slot = match *s {
                    Symbol::Letter(a) => a,
                    Symbol::Var(h) => action.act(h as usize, x) as u32,
                };
            }
            colors.push(oracle.query(&buf)?);
        }
        let monochromatic = colors.windows(2).all(|p| p[0] == p[1]);
        classes.push(ClassReport {
            members,
            colors,
            monochromatic,
        });
    }
    Ok(VerifyReport {
        verified: classes.iter().all(|c| c.monochromatic),
        classes,
    })
}
