use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Kind, Node, Symbol, SymbolMap, Word};
use crate::error::{Error, Result};

/// JSON form of a word: `{"alphabet": 3, "vars": [0, 4], "body": [...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WordDoc {
    pub alphabet: usize,
    /// Variables that occur, sorted.
    #[serde(default)]
    pub vars: Vec<usize>,
    pub body: Vec<WordItem>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WordItem {
    Letter { letter: u32 },
    Var { var: u32 },
    Repeat { repeat: Count, of: Vec<WordItem> },
}

/// Repetition count, written as a number when it fits in `u64` and as a
/// decimal string otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Count(pub BigUint);

impl Serialize for Count {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0.to_u64() {
            Some(n) => s.serialize_u64(n),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Count {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            N(u64),
            S(String),
        }
        match Raw::deserialize(d)? {
            Raw::N(n) => Ok(Count(n.into())),
            Raw::S(s) => s
                .parse()
                .map(Count)
                .map_err(|_| serde::de::Error::custom(format!("bad count {s:?}"))),
        }
    }
}

impl WordDoc {
    /// Builds the word, with variables ranging over `0..var_space`. The
    /// declared `vars` must be exactly the variables that occur.
    pub fn build(&self, var_space: usize) -> Result<Word> {
        let root = build_items(&self.body, self.alphabet, var_space)?;
        let w = Word {
            alphabet: self.alphabet,
            var_space,
            root: Arc::new(root),
        };
        let declared: BTreeSet<usize> = self.vars.iter().copied().collect();
        let found: BTreeSet<usize> = w.variables().into_iter().collect();
        if declared != found {
            return Err(Error::InvalidInput(format!(
                "declared variables {declared:?}, word uses {found:?}"
            )));
        }
        Ok(w)
    }

    pub fn from_word(w: &Word) -> WordDoc {
        let mut body = Vec::new();
        export(&w.root, None, &mut body);
        WordDoc {
            alphabet: w.alphabet,
            vars: w.variables(),
            body,
        }
    }
}

fn build_items(items: &[WordItem], alphabet: usize, var_space: usize) -> Result<Node> {
    let mut children = Vec::new();
    let mut run = Vec::new();
    for item in items {
        match item {
            WordItem::Letter { letter } => {
                if *letter as usize >= alphabet {
                    return Err(Error::IndexOutOfRange(format!(
                        "letter {letter} outside alphabet of size {alphabet}"
                    )));
                }
                run.push(Symbol::Letter(*letter));
            }
            WordItem::Var { var } => {
                if *var as usize >= var_space {
                    return Err(Error::IndexOutOfRange(format!(
                        "variable {var} outside 0..{var_space}"
                    )));
                }
                run.push(Symbol::Var(*var));
            }
            WordItem::Repeat { repeat, of } => {
                if !run.is_empty() {
                    children.push(Arc::new(Node::run(std::mem::take(&mut run).into())));
                }
                let inner = build_items(of, alphabet, var_space)?;
                children.push(Arc::new(Node::repeat(repeat.0.clone(), Arc::new(inner))));
            }
        }
    }
    if children.is_empty() {
        return Ok(Node::run(run.into()));
    }
    if !run.is_empty() {
        children.push(Arc::new(Node::run(run.into())));
    }
    Ok(Node::concat(children))
}

fn export(node: &Node, map: Option<&SymbolMap>, out: &mut Vec<WordItem>) {
    match &node.kind {
        Kind::Run(s) => out.extend(s.iter().map(|&x| match map.map_or(x, |m| m.apply(x)) {
            Symbol::Letter(a) => WordItem::Letter { letter: a },
            Symbol::Var(h) => WordItem::Var { var: h },
        })),
        Kind::Concat(children) => {
            for c in children {
                export(c, map, out);
            }
        }
        Kind::Repeat(times, child) => {
            let mut of = Vec::new();
            export(child, map, &mut of);
            out.push(WordItem::Repeat {
                repeat: Count(times.clone()),
                of,
            });
        }
        Kind::Map(m, child) => match map {
            Some(outer) => export(child, Some(&outer.after(m)), out),
            None => export(child, Some(m), out),
        },
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        WordDoc::from_word(self).serialize(s)
    }
}
