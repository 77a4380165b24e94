//! Constant and variable words stored as concatenation trees.
//!
//! A word is a tree whose leaves are runs of [`Symbol`]s and whose inner
//! nodes concatenate, repeat, or relabel their children. Lengths and
//! per-variable counts are cached on every node as big integers, so words
//! far longer than memory can still be measured, shifted and substituted.
//! Relabeling (shift and substitution) adds one node and never copies.

mod doc;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

pub use doc::{WordDoc, WordItem};

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupAction};

/// A letter of the alphabet `0..alphabet`, or a variable `v_h` indexed by an
/// element `h` of the ambient group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    Letter(u32),
    Var(u32),
}

impl Symbol {
    pub fn is_var(self) -> bool {
        matches!(self, Symbol::Var(_))
    }
}

/// Total relabeling of symbols: letters go to letters, variables go to
/// letters or variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolMap {
    /// `None` keeps letters unchanged.
    letters: Option<Arc<[Symbol]>>,
    vars: Arc<[Symbol]>,
    alphabet_in: usize,
    alphabet_out: usize,
    var_space_out: usize,
}

impl SymbolMap {
    /// Builds a relabeling. `letters[a]` must be a letter, `vars[h]` a letter
    /// or a variable, all within the output ranges.
    pub fn new(
        alphabet_in: usize,
        letters: Option<Vec<u32>>,
        vars: Vec<Symbol>,
        alphabet_out: usize,
        var_space_out: usize,
    ) -> Result<Self> {
        if let Some(l) = &letters {
            if l.len() != alphabet_in {
                return Err(Error::AlphabetMismatch(
                    "letter map length differs from the alphabet".into(),
                ));
            }
            if l.iter().any(|&a| a as usize >= alphabet_out) {
                return Err(Error::IndexOutOfRange(
                    "letter map leaves the target alphabet".into(),
                ));
            }
        } else if alphabet_in != alphabet_out {
            return Err(Error::AlphabetMismatch(
                "identity letter map between different alphabets".into(),
            ));
        }
        for s in &vars {
            let ok = match *s {
                Symbol::Letter(a) => (a as usize) < alphabet_out,
                Symbol::Var(h) => (h as usize) < var_space_out,
            };
            if !ok {
                return Err(Error::IndexOutOfRange(format!(
                    "variable image {s:?} out of range"
                )));
            }
        }
        Ok(SymbolMap {
            letters: letters.map(|l| l.into_iter().map(Symbol::Letter).collect()),
            vars: vars.into(),
            alphabet_in,
            alphabet_out,
            var_space_out,
        })
    }

    #[inline]
    pub fn apply(&self, s: Symbol) -> Symbol {
        match s {
            Symbol::Letter(a) => match &self.letters {
                Some(t) => t[a as usize],
                None => s,
            },
            Symbol::Var(h) => self.vars[h as usize],
        }
    }

    /// `self ∘ inner`.
    fn after(&self, inner: &SymbolMap) -> SymbolMap {
        let letters = inner
            .letters
            .as_ref()
            .map(|t| t.iter().map(|&s| self.apply(s)).collect::<Arc<[Symbol]>>());
        let letters = match (letters, &self.letters) {
            (Some(l), _) => Some(l),
            (None, Some(outer)) => Some(outer.clone()),
            (None, None) => None,
        };
        SymbolMap {
            letters,
            vars: inner.vars.iter().map(|&s| self.apply(s)).collect(),
            alphabet_in: inner.alphabet_in,
            alphabet_out: self.alphabet_out,
            var_space_out: self.var_space_out,
        }
    }
}

type Counts = BTreeMap<u32, BigUint>;

#[derive(Debug)]
struct Node {
    kind: Kind,
    len: BigUint,
    counts: Arc<Counts>,
}

#[derive(Debug)]
enum Kind {
    Run(Arc<[Symbol]>),
    Concat(Vec<Arc<Node>>),
    Repeat(BigUint, Arc<Node>),
    Map(Arc<SymbolMap>, Arc<Node>),
}

impl Node {
    fn run(symbols: Arc<[Symbol]>) -> Node {
        let mut counts = Counts::new();
        for s in symbols.iter() {
            if let Symbol::Var(h) = *s {
                *counts.entry(h).or_default() += 1u32;
            }
        }
        Node {
            len: BigUint::from(symbols.len()),
            counts: Arc::new(counts),
            kind: Kind::Run(symbols),
        }
    }

    fn concat(children: Vec<Arc<Node>>) -> Node {
        let mut len = BigUint::zero();
        let mut counts = Counts::new();
        for c in &children {
            len += &c.len;
            for (h, n) in c.counts.iter() {
                *counts.entry(*h).or_default() += n;
            }
        }
        Node {
            kind: Kind::Concat(children),
            len,
            counts: Arc::new(counts),
        }
    }

    fn repeat(times: BigUint, child: Arc<Node>) -> Node {
        let len = &child.len * &times;
        let counts = child.counts.iter().map(|(h, n)| (*h, n * &times)).collect();
        Node {
            kind: Kind::Repeat(times, child),
            len,
            counts: Arc::new(counts),
        }
    }

    fn map(m: Arc<SymbolMap>, child: Arc<Node>) -> Node {
        // collapse nested relabelings
        if let Kind::Map(inner, grandchild) = &child.kind {
            let composed = Arc::new(m.after(inner));
            return Node::map(composed, grandchild.clone());
        }
        let mut counts = Counts::new();
        for (h, n) in child.counts.iter() {
            if let Symbol::Var(g) = m.vars[*h as usize] {
                *counts.entry(g).or_default() += n;
            }
        }
        Node {
            len: child.len.clone(),
            counts: Arc::new(counts),
            kind: Kind::Map(m, child),
        }
    }

    fn emit(&self, map: Option<&SymbolMap>, out: &mut Vec<Symbol>) {
        match &self.kind {
            Kind::Run(s) => match map {
                Some(m) => out.extend(s.iter().map(|&x| m.apply(x))),
                None => out.extend_from_slice(s),
            },
            Kind::Concat(children) => {
                for c in children {
                    c.emit(map, out);
                }
            }
            Kind::Repeat(times, child) => {
                let start = out.len();
                child.emit(map, out);
                let block = out.len() - start;
                let times = times.to_usize().expect("length checked against the budget");
                if times == 0 {
                    out.truncate(start);
                }
                for _ in 1..times {
                    out.extend_from_within(start..start + block);
                }
            }
            Kind::Map(m, child) => match map {
                Some(outer) => child.emit(Some(&outer.after(m)), out),
                None => child.emit(Some(m), out),
            },
        }
    }

    fn symbol_at(&self, pos: &BigUint) -> Symbol {
        match &self.kind {
            Kind::Run(s) => s[pos.to_usize().unwrap()],
            Kind::Concat(children) => {
                let mut p = pos.clone();
                for c in children {
                    if p < c.len {
                        return c.symbol_at(&p);
                    }
                    p -= &c.len;
                }
                unreachable!("position checked against the length")
            }
            Kind::Repeat(_, child) => child.symbol_at(&(pos % &child.len)),
            Kind::Map(m, child) => m.apply(child.symbol_at(pos)),
        }
    }

    /// Node count of the tree with sharing expanded.
    fn size(&self) -> u64 {
        1 + match &self.kind {
            Kind::Run(_) => 0,
            Kind::Concat(c) => c.iter().map(|c| c.size()).sum(),
            Kind::Repeat(_, c) | Kind::Map(_, c) => c.size(),
        }
    }
}

/// A word over `0..alphabet` with variables from `0..var_space`.
#[derive(Clone)]
pub struct Word {
    alphabet: usize,
    var_space: usize,
    root: Arc<Node>,
}

/// Degree and uniformity of a word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordAnalysis {
    pub degree: BigUint,
    pub uniform: bool,
    pub per_variable: BTreeMap<usize, BigUint>,
}

impl Word {
    pub fn from_symbols(alphabet: usize, var_space: usize, symbols: Vec<Symbol>) -> Result<Word> {
        for s in &symbols {
            match *s {
                Symbol::Letter(a) if a as usize >= alphabet => {
                    return Err(Error::IndexOutOfRange(format!(
                        "letter {a} outside alphabet of size {alphabet}"
                    )))
                }
                Symbol::Var(h) if h as usize >= var_space => {
                    return Err(Error::IndexOutOfRange(format!(
                        "variable {h} outside 0..{var_space}"
                    )))
                }
                _ => {}
            }
        }
        Ok(Word {
            alphabet,
            var_space,
            root: Arc::new(Node::run(symbols.into())),
        })
    }

    pub fn empty(alphabet: usize, var_space: usize) -> Word {
        Word {
            alphabet,
            var_space,
            root: Arc::new(Node::run(Vec::new().into())),
        }
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    pub fn var_space(&self) -> usize {
        self.var_space
    }

    pub fn len(&self) -> &BigUint {
        &self.root.len
    }

    pub fn is_empty(&self) -> bool {
        self.root.len.is_zero()
    }

    pub fn len_usize(&self) -> Option<usize> {
        self.root.len.to_usize()
    }

    /// Occurrence count of every variable that occurs.
    pub fn var_counts(&self) -> BTreeMap<usize, BigUint> {
        self.root
            .counts
            .iter()
            .map(|(h, n)| (*h as usize, n.clone()))
            .collect()
    }

    /// Sorted list of variables that occur at least once.
    pub fn variables(&self) -> Vec<usize> {
        self.root.counts.keys().map(|&h| h as usize).collect()
    }

    pub fn is_constant(&self) -> bool {
        self.root.counts.is_empty()
    }

    pub fn analyze(&self) -> WordAnalysis {
        let per_variable = self.var_counts();
        let degree = per_variable
            .values()
            .fold(BigUint::zero(), |acc, n| acc + n);
        let mut counts = per_variable.values();
        let uniform = match counts.next() {
            Some(first) => counts.all(|n| n == first),
            None => true,
        };
        WordAnalysis {
            degree,
            uniform,
            per_variable,
        }
    }

    /// `self` repeated `times` times.
    pub fn repeat(&self, times: impl Into<BigUint>) -> Word {
        Word {
            alphabet: self.alphabet,
            var_space: self.var_space,
            root: Arc::new(Node::repeat(times.into(), self.root.clone())),
        }
    }

    /// Concatenation sharing every part's tree.
    pub fn concat(parts: &[Word]) -> Result<Word> {
        let Some(first) = parts.first() else {
            return Err(Error::InvalidInput(
                "concatenation of no parts has no alphabet".into(),
            ));
        };
        let alphabet = first.alphabet;
        let mut var_space = None;
        for p in parts {
            if p.alphabet != alphabet {
                return Err(Error::AlphabetMismatch(format!(
                    "alphabets {} and {}",
                    alphabet, p.alphabet
                )));
            }
            if !p.is_constant() {
                match var_space {
                    None => var_space = Some(p.var_space),
                    Some(v) if v != p.var_space => {
                        return Err(Error::AlphabetMismatch(format!(
                            "variable spaces {v} and {}",
                            p.var_space
                        )))
                    }
                    Some(_) => {}
                }
            }
        }
        let var_space =
            var_space.unwrap_or_else(|| parts.iter().map(|p| p.var_space).max().unwrap());
        if parts.len() == 1 {
            return Ok(Word {
                var_space,
                ..first.clone()
            });
        }
        let children = parts
            .iter()
            .filter(|p| !p.is_empty())
            .map(|p| p.root.clone())
            .collect();
        Ok(Word {
            alphabet,
            var_space,
            root: Arc::new(Node::concat(children)),
        })
    }

    /// Applies a relabeling lazily.
    pub fn relabel(&self, map: SymbolMap) -> Result<Word> {
        if map.alphabet_in != self.alphabet || map.vars.len() != self.var_space {
            return Err(Error::AlphabetMismatch(
                "relabeling does not match the word's symbol ranges".into(),
            ));
        }
        let (alphabet, var_space) = (map.alphabet_out, map.var_space_out);
        Ok(Word {
            alphabet,
            var_space,
            root: Arc::new(Node::map(Arc::new(map), self.root.clone())),
        })
    }

    fn check_group(&self, group: &FiniteGroup) -> Result<()> {
        if self.var_space != group.order() {
            return Err(Error::IndexOutOfRange(format!(
                "word variables range over {} elements, group has order {}",
                self.var_space,
                group.order()
            )));
        }
        Ok(())
    }

    /// `W^τ`: every `v_h` becomes `v_{hτ}`, letters stay.
    pub fn shift(&self, tau: usize, group: &FiniteGroup) -> Result<Word> {
        self.check_group(group)?;
        if tau >= group.order() {
            return Err(Error::IndexOutOfRange(format!("shift element {tau}")));
        }
        let vars = group
            .elements()
            .map(|h| Symbol::Var(group.mul(h, tau) as u32))
            .collect();
        self.relabel(SymbolMap::new(
            self.alphabet,
            None,
            vars,
            self.alphabet,
            self.var_space,
        )?)
    }

    /// `W(x)`: every `v_h` becomes the letter `hx`, letters stay.
    pub fn substitute(&self, x: usize, action: &GroupAction) -> Result<ConstantWord> {
        self.check_group(action.group())?;
        if self.alphabet != action.set_size() {
            return Err(Error::AlphabetMismatch(format!(
                "word alphabet {} vs action on {} points",
                self.alphabet,
                action.set_size()
            )));
        }
        if x >= action.set_size() {
            return Err(Error::IndexOutOfRange(format!("point {x}")));
        }
        let vars = action
            .group()
            .elements()
            .map(|h| Symbol::Letter(action.act(h, x) as u32))
            .collect();
        let w = self.relabel(SymbolMap::new(
            self.alphabet,
            None,
            vars,
            self.alphabet,
            self.var_space,
        )?)?;
        Ok(ConstantWord(w))
    }

    pub fn symbol_at(&self, pos: &BigUint) -> Result<Symbol> {
        if pos >= self.len() {
            return Err(Error::IndexOutOfRange(format!(
                "position {pos} in a word of length {}",
                self.len()
            )));
        }
        Ok(self.root.symbol_at(pos))
    }

    /// Dense copy, refused when longer than `budget` symbols.
    pub fn materialize(&self, budget: u64) -> Result<Vec<Symbol>> {
        let n = self
            .len()
            .to_u64()
            .filter(|&n| n <= budget)
            .ok_or_else(|| {
                Error::OverflowBudget(format!(
                    "word of length {} exceeds the dense budget {budget}",
                    self.len()
                ))
            })?;
        let mut out = Vec::with_capacity(n as usize);
        self.root.emit(None, &mut out);
        debug_assert_eq!(out.len() as u64, n);
        Ok(out)
    }

    /// Number of tree nodes with sharing expanded.
    pub fn tree_size(&self) -> u64 {
        self.root.size()
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.materialize(64) {
            Ok(s) => write!(f, "Word({})", render_symbols(&s)),
            Err(_) => write!(f, "Word(len={}, vars={:?})", self.len(), self.variables()),
        }
    }
}

/// `(e, v_0, 1)`-style rendering with 0-based indices.
pub fn render_symbols(symbols: &[Symbol]) -> String {
    let body: Vec<String> = symbols
        .iter()
        .map(|s| match s {
            Symbol::Letter(a) => a.to_string(),
            Symbol::Var(h) => format!("v{h}"),
        })
        .collect();
    format!("({})", body.join(","))
}

/// A word without variables.
#[derive(Clone, Debug)]
pub struct ConstantWord(Word);

impl ConstantWord {
    pub fn new(word: Word) -> Result<Self> {
        if word.is_constant() {
            Ok(ConstantWord(word))
        } else {
            Err(Error::InvalidInput("word contains variables".into()))
        }
    }

    pub fn from_letters(alphabet: usize, letters: &[u32]) -> Result<Self> {
        Ok(ConstantWord(Word::from_symbols(
            alphabet,
            0,
            letters.iter().map(|&a| Symbol::Letter(a)).collect(),
        )?))
    }

    pub fn word(&self) -> &Word {
        &self.0
    }

    pub fn into_word(self) -> Word {
        self.0
    }

    pub fn len(&self) -> &BigUint {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn alphabet(&self) -> usize {
        self.0.alphabet
    }

    pub fn letters(&self, budget: u64) -> Result<Vec<u32>> {
        Ok(self
            .0
            .materialize(budget)?
            .into_iter()
            .map(|s| match s {
                Symbol::Letter(a) => a,
                Symbol::Var(_) => unreachable!("constant word"),
            })
            .collect())
    }

    pub fn letter_at(&self, pos: &BigUint) -> Result<u32> {
        match self.0.symbol_at(pos)? {
            Symbol::Letter(a) => Ok(a),
            Symbol::Var(_) => unreachable!("constant word"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Symbol::{Letter as L, Var as V};

    fn example_word() -> (GroupAction, Word) {
        // X = [3] as 0..3, H = <(1 2 3)> inside S_3; (1 2 3) is index 3, its square index 4
        let action = GroupAction::symmetric_natural(3).unwrap();
        let w = Word::from_symbols(3, 6, vec![V(0), L(0), L(1), V(4), V(3)]).unwrap();
        (action, w)
    }

    fn dense(c: &ConstantWord) -> Vec<u32> {
        c.letters(1000).unwrap()
    }

    #[test]
    fn substitution_matches_hand_computation() {
        let (action, w) = example_word();
        // 1-based: W(1) = (1,1,2,3,2), W(2) = (2,1,2,1,3), W(3) = (3,1,2,2,1)
        assert_eq!(
            dense(&w.substitute(0, &action).unwrap()),
            vec![0, 0, 1, 2, 1]
        );
        assert_eq!(
            dense(&w.substitute(1, &action).unwrap()),
            vec![1, 0, 1, 0, 2]
        );
        assert_eq!(
            dense(&w.substitute(2, &action).unwrap()),
            vec![2, 0, 1, 1, 0]
        );
        let a = w.analyze();
        assert_eq!(a.degree, BigUint::from(3u32));
        assert!(a.uniform);
    }

    #[test]
    fn constant_word_is_fixed_by_substitution() {
        let action = GroupAction::regular(Arc::new(FiniteGroup::cyclic(3).unwrap()));
        let w = Word::from_symbols(3, 3, vec![L(2), L(0), L(1)]).unwrap();
        for x in 0..3 {
            assert_eq!(dense(&w.substitute(x, &action).unwrap()), vec![2, 0, 1]);
        }
    }

    #[test]
    fn shift_relabels_variables() {
        let c2 = FiniteGroup::cyclic(2).unwrap();
        let w = Word::from_symbols(2, 2, vec![V(0)]).unwrap();
        assert_eq!(
            w.shift(1, &c2).unwrap().materialize(10).unwrap(),
            vec![V(1)]
        );

        let (action, w) = example_word();
        let s3 = action.group();
        let shifted = w.shift(3, s3).unwrap();
        // v_e -> v_t, v_{t^2} -> v_e, v_t -> v_{t^2}
        assert_eq!(
            shifted.materialize(10).unwrap(),
            vec![V(3), L(0), L(1), V(0), V(4)]
        );
        let back = shifted.shift(s3.inv(3), s3).unwrap();
        assert_eq!(back.materialize(10).unwrap(), w.materialize(10).unwrap());
        assert_eq!(back.tree_size(), 2, "nested relabelings collapse");
    }

    #[test]
    fn concat_adds_lengths_and_counts() {
        let a = Word::from_symbols(2, 2, vec![V(0), L(1), L(1)]).unwrap();
        let b = Word::from_symbols(2, 2, vec![V(1), L(0), V(0), L(1), L(0)]).unwrap();
        let ab = Word::concat(&[a.clone(), b.clone()]).unwrap();
        assert_eq!(ab.len(), &BigUint::from(8u32));
        assert_eq!(ab.analyze().degree, BigUint::from(3u32));
        assert!(!ab.analyze().uniform);
        assert_eq!(
            Word::concat(std::slice::from_ref(&a))
                .unwrap()
                .materialize(10)
                .unwrap(),
            a.materialize(10).unwrap()
        );
        let other = Word::from_symbols(3, 2, vec![L(2)]).unwrap();
        assert!(matches!(
            Word::concat(&[a, other]),
            Err(Error::AlphabetMismatch(_))
        ));
    }

    #[test]
    fn nonuniform_counts() {
        let w = Word::from_symbols(2, 2, vec![V(0), V(0), V(1)]).unwrap();
        let a = w.analyze();
        assert_eq!(a.degree, BigUint::from(3u32));
        assert!(!a.uniform);
    }

    #[test]
    fn astronomically_long_words_stay_symbolic() {
        let c2 = FiniteGroup::cyclic(2).unwrap();
        let block = Word::from_symbols(2, 2, vec![V(0), L(1), V(1)]).unwrap();
        let huge = block
            .repeat(BigUint::from(2u32).pow(40))
            .repeat(BigUint::from(2u32).pow(40));
        assert_eq!(
            huge.len(),
            &(BigUint::from(3u32) * BigUint::from(2u32).pow(80))
        );
        assert!(huge.analyze().uniform);
        let shifted = huge.shift(1, &c2).unwrap();
        assert_eq!(
            shifted.symbol_at(&BigUint::from(5u32).pow(30)).unwrap(),
            L(1)
        );
        assert_eq!(
            shifted.symbol_at(&(BigUint::from(3u32) << 79)).unwrap(),
            V(1)
        );
        assert_eq!(
            shifted
                .symbol_at(&((BigUint::from(3u32) << 79) + 2u32))
                .unwrap(),
            V(0)
        );
        assert!(matches!(
            huge.materialize(1_000_000),
            Err(Error::OverflowBudget(_))
        ));
    }

    #[test]
    fn repeat_zero_is_empty() {
        let w = Word::from_symbols(2, 2, vec![V(0), L(1)])
            .unwrap()
            .repeat(0u32);
        assert!(w.is_empty());
        assert!(w.materialize(10).unwrap().is_empty());
    }
}
