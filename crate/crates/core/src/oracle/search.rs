use std::sync::Arc;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use super::enumerate::UniformWords;
use super::verify::verify_witness;
use crate::error::{Error, Result};
use crate::extract::{expect_length, ColoringOracle, ColoringSpec, Context, Extractor, TowerPlan};
use crate::group::{EquivalenceRelation, GroupAction};
use crate::limits::Limits;
use crate::magnitude::Magnitude;
use crate::words::{Symbol, Word, WordDoc};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Fails,
    Unknown,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchReport {
    pub length: usize,
    pub degree: usize,
    pub colors: u64,
    pub verdict: Verdict,
    /// Colors of the words of `X^N` in lexicographic order.
    pub counterexample: Option<Vec<u64>>,
    /// Position of the counterexample in the base-`r` enumeration.
    pub counterexample_index: Option<String>,
    /// A witness for the first enumerated coloring.
    pub minimal_witness: Option<WordDoc>,
    pub candidates: u64,
    pub colorings_checked: u64,
    pub colorings_total: String,
    pub wall_budget_hit: bool,
}

/// Candidate words as lists of rank tuples, one tuple per non-trivial class.
struct Candidates {
    words: Vec<Vec<Symbol>>,
    classes: Vec<Vec<Vec<u64>>>,
}

fn candidates(
    action: &GroupAction,
    relation: &EquivalenceRelation,
    d: usize,
    n: usize,
    cap: u64,
) -> Result<Option<Candidates>> {
    let xs = action.set_size() as u64;
    let classes: Vec<Vec<usize>> = relation
        .classes()
        .into_iter()
        .filter(|c| c.len() > 1)
        .collect();
    let mut out = Candidates {
        words: Vec::new(),
        classes: Vec::new(),
    };
    if d > n {
        return Ok(Some(out));
    }
    for w in UniformWords::new(action.group().order(), action.set_size(), d, n)? {
        if out.words.len() as u64 >= cap {
            return Ok(None);
        }
        let ranks = classes
            .iter()
            .map(|c| {
                c.iter()
                    .map(|&x| {
                        w.iter().fold(0u64, |acc, s| {
                            let a = match *s {
                                Symbol::Letter(a) => a as u64,
                                Symbol::Var(h) => action.act(h as usize, x) as u64,
                            };
                            acc * xs + a
                        })
                    })
                    .collect()
            })
            .collect();
        out.classes.push(ranks);
        out.words.push(w);
    }
    Ok(Some(out))
}

/// Digit `i` of coloring `k`, the first word being the most significant.
fn color_of(k: u128, i: u64, m: u64, r: u128) -> u128 {
    let mut q = k;
    for _ in 0..(m - 1 - i) {
        q /= r;
        if q == 0 {
            break;
        }
    }
    q % r
}

/// Decides whether every `r`-coloring of `X^N` has a uniform word of degree
/// `d` whose non-trivial classes are monochromatic. At most `budget`
/// colorings are looked at, in base-`r` order; a counterexample found
/// within the budget is still decisive.
pub fn uhjp_check(
    action: &GroupAction,
    relation: &EquivalenceRelation,
    d: usize,
    r: u64,
    n: usize,
    budget: u64,
    limits: &Limits,
) -> Result<SearchReport> {
    if r == 0 {
        return Err(Error::InvalidInput("at least one color is needed".into()));
    }
    if relation.set_size() != action.set_size() {
        return Err(Error::InvalidInput(
            "relation and action live on different sets".into(),
        ));
    }
    let xs = action.set_size() as u64;
    let mut report = SearchReport {
        length: n,
        degree: d,
        colors: r,
        verdict: Verdict::Unknown,
        counterexample: None,
        counterexample_index: None,
        minimal_witness: None,
        candidates: 0,
        colorings_checked: 0,
        colorings_total: BigUint::from(r)
            .pow(
                BigUint::from(xs)
                    .pow(n as u32)
                    .try_into()
                    .unwrap_or(u32::MAX),
            )
            .to_string(),
        wall_budget_hit: false,
    };
    let m = xs
        .checked_pow(n as u32)
        .filter(|&m| m <= limits.dense_symbols);
    let Some(m) = m else {
        report.wall_budget_hit = true;
        report.colorings_total = format!("{r}^({xs}^{n})");
        return Ok(report);
    };
    let Some(cands) = candidates(action, relation, d, n, limits.dense_symbols)? else {
        report.wall_budget_hit = true;
        return Ok(report);
    };
    report.candidates = cands.words.len() as u64;
    let total = (r as u128).checked_pow(m as u32).unwrap_or(u128::MAX);
    let scan = total.min(budget as u128);
    let rr = r as u128;

    let works = |k: u128, c: &[Vec<u64>]| {
        c.iter().all(|ranks| {
            let first = color_of(k, ranks[0], m, rr);
            ranks[1..].iter().all(|&i| color_of(k, i, m, rr) == first)
        })
    };
    let holds = |k: u128| cands.classes.iter().any(|c| works(k, c));
    let failing = (0..scan as u64)
        .into_par_iter()
        .find_first(|&k| !holds(k as u128));

    match failing {
        Some(k) => {
            let table: Vec<u64> = (0..m)
                .map(|i| color_of(k as u128, i, m, rr) as u64)
                .collect();
            recheck(action, relation, &cands, &table, n, r, limits)?;
            report.verdict = Verdict::Fails;
            report.colorings_checked = k + 1;
            report.counterexample = Some(table);
            report.counterexample_index = Some(k.to_string());
        }
        None => {
            report.colorings_checked = scan as u64;
            if scan == total {
                report.verdict = Verdict::Holds;
                if let Some(i) = cands.classes.iter().position(|c| works(0, c)) {
                    let w = Word::from_symbols(
                        action.set_size(),
                        action.group().order(),
                        cands.words[i].clone(),
                    )?;
                    report.minimal_witness = Some(WordDoc::from_word(&w));
                }
            } else {
                report.wall_budget_hit = true;
            }
        }
    }
    Ok(report)
}

/// Every candidate must fail on the counterexample, checked through the
/// dense verifier rather than the rank tables.
fn recheck(
    action: &GroupAction,
    relation: &EquivalenceRelation,
    cands: &Candidates,
    table: &[u64],
    n: usize,
    r: u64,
    limits: &Limits,
) -> Result<()> {
    let oracle = ColoringSpec::Table {
        colors: table.to_vec(),
    }
    .build(n, action.set_size(), r, 0, *limits)?;
    let order = action.group().order();
    for w in &cands.words {
        let word = Word::from_symbols(action.set_size(), order, w.clone())?;
        if verify_witness(&word, &oracle, relation, action)?.verified {
            return Err(Error::Internal(
                "counterexample is refuted by a candidate word".into(),
            ));
        }
    }
    Ok(())
}

#[derive(Clone, Debug, Serialize)]
pub struct MinimalNReport {
    pub verdict: Verdict,
    pub minimal_n: Option<usize>,
    /// Largest `N` with a holds or fails verdict.
    pub largest_decided: Option<usize>,
    pub reports: Vec<SearchReport>,
}

/// Smallest `N <= n_max` with a holds verdict. Stops at the first unknown.
pub fn minimal_n_search(
    action: &GroupAction,
    relation: &EquivalenceRelation,
    d: usize,
    r: u64,
    n_max: usize,
    budget: u64,
    limits: &Limits,
) -> Result<MinimalNReport> {
    let mut out = MinimalNReport {
        verdict: Verdict::Fails,
        minimal_n: None,
        largest_decided: None,
        reports: Vec::new(),
    };
    for n in 1..=n_max {
        let rep = uhjp_check(action, relation, d, r, n, budget, limits)?;
        let v = rep.verdict;
        out.reports.push(rep);
        match v {
            Verdict::Holds => {
                out.verdict = Verdict::Holds;
                out.minimal_n = Some(n);
                out.largest_decided = Some(n);
                break;
            }
            Verdict::Fails => out.largest_decided = Some(n),
            Verdict::Unknown => {
                out.verdict = Verdict::Unknown;
                break;
            }
        }
    }
    Ok(out)
}

/// Finds a witness of fixed length by trying every uniform word in order.
pub struct WordSearchExtractor {
    n: usize,
    ctx: Context,
}

impl WordSearchExtractor {
    pub fn new(ctx: Context, n: usize) -> Result<Self> {
        let d = usize::try_from(&ctx.degree)
            .map_err(|_| Error::InvalidDegree("degree too large to search".into()))?;
        UniformWords::new(ctx.group().order(), ctx.alphabet(), d, n)?;
        Ok(WordSearchExtractor { n, ctx })
    }
}

impl Extractor for WordSearchExtractor {
    fn context(&self) -> &Context {
        &self.ctx
    }

    fn name(&self) -> String {
        format!("word-search(N={})", self.n)
    }

    fn plan_into(&self, _r: &Magnitude, _plan: &mut TowerPlan) -> Result<Magnitude> {
        Ok(Magnitude::from(self.n as u64))
    }

    fn constant_plan(&self) -> Option<BigUint> {
        Some(BigUint::from(self.n))
    }

    fn extract(&self, oracle: &Arc<ColoringOracle>) -> Result<Word> {
        expect_length(self, oracle)?;
        let d = usize::try_from(&self.ctx.degree).expect("checked at construction");
        let order = self.ctx.group().order();
        for w in UniformWords::new(order, self.ctx.alphabet(), d, self.n)? {
            let word = Word::from_symbols(self.ctx.alphabet(), order, w)?;
            if verify_witness(&word, oracle, &self.ctx.relation, &self.ctx.action)?.verified {
                return Ok(word);
            }
        }
        Err(Error::NotFound(format!(
            "no uniform word of length {} works",
            self.n
        )))
    }
}
