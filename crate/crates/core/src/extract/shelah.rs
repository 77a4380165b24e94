//! Block sequences `W_1, …, W_n` such that the color of
//! `W_1(x_1) ⌢ … ⌢ W_n(x_n)` only depends on the classes of the `x_i`.
//!
//! With `f` the inner plan and `X` the alphabet:
//! `N(1, r) = f(r)` and `N(n+1, r) = N(n, r^|X|) + f(r^(|X|^N(n, r^|X|)))`.

use std::sync::Arc;

use num_bigint::BigUint;
use parking_lot::Mutex;

use super::{Color, ColoringOracle, Extractor, TowerPlan};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::magnitude::Magnitude;
use crate::words::Word;

/// Beyond this many blocks the recursion stays symbolic.
const UNROLL_CAP: u64 = 64;

/// `N(n, r)` for `inner`.
pub fn shelah_plan(
    inner: &dyn Extractor,
    n: &Magnitude,
    r: &Magnitude,
    plan: &mut TowerPlan,
) -> Result<Magnitude> {
    let limits = plan.limits;
    let name = format!("shelah[{}]", inner.name());
    if let Some(c0) = inner.constant_plan() {
        let total = n.mul(&Magnitude::from(c0.clone()), &limits)?;
        plan.record(&name, "N", format!("{} * {c0}", n.render(40)), &total);
        return Ok(total);
    }
    let count = match n.to_u64() {
        Some(0) => return Ok(Magnitude::zero()),
        Some(k) if k <= UNROLL_CAP => k,
        _ => {
            let total = Magnitude::call("N", vec![n.clone(), r.clone()], &limits)?;
            plan.record(
                &name,
                "N",
                format!("N({}, {})", n.render(40), r.render(40)),
                &total,
            );
            return Ok(total);
        }
    };
    let x = Magnitude::from(inner.context().alphabet() as u64);
    // r_j = r^(X^j)
    let mut bases = Vec::with_capacity(count as usize);
    let mut rj = r.clone();
    for _ in 0..count {
        bases.push(rj.clone());
        rj = rj.pow(&x, &limits)?;
    }
    let mut acc = inner.plan_into(&bases[count as usize - 1], plan)?;
    for j in (0..count as usize - 1).rev() {
        let colors = bases[j].pow(&x.pow(&acc, &limits)?, &limits)?;
        let block = inner.plan_into(&colors, plan)?;
        acc = acc.add(&block, &limits)?;
    }
    plan.record(&name, "N", format!("N({count}, {})", r.render(40)), &acc);
    Ok(acc)
}

fn exact_usize(m: &Magnitude, what: &str) -> Result<usize> {
    m.to_usize().ok_or_else(|| {
        Error::OverflowBudget(format!(
            "{what} {} is not a machine-sized length",
            m.render(40)
        ))
    })
}

/// Runs the block construction for `n` blocks on `oracle`, which must have
/// length `N(n, r)`.
pub fn shelah_sequence(
    inner: &dyn Extractor,
    n: usize,
    oracle: &Arc<ColoringOracle>,
) -> Result<Vec<Word>> {
    let limits = *oracle.limits();
    let xs = inner.context().alphabet();
    if oracle.alphabet() != xs {
        return Err(Error::AlphabetMismatch(format!(
            "block alphabet {xs}, oracle alphabet {}",
            oracle.alphabet()
        )));
    }
    let mut scratch = TowerPlan::new(limits);
    scratch.max_stages = 0;
    let total = shelah_plan(
        inner,
        &Magnitude::from(n as u64),
        oracle.colors(),
        &mut scratch,
    )?;
    if total.exact() != Some(oracle.length()) {
        return Err(Error::LengthMismatch {
            expected: total.to_report_string(),
            actual: oracle.length().to_string(),
        });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let x = Magnitude::from(xs as u64);
    let mut cur = oracle.clone();
    let mut tail = Vec::with_capacity(n);
    for m in (2..=n).rev() {
        let r = cur.colors().clone();
        let rx = r.pow(&x, &limits)?;
        let n1m = shelah_plan(inner, &Magnitude::from(m as u64 - 1), &rx, &mut scratch)?;
        let n1 = exact_usize(&n1m, "prefix length")?;
        let len = exact_usize(&Magnitude::from(cur.length().clone()), "oracle length")?;
        let n2 = len - n1;

        let c2 = suffix_coloring(&cur, n1, n2, xs, &x, &n1m, &limits)?;
        let w = inner.extract(&c2)?;

        let c1 = prefix_coloring(&cur, w.clone(), n1, inner, rx)?;
        tail.push(w);
        cur = c1;
    }
    let mut out = vec![inner.extract(&cur)?];
    out.extend(tail.into_iter().rev());
    Ok(out)
}

/// `c_2(y) = (c(x ⌢ y))_{x ∈ X^n1}`, enumerated lazily.
fn suffix_coloring(
    cur: &Arc<ColoringOracle>,
    n1: usize,
    n2: usize,
    xs: usize,
    x: &Magnitude,
    n1m: &Magnitude,
    limits: &Limits,
) -> Result<Arc<ColoringOracle>> {
    let colors = cur.colors().pow(&x.pow(n1m, limits)?, limits)?;
    let parent = cur.clone();
    let budget = limits.dense_symbols;
    let source = move |y: &[u32]| -> Result<Color> {
        let count = (xs as u128)
            .checked_pow(n1 as u32)
            .filter(|&c| c <= budget as u128)
            .ok_or_else(|| {
                Error::OverflowBudget(format!(
                    "{xs}^{n1} prefixes exceed the dense budget {budget}"
                ))
            })?;
        let mut word = vec![0u32; n1 + y.len()];
        word[n1..].copy_from_slice(y);
        let mut parts = Vec::with_capacity(count as usize);
        for _ in 0..count {
            parts.push(parent.query(&word)?);
            // odometer over the prefix, last letter fastest
            for i in (0..n1).rev() {
                word[i] += 1;
                if (word[i] as usize) < xs {
                    break;
                }
                word[i] = 0;
            }
        }
        Ok(Color::tuple(&parts))
    };
    Ok(ColoringOracle::new(
        format!("suffix({})", cur.label()),
        BigUint::from(n2),
        xs,
        colors,
        *limits,
        source,
    ))
}

/// `c_1(x) = (c(x ⌢ W(z)))_{z ∈ X}`.
fn prefix_coloring(
    cur: &Arc<ColoringOracle>,
    w: Word,
    n1: usize,
    inner: &dyn Extractor,
    colors: Magnitude,
) -> Result<Arc<ColoringOracle>> {
    let action = inner.context().action.clone();
    let xs = action.set_size();
    let parent = cur.clone();
    let budget = cur.limits().dense_symbols;
    let blocks: Mutex<Option<Arc<Vec<Vec<u32>>>>> = Mutex::new(None);
    let source = move |x: &[u32]| -> Result<Color> {
        let table = {
            let mut slot = blocks.lock();
            match &*slot {
                Some(t) => t.clone(),
                None => {
                    let t = Arc::new(
                        (0..xs)
                            .map(|z| w.substitute(z, &action)?.letters(budget))
                            .collect::<Result<Vec<_>>>()?,
                    );
                    *slot = Some(t.clone());
                    t
                }
            }
        };
        let mut parts = Vec::with_capacity(xs);
        let mut word = x.to_vec();
        for block in table.iter() {
            word.truncate(x.len());
            word.extend_from_slice(block);
            parts.push(parent.query(&word)?);
        }
        Ok(Color::tuple(&parts))
    };
    Ok(ColoringOracle::new(
        format!("prefix({})", cur.label()),
        BigUint::from(n1),
        xs,
        colors,
        *cur.limits(),
        source,
    ))
}
