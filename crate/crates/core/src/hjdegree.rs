//! HJ-degrees of subnormal series with cyclic factors.

use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{enumerate_subnormal_cyclic_series, FiniteGroup, SubnormalCyclicSeries};
use crate::limits::Limits;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HJDegree {
    pub value: BigUint,
    pub factor_orders: Vec<usize>,
    /// `d_0 = 1, d_i = d_{i-1}^{p_i} p_i^{p_i - 1}`.
    pub per_step: Vec<BigUint>,
}

#[derive(Serialize)]
struct Report<'a> {
    value: String,
    factor_orders: &'a [usize],
    per_step: Vec<String>,
}

impl HJDegree {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(Report {
            value: self.value.to_string(),
            factor_orders: &self.factor_orders,
            per_step: self.per_step.iter().map(|d| d.to_string()).collect(),
        })
        .expect("plain data")
    }
}

pub fn hj_degree(series: &SubnormalCyclicSeries) -> Result<HJDegree> {
    hj_degree_of_orders(&series.factor_orders, &Limits::default())
}

/// Both the closed product and the step recursion, asserted equal.
pub fn hj_degree_of_orders(p: &[usize], limits: &Limits) -> Result<HJDegree> {
    if p.contains(&0) {
        return Err(Error::InvalidInput("factor orders must be positive".into()));
    }
    let bits: f64 = p
        .iter()
        .enumerate()
        .map(|(i, &pi)| {
            (pi as f64 - 1.0)
                * p[i + 1..].iter().map(|&q| q as f64).product::<f64>()
                * (pi as f64).log2()
        })
        .sum();
    if bits > limits.guard_bits() as f64 {
        return Err(Error::OverflowBudget(format!(
            "HJ-degree has about {bits:.0} bits"
        )));
    }

    let mut closed = BigUint::one();
    for (i, &pi) in p.iter().enumerate() {
        let tail: usize = p[i + 1..].iter().product();
        closed *= BigUint::from(pi).pow(((pi - 1) * tail) as u32);
    }

    let mut per_step = vec![BigUint::one()];
    for &pi in p {
        let prev = per_step.last().unwrap();
        per_step.push(prev.pow(pi as u32) * BigUint::from(pi).pow(pi as u32 - 1));
    }
    let value = per_step.last().unwrap().clone();
    if value != closed {
        return Err(Error::Internal(format!(
            "HJ-degree formulas disagree: {closed} vs {value}"
        )));
    }
    Ok(HJDegree {
        value,
        factor_orders: p.to_vec(),
        per_step,
    })
}

/// HJ-degree of every subnormal cyclic series, in enumeration order.
pub fn all_hj_degrees(
    g: &FiniteGroup,
    max_series: usize,
) -> Result<Vec<(SubnormalCyclicSeries, HJDegree)>> {
    enumerate_subnormal_cyclic_series(g, max_series)?
        .into_iter()
        .map(|s| {
            let d = hj_degree(&s)?;
            Ok((s, d))
        })
        .collect()
}
