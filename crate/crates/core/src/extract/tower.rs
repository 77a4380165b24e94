use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::magnitude::Magnitude;

/// `T(1,r) = 1`, `T(2,r) = r + 1`, `T(n+1,r) = T(n, 2^r)`, exactly.
pub fn t_function(n: u64, r: u64, limits: &Limits) -> Result<BigUint> {
    match t_magnitude(n, &Magnitude::from(r), limits)? {
        Magnitude::Exact(v) => Ok(v),
        Magnitude::Symbolic(_) => Err(Error::OverflowBudget(format!(
            "T({n},{r}) has more than {} decimal digits",
            limits.digit_guard
        ))),
    }
}

/// `T(n, r)` for a possibly symbolic `r`.
pub fn t_magnitude(n: u64, r: &Magnitude, limits: &Limits) -> Result<Magnitude> {
    if n == 0 {
        return Err(Error::InvalidInput("T(n, r) needs n >= 1".into()));
    }
    if r.to_u64() == Some(0) {
        return Err(Error::InvalidInput("T(n, r) needs r >= 1".into()));
    }
    if n == 1 {
        return Ok(Magnitude::one());
    }
    let two = Magnitude::from(2);
    let mut x = r.clone();
    for _ in 2..n {
        x = two.pow(&x, limits)?;
    }
    x.add(&Magnitude::one(), limits)
}

/// One line of a length plan.
#[derive(Clone, Debug, Serialize)]
pub struct PlanStage {
    pub stage: String,
    pub quantity: String,
    pub expression: String,
    #[serde(serialize_with = "as_report_string")]
    pub value: Magnitude,
    pub within_dense_budget: bool,
}

fn as_report_string<S: serde::Serializer>(
    m: &Magnitude,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&m.to_report_string())
}

/// Recursion trace of a length computation.
#[derive(Clone, Debug, Serialize)]
pub struct TowerPlan {
    #[serde(skip)]
    pub limits: Limits,
    pub stages: Vec<PlanStage>,
    /// Stages dropped once the trace reached `max_stages`.
    pub omitted: u64,
    #[serde(skip)]
    pub max_stages: usize,
}

impl TowerPlan {
    pub fn new(limits: Limits) -> Self {
        TowerPlan {
            limits,
            stages: Vec::new(),
            omitted: 0,
            max_stages: 200,
        }
    }

    pub fn record(&mut self, stage: &str, quantity: &str, expression: String, value: &Magnitude) {
        if self.stages.len() >= self.max_stages {
            self.omitted += 1;
            return;
        }
        self.stages.push(PlanStage {
            stage: stage.to_string(),
            quantity: quantity.to_string(),
            expression,
            value: value.clone(),
            within_dense_budget: value.le_u64(self.limits.dense_symbols),
        });
    }

    pub fn exceeds_dense_budget(&self) -> bool {
        self.stages.iter().any(|s| !s.within_dense_budget)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tower_values() {
        let l = Limits::default();
        assert_eq!(t_function(3, 2, &l).unwrap(), BigUint::from(5u32));
        assert_eq!(t_function(2, 5, &l).unwrap(), BigUint::from(6u32));
        assert_eq!(t_function(4, 1, &l).unwrap(), BigUint::from(5u32));
        assert_eq!(t_function(1, 9, &l).unwrap(), BigUint::from(1u32));
        assert_eq!(t_function(3, 4, &l).unwrap(), BigUint::from(17u32));
        assert_eq!(t_function(4, 2, &l).unwrap(), BigUint::from(17u32));
        assert_eq!(t_function(5, 2, &l).unwrap(), BigUint::from(65537u32));
    }

    #[test]
    fn tower_overflow_is_a_budget_error() {
        let l = Limits::default();
        assert!(t_function(7, 2, &l).unwrap_err().is_budget());
        assert!(!t_magnitude(7, &Magnitude::from(2), &l).unwrap().is_exact());
    }
}
