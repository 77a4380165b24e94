//! Non-negative integers that stay exact while they fit under the digit
//! guard and degrade to symbolic expressions beyond it.
//!
//! Every symbolic value is strictly larger than every exact value that fits
//! under the guard: symbolic terms only arise from operations whose exact
//! result overflowed, and all operations here are monotone.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::limits::Limits;

#[derive(Clone, PartialEq, Eq)]
pub enum Magnitude {
    Exact(BigUint),
    Symbolic(Arc<Symbolic>),
}

#[derive(Debug, PartialEq, Eq)]
pub struct Symbolic {
    pub expr: Expr,
    depth: u64,
}

#[derive(Debug, PartialEq, Eq)]
pub enum Expr {
    Add(Magnitude, Magnitude),
    Mul(Magnitude, Magnitude),
    Pow(Magnitude, Magnitude),
    /// An opaque named function application, e.g. an un-unrolled recursion.
    Call(String, Vec<Magnitude>),
}

impl Magnitude {
    pub fn zero() -> Self {
        Magnitude::Exact(BigUint::zero())
    }

    pub fn one() -> Self {
        Magnitude::Exact(BigUint::one())
    }

    pub fn exact(&self) -> Option<&BigUint> {
        match self {
            Magnitude::Exact(v) => Some(v),
            Magnitude::Symbolic(_) => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Magnitude::Exact(_))
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.exact().and_then(|v| v.to_u64())
    }

    pub fn to_usize(&self) -> Option<usize> {
        self.exact().and_then(|v| v.to_usize())
    }

    /// `self <= bound`; symbolic values exceed every bound.
    pub fn le_u64(&self, bound: u64) -> bool {
        self.to_u64().is_some_and(|v| v <= bound)
    }

    fn depth(&self) -> u64 {
        match self {
            Magnitude::Exact(_) => 0,
            Magnitude::Symbolic(s) => s.depth,
        }
    }

    fn symbolic(expr: Expr, limits: &Limits) -> Result<Self> {
        let depth = match &expr {
            Expr::Add(a, b) | Expr::Mul(a, b) | Expr::Pow(a, b) => a.depth().max(b.depth()),
            Expr::Call(_, args) => args.iter().map(Magnitude::depth).max().unwrap_or(0),
        } + 1;
        if depth > limits.digit_guard {
            return Err(Error::OverflowBudget(format!(
                "symbolic expression depth {depth} exceeds the digit guard {}",
                limits.digit_guard
            )));
        }
        Ok(Magnitude::Symbolic(Arc::new(Symbolic { expr, depth })))
    }

    fn fits(value: &BigUint, limits: &Limits) -> bool {
        value.bits() <= limits.guard_bits()
    }

    pub fn add(&self, other: &Magnitude, limits: &Limits) -> Result<Magnitude> {
        match (self, other) {
            (Magnitude::Exact(a), Magnitude::Exact(b)) => {
                let sum = a + b;
                if Self::fits(&sum, limits) {
                    Ok(Magnitude::Exact(sum))
                } else {
                    Self::symbolic(Expr::Add(self.clone(), other.clone()), limits)
                }
            }
            (Magnitude::Exact(a), _) if a.is_zero() => Ok(other.clone()),
            (_, Magnitude::Exact(b)) if b.is_zero() => Ok(self.clone()),
            _ => Self::symbolic(Expr::Add(self.clone(), other.clone()), limits),
        }
    }

    pub fn mul(&self, other: &Magnitude, limits: &Limits) -> Result<Magnitude> {
        match (self, other) {
            (Magnitude::Exact(a), Magnitude::Exact(b)) => {
                if a.bits() + b.bits() <= limits.guard_bits() + 1 {
                    let prod = a * b;
                    if Self::fits(&prod, limits) {
                        return Ok(Magnitude::Exact(prod));
                    }
                }
                Self::symbolic(Expr::Mul(self.clone(), other.clone()), limits)
            }
            (Magnitude::Exact(a), _) | (_, Magnitude::Exact(a)) if a.is_zero() => {
                Ok(Magnitude::zero())
            }
            (Magnitude::Exact(a), _) if a.is_one() => Ok(other.clone()),
            (_, Magnitude::Exact(b)) if b.is_one() => Ok(self.clone()),
            _ => Self::symbolic(Expr::Mul(self.clone(), other.clone()), limits),
        }
    }

    pub fn pow(&self, exponent: &Magnitude, limits: &Limits) -> Result<Magnitude> {
        if let Magnitude::Exact(e) = exponent {
            if e.is_zero() {
                return Ok(Magnitude::one());
            }
            if e.is_one() {
                return Ok(self.clone());
            }
        }
        if let Magnitude::Exact(b) = self {
            if b.is_zero() || b.is_one() {
                return Ok(self.clone());
            }
            if let Some(e) = exponent.to_u64() {
                // bits(b^e) <= e * bits(b)
                let lower = e.saturating_mul(b.bits() - 1);
                if lower <= limits.guard_bits() {
                    let e32 = u32::try_from(e)
                        .map_err(|_| Error::Internal("exponent overflow".into()))?;
                    let value = b.pow(e32);
                    if Self::fits(&value, limits) {
                        return Ok(Magnitude::Exact(value));
                    }
                }
            }
        }
        Self::symbolic(Expr::Pow(self.clone(), exponent.clone()), limits)
    }

    pub fn call(name: &str, args: Vec<Magnitude>, limits: &Limits) -> Result<Magnitude> {
        Self::symbolic(Expr::Call(name.to_string(), args), limits)
    }

    /// Compact rendering bounded by `max_chars`; exact values longer than
    /// the bound are summarized by their digit count.
    pub fn render(&self, max_chars: usize) -> String {
        let mut out = String::new();
        self.render_into(&mut out, max_chars);
        out
    }

    fn render_into(&self, out: &mut String, budget: usize) {
        if out.len() >= budget {
            out.push('…');
            return;
        }
        match self {
            Magnitude::Exact(v) => {
                let s = v.to_str_radix(10);
                if s.len() <= 48 {
                    out.push_str(&s);
                } else {
                    out.push_str(&format!("<{}-digit integer>", s.len()));
                }
            }
            Magnitude::Symbolic(sym) => match &sym.expr {
                Expr::Add(a, b) => {
                    out.push('(');
                    a.render_into(out, budget);
                    out.push_str(" + ");
                    b.render_into(out, budget);
                    out.push(')');
                }
                Expr::Mul(a, b) => {
                    a.render_into(out, budget);
                    out.push('*');
                    b.render_into(out, budget);
                }
                Expr::Pow(a, b) => {
                    a.render_into(out, budget);
                    out.push_str("^(");
                    b.render_into(out, budget);
                    out.push(')');
                }
                Expr::Call(name, args) => {
                    out.push_str(name);
                    out.push('(');
                    for (i, a) in args.iter().enumerate() {
                        if i > 0 {
                            out.push_str(", ");
                        }
                        a.render_into(out, budget);
                    }
                    out.push(')');
                }
            },
        }
    }

    /// Full decimal string for exact values, bounded rendering otherwise.
    pub fn to_report_string(&self) -> String {
        match self {
            Magnitude::Exact(v) => v.to_str_radix(10),
            Magnitude::Symbolic(_) => self.render(240),
        }
    }
}

impl From<u64> for Magnitude {
    fn from(v: u64) -> Self {
        Magnitude::Exact(BigUint::from(v))
    }
}

impl From<BigUint> for Magnitude {
    fn from(v: BigUint) -> Self {
        Magnitude::Exact(v)
    }
}

impl fmt::Debug for Magnitude {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(120))
    }
}

impl fmt::Display for Magnitude {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(240))
    }
}
