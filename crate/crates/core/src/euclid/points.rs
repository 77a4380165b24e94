use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde_json::Value;

use crate::error::{Error, Result};

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// An exact rational or a float compared within the set's tolerance.
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Exact(BigRational),
    Float(f64),
}

impl Scalar {
    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(q) => q.to_f64().unwrap_or(f64::NAN),
            Scalar::Float(f) => *f,
        }
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        match self {
            Scalar::Exact(q) => q.is_zero(),
            Scalar::Float(f) => f.abs() <= tol,
        }
    }

    /// `|self - other|`, exact when both are.
    pub fn residual(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact((a - b).abs()),
            _ => Scalar::Float((self.to_f64() - other.to_f64()).abs()),
        }
    }

    pub fn approx_eq(&self, other: &Scalar, tol: f64) -> bool {
        self.residual(other).is_zero(tol)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(q) => write!(f, "{q}"),
            Scalar::Float(x) => write!(f, "{x}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Coords {
    Exact(Vec<Vec<BigRational>>),
    Float(Vec<Vec<f64>>),
}

/// Distinct points of `R^dim`.
#[derive(Clone, Debug, PartialEq)]
pub struct PointSet {
    dim: usize,
    coords: Coords,
    tolerance: f64,
}

fn parse_coordinate(v: &Value) -> Result<Scalar> {
    match v {
        Value::Number(n) if n.is_i64() || n.is_u64() => {
            let i =
                BigInt::from_str(&n.to_string()).map_err(|e| Error::InvalidInput(e.to_string()))?;
            Ok(Scalar::Exact(BigRational::from_integer(i)))
        }
        Value::Number(n) => Ok(Scalar::Float(n.as_f64().unwrap_or(f64::NAN))),
        Value::String(s) => BigRational::from_str(s.trim())
            .map(Scalar::Exact)
            .map_err(|_| Error::InvalidInput(format!("coordinate {s:?} is not p/q"))),
        other => Err(Error::InvalidInput(format!(
            "coordinate {other} is neither a number nor p/q"
        ))),
    }
}

impl PointSet {
    pub fn exact(dim: usize, points: Vec<Vec<BigRational>>) -> Result<Self> {
        Self::checked(dim, Coords::Exact(points), DEFAULT_TOLERANCE)
    }

    pub fn from_integers(dim: usize, points: &[Vec<i64>]) -> Result<Self> {
        let pts = points
            .iter()
            .map(|p| {
                p.iter()
                    .map(|&c| BigRational::from_integer(c.into()))
                    .collect()
            })
            .collect();
        Self::exact(dim, pts)
    }

    pub fn float(dim: usize, points: Vec<Vec<f64>>, tolerance: f64) -> Result<Self> {
        Self::checked(dim, Coords::Float(points), tolerance)
    }

    fn checked(dim: usize, coords: Coords, tolerance: f64) -> Result<Self> {
        let (n, bad_dim) = match &coords {
            Coords::Exact(p) => (p.len(), p.iter().any(|x| x.len() != dim)),
            Coords::Float(p) => (
                p.len(),
                p.iter()
                    .any(|x| x.len() != dim || x.iter().any(|c| !c.is_finite())),
            ),
        };
        if n == 0 {
            return Err(Error::InvalidInput(
                "a point set needs at least one point".into(),
            ));
        }
        if bad_dim {
            return Err(Error::InvalidInput(format!(
                "every point needs {dim} finite coordinates"
            )));
        }
        if tolerance.is_nan() || tolerance < 0.0 {
            return Err(Error::InvalidInput("tolerance must be non-negative".into()));
        }
        let set = PointSet {
            dim,
            coords,
            tolerance,
        };
        for i in 0..n {
            for j in 0..i {
                if set.sq_dist(i, j).is_zero(tolerance) {
                    return Err(Error::DegenerateSet(format!("points {j} and {i} coincide")));
                }
            }
        }
        Ok(set)
    }

    /// `{"dim": n, "points": [[num or "p/q", …], …], "tolerance": t}`. Any
    /// non-integer number switches the whole set to float mode.
    pub fn from_json(v: &Value) -> Result<Self> {
        let dim = v.get("dim").and_then(Value::as_u64).ok_or_else(|| {
            Error::InvalidInput("point set needs a non-negative integer \"dim\"".into())
        })? as usize;
        let tolerance = match v.get("tolerance") {
            None | Some(Value::Null) => DEFAULT_TOLERANCE,
            Some(t) => t
                .as_f64()
                .ok_or_else(|| Error::InvalidInput("\"tolerance\" must be a number".into()))?,
        };
        let rows = v
            .get("points")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::InvalidInput("point set needs a \"points\" array".into()))?;
        let mut parsed = Vec::with_capacity(rows.len());
        for row in rows {
            let row = row
                .as_array()
                .ok_or_else(|| Error::InvalidInput("each point is an array".into()))?;
            parsed.push(
                row.iter()
                    .map(parse_coordinate)
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        if parsed
            .iter()
            .flatten()
            .all(|s| matches!(s, Scalar::Exact(_)))
        {
            let pts = parsed
                .into_iter()
                .map(|r| {
                    r.into_iter()
                        .map(|s| {
                            if let Scalar::Exact(q) = s {
                                q
                            } else {
                                unreachable!()
                            }
                        })
                        .collect()
                })
                .collect();
            Self::checked(dim, Coords::Exact(pts), tolerance)
        } else {
            let pts = parsed
                .into_iter()
                .map(|r| r.iter().map(Scalar::to_f64).collect())
                .collect();
            Self::checked(dim, Coords::Float(pts), tolerance)
        }
    }

    pub fn to_json(&self) -> Value {
        let points: Vec<Vec<Value>> = match &self.coords {
            Coords::Exact(p) => p
                .iter()
                .map(|r| r.iter().map(|q| Value::String(q.to_string())).collect())
                .collect(),
            Coords::Float(p) => p
                .iter()
                .map(|r| r.iter().map(|&f| serde_json::json!(f)).collect())
                .collect(),
        };
        serde_json::json!({ "dim": self.dim, "points": points, "tolerance": self.tolerance })
    }

    pub fn len(&self) -> usize {
        match &self.coords {
            Coords::Exact(p) => p.len(),
            Coords::Float(p) => p.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.coords, Coords::Exact(_))
    }

    pub fn coordinate(&self, i: usize, k: usize) -> Scalar {
        match &self.coords {
            Coords::Exact(p) => Scalar::Exact(p[i][k].clone()),
            Coords::Float(p) => Scalar::Float(p[i][k]),
        }
    }

    pub fn sq_dist(&self, i: usize, j: usize) -> Scalar {
        match &self.coords {
            Coords::Exact(p) => Scalar::Exact(
                p[i].iter()
                    .zip(&p[j])
                    .map(|(a, b)| (a - b) * (a - b))
                    .fold(BigRational::zero(), |s, t| s + t),
            ),
            Coords::Float(p) => {
                Scalar::Float(p[i].iter().zip(&p[j]).map(|(a, b)| (a - b) * (a - b)).sum())
            }
        }
    }

    /// `k * |x_i - x_j|^2` summed over `(k, i, j)`.
    pub fn weighted_sq_dist(
        &self,
        terms: impl IntoIterator<Item = (BigInt, usize, usize)>,
    ) -> Scalar {
        match &self.coords {
            Coords::Exact(_) => {
                let mut s = BigRational::zero();
                for (k, i, j) in terms {
                    if let Scalar::Exact(d) = self.sq_dist(i, j) {
                        s += BigRational::from_integer(k) * d;
                    }
                }
                Scalar::Exact(s)
            }
            Coords::Float(_) => Scalar::Float(
                terms
                    .into_iter()
                    .map(|(k, i, j)| {
                        k.to_f64().unwrap_or(f64::INFINITY) * self.sq_dist(i, j).to_f64()
                    })
                    .sum(),
            ),
        }
    }
}
