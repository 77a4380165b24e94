use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Pow};
use serde::Serialize;

use super::points::{PointSet, Scalar};
use super::symmetry::symmetry_group;
use crate::error::{Error, Result};
use crate::extract::{
    action_extractor, plan_length, run_extractor, ColoringOracle, Extractor, TowerPlan,
};
use crate::group::{subnormal_cyclic_series, GroupAction, SubnormalCyclicSeries};
use crate::hjdegree::hj_degree;
use crate::limits::Limits;
use crate::magnitude::Magnitude;
use crate::oracle::{verify_witness, ClassReport};
use crate::words::{Word, WordDoc};

#[derive(Clone, Debug, Serialize)]
pub struct DilationReport {
    pub holds: bool,
    pub degree: String,
    pub max_residual: f64,
    pub pairs_checked: usize,
}

/// Checks `|W(x) - W(x')|^2 = d |x - x'|^2` for every pair, summing over the
/// variables of `W` with multiplicity. Letters contribute nothing.
pub fn dilation_check(w: &Word, x: &PointSet, action: &GroupAction) -> Result<DilationReport> {
    if w.alphabet() != x.len()
        || action.set_size() != x.len()
        || w.var_space() != action.group().order()
    {
        return Err(Error::AlphabetMismatch(
            "word, point set and action disagree on sizes".into(),
        ));
    }
    let a = w.analyze();
    if a.per_variable.is_empty() {
        return Err(Error::InvalidDegree(
            "the dilation identity needs at least one variable".into(),
        ));
    }
    let d = BigInt::from(a.degree.clone());
    let tol = x.tolerance();
    let mut max_residual = 0f64;
    let mut holds = true;
    let mut pairs = 0;
    for p in 0..x.len() {
        for q in 0..p {
            let lhs = x.weighted_sq_dist(
                a.per_variable
                    .iter()
                    .map(|(&h, c)| (BigInt::from(c.clone()), action.act(h, p), action.act(h, q))),
            );
            let rhs = x.weighted_sq_dist([(d.clone(), p, q)]);
            let res = lhs.residual(&rhs);
            holds &= res.is_zero(tol);
            max_residual = max_residual.max(res.to_f64());
            pairs += 1;
        }
    }
    Ok(DilationReport {
        holds,
        degree: a.degree.to_string(),
        max_residual,
        pairs_checked: pairs,
    })
}

/// A solvable group of isometries of `X` with a series, ready to embed.
pub struct Cor17Setup {
    pub points: PointSet,
    pub action: Arc<GroupAction>,
    pub series: SubnormalCyclicSeries,
    /// HJ-degree `d` of the series.
    pub hj_degree: BigUint,
    /// Number of orbits `p`.
    pub orbits: usize,
    pub extractor: Arc<dyn Extractor>,
}

/// `subgroup` selects elements of the full symmetry group (all of it when
/// absent); `series` defaults to a refined derived series.
pub fn cor17_setup(
    points: PointSet,
    subgroup: Option<&[usize]>,
    series: Option<Vec<Vec<usize>>>,
) -> Result<Cor17Setup> {
    let sym = symmetry_group(&points)?;
    let action = match subgroup {
        None => sym.action.clone(),
        Some(h) => {
            let (_, inclusion) = sym.group.subgroup(h)?;
            Arc::new(sym.action.pull_back(&inclusion)?)
        }
    };
    let g = action.group().clone();
    let series = match series {
        None => subnormal_cyclic_series(&g)?,
        Some(chain) => SubnormalCyclicSeries::from_subgroups(&g, chain)?,
    };
    let hj_degree = hj_degree(&series)?.value;
    let orbits = action.orbits().class_count();
    let extractor = action_extractor(action.clone(), &series)?;
    Ok(Cor17Setup {
        points,
        action,
        series,
        hj_degree,
        orbits,
        extractor,
    })
}

impl Cor17Setup {
    /// `d^p`, the degree of the witness.
    pub fn witness_degree(&self) -> BigUint {
        Pow::pow(&self.hj_degree, self.orbits as u32)
    }

    /// `λ^2 = d^(-p)`.
    pub fn lambda_squared(&self) -> BigRational {
        BigRational::new(BigInt::one(), BigInt::from(self.witness_degree()))
    }

    pub fn lambda_expression(&self) -> String {
        format!("{}^(-{}/2)", self.hj_degree, self.orbits)
    }

    pub fn plan(&self, r: u64, limits: &Limits) -> Result<(Magnitude, TowerPlan)> {
        plan_length(self.extractor.as_ref(), &Magnitude::from(r), limits)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Embedding {
    pub length: String,
    pub hj_degree: String,
    pub orbits: usize,
    pub lambda: String,
    pub lambda_squared: String,
    /// `λ^2 d^p = 1`, checked in exact arithmetic.
    pub scaling_coherent: bool,
    pub witness: WordDoc,
    /// `f(x) / λ = W(x)`, as points of `X` per coordinate block.
    pub images: Vec<Vec<usize>>,
    pub isometric: bool,
    pub max_residual: f64,
    pub orbit_colors: Vec<ClassReport>,
    pub monochromatic: bool,
}

/// `f(x) = λ W(x)` for the witness `W` extracted from `oracle`, a coloring of
/// `X^N` read as the pullback `x ↦ c(λx)`.
pub fn cor17_embed(setup: &Cor17Setup, oracle: &Arc<ColoringOracle>) -> Result<Embedding> {
    let res = run_extractor(setup.extractor.as_ref(), oracle)?;
    let w = &res.witness;
    let x = &setup.points;
    let budget = oracle.limits().dense_symbols;
    let images: Vec<Vec<usize>> = (0..x.len())
        .map(|p| {
            Ok(w.substitute(p, &setup.action)?
                .letters(budget)?
                .into_iter()
                .map(|a| a as usize)
                .collect())
        })
        .collect::<Result<_>>()?;

    let lambda_sq = setup.lambda_squared();
    let scaling_coherent = &lambda_sq
        * BigRational::from_integer(BigInt::from(setup.witness_degree()))
        == BigRational::one();
    let mut isometric = true;
    let mut max_residual = 0f64;
    for p in 0..x.len() {
        for q in 0..p {
            let image = x.weighted_sq_dist(
                images[p]
                    .iter()
                    .zip(&images[q])
                    .map(|(&a, &b)| (BigInt::one(), a, b)),
            );
            let scaled = match image {
                Scalar::Exact(v) => Scalar::Exact(v * &lambda_sq),
                f => Scalar::Float(f.to_f64() * Scalar::Exact(lambda_sq.clone()).to_f64()),
            };
            let res = scaled.residual(&x.sq_dist(p, q));
            isometric &= res.is_zero(x.tolerance());
            max_residual = max_residual.max(res.to_f64());
        }
    }
    let report = verify_witness(w, oracle, &setup.action.orbits(), &setup.action)?;
    Ok(Embedding {
        length: w.len().to_string(),
        hj_degree: setup.hj_degree.to_string(),
        orbits: setup.orbits,
        lambda: setup.lambda_expression(),
        lambda_squared: lambda_sq.to_string(),
        scaling_coherent,
        witness: WordDoc::from_word(w),
        images,
        isometric,
        max_residual,
        monochromatic: report.verified,
        orbit_colors: report.classes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extract::ColoringSpec;
    use crate::group::FiniteGroup;
    use crate::words::Symbol;
    use std::str::FromStr;

    fn segment() -> PointSet {
        PointSet::from_integers(1, &[vec![0], vec![1]]).unwrap()
    }

    fn simplex() -> PointSet {
        let q = |s: &str| BigRational::from_str(s).unwrap();
        PointSet::exact(
            3,
            vec![
                vec![q("1"), q("0"), q("0")],
                vec![q("0"), q("1"), q("0")],
                vec![q("0"), q("0"), q("1")],
            ],
        )
        .unwrap()
    }

    #[test]
    fn segment_dilation() {
        let a = GroupAction::regular(Arc::new(FiniteGroup::cyclic(2).unwrap()));
        let w = Word::from_symbols(
            2,
            2,
            vec![Symbol::Var(0), Symbol::Var(1), Symbol::Letter(0)],
        )
        .unwrap();
        let rep = dilation_check(&w, &segment(), &a).unwrap();
        assert!(rep.holds);
        assert_eq!(rep.max_residual, 0.0);
        let constant = Word::from_symbols(2, 2, vec![Symbol::Letter(1)]).unwrap();
        assert!(matches!(
            dilation_check(&constant, &segment(), &a),
            Err(Error::InvalidDegree(_))
        ));
    }

    #[test]
    fn triangle_rotations_dilate_by_three() {
        let setup = cor17_setup(simplex(), Some(&[0, 3, 4]), None).unwrap();
        let w = Word::from_symbols(
            3,
            3,
            vec![
                Symbol::Var(2),
                Symbol::Letter(1),
                Symbol::Var(0),
                Symbol::Var(1),
            ],
        )
        .unwrap();
        let rep = dilation_check(&w, &setup.points, &setup.action).unwrap();
        assert!(rep.holds);
        assert_eq!(rep.degree, "3");
        assert_eq!(setup.hj_degree, BigUint::from(9u32));
        assert_eq!(
            setup.lambda_squared(),
            BigRational::from_str("1/9").unwrap()
        );
        let (n, _) = setup.plan(2, &Limits::default()).unwrap();
        assert!(!n.is_exact());
    }

    #[test]
    fn float_residual_is_small() {
        let h = 3f64.sqrt() / 2.0;
        let tri =
            PointSet::float(2, vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.5, h]], 1e-9).unwrap();
        let sym = symmetry_group(&tri).unwrap();
        assert_eq!(sym.group.order(), 6);
        let w = Word::from_symbols(3, 6, (0..6).map(Symbol::Var).collect()).unwrap();
        let rep = dilation_check(&w, &tri, &sym.action).unwrap();
        assert!(rep.holds && rep.max_residual <= 1e-9);
    }

    #[test]
    fn segment_embedding() {
        let setup = cor17_setup(segment(), None, None).unwrap();
        assert_eq!(setup.lambda_expression(), "2^(-1/2)");
        let (n, _) = setup.plan(2, &Limits::default()).unwrap();
        assert_eq!(n, Magnitude::from(3));
        for seed in 0..20 {
            let oracle = ColoringSpec::Random { seed: Some(seed) }
                .build(3, 2, 2, 0, Limits::default())
                .unwrap();
            let e = cor17_embed(&setup, &oracle).unwrap();
            assert!(e.isometric && e.monochromatic && e.scaling_coherent);
            assert_eq!(e.max_residual, 0.0);
        }
    }
}
