use std::sync::Arc;

use super::points::{PointSet, Scalar};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupAction};

const MAX_POINTS: usize = 10;

/// Distance-preserving permutations of a point set.
#[derive(Clone, Debug)]
pub struct Symmetry {
    pub group: Arc<FiniteGroup>,
    pub action: Arc<GroupAction>,
    /// Element `g` sends point `i` to `permutations[g][i]`.
    pub permutations: Vec<Vec<usize>>,
}

impl Symmetry {
    pub fn is_transitive(&self) -> bool {
        self.action.is_transitive()
    }

    pub fn orbit_count(&self) -> usize {
        self.action.orbits().class_count()
    }
}

fn row_signature(x: &PointSet, i: usize) -> Vec<Scalar> {
    let mut row: Vec<Scalar> = (0..x.len()).map(|j| x.sq_dist(i, j)).collect();
    row.sort_by(|a, b| a.to_f64().total_cmp(&b.to_f64()));
    row
}

/// All permutations preserving every pairwise distance, in lexicographic
/// order, so element 0 is the identity.
pub fn symmetry_group(x: &PointSet) -> Result<Symmetry> {
    let n = x.len();
    if n > MAX_POINTS {
        return Err(Error::SizeLimitExceeded(format!(
            "{n} points, at most {MAX_POINTS} are enumerated"
        )));
    }
    let tol = x.tolerance();
    let dist: Vec<Vec<Scalar>> = (0..n)
        .map(|i| (0..n).map(|j| x.sq_dist(i, j)).collect())
        .collect();
    let sigs: Vec<Vec<Scalar>> = (0..n).map(|i| row_signature(x, i)).collect();
    let compatible: Vec<Vec<bool>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    sigs[i]
                        .iter()
                        .zip(&sigs[j])
                        .all(|(a, b)| a.approx_eq(b, tol))
                })
                .collect()
        })
        .collect();

    let mut perms = Vec::new();
    let mut sigma = Vec::with_capacity(n);
    let mut used = vec![false; n];
    search(&dist, &compatible, tol, &mut sigma, &mut used, &mut perms);

    let group = Arc::new(FiniteGroup::from_permutations(&perms)?);
    let action = Arc::new(GroupAction::from_permutations(group.clone(), &perms)?);
    Ok(Symmetry {
        group,
        action,
        permutations: perms,
    })
}

fn search(
    dist: &[Vec<Scalar>],
    compatible: &[Vec<bool>],
    tol: f64,
    sigma: &mut Vec<usize>,
    used: &mut [bool],
    out: &mut Vec<Vec<usize>>,
) {
    let i = sigma.len();
    if i == dist.len() {
        out.push(sigma.clone());
        return;
    }
    for j in 0..dist.len() {
        if used[j] || !compatible[i][j] {
            continue;
        }
        if !(0..i).all(|k| dist[i][k].approx_eq(&dist[j][sigma[k]], tol)) {
            continue;
        }
        used[j] = true;
        sigma.push(j);
        search(dist, compatible, tol, sigma, used, out);
        sigma.pop();
        used[j] = false;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use std::str::FromStr;

    fn q(s: &str) -> BigRational {
        BigRational::from_str(s).unwrap()
    }

    #[test]
    fn segment_and_scalene() {
        let seg =
            symmetry_group(&PointSet::from_integers(1, &[vec![0], vec![1]]).unwrap()).unwrap();
        assert_eq!(seg.group.order(), 2);
        assert!(seg.is_transitive());
        let scalene = PointSet::from_integers(2, &[vec![0, 0], vec![3, 0], vec![0, 1]]).unwrap();
        let s = symmetry_group(&scalene).unwrap();
        assert_eq!(s.group.order(), 1);
        assert_eq!(s.orbit_count(), 3);
    }

    #[test]
    fn equilateral_triangle_in_the_plane_of_the_simplex() {
        // the standard simplex in R^3 is equilateral with exact coordinates
        let tri = PointSet::exact(
            3,
            vec![
                vec![q("1"), q("0"), q("0")],
                vec![q("0"), q("1"), q("0")],
                vec![q("0"), q("0"), q("1")],
            ],
        )
        .unwrap();
        let s = symmetry_group(&tri).unwrap();
        assert_eq!(s.group.order(), 6);
        assert!(s.is_transitive());
        // closure: products of returned permutations are returned permutations
        for a in &s.permutations {
            for b in &s.permutations {
                let ab: Vec<usize> = (0..3).map(|i| a[b[i]]).collect();
                assert!(s.permutations.contains(&ab));
            }
        }
    }

    #[test]
    fn size_guard() {
        let pts: Vec<Vec<i64>> = (0..11).map(|i| vec![i]).collect();
        assert!(matches!(
            symmetry_group(&PointSet::from_integers(1, &pts).unwrap()),
            Err(Error::SizeLimitExceeded(_))
        ));
    }
}
