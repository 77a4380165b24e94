use std::sync::Arc;

use super::FiniteGroup;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHomomorphism {
    src: Arc<FiniteGroup>,
    dst: Arc<FiniteGroup>,
    map: Vec<usize>,
}

impl GroupHomomorphism {
    /// Checks `map(ab) = map(a)map(b)` for all pairs.
    pub fn new(src: Arc<FiniteGroup>, dst: Arc<FiniteGroup>, map: Vec<usize>) -> Result<Self> {
        if map.len() != src.order() {
            return Err(Error::InvalidInput(
                "homomorphism table has the wrong length".into(),
            ));
        }
        if map.iter().any(|&y| y >= dst.order()) {
            return Err(Error::IndexOutOfRange(
                "homomorphism image outside the codomain".into(),
            ));
        }
        if map[0] != 0 {
            return Err(Error::InvalidInput(
                "identity is not mapped to the identity".into(),
            ));
        }
        for a in src.elements() {
            for b in src.elements() {
                if map[src.mul(a, b)] != dst.mul(map[a], map[b]) {
                    return Err(Error::InvalidInput(format!(
                        "map is not multiplicative at ({a}, {b})"
                    )));
                }
            }
        }
        Ok(GroupHomomorphism { src, dst, map })
    }

    pub fn identity(group: Arc<FiniteGroup>) -> Self {
        let map = group.elements().collect();
        GroupHomomorphism {
            src: group.clone(),
            dst: group,
            map,
        }
    }

    #[inline]
    pub fn apply(&self, g: usize) -> usize {
        self.map[g]
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn src(&self) -> &Arc<FiniteGroup> {
        &self.src
    }

    pub fn dst(&self) -> &Arc<FiniteGroup> {
        &self.dst
    }

    pub fn kernel(&self) -> Vec<usize> {
        self.src.elements().filter(|&g| self.map[g] == 0).collect()
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.dst.order()];
        for &y in &self.map {
            hit[y] = true;
        }
        hit.into_iter().all(|b| b)
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().len() == 1
    }
}

/// `G/H` with cosets indexed in increasing order of their smallest member,
/// and the projection `G -> G/H`.
pub fn quotient(
    g: &Arc<FiniteGroup>,
    h: &[usize],
) -> Result<(Arc<FiniteGroup>, GroupHomomorphism)> {
    let h = g.require_subgroup(h)?;
    if !g.is_normal(&h) {
        return Err(Error::NotNormal(format!(
            "{h:?} is not invariant under conjugation"
        )));
    }
    let mut coset = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for x in g.elements() {
        if coset[x] != usize::MAX {
            continue;
        }
        for &k in &h {
            coset[g.mul(x, k)] = reps.len();
        }
        reps.push(x);
    }
    let m = reps.len();
    let mut table = vec![vec![0usize; m]; m];
    for (i, &a) in reps.iter().enumerate() {
        for (j, &b) in reps.iter().enumerate() {
            table[i][j] = coset[g.mul(a, b)];
        }
    }
    let q = Arc::new(FiniteGroup::from_cayley(&table)?);
    let proj = GroupHomomorphism::new(g.clone(), q.clone(), coset)?;
    Ok((q, proj))
}

/// Left coset decomposition `g = reps[coset[g]] * subgroup[section[g]]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transversal {
    /// Sorted elements of `H`.
    pub subgroup: Vec<usize>,
    /// For every `g`, the position in `subgroup` of `h_g`.
    pub section: Vec<usize>,
    /// Coset representatives, `reps[0]` the identity.
    pub reps: Vec<usize>,
    /// For every `g`, the index of its coset representative.
    pub coset: Vec<usize>,
}

impl Transversal {
    pub fn index(&self) -> usize {
        self.reps.len()
    }

    /// `φ(g)` as an element of the ambient group.
    pub fn phi(&self, g: usize) -> usize {
        self.subgroup[self.section[g]]
    }
}

/// Representatives are `e` followed by the smallest uncovered elements.
pub fn transversal_section(g: &FiniteGroup, h: &[usize]) -> Result<Transversal> {
    let h = g.require_subgroup(h)?;
    let mut pos = vec![usize::MAX; g.order()];
    for (i, &x) in h.iter().enumerate() {
        pos[x] = i;
    }
    let mut coset = vec![usize::MAX; g.order()];
    let mut section = vec![0usize; g.order()];
    let mut reps = Vec::new();
    for t in g.elements() {
        if coset[t] != usize::MAX {
            continue;
        }
        for (i, &k) in h.iter().enumerate() {
            let x = g.mul(t, k);
            coset[x] = reps.len();
            section[x] = i;
        }
        reps.push(t);
    }
    debug_assert!(section.iter().zip(g.elements()).all(|(&s, x)| {
        let r = reps[coset[x]];
        pos[g.mul(g.inv(r), x)] == s
    }));
    Ok(Transversal {
        subgroup: h,
        section,
        reps,
        coset,
    })
}
