use std::collections::{BTreeMap, HashMap};

use super::FiniteGroup;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolvabilityReport {
    pub solvable: bool,
    /// `G = D_0 ⊇ D_1 ⊇ …`, stopping at `{e}` or at the first repeat.
    pub derived_series: Vec<Vec<usize>>,
}

pub fn derived_series(g: &FiniteGroup) -> Vec<Vec<usize>> {
    let mut series = vec![g.elements().collect::<Vec<_>>()];
    loop {
        let last = series.last().unwrap();
        let next = g.commutator_subgroup(last);
        if next.len() == last.len() {
            return series;
        }
        series.push(next);
    }
}

pub fn is_solvable(g: &FiniteGroup) -> SolvabilityReport {
    let derived_series = derived_series(g);
    let solvable = derived_series.last().is_some_and(|s| s.len() == 1);
    SolvabilityReport {
        solvable,
        derived_series,
    }
}

/// `{e} = G_0 ◁ G_1 ◁ … ◁ G_n = G` with every `G_i / G_{i-1}` cyclic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubnormalCyclicSeries {
    /// Ascending chain of sorted element sets.
    pub subgroups: Vec<Vec<usize>>,
    /// `p_i = |G_i / G_{i-1}|` for `i = 1..=n`.
    pub factor_orders: Vec<usize>,
    /// Smallest element of `G_i` whose coset generates `G_i / G_{i-1}`.
    pub factor_generators: Vec<usize>,
}

impl SubnormalCyclicSeries {
    /// Validates a chain and derives factor orders and generators.
    pub fn from_subgroups(g: &FiniteGroup, subgroups: Vec<Vec<usize>>) -> Result<Self> {
        let subgroups: Vec<Vec<usize>> = subgroups
            .iter()
            .map(|s| g.require_subgroup(s))
            .collect::<Result<_>>()?;
        if subgroups.first().map(Vec::len) != Some(1) {
            return Err(Error::InvalidInput(
                "a series must start at the trivial subgroup".into(),
            ));
        }
        if subgroups.last().map(Vec::len) != Some(g.order()) {
            return Err(Error::InvalidInput(
                "a series must end at the whole group".into(),
            ));
        }
        let mut factor_orders = Vec::new();
        let mut factor_generators = Vec::new();
        for pair in subgroups.windows(2) {
            let (lo, hi) = (&pair[0], &pair[1]);
            let lo_mask = g.mask(lo);
            if hi.len() <= lo.len() || !lo.iter().all(|&x| g.mask(hi)[x]) {
                return Err(Error::InvalidInput(
                    "series terms must be strictly increasing".into(),
                ));
            }
            if !g.is_normal_in(lo, hi) {
                return Err(Error::NotNormal(format!("{lo:?} is not normal in {hi:?}")));
            }
            let p = hi.len() / lo.len();
            let gen = hi
                .iter()
                .copied()
                .find(|&x| !lo_mask[x] && coset_order(g, x, &lo_mask) == p)
                .ok_or_else(|| {
                    Error::InvalidInput(format!("factor {hi:?}/{lo:?} is not cyclic"))
                })?;
            factor_orders.push(p);
            factor_generators.push(gen);
        }
        Ok(SubnormalCyclicSeries {
            subgroups,
            factor_orders,
            factor_generators,
        })
    }

    pub fn len(&self) -> usize {
        self.factor_orders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factor_orders.is_empty()
    }

    /// True when every term of `self` also appears in `other` and `other`
    /// has strictly more terms.
    pub fn is_proper_refinement_of(&self, other: &SubnormalCyclicSeries) -> bool {
        self.subgroups.len() > other.subgroups.len()
            && other.subgroups.iter().all(|s| self.subgroups.contains(s))
    }
}

/// Order of `xK` in `<K, x>/K`, `K` given by its mask and normalized by `x`.
fn coset_order(g: &FiniteGroup, x: usize, k_mask: &[bool]) -> usize {
    let mut y = x;
    let mut n = 1;
    while !k_mask[y] {
        y = g.mul(y, x);
        n += 1;
    }
    n
}

/// Refines the derived series by repeatedly adjoining the smallest element
/// not yet in the current term.
pub fn subnormal_cyclic_series(g: &FiniteGroup) -> Result<SubnormalCyclicSeries> {
    let report = is_solvable(g);
    if !report.solvable {
        return Err(Error::NotSolvable);
    }
    let mut chain = vec![vec![0usize]];
    for target in report.derived_series.iter().rev().skip(1) {
        loop {
            let cur = chain.last().unwrap();
            if cur.len() == target.len() {
                break;
            }
            let mask = g.mask(cur);
            let x = *target.iter().find(|&&x| !mask[x]).unwrap();
            let mut gens = cur.clone();
            gens.push(x);
            chain.push(g.closure(&gens));
        }
    }
    SubnormalCyclicSeries::from_subgroups(g, chain)
}

/// Every subnormal series with cyclic factors, in depth-first order of
/// increasing adjoined element. Fails with `OverflowBudget` past `max_series`.
pub fn enumerate_subnormal_cyclic_series(
    g: &FiniteGroup,
    max_series: usize,
) -> Result<Vec<SubnormalCyclicSeries>> {
    let mut out = Vec::new();
    let mut chain = vec![vec![0usize]];
    let mut dead: HashMap<Vec<usize>, bool> = HashMap::new();
    extend(g, &mut chain, &mut out, &mut dead, max_series)?;
    Ok(out)
}

fn extend(
    g: &FiniteGroup,
    chain: &mut Vec<Vec<usize>>,
    out: &mut Vec<SubnormalCyclicSeries>,
    dead: &mut HashMap<Vec<usize>, bool>,
    max_series: usize,
) -> Result<bool> {
    let cur = chain.last().unwrap().clone();
    if cur.len() == g.order() {
        if out.len() >= max_series {
            return Err(Error::OverflowBudget(format!(
                "more than {max_series} subnormal series"
            )));
        }
        out.push(SubnormalCyclicSeries::from_subgroups(g, chain.clone())?);
        return Ok(true);
    }
    if dead.get(&cur) == Some(&true) {
        return Ok(false);
    }
    let mask = g.mask(&cur);
    let mut nexts: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let mut seen: Vec<Vec<usize>> = Vec::new();
    for x in g.elements().filter(|&x| !mask[x]) {
        let normalizes = cur.iter().all(|&k| mask[g.mul(g.mul(x, k), g.inv(x))]);
        if !normalizes {
            continue;
        }
        let mut gens = cur.clone();
        gens.push(x);
        let t = g.closure(&gens);
        if !seen.contains(&t) {
            seen.push(t.clone());
            nexts.insert(x, t);
        }
    }
    let mut any = false;
    for t in nexts.into_values() {
        chain.push(t);
        any |= extend(g, chain, out, dead, max_series)?;
        chain.pop();
    }
    if !any {
        dead.insert(cur, true);
    }
    Ok(any)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solvability_of_symmetric_groups() {
        assert!(is_solvable(&FiniteGroup::symmetric(4).unwrap()).solvable);
        assert!(!is_solvable(&FiniteGroup::symmetric(5).unwrap()).solvable);
        assert!(is_solvable(&FiniteGroup::cyclic(7).unwrap()).solvable);
        assert!(matches!(
            subnormal_cyclic_series(&FiniteGroup::symmetric(5).unwrap()),
            Err(Error::NotSolvable)
        ));
    }

    #[test]
    fn s3_default_series() {
        let g = FiniteGroup::symmetric(3).unwrap();
        let s = subnormal_cyclic_series(&g).unwrap();
        assert_eq!(s.factor_orders, vec![3, 2]);
        assert_eq!(s.subgroups[1], vec![0, 3, 4]);
    }

    #[test]
    fn s4_default_series() {
        let g = FiniteGroup::symmetric(4).unwrap();
        let s = subnormal_cyclic_series(&g).unwrap();
        assert_eq!(s.factor_orders, vec![2, 2, 3, 2]);
        assert_eq!(s.subgroups[2].len(), 4);
        assert_eq!(s.subgroups[3].len(), 12);
    }

    #[test]
    fn c6_series_are_valid() {
        let g = FiniteGroup::cyclic(6).unwrap();
        let s = subnormal_cyclic_series(&g).unwrap();
        assert_eq!(s.factor_orders.iter().product::<usize>(), 6);
        let all = enumerate_subnormal_cyclic_series(&g, 100).unwrap();
        let mut orders: Vec<Vec<usize>> = all.iter().map(|s| s.factor_orders.clone()).collect();
        orders.sort();
        assert_eq!(orders, vec![vec![2, 3], vec![3, 2], vec![6]]);
    }

    #[test]
    fn s4_has_only_one_factor_pattern() {
        let g = FiniteGroup::symmetric(4).unwrap();
        let all = enumerate_subnormal_cyclic_series(&g, 1000).unwrap();
        assert!(!all.is_empty());
        assert!(all.iter().all(|s| s.factor_orders == vec![2, 2, 3, 2]));
    }

    #[test]
    fn invalid_chains_are_rejected() {
        let g = FiniteGroup::symmetric(3).unwrap();
        // {e} < <(1 2)> < S_3: <(1 2)> is not normal in S_3
        let bad =
            SubnormalCyclicSeries::from_subgroups(&g, vec![vec![0], vec![0, 2], (0..6).collect()]);
        assert!(matches!(bad, Err(Error::NotNormal(_))));
        // S_3 / {e} is not cyclic
        let bad = SubnormalCyclicSeries::from_subgroups(&g, vec![vec![0], (0..6).collect()]);
        assert!(matches!(bad, Err(Error::InvalidInput(_))));
    }
}
