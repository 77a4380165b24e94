use std::sync::Arc;

use super::{FiniteGroup, GroupHomomorphism};
use crate::error::{Error, Result};

/// A left action of a finite group on the points `0..set_size`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAction {
    group: Arc<FiniteGroup>,
    set_size: usize,
    act: Vec<u32>,
}

impl GroupAction {
    /// Validates both action axioms exhaustively.
    pub fn new(group: Arc<FiniteGroup>, set_size: usize, act: Vec<Vec<usize>>) -> Result<Self> {
        if set_size == 0 {
            return Err(Error::InvalidInput("an action needs a nonempty set".into()));
        }
        if act.len() != group.order() || act.iter().any(|row| row.len() != set_size) {
            return Err(Error::InvalidInput(format!(
                "action table must be {} x {set_size}",
                group.order()
            )));
        }
        if act.iter().flatten().any(|&x| x >= set_size) {
            return Err(Error::IndexOutOfRange(
                "action table entry outside the set".into(),
            ));
        }
        let flat: Vec<u32> = act.iter().flatten().map(|&x| x as u32).collect();
        let a = GroupAction {
            group,
            set_size,
            act: flat,
        };
        if (0..set_size).any(|x| a.act(0, x) != x) {
            return Err(Error::InvalidInput(
                "identity does not act trivially".into(),
            ));
        }
        let g = &a.group;
        for h in g.elements() {
            for k in g.elements() {
                let hk = g.mul(h, k);
                if (0..set_size).any(|x| a.act(h, a.act(k, x)) != a.act(hk, x)) {
                    return Err(Error::InvalidInput(format!(
                        "h(kx) != (hk)x for h={h}, k={k}"
                    )));
                }
            }
        }
        Ok(a)
    }

    /// Left multiplication of a group on itself.
    pub fn regular(group: Arc<FiniteGroup>) -> Self {
        let n = group.order();
        let mut act = vec![0u32; n * n];
        for g in 0..n {
            for x in 0..n {
                act[g * n + x] = group.mul(g, x) as u32;
            }
        }
        GroupAction {
            group,
            set_size: n,
            act,
        }
    }

    /// The natural action of the permutation group `perms` (as returned by
    /// [`FiniteGroup::from_permutations`] ordering) on `0..k`.
    pub fn from_permutations(group: Arc<FiniteGroup>, perms: &[Vec<usize>]) -> Result<Self> {
        let k = perms.first().map_or(0, Vec::len);
        Self::new(group, k, perms.to_vec())
    }

    /// The natural action of `S_n` (as built by [`FiniteGroup::symmetric`])
    /// on `0..n`.
    pub fn symmetric_natural(n: usize) -> Result<Self> {
        let group = Arc::new(FiniteGroup::symmetric(n)?);
        Self::new(group, n, super::permutations_lex(n))
    }

    /// Restriction along a homomorphism `H -> G`.
    pub fn pull_back(&self, hom: &GroupHomomorphism) -> Result<Self> {
        if hom.dst().as_ref() != self.group.as_ref() {
            return Err(Error::InvalidInput(
                "homomorphism codomain is not the acting group".into(),
            ));
        }
        let act = hom
            .src()
            .elements()
            .map(|h| {
                (0..self.set_size)
                    .map(|x| self.act(hom.apply(h), x))
                    .collect()
            })
            .collect();
        Self::new(hom.src().clone(), self.set_size, act)
    }

    #[inline]
    pub fn act(&self, g: usize, x: usize) -> usize {
        self.act[g * self.set_size + x] as usize
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn set_size(&self) -> usize {
        self.set_size
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.group
            .elements()
            .map(|g| (0..self.set_size).map(|x| self.act(g, x)).collect())
            .collect()
    }

    pub fn is_regular_of(&self, group: &FiniteGroup) -> bool {
        self.group.as_ref() == group
            && self.set_size == group.order()
            && group
                .elements()
                .all(|g| group.elements().all(|x| self.act(g, x) == group.mul(g, x)))
    }

    /// Partition of the set into `H`-orbits, `H` a subgroup of the acting group.
    pub fn orbits_of(&self, h: &[usize]) -> Result<EquivalenceRelation> {
        let h = self.group.require_subgroup(h)?;
        let mut class = vec![usize::MAX; self.set_size];
        let mut next = 0;
        for x in 0..self.set_size {
            if class[x] != usize::MAX {
                continue;
            }
            for &g in &h {
                class[self.act(g, x)] = next;
            }
            next += 1;
        }
        EquivalenceRelation::from_class_ids(class)
    }

    pub fn orbits(&self) -> EquivalenceRelation {
        let all: Vec<usize> = self.group.elements().collect();
        self.orbits_of(&all).expect("the whole group is a subgroup")
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits().class_count() == 1
    }
}

/// A partition of `0..set_size`, with class ids numbered by first appearance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceRelation {
    class_id: Vec<usize>,
    class_count: usize,
}

impl EquivalenceRelation {
    /// Any labelling works; ids are renumbered canonically.
    pub fn from_class_ids(ids: Vec<usize>) -> Result<Self> {
        if ids.is_empty() {
            return Err(Error::InvalidInput(
                "equivalence relation on an empty set".into(),
            ));
        }
        let mut remap = std::collections::HashMap::new();
        let class_id: Vec<usize> = ids
            .iter()
            .map(|&c| {
                let n = remap.len();
                *remap.entry(c).or_insert(n)
            })
            .collect();
        Ok(EquivalenceRelation {
            class_count: remap.len(),
            class_id,
        })
    }

    /// Classes as listed, remaining points become singletons.
    pub fn from_classes(set_size: usize, classes: &[Vec<usize>]) -> Result<Self> {
        let mut ids = vec![usize::MAX; set_size];
        for (c, class) in classes.iter().enumerate() {
            for &x in class {
                if x >= set_size {
                    return Err(Error::IndexOutOfRange(format!(
                        "point {x} outside 0..{set_size}"
                    )));
                }
                if ids[x] != usize::MAX {
                    return Err(Error::InvalidInput(format!("point {x} is in two classes")));
                }
                ids[x] = c;
            }
        }
        let unassigned = ids.iter_mut().filter(|id| **id == usize::MAX);
        for (fresh, id) in (classes.len()..).zip(unassigned) {
            *id = fresh;
        }
        Self::from_class_ids(ids)
    }

    pub fn total(set_size: usize) -> Self {
        EquivalenceRelation {
            class_id: vec![0; set_size],
            class_count: 1,
        }
    }

    pub fn identity(set_size: usize) -> Self {
        EquivalenceRelation {
            class_id: (0..set_size).collect(),
            class_count: set_size,
        }
    }

    pub fn set_size(&self) -> usize {
        self.class_id.len()
    }

    pub fn class_count(&self) -> usize {
        self.class_count
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_id[x]
    }

    pub fn related(&self, x: usize, y: usize) -> bool {
        self.class_id[x] == self.class_id[y]
    }

    /// Classes in id order, each sorted.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.class_count];
        for (x, &c) in self.class_id.iter().enumerate() {
            out[c].push(x);
        }
        out
    }
}
