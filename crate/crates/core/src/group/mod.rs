//! Finite groups stored as dense multiplication tables.
//!
//! Elements are the indices `0..order`, and the identity is always index 0.

mod action;
mod hom;
mod series;
mod spec;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

pub use action::{EquivalenceRelation, GroupAction};
pub use hom::{quotient, transversal_section, GroupHomomorphism, Transversal};
pub use series::{
    derived_series, enumerate_subnormal_cyclic_series, is_solvable, subnormal_cyclic_series,
    SolvabilityReport, SubnormalCyclicSeries,
};
pub use spec::{ActionSpec, GroupKind, GroupSpec};

use crate::error::{Error, GroupAxiom, Result};
use crate::limits::Limits;

/// Associativity is re-checked exhaustively for standard groups up to this
/// many triples; larger ones are associative by construction.
const STANDARD_ASSOC_CHECK: u64 = 10_000_000;

#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    labels: Option<Vec<String>>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.order)
            .finish_non_exhaustive()
    }
}

impl FiniteGroup {
    /// Validates a Cayley table and returns the group it describes.
    ///
    /// If the identity is not element 0, elements 0 and the identity are
    /// swapped so that the identity ends up at index 0.
    pub fn from_cayley(table: &[Vec<usize>]) -> Result<FiniteGroup> {
        Self::from_cayley_with(table, &Limits::default())
    }

    pub fn from_cayley_with(table: &[Vec<usize>], limits: &Limits) -> Result<FiniteGroup> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidInput("empty Cayley table".into()));
        }
        check_table_budget(n, limits)?;
        if table.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidInput("Cayley table is not square".into()));
        }
        if table.iter().flatten().any(|&v| v >= n) {
            return Err(Error::NotAGroup(GroupAxiom::NotClosed));
        }
        let e = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or(Error::NotAGroup(GroupAxiom::NoIdentity))?;
        for (x, row) in table.iter().enumerate() {
            if !(0..n).any(|y| row[y] == e && table[y][x] == e) {
                return Err(Error::NotAGroup(GroupAxiom::MissingInverse));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(Error::NotAGroup(GroupAxiom::NotAssociative));
                    }
                }
            }
        }
        // relabel so the identity is 0
        let relabel = |x: usize| {
            if x == e {
                0
            } else if x == 0 {
                e
            } else {
                x
            }
        };
        let mut mul = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                mul[relabel(a) * n + relabel(b)] = relabel(table[a][b]) as u32;
            }
        }
        Ok(Self::from_validated(n, mul, None))
    }

    fn from_validated(order: usize, mul: Vec<u32>, labels: Option<Vec<String>>) -> FiniteGroup {
        let mut inv = vec![0u32; order];
        for a in 0..order {
            for b in 0..order {
                if mul[a * order + b] == 0 {
                    inv[a] = b as u32;
                    break;
                }
            }
        }
        FiniteGroup {
            order,
            mul,
            inv,
            labels,
        }
    }

    /// Checks closure, identity and inverses (and associativity when cheap)
    /// on a table produced by one of the constructors below.
    fn checked_standard(
        order: usize,
        mul: Vec<u32>,
        labels: Option<Vec<String>>,
    ) -> Result<FiniteGroup> {
        let g = Self::from_validated(order, mul, labels);
        g.check_axioms(STANDARD_ASSOC_CHECK)?;
        Ok(g)
    }

    /// Re-verifies the group axioms; associativity only when `order^3` is at
    /// most `assoc_budget`.
    pub fn check_axioms(&self, assoc_budget: u64) -> Result<()> {
        let n = self.order;
        if self.mul.iter().any(|&v| v as usize >= n) {
            return Err(Error::NotAGroup(GroupAxiom::NotClosed));
        }
        if (0..n).any(|x| self.mul(0, x) != x || self.mul(x, 0) != x) {
            return Err(Error::NotAGroup(GroupAxiom::NoIdentity));
        }
        if (0..n).any(|x| self.mul(x, self.inv(x)) != 0 || self.mul(self.inv(x), x) != 0) {
            return Err(Error::NotAGroup(GroupAxiom::MissingInverse));
        }
        if (n as u64).pow(3) <= assoc_budget {
            for a in 0..n {
                for b in 0..n {
                    let ab = self.mul(a, b);
                    for c in 0..n {
                        if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                            return Err(Error::NotAGroup(GroupAxiom::NotAssociative));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn trivial() -> FiniteGroup {
        Self::from_validated(1, vec![0], Some(vec!["e".into()]))
    }

    /// `C_n` with element `i` standing for `t^i`.
    pub fn cyclic(n: usize) -> Result<FiniteGroup> {
        Self::cyclic_with(n, &Limits::default())
    }

    pub fn cyclic_with(n: usize, limits: &Limits) -> Result<FiniteGroup> {
        if n == 0 {
            return Err(Error::InvalidInput(
                "cyclic group order must be positive".into(),
            ));
        }
        check_table_budget(n, limits)?;
        let mut mul = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                mul[a * n + b] = ((a + b) % n) as u32;
            }
        }
        let labels = (0..n)
            .map(|i| match i {
                0 => "e".to_string(),
                1 => "t".to_string(),
                _ => format!("t^{i}"),
            })
            .collect();
        Self::checked_standard(n, mul, Some(labels))
    }

    /// `S_n`, elements indexed by the lexicographic order of their one-line
    /// notation, multiplication `(a*b)(x) = a(b(x))`.
    pub fn symmetric(n: usize) -> Result<FiniteGroup> {
        Self::symmetric_with(n, &Limits::default())
    }

    pub fn symmetric_with(n: usize, limits: &Limits) -> Result<FiniteGroup> {
        if n == 0 {
            return Err(Error::InvalidInput(
                "symmetric group degree must be positive".into(),
            ));
        }
        if n > 8 {
            return Err(Error::SizeLimitExceeded(format!(
                "S_{n} exceeds the supported degree 8"
            )));
        }
        let perms = permutations_lex(n);
        check_table_budget(perms.len(), limits)?;
        Self::from_permutations(&perms)
    }

    /// Group of the given permutations of `0..k`, which must be closed under
    /// composition and contain the identity. Elements keep the given order,
    /// after moving the identity to the front.
    pub fn from_permutations(perms: &[Vec<usize>]) -> Result<FiniteGroup> {
        let mut perms: Vec<Vec<usize>> = perms.to_vec();
        let id_pos = perms
            .iter()
            .position(|p| p.iter().enumerate().all(|(i, &v)| i == v))
            .ok_or(Error::NotAGroup(GroupAxiom::NoIdentity))?;
        perms.swap(0, id_pos);
        let index: HashMap<&[usize], usize> = perms
            .iter()
            .enumerate()
            .map(|(i, p)| (p.as_slice(), i))
            .collect();
        let n = perms.len();
        let mut mul = vec![0u32; n * n];
        let mut buf = vec![0usize; perms[0].len()];
        for (a, pa) in perms.iter().enumerate() {
            for (b, pb) in perms.iter().enumerate() {
                for (x, slot) in buf.iter_mut().enumerate() {
                    *slot = pa[pb[x]];
                }
                let ab = *index
                    .get(buf.as_slice())
                    .ok_or(Error::NotAGroup(GroupAxiom::NotClosed))?;
                mul[a * n + b] = ab as u32;
            }
        }
        let labels = perms.iter().map(|p| cycle_notation(p)).collect();
        Self::checked_standard(n, mul, Some(labels))
    }

    /// Dihedral group of order `2n`: rotations `r^i` at indices `0..n`,
    /// reflections `s r^i` at `n..2n`.
    pub fn dihedral(n: usize) -> Result<FiniteGroup> {
        if n == 0 {
            return Err(Error::InvalidInput(
                "dihedral parameter must be positive".into(),
            ));
        }
        let order = 2 * n;
        let mut mul = vec![0u32; order * order];
        // element (f, i) = s^f r^i; r^i s = s r^{-i}
        for a in 0..order {
            for b in 0..order {
                let (fa, ia) = (a / n, a % n);
                let (fb, ib) = (b / n, b % n);
                let i = if fb == 0 {
                    (ia + ib) % n
                } else {
                    (n - ia % n + ib) % n
                };
                let f = (fa + fb) % 2;
                mul[a * order + b] = (f * n + i) as u32;
            }
        }
        Self::checked_standard(order, mul, None)
    }

    /// Direct product with element `(a, b)` at index `a * |other| + b`.
    pub fn direct_product(&self, other: &FiniteGroup) -> Result<FiniteGroup> {
        let (n, m) = (self.order, other.order);
        let order = n * m;
        check_table_budget(order, &Limits::default())?;
        let mut mul = vec![0u32; order * order];
        for x in 0..order {
            for y in 0..order {
                let a = self.mul(x / m, y / m);
                let b = other.mul(x % m, y % m);
                mul[x * order + y] = (a * m + b) as u32;
            }
        }
        Self::checked_standard(order, mul, None)
    }

    pub fn standard(kind: GroupKind, n: usize, limits: &Limits) -> Result<FiniteGroup> {
        match kind {
            GroupKind::Cyclic => Self::cyclic_with(n, limits),
            GroupKind::Symmetric => Self::symmetric_with(n, limits),
        }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn pow(&self, g: usize, k: usize) -> usize {
        (0..k).fold(0, |acc, _| self.mul(acc, g))
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|a| (0..self.order).map(|b| self.mul(a, b)).collect())
            .collect()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn label(&self, g: usize) -> String {
        match &self.labels {
            Some(l) => l[g].clone(),
            None => format!("g{g}"),
        }
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    fn check_element(&self, g: usize) -> Result<()> {
        if g < self.order {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange(format!(
                "element {g} not in a group of order {}",
                self.order
            )))
        }
    }

    /// Sorted, deduplicated copy of `elems`, checked for range.
    pub fn normalize_subset(&self, elems: &[usize]) -> Result<Vec<usize>> {
        for &g in elems {
            self.check_element(g)?;
        }
        let mut v = elems.to_vec();
        v.sort_unstable();
        v.dedup();
        Ok(v)
    }

    pub fn is_subgroup(&self, elems: &[usize]) -> bool {
        let Ok(h) = self.normalize_subset(elems) else {
            return false;
        };
        if h.first() != Some(&0) {
            return false;
        }
        let mask = self.mask(&h);
        h.iter()
            .all(|&a| mask[self.inv(a)] && h.iter().all(|&b| mask[self.mul(a, b)]))
    }

    /// Normalized `elems`, or `NotASubgroup`.
    pub fn require_subgroup(&self, elems: &[usize]) -> Result<Vec<usize>> {
        let h = self.normalize_subset(elems)?;
        if self.is_subgroup(&h) {
            Ok(h)
        } else {
            Err(Error::NotASubgroup(format!(
                "{h:?} is not closed under products and inverses"
            )))
        }
    }

    /// `h` normal in the subgroup `within` (both already subgroups).
    pub fn is_normal_in(&self, h: &[usize], within: &[usize]) -> bool {
        let mask = self.mask(h);
        within.iter().all(|&g| {
            h.iter()
                .all(|&x| mask[self.mul(self.mul(g, x), self.inv(g))])
        })
    }

    pub fn is_normal(&self, h: &[usize]) -> bool {
        let all: Vec<usize> = self.elements().collect();
        self.is_normal_in(h, &all)
    }

    pub fn mask(&self, elems: &[usize]) -> Vec<bool> {
        let mut m = vec![false; self.order];
        for &g in elems {
            m[g] = true;
        }
        m
    }

    /// Subgroup generated by `gens`, sorted.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut mask = vec![false; self.order];
        mask[0] = true;
        let mut out = vec![0usize];
        let mut i = 0;
        while i < out.len() {
            let x = out[i];
            for &g in gens {
                let y = self.mul(x, g);
                if !mask[y] {
                    mask[y] = true;
                    out.push(y);
                }
            }
            i += 1;
        }
        out.sort_unstable();
        out
    }

    /// Subgroup generated by all commutators `a^-1 b^-1 a b` with `a, b` in `h`.
    pub fn commutator_subgroup(&self, h: &[usize]) -> Vec<usize> {
        let mut comms = Vec::new();
        let mut seen = vec![false; self.order];
        for &a in h {
            for &b in h {
                let c = self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b));
                if !seen[c] {
                    seen[c] = true;
                    comms.push(c);
                }
            }
        }
        self.closure(&comms)
    }

    /// The subgroup `h` as a group in its own right, with its elements
    /// re-indexed in increasing order, plus the inclusion homomorphism.
    pub fn subgroup(
        self: &Arc<Self>,
        h: &[usize],
    ) -> Result<(Arc<FiniteGroup>, GroupHomomorphism)> {
        let h = self.require_subgroup(h)?;
        let pos: HashMap<usize, usize> = h.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        let m = h.len();
        let mut mul = vec![0u32; m * m];
        for (i, &a) in h.iter().enumerate() {
            for (j, &b) in h.iter().enumerate() {
                mul[i * m + j] = pos[&self.mul(a, b)] as u32;
            }
        }
        let labels = Some(h.iter().map(|&g| self.label(g)).collect());
        let sub = Arc::new(Self::from_validated(m, mul, labels));
        let inclusion = GroupHomomorphism::new(sub.clone(), self.clone(), h)?;
        Ok((sub, inclusion))
    }
}

fn check_table_budget(order: usize, limits: &Limits) -> Result<()> {
    let entries = (order as u64).saturating_mul(order as u64);
    if entries > limits.table_entries {
        return Err(Error::SizeLimitExceeded(format!(
            "a group of order {order} needs {entries} table entries, budget is {}",
            limits.table_entries
        )));
    }
    Ok(())
}

/// All permutations of `0..n` in lexicographic order of one-line notation.
pub fn permutations_lex(n: usize) -> Vec<Vec<usize>> {
    let mut cur: Vec<usize> = (0..n).collect();
    let mut out = vec![cur.clone()];
    loop {
        let Some(i) = (0..n.saturating_sub(1))
            .rev()
            .find(|&i| cur[i] < cur[i + 1])
        else {
            return out;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
        out.push(cur.clone());
    }
}

/// Cycle notation over the points `1..=n`, `e` for the identity.
pub fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut s = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        s.push('(');
        let mut x = start;
        let mut first = true;
        while !seen[x] {
            seen[x] = true;
            if !first {
                s.push(' ');
            }
            s.push_str(&(x + 1).to_string());
            first = false;
            x = p[x];
        }
        s.push(')');
    }
    if s.is_empty() {
        "e".into()
    } else {
        s
    }
}
