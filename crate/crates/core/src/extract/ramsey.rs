//! Finding `P` of size `p` whose two `(p-1)`-subsets `P \ {min P}` and
//! `P \ {max P}` share a color.

use std::collections::HashMap;
use std::hash::Hash;

use super::tower::t_magnitude;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::magnitude::Magnitude;

type Coloring<'a> = dyn FnMut(&[usize]) -> Result<u32> + 'a;

/// Requires `n >= T(p, r)`, which guarantees success when the coloring uses
/// at most `r` colors. Subsets are sorted and 0-based.
pub fn ramsey_step<C, F>(
    n: usize,
    p: usize,
    r: &Magnitude,
    limits: &Limits,
    color: F,
) -> Result<Vec<usize>>
where
    C: Eq + Hash + Clone,
    F: FnMut(&[usize]) -> Result<C>,
{
    if p < 2 {
        return Err(Error::InvalidInput("ramsey step needs p >= 2".into()));
    }
    let bound = t_magnitude(p as u64, r, limits)?;
    if !bound.le_u64(n as u64) {
        return Err(Error::PreconditionViolated(format!(
            "n = {n} is below T({p}, {r})"
        )));
    }
    ramsey_step_unchecked(n, p, color)
}

/// Runs the search without checking the bound; `NotFound` when it fails.
pub fn ramsey_step_unchecked<C, F>(n: usize, p: usize, mut color: F) -> Result<Vec<usize>>
where
    C: Eq + Hash + Clone,
    F: FnMut(&[usize]) -> Result<C>,
{
    if p < 2 {
        return Err(Error::InvalidInput("ramsey step needs p >= 2".into()));
    }
    let mut ids: HashMap<C, u32> = HashMap::new();
    let mut memo: HashMap<Vec<usize>, u32> = HashMap::new();
    let mut interned = |b: &[usize]| -> Result<u32> {
        if let Some(&c) = memo.get(b) {
            return Ok(c);
        }
        let c = color(b)?;
        let next = ids.len() as u32;
        let id = *ids.entry(c).or_insert(next);
        memo.insert(b.to_vec(), id);
        Ok(id)
    };
    search(n, p, &mut interned)?
        .ok_or_else(|| Error::NotFound(format!("no {p}-set in [{n}] with equal end colors")))
}

fn search(n: usize, q: usize, color: &mut Coloring<'_>) -> Result<Option<Vec<usize>>> {
    if q == 2 {
        let mut first: HashMap<u32, usize> = HashMap::new();
        for j in 0..n {
            let c = color(&[j])?;
            if let Some(&i) = first.get(&c) {
                return Ok(Some(vec![i, j]));
            }
            first.insert(c, j);
        }
        return Ok(None);
    }

    // c'(B) = { c(B ∪ {x}) : x > max B }, sets interned in first-seen order
    let p = {
        let mut set_ids: HashMap<Vec<u32>, u32> = HashMap::new();
        let mut memo: HashMap<Vec<usize>, u32> = HashMap::new();
        let mut derived = |b: &[usize]| -> Result<u32> {
            if let Some(&c) = memo.get(b) {
                return Ok(c);
            }
            let mut set = Vec::new();
            let mut ext = b.to_vec();
            ext.push(0);
            for x in b[b.len() - 1] + 1..n {
                *ext.last_mut().unwrap() = x;
                set.push(color(&ext)?);
            }
            set.sort_unstable();
            set.dedup();
            let next = set_ids.len() as u32;
            let id = *set_ids.entry(set).or_insert(next);
            memo.insert(b.to_vec(), id);
            Ok(id)
        };
        match search(n, q - 1, &mut derived)? {
            Some(p) => p,
            None => return Ok(None),
        }
    };

    let target = color(&p)?;
    let mut ext: Vec<usize> = p[1..].to_vec();
    ext.push(0);
    for x in p[p.len() - 1] + 1..n {
        *ext.last_mut().unwrap() = x;
        if color(&ext)? == target {
            let mut q_set = p.clone();
            q_set.push(x);
            return Ok(Some(q_set));
        }
    }
    Ok(None)
}

/// `c(P minus min) == c(P minus max)`.
pub fn ends_agree<C: PartialEq, F: FnMut(&[usize]) -> C>(p: &[usize], mut color: F) -> bool {
    p.len() >= 2 && color(&p[1..]) == color(&p[..p.len() - 1])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn singles(colors: &'static [u8]) -> impl FnMut(&[usize]) -> Result<u8> {
        move |b| Ok(colors[b[0]])
    }

    #[test]
    fn pigeonhole_case() {
        let l = Limits::default();
        let r2 = Magnitude::from(2);
        assert_eq!(
            ramsey_step(3, 2, &r2, &l, singles(&[1, 1, 2])).unwrap(),
            vec![0, 1]
        );
        let r3 = Magnitude::from(3);
        assert_eq!(
            ramsey_step(4, 2, &r3, &l, singles(&[1, 2, 3, 2])).unwrap(),
            vec![1, 3]
        );
        assert!(matches!(
            ramsey_step(3, 2, &r3, &l, singles(&[1, 2, 3])),
            Err(Error::PreconditionViolated(_))
        ));
        assert!(matches!(
            ramsey_step_unchecked(3, 2, singles(&[1, 2, 3])),
            Err(Error::NotFound(_))
        ));
    }

    #[test]
    fn pairs_of_five_points() {
        let l = Limits::default();
        let pairs: Vec<(usize, usize)> = (0..5)
            .flat_map(|i| (i + 1..5).map(move |j| (i, j)))
            .collect();
        for mask in 0u32..1024 {
            let color = |b: &[usize]| -> Result<bool> {
                let k = pairs
                    .iter()
                    .position(|&(i, j)| i == b[0] && j == b[1])
                    .unwrap();
                Ok(mask >> k & 1 == 1)
            };
            let p = ramsey_step(5, 3, &Magnitude::from(2), &l, color).unwrap();
            assert_eq!(p.len(), 3);
            assert!(p.windows(2).all(|w| w[0] < w[1]));
            assert!(ends_agree(&p, |b| color(b).unwrap()));
        }
    }
}
