use std::sync::Arc;

use num_bigint::BigUint;
use proptest::prelude::*;

use uhjp::extract::{ends_agree, ramsey_step, run_extractor, solvable_extractor, ColoringSpec};
use uhjp::group::{subnormal_cyclic_series, EquivalenceRelation, FiniteGroup, GroupAction};
use uhjp::hjdegree::hj_degree_of_orders;
use uhjp::oracle::{enumerate_uniform_words, uniform_word_count, verify_witness};
use uhjp::words::{Symbol, Word};
use uhjp::{Limits, Magnitude};

fn action(kind: u8) -> GroupAction {
    match kind % 4 {
        0 => GroupAction::regular(Arc::new(FiniteGroup::cyclic(4).unwrap())),
        1 => GroupAction::regular(Arc::new(FiniteGroup::symmetric(3).unwrap())),
        2 => GroupAction::symmetric_natural(3).unwrap(),
        _ => GroupAction::regular(Arc::new(FiniteGroup::dihedral(3).unwrap())),
    }
}

fn word(a: &GroupAction, raw: &[(bool, u8)]) -> Word {
    let (order, xs) = (a.group().order(), a.set_size());
    let symbols = raw
        .iter()
        .map(|&(v, k)| {
            if v {
                Symbol::Var(k as u32 % order as u32)
            } else {
                Symbol::Letter(k as u32 % xs as u32)
            }
        })
        .collect();
    Word::from_symbols(xs, order, symbols).unwrap()
}

/// `∏ p_i^((p_i - 1) p_(i+1) … p_n)`
fn closed_form(p: &[usize]) -> BigUint {
    let mut out = BigUint::from(1u32);
    for i in 0..p.len() {
        let e: usize = (p[i] - 1) * p[i + 1..].iter().product::<usize>();
        out *= BigUint::from(p[i]).pow(e as u32);
    }
    out
}

proptest! {
    #[test]
    fn shift_then_substitute(kind in 0u8..4, raw in prop::collection::vec((any::<bool>(), any::<u8>()), 1..16), tau in any::<u8>(), x in any::<u8>()) {
        let a = action(kind);
        let w = word(&a, &raw);
        let tau = tau as usize % a.group().order();
        let x = x as usize % a.set_size();
        let lhs = w.shift(tau, a.group()).unwrap().substitute(x, &a).unwrap().letters(64).unwrap();
        let rhs = w.substitute(a.act(tau, x), &a).unwrap().letters(64).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn shifts_compose(kind in 0u8..4, raw in prop::collection::vec((any::<bool>(), any::<u8>()), 1..16), s in any::<u8>(), t in any::<u8>()) {
        let a = action(kind);
        let g = a.group();
        let w = word(&a, &raw);
        let (s, t) = (s as usize % g.order(), t as usize % g.order());
        let twice = w.shift(s, g).unwrap().shift(t, g).unwrap();
        prop_assert_eq!(twice.materialize(64).unwrap(), w.shift(g.mul(s, t), g).unwrap().materialize(64).unwrap());
    }

    #[test]
    fn repetition_scales_length_and_degree(kind in 0u8..4, raw in prop::collection::vec((any::<bool>(), any::<u8>()), 1..10), k in 1u64..1_000_000_000) {
        let a = action(kind);
        let w = word(&a, &raw);
        let big = w.repeat(k);
        prop_assert_eq!(big.len(), &(w.len() * k));
        prop_assert_eq!(big.analyze().degree, w.analyze().degree * k);
        let s = w.substitute(0, &a).unwrap();
        let sb = big.substitute(0, &a).unwrap();
        let pos = BigUint::from(k - 1) * w.len();
        prop_assert_eq!(sb.letter_at(&pos).unwrap(), s.letter_at(&BigUint::from(0u32)).unwrap());
    }

    #[test]
    fn hj_degree_closed_form(p in prop::collection::vec(1usize..6, 1..4)) {
        let d = hj_degree_of_orders(&p, &Limits::default()).unwrap();
        prop_assert_eq!(d.value, closed_form(&p));
    }

    #[test]
    fn ramsey_step_ends_agree(p in 3usize..5, table in prop::collection::vec(0u8..2, 4096)) {
        let l = Limits::default();
        let n = uhjp::extract::t_function(p as u64, 2, &l).unwrap().try_into().unwrap();
        let color = |b: &[usize]| b.iter().fold(0usize, |acc, &i| acc * 31 + i) % table.len();
        let out = ramsey_step(n, p, &Magnitude::from(2), &l, |b| Ok(table[color(b)])).unwrap();
        prop_assert_eq!(out.len(), p);
        prop_assert!(ends_agree(&out, |b| table[color(b)]));
    }

    #[test]
    fn c2_witness_verifies_on_tables(colors in prop::collection::vec(0u64..3, 16)) {
        let l = Limits::default();
        let g = Arc::new(FiniteGroup::cyclic(2).unwrap());
        let ext = solvable_extractor(&g, &subnormal_cyclic_series(&g).unwrap()).unwrap();
        let oracle = ColoringSpec::Table { colors }.build(4, 2, 3, 0, l).unwrap();
        let res = run_extractor(ext.as_ref(), &oracle).unwrap();
        let rep = verify_witness(&res.witness, &oracle, &EquivalenceRelation::total(2), &GroupAction::regular(g)).unwrap();
        prop_assert!(rep.verified);
    }
}

#[test]
fn uniform_word_counts_match_enumeration() {
    for order in 1..=3usize {
        for alphabet in [order, order + 1] {
            for n in 1..=7usize {
                for d in (order..=n).step_by(order) {
                    let listed = enumerate_uniform_words(order, alphabet, d, n)
                        .unwrap()
                        .count();
                    assert_eq!(
                        uniform_word_count(order, alphabet, d, n).unwrap(),
                        BigUint::from(listed)
                    );
                }
            }
        }
    }
}
