//! Acceptance suite: one line per criterion, non-zero exit on any failure.

use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use uhjp::euclid::{cor17_embed, cor17_setup, dilation_check, symmetry_group, PointSet};
use uhjp::extract::{
    cyclic_prefix_relation, ends_agree, group_transfer, orbit_lift, plan_length, ramsey_step,
    run_extractor, shelah_sequence, solvable_extractor, t_function, ColoringSpec, Context,
    ExtensionCompose, Extractor, FixedWordExtractor, KrizBase, KrizStep, TransferMode,
};
use uhjp::group::{
    derived_series, quotient, subnormal_cyclic_series, transversal_section, EquivalenceRelation,
    FiniteGroup, GroupAction,
};
use uhjp::hjdegree::{all_hj_degrees, hj_degree, hj_degree_of_orders};
use uhjp::oracle::{
    enumerate_uniform_words, minimal_n_search, uhjp_check, verify_witness, Verdict,
};
use uhjp::words::{Symbol, Word};
use uhjp::{Limits, Magnitude};

type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn hj_degrees() -> Check {
    let l = Limits::default();
    let s3 = FiniteGroup::symmetric(3).unwrap();
    let d = ok(hj_degree(&ok(subnormal_cyclic_series(&s3))?))?;
    ensure!(d.value == BigUint::from(162u32), "S_3 gave {}", d.value);
    let s4 = FiniteGroup::symmetric(4).unwrap();
    let d = ok(hj_degree(&ok(subnormal_cyclic_series(&s4))?))?;
    ensure!(
        d.value == BigUint::from(42_467_328u64),
        "S_4 gave {}",
        d.value
    );
    let c6 = FiniteGroup::cyclic(6).unwrap();
    let got: BTreeSet<BigUint> = ok(all_hj_degrees(&c6, 100))?
        .into_iter()
        .map(|(_, d)| d.value)
        .collect();
    let want: BTreeSet<BigUint> = [7776u32, 72, 162].into_iter().map(BigUint::from).collect();
    ensure!(got == want, "C_6 gave {got:?}");
    for n in 1..=12usize {
        let want = BigUint::from(n).pow(n as u32 - 1);
        ensure!(
            ok(hj_degree_of_orders(&[n], &l))?.value == want,
            "C_{n} one-step"
        );
        let cn = FiniteGroup::cyclic(n).unwrap();
        let max = ok(all_hj_degrees(&cn, 1000))?
            .into_iter()
            .map(|(_, d)| d.value)
            .max()
            .unwrap();
        ensure!(max == want, "C_{n} maximum {max}");
    }
    Ok("S_3 162, S_4 42467328, C_6 {7776, 72, 162}, C_n n^(n-1) for n <= 12".into())
}

fn substitution() -> Check {
    let action = ok(GroupAction::symmetric_natural(3))?;
    // v_e 1 2 v_(1 2 3)^2 v_(1 2 3) with 0-based points
    let w = ok(Word::from_symbols(
        3,
        6,
        vec![
            Symbol::Var(0),
            Symbol::Letter(0),
            Symbol::Letter(1),
            Symbol::Var(4),
            Symbol::Var(3),
        ],
    ))?;
    let want = [[1, 1, 2, 3, 2], [2, 1, 2, 1, 3], [3, 1, 2, 2, 1]];
    for (x, row) in want.iter().enumerate() {
        let got: Vec<u32> = ok(ok(w.substitute(x, &action))?.letters(10))?
            .iter()
            .map(|a| a + 1)
            .collect();
        ensure!(got == row, "W({}) = {got:?}", x + 1);
    }
    Ok("W(1), W(2), W(3) match".into())
}

fn shift_identity() -> Check {
    let mut actions = Vec::new();
    for n in 1..=6 {
        actions.push(GroupAction::regular(Arc::new(
            FiniteGroup::cyclic(n).unwrap(),
        )));
    }
    actions.push(GroupAction::regular(Arc::new(
        FiniteGroup::symmetric(3).unwrap(),
    )));
    actions.push(GroupAction::symmetric_natural(3).unwrap());
    actions.push(GroupAction::regular(Arc::new(
        FiniteGroup::dihedral(3).unwrap(),
    )));
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let cases = 10_000;
    for _ in 0..cases {
        let a = &actions[rng.gen_range(0..actions.len())];
        let (order, xs) = (a.group().order(), a.set_size());
        let len = rng.gen_range(1..=12);
        let symbols: Vec<Symbol> = (0..len)
            .map(|_| {
                if rng.gen_bool(0.5) {
                    Symbol::Var(rng.gen_range(0..order) as u32)
                } else {
                    Symbol::Letter(rng.gen_range(0..xs) as u32)
                }
            })
            .collect();
        let w = ok(Word::from_symbols(xs, order, symbols))?;
        let (tau, x) = (rng.gen_range(0..order), rng.gen_range(0..xs));
        let lhs = ok(ok(ok(w.shift(tau, a.group()))?.substitute(x, a))?.letters(100))?;
        let rhs = ok(ok(w.substitute(a.act(tau, x), a))?.letters(100))?;
        ensure!(lhs == rhs, "shift identity fails for tau {tau}, x {x}");
    }
    Ok(format!("{cases} random cases, zero failures"))
}

fn ramsey_exhaustive() -> Check {
    let l = Limits::default();
    ensure!(
        ok(t_function(3, 2, &l))? == BigUint::from(5u32),
        "T(3, 2) is not 5"
    );
    let pairs: Vec<(usize, usize)> = (0..5)
        .flat_map(|i| (i + 1..5).map(move |j| (i, j)))
        .collect();
    for mask in 0u32..1024 {
        let color = |b: &[usize]| {
            let k = pairs.iter().position(|&p| p == (b[0], b[1])).unwrap();
            mask >> k & 1
        };
        let p = ok(ramsey_step(5, 3, &Magnitude::from(2), &l, |b| Ok(color(b))))?;
        ensure!(
            p.len() == 3 && p.windows(2).all(|w| w[0] < w[1]) && p[2] < 5,
            "coloring {mask}: bad P {p:?}"
        );
        ensure!(
            ends_agree(&p, color),
            "coloring {mask}: ends differ on {p:?}"
        );
    }
    Ok("all 1024 colorings of 2-subsets of a 5-set".into())
}

fn c2_end_to_end() -> Check {
    let l = Limits::default();
    let g = Arc::new(FiniteGroup::cyclic(2).unwrap());
    let ext = ok(solvable_extractor(&g, &ok(subnormal_cyclic_series(&g))?))?;
    let action = GroupAction::regular(g);
    let total = EquivalenceRelation::total(2);
    ensure!(
        ok(ext.plan(&Magnitude::from(2), &l))? == Magnitude::from(3),
        "N(2) is not 3"
    );
    ensure!(
        ok(ext.plan(&Magnitude::from(3), &l))? == Magnitude::from(4),
        "N(3) is not 4"
    );
    for t in 0u64..256 {
        let colors = (0..8).map(|i| t >> (7 - i) & 1).collect();
        let oracle = ok(ColoringSpec::Table { colors }.build(3, 2, 2, 0, l))?;
        let res = ok(run_extractor(ext.as_ref(), &oracle))?;
        ensure!(
            ok(verify_witness(&res.witness, &oracle, &total, &action))?.verified,
            "table {t}"
        );
    }
    for seed in 0..1000 {
        let oracle = ok(ColoringSpec::Random { seed: Some(seed) }.build(4, 2, 3, 0, l))?;
        let res = ok(run_extractor(ext.as_ref(), &oracle))?;
        ensure!(
            ok(verify_witness(&res.witness, &oracle, &total, &action))?.verified,
            "seed {seed}"
        );
    }
    Ok("256 tables at r = 2 and 1000 seeds at r = 3 verify".into())
}

fn oracle_ground_truth() -> Check {
    let l = Limits::default();
    let action = GroupAction::regular(Arc::new(FiniteGroup::cyclic(2).unwrap()));
    let total = EquivalenceRelation::total(2);
    let two = ok(uhjp_check(&action, &total, 2, 2, 2, 1 << 20, &l))?;
    ensure!(two.verdict == Verdict::Fails, "N = 2 did not fail");
    let table = two.counterexample.clone().ok_or("no counterexample")?;
    let oracle = ok(ColoringSpec::Table { colors: table }.build(2, 2, 2, 0, l))?;
    for w in ok(enumerate_uniform_words(2, 2, 2, 2))? {
        ensure!(
            !ok(verify_witness(&w, &oracle, &total, &action))?.verified,
            "counterexample admits a witness"
        );
    }
    let three = ok(uhjp_check(&action, &total, 2, 2, 3, 1 << 20, &l))?;
    ensure!(
        three.verdict == Verdict::Holds && three.colorings_checked == 256,
        "N = 3: {:?}",
        three.verdict
    );
    let min = ok(minimal_n_search(&action, &total, 2, 2, 5, 1 << 20, &l))?;
    ensure!(min.minimal_n == Some(3), "minimal N {:?}", min.minimal_n);
    Ok("fails at N = 2, holds at N = 3 over 256 colorings, minimal N = 3".into())
}

fn kriz_c3() -> Check {
    let l = Limits::default();
    let base = ok(KrizBase::new(3))?;
    ensure!(
        ok(base.plan(&Magnitude::from(2), &l))? == Magnitude::from(5),
        "base plan is not 5"
    );
    let action = base.context().action.clone();
    let relation = ok(cyclic_prefix_relation(3, 1))?;
    for seed in 0..1000 {
        let oracle = ok(ColoringSpec::Random { seed: Some(seed) }.build(5, 3, 2, 0, l))?;
        let res = ok(run_extractor(&base, &oracle))?;
        ensure!(
            ok(verify_witness(&res.witness, &oracle, &relation, &action))?.verified,
            "seed {seed}"
        );
    }
    let c3 = Arc::new(FiniteGroup::cyclic(3).unwrap());
    let ext = ok(solvable_extractor(&c3, &ok(subnormal_cyclic_series(&c3))?))?;
    let (n, plan) = ok(plan_length(ext.as_ref(), &Magnitude::from(2), &l))?;
    ensure!(
        !n.is_exact() && plan.exceeds_dense_budget(),
        "full plan looks feasible"
    );
    ensure!(
        plan.stages
            .iter()
            .any(|s| s.expression == "T(3, 2^2)" && s.value == Magnitude::from(17)),
        "no stage n = T(3, 4) = 17"
    );
    Ok("1000 seeds verify; full degree-9 plan reported infeasible after n = 17".into())
}

fn uniform_with_degree(w: &Word, d: u32) -> Result<(), String> {
    let a = w.analyze();
    ensure!(a.uniform, "witness is not uniform");
    ensure!(
        a.degree == BigUint::from(d),
        "degree {} instead of {d}",
        a.degree
    );
    Ok(())
}

fn degree_laws() -> Check {
    let l = Limits::default();
    let c2 = Arc::new(FiniteGroup::cyclic(2).unwrap());
    let c3 = Arc::new(FiniteGroup::cyclic(3).unwrap());
    let c4 = Arc::new(FiniteGroup::cyclic(4).unwrap());
    let stub = |ctx: Context| -> Result<Arc<dyn Extractor>, String> {
        Ok(Arc::new(ok(FixedWordExtractor::balanced(ctx))?))
    };
    let run = |ext: &dyn Extractor, n: usize| -> Result<Word, String> {
        let oracle =
            ok(ColoringSpec::Constant { color: 0 }.build(n, ext.context().alphabet(), 2, 0, l))?;
        Ok(ok(run_extractor(ext, &oracle))?.witness)
    };

    // kriz step: times p
    let ctx = ok(Context::new(
        Arc::new(GroupAction::regular(c3.clone())),
        ok(cyclic_prefix_relation(3, 1))?,
        3u32,
    ))?;
    let step = ok(KrizStep::new(3, 1, stub(ctx)?))?;
    let w = run(&step, 51)?;
    uniform_with_degree(&w, 9)?;

    // block sequence: every block keeps the inner degree
    let inner = ok(FixedWordExtractor::balanced(Context::regular(
        c2.clone(),
        2u32,
    )))?;
    let oracle = ok(ColoringSpec::Histogram { modulus: 2 }.build(6, 2, 2, 0, l))?;
    for b in ok(shelah_sequence(&inner, 3, &oracle))? {
        uniform_with_degree(&b, 2)?;
    }

    // orbit lift: to the power of the number of orbits
    let two_swaps = Arc::new(ok(GroupAction::new(
        c2.clone(),
        4,
        vec![vec![0, 1, 2, 3], vec![1, 0, 3, 2]],
    ))?);
    let lifted = ok(orbit_lift(
        stub(Context::regular(c2.clone(), 2u32))?,
        two_swaps,
    ))?;
    uniform_with_degree(&run(lifted.as_ref(), 4)?, 4)?;

    // extension: product, C_2 inside C_4 with quotient C_2
    let by_two = Arc::new(ok(GroupAction::new(
        c2.clone(),
        4,
        vec![vec![0, 1, 2, 3], vec![2, 3, 0, 1]],
    ))?);
    let inner = ok(orbit_lift(
        stub(Context::regular(c2.clone(), 2u32))?,
        by_two,
    ))?;
    let (_, pi) = ok(quotient(&c4, &[0, 2]))?;
    let section = (0..2)
        .map(|k| (0..4).find(|&g| pi.apply(g) == k).unwrap())
        .collect();
    let ext = ok(ExtensionCompose::new(
        inner,
        stub(Context::regular(c2.clone(), 2u32))?,
        &pi,
        section,
    ))?;
    let n = ok(ext.plan(&Magnitude::from(2), &l))?
        .to_usize()
        .ok_or("extension plan")?;
    uniform_with_degree(&run(&ext, n)?, 8)?;

    // transfer: degree preserved
    let s3 = Arc::new(FiniteGroup::symmetric(3).unwrap());
    let whole = stub(Context::regular(s3, 162u32))?;
    uniform_with_degree(
        &run(
            &ok(group_transfer(
                whole.clone(),
                &[0, 3, 4],
                TransferMode::Subgroup,
            ))?,
            162,
        )?,
        162,
    )?;
    uniform_with_degree(
        &run(
            &ok(group_transfer(whole, &[0, 3, 4], TransferMode::Quotient))?,
            162,
        )?,
        162,
    )?;
    let whole = stub(Context::regular(c4, 4u32))?;
    uniform_with_degree(
        &run(
            &ok(group_transfer(whole, &[0, 2], TransferMode::Quotient))?,
            4,
        )?,
        4,
    )?;
    Ok("kriz step x3, blocks preserve, orbit lift ^2, extension 4 x 2, transfers preserve".into())
}

fn dilation() -> Check {
    let segment = ok(PointSet::from_integers(1, &[vec![0], vec![1]]))?;
    let c2 = GroupAction::regular(Arc::new(FiniteGroup::cyclic(2).unwrap()));
    let w = ok(Word::from_symbols(
        2,
        2,
        vec![Symbol::Var(0), Symbol::Letter(1), Symbol::Var(1)],
    ))?;
    let rep = ok(dilation_check(&w, &segment, &c2))?;
    ensure!(
        rep.holds && rep.max_residual == 0.0 && rep.degree == "2",
        "segment: {rep:?}"
    );

    let simplex = ok(PointSet::from_integers(
        3,
        &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]],
    ))?;
    let setup = ok(cor17_setup(simplex, Some(&[0, 3, 4]), None))?;
    let w = ok(Word::from_symbols(
        3,
        3,
        vec![
            Symbol::Var(0),
            Symbol::Var(1),
            Symbol::Letter(2),
            Symbol::Var(2),
        ],
    ))?;
    let rep = ok(dilation_check(&w, &setup.points, &setup.action))?;
    ensure!(
        rep.holds && rep.max_residual == 0.0 && rep.degree == "3",
        "triangle: {rep:?}"
    );

    let h = 3f64.sqrt() / 2.0;
    let tri = ok(PointSet::float(
        2,
        vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.5, h]],
        1e-9,
    ))?;
    let sym = ok(symmetry_group(&tri))?;
    let w = ok(Word::from_symbols(
        3,
        6,
        vec![
            Symbol::Var(1),
            Symbol::Var(4),
            Symbol::Var(5),
            Symbol::Letter(0),
        ],
    ))?;
    let rep = ok(dilation_check(&w, &tri, &sym.action))?;
    ensure!(
        rep.holds && rep.max_residual <= 1e-9,
        "float triangle: {rep:?}"
    );
    Ok(format!(
        "segment and triangle exact, float residual {:.1e}",
        rep.max_residual
    ))
}

fn corollary_embedding() -> Check {
    let l = Limits::default();
    let segment = ok(PointSet::from_integers(1, &[vec![0], vec![1]]))?;
    let setup = ok(cor17_setup(segment, None, None))?;
    let scale = setup.lambda_squared() * BigRational::from_integer(setup.witness_degree().into());
    ensure!(scale.is_one(), "lambda^2 d^p = {scale}");
    let n = ok(setup.plan(2, &l))?.0.to_usize().ok_or("plan")?;
    for seed in 0..100 {
        let oracle = ok(ColoringSpec::Random { seed: Some(seed) }.build(n, 2, 2, 0, l))?;
        let e = ok(cor17_embed(&setup, &oracle))?;
        ensure!(
            e.isometric && e.max_residual == 0.0,
            "seed {seed}: not isometric"
        );
        ensure!(
            e.monochromatic && e.scaling_coherent,
            "seed {seed}: not monochromatic"
        );
    }
    Ok("100 seeds isometric and monochromatic, lambda^2 d^p = 1".into())
}

fn transversals() -> Check {
    let s3 = FiniteGroup::symmetric(3).unwrap();
    let s4 = FiniteGroup::symmetric(4).unwrap();
    let c4 = FiniteGroup::cyclic(4).unwrap();
    let a3 = derived_series(&s3)[1].clone();
    let a4 = derived_series(&s4)[1].clone();
    for (name, g, h) in [
        ("(S_3, A_3)", &s3, a3),
        ("(C_4, C_2)", &c4, vec![0, 2]),
        ("(S_4, A_4)", &s4, a4),
    ] {
        let t = ok(transversal_section(g, &h))?;
        let image: BTreeSet<usize> = g.elements().map(|x| t.phi(x)).collect();
        ensure!(
            image == h.iter().copied().collect(),
            "{name}: phi not onto H"
        );
        ensure!(
            h.iter().all(|&x| t.phi(x) == x),
            "{name}: phi is not the identity on H"
        );
        ensure!(
            g.elements()
                .all(|x| h.iter().all(|&y| t.phi(g.mul(x, y)) == g.mul(t.phi(x), y))),
            "{name}: phi(gh) != phi(g)h"
        );
        let index = g.order() / h.len();
        ensure!(
            h.iter()
                .all(|&y| g.elements().filter(|&x| t.phi(x) == y).count() == index),
            "{name}: fiber sizes"
        );
    }
    Ok("(S_3, A_3), (C_4, C_2), (S_4, A_4)".into())
}

fn determinism() -> Check {
    let commands: Vec<Vec<&str>> = vec![
        vec!["group", "--group", r#"{"kind":"symmetric","n":4}"#],
        vec![
            "hj-degree",
            "--group",
            r#"{"kind":"cyclic","n":6}"#,
            "--all",
        ],
        vec![
            "plan",
            "--group",
            r#"{"kind":"cyclic","n":3}"#,
            "--colors",
            "2",
        ],
        vec![
            "extract",
            "--group",
            r#"{"kind":"cyclic","n":2}"#,
            "--colors",
            "3",
            "--coloring",
            r#"{"kind":"random"}"#,
            "--seed",
            "9",
        ],
        vec![
            "verify",
            "--group",
            r#"{"kind":"cyclic","n":2}"#,
            "--word",
            r#"{"alphabet":2,"vars":[0,1],"body":[{"letter":0},{"var":0},{"var":1}]}"#,
            "--colors",
            "2",
            "--coloring",
            r#"{"kind":"coordinate","index":1}"#,
        ],
        vec![
            "search-min-n",
            "--group",
            r#"{"kind":"cyclic","n":2}"#,
            "--degree",
            "2",
            "--colors",
            "2",
            "--max",
            "4",
        ],
        vec![
            "euclid",
            "--points",
            r#"{"dim":1,"points":[[0],[1]]}"#,
            "--colors",
            "2",
            "--coloring",
            r#"{"kind":"random"}"#,
            "--seed",
            "5",
        ],
    ];
    for c in &commands {
        let argv: Vec<&str> = std::iter::once("uhjp").chain(c.iter().copied()).collect();
        let a = uhjp::cli::run(argv.clone());
        let b = uhjp::cli::run(argv);
        ensure!(a.code <= 1, "{} exited {}: {}", c[0], a.code, a.stderr);
        ensure!(
            serde_json::from_str::<serde_json::Value>(&a.stdout).is_ok(),
            "{} printed non-JSON",
            c[0]
        );
        ensure!(a == b, "{} output differs between runs", c[0]);
    }
    Ok(format!(
        "{} commands byte-identical across runs",
        commands.len()
    ))
}

type Criterion = (&'static str, fn() -> Check, Duration);

fn main() {
    let criteria: [Criterion; 12] = [
        ("hj-degree arithmetic", hj_degrees, Duration::from_secs(1)),
        ("substitution example", substitution, Duration::from_secs(1)),
        ("shift identity", shift_identity, Duration::from_secs(30)),
        (
            "ramsey step exhaustive",
            ramsey_exhaustive,
            Duration::from_secs(5),
        ),
        (
            "C_2 end-to-end extraction",
            c2_end_to_end,
            Duration::from_secs(30),
        ),
        (
            "oracle ground truth",
            oracle_ground_truth,
            Duration::from_secs(10),
        ),
        ("kriz base for C_3", kriz_c3, Duration::from_secs(60)),
        ("degree laws", degree_laws, Duration::from_secs(60)),
        ("dilation identity", dilation, Duration::from_secs(5)),
        (
            "euclidean embedding",
            corollary_embedding,
            Duration::from_secs(30),
        ),
        (
            "transversal properties",
            transversals,
            Duration::from_secs(1),
        ),
        ("determinism", determinism, Duration::from_secs(60)),
    ];
    let mut failed = 0;
    for (i, (name, check, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let took = start.elapsed();
        let (tag, detail) = match result {
            Ok(d) if took <= *limit => ("PASS", d),
            Ok(d) => ("FAIL", format!("{d}; took longer than {limit:?}")),
            Err(e) => ("FAIL", e),
        };
        if tag == "FAIL" {
            failed += 1;
        }
        println!("[{tag}] {:>2} {name}: {detail} ({:.2?})", i + 1, took);
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
