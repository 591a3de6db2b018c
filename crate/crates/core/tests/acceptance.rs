//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use monstrous::cartan::CartanView;
use monstrous::eta::{self, EtaQuotient, MoonshineClass};
use monstrous::freelie::{
    elimination_check, lyndon_dims, random_admissible, witt_dims, DegreeBound, GeneratorAlphabet,
    GradedDimTable,
};
use monstrous::lambda::{level_one_exponents, twisted_identity_check, AdamsFamily};
use monstrous::roots::{compare, export_lattice, mults_from_product, mults_from_structure, PointKind};
use num_bigint::BigInt;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || format!("took {elapsed:?}, limit {limit:?}"))
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let c = eta::build_class("2B", &EtaQuotient::class_2b(), 20).map_err(e)?;
    let elapsed = start.elapsed();
    for m in 1..=19u64 {
        let expect = if m % 2 == 1 { 24 } else { 0 };
        ensure(c.cm0(m).map_err(e)? == &big(expect), || format!("c({m},0)"))?;
    }
    ensure(c.n() == 2, || format!("N = {}", c.n()))?;
    ensure(c.c1n(1).map_err(e)? == &big(4096), || "c(1,1/2)".into())?;
    within(elapsed, Duration::from_secs(1))?;
    Ok(format!("c(m,0) for m <= 19, N = 2, c(1,1/2) = 4096 in {elapsed:.2?}"))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let c = eta::build_class("4D", &EtaQuotient::class_4d(), 20).map_err(e)?;
    let elapsed = start.elapsed();
    for m in 1..=20u64 {
        let expect = if m % 4 == 2 { 12 } else { 0 };
        ensure(c.cm0(m).map_err(e)? == &big(expect), || format!("c({m},0)"))?;
    }
    ensure(c.n() == 8 && c.ell() == 2, || format!("N = {}, ell = {}", c.n(), c.ell()))?;
    ensure(c.c1n(1).map_err(e)? == &big(64), || "c(1,1/8)".into())?;
    within(elapsed, Duration::from_secs(1))?;
    Ok(format!("c(m,0) for m <= 20, N = 8, ell = 2, c(1,1/8) = 64 in {elapsed:.2?}"))
}

fn criterion_3() -> Outcome {
    for (label, eq) in [("2B", EtaQuotient::class_2b()), ("4D", EtaQuotient::class_4d())] {
        let direct = eta::fricke_direct(&eq, 24).map_err(e)?;
        let cm0 = eta::extract_cm0(&eta::expand_eta_quotient(&eq, 24), 24).map_err(e)?;
        let product = eta::fricke_from_product(direct.n, &direct.prefactor, &cm0, 24).map_err(e)?;
        ensure(direct.series == product, || format!("{label}: expansions differ"))?;
        ensure(direct.series.order() == 24, || format!("{label}: order {}", direct.series.order()))?;
    }
    Ok("direct and product expansions agree through 24 terms for 2B and 4D".into())
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let mut points = 0;
    for label in ["2B", "4D"] {
        let c = MoonshineClass::builtin(label, 10).map_err(e)?;
        let p = mults_from_product(&c, 10, 10).map_err(e)?;
        let s = mults_from_structure(&c, 10, 10).map_err(e)?;
        let diff = compare(&p, &s).map_err(e)?;
        ensure(diff.is_empty(), || format!("{label}: {} points differ, first {:?}", diff.len(), diff[0]))?;
        points += p.iter().count();
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(60))?;
    Ok(format!("box (10,10) exact agreement, {points} nonzero points in {elapsed:.2?}"))
}

fn criterion_5() -> Outcome {
    let mut nodes_2b: BTreeSet<(u64, u64)> = [1, 3, 5, 7].iter().map(|&m| (m, 0)).collect();
    for m in 1..=7 {
        for n in 1..=4 {
            nodes_2b.insert((m, n));
        }
    }
    let nodes_4d: BTreeSet<(u64, u64)> = [
        (2, 0), (6, 0),
        (1, 1), (3, 1), (5, 1), (7, 1),
        (2, 2), (4, 2), (6, 2),
        (1, 3), (3, 3), (5, 3), (7, 3),
        (2, 4), (4, 4), (6, 4),
    ]
    .into_iter()
    .collect();
    for (label, expect) in [("2B", nodes_2b), ("4D", nodes_4d)] {
        let c = MoonshineClass::builtin(label, 8).map_err(e)?;
        let pts = export_lattice(&mults_from_product(&c, 7, 4).map_err(e)?);
        let got: BTreeSet<_> = pts.iter().map(|p| (p.m, p.n)).collect();
        ensure(got == expect, || format!("{label}: node set {got:?}"))?;
        for p in &pts {
            let kind = if p.n == 0 {
                PointKind::SimpleMinus
            } else if p.m == 1 {
                PointKind::SimplePlus
            } else {
                PointKind::Nonsimple
            };
            ensure(p.kind == kind, || format!("{label}: kind at ({}, {})", p.m, p.n))?;
        }
    }
    Ok("node sets and kinds match the expected lattices; (2, 2/8) is nonsimple".into())
}

fn criterion_6() -> Outcome {
    let mut windows = 0;
    for label in ["2B", "4D"] {
        let c = MoonshineClass::builtin(label, 8).map_err(e)?;
        for mmax in 1..=6 {
            for nmax in 1..=6 {
                let v = CartanView::new(&c, mmax, nmax).map_err(e)?;
                let a = v.validate_axioms();
                ensure(a.passed(), || format!("{label} ({mmax},{nmax}): {:?}", a.violations))?;
                let r = v.row_relations();
                ensure(r.passed(), || format!("{label} ({mmax},{nmax}): {:?}", r.failures))?;
                windows += 1;
            }
        }
    }
    Ok(format!("axioms and row relations hold on {windows} windows"))
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let bound = DegreeBound::Total(6);
    let mut cases = vec![(vec![vec![0, -1], vec![-1, -2]], vec![0])];
    cases.extend((0..12).map(|s| random_admissible(2 + (s as usize % 2), s)));
    for (a, j) in &cases {
        let r = elimination_check(a, j, &bound).map_err(e)?;
        ensure(r.passed(), || format!("{a:?}: {:?} {:?}", r.mismatches, r.support_mismatches))?;
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(60))?;
    Ok(format!("{} matrices up to total degree 6 in {elapsed:.2?}", cases.len()))
}

fn criterion_8() -> Outcome {
    let bound = DegreeBound::Total(7);
    for letters in 1..=4 {
        let l = lyndon_dims(&GeneratorAlphabet::new(letters), &bound);
        let w = witt_dims(&GradedDimTable::units(letters), &bound).map_err(e)?;
        ensure(l == w, || format!("{letters} letters: {:?}", l.differences(&w)))?;
    }
    Ok("Lyndon counts equal Witt dimensions for 1 to 4 letters, degree <= 7".into())
}

fn criterion_9() -> Outcome {
    for label in ["2B", "4D"] {
        let c = MoonshineClass::builtin(label, 8).map_err(e)?;
        let fam = AdamsFamily::identity(&c, 8).map_err(e)?;
        let r = twisted_identity_check(&fam, 8, 8).map_err(e)?;
        ensure(r.equal, || format!("{label}: sides differ at {:?}", r.first_difference()))?;
        let exps = level_one_exponents(&fam, &r, 8).map_err(e)?;
        let table = mults_from_product(&c, 8, 8).map_err(e)?;
        let expect: std::collections::BTreeMap<_, _> = table.iter().map(|(k, v)| (k, v.clone())).collect();
        ensure(exps == expect, || format!("{label}: exponents differ from the root table"))?;
    }
    let samples = 20;
    for seed in 0..samples {
        let fam = AdamsFamily::random(1 + seed % 4, 4, 4, 4, seed);
        let r = twisted_identity_check(&fam, 4, 4).map_err(e)?;
        ensure(r.equal, || format!("random family {seed}: differ at {:?}", r.first_difference()))?;
    }
    Ok(format!("h = id for 2B and 4D on (8,8) and {samples} random families on (4,4)"))
}

fn criterion_10() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_monstrous");
    let runs: [&[&str]; 3] = [
        &["verify", "--class", "2B", "--box", "6", "6"],
        &["verify", "--class", "4D", "--box", "6", "6", "--format", "json"],
        &["plot", "--class", "4D", "--box", "7", "4"],
    ];
    for args in runs {
        let outputs: Vec<_> = (0..2)
            .map(|_| Command::new(bin).args(args).output().map_err(e))
            .collect::<Result<_, _>>()?;
        ensure(outputs[0].status.success(), || format!("{args:?} exited {}", outputs[0].status))?;
        ensure(outputs[0].stdout == outputs[1].stdout, || format!("{args:?} output changed"))?;
        ensure(!outputs[0].stdout.is_empty(), || format!("{args:?} printed nothing"))?;
    }
    Ok("verify and plot output is byte-identical across runs".into())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("2B sequences", criterion_1),
        ("4D sequences", criterion_2),
        ("Fricke dual route", criterion_3),
        ("product equals structure", criterion_4),
        ("lattice node sets", criterion_5),
        ("Cartan matrix checks", criterion_6),
        ("elimination oracle", criterion_7),
        ("Lyndon vs Witt", criterion_8),
        ("twisted identity", criterion_9),
        ("determinism", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
