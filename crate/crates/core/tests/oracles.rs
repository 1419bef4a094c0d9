//! Library results against direct enumeration written independently here.

use std::collections::BTreeSet;

use sumprod_core::energy::{additive_energy, cubic_energy, cubic_energy_via_slices, multiplicative_energy};
use sumprod_core::genlab::FamilySpec;
use sumprod_core::hp::Precision;
use sumprod_core::incidence::DecompositionCase;
use sumprod_core::incidence::{count_incidences, rich_points, PlanarPointSet, Sign};
use sumprod_core::setcalc::{arithmetic_set, rep_function, slice};
use sumprod_core::verifier::{check_exact_inequalities, elekes_check, proof_chain, theorem_report, Verdict};
use sumprod_core::{ElementSet, Line, Op, Point2, Scalar};

fn set(spec: &str) -> ElementSet {
    spec.parse::<FamilySpec>().unwrap().generate().unwrap()
}

fn quadruples(a: &[Scalar], same: impl Fn(&Scalar, &Scalar, &Scalar, &Scalar) -> bool) -> u128 {
    let mut n = 0;
    for x in a {
        for y in a {
            for z in a {
                for w in a {
                    n += u128::from(same(x, y, z, w));
                }
            }
        }
    }
    n
}

fn sextuples(a: &[Scalar]) -> u128 {
    let diffs: Vec<Scalar> = a.iter().flat_map(|x| a.iter().map(move |y| x - y)).collect();
    let mut n = 0;
    for d in &diffs {
        for e in &diffs {
            if d != e {
                continue;
            }
            n += diffs.iter().filter(|f| *f == d).count() as u128;
        }
    }
    n
}

#[test]
fn energies_match_enumeration() {
    for spec in [
        "ap:1:1:7",
        "gp:1:3:6",
        "convex:squares:6",
        "randint:-20:20:9:seed=5",
        "randgauss:-4:4:8:seed=9:den=3",
        "ap:1/2:1+1i:5",
    ] {
        let a = set(spec);
        let v = a.as_slice();
        assert_eq!(additive_energy(&a, &a).as_u128(), quadruples(v, |x, y, z, w| x - y == z - w), "{spec}");
        assert_eq!(cubic_energy(&a).as_u128(), sextuples(v), "{spec}");
        assert_eq!(cubic_energy_via_slices(&a).as_u128(), sextuples(v), "{spec}");
        if !a.contains_zero() {
            assert_eq!(
                multiplicative_energy(&a).unwrap().as_u128(),
                quadruples(v, |x, y, z, w| x * w == y * z),
                "{spec}"
            );
        }
    }
}

#[test]
fn arithmetic_sets_match_pair_loops() {
    let a = set("randgauss:-3:3:7:seed=2:den=2");
    let b = set("randint:1:9:4:seed=4");
    for op in [Op::Sum, Op::Diff, Op::Prod, Op::Ratio] {
        let mut expect = BTreeSet::new();
        for x in &a {
            for y in &b {
                expect.insert(match op {
                    Op::Sum => x + y,
                    Op::Diff => x - y,
                    Op::Prod => x * y,
                    Op::Ratio => x.checked_div(y).unwrap(),
                });
            }
        }
        let got = arithmetic_set(&a, &b, op).unwrap();
        assert_eq!(got.iter().cloned().collect::<BTreeSet<_>>(), expect);
        assert_eq!(rep_function(&a, &b, op).unwrap().total(), (a.len() * b.len()) as u64);
    }
}

#[test]
fn slices_are_realisation_counts() {
    let a = set("convex:cubes:6");
    let diffs = rep_function(&a, &a, Op::Diff).unwrap();
    for (d, n) in diffs.iter() {
        let s = slice(&a, d);
        assert_eq!(s.len() as u64, n);
        assert!(s.iter().all(|x| a.contains(&(x + d))));
    }
}

#[test]
fn energy_examples() {
    let ap = ElementSet::from_ints(&[1, 2, 3, 4, 5]);
    // n(d) = 5 − |d|
    assert_eq!(additive_energy(&ap, &ap).as_u128(), 25 + 2 * (16 + 9 + 4 + 1));
    let a = ElementSet::from_ints(&[1, 2, 3]);
    let reps = check_exact_inequalities(&a, true, Precision::default()).unwrap();
    let esc = reps.iter().find(|r| r.check_id == "esc.diff").unwrap();
    assert_eq!((esc.lhs.as_str(), esc.rhs.as_str()), ("95", "81"));
}

#[test]
fn incidences_match_pairwise_scan() {
    let pts: PlanarPointSet = (-2..3).flat_map(|x| (-2..3).map(move |y| Point2::ints(x, y))).collect();
    let lines: Vec<Line> = [(1, 1, 0), (1, -1, 0), (0, 1, 1), (1, 0, -2), (1, 2, 3), (2, 1, 7)]
        .iter()
        .map(|&(a, b, c)| Line::new(Scalar::int(a), Scalar::int(b), Scalar::int(c)).unwrap())
        .collect();
    let mut expect = 0;
    for p in &pts {
        for l in &lines {
            if l.a() * &p.x + l.b() * &p.y == *l.c() {
                expect += 1;
            }
        }
    }
    assert_eq!(count_incidences(&pts, &lines), expect);
    let layered: usize = (1..=lines.len()).map(|t| rich_points(&pts, &lines, t).len()).sum();
    assert_eq!(layered as u64, expect);
}

#[test]
fn chain_examples() {
    let hp = Precision::default();
    let a = ElementSet::from_ints(&[1, 2, 4]);
    let rep = proof_chain(&a, DecompositionCase::Ratio, Sign::Minus, hp).unwrap();
    assert_eq!((rep.decomposition.lines, rep.decomposition.points, rep.decomposition.n), (5, 9, 3));
    assert!(rep.steps.iter().filter(|s| s.is_exact()).all(|s| s.verdict == Verdict::Pass));

    let ap = set("ap:1:1:16");
    let ratios = arithmetic_set(&ap, &ap, Op::Ratio).unwrap().len();
    let rep = proof_chain(&ap, DecompositionCase::Ratio, Sign::Minus, hp).unwrap();
    let expect = ((31 + ratios) as f64).ln() / 16f64.ln();
    assert!((rep.theorem_exponent_value - expect).abs() < 1e-12);
    assert_eq!(rep.target_exponent, "1+9/31");
}

#[test]
fn progressions_trade_terms() {
    let hp = Precision::default();
    let (ap, gp) = (set("ap:1:1:8"), set("gp:1:2:8"));
    let size = |a: &ElementSet, op| arithmetic_set(a, a, op).unwrap().len();
    assert!(size(&gp, Op::Diff) > size(&ap, Op::Diff));
    assert!(size(&ap, Op::Ratio) > size(&gp, Op::Ratio));
    for a in [&ap, &gp] {
        let reps = theorem_report(a, hp).unwrap();
        assert!(reps.iter().all(|r| r.ratio_value.is_finite() && r.ratio_value > 0.0));
    }
}

#[test]
fn elekes_examples() {
    let hp = Precision::default();
    for a in [ElementSet::from_ints(&[1, 2]), set("gp:1:2:4"), set("ap:1:1:6"), set("randgauss:1:4:5:seed=3")] {
        for sign in [Sign::Minus, Sign::Plus] {
            let reps = elekes_check(&a, sign, hp).unwrap();
            let inclusions: Vec<_> = reps.iter().filter(|r| r.check_id.ends_with("inclusion")).collect();
            assert!(!inclusions.is_empty());
            assert!(inclusions.iter().all(|r| r.verdict == Verdict::Pass), "{inclusions:#?}");
        }
    }
}
