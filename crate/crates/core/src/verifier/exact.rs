use dashu_float::DBig;
use num_rational::BigRational;
use rustc_hash::FxHashSet;

use super::{big, InequalityReport, Reporter};
use crate::energy::{additive_energy, cubic_energy_via_slices, popular_from_rep};
use crate::error::{Error, Result};
use crate::hp::Precision;
use crate::setcalc::{arithmetic_set, rep_function, slice, ElementSet, Op, RepFunction};

/// Per-difference data: `d`, `|A_d|`, `|A − A_d|`, `|A + A_d|`.
struct SliceRow {
    d_in_dprime: bool,
    d_in_dplus: bool,
    size: u64,
    minus: u64,
    plus: u64,
}

fn slice_rows(a: &ElementSet, diffs: &RepFunction, dprime: &ElementSet, dplus: &ElementSet) -> Vec<SliceRow> {
    let mut seen: FxHashSet<crate::arith::Scalar> = FxHashSet::default();
    diffs
        .iter()
        .map(|(d, n)| {
            let ad = slice(a, d);
            let mut count = |op: Op| {
                seen.clear();
                for x in a {
                    for y in &ad {
                        seen.insert(op.apply(x, y).expect("no division"));
                    }
                }
                seen.len() as u64
            };
            let minus = count(Op::Diff);
            let plus = count(Op::Sum);
            SliceRow { d_in_dprime: dprime.contains(d), d_in_dplus: dplus.contains(d), size: n, minus, plus }
        })
        .collect()
}

fn pow(v: u128, k: u32) -> u128 {
    v.pow(k)
}

/// The explicit-constant inequalities on a single set, plus their
/// absorbed-constant forms as report-only entries. Multiplicative checks
/// require `0 ∉ A`.
pub fn check_exact_inequalities(a: &ElementSet, multiplicative: bool, hp: Precision) -> Result<Vec<InequalityReport>> {
    if a.is_empty() {
        return Err(Error::Undersized("empty set".into()));
    }
    if multiplicative && a.contains_zero() {
        return Err(Error::ZeroDivisor("multiplicative checks require 0 ∉ A".into()));
    }
    let r = Reporter::new(hp);
    let n = a.len() as u128;
    let n2 = n * n;
    let n4 = n2 * n2;
    let diffs = rep_function(a, a, Op::Diff)?;
    let sums = rep_function(a, a, Op::Sum)?;
    let (dsz, ssz) = (diffs.len() as u128, sums.len() as u128);
    let energy = diffs.moment(2);
    let e3 = diffs.moment(3);
    let dplus = popular_from_rep(&diffs, a.len(), sums.len());
    let dprime = popular_from_rep(&diffs, a.len(), diffs.len());
    let rows = slice_rows(a, &diffs, &dprime, &dplus);
    let mut out = Vec::new();

    out.push(r.equal_check(
        "epm",
        "(epm)",
        energy,
        sums.moment(2),
        "sum of squared difference counts equals sum of squared sum counts",
    ));
    out.push(r.at_least_check("esc.diff", "(esc)", energy * dsz, n4, "E(A,A)|A-A| >= |A|^4"));
    out.push(r.at_least_check("esc.sum", "(esc)", energy * ssz, n4, "E(A,A)|A+A| >= |A|^4"));

    let on_dplus: u128 = dplus.iter().map(|d| pow(diffs.get(d) as u128, 2)).sum();
    out.push(r.at_least_check(
        "needed",
        "(needed)",
        on_dplus * 2 * ssz,
        n4,
        format!("energy on D+ (|D+| = {}) times 2|A+A| >= |A|^4; constant 1/2", dplus.len()),
    ));
    out.push(r.report("needed.constant1", "(needed)", on_dplus * ssz, n4, "implied constant 1"));

    out.push(r.equal_check(
        "twothree",
        "(twothree)",
        e3,
        cubic_energy_via_slices(a).as_u128(),
        "E_3(A) equals the sum over d of E(A, A_d)",
    ));

    // Slice bounds: both lines, both signs, over the full difference set and the
    // popular one.
    for (sign, pick) in [("diff", 0usize), ("sum", 1usize)] {
        let side = |row: &SliceRow| if pick == 0 { row.minus } else { row.plus } as u128;
        for (dname, first_line_set) in [("full", None), ("dprime", Some(true))] {
            let keep = |row: &SliceRow| first_line_set.is_none() || row.d_in_dprime;
            let lhs: u128 = rows.iter().filter(|x| keep(x)).map(|x| x.size as u128 * side(x)).sum();
            let s32 = rows
                .iter()
                .filter(|x| keep(x))
                .fold(DBig::ZERO, |acc, x| r.add(&acc, &r.monomial(&[(x.size as u128, 3, 2)])));
            let rhs = r.div(&r.mul(&r.hp.uint(n2), &r.mul(&s32, &s32)), &r.hp.uint(e3));
            out.push(r.at_least_check(
                &format!("th1.{sign}.{dname}"),
                "(th)",
                lhs,
                rhs,
                format!(
                    "sum |A_d||A{}A_d| >= |A|^2 (sum |A_d|^(3/2))^2 / E_3 over D = {dname}",
                    if pick == 0 { '-' } else { '+' }
                ),
            ));
        }
        for (dname, popular) in [("full", false), ("dplus", true)] {
            let keep = |row: &SliceRow| !popular || row.d_in_dplus;
            let lhs: u128 = rows.iter().filter(|x| keep(x)).map(|x| pow(x.size as u128, 2) * side(x)).sum();
            let sq: u128 = rows.iter().filter(|x| keep(x)).map(|x| pow(x.size as u128, 2)).sum();
            let rhs = BigRational::new(big(n2) * big(sq) * big(sq), big(e3));
            out.push(r.at_least_check(
                &format!("th2.{sign}.{dname}"),
                "(th)",
                lhs,
                rhs,
                format!(
                    "sum |A_d|^2|A{}A_d| >= |A|^2 (sum |A_d|^2)^2 / E_3 over D = {dname}",
                    if pick == 0 { '-' } else { '+' }
                ),
            ));
        }
    }

    // The slice sums bound the energies with the iterated sets.
    let a_minus = arithmetic_set(a, a, Op::Diff)?;
    let a_plus = arithmetic_set(a, a, Op::Sum)?;
    let e_minus = additive_energy(a, &a_minus).as_u128();
    let e_plus = additive_energy(a, &a_plus).as_u128();
    let kk_minus: u128 = rows.iter().map(|x| x.size as u128 * x.minus as u128).sum();
    let kk_plus: u128 = rows.iter().map(|x| x.size as u128 * x.plus as u128).sum();
    out.push(r.at_least_check("kk.diff", "(th)", e_minus, kk_minus, "E(A,A-A) >= sum |A_d||A-A_d|"));
    out.push(r.at_least_check("kk.sum", "(th)", e_plus, kk_plus, "E(A,A+A) >= sum |A_d||A+A_d|"));

    // Popular-difference steps behind the lower bounds for E(A, A±A).
    let mass: u128 = rows.iter().filter(|x| x.d_in_dprime).map(|x| x.size as u128).sum();
    out.push(r.at_least_check(
        "thth.step.dprime_mass",
        "(dprime)",
        2 * mass,
        n2,
        format!("2 sum_(D') |A_d| >= |A|^2 with |D'| = {}", dprime.len()),
    ));
    let s32: DBig = rows
        .iter()
        .filter(|x| x.d_in_dprime)
        .fold(DBig::ZERO, |acc, x| r.add(&acc, &r.monomial(&[(x.size as u128, 3, 2)])));
    let tau_sqrt = r.hp.sqrt(&r.hp.ratio(&BigRational::new(big(n2), big(2 * dsz))));
    out.push(r.at_least_check(
        "thth.step.dprime_power",
        "(dprime)",
        s32,
        r.mul(&tau_sqrt, &r.hp.uint(mass)),
        "sum_(D') |A_d|^(3/2) >= (|A|^2/(2|A-A|))^(1/2) sum_(D') |A_d|",
    ));
    let max_dplus = rows.iter().filter(|x| x.d_in_dplus).map(|x| x.size as u128).max().unwrap_or(0);
    out.push(r.at_least_check(
        "thth.diff.derived",
        "(thth)",
        big(8) * big(e_minus) * big(dsz) * big(e3),
        big(n4) * big(n4),
        "8 E(A,A-A)|A-A|E_3 >= |A|^8",
    ));
    out.push(r.at_least_check(
        "thth.sum.derived",
        "(thth)",
        big(4) * big(e_plus) * big(ssz) * big(ssz) * big(e3) * big(max_dplus),
        big(n4) * big(n4) * big(n2),
        format!("4 E(A,A+A)|A+A|^2 E_3 max_(D+)|A_d| >= |A|^10 with max = {max_dplus}"),
    ));
    out.push(r.report(
        "thth.diff",
        "(thth)",
        big(e_minus),
        BigRational::new(big(n4) * big(n4), big(dsz) * big(e3)),
        "implied constant 1",
    ));
    out.push(r.report(
        "thth.sum",
        "(thth)",
        big(e_plus),
        BigRational::new(big(n4) * big(n4) * big(n2), big(ssz) * big(ssz) * big(e3) * big(max_dplus)),
        "implied constant 1",
    ));

    if multiplicative {
        let ratios = rep_function(a, a, Op::Ratio)?;
        let emult = ratios.moment(2);
        let prod = arithmetic_set(a, a, Op::Prod)?.len() as u128;
        out.push(r.at_least_check("emult.prod", "(emult)", emult * prod, n4, "E_*(A)|A.A| >= |A|^4"));
        out.push(r.at_least_check("emult.ratio", "(emult)", emult * ratios.len() as u128, n4, "E_*(A)|A:A| >= |A|^4"));
    }

    out.sort_by(|x, y| x.check_id.cmp(&y.check_id));
    Ok(out)
}
