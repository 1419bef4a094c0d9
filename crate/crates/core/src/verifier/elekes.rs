use num_rational::BigRational;

use super::{big, InequalityReport, Reporter};
use crate::arith::{Line, Scalar};
use crate::error::{Error, Result};
use crate::hp::Precision;
use crate::incidence::{
    arrangement_rich_points, origin_line_decomposition, rich_points_on_horizontal, DecompositionCase, Sign,
};
use crate::setcalc::{arithmetic_set, rep_function, ElementSet, Op};

/// Above this many lines the full arrangement is not enumerated; the
/// inclusion is still decided exactly on horizontal sections.
const ARRANGEMENT_LIMIT: usize = 600;

/// The lines `y = (d + x)/a`, i.e. `x − a·y = −d`, for `d ∈ A ± A`, `a ∈ A`.
pub fn elekes_lines(a: &ElementSet, d: &ElementSet) -> Vec<Line> {
    let mut out = Vec::with_capacity(a.len() * d.len());
    for x in a {
        for y in d {
            out.push(Line::new(Scalar::one(), -x, -y).expect("a = 1"));
        }
    }
    out.sort_unstable();
    out
}

/// For each dyadic `t`, the ratios with at least `t` realisations must be
/// ordinates of points where at least `t` of the lines meet.
pub fn elekes_check(a: &ElementSet, sign: Sign, hp: Precision) -> Result<Vec<InequalityReport>> {
    if a.contains_zero() {
        return Err(Error::ZeroDivisor("the line family requires 0 ∉ A".into()));
    }
    if a.is_empty() {
        return Err(Error::Undersized("empty set".into()));
    }
    let r = Reporter::new(hp);
    let (op, tag) = match sign {
        Sign::Minus => (Op::Diff, "diff"),
        Sign::Plus => (Op::Sum, "sum"),
    };
    let d = arithmetic_set(a, a, op)?;
    let lines = elekes_lines(a, &d);
    let ratios = rep_function(a, a, Op::Ratio)?;
    let n = a.len() as u128;
    let dn = d.len() as u128;
    let mut out = Vec::new();

    // Largest number of lines through one point of each horizontal section,
    // needed only for ratios realised at least twice.
    let section_degree: Vec<(Scalar, u64, usize)> = ratios
        .iter()
        .filter(|(_, k)| *k >= 2)
        .map(|(y, k)| {
            let best = rich_points_on_horizontal(&lines, y, 2).iter().map(|(_, deg)| *deg).max().unwrap_or(1);
            (y.clone(), k, best)
        })
        .collect();
    let any_slanted = lines.iter().any(|l| !l.a().is_zero());
    let arrangement = (lines.len() <= ARRANGEMENT_LIMIT).then(|| arrangement_rich_points(&lines, 2));

    let mut t = 1u64;
    while t as u128 <= n {
        let rt: Vec<&Scalar> = ratios.iter().filter(|(_, k)| *k >= t).map(|(y, _)| y).collect();
        let covered = if t == 1 {
            // every ordinate meets each slanted line once
            if any_slanted {
                rt.len()
            } else {
                0
            }
        } else {
            section_degree.iter().filter(|(_, k, best)| *k >= t && *best as u64 >= t).count()
        };
        let id = |s: &str| format!("elekes.{tag}.t{t:06}.{s}");
        out.push(r.equal_check(
            &id("inclusion"),
            "(livar)",
            covered,
            rt.len(),
            format!("ratios with >= {t} realisations that are ordinates of {t}-rich points"),
        ));
        let t3 = (t as u128).pow(3);
        out.push(r.report(
            &id("livar"),
            "(livar)",
            rt.len(),
            BigRational::new(big(dn * dn * n), big(t3)),
            format!("|R_t| against |A{}A|^2|A|/t^3", sign.symbol()),
        ));
        if let (Some(arr), true) = (&arrangement, t >= 2) {
            let rich: Vec<&Scalar> = arr.iter().filter(|(_, k)| *k as u64 >= t).map(|(p, _)| &p.y).collect();
            let mut ords: Vec<&Scalar> = rich.clone();
            ords.sort_unstable();
            ords.dedup();
            let hit = rt.iter().filter(|y| ords.binary_search(y).is_ok()).count();
            out.push(r.equal_check(
                &id("inclusion_arrangement"),
                "(livar)",
                hit,
                rt.len(),
                "same inclusion against the fully enumerated arrangement",
            ));
            out.push(r.report(
                &id("work"),
                "(work)",
                rich.len(),
                BigRational::new(big(dn * dn * n * n), big(t3)),
                format!("|P_t| against |L|^2/t^3 with |L| = {}", lines.len()),
            ));
        }
        t *= 2;
    }

    let dec = origin_line_decomposition(a, DecompositionCase::Product)?;
    let prod = dec.product_set_size as u128;
    out.push(r.report(
        &format!("elekes.{tag}.nbd_upper"),
        "(nbd)",
        dec.n,
        BigRational::new(big(dn * dn * prod), big(n * n * n)),
        format!("N = {} against |A{}A|^2|A.A|/|A|^3", dec.n, sign.symbol()),
    ));
    out.sort_by(|x, y| x.check_id.cmp(&y.check_id));
    Ok(out)
}
