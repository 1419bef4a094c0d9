use super::{InequalityReport, Reporter};
use crate::arith::Line;
use crate::hp::Precision;
use crate::incidence::{
    count_incidences, incidence_degrees, line_set, rich_lines, rich_points, weighted_incidences, PlanarPointSet,
    WeightedLineSet,
};

fn dyadic_upto(max: usize) -> impl Iterator<Item = usize> {
    std::iter::successors(Some(1usize), |t| t.checked_mul(2)).take_while(move |t| *t <= max.max(1))
}

/// Incidence bound `(|P||L|)^(2/3) + |P| + |L|` and the rich point/line
/// bounds over dyadic `t`, plus the weighted form with unit weights.
pub fn check_st_reports(points: &PlanarPointSet, lines: &[Line], hp: Precision) -> Vec<InequalityReport> {
    let r = Reporter::new(hp);
    let lines = line_set(lines.iter().cloned());
    let (np, nl) = (points.len() as u128, lines.len() as u128);
    let (pd, ld) = incidence_degrees(points, &lines);
    let incidences: u128 = pd.iter().map(|&d| d as u128).sum();
    let mut out = Vec::new();

    let bound = r.add(&r.monomial(&[(np * nl, 2, 3)]), &r.hp.uint(np + nl));
    out.push(r.report("ste", "(STe)", incidences, bound, format!("|P| = {np}, |L| = {nl}")));

    let sweep = |degrees: &[usize], other: u128, kind: &str, out: &mut Vec<InequalityReport>| {
        let max = degrees.iter().copied().max().unwrap_or(0);
        for t in dyadic_upto(max) {
            let rich = degrees.iter().filter(|&&d| d >= t).count();
            let t = t as u128;
            let rhs = r.add(
                &r.div(&r.hp.uint(other * other), &r.hp.uint(t * t * t)),
                &r.div(&r.hp.uint(other), &r.hp.uint(t)),
            );
            out.push(r.report(&format!("work.{kind}.t{t:06}"), "(work)", rich, rhs, format!("t = {t}")));
        }
    };
    sweep(&pd, nl, "points", &mut out);
    sweep(&ld, np, "lines", &mut out);

    out.push(check_weighted_st_report(points, &WeightedLineSet::unit(lines), hp));
    out.sort_by(|x, y| x.check_id.cmp(&y.check_id));
    out
}

/// `i_m(P, L)` against `m̄^(1/3)(|P|W)^(2/3) + m̄|P| + W` with `m̄` the
/// largest weight.
pub fn check_weighted_st_report(points: &PlanarPointSet, lines: &WeightedLineSet, hp: Precision) -> InequalityReport {
    let r = Reporter::new(hp);
    let ls = lines.lines();
    let (_, ld) = incidence_degrees(points, &ls);
    let weighted: u128 = lines.iter().zip(&ld).map(|((_, w), &d)| w as u128 * d as u128).sum();
    let np = points.len() as u128;
    let w = lines.total_weight() as u128;
    let m = lines.max_weight() as u128;
    let bound = r.add(&r.monomial(&[(m, 1, 3), (np * w, 2, 3)]), &r.hp.uint(m * np + w));
    r.report("stew", "(STew)", weighted, bound, format!("W = {w}, max weight = {m}, |P| = {np}"))
}

/// Independent counts of the same incidence total: pairwise tests, degree
/// sums, unit weights, and the layers `Σ_t |P_t|`, `Σ_t |L_t|`.
pub fn check_incidence_consistency(points: &PlanarPointSet, lines: &[Line], hp: Precision) -> Vec<InequalityReport> {
    let r = Reporter::new(hp);
    let lines = line_set(lines.iter().cloned());
    let brute = count_incidences(points, &lines);
    let (pd, ld) = incidence_degrees(points, &lines);
    let unit = weighted_incidences(points, &WeightedLineSet::unit(lines.clone()));
    let layers = |max: usize, rich: &dyn Fn(usize) -> usize| (1..=max).map(rich).sum::<usize>();
    let point_layers = layers(pd.iter().copied().max().unwrap_or(0), &|t| rich_points(points, &lines, t).len());
    let line_layers = layers(ld.iter().copied().max().unwrap_or(0), &|t| rich_lines(points, &lines, t).len());
    let rows = [
        ("incidence.point_degrees", pd.iter().sum::<usize>(), "sum of point degrees"),
        ("incidence.line_degrees", ld.iter().sum::<usize>(), "sum of line degrees"),
        ("incidence.unit_weights", unit as usize, "weighted incidences with unit weights"),
        ("incidence.rich_points", point_layers, "sum over t >= 1 of |P_t|"),
        ("incidence.rich_lines", line_layers, "sum over t >= 1 of |L_t|"),
    ];
    rows.iter()
        .map(|&(id, v, what)| r.equal_check(id, "(STe)", v, brute, format!("{what} against pairwise count")))
        .collect()
}
