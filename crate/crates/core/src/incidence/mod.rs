//! Exact point-line incidence counting, weighted line families and the
//! origin-line constructions on `A × A`.

mod decomposition;
pub mod kernel;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use rustc_hash::FxHashMap;

use crate::arith::{Line, Point2, Scalar};
use crate::error::{Error, Result};

pub use decomposition::{origin_line_decomposition, DecompositionCase, OriginDecomposition, OriginLine};
pub use kernel::Sign;

/// A finite set of points, strictly sorted by `(x, y)`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PlanarPointSet {
    points: Vec<Point2>,
}

impl PlanarPointSet {
    pub fn new<I: IntoIterator<Item = Point2>>(items: I) -> PlanarPointSet {
        let mut points: Vec<Point2> = items.into_iter().collect();
        points.sort_unstable();
        points.dedup();
        PlanarPointSet { points }
    }

    pub(crate) fn from_sorted_unchecked(points: Vec<Point2>) -> PlanarPointSet {
        debug_assert!(points.windows(2).all(|w| w[0] < w[1]));
        PlanarPointSet { points }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Point2> {
        self.points.iter()
    }

    pub fn as_slice(&self) -> &[Point2] {
        &self.points
    }

    pub fn contains(&self, p: &Point2) -> bool {
        self.points.binary_search(p).is_ok()
    }

    pub fn is_subset(&self, other: &PlanarPointSet) -> bool {
        self.points.iter().all(|p| other.contains(p))
    }

    /// `{−p : p ∈ P}`.
    pub fn negated(&self) -> PlanarPointSet {
        PlanarPointSet::new(self.points.iter().map(Point2::neg))
    }

    /// Distinct ordinates.
    pub fn ordinates(&self) -> Vec<Scalar> {
        let mut ys: Vec<Scalar> = self.points.iter().map(|p| p.y.clone()).collect();
        ys.sort_unstable();
        ys.dedup();
        ys
    }
}

impl FromIterator<Point2> for PlanarPointSet {
    fn from_iter<I: IntoIterator<Item = Point2>>(iter: I) -> Self {
        PlanarPointSet::new(iter)
    }
}

impl<'a> IntoIterator for &'a PlanarPointSet {
    type Item = &'a Point2;
    type IntoIter = std::slice::Iter<'a, Point2>;
    fn into_iter(self) -> Self::IntoIter {
        self.points.iter()
    }
}

impl fmt::Debug for PlanarPointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.points.iter()).finish()
    }
}

/// Deduplicates and sorts a line family.
pub fn line_set<I: IntoIterator<Item = Line>>(lines: I) -> Vec<Line> {
    let mut v: Vec<Line> = lines.into_iter().collect();
    v.sort_unstable();
    v.dedup();
    v
}

/// `|I(P, L)|` by testing every pair.
pub fn count_incidences(points: &PlanarPointSet, lines: &[Line]) -> u64 {
    lines.iter().map(|l| points.iter().filter(|p| l.contains(p)).count() as u64).sum()
}

/// Point degrees and line degrees, in input order. Lines are grouped by
/// direction so each point is evaluated once per direction rather than once
/// per line.
pub fn incidence_degrees(points: &PlanarPointSet, lines: &[Line]) -> (Vec<usize>, Vec<usize>) {
    let mut order: Vec<usize> = (0..lines.len()).collect();
    order.sort_by(|&i, &j| lines[i].cmp(&lines[j]));
    let mut point_deg = vec![0usize; points.len()];
    let mut line_deg = vec![0usize; lines.len()];
    let mut by_c: FxHashMap<&Scalar, Vec<usize>> = FxHashMap::default();
    let mut start = 0;
    while start < order.len() {
        let head = &lines[order[start]];
        let mut end = start + 1;
        while end < order.len() && lines[order[end]].is_parallel_to(head) {
            end += 1;
        }
        by_c.clear();
        for &i in &order[start..end] {
            by_c.entry(lines[i].c()).or_default().push(i);
        }
        for (k, p) in points.iter().enumerate() {
            let c = &(head.a() * &p.x) + &(head.b() * &p.y);
            if let Some(ids) = by_c.get(&c) {
                point_deg[k] += ids.len();
                for &i in ids {
                    line_deg[i] += 1;
                }
            }
        }
        start = end;
    }
    (point_deg, line_deg)
}

/// Number of lines of `lines` through each point, in point order.
pub fn point_degrees(points: &PlanarPointSet, lines: &[Line]) -> Vec<usize> {
    incidence_degrees(points, lines).0
}

/// Number of points on each line, in line order.
pub fn line_degrees(points: &PlanarPointSet, lines: &[Line]) -> Vec<usize> {
    incidence_degrees(points, lines).1
}

/// Points of `P` on at least `t` lines of `L`.
pub fn rich_points(points: &PlanarPointSet, lines: &[Line], t: usize) -> PlanarPointSet {
    let kept =
        points.iter().zip(point_degrees(points, lines)).filter(|(_, d)| *d >= t).map(|(p, _)| p.clone()).collect();
    PlanarPointSet::from_sorted_unchecked(kept)
}

/// Lines of `L` through at least `t` points of `P`.
pub fn rich_lines(points: &PlanarPointSet, lines: &[Line], t: usize) -> Vec<Line> {
    lines.iter().zip(line_degrees(points, lines)).filter(|(_, d)| *d >= t).map(|(l, _)| l.clone()).collect()
}

/// Every point where at least `t ≥ 2` lines of the arrangement meet, with
/// its degree. Quadratic in `|L|`.
pub fn arrangement_rich_points(lines: &[Line], t: usize) -> Vec<(Point2, usize)> {
    assert!(t >= 2, "every point of a line is 1-rich");
    let lines = line_set(lines.iter().cloned());
    let mut pairs: FxHashMap<Point2, u64> = FxHashMap::default();
    for (i, l) in lines.iter().enumerate() {
        for m in &lines[i + 1..] {
            if let Some(p) = l.intersect(m) {
                *pairs.entry(p).or_insert(0) += 1;
            }
        }
    }
    // k concurrent lines contribute k(k−1)/2 intersecting pairs.
    let mut out: Vec<(Point2, usize)> = pairs
        .into_iter()
        .map(|(p, m)| {
            let k = ((1.0 + (1.0 + 8.0 * m as f64).sqrt()) / 2.0).round() as u64;
            debug_assert_eq!(k * (k - 1) / 2, m);
            (p, k as usize)
        })
        .filter(|(_, k)| *k >= t)
        .collect();
    out.sort_unstable_by(|a, b| a.0.cmp(&b.0));
    out
}

/// Points on the horizontal line `y = y0` that lie on at least `t` lines,
/// with their degrees. Only points met by some non-horizontal line are
/// candidates; a member equal to `y = y0` adds one to each of them.
pub fn rich_points_on_horizontal(lines: &[Line], y0: &Scalar, t: usize) -> Vec<(Point2, usize)> {
    let mut hits: FxHashMap<Scalar, usize> = FxHashMap::default();
    let mut base = 0usize;
    for l in lines {
        if l.a().is_zero() {
            // canonical horizontal: y = c
            if l.c() == y0 {
                base += 1;
            }
            continue;
        }
        // canonical form has a = 1: x = c − b·y0
        let x = l.c() - &(l.b() * y0);
        *hits.entry(x).or_insert(0) += 1;
    }
    let mut out: Vec<(Point2, usize)> = hits
        .into_iter()
        .map(|(x, k)| (x, k + base))
        .filter(|(_, k)| *k >= t)
        .map(|(x, k)| (Point2::new(x, y0.clone()), k))
        .collect();
    out.sort_unstable_by(|a, b| a.0.cmp(&b.0));
    out
}

/// Lines carrying positive integer weights, each capped at `cap`.
#[derive(Clone, PartialEq, Eq)]
pub struct WeightedLineSet {
    lines: Vec<(Line, u64)>,
    cap: u64,
    raw_total: u64,
}

impl WeightedLineSet {
    /// Merges repeated lines by adding their weights, then caps.
    pub fn from_raw<I: IntoIterator<Item = (Line, u64)>>(items: I, cap: u64) -> Result<WeightedLineSet> {
        if cap == 0 {
            return Err(Error::Degenerate("weight cap must be positive".into()));
        }
        let mut merged: BTreeMap<Line, u64> = BTreeMap::new();
        let mut raw_total = 0u64;
        for (l, w) in items {
            if w == 0 {
                return Err(Error::Degenerate(format!("zero weight on {l:?}")));
            }
            raw_total += w;
            *merged.entry(l).or_insert(0) += w;
        }
        let lines = merged.into_iter().map(|(l, w)| (l, w.min(cap))).collect();
        Ok(WeightedLineSet { lines, cap, raw_total })
    }

    pub fn unit<I: IntoIterator<Item = Line>>(lines: I) -> WeightedLineSet {
        let lines = line_set(lines);
        let raw_total = lines.len() as u64;
        WeightedLineSet { lines: lines.into_iter().map(|l| (l, 1)).collect(), cap: u64::MAX, raw_total }
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn cap(&self) -> u64 {
        self.cap
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Line, u64)> + '_ {
        self.lines.iter().map(|(l, w)| (l, *w))
    }

    pub fn lines(&self) -> Vec<Line> {
        self.lines.iter().map(|(l, _)| l.clone()).collect()
    }

    pub fn weight(&self, l: &Line) -> u64 {
        match self.lines.binary_search_by(|(k, _)| k.cmp(l)) {
            Ok(i) => self.lines[i].1,
            Err(_) => 0,
        }
    }

    /// `W` after capping.
    pub fn total_weight(&self) -> u64 {
        self.lines.iter().map(|(_, w)| w).sum()
    }

    /// Weight before capping.
    pub fn raw_total(&self) -> u64 {
        self.raw_total
    }

    pub fn max_weight(&self) -> u64 {
        self.lines.iter().map(|(_, w)| *w).max().unwrap_or(0)
    }

    /// `m̄ = W / |L|`; zero for an empty family.
    pub fn mean_weight(&self) -> BigRational {
        if self.lines.is_empty() {
            return BigRational::from_integer(BigInt::from(0));
        }
        BigRational::new(BigInt::from(self.total_weight()), BigInt::from(self.lines.len()))
    }

    /// `|{l : m(l) ≥ t}|`.
    pub fn heavy_count(&self, t: u64) -> usize {
        self.lines.iter().filter(|(_, w)| *w >= t).count()
    }
}

impl fmt::Debug for WeightedLineSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WeightedLineSet").field("cap", &self.cap).field("lines", &self.lines).finish()
    }
}

/// `i_m(P, L) = Σ_{(p, l) ∈ I(P, L)} m(l)`.
pub fn weighted_incidences(points: &PlanarPointSet, lines: &WeightedLineSet) -> u64 {
    lines.iter().map(|(l, w)| w * points.iter().filter(|p| l.contains(p)).count() as u64).sum()
}

/// Translates every origin line to every point of `Q`; the raw weight of a
/// translate is the number of `q` producing it, then capped at `cap`.
pub fn translate_and_weight(origin_lines: &[Line], q: &PlanarPointSet, cap: u64) -> Result<WeightedLineSet> {
    if let Some(l) = origin_lines.iter().find(|l| !l.passes_through_origin()) {
        return Err(Error::Degenerate(format!("{l:?} does not pass through the origin")));
    }
    let lines = line_set(origin_lines.iter().cloned());
    WeightedLineSet::from_raw(lines.iter().flat_map(|l| q.iter().map(move |p| (l.parallel_through(p), 1))), cap)
}

/// Sums `p + q` with at least `t` representations.
pub fn rich_sums(p: &PlanarPointSet, q: &PlanarPointSet, t: u64) -> PlanarPointSet {
    let pi = kernel::IndexedPoints::new(p);
    let qi = kernel::IndexedPoints::new(q);
    kernel::point_sums(&pi, &qi, Sign::Plus).rich(t)
}

/// Partition by weight relative to `m̄`: group 0 holds `m ≤ m̄`, group
/// `j ≥ 1` holds `2^{j−1}·m̄ < m ≤ 2^j·m̄`. Empty groups are omitted.
pub fn dyadic_weight_groups(lines: &WeightedLineSet) -> Vec<(u32, Vec<Line>)> {
    if lines.is_empty() {
        return Vec::new();
    }
    let total = lines.total_weight() as u128;
    let count = lines.len() as u128;
    let mut groups: BTreeMap<u32, Vec<Line>> = BTreeMap::new();
    for (l, w) in lines.iter() {
        // m ≤ 2^j·W/|L|  ⇔  m·|L| ≤ 2^j·W
        let lhs = w as u128 * count;
        let mut j = 0u32;
        while lhs > (total << j) {
            j += 1;
        }
        groups.entry(j).or_default().push(l.clone());
    }
    groups.into_iter().collect()
}
