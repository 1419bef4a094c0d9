//! Counting kernels on interned coordinates.
//!
//! Points are stored as index pairs into sorted coordinate tables. A vector
//! sum `p ± q` then costs two table lookups instead of two field operations,
//! which is what makes `|P|·|Q|`-sized enumerations affordable.

use std::collections::BTreeMap;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rustc_hash::FxHashMap;

use super::PlanarPointSet;
use crate::arith::{Line, Point2, Scalar};

/// Above this many cells the sum counter switches from a dense array to a
/// hash map.
const DENSE_CELLS: usize = 1 << 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn apply(self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            Sign::Plus => a + b,
            Sign::Minus => a - b,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

#[derive(Clone, Debug)]
pub struct IndexedPoints {
    xs: Vec<Scalar>,
    ys: Vec<Scalar>,
    pts: Vec<(u32, u32)>,
}

fn sorted_unique(mut v: Vec<Scalar>) -> Vec<Scalar> {
    v.sort_unstable();
    v.dedup();
    v
}

fn index_map(values: &[Scalar]) -> FxHashMap<&Scalar, u32> {
    values.iter().enumerate().map(|(i, v)| (v, i as u32)).collect()
}

impl IndexedPoints {
    pub fn new(p: &PlanarPointSet) -> IndexedPoints {
        let xs = sorted_unique(p.iter().map(|q| q.x.clone()).collect());
        let ys = sorted_unique(p.iter().map(|q| q.y.clone()).collect());
        let xi = index_map(&xs);
        let yi = index_map(&ys);
        // PlanarPointSet order is (x, y) lexicographic, so pts stays sorted.
        let pts = p.iter().map(|q| (xi[&q.x], yi[&q.y])).collect();
        IndexedPoints { xs, ys, pts }
    }

    pub fn len(&self) -> usize {
        self.pts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pts.is_empty()
    }

    pub fn point(&self, i: usize) -> Point2 {
        let (x, y) = self.pts[i];
        Point2::new(self.xs[x as usize].clone(), self.ys[y as usize].clone())
    }

    pub fn to_point_set(&self) -> PlanarPointSet {
        PlanarPointSet::from_sorted_unchecked((0..self.len()).map(|i| self.point(i)).collect())
    }

    /// `{−p}`: reversing a sorted table and negating keeps it sorted only
    /// for real coordinates, so the tables are rebuilt.
    pub fn negated(&self) -> IndexedPoints {
        IndexedPoints::new(&self.to_point_set().negated())
    }
}

/// All values `a ± b`, as a sorted table plus the `|a|×|b|` index grid.
fn combine(a: &[Scalar], b: &[Scalar], sign: Sign) -> (Vec<Scalar>, Vec<u32>) {
    let raw: Vec<Scalar> = a.iter().flat_map(|x| b.iter().map(move |y| sign.apply(x, y))).collect();
    let values = sorted_unique(raw.clone());
    let idx = index_map(&values);
    let grid = raw.iter().map(|v| idx[v]).collect();
    (values, grid)
}

/// Representation counts `n(x) = #{(p, q) : p ± q = x}`.
#[derive(Clone, Debug)]
pub struct SumCounts {
    xs: Vec<Scalar>,
    ys: Vec<Scalar>,
    /// `(x index, y index, count)`, sorted by point.
    entries: Vec<(u32, u32, u32)>,
}

pub fn point_sums(p: &IndexedPoints, q: &IndexedPoints, sign: Sign) -> SumCounts {
    let (xs, gx) = combine(&p.xs, &q.xs, sign);
    let (ys, gy) = combine(&p.ys, &q.ys, sign);
    let (qxn, qyn) = (q.xs.len(), q.ys.len());
    let ny = ys.len();
    let cells = xs.len().saturating_mul(ny);
    let mut entries = Vec::new();
    if cells <= DENSE_CELLS {
        let mut grid = vec![0u32; cells];
        for &(px, py) in &p.pts {
            let rx = &gx[px as usize * qxn..(px as usize + 1) * qxn];
            let ry = &gy[py as usize * qyn..(py as usize + 1) * qyn];
            for &(qx, qy) in &q.pts {
                grid[rx[qx as usize] as usize * ny + ry[qy as usize] as usize] += 1;
            }
        }
        for (cell, &n) in grid.iter().enumerate() {
            if n > 0 {
                entries.push(((cell / ny) as u32, (cell % ny) as u32, n));
            }
        }
    } else {
        let bound = cells.min(p.len().saturating_mul(q.len()));
        let mut map: FxHashMap<u64, u32> = FxHashMap::with_capacity_and_hasher(bound.min(1 << 26), Default::default());
        for &(px, py) in &p.pts {
            let rx = &gx[px as usize * qxn..(px as usize + 1) * qxn];
            let ry = &gy[py as usize * qyn..(py as usize + 1) * qyn];
            for &(qx, qy) in &q.pts {
                let key = ((rx[qx as usize] as u64) << 32) | ry[qy as usize] as u64;
                *map.entry(key).or_insert(0) += 1;
            }
        }
        entries = map.into_iter().map(|(k, n)| ((k >> 32) as u32, k as u32, n)).collect();
        entries.sort_unstable();
    }
    SumCounts { xs, ys, entries }
}

/// `Σ n(x)^k` over `x ∈ P ± Q` without materialising the sum set: pairs of
/// columns are grouped by their output abscissa and each group is counted
/// in its own small table.
pub fn sum_moment(p: &IndexedPoints, q: &IndexedPoints, sign: Sign, k: u32) -> u128 {
    let (xs, gx) = combine(&p.xs, &q.xs, sign);
    let columns = |pts: &IndexedPoints| {
        let mut c = vec![Vec::new(); pts.xs.len()];
        for &(x, y) in &pts.pts {
            c[x as usize].push(y);
        }
        c
    };
    let (pc, qc) = (columns(p), columns(q));
    let mut groups: Vec<Vec<(u32, u32)>> = vec![Vec::new(); xs.len()];
    for px in 0..p.xs.len() {
        for qx in 0..q.xs.len() {
            groups[gx[px * q.xs.len() + qx] as usize].push((px as u32, qx as u32));
        }
    }
    fn run<K: Hash + Eq>(
        groups: &[Vec<(u32, u32)>],
        pc: &[Vec<u32>],
        qc: &[Vec<u32>],
        py: &[K],
        qy: &[K],
        k: u32,
        op: impl Fn(&K, &K) -> K,
    ) -> u128 {
        let mut map: FxHashMap<K, u32> = FxHashMap::default();
        let mut acc = 0u128;
        for g in groups {
            map.clear();
            for &(px, qx) in g {
                for &a in &pc[px as usize] {
                    for &b in &qc[qx as usize] {
                        *map.entry(op(&py[a as usize], &qy[b as usize])).or_insert(0) += 1;
                    }
                }
            }
            acc += map.values().map(|&n| (n as u128).pow(k)).sum::<u128>();
        }
        acc
    }
    match fixed_tables(&[&p.ys, &q.ys]) {
        Some(f) => match sign {
            Sign::Plus => run(&groups, &pc, &qc, &f[0], &f[1], k, |a, b| (a.0 + b.0, a.1 + b.1)),
            Sign::Minus => run(&groups, &pc, &qc, &f[0], &f[1], k, |a, b| (a.0 - b.0, a.1 - b.1)),
        },
        None => run(&groups, &pc, &qc, &p.ys, &q.ys, k, |a, b| sign.apply(a, b)),
    }
}

impl SumCounts {
    /// Number of distinct sums.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.entries.iter().map(|e| e.2 as u64).sum()
    }

    /// `Σ n(x)^k`.
    pub fn moment(&self, k: u32) -> u128 {
        self.entries.iter().map(|e| (e.2 as u128).pow(k)).sum()
    }

    pub fn max_count(&self) -> u64 {
        self.entries.iter().map(|e| e.2 as u64).max().unwrap_or(0)
    }

    pub fn counts(&self) -> impl Iterator<Item = u64> + '_ {
        self.entries.iter().map(|e| e.2 as u64)
    }

    pub fn point(&self, i: usize) -> Point2 {
        let (x, y, _) = self.entries[i];
        Point2::new(self.xs[x as usize].clone(), self.ys[y as usize].clone())
    }

    pub fn get(&self, p: &Point2) -> u64 {
        let (Ok(x), Ok(y)) = (self.xs.binary_search(&p.x), self.ys.binary_search(&p.y)) else {
            return 0;
        };
        match self.entries.binary_search_by(|e| (e.0, e.1).cmp(&(x as u32, y as u32))) {
            Ok(i) => self.entries[i].2 as u64,
            Err(_) => 0,
        }
    }

    /// `|{x : n(x) ≥ t}|`.
    pub fn heavy_count(&self, t: u64) -> usize {
        self.entries.iter().filter(|e| e.2 as u64 >= t).count()
    }

    /// `{x : n(x) ≥ t}`.
    pub fn rich(&self, t: u64) -> PlanarPointSet {
        PlanarPointSet::from_sorted_unchecked(
            (0..self.entries.len()).filter(|&i| self.entries[i].2 as u64 >= t).map(|i| self.point(i)).collect(),
        )
    }

    /// The set of sums with its interned coordinates.
    pub fn support(&self) -> IndexedPoints {
        let used_x = sorted_unique_idx(self.entries.iter().map(|e| e.0));
        let used_y = sorted_unique_idx(self.entries.iter().map(|e| e.1));
        let remap = |used: &[u32], n: usize| {
            let mut m = vec![u32::MAX; n];
            for (new, &old) in used.iter().enumerate() {
                m[old as usize] = new as u32;
            }
            m
        };
        let mx = remap(&used_x, self.xs.len());
        let my = remap(&used_y, self.ys.len());
        IndexedPoints {
            xs: used_x.iter().map(|&i| self.xs[i as usize].clone()).collect(),
            ys: used_y.iter().map(|&i| self.ys[i as usize].clone()).collect(),
            pts: self.entries.iter().map(|e| (mx[e.0 as usize], my[e.1 as usize])).collect(),
        }
    }
}

fn sorted_unique_idx<I: Iterator<Item = u32>>(it: I) -> Vec<u32> {
    let mut v: Vec<u32> = it.collect();
    v.sort_unstable();
    v.dedup();
    v
}

/// Aggregate view of the translated family `𝓛` built from origin lines and
/// a point set `Q`, without materializing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslateSummary {
    pub directions: usize,
    /// `|𝓛|`.
    pub lines: usize,
    pub raw_total: u64,
    pub capped_total: u64,
    pub max_raw_weight: u64,
    pub cap: u64,
    /// capped weight → number of lines.
    pub weight_histogram: BTreeMap<u64, usize>,
    pub probe: Option<ProbeSummary>,
}

impl TranslateSummary {
    /// `|{l ∈ 𝓛 : m(l) ≥ t}|` on capped weights.
    pub fn heavy_count(&self, t: u64) -> usize {
        self.weight_histogram.range(t..).map(|(_, n)| n).sum()
    }
}

/// Incidence facts measured on the points of `P + Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeSummary {
    pub points: usize,
    /// Largest number of lines of `𝓛` through one probed point.
    pub max_degree: usize,
    /// Points where `n(x)` exceeds the capped line weight through `x`.
    pub weight_violations: usize,
}

/// Coordinates of one direction's tables as integers over a common
/// denominator, so that equal line constants become equal integer pairs.
type Fixed = (i128, i128);

fn fixed_tables(tables: &[&[Scalar]]) -> Option<Vec<Vec<Fixed>>> {
    let mut den = BigInt::one();
    for v in tables.iter().flat_map(|t| t.iter()) {
        den = den.lcm(&v.re().denom()).lcm(&v.im().denom());
    }
    let fix = |r: &crate::arith::Rational| -> Option<i128> {
        let k = r.numer() * (&den / r.denom());
        (k.bits() <= 124).then(|| k.to_i128()).flatten()
    };
    tables.iter().map(|t| t.iter().map(|v| Some((fix(v.re())?, fix(v.im())?))).collect()).collect()
}

/// Accumulates one direction: the class sizes of `Q` under `a·x + b·y`,
/// then degree and capped mass at each probe point.
struct Tally<'a> {
    q: &'a IndexedPoints,
    probe: Option<&'a SumCounts>,
    cap: u64,
    degree: Vec<u32>,
    mass: Vec<u64>,
}

impl Tally<'_> {
    fn run<K: Hash + Eq>(&mut self, classes: &mut FxHashMap<K, u64>, t: [&[K]; 4], add: impl Fn(&K, &K) -> K) {
        let [au, bv, pa, pb] = t;
        classes.clear();
        for &(x, y) in &self.q.pts {
            *classes.entry(add(&au[x as usize], &bv[y as usize])).or_insert(0) += 1;
        }
        if let Some(sums) = self.probe {
            for (k, e) in sums.entries.iter().enumerate() {
                if let Some(&w) = classes.get(&add(&pa[e.0 as usize], &pb[e.1 as usize])) {
                    self.degree[k] += 1;
                    self.mass[k] += w.min(self.cap);
                }
            }
        }
    }
}

/// Builds `𝓛` direction by direction. Distinct origin lines have distinct
/// directions, so translates from different directions never coincide and
/// each parallel class can be deduplicated on its own.
pub fn translate_summary(
    directions: &[Line],
    q: &IndexedPoints,
    cap: u64,
    probe: Option<&SumCounts>,
) -> TranslateSummary {
    let mut histogram: BTreeMap<u64, usize> = BTreeMap::new();
    let mut lines = 0usize;
    let mut raw_total = 0u64;
    let mut max_raw = 0u64;
    let n_probe = probe.map_or(0, |s| s.len());
    let mut tally = Tally { q, probe, cap, degree: vec![0; n_probe], mass: vec![0; n_probe] };
    let mut fixed_classes: FxHashMap<Fixed, u64> = FxHashMap::default();
    let mut exact_classes: FxHashMap<Scalar, u64> = FxHashMap::default();

    for l in directions {
        let (a, b) = (l.a(), l.b());
        let au: Vec<Scalar> = q.xs.iter().map(|u| a * u).collect();
        let bv: Vec<Scalar> = q.ys.iter().map(|v| b * v).collect();
        let (pa, pb): (Vec<Scalar>, Vec<Scalar>) = match probe {
            Some(sums) => (sums.xs.iter().map(|u| a * u).collect(), sums.ys.iter().map(|v| b * v).collect()),
            None => (Vec::new(), Vec::new()),
        };
        let weights: Vec<u64> = match fixed_tables(&[&au, &bv, &pa, &pb]) {
            Some(f) => {
                tally.run(&mut fixed_classes, [&f[0], &f[1], &f[2], &f[3]], |x, y| (x.0 + y.0, x.1 + y.1));
                fixed_classes.values().copied().collect()
            }
            None => {
                tally.run(&mut exact_classes, [&au, &bv, &pa, &pb], |x, y| x + y);
                exact_classes.values().copied().collect()
            }
        };
        lines += weights.len();
        for w in weights {
            raw_total += w;
            max_raw = max_raw.max(w);
            *histogram.entry(w.min(cap)).or_insert(0) += 1;
        }
    }

    let probe = probe.map(|sums| ProbeSummary {
        points: sums.len(),
        max_degree: tally.degree.iter().copied().max().unwrap_or(0) as usize,
        weight_violations: sums.entries.iter().zip(&tally.mass).filter(|(e, &m)| e.2 as u64 > m).count(),
    });
    TranslateSummary {
        directions: directions.len(),
        lines,
        raw_total,
        capped_total: histogram.iter().map(|(w, n)| w * *n as u64).sum(),
        max_raw_weight: max_raw,
        cap,
        weight_histogram: histogram,
        probe,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::incidence::{line_set, translate_and_weight};

    fn pts(v: &[(i64, i64)]) -> PlanarPointSet {
        v.iter().map(|&(x, y)| Point2::ints(x, y)).collect()
    }

    fn naive(p: &PlanarPointSet, q: &PlanarPointSet, sign: Sign) -> BTreeMap<Point2, u64> {
        let mut m = BTreeMap::new();
        for a in p {
            for b in q {
                let s = match sign {
                    Sign::Plus => a.add(b),
                    Sign::Minus => a.sub(b),
                };
                *m.entry(s).or_insert(0) += 1;
            }
        }
        m
    }

    #[test]
    fn moment_matches_full_count() {
        let p: PlanarPointSet = [(1, 2), (3, 5), (2, 2), (7, 1), (3, 3), (1, 5)]
            .iter()
            .map(|&(x, y)| Point2::new(Scalar::ratio(x, 3), Scalar::gaussian(y, x - 2)))
            .collect();
        let q = pts(&[(0, 1), (3, 5), (-2, 4), (1, 1)]);
        let (ip, iq) = (IndexedPoints::new(&p), IndexedPoints::new(&q));
        for sign in [Sign::Plus, Sign::Minus] {
            for k in 1..4 {
                assert_eq!(sum_moment(&ip, &iq, sign, k), point_sums(&ip, &iq, sign).moment(k));
                assert_eq!(sum_moment(&ip, &ip, sign, k), point_sums(&ip, &ip, sign).moment(k));
            }
        }
    }

    #[test]
    fn sums_match_naive_enumeration() {
        let p = pts(&[(1, 2), (3, 5), (2, 2), (7, 1), (3, 3)]);
        let q = pts(&[(0, 1), (3, 5), (-2, 4)]);
        for sign in [Sign::Plus, Sign::Minus] {
            let k = point_sums(&IndexedPoints::new(&p), &IndexedPoints::new(&q), sign);
            let n = naive(&p, &q, sign);
            assert_eq!(k.len(), n.len());
            for (i, (pt, c)) in n.iter().enumerate() {
                assert_eq!(&k.point(i), pt);
                assert_eq!(k.get(pt), *c);
            }
            assert_eq!(k.total(), 15);
            assert_eq!(k.support().to_point_set(), n.keys().cloned().collect());
        }
    }

    #[test]
    fn negation_round_trips() {
        let p: PlanarPointSet = [("1/2", "1i"), ("-3", "2+1i"), ("0", "0")]
            .iter()
            .map(|(x, y)| Point2::new(x.parse().unwrap(), y.parse().unwrap()))
            .collect();
        let ip = IndexedPoints::new(&p);
        assert_eq!(ip.negated().to_point_set(), p.negated());
        assert_eq!(ip.negated().negated().to_point_set(), p);
    }

    #[test]
    fn summary_matches_materialized_family() {
        let a = [1i64, 2, 3, 4];
        let grid: PlanarPointSet = a.iter().flat_map(|&x| a.iter().map(move |&y| Point2::ints(x, y))).collect();
        let dirs = line_set(grid.iter().map(|p| Line::through_origin(p).unwrap()));
        let q = grid.negated();
        let wl = translate_and_weight(&dirs, &q, 3).unwrap();
        let iq = IndexedPoints::new(&q);
        let sums = point_sums(&IndexedPoints::new(&grid), &iq, Sign::Plus);
        let s = translate_summary(&dirs, &iq, 3, Some(&sums));
        assert_eq!(s.lines, wl.len());
        assert_eq!(s.raw_total, wl.raw_total());
        assert_eq!(s.raw_total, (dirs.len() * q.len()) as u64);
        assert_eq!(s.capped_total, wl.total_weight());
        for t in 1..=3 {
            assert_eq!(s.heavy_count(t), wl.heavy_count(t));
        }
        let probe = s.probe.unwrap();
        assert!(probe.max_degree <= dirs.len());
        // A cap below the largest line population can undercount: the
        // origin is reached 16 times but carries capped weight 15.
        assert_eq!(probe.weight_violations, 1);
        let full = translate_summary(&dirs, &iq, 4, Some(&sums));
        assert_eq!(full.probe.unwrap().weight_violations, 0);
    }
}
