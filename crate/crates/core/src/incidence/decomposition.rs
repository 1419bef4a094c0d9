//! Popular lines through the origin supporting points of `A × A`.

use serde::Serialize;

use super::PlanarPointSet;
use crate::arith::{Line, Point2, Scalar};
use crate::error::{Error, Result};
use crate::setcalc::{arithmetic_set, rep_function, ElementSet, Op, RepFunction};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DecompositionCase {
    Ratio,
    Product,
}

/// The line `y = slope·x` together with the number of grid points on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OriginLine {
    pub line: Line,
    pub slope: Scalar,
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OriginDecomposition {
    pub case: DecompositionCase,
    pub lines: Vec<OriginLine>,
    pub points: PlanarPointSet,
    /// Ratio case: the largest count on a kept line. Product case: the
    /// upper end of the selected window.
    pub n: u64,
    pub set_size: usize,
    pub ratio_set_size: usize,
    pub product_set_size: usize,
}

impl OriginDecomposition {
    pub fn line_set(&self) -> Vec<Line> {
        self.lines.iter().map(|l| l.line.clone()).collect()
    }

    /// `Σ_{l ∈ L} n(l)²`.
    pub fn energy(&self) -> u128 {
        self.lines.iter().map(|l| (l.count as u128).pow(2)).sum()
    }

    /// `|L|·N²`.
    pub fn score(&self) -> u128 {
        self.lines.len() as u128 * (self.n as u128).pow(2)
    }
}

fn origin_line(slope: &Scalar) -> Line {
    // y = r·x  ⇔  x − y/r = 0, with r ≠ 0 since 0 ∉ A
    Line::new(Scalar::one(), -(&Scalar::one() / slope), Scalar::zero()).expect("a = 1")
}

fn points_on(a: &ElementSet, slopes: &[OriginLine]) -> PlanarPointSet {
    slopes
        .iter()
        .flat_map(|l| {
            a.iter().filter_map(move |x| {
                let y = &l.slope * x;
                a.contains(&y).then(|| Point2::new(x.clone(), y))
            })
        })
        .collect()
}

/// Ratio case: every line with `2·n(r)·|A:A| ≥ |A|²`.
///
/// Product case: for each realized count `N` with `2·N·|A·A| ≥ |A|²`, the
/// window of lines carrying between `N/2` and `N` points; the window with
/// the largest `|L|·N²` is kept, the smallest `N` winning ties.
pub fn origin_line_decomposition(a: &ElementSet, case: DecompositionCase) -> Result<OriginDecomposition> {
    if a.contains_zero() {
        return Err(Error::ZeroDivisor("origin-line decomposition requires 0 ∉ A".into()));
    }
    if a.is_empty() {
        return Err(Error::Undersized("empty set".into()));
    }
    // n(r) for r = y/x counts the points (x, y) of A × A on y = r·x.
    let reps: RepFunction = rep_function(a, a, Op::Ratio)?;
    let product_set_size = arithmetic_set(a, a, Op::Prod)?.len();
    let size_sq = (a.len() as u128).pow(2);
    let all: Vec<OriginLine> =
        reps.iter().map(|(r, n)| OriginLine { line: origin_line(r), slope: r.clone(), count: n }).collect();

    let (lines, n) = match case {
        DecompositionCase::Ratio => {
            let den = reps.len() as u128;
            let kept: Vec<OriginLine> = all.into_iter().filter(|l| 2 * l.count as u128 * den >= size_sq).collect();
            let n = kept.iter().map(|l| l.count).max().unwrap_or(0);
            (kept, n)
        }
        DecompositionCase::Product => {
            let den = product_set_size as u128;
            let mut candidates: Vec<u64> =
                all.iter().map(|l| l.count).filter(|&n| 2 * n as u128 * den >= size_sq).collect();
            candidates.sort_unstable();
            candidates.dedup();
            let mut best: Option<(u128, u64)> = None;
            for &n in &candidates {
                let width = all.iter().filter(|l| 2 * l.count >= n && l.count <= n).count() as u128;
                let score = width * (n as u128).pow(2);
                if best.is_none_or(|(s, _)| score > s) {
                    best = Some((score, n));
                }
            }
            let n = best.map(|(_, n)| n).expect("the largest count always qualifies");
            let kept = all.into_iter().filter(|l| 2 * l.count >= n && l.count <= n).collect();
            (kept, n)
        }
    };
    let points = points_on(a, &lines);
    Ok(OriginDecomposition { case, lines, points, n, set_size: a.len(), ratio_set_size: reps.len(), product_set_size })
}
