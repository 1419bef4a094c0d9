//! Finite sets of scalars, their sum/difference/product/ratio sets,
//! representation functions and difference slices.

use std::fmt;

use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::arith::{Field, Point2, Scalar};
use crate::error::{Error, Result};
use crate::incidence::PlanarPointSet;

/// A finite set of scalars, stored strictly sorted.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ElementSet {
    elements: Vec<Scalar>,
}

impl ElementSet {
    pub fn new<I: IntoIterator<Item = Scalar>>(items: I) -> ElementSet {
        let mut elements: Vec<Scalar> = items.into_iter().collect();
        elements.sort_unstable();
        elements.dedup();
        ElementSet { elements }
    }

    pub fn from_ints(values: &[i64]) -> ElementSet {
        ElementSet::new(values.iter().map(|&v| Scalar::int(v)))
    }

    /// Wraps an already sorted, duplicate-free vector.
    pub(crate) fn from_sorted_unchecked(elements: Vec<Scalar>) -> ElementSet {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        ElementSet { elements }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Scalar> {
        self.elements.iter()
    }

    pub fn as_slice(&self) -> &[Scalar] {
        &self.elements
    }

    pub fn contains(&self, x: &Scalar) -> bool {
        self.elements.binary_search(x).is_ok()
    }

    pub fn index_of(&self, x: &Scalar) -> Option<usize> {
        self.elements.binary_search(x).ok()
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(&Scalar::zero())
    }

    /// Complex as soon as one element has a nonzero imaginary part.
    pub fn field(&self) -> Field {
        self.elements.iter().fold(Field::Real, |f, x| f.join(x.field()))
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.elements.iter().all(|x| other.contains(x))
    }

    pub fn union(&self, other: &ElementSet) -> ElementSet {
        ElementSet::new(self.elements.iter().chain(other.elements.iter()).cloned())
    }

    pub fn map<F: Fn(&Scalar) -> Scalar>(&self, f: F) -> ElementSet {
        ElementSet::new(self.elements.iter().map(f))
    }

    /// One element per line in scalar text form.
    pub fn canonical_text(&self) -> String {
        let mut out = String::new();
        for x in &self.elements {
            out.push_str(&x.to_string());
            out.push('\n');
        }
        out
    }
}

impl FromIterator<Scalar> for ElementSet {
    fn from_iter<I: IntoIterator<Item = Scalar>>(iter: I) -> Self {
        ElementSet::new(iter)
    }
}

impl<'a> IntoIterator for &'a ElementSet {
    type Item = &'a Scalar;
    type IntoIter = std::slice::Iter<'a, Scalar>;
    fn into_iter(self) -> Self::IntoIter {
        self.elements.iter()
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.elements.iter()).finish()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Op {
    Sum,
    Diff,
    Prod,
    Ratio,
}

impl Op {
    pub const ALL: [Op; 4] = [Op::Sum, Op::Diff, Op::Prod, Op::Ratio];

    /// `a ∘ b`; `None` only for a ratio with `b = 0`.
    pub fn apply(self, a: &Scalar, b: &Scalar) -> Option<Scalar> {
        match self {
            Op::Sum => Some(a + b),
            Op::Diff => Some(a - b),
            Op::Prod => Some(a * b),
            Op::Ratio => a.checked_div(b),
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Op::Sum => "+",
            Op::Diff => "-",
            Op::Prod => "*",
            Op::Ratio => ":",
        }
    }
}

fn check_divisor(b: &ElementSet, op: Op) -> Result<()> {
    if op == Op::Ratio && b.contains_zero() {
        return Err(Error::ZeroDivisor("ratio set with 0 in the denominator set".into()));
    }
    Ok(())
}

/// The exact set `{a ∘ b : a ∈ A, b ∈ B}`.
pub fn arithmetic_set(a: &ElementSet, b: &ElementSet, op: Op) -> Result<ElementSet> {
    check_divisor(b, op)?;
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(op.apply(x, y).expect("divisor checked"));
        }
    }
    Ok(ElementSet::new(out))
}

/// Number of ordered pairs `(a, b) ∈ A × B` realizing each value of `A ∘ B`.
#[derive(Clone, PartialEq, Eq)]
pub struct RepFunction {
    op: Op,
    entries: Vec<(Scalar, u64)>,
}

impl RepFunction {
    pub fn op(&self) -> Op {
        self.op
    }

    pub fn get(&self, x: &Scalar) -> u64 {
        match self.entries.binary_search_by(|(k, _)| k.cmp(x)) {
            Ok(i) => self.entries[i].1,
            Err(_) => 0,
        }
    }

    /// Distinct values, i.e. `|A ∘ B|`.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Scalar, u64)> + '_ {
        self.entries.iter().map(|(k, n)| (k, *n))
    }

    pub fn counts(&self) -> impl Iterator<Item = u64> + '_ {
        self.entries.iter().map(|(_, n)| *n)
    }

    pub fn total(&self) -> u64 {
        self.counts().sum()
    }

    pub fn support(&self) -> ElementSet {
        ElementSet::from_sorted_unchecked(self.entries.iter().map(|(k, _)| k.clone()).collect())
    }

    pub fn max_count(&self) -> u64 {
        self.counts().max().unwrap_or(0)
    }

    /// `Σ n(x)^k`.
    pub fn moment(&self, k: u32) -> u128 {
        self.counts().map(|n| (n as u128).pow(k)).sum()
    }
}

impl fmt::Debug for RepFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.entries.iter().map(|(k, n)| (k, n))).finish()
    }
}

pub fn rep_function(a: &ElementSet, b: &ElementSet, op: Op) -> Result<RepFunction> {
    check_divisor(b, op)?;
    let mut counts: FxHashMap<Scalar, u64> = FxHashMap::default();
    counts.reserve(a.len() * b.len());
    for x in a {
        for y in b {
            *counts.entry(op.apply(x, y).expect("divisor checked")).or_insert(0) += 1;
        }
    }
    let mut entries: Vec<(Scalar, u64)> = counts.into_iter().collect();
    entries.sort_unstable_by(|l, r| l.0.cmp(&r.0));
    Ok(RepFunction { op, entries })
}

/// `A_d = {a ∈ A : a + d ∈ A}`.
pub fn slice(a: &ElementSet, d: &Scalar) -> ElementSet {
    let kept = a.iter().filter(|&x| a.contains(&(x + d))).cloned().collect();
    ElementSet::from_sorted_unchecked(kept)
}

/// The grid `A × A` as a point set.
pub fn cartesian_grid(a: &ElementSet) -> PlanarPointSet {
    let mut pts = Vec::with_capacity(a.len() * a.len());
    for x in a {
        for y in a {
            pts.push(Point2::new(x.clone(), y.clone()));
        }
    }
    PlanarPointSet::from_sorted_unchecked(pts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[i64]) -> ElementSet {
        ElementSet::from_ints(v)
    }

    fn sc(s: &str) -> Scalar {
        s.parse().unwrap()
    }

    #[test]
    fn arithmetic_set_examples() {
        let a = set(&[1, 2, 3]);
        assert_eq!(arithmetic_set(&a, &a, Op::Sum).unwrap(), set(&[2, 3, 4, 5, 6]));
        let g = set(&[1, 2, 4]);
        assert_eq!(arithmetic_set(&g, &g, Op::Prod).unwrap(), set(&[1, 2, 4, 8, 16]));
        let r = arithmetic_set(&a, &a, Op::Ratio).unwrap();
        let expect: ElementSet = ["1", "2", "3", "1/2", "1/3", "2/3", "3/2"].iter().map(|s| sc(s)).collect();
        assert_eq!(r, expect);
        assert_eq!(r.len(), 7);
    }

    #[test]
    fn ratio_rejects_zero_denominators() {
        let a = set(&[0, 1, 2]);
        assert!(matches!(arithmetic_set(&a, &a, Op::Ratio), Err(Error::ZeroDivisor(_))));
        assert!(matches!(rep_function(&a, &a, Op::Ratio), Err(Error::ZeroDivisor(_))));
        // 0 in the numerator set only is fine.
        assert_eq!(arithmetic_set(&a, &set(&[1]), Op::Ratio).unwrap(), a);
        assert!(arithmetic_set(&a, &a, Op::Prod).is_ok());
    }

    #[test]
    fn rep_function_examples() {
        let a = set(&[1, 2, 3]);
        let d = rep_function(&a, &a, Op::Diff).unwrap();
        assert_eq!(d.get(&sc("0")), 3);
        assert_eq!((d.get(&sc("1")), d.get(&sc("-1"))), (2, 2));
        assert_eq!((d.get(&sc("2")), d.get(&sc("-2"))), (1, 1));
        assert_eq!(d.total(), 9);
        assert_eq!(d.support(), arithmetic_set(&a, &a, Op::Diff).unwrap());

        for op in Op::ALL {
            let one = set(&[1]);
            let r = rep_function(&one, &one, op).unwrap();
            assert_eq!((r.len(), r.total()), (1, 1));
        }

        let g = set(&[1, 2, 4]);
        let q = rep_function(&g, &g, Op::Ratio).unwrap();
        assert_eq!(q.get(&sc("1")), 3);
        assert_eq!((q.get(&sc("2")), q.get(&sc("1/2"))), (2, 2));
        assert_eq!((q.get(&sc("4")), q.get(&sc("1/4"))), (1, 1));
    }

    #[test]
    fn slice_examples() {
        let a = set(&[1, 2, 3]);
        assert_eq!(slice(&a, &sc("1")), set(&[1, 2]));
        assert_eq!(slice(&a, &sc("0")), a);
        assert!(slice(&a, &sc("5")).is_empty());
    }

    #[test]
    fn grid_examples() {
        let g = cartesian_grid(&set(&[1, 2]));
        assert_eq!(g.len(), 4);
        for (x, y) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
            assert!(g.contains(&Point2::ints(x, y)));
        }
        assert_eq!(cartesian_grid(&set(&[7])).len(), 1);
        assert_eq!(cartesian_grid(&set(&[1, 2, 3])).len(), 9);
    }

    #[test]
    fn complex_sets_mix_fields() {
        let a: ElementSet = ["1", "1i", "1+1i"].iter().map(|s| sc(s)).collect();
        assert_eq!(a.field(), Field::Complex);
        assert_eq!(set(&[1, 2]).field(), Field::Real);
        let p = arithmetic_set(&a, &a, Op::Prod).unwrap();
        assert!(p.contains(&sc("2i")));
        assert!(p.contains(&sc("-1")));
    }
}
