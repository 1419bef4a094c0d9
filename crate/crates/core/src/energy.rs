//! Additive, multiplicative and cubic energies, popular difference sets and
//! energy restricted to a set of differences.
//!
//! Energies are computed from representation counts (`Σ n(x)^k`), never by
//! enumerating quadruples; the brute-force definitions live in [`brute`] for
//! cross-checking on small inputs.

use std::fmt;

use num_bigint::BigUint;
use serde::Serialize;

use crate::arith::Scalar;
use crate::error::{Error, Result};
use crate::setcalc::{arithmetic_set, rep_function, slice, ElementSet, Op, RepFunction};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EnergyKind {
    Additive,
    Multiplicative,
    Cubic,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EnergyValue {
    pub value: BigUint,
    pub kind: EnergyKind,
}

impl EnergyValue {
    fn new(value: u128, kind: EnergyKind) -> EnergyValue {
        EnergyValue { value: BigUint::from(value), kind }
    }

    /// Lossless for every desk-scale input; panics past `u128`.
    pub fn as_u128(&self) -> u128 {
        u128::try_from(&self.value).expect("energy exceeds u128")
    }
}

impl fmt::Debug for EnergyValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}({})", self.kind, self.value)
    }
}

impl fmt::Display for EnergyValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// `E(A, B) = Σ_{d ∈ A−B} n(d)²`.
pub fn additive_energy(a: &ElementSet, b: &ElementSet) -> EnergyValue {
    let rep = rep_function(a, b, Op::Diff).expect("differences never divide");
    EnergyValue::new(rep.moment(2), EnergyKind::Additive)
}

/// `E_*(A) = Σ_{r ∈ A:A} n(r)²`.
pub fn multiplicative_energy(a: &ElementSet) -> Result<EnergyValue> {
    if a.contains_zero() {
        return Err(Error::ZeroDivisor("multiplicative energy requires 0 ∉ A".into()));
    }
    let rep = rep_function(a, a, Op::Ratio)?;
    Ok(EnergyValue::new(rep.moment(2), EnergyKind::Multiplicative))
}

/// `E_3(A) = Σ_{d ∈ A−A} n(d)³`.
pub fn cubic_energy(a: &ElementSet) -> EnergyValue {
    let rep = rep_function(a, a, Op::Diff).expect("differences never divide");
    EnergyValue::new(rep.moment(3), EnergyKind::Cubic)
}

/// `Σ_{d ∈ A−A} E(A, A_d)`, evaluated slice by slice.
pub fn cubic_energy_via_slices(a: &ElementSet) -> EnergyValue {
    let diffs = arithmetic_set(a, a, Op::Diff).expect("differences never divide");
    let total: u128 = diffs.iter().map(|d| additive_energy(a, &slice(a, d)).as_u128()).sum();
    EnergyValue::new(total, EnergyKind::Cubic)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PopularMode {
    /// Threshold `|A|²/(2|A+A|)`.
    Dplus,
    /// Threshold `|A|²/(2|A−A|)`.
    Dprime,
}

/// Differences `d` with `n(d) ≥ |A|²/(2|A±A|)`; compared exactly as
/// `2·n(d)·|A±A| ≥ |A|²`.
pub fn popular_set(a: &ElementSet, mode: PopularMode) -> ElementSet {
    let diffs = rep_function(a, a, Op::Diff).expect("differences never divide");
    popular_from_rep(&diffs, a.len(), popular_denominator(a, &diffs, mode))
}

fn popular_denominator(a: &ElementSet, diffs: &RepFunction, mode: PopularMode) -> usize {
    match mode {
        PopularMode::Dplus => arithmetic_set(a, a, Op::Sum).expect("sums never divide").len(),
        PopularMode::Dprime => diffs.len(),
    }
}

/// Entries of `diffs` with `2·n·denominator ≥ size²`.
pub(crate) fn popular_from_rep(diffs: &RepFunction, size: usize, denominator: usize) -> ElementSet {
    let size_sq = (size as u128) * (size as u128);
    let kept = diffs
        .iter()
        .filter(|(_, n)| 2 * (*n as u128) * (denominator as u128) >= size_sq)
        .map(|(d, _)| d.clone())
        .collect();
    ElementSet::from_sorted_unchecked(kept)
}

/// `Σ_{d ∈ D} n_{A−A}(d)²`.
pub fn energy_on_subset(a: &ElementSet, d: &ElementSet) -> EnergyValue {
    let rep = rep_function(a, a, Op::Diff).expect("differences never divide");
    let total: u128 = d.iter().map(|x| (rep.get(x) as u128).pow(2)).sum();
    EnergyValue::new(total, EnergyKind::Additive)
}

/// Direct enumeration of the defining tuples. Quartic (and sextic for the
/// cubic energy) in `|A|`; intended for sets of a dozen or so elements.
pub mod brute {
    use super::*;

    /// `#{(a1, a2, b1, b2) : a1 − a2 = b1 − b2}`.
    pub fn additive_energy(a: &ElementSet, b: &ElementSet) -> u128 {
        let mut n = 0u128;
        for a1 in a {
            for a2 in a {
                let d = a1 - a2;
                for b1 in b {
                    for b2 in b {
                        if b1 - b2 == d {
                            n += 1;
                        }
                    }
                }
            }
        }
        n
    }

    /// `#{(a1, a2, a3, a4) : a1·a4 = a2·a3}`, the product form of
    /// `a1/a2 = a3/a4`.
    pub fn multiplicative_energy(a: &ElementSet) -> Result<u128> {
        if a.contains_zero() {
            return Err(Error::ZeroDivisor("multiplicative energy requires 0 ∉ A".into()));
        }
        let mut n = 0u128;
        for a1 in a {
            for a2 in a {
                for a3 in a {
                    for a4 in a {
                        if a1 * a4 == a2 * a3 {
                            n += 1;
                        }
                    }
                }
            }
        }
        Ok(n)
    }

    /// `#{(a1..a6) : a1 − a2 = a3 − a4 = a5 − a6}`.
    pub fn cubic_energy(a: &ElementSet) -> u128 {
        let pairs: Vec<Scalar> = a.iter().flat_map(|x| a.iter().map(move |y| x - y)).collect();
        let mut n = 0u128;
        for d in &pairs {
            let m = pairs.iter().filter(|e| *e == d).count() as u128;
            n += m * m;
        }
        n
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[i64]) -> ElementSet {
        ElementSet::from_ints(v)
    }

    #[test]
    fn additive_examples() {
        let a = set(&[1, 2, 3]);
        assert_eq!(additive_energy(&a, &a).as_u128(), 19);
        assert_eq!(brute::additive_energy(&a, &a), 19);
        assert_eq!(additive_energy(&a, &ElementSet::default()).as_u128(), 0);
        assert_eq!(additive_energy(&a, &set(&[1, 2])).as_u128(), 10);
        assert_eq!(brute::additive_energy(&a, &set(&[1, 2])), 10);
    }

    #[test]
    fn multiplicative_examples() {
        assert_eq!(multiplicative_energy(&set(&[1, 2, 4])).unwrap().as_u128(), 19);
        assert_eq!(multiplicative_energy(&set(&[5])).unwrap().as_u128(), 1);
        assert!(matches!(multiplicative_energy(&set(&[0, 1])), Err(Error::ZeroDivisor(_))));
    }

    #[test]
    fn gp_and_ap_energies_agree() {
        for n in 1..=8u32 {
            let ap: Vec<i64> = (1..=n as i64).collect();
            let gp: Vec<i64> = (0..n).map(|k| 3i64.pow(k)).collect();
            assert_eq!(
                multiplicative_energy(&set(&gp)).unwrap().as_u128(),
                additive_energy(&set(&ap), &set(&ap)).as_u128(),
                "n = {n}"
            );
        }
    }

    #[test]
    fn cubic_examples() {
        let a = set(&[1, 2, 3]);
        assert_eq!(cubic_energy(&a).as_u128(), 45);
        assert_eq!(cubic_energy_via_slices(&a).as_u128(), 45);
        assert_eq!(brute::cubic_energy(&a), 45);
        assert_eq!(cubic_energy(&set(&[9])).as_u128(), 1);
        assert_eq!(cubic_energy_via_slices(&set(&[9])).as_u128(), 1);
    }

    #[test]
    fn cubic_paths_agree_on_eight_elements() {
        let a = set(&[3, 5, 8, 13, 21, 22, 40, 41]);
        assert_eq!(cubic_energy(&a), cubic_energy_via_slices(&a));
        assert_eq!(cubic_energy(&a).as_u128(), brute::cubic_energy(&a));
    }

    #[test]
    fn popular_examples() {
        let a = set(&[1, 2, 3]);
        assert_eq!(popular_set(&a, PopularMode::Dplus), set(&[-2, -1, 0, 1, 2]));
        for mode in [PopularMode::Dplus, PopularMode::Dprime] {
            assert_eq!(popular_set(&set(&[4]), mode), set(&[0]));
        }
        // |A−A| = 9, so the threshold is 16/18 and every difference qualifies.
        let b = set(&[0, 1, 2, 4]);
        assert_eq!(popular_set(&b, PopularMode::Dprime), set(&[-4, -3, -2, -1, 0, 1, 2, 3, 4]));
        // AP(1..8): threshold 64/30, n(d) = 8 − |d| keeps |d| ≤ 5.
        let c = set(&[1, 2, 3, 4, 5, 6, 7, 8]);
        assert_eq!(popular_set(&c, PopularMode::Dprime), set(&[-5, -4, -3, -2, -1, 0, 1, 2, 3, 4, 5]));
        // dplus: threshold 64/30 as well since |A+A| = |A−A| = 15.
        assert_eq!(popular_set(&c, PopularMode::Dplus), popular_set(&c, PopularMode::Dprime));
    }

    #[test]
    fn energy_on_subset_examples() {
        let a = set(&[1, 2, 3]);
        assert_eq!(energy_on_subset(&a, &set(&[0])).as_u128(), 9);
        assert_eq!(energy_on_subset(&a, &ElementSet::default()).as_u128(), 0);
        let all = arithmetic_set(&a, &a, Op::Diff).unwrap();
        assert_eq!(energy_on_subset(&a, &all), additive_energy(&a, &a));
        // Values outside A−A contribute nothing.
        assert_eq!(energy_on_subset(&a, &set(&[0, 17])).as_u128(), 9);
    }
}
