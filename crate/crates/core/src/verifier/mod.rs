//! Inequality reports: exact pass/fail checks where constants are explicit,
//! effective-constant ratios where they are not.

mod chain;
mod elekes;
mod exact;
mod st;

use dashu_float::DBig;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::hp::{self, Precision};

pub use chain::{proof_chain, theorem_report, ChainInputs, ChainReport, DecompositionSummary};
pub use elekes::{elekes_check, elekes_lines};
pub use exact::check_exact_inequalities;
pub use st::{check_incidence_consistency, check_st_reports, check_weighted_st_report};

/// Exact-class checks pass when `lhs/rhs ≥ 1 − TOLERANCE`.
pub const TOLERANCE_EXPONENT: u32 = 9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Verdict {
    #[serde(rename = "pass")]
    Pass,
    #[serde(rename = "fail")]
    Fail,
    #[serde(rename = "report-only")]
    ReportOnly,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct InequalityReport {
    pub check_id: String,
    pub paper_anchor: String,
    pub lhs: String,
    pub rhs: String,
    pub ratio: String,
    pub verdict: Verdict,
    pub notes: String,
    /// `lhs/rhs` as a float; infinite when `rhs = 0`.
    #[serde(skip)]
    pub ratio_value: f64,
}

impl InequalityReport {
    pub fn passed(&self) -> bool {
        self.verdict != Verdict::Fail
    }

    pub fn is_exact(&self) -> bool {
        self.verdict != Verdict::ReportOnly
    }
}

/// A side of an inequality: exact when every ingredient is rational.
#[derive(Debug, Clone)]
pub enum Value {
    Exact(BigRational),
    Approx(DBig),
}

impl From<u128> for Value {
    fn from(v: u128) -> Self {
        Value::Exact(BigRational::from_integer(BigInt::from(v)))
    }
}

impl From<u64> for Value {
    fn from(v: u64) -> Self {
        Value::from(v as u128)
    }
}

impl From<usize> for Value {
    fn from(v: usize) -> Self {
        Value::from(v as u128)
    }
}

impl From<BigInt> for Value {
    fn from(v: BigInt) -> Self {
        Value::Exact(BigRational::from_integer(v))
    }
}

impl From<BigRational> for Value {
    fn from(v: BigRational) -> Self {
        Value::Exact(v)
    }
}

impl From<DBig> for Value {
    fn from(v: DBig) -> Self {
        Value::Approx(v)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Relation {
    AtLeast,
    Equal,
    Report,
}

/// Shared context for building reports at one precision.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Reporter {
    pub hp: Precision,
}

impl Reporter {
    pub fn new(hp: Precision) -> Reporter {
        Reporter { hp }
    }

    fn dec(&self, v: &Value) -> DBig {
        match v {
            Value::Exact(q) => self.hp.ratio(q),
            Value::Approx(d) => d.clone(),
        }
    }

    fn render(&self, v: &Value) -> String {
        match v {
            Value::Exact(q) if q.is_integer() => q.numer().to_string(),
            _ => self.hp.render(&self.dec(v)),
        }
    }

    fn build(&self, id: &str, anchor: &str, lhs: Value, rhs: Value, rel: Relation, notes: String) -> InequalityReport {
        let zero_rhs = match &rhs {
            Value::Exact(q) => q.is_zero(),
            Value::Approx(d) => *d == DBig::ZERO,
        };
        let (ratio, ratio_value) = if zero_rhs {
            ("inf".to_string(), f64::INFINITY)
        } else {
            let r = self.hp.div(&self.dec(&lhs), &self.dec(&rhs));
            (self.hp.render(&r), hp::to_f64(&r))
        };
        let verdict = match rel {
            Relation::Report => Verdict::ReportOnly,
            Relation::Equal => match (&lhs, &rhs) {
                (Value::Exact(a), Value::Exact(b)) if a == b => Verdict::Pass,
                (Value::Exact(_), Value::Exact(_)) => Verdict::Fail,
                _ => unreachable!("equalities are checked on exact values"),
            },
            Relation::AtLeast => {
                if self.at_least(&lhs, &rhs) {
                    Verdict::Pass
                } else {
                    Verdict::Fail
                }
            }
        };
        InequalityReport {
            check_id: id.to_string(),
            paper_anchor: anchor.to_string(),
            lhs: self.render(&lhs),
            rhs: self.render(&rhs),
            ratio,
            verdict,
            notes,
            ratio_value,
        }
    }

    /// `lhs ≥ (1 − 10⁻⁹)·rhs`, exactly when both sides are rational.
    fn at_least(&self, lhs: &Value, rhs: &Value) -> bool {
        let scale = BigInt::from(10u64.pow(TOLERANCE_EXPONENT));
        match (lhs, rhs) {
            (Value::Exact(a), Value::Exact(b)) => {
                if !b.is_positive() {
                    return a >= b;
                }
                let slack = BigRational::one() - BigRational::new(BigInt::one(), scale);
                a >= &(b * slack)
            }
            _ => {
                let (a, b) = (self.dec(lhs), self.dec(rhs));
                if b <= DBig::ZERO {
                    return a >= b;
                }
                let one = self.hp.uint(1);
                let eps = self.hp.div(&one, &self.hp.int(&scale));
                a >= b * (one - eps)
            }
        }
    }

    pub fn at_least_check(
        &self,
        id: &str,
        anchor: &str,
        lhs: impl Into<Value>,
        rhs: impl Into<Value>,
        notes: impl Into<String>,
    ) -> InequalityReport {
        self.build(id, anchor, lhs.into(), rhs.into(), Relation::AtLeast, notes.into())
    }

    pub fn equal_check(
        &self,
        id: &str,
        anchor: &str,
        lhs: impl Into<Value>,
        rhs: impl Into<Value>,
        notes: impl Into<String>,
    ) -> InequalityReport {
        self.build(id, anchor, lhs.into(), rhs.into(), Relation::Equal, notes.into())
    }

    pub fn report(
        &self,
        id: &str,
        anchor: &str,
        lhs: impl Into<Value>,
        rhs: impl Into<Value>,
        notes: impl Into<String>,
    ) -> InequalityReport {
        self.build(id, anchor, lhs.into(), rhs.into(), Relation::Report, notes.into())
    }

    /// `Π base_i^(p_i/q_i)` in decimal.
    pub fn monomial(&self, factors: &[(u128, i64, i64)]) -> DBig {
        let mut acc = self.hp.uint(1);
        for &(base, p, q) in factors {
            let b = self.hp.uint(base);
            let term = if q == 1 && p >= 0 {
                let mut t = self.hp.uint(1);
                for _ in 0..p {
                    t *= b.clone();
                }
                t
            } else {
                self.hp.pow(&b, p, q)
            };
            acc *= term;
        }
        self.hp.div(&acc, &self.hp.uint(1))
    }

    pub fn log2(&self, v: u128) -> DBig {
        self.hp.log2(&self.hp.uint(v))
    }

    pub fn mul(&self, a: &DBig, b: &DBig) -> DBig {
        self.hp.div(&(a.clone() * b.clone()), &self.hp.uint(1))
    }

    pub fn div(&self, a: &DBig, b: &DBig) -> DBig {
        self.hp.div(a, b)
    }

    pub fn add(&self, a: &DBig, b: &DBig) -> DBig {
        a.clone() + b.clone()
    }
}

pub(crate) fn big(v: u128) -> BigInt {
    BigInt::from(v)
}
