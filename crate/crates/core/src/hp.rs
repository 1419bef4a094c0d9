//! Fixed-precision decimal evaluation for quantities with fractional
//! exponents or logarithms.

use std::str::FromStr;

use dashu_float::DBig;
use dashu_int::IBig;
use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};

pub const DEFAULT_DIGITS: usize = 50;

/// Extra digits carried through intermediate steps.
const GUARD_DIGITS: usize = 15;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Precision {
    digits: usize,
}

impl Default for Precision {
    fn default() -> Self {
        Precision { digits: DEFAULT_DIGITS }
    }
}

impl Precision {
    pub fn new(digits: usize) -> Result<Precision> {
        if digits == 0 {
            return Err(Error::Degenerate("precision must be at least one digit".into()));
        }
        Ok(Precision { digits })
    }

    /// Significant digits in rendered output.
    pub fn digits(&self) -> usize {
        self.digits
    }

    fn work(&self) -> usize {
        self.digits + GUARD_DIGITS
    }

    fn fit(&self, x: DBig) -> DBig {
        x.with_precision(self.work()).value()
    }

    pub fn int(&self, v: &BigInt) -> DBig {
        let i = IBig::from_str(&v.to_string()).expect("decimal integer text");
        self.fit(DBig::from(i))
    }

    pub fn uint(&self, v: u128) -> DBig {
        self.fit(DBig::from(v))
    }

    pub fn ratio(&self, q: &BigRational) -> DBig {
        self.div(&self.int(q.numer()), &self.int(q.denom()))
    }

    pub fn div(&self, a: &DBig, b: &DBig) -> DBig {
        self.fit(a.clone()) / self.fit(b.clone())
    }

    pub fn sqrt(&self, x: &DBig) -> DBig {
        self.fit(x.clone()).sqrt()
    }

    /// `x^(p/q)` for `x ≥ 0`.
    pub fn pow(&self, x: &DBig, p: i64, q: i64) -> DBig {
        assert!(q > 0, "exponent denominator must be positive");
        if *x == DBig::ZERO {
            return if p == 0 { self.uint(1) } else { DBig::ZERO };
        }
        let e = self.div(&self.fit(DBig::from(p)), &self.fit(DBig::from(q)));
        self.fit(x.clone()).powf(&e)
    }

    pub fn ln(&self, x: &DBig) -> DBig {
        self.fit(x.clone()).ln()
    }

    pub fn log2(&self, x: &DBig) -> DBig {
        self.div(&self.ln(x), &self.ln(&self.uint(2)))
    }

    /// Plain decimal for `1e-6 ≤ |x| < 1e21`, scientific otherwise; rounded
    /// to the configured significant digits with trailing zeros dropped.
    pub fn render(&self, x: &DBig) -> String {
        let r = x.clone().with_precision(self.digits).value();
        let repr = r.repr();
        let sig = repr.significand();
        if *sig == IBig::ZERO {
            return "0".to_string();
        }
        let neg = *sig < IBig::ZERO;
        let mut digits = sig.to_string().trim_start_matches('-').to_string();
        let mut exp = repr.exponent();
        while digits.len() > 1 && digits.ends_with('0') {
            digits.pop();
            exp += 1;
        }
        // value = 0.d1d2… × 10^(point)
        let point = digits.len() as isize + exp;
        let body = if (-5..=21).contains(&point) {
            if point <= 0 {
                format!("0.{}{}", "0".repeat((-point) as usize), digits)
            } else if point as usize >= digits.len() {
                format!("{}{}", digits, "0".repeat(point as usize - digits.len()))
            } else {
                let (a, b) = digits.split_at(point as usize);
                format!("{a}.{b}")
            }
        } else {
            let (a, b) = digits.split_at(1);
            let mant = if b.is_empty() { a.to_string() } else { format!("{a}.{b}") };
            let e = point - 1;
            format!("{mant}e{}{}", if e < 0 { "-" } else { "+" }, e.abs())
        };
        if neg {
            format!("-{body}")
        } else {
            body
        }
    }
}

pub fn to_f64(x: &DBig) -> f64 {
    x.to_f64().value()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Precision {
        Precision::default()
    }

    #[test]
    fn render_examples() {
        let hp = p();
        assert_eq!(hp.render(&hp.uint(0)), "0");
        assert_eq!(hp.render(&hp.uint(95)), "95");
        assert_eq!(
            hp.render(&hp.div(&hp.uint(95), &hp.uint(81))),
            "1.1728395061728395061728395061728395061728395061728"
        );
        assert_eq!(hp.render(&hp.div(&hp.uint(1), &hp.uint(4))), "0.25");
        assert_eq!(hp.render(&hp.div(&hp.uint(1), &hp.uint(1_000_000))), "0.000001");
        assert_eq!(hp.render(&hp.div(&hp.uint(1), &hp.uint(10_000_000))), "1e-7");
        assert_eq!(hp.render(&hp.uint(10u128.pow(21))), "1e+21");
        assert_eq!(hp.render(&hp.uint(10u128.pow(20))), "100000000000000000000");
        assert_eq!(hp.render(&-hp.div(&hp.uint(3), &hp.uint(2))), "-1.5");
    }

    #[test]
    fn roots_and_logs() {
        let hp = p();
        let s = hp.pow(&hp.uint(27), 3, 2);
        assert!((to_f64(&s) - 27f64.powf(1.5)).abs() < 1e-9);
        assert_eq!(hp.render(&hp.sqrt(&hp.uint(2)))[..20], *"1.414213562373095048");
        assert_eq!(hp.render(&hp.log2(&hp.uint(1024))), "10");
        assert!((to_f64(&hp.log2(&hp.uint(3))) - 3f64.log2()).abs() < 1e-12);
        assert_eq!(hp.pow(&DBig::ZERO, 3, 2), DBig::ZERO);
    }

    #[test]
    fn rationals_convert() {
        let hp = p();
        let q = BigRational::new(BigInt::from(-7), BigInt::from(8));
        assert_eq!(hp.render(&hp.ratio(&q)), "-0.875");
        let big = BigInt::from(10).pow(40) + BigInt::from(1);
        assert_eq!(hp.render(&hp.int(&big)), "1.0000000000000000000000000000000000000001e+40");
    }
}
