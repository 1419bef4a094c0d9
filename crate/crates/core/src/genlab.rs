//! Deterministic set families and parsing of user-supplied sets.
//!
//! Spec grammar, one line, fields separated by `:`:
//!
//! ```text
//! ap:START:STEP:LEN
//! gp:START:RATIO:LEN
//! convex:squares:N | convex:cubes:N | convex:powers-K:N
//! randint:LO:HI:LEN:seed=S[:den=D]
//! randgauss:LO:HI:LEN:seed=S[:den=D]
//! ```
//!
//! `START`, `STEP` and `RATIO` are scalars (`3`, `-1/2`, `1+2i`). Random
//! kinds draw integer numerators uniformly from `[LO, HI]` (real and
//! imaginary parts independently for `randgauss`) and divide by `D`
//! (default 1). The stream is ChaCha8 seeded with `S`; repeated values are
//! discarded and redrawn until `LEN` distinct elements exist.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{Line, Point2, Rational, Scalar};
use crate::error::{Error, Result};
use crate::incidence::PlanarPointSet;
use crate::setcalc::ElementSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConvexFn {
    Squares,
    Cubes,
    Power(u32),
}

impl ConvexFn {
    fn exponent(self) -> u32 {
        match self {
            ConvexFn::Squares => 2,
            ConvexFn::Cubes => 3,
            ConvexFn::Power(k) => k,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilySpec {
    Ap { start: Scalar, step: Scalar, len: usize },
    Gp { start: Scalar, ratio: Scalar, len: usize },
    Convex { f: ConvexFn, n: usize },
    RandomInt { lo: i64, hi: i64, len: usize, seed: u64, den: u64 },
    RandomGaussian { lo: i64, hi: i64, len: usize, seed: u64, den: u64 },
}

impl FamilySpec {
    pub fn len(&self) -> usize {
        match *self {
            FamilySpec::Ap { len, .. }
            | FamilySpec::Gp { len, .. }
            | FamilySpec::RandomInt { len, .. }
            | FamilySpec::RandomGaussian { len, .. } => len,
            FamilySpec::Convex { n, .. } => n,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn invalid(&self, msg: impl Into<String>) -> Error {
        Error::InvalidSpec { spec: self.to_string(), msg: msg.into() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.is_empty() {
            return Err(self.invalid("length must be at least 1"));
        }
        match self {
            FamilySpec::Ap { step, len, .. } if *len > 1 && step.is_zero() => Err(self.invalid("step must be nonzero")),
            FamilySpec::Gp { start, .. } if start.is_zero() => Err(self.invalid("start must be nonzero")),
            FamilySpec::Gp { ratio, .. } if ratio.is_zero() => Err(self.invalid("ratio must be nonzero")),
            FamilySpec::Gp { ratio, len, .. } if *len > 1 && is_root_of_unity(ratio) => {
                Err(self.invalid("ratio is a root of unity, so the terms repeat"))
            }
            FamilySpec::Convex { f: ConvexFn::Power(k), .. } if *k < 2 => {
                Err(self.invalid("powers-k needs k >= 2 for strict convexity"))
            }
            FamilySpec::RandomInt { lo, hi, len, den, .. } | FamilySpec::RandomGaussian { lo, hi, len, den, .. } => {
                if lo > hi {
                    return Err(self.invalid("LO must not exceed HI"));
                }
                if *den == 0 {
                    return Err(self.invalid("den must be positive"));
                }
                let span = (*hi as i128 - *lo as i128 + 1) as u128;
                let room =
                    if matches!(self, FamilySpec::RandomGaussian { .. }) { span.saturating_mul(span) } else { span };
                if room < *len as u128 {
                    return Err(self.invalid(format!("range holds only {room} distinct values")));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// The set described by the spec; a pure function of the spec.
    pub fn generate(&self) -> Result<ElementSet> {
        self.validate()?;
        let out = match self {
            FamilySpec::Ap { start, step, len } => {
                (0..*len as i64).map(|i| start + &(step * &Scalar::int(i))).collect()
            }
            FamilySpec::Gp { start, ratio, len } => {
                let mut x = start.clone();
                let mut v = Vec::with_capacity(*len);
                for _ in 0..*len {
                    let next = &x * ratio;
                    v.push(std::mem::replace(&mut x, next));
                }
                ElementSet::new(v)
            }
            FamilySpec::Convex { f, n } => (1..=*n as u64)
                .map(|i| Scalar::real(Rational::from_bigint(BigInt::from(i).pow(f.exponent()))))
                .collect(),
            FamilySpec::RandomInt { lo, hi, len, seed, den } => {
                draw(*len, *seed, |rng| over(rng.gen_range(*lo..=*hi), 0, *den))
            }
            FamilySpec::RandomGaussian { lo, hi, len, seed, den } => {
                draw(*len, *seed, |rng| over(rng.gen_range(*lo..=*hi), rng.gen_range(*lo..=*hi), *den))
            }
        };
        debug_assert_eq!(out.len(), self.len());
        Ok(out)
    }
}

fn is_root_of_unity(r: &Scalar) -> bool {
    [Scalar::one(), -Scalar::one(), Scalar::gaussian(0, 1), Scalar::gaussian(0, -1)].contains(r)
}

fn draw(len: usize, seed: u64, mut next: impl FnMut(&mut ChaCha8Rng) -> Scalar) -> ElementSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = std::collections::BTreeSet::new();
    while seen.len() < len {
        seen.insert(next(&mut rng));
    }
    ElementSet::new(seen)
}

fn over(re: i64, im: i64, den: u64) -> Scalar {
    let part = |n: i64| Rational::from_big(BigRational::new(BigInt::from(n), BigInt::from(den)));
    Scalar::new(part(re), part(im))
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let random = |f: &mut fmt::Formatter<'_>, kind: &str, lo: i64, hi: i64, len: usize, seed: u64, den: u64| {
            write!(f, "{kind}:{lo}:{hi}:{len}:seed={seed}")?;
            if den != 1 {
                write!(f, ":den={den}")?;
            }
            Ok(())
        };
        match self {
            FamilySpec::Ap { start, step, len } => write!(f, "ap:{start}:{step}:{len}"),
            FamilySpec::Gp { start, ratio, len } => write!(f, "gp:{start}:{ratio}:{len}"),
            FamilySpec::Convex { f: c, n } => match c {
                ConvexFn::Squares => write!(f, "convex:squares:{n}"),
                ConvexFn::Cubes => write!(f, "convex:cubes:{n}"),
                ConvexFn::Power(k) => write!(f, "convex:powers-{k}:{n}"),
            },
            FamilySpec::RandomInt { lo, hi, len, seed, den } => random(f, "randint", *lo, *hi, *len, *seed, *den),
            FamilySpec::RandomGaussian { lo, hi, len, seed, den } => {
                random(f, "randgauss", *lo, *hi, *len, *seed, *den)
            }
        }
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<FamilySpec> {
        let bad = |msg: &str| Error::InvalidSpec { spec: s.to_string(), msg: msg.to_string() };
        let fields: Vec<&str> = s.trim().split(':').map(str::trim).collect();
        let scalar = |t: &str| t.parse::<Scalar>().map_err(|e| bad(&e.to_string()));
        let int = |t: &str| t.parse::<i64>().map_err(|_| bad(&format!("`{t}` is not an integer")));
        let count = |t: &str| t.parse::<usize>().map_err(|_| bad(&format!("`{t}` is not a length")));
        let keyed = |t: &str, key: &str| -> Result<u64> {
            let v = t
                .strip_prefix(key)
                .and_then(|r| r.strip_prefix('='))
                .ok_or_else(|| bad(&format!("expected {key}=N")))?;
            v.parse::<u64>().map_err(|_| bad(&format!("`{v}` is not an unsigned 64-bit integer")))
        };
        let spec = match fields.as_slice() {
            ["ap", start, step, len] => FamilySpec::Ap { start: scalar(start)?, step: scalar(step)?, len: count(len)? },
            ["gp", start, ratio, len] => {
                FamilySpec::Gp { start: scalar(start)?, ratio: scalar(ratio)?, len: count(len)? }
            }
            ["convex", kind, n] => {
                let f = match *kind {
                    "squares" => ConvexFn::Squares,
                    "cubes" => ConvexFn::Cubes,
                    other => {
                        let k = other.strip_prefix("powers-").ok_or_else(|| bad("unknown convex function"))?;
                        ConvexFn::Power(k.parse().map_err(|_| bad("powers-k needs an integer k"))?)
                    }
                };
                FamilySpec::Convex { f, n: count(n)? }
            }
            [kind @ ("randint" | "randgauss"), lo, hi, len, seed, rest @ ..] => {
                let den = match rest {
                    [] => 1,
                    [d] => keyed(d, "den")?,
                    _ => return Err(bad("too many fields")),
                };
                let (lo, hi, len, seed) = (int(lo)?, int(hi)?, count(len)?, keyed(seed, "seed")?);
                if *kind == "randint" {
                    FamilySpec::RandomInt { lo, hi, len, seed, den }
                } else {
                    FamilySpec::RandomGaussian { lo, hi, len, seed, den }
                }
            }
            _ => return Err(bad("unrecognised spec")),
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// What a file load saw besides the values themselves.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LoadReport {
    /// Non-blank, non-comment lines.
    pub entries: usize,
    /// 1-based line numbers of repeated values.
    pub duplicate_lines: Vec<usize>,
}

fn parse_entries<T: Ord, E: fmt::Display>(
    text: &str,
    parse: impl Fn(&str) -> std::result::Result<T, E>,
) -> Result<(Vec<T>, LoadReport)> {
    let mut seen = std::collections::BTreeSet::new();
    let mut report = LoadReport::default();
    for (i, raw) in text.lines().enumerate() {
        let body = raw.split_once('#').map_or(raw, |x| x.0).trim();
        if body.is_empty() {
            continue;
        }
        let v = parse(body).map_err(|e| Error::Parse { line: i + 1, msg: e.to_string() })?;
        report.entries += 1;
        if !seen.insert(v) {
            report.duplicate_lines.push(i + 1);
        }
    }
    Ok((seen.into_iter().collect(), report))
}

/// One scalar per line; `#` starts a comment; blank lines are skipped.
pub fn parse_set_file(text: &str) -> Result<(ElementSet, LoadReport)> {
    let (v, r) = parse_entries(text, Scalar::from_str)?;
    Ok((ElementSet::new(v), r))
}

/// One `x;y` pair per line.
pub fn parse_point_file(text: &str) -> Result<(PlanarPointSet, LoadReport)> {
    let (v, r) = parse_entries(text, Point2::from_str)?;
    Ok((PlanarPointSet::new(v), r))
}

/// One `a;b;c` triple per line for `a·x + b·y = c`; equal loci count as
/// duplicates.
pub fn parse_line_file(text: &str) -> Result<(Vec<Line>, LoadReport)> {
    parse_entries(text, Line::from_str)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gen(s: &str) -> ElementSet {
        s.parse::<FamilySpec>().unwrap().generate().unwrap()
    }

    #[test]
    fn family_examples() {
        assert_eq!(gen("ap:1:1:5"), ElementSet::from_ints(&[1, 2, 3, 4, 5]));
        assert_eq!(gen("gp:2:2:4"), ElementSet::from_ints(&[2, 4, 8, 16]));
        assert_eq!(gen("convex:squares:4"), ElementSet::from_ints(&[1, 4, 9, 16]));
        assert_eq!(gen("convex:powers-4:3"), ElementSet::from_ints(&[1, 16, 81]));
        assert_eq!(gen("ap:1/2:-1/3:3").canonical_text(), "-1/6\n1/6\n1/2\n");
        assert_eq!(gen("gp:1:1+1i:3").len(), 3);
    }

    #[test]
    fn random_kinds_are_seeded() {
        let a = gen("randint:1:1000:32:seed=42");
        assert_eq!(a.len(), 32);
        assert_eq!(a, gen("randint:1:1000:32:seed=42"));
        assert_ne!(a, gen("randint:1:1000:32:seed=43"));
        assert_eq!(gen("randint:1:5:5:seed=7"), ElementSet::from_ints(&[1, 2, 3, 4, 5]));
        let g = gen("randgauss:-3:3:20:seed=1:den=2");
        assert_eq!(g.len(), 20);
        assert!(g.iter().all(|x| x.re().denom() <= BigInt::from(2)));
    }

    #[test]
    fn spec_text_round_trips() {
        for s in
            ["ap:1:1:5", "gp:1/2:3:4", "convex:powers-5:7", "randint:-5:9:4:seed=3", "randgauss:0:9:4:seed=3:den=5"]
        {
            assert_eq!(s.parse::<FamilySpec>().unwrap().to_string(), s);
        }
    }

    #[test]
    fn invalid_specs() {
        for s in [
            "ap:1:1:0",
            "ap:1:0:3",
            "gp:2:0:4",
            "gp:0:2:4",
            "gp:3:-1:4",
            "gp:3:1i:4",
            "convex:powers-1:4",
            "randint:1:3:4:seed=1",
            "randint:1:3:2",
            "randint:1:3:2:seed=x",
            "randint:1:3:2:seed=1:den=0",
            "hat:1:2",
        ] {
            assert!(matches!(s.parse::<FamilySpec>(), Err(Error::InvalidSpec { .. })), "{s}");
        }
    }

    #[test]
    fn set_files() {
        let (a, r) = parse_set_file("1\n2\n3\n").unwrap();
        assert_eq!((a, r.duplicate_lines.len()), (ElementSet::from_ints(&[1, 2, 3]), 0));
        let (a, r) = parse_set_file("1/2\n1/2\n").unwrap();
        assert_eq!((a.len(), r.duplicate_lines), (1, vec![2]));
        let (a, _) = parse_set_file("3+2/5i\n").unwrap();
        assert_eq!(a.as_slice()[0], "3+2/5i".parse::<Scalar>().unwrap());
        let (a, r) = parse_set_file("# header\n\n 4 # four\n2/4\n1/2\n").unwrap();
        assert_eq!((a.len(), r.entries, r.duplicate_lines), (2, 3, vec![5]));
        assert!(matches!(parse_set_file("1\nx\n"), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn point_and_line_files() {
        let (p, _) = parse_point_file("0;0\n1;2\n1/2;1i\n").unwrap();
        assert_eq!(p.len(), 3);
        let (l, r) = parse_line_file("1;1;0\n2;2;0\n0;3;1\n").unwrap();
        assert_eq!((l.len(), r.duplicate_lines), (2, vec![2]));
        assert!(matches!(parse_line_file("0;0;1\n"), Err(Error::Parse { line: 1, .. })));
    }
}
