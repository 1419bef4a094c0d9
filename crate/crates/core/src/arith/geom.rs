//! Points and lines in the plane over Q or Q(i).

use std::fmt;
use std::str::FromStr;

use super::scalar::{ParseScalarError, Scalar};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Point2 {
    pub x: Scalar,
    pub y: Scalar,
}

impl Point2 {
    pub fn new(x: Scalar, y: Scalar) -> Point2 {
        Point2 { x, y }
    }

    pub fn ints(x: i64, y: i64) -> Point2 {
        Point2 { x: Scalar::int(x), y: Scalar::int(y) }
    }

    pub fn origin() -> Point2 {
        Point2::default()
    }

    pub fn is_origin(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn add(&self, other: &Point2) -> Point2 {
        Point2 { x: &self.x + &other.x, y: &self.y + &other.y }
    }

    pub fn sub(&self, other: &Point2) -> Point2 {
        Point2 { x: &self.x - &other.x, y: &self.y - &other.y }
    }

    pub fn neg(&self) -> Point2 {
        Point2 { x: -&self.x, y: -&self.y }
    }
}

impl fmt::Display for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};{}", self.x, self.y)
    }
}

impl fmt::Debug for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {:?})", self.x, self.y)
    }
}

/// `x;y` with both coordinates in scalar text form.
impl FromStr for Point2 {
    type Err = ParseScalarError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let (x, y) = s.split_once(';').ok_or_else(|| ParseScalarError(s.to_string()))?;
        Ok(Point2 { x: x.trim().parse()?, y: y.trim().parse()? })
    }
}

/// The locus `a·x + b·y = c`, kept in canonical form: the first nonzero
/// coefficient among `(a, b)` is 1. Equal loci have equal triples.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Line {
    a: Scalar,
    b: Scalar,
    c: Scalar,
}

impl Line {
    /// Canonicalizes the triple; errors when `a = b = 0`.
    pub fn new(a: Scalar, b: Scalar, c: Scalar) -> Result<Line> {
        let lead = if !a.is_zero() {
            a.clone()
        } else if !b.is_zero() {
            b.clone()
        } else {
            return Err(Error::Degenerate("line with a = b = 0".into()));
        };
        if lead == Scalar::one() {
            return Ok(Line { a, b, c });
        }
        Ok(Line { a: &a / &lead, b: &b / &lead, c: &c / &lead })
    }

    /// The unique line through two distinct points.
    pub fn through(p: &Point2, q: &Point2) -> Result<Line> {
        if p == q {
            return Err(Error::Degenerate(format!("coincident points {p:?}")));
        }
        let a = &q.y - &p.y;
        let b = &p.x - &q.x;
        let c = &(&a * &p.x) + &(&b * &p.y);
        Line::new(a, b, c)
    }

    /// The line through the origin and `p`; errors when `p` is the origin.
    pub fn through_origin(p: &Point2) -> Result<Line> {
        Line::through(&Point2::origin(), p)
    }

    pub fn a(&self) -> &Scalar {
        &self.a
    }

    pub fn b(&self) -> &Scalar {
        &self.b
    }

    pub fn c(&self) -> &Scalar {
        &self.c
    }

    pub fn contains(&self, p: &Point2) -> bool {
        &(&self.a * &p.x) + &(&self.b * &p.y) == self.c
    }

    pub fn passes_through_origin(&self) -> bool {
        self.c.is_zero()
    }

    /// Same direction (equal `(a, b)` in canonical form).
    pub fn is_parallel_to(&self, other: &Line) -> bool {
        self.a == other.a && self.b == other.b
    }

    /// The parallel line through `p`: `c` becomes `a·p.x + b·p.y`.
    pub fn parallel_through(&self, p: &Point2) -> Line {
        Line { a: self.a.clone(), b: self.b.clone(), c: &(&self.a * &p.x) + &(&self.b * &p.y) }
    }

    /// Shifts the line by the vector `v`.
    pub fn translate(&self, v: &Point2) -> Line {
        Line { a: self.a.clone(), b: self.b.clone(), c: &(&self.c + &(&self.a * &v.x)) + &(&self.b * &v.y) }
    }

    /// Intersection point, `None` for parallel lines.
    pub fn intersect(&self, other: &Line) -> Option<Point2> {
        let det = &(&self.a * &other.b) - &(&self.b * &other.a);
        if det.is_zero() {
            return None;
        }
        let x = &(&(&self.c * &other.b) - &(&self.b * &other.c)) / &det;
        let y = &(&(&self.a * &other.c) - &(&self.c * &other.a)) / &det;
        Some(Point2 { x, y })
    }
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};{};{}", self.a, self.b, self.c)
    }
}

impl fmt::Debug for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?}·x + {:?}·y = {:?}]", self.a, self.b, self.c)
    }
}

/// `a;b;c`, canonicalized on parse.
impl FromStr for Line {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(';').map(str::trim).collect();
        let [a, b, c] = parts[..] else {
            return Err(format!("expected `a;b;c`, got `{s}`"));
        };
        let parse = |t: &str| t.parse::<Scalar>().map_err(|e| e.to_string());
        Line::new(parse(a)?, parse(b)?, parse(c)?).map_err(|e| e.to_string())
    }
}
