//! Boundary lines, counting queries, step sets and explicit paths.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{precondition, Error, Result};
use crate::exactmath::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

impl From<(i64, i64)> for Point {
    fn from((x, y): (i64, i64)) -> Self {
        Point { x, y }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SlopeKind {
    /// `y = kx - r`
    Integer,
    /// `y = x/k - r`
    Inverse,
}

/// The line `y = kx - r` or `y = x/k - r` with `k >= 1` and rational `r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct BoundaryLine {
    pub kind: SlopeKind,
    pub k: i64,
    pub intercept: Rational,
}

impl BoundaryLine {
    pub fn new(kind: SlopeKind, k: i64, intercept: Rational) -> Result<Self> {
        if k < 1 {
            return Err(precondition(
                "boundary",
                format!("slope parameter k={k} must be >= 1"),
            ));
        }
        Ok(BoundaryLine { kind, k, intercept })
    }

    /// `y = kx - r`. Panics if `k < 1`.
    pub fn integer(k: i64, r: impl Into<Rational>) -> Self {
        Self::new(SlopeKind::Integer, k, r.into()).expect("k >= 1")
    }

    /// `y = x/k - r`. Panics if `k < 1`.
    pub fn inverse(k: i64, r: impl Into<Rational>) -> Self {
        Self::new(SlopeKind::Inverse, k, r.into()).expect("k >= 1")
    }

    /// `k * r` for inverse slopes, `r` for integer slopes: the quantity that
    /// must be integral for the closed forms to apply directly.
    pub fn scaled_intercept(&self) -> Rational {
        match self.kind {
            SlopeKind::Integer => self.intercept.clone(),
            SlopeKind::Inverse => &Rational::from(self.k) * &self.intercept,
        }
    }

    /// Sign of the (scaled) vertical distance from the line to `p`.
    ///
    /// Integer slope: `q(y - kx) + num`; inverse slope: `q(ky - x) + k num`,
    /// where the intercept is `num/q`.
    fn offset_sign(&self, p: Point) -> std::cmp::Ordering {
        let (num, den) = (self.intercept.numer(), self.intercept.denom());
        if let (Some(num), Some(den)) = (num.to_i64(), den.to_i64()) {
            let (num, den, k) = (num as i128, den as i128, self.k as i128);
            let (x, y) = (p.x as i128, p.y as i128);
            let lhs = match self.kind {
                SlopeKind::Integer => den * (y - k * x) + num,
                SlopeKind::Inverse => den * (k * y - x) + k * num,
            };
            return lhs.cmp(&0);
        }
        let k = BigInt::from(self.k);
        let (x, y) = (BigInt::from(p.x), BigInt::from(p.y));
        let lhs = match self.kind {
            SlopeKind::Integer => den * (y - &k * x) + num,
            SlopeKind::Inverse => den * (&k * y - x) + &k * num,
        };
        if lhs.is_zero() {
            std::cmp::Ordering::Equal
        } else if lhs.is_negative() {
            std::cmp::Ordering::Less
        } else {
            std::cmp::Ordering::Greater
        }
    }
}

impl fmt::Display for BoundaryLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            SlopeKind::Integer => write!(f, "y = {}x - ({})", self.k, self.intercept),
            SlopeKind::Inverse => write!(f, "y = x/{} - ({})", self.k, self.intercept),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Strictness {
    /// Stay on or above the line.
    Weak,
    /// Stay strictly above the line.
    Strict,
}

/// Exact test of whether `p` lies above `line`.
pub fn above(p: Point, line: &BoundaryLine, strictness: Strictness) -> bool {
    let sign = line.offset_sign(p);
    match strictness {
        Strictness::Weak => sign.is_ge(),
        Strictness::Strict => sign.is_gt(),
    }
}

/// Replaces a non-integral intercept by the integral one that admits exactly
/// the same lattice points.
///
/// For `y = kx - r` this is `floor(r)`; for `y = x/k - r` it is `floor(kr)/k`.
/// Once normalized from a non-integral value, weak and strict constraints agree.
pub fn normalize_intercept(line: &BoundaryLine) -> BoundaryLine {
    let scaled = line.scaled_intercept();
    if scaled.is_integer() {
        return line.clone();
    }
    let floor = Rational::from_bigint(scaled.floor());
    let intercept = match line.kind {
        SlopeKind::Integer => floor,
        SlopeKind::Inverse => &floor / &Rational::from(line.k),
    };
    BoundaryLine {
        intercept,
        ..line.clone()
    }
}

/// One counting problem: unit-step paths from `start` to `end` above `boundary`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct PathQuery {
    pub start: Point,
    pub end: Point,
    pub boundary: BoundaryLine,
    pub strictness: Strictness,
}

impl PathQuery {
    pub fn new(
        boundary: BoundaryLine,
        strictness: Strictness,
        start: impl Into<Point>,
        end: impl Into<Point>,
    ) -> Self {
        PathQuery {
            start: start.into(),
            end: end.into(),
            boundary,
            strictness,
        }
    }

    pub fn weak(boundary: BoundaryLine, start: impl Into<Point>, end: impl Into<Point>) -> Self {
        Self::new(boundary, Strictness::Weak, start, end)
    }

    pub fn strict(boundary: BoundaryLine, start: impl Into<Point>, end: impl Into<Point>) -> Self {
        Self::new(boundary, Strictness::Strict, start, end)
    }

    pub fn admits(&self, p: Point) -> bool {
        above(p, &self.boundary, self.strictness)
    }

    /// Number of unit steps any path of this query takes.
    pub fn length(&self) -> i64 {
        (self.end.x - self.start.x) + (self.end.y - self.start.y)
    }

    /// Whether `path` is a unit-step member of this query's path set.
    pub fn contains(&self, path: &LatticePath) -> bool {
        path.step_set == StepSet::Unit
            && path.start == self.start
            && path.end() == self.end
            && path.points().all(|p| self.admits(p))
    }
}

impl fmt::Display for PathQuery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let family = match self.strictness {
            Strictness::Weak => "L",
            Strictness::Strict => "strict-L",
        };
        write!(f, "{family}[{}]({} -> {})", self.boundary, self.start, self.end)
    }
}

/// How a query relates to the conditions under which its closed form is
/// classically stated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum QueryClass {
    /// Meets the stated condition block of its formula.
    Classical,
    /// Both endpoints satisfy the boundary, but the query sits outside the
    /// stated conditions (e.g. a strict start on `b = 0`). The closed forms
    /// still apply after shifting.
    BoundaryValid(&'static str),
    /// No path can exist: an endpoint violates the boundary or the rectangle
    /// is empty.
    Invalid(&'static str),
}

impl QueryClass {
    pub fn is_valid(&self) -> bool {
        !matches!(self, QueryClass::Invalid(_))
    }
}

pub fn validate_query(q: &PathQuery) -> QueryClass {
    let (a, b, m, n) = (q.start.x, q.start.y, q.end.x, q.end.y);
    if a > m || b > n {
        return QueryClass::Invalid("start is not weakly south-west of end");
    }
    if !q.admits(q.start) {
        return QueryClass::Invalid("start violates the boundary");
    }
    if !q.admits(q.end) {
        return QueryClass::Invalid("end violates the boundary");
    }
    if a < 0 || b < 0 {
        return QueryClass::BoundaryValid("negative start coordinate");
    }
    if !q.boundary.scaled_intercept().is_integer() {
        // Equivalent to the normalized integral line; both endpoints pass.
        return QueryClass::Classical;
    }
    match q.strictness {
        // Weak conditions coincide with the endpoint checks once a, b >= 0.
        Strictness::Weak => QueryClass::Classical,
        Strictness::Strict => {
            // Stated strict blocks require b > max{0, ...}, i.e. b >= 1.
            if b >= 1 {
                QueryClass::Classical
            } else {
                QueryClass::BoundaryValid("strict query with b = 0")
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum StepSet {
    /// `H = (1,0)`, `V = (0,1)`.
    Unit,
    /// `U = (1,1)`, `D = (-p,1)`.
    Koroljuk { p: i64 },
    /// `U = (1,rise)`, `D = (1,-1)`.
    Bohm { rise: i64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    H,
    V,
    U,
    D,
}

impl Step {
    pub fn letter(self) -> char {
        match self {
            Step::H => 'H',
            Step::V => 'V',
            Step::U => 'U',
            Step::D => 'D',
        }
    }
}

impl StepSet {
    /// The displacement of `step`, or `None` if the step is foreign to this set.
    pub fn vector(self, step: Step) -> Option<(i64, i64)> {
        match (self, step) {
            (StepSet::Unit, Step::H) => Some((1, 0)),
            (StepSet::Unit, Step::V) => Some((0, 1)),
            (StepSet::Koroljuk { .. }, Step::U) => Some((1, 1)),
            (StepSet::Koroljuk { p }, Step::D) => Some((-p, 1)),
            (StepSet::Bohm { rise }, Step::U) => Some((1, rise)),
            (StepSet::Bohm { .. }, Step::D) => Some((1, -1)),
            _ => None,
        }
    }

    fn parse_step(self, c: char) -> Option<Step> {
        let step = match c {
            'H' => Step::H,
            'V' => Step::V,
            'U' => Step::U,
            'D' => Step::D,
            _ => return None,
        };
        self.vector(step).map(|_| step)
    }
}

/// A start point plus a sequence of steps drawn from one step set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticePath {
    pub start: Point,
    pub step_set: StepSet,
    steps: Vec<Step>,
}

impl LatticePath {
    pub fn new(start: impl Into<Point>, step_set: StepSet, steps: Vec<Step>) -> Result<Self> {
        if let Some(bad) = steps.iter().find(|s| step_set.vector(**s).is_none()) {
            return Err(Error::InvalidPath(format!(
                "step {} is not in {step_set:?}",
                bad.letter()
            )));
        }
        Ok(LatticePath {
            start: start.into(),
            step_set,
            steps,
        })
    }

    pub fn empty(start: impl Into<Point>, step_set: StepSet) -> Self {
        LatticePath {
            start: start.into(),
            step_set,
            steps: Vec::new(),
        }
    }

    /// Parses the canonical encoding (`H`/`V` for unit paths, `U`/`D` otherwise).
    pub fn parse(start: impl Into<Point>, step_set: StepSet, text: &str) -> Result<Self> {
        let steps = text
            .trim()
            .chars()
            .map(|c| {
                step_set
                    .parse_step(c)
                    .ok_or_else(|| Error::Parse(format!("step {c:?} for {step_set:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(LatticePath {
            start: start.into(),
            step_set,
            steps,
        })
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn encode(&self) -> String {
        self.steps.iter().map(|s| s.letter()).collect()
    }

    /// Visited points, start included.
    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        let set = self.step_set;
        std::iter::once(self.start).chain(self.steps.iter().scan(self.start, move |p, s| {
            let (dx, dy) = set.vector(*s).expect("steps validated on construction");
            p.x += dx;
            p.y += dy;
            Some(*p)
        }))
    }

    pub fn end(&self) -> Point {
        self.points().last().expect("points include start")
    }

    pub fn count_of(&self, step: Step) -> usize {
        self.steps.iter().filter(|s| **s == step).count()
    }
}

impl fmt::Display for LatticePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} @ {}", self.encode(), self.start)
    }
}
