//! Closed-form path counts.
//!
//! Each alternating sum is accumulated term by term as an exact rational (most
//! terms carry a ratio in front of their binomials) and the total is then
//! required to be a nonnegative integer. A non-integral total means a formula
//! was transcribed wrongly, so it panics instead of returning a value.
//!
//! Inside every summation range the binomial upper indices are nonnegative;
//! [`binom`] panics if that ever fails to hold.

use serde::Serialize;

use crate::error::{precondition, Result};
use crate::exactmath::{binomial, floor_div, Count, Rational};
use crate::model::{
    above, normalize_intercept, BoundaryLine, PathQuery, Point, QueryClass, SlopeKind, Strictness,
};

fn binom(n: i64, k: i64) -> Rational {
    let c = binomial(n, k).unwrap_or_else(|_| panic!("negative upper index in C({n}, {k})"));
    Rational::from(&c)
}

/// Running total of an alternating sum of rational-weighted binomial products.
struct Sum {
    op: &'static str,
    total: Rational,
}

impl Sum {
    fn new(op: &'static str) -> Self {
        Sum {
            op,
            total: Rational::zero(),
        }
    }

    fn add(&mut self, negate: bool, num: i64, den: i64, binoms: &[(i64, i64)]) {
        assert!(den != 0, "{}: zero denominator in a summand", self.op);
        let mut term = Rational::new(num, den).expect("nonzero denominator");
        for &(n, k) in binoms {
            assert!(n >= 0, "{}: negative upper index in C({n}, {k})", self.op);
            if k < 0 || k > n {
                return;
            }
            term = &term * &binom(n, k);
        }
        self.total = if negate {
            &self.total - &term
        } else {
            &self.total + &term
        };
    }

    fn finish(self) -> Count {
        Count::from_rational(&self.total).unwrap_or_else(|| {
            panic!(
                "{}: closed form evaluated to {}, not a nonnegative integer",
                self.op, self.total
            )
        })
    }
}

fn require(op: &'static str, ok: bool, what: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(precondition(op, what()))
    }
}

/// Paths from `(a,b)` to `(m,n)` staying weakly above `y = kx - r`.
///
/// Requires `k >= 1`, `0 <= a <= m`, `n >= km - r` and `max{0, ka - r} <= b <= n`.
pub fn count_weak(k: i64, r: i64, a: i64, b: i64, m: i64, n: i64) -> Result<Count> {
    const OP: &str = "count_weak";
    require(OP, k >= 1, || format!("k={k} < 1"))?;
    require(OP, 0 <= a && a <= m, || format!("need 0 <= a={a} <= m={m}"))?;
    require(OP, n >= k * m - r, || {
        format!("end ({m},{n}) below y = {k}x - {r}")
    })?;
    require(OP, b >= 0.max(k * a - r) && b <= n, || {
        format!("need max(0, ka - r) <= b={b} <= n={n}")
    })?;

    let mut sum = Sum::new(OP);
    for i in 0..=floor_div(b + r - k * a, k + 1) {
        let j = a + i;
        if m - j < 0 {
            break;
        }
        sum.add(
            i % 2 == 1,
            n + r + 1 - k * m,
            n + r + 1 - k * j,
            &[(m + n + r - (k + 1) * j, m - j), (b + r - k * j, i)],
        );
    }
    Ok(sum.finish())
}

/// Paths from `(a,b)` to `(m,n)` staying strictly above `y = kx - r`.
///
/// Requires `k >= 1`, `0 <= a <= m`, `0 <= b <= n`, a start strictly above the
/// line (`b + r - ka > 0`) and `n > km - r`. The start may sit on `b = 0`.
pub fn count_strict(k: i64, r: i64, a: i64, b: i64, m: i64, n: i64) -> Result<Count> {
    const OP: &str = "count_strict";
    require(OP, k >= 1, || format!("k={k} < 1"))?;
    require(OP, 0 <= a && a <= m, || format!("need 0 <= a={a} <= m={m}"))?;
    require(OP, 0 <= b && b <= n, || format!("need 0 <= b={b} <= n={n}"))?;
    require(OP, b + r - k * a > 0, || {
        format!("start ({a},{b}) not strictly above y = {k}x - {r}")
    })?;
    require(OP, n > k * m - r, || {
        format!("end ({m},{n}) not strictly above y = {k}x - {r}")
    })?;

    let mut sum = Sum::new(OP);
    for i in 0..=floor_div(b + r - 1 - k * a, k + 1) {
        let j = a + i;
        if m - j < 0 {
            break;
        }
        let top = m + n + r - (k + 1) * j;
        sum.add(
            i % 2 == 1,
            n + r - k * m,
            top,
            &[(top, m - j), (b + r - 1 - k * j, i)],
        );
    }
    Ok(sum.finish())
}

fn scaled_intercept(op: &'static str, k: i64, r: &Rational) -> Result<i64> {
    (&Rational::from(k) * r)
        .to_i64()
        .ok_or_else(|| precondition(op, format!("k*r = {k}*({r}) is not an integer")))
}

/// Paths from `(a,b)` to `(m,n)` staying weakly above `y = x/k - r`, `kr` integral.
pub fn count_weak_inv(k: i64, r: &Rational, a: i64, b: i64, m: i64, n: i64) -> Result<Count> {
    const OP: &str = "count_weak_inv";
    require(OP, k >= 1, || format!("k={k} < 1"))?;
    let kr = scaled_intercept(OP, k, r)?;
    require(OP, 0 <= a && a <= m, || format!("need 0 <= a={a} <= m={m}"))?;
    require(OP, 0 <= b && b <= n, || format!("need 0 <= b={b} <= n={n}"))?;
    require(OP, k * b + kr >= a, || {
        format!("start ({a},{b}) below y = x/{k} - {r}")
    })?;
    require(OP, k * n + kr >= m, || {
        format!("end ({m},{n}) below y = x/{k} - {r}")
    })?;

    let mut sum = Sum::new(OP);
    for i in 0..=floor_div(k * n + kr - m, k + 1) {
        if n - b - i < 0 {
            break;
        }
        sum.add(
            i % 2 == 1,
            k * b + kr - a + 1,
            k * (n - i) + kr - a + 1,
            &[
                ((k + 1) * (n - i) - a - b + kr, n - b - i),
                (k * (n - i) + kr - m, i),
            ],
        );
    }
    Ok(sum.finish())
}

/// Paths from `(a,b)` to `(m,n)` staying strictly above `y = x/k - r`, `kr` integral.
pub fn count_strict_inv(k: i64, r: &Rational, a: i64, b: i64, m: i64, n: i64) -> Result<Count> {
    const OP: &str = "count_strict_inv";
    require(OP, k >= 1, || format!("k={k} < 1"))?;
    let kr = scaled_intercept(OP, k, r)?;
    require(OP, 0 <= a && a <= m, || format!("need 0 <= a={a} <= m={m}"))?;
    require(OP, 0 <= b && b <= n, || format!("need 0 <= b={b} <= n={n}"))?;
    require(OP, k * b + kr > a, || {
        format!("start ({a},{b}) not strictly above y = x/{k} - {r}")
    })?;
    require(OP, k * n + kr > m, || {
        format!("end ({m},{n}) not strictly above y = x/{k} - {r}")
    })?;

    let mut sum = Sum::new(OP);
    for i in 0..=floor_div(k * n + kr - m - 1, k + 1) {
        if n - b - i < 0 {
            break;
        }
        let top = (k + 1) * (n - i) - a - b + kr;
        sum.add(
            i % 2 == 1,
            k * b + kr - a,
            top,
            &[(top, n - b - i), (k * (n - i) + kr - m - 1, i)],
        );
    }
    Ok(sum.finish())
}

/// `|L_k(a,b;m,n)|` when the start lies within `k` units above `y = kx`.
pub fn base_case(k: i64, a: i64, b: i64, m: i64, n: i64) -> Result<Count> {
    const OP: &str = "base_case";
    require(OP, k >= 1 && m >= 1, || format!("need k={k} >= 1 and m={m} >= 1"))?;
    require(OP, 0 <= a && a <= m, || format!("need 0 <= a={a} <= m={m}"))?;
    require(OP, 0 <= b && b <= n, || format!("need 0 <= b={b} <= n={n}"))?;
    require(OP, n >= k * m, || format!("need n={n} >= km={}", k * m))?;
    require(OP, (0..=k).contains(&(b - k * a)), || {
        format!("need 0 <= b - ka = {} <= k", b - k * a)
    })?;

    let mut sum = Sum::new(OP);
    sum.add(
        false,
        n + 1 - k * m,
        n + 1 - k * a,
        &[(m + n - (k + 1) * a, m - a)],
    );
    Ok(sum.finish())
}

/// Generalized ballot number `C(m+n, m) - k C(m+n, m-1)`.
pub fn ballot(k: i64, m: i64, n: i64) -> Result<Count> {
    const OP: &str = "ballot";
    require(OP, k >= 1 && m >= 0, || format!("need k={k} >= 1 and m={m} >= 0"))?;
    require(OP, n >= k * m, || format!("need n={n} >= km={}", k * m))?;
    let mut sum = Sum::new(OP);
    sum.add(false, 1, 1, &[(m + n, m)]);
    sum.add(true, k, 1, &[(m + n, m - 1)]);
    Ok(sum.finish())
}

/// Order-`k` Fuss-Catalan number `C(km, m) / ((k-1)m + 1)`.
pub fn fuss_catalan(k: i64, m: i64) -> Result<Count> {
    const OP: &str = "fuss_catalan";
    require(OP, k >= 2 && m >= 0, || format!("need k={k} >= 2 and m={m} >= 0"))?;
    let mut sum = Sum::new(OP);
    sum.add(false, 1, (k - 1) * m + 1, &[(k * m, m)]);
    Ok(sum.finish())
}

/// Paths with `m` steps `(1,1)` and `n` steps `(-p,1)` from the origin; `c` is
/// the abscissa of the vertical line of interest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct KoroljukQuery {
    pub p: i64,
    pub c: i64,
    pub m: i64,
    pub n: i64,
}

impl KoroljukQuery {
    pub fn new(p: i64, c: i64, m: i64, n: i64) -> Self {
        KoroljukQuery { p, c, m, n }
    }

    fn check(&self, op: &'static str) -> Result<()> {
        let KoroljukQuery { p, c, m, n } = *self;
        require(op, p >= 1 && c >= 1 && m >= 1 && n >= 1, || {
            format!("need p, c, m, n >= 1 (got p={p} c={c} m={m} n={n})")
        })
    }

    /// Intercept of the equivalent strict unit-step problem, `c + pn - m`.
    pub fn unit_intercept(&self) -> i64 {
        self.c + self.p * self.n - self.m
    }
}

/// Paths that meet `x = c`, as the sum over `s = c (mod p+1)`.
pub fn koroljuk_literal(q: &KoroljukQuery) -> Result<Count> {
    const OP: &str = "koroljuk_literal";
    q.check(OP)?;
    let KoroljukQuery { p, c, m, n } = *q;
    let top = c + floor_div(m + n - c, p + 1) * (p + 1);
    let mut sum = Sum::new(OP);
    for s in (c..=top).step_by((p + 1) as usize) {
        let t = (s - c) / (p + 1);
        sum.add(false, c, s, &[(s, t), (m + n - s, n - t)]);
    }
    Ok(sum.finish())
}

/// Paths that meet `x = c`, summed over `i = (s - c)/(p + 1)`.
pub fn koroljuk_reduced(q: &KoroljukQuery) -> Result<Count> {
    const OP: &str = "koroljuk_reduced";
    q.check(OP)?;
    let KoroljukQuery { p, c, m, n } = *q;
    let mut sum = Sum::new(OP);
    for i in 0..=floor_div(m + n - c, p + 1) {
        let s = c + (p + 1) * i;
        sum.add(false, c, s, &[(s, i), (m + n - s, n - i)]);
    }
    Ok(sum.finish())
}

/// Unit-step paths from the origin to `(m,n)` strictly above `y = k(x - d)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NiederhausenQuery {
    pub k: i64,
    pub d: Rational,
    pub m: i64,
    pub n: i64,
}

impl NiederhausenQuery {
    pub fn new(k: i64, d: Rational, m: i64, n: i64) -> Self {
        NiederhausenQuery { k, d, m, n }
    }

    /// `kd`, if integral.
    pub fn scaled_shift(&self) -> Option<i64> {
        (&Rational::from(self.k) * &self.d).to_i64()
    }

    /// Classical inside `d > 0`, `d >= (k-1)m/k`; boundary-valid if only the
    /// endpoints pass.
    pub fn classify(&self) -> QueryClass {
        let NiederhausenQuery { k, m, n, .. } = *self;
        let Some(kd) = self.scaled_shift() else {
            return QueryClass::Invalid("kd is not an integer");
        };
        if k < 1 || m < 0 || n < 0 {
            return QueryClass::Invalid("need k >= 1 and m, n >= 0");
        }
        if kd < 1 {
            return QueryClass::Invalid("origin not strictly above y = k(x - d)");
        }
        if n <= k * m - kd {
            return QueryClass::Invalid("end not strictly above y = k(x - d)");
        }
        if kd < (k - 1) * m {
            return QueryClass::BoundaryValid("d < (k-1)m/k");
        }
        QueryClass::Classical
    }
}

/// Complement form: all `C(m+n, m)` paths minus those touching the line.
pub fn niederhausen(q: &NiederhausenQuery) -> Result<Count> {
    const OP: &str = "niederhausen";
    match q.classify() {
        QueryClass::Classical => {}
        QueryClass::BoundaryValid(why) | QueryClass::Invalid(why) => {
            return Err(precondition(OP, why));
        }
    }
    let NiederhausenQuery { k, m, n, .. } = *q;
    let kd = q.scaled_shift().expect("classified");
    let mut sum = Sum::new(OP);
    sum.add(false, 1, 1, &[(m + n, m)]);
    for i in floor_div(kd - 1, k + 1) + 1..=m {
        sum.add(
            true,
            n - k * m + kd,
            n - k * i + kd,
            &[((k + 1) * i - kd, i), (m - i - 1 + n - k * i + kd, m - i)],
        );
    }
    Ok(sum.finish())
}

/// Paths with `ups` steps `(1, rise)` and any number of `(1,-1)` steps from
/// altitude `start_alt` to `end_alt` that never touch altitude 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BohmQuery {
    pub rise: i64,
    pub start_alt: i64,
    pub end_alt: i64,
    pub ups: i64,
}

impl BohmQuery {
    pub fn new(rise: i64, start_alt: i64, end_alt: i64, ups: i64) -> Self {
        BohmQuery {
            rise,
            start_alt,
            end_alt,
            ups,
        }
    }

    pub fn downs(&self) -> i64 {
        self.start_alt + self.rise * self.ups - self.end_alt
    }

    pub(crate) fn check(&self, op: &'static str) -> Result<()> {
        let BohmQuery {
            rise,
            start_alt,
            end_alt,
            ups,
        } = *self;
        require(op, rise >= 1, || format!("rise={rise} < 1"))?;
        require(op, start_alt >= 1 && end_alt >= 1, || {
            format!("altitudes must be positive (start={start_alt}, end={end_alt})")
        })?;
        require(op, ups >= 0, || format!("ups={ups} < 0"))?;
        require(op, self.downs() >= 0, || {
            format!("end altitude {end_alt} unreachable with {ups} up-steps")
        })
    }
}

/// Alternating sum truncated at `l <= floor((end_alt - 1)/(rise + 1))`.
pub fn bohm(q: &BohmQuery) -> Result<Count> {
    const OP: &str = "bohm";
    q.check(OP)?;
    let BohmQuery {
        rise,
        start_alt,
        end_alt,
        ups,
    } = *q;
    let mut sum = Sum::new(OP);
    for l in 0..=floor_div(end_alt - 1, rise + 1) {
        if ups - l < 0 {
            break;
        }
        let top = start_alt + (rise + 1) * (ups - l);
        sum.add(
            l % 2 == 1,
            start_alt,
            top,
            &[(top, ups - l), (end_alt - rise * l - 1, l)],
        );
    }
    Ok(sum.finish())
}

/// Dispatches a query with nonnegative start and integral (scaled) intercept
/// to the matching closed form.
pub fn evaluate(q: &PathQuery) -> Result<Count> {
    const OP: &str = "evaluate";
    let (a, b, m, n) = (q.start.x, q.start.y, q.end.x, q.end.y);
    let BoundaryLine { kind, k, intercept } = &q.boundary;
    match (kind, q.strictness) {
        (SlopeKind::Integer, s) => {
            let r = intercept
                .to_i64()
                .ok_or_else(|| precondition(OP, format!("intercept {intercept} not an integer")))?;
            match s {
                Strictness::Weak => count_weak(*k, r, a, b, m, n),
                Strictness::Strict => count_strict(*k, r, a, b, m, n),
            }
        }
        (SlopeKind::Inverse, Strictness::Weak) => count_weak_inv(*k, intercept, a, b, m, n),
        (SlopeKind::Inverse, Strictness::Strict) => count_strict_inv(*k, intercept, a, b, m, n),
    }
}

/// Total counting entry point: any query, any rational intercept.
///
/// Queries with no possible path (an endpoint off the boundary, or an empty
/// rectangle) count 0. Non-integral intercepts are normalized and start
/// coordinates below zero are translated away before a closed form is used.
pub fn count(q: &PathQuery) -> Count {
    let (a, b, m, n) = (q.start.x, q.start.y, q.end.x, q.end.y);
    if a > m || b > n || !q.admits(q.start) || !q.admits(q.end) {
        return Count::zero();
    }
    let mut line = q.boundary.clone();
    let mut strictness = q.strictness;
    if !line.scaled_intercept().is_integer() {
        line = normalize_intercept(&line);
        strictness = Strictness::Weak;
    }
    // Translating by (dx, dy) turns y >= kx - r into y >= kx - (r + k dx - dy)
    // and y >= x/k - r into y >= x/k - (r + dx/k - dy).
    let (dx, dy) = ((-a).max(0), (-b).max(0));
    if dx != 0 || dy != 0 {
        let shift = match line.kind {
            SlopeKind::Integer => Rational::from(line.k * dx - dy),
            SlopeKind::Inverse => &Rational::new(dx, line.k).expect("k >= 1") - &Rational::from(dy),
        };
        line.intercept = &line.intercept + &shift;
    }
    let shifted = PathQuery {
        start: Point::new(a + dx, b + dy),
        end: Point::new(m + dx, n + dy),
        boundary: line,
        strictness,
    };
    debug_assert!(above(shifted.start, &shifted.boundary, strictness));
    evaluate(&shifted).expect("validated query lies in the closed-form domain")
}
