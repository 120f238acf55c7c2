//! Brute-force ground truth, built only from the path definitions.
//!
//! Nothing here calls into [`crate::formulas`]; every count is obtained by
//! tabulation or by walking explicit step sequences.

use serde::Serialize;

use crate::error::{precondition, Error, Result};
use crate::exactmath::Count;
use crate::formulas::{BohmQuery, KoroljukQuery};
use crate::model::{LatticePath, PathQuery, Point, Step, StepSet};

/// Longest path [`enumerate_paths`] and [`count_stepset`] will walk.
pub const ENUMERATION_LIMIT: i64 = 24;

fn guard(steps: i64) -> Result<()> {
    if steps > ENUMERATION_LIMIT {
        return Err(Error::TooLarge {
            steps,
            limit: ENUMERATION_LIMIT,
        });
    }
    Ok(())
}

/// Counts unit-step paths of `q` by tabulating over the bounding rectangle.
pub fn dp_count(q: &PathQuery) -> Count {
    let (a, b, m, n) = (q.start.x, q.start.y, q.end.x, q.end.y);
    if a > m || b > n {
        return Count::zero();
    }
    let height = (n - b + 1) as usize;
    // One column at a time; column[j] holds paths from the start to (x, b + j).
    let mut column = vec![Count::zero(); height];
    for x in a..=m {
        let mut below = Count::zero();
        for (j, cell) in column.iter_mut().enumerate() {
            let p = Point::new(x, b + j as i64);
            let value = if !q.admits(p) {
                Count::zero()
            } else if p == q.start {
                Count::one()
            } else {
                &*cell + &below
            };
            *cell = value.clone();
            below = value;
        }
    }
    column.pop().unwrap_or_default()
}

/// Every path of `q`, ordered lexicographically by its `H`/`V` encoding.
pub fn enumerate_paths(q: &PathQuery) -> Result<Vec<LatticePath>> {
    if q.end.x < q.start.x || q.end.y < q.start.y {
        return Ok(Vec::new());
    }
    guard(q.length())?;
    let mut out = Vec::new();
    if !q.admits(q.start) {
        return Ok(out);
    }
    let mut steps = Vec::with_capacity(q.length() as usize);
    walk_unit(q, q.start, &mut steps, &mut out);
    Ok(out)
}

fn walk_unit(q: &PathQuery, at: Point, steps: &mut Vec<Step>, out: &mut Vec<LatticePath>) {
    if at == q.end {
        out.push(LatticePath::new(q.start, StepSet::Unit, steps.clone()).expect("unit steps"));
        return;
    }
    for (step, next) in [
        (Step::H, Point::new(at.x + 1, at.y)),
        (Step::V, Point::new(at.x, at.y + 1)),
    ] {
        if next.x <= q.end.x && next.y <= q.end.y && q.admits(next) {
            steps.push(step);
            walk_unit(q, next, steps, out);
            steps.pop();
        }
    }
}

/// A two-step family counted by brute force.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "family")]
pub enum StepFamily {
    /// `m` steps `(1,1)`, `n` steps `(-p,1)` from the origin; the forbidden set
    /// is the vertical line `x = c`.
    Koroljuk(KoroljukQuery),
    /// Steps `(1,rise)` and `(1,-1)` between two altitudes; the forbidden set is
    /// every altitude `<= 0`.
    Bohm(BohmQuery),
}

/// Split of all step sequences of a family into those that avoid its forbidden
/// set and those that meet it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StepsetTally {
    pub avoiding: Count,
    pub intersecting: Count,
}

impl StepsetTally {
    pub fn total(&self) -> Count {
        &self.avoiding + &self.intersecting
    }
}

/// Arrangements of `first` and `second`, in lexicographic order of letters.
fn for_each_arrangement(first: (Step, i64), second: (Step, i64), mut visit: impl FnMut(&[Step])) {
    let (lo, hi) = if first.0.letter() <= second.0.letter() {
        (first, second)
    } else {
        (second, first)
    };
    fn rec(lo: (Step, i64), hi: (Step, i64), buf: &mut Vec<Step>, visit: &mut dyn FnMut(&[Step])) {
        if lo.1 == 0 && hi.1 == 0 {
            visit(buf);
            return;
        }
        if lo.1 > 0 {
            buf.push(lo.0);
            rec((lo.0, lo.1 - 1), hi, buf, visit);
            buf.pop();
        }
        if hi.1 > 0 {
            buf.push(hi.0);
            rec(lo, (hi.0, hi.1 - 1), buf, visit);
            buf.pop();
        }
    }
    let mut buf = Vec::with_capacity((lo.1 + hi.1) as usize);
    rec(lo, hi, &mut buf, &mut visit);
}

fn koroljuk_avoids(p: i64, c: i64, steps: &[Step]) -> bool {
    let mut x = 0;
    if x == c {
        return false;
    }
    for s in steps {
        x += if *s == Step::U { 1 } else { -p };
        if x == c {
            return false;
        }
    }
    true
}

fn bohm_stays_positive(rise: i64, start: i64, steps: &[Step]) -> bool {
    let mut alt = start;
    if alt <= 0 {
        return false;
    }
    for s in steps {
        alt += if *s == Step::U { rise } else { -1 };
        if alt <= 0 {
            return false;
        }
    }
    true
}

fn check_koroljuk(q: &KoroljukQuery) -> Result<()> {
    if q.p < 1 || q.c < 1 || q.m < 0 || q.n < 0 {
        return Err(precondition(
            "count_stepset",
            format!("need p, c >= 1 and m, n >= 0, got {q:?}"),
        ));
    }
    guard(q.m + q.n)
}

fn check_bohm(q: &BohmQuery) -> Result<()> {
    q.check("count_stepset")?;
    guard(q.ups + q.downs())
}

/// Walks every step sequence of the family and sorts it by whether it meets
/// the forbidden set.
pub fn count_stepset(family: &StepFamily) -> Result<StepsetTally> {
    let (mut avoiding, mut intersecting) = (0u64, 0u64);
    let mut tally = |ok: bool| {
        if ok {
            avoiding += 1
        } else {
            intersecting += 1
        }
    };
    match family {
        StepFamily::Koroljuk(q) => {
            check_koroljuk(q)?;
            for_each_arrangement((Step::U, q.m), (Step::D, q.n), |s| {
                tally(koroljuk_avoids(q.p, q.c, s))
            });
        }
        StepFamily::Bohm(q) => {
            check_bohm(q)?;
            for_each_arrangement((Step::U, q.ups), (Step::D, q.downs()), |s| {
                tally(bohm_stays_positive(q.rise, q.start_alt, s))
            });
        }
    }
    Ok(StepsetTally {
        avoiding: avoiding.into(),
        intersecting: intersecting.into(),
    })
}

/// Koroljuk paths of `q` that never visit `x = c`, in lexicographic order.
pub fn enumerate_koroljuk_avoiding(q: &KoroljukQuery) -> Result<Vec<LatticePath>> {
    check_koroljuk(q)?;
    let set = StepSet::Koroljuk { p: q.p };
    let mut out = Vec::new();
    for_each_arrangement((Step::U, q.m), (Step::D, q.n), |s| {
        if koroljuk_avoids(q.p, q.c, s) {
            out.push(LatticePath::new((0, 0), set, s.to_vec()).expect("koroljuk steps"));
        }
    });
    Ok(out)
}

/// Böhm paths of `q` that stay at positive altitude, in lexicographic order.
pub fn enumerate_bohm(q: &BohmQuery) -> Result<Vec<LatticePath>> {
    check_bohm(q)?;
    let set = StepSet::Bohm { rise: q.rise };
    let mut out = Vec::new();
    for_each_arrangement((Step::U, q.ups), (Step::D, q.downs()), |s| {
        if bohm_stays_positive(q.rise, q.start_alt, s) {
            out.push(LatticePath::new((0, q.start_alt), set, s.to_vec()).expect("bohm steps"));
        }
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::Rational;
    use crate::model::{normalize_intercept, BoundaryLine, Strictness};

    fn encodings(paths: &[LatticePath]) -> Vec<String> {
        paths.iter().map(LatticePath::encode).collect()
    }

    #[test]
    fn dp_examples() {
        let q = PathQuery::strict(BoundaryLine::integer(1, 1), (0, 0), (1, 2));
        assert_eq!(dp_count(&q), Count::from(2));
        let q = PathQuery::weak(BoundaryLine::integer(2, 0), (0, 0), (2, 4));
        assert_eq!(dp_count(&q), Count::from(3));
        let q = PathQuery::weak(BoundaryLine::integer(1, 0), (3, 3), (3, 3));
        assert_eq!(dp_count(&q), Count::one());
        let q = PathQuery::strict(BoundaryLine::integer(1, 0), (3, 3), (3, 3));
        assert_eq!(dp_count(&q), Count::zero());
        let q = PathQuery::weak(BoundaryLine::integer(1, 1), (0, -1), (2, 2));
        assert_eq!(dp_count(&q), Count::from(5));
        let q = PathQuery::weak(BoundaryLine::integer(1, 0), (2, 2), (1, 1));
        assert_eq!(dp_count(&q), Count::zero());
    }

    #[test]
    fn enumerate_examples() {
        let q = PathQuery::strict(BoundaryLine::integer(1, 1), (0, 0), (1, 2));
        assert_eq!(encodings(&enumerate_paths(&q).unwrap()), ["VHV", "VVH"]);
        let q = PathQuery::weak(BoundaryLine::integer(1, 0), (1, 1), (2, 2));
        assert_eq!(encodings(&enumerate_paths(&q).unwrap()), ["VH"]);
        let q = PathQuery::weak(BoundaryLine::integer(1, 0), (2, 2), (2, 2));
        assert_eq!(encodings(&enumerate_paths(&q).unwrap()), [""]);
        let q = PathQuery::weak(BoundaryLine::integer(1, 0), (0, 0), (13, 13));
        assert!(matches!(
            enumerate_paths(&q),
            Err(Error::TooLarge { steps: 26, .. })
        ));
    }

    #[test]
    fn enumeration_matches_dp() {
        for k in 1..=3 {
            for r in -1..=3 {
                for (m, n) in [(3, 5), (4, 4), (2, 7)] {
                    for line in [BoundaryLine::integer(k, r), BoundaryLine::inverse(k, r)] {
                        for s in [Strictness::Weak, Strictness::Strict] {
                            let q = PathQuery::new(line.clone(), s, (0, 0), (m, n));
                            let paths = enumerate_paths(&q).unwrap();
                            assert_eq!(Count::from(paths.len() as u64), dp_count(&q), "{q}");
                            assert!(paths.iter().all(|p| q.contains(p)));
                            assert!(paths.windows(2).all(|w| w[0].encode() < w[1].encode()));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn stepset_examples() {
        let t = count_stepset(&StepFamily::Koroljuk(KoroljukQuery::new(1, 2, 2, 1))).unwrap();
        assert_eq!((t.avoiding, t.intersecting), (Count::from(2), Count::from(1)));
        let t = count_stepset(&StepFamily::Bohm(BohmQuery::new(1, 2, 1, 2))).unwrap();
        assert_eq!(t.avoiding, Count::from(5));
        assert_eq!(t.total(), Count::from(10));
        let t = count_stepset(&StepFamily::Koroljuk(KoroljukQuery::new(1, 10, 2, 1))).unwrap();
        assert_eq!((t.avoiding, t.intersecting), (Count::from(3), Count::zero()));
        let big = StepFamily::Koroljuk(KoroljukQuery::new(1, 3, 20, 5));
        assert!(matches!(count_stepset(&big), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn koroljuk_enumeration_order() {
        let paths = enumerate_koroljuk_avoiding(&KoroljukQuery::new(1, 2, 2, 1)).unwrap();
        assert_eq!(encodings(&paths), ["DUU", "UDU"]);
        let paths = enumerate_bohm(&BohmQuery::new(2, 1, 1, 1)).unwrap();
        assert_eq!(encodings(&paths), ["UDD"]);
    }

    #[test]
    fn koroljuk_split_covers_all_sequences() {
        for p in 1..=3 {
            for c in 1..=6 {
                for m in 1..=5 {
                    for n in 1..=4 {
                        let t = count_stepset(&StepFamily::Koroljuk(KoroljukQuery::new(p, c, m, n))).unwrap();
                        let total = crate::exactmath::binomial(m + n, n).unwrap();
                        assert_eq!(t.total(), total);
                    }
                }
            }
        }
    }

    #[test]
    fn dp_is_blind_to_intercept_normalization() {
        for (num, den) in [(1, 2), (-3, 2), (7, 3), (-1, 5), (5, 4)] {
            let r = Rational::new(num, den).unwrap();
            for line in [
                BoundaryLine::integer(2, r.clone()),
                BoundaryLine::inverse(3, r.clone()),
            ] {
                let norm = normalize_intercept(&line);
                for s in [Strictness::Weak, Strictness::Strict] {
                    let q = PathQuery::new(line.clone(), s, (0, 0), (4, 7));
                    let qn = PathQuery::weak(norm.clone(), (0, 0), (4, 7));
                    assert_eq!(dp_count(&q), dp_count(&qn));
                }
            }
        }
    }
}
