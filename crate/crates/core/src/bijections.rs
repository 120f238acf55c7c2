//! Explicit path correspondences between the counted families.
//!
//! Every transform first checks that its input lies in the declared source
//! family, so the bijection claims are only ever exercised on the sets where
//! they hold. Each forward map has an inverse here as well.

use crate::error::{precondition, Error, Result};
use crate::model::{BoundaryLine, LatticePath, PathQuery, Point, SlopeKind, Step, StepSet, Strictness};

fn member(query: &PathQuery, path: &LatticePath) -> Result<()> {
    if query.contains(path) {
        Ok(())
    } else {
        Err(Error::InvalidPath(format!("{path} is not in {query}")))
    }
}

fn translate(path: &LatticePath, dx: i64, dy: i64) -> LatticePath {
    LatticePath::new(
        (path.start.x + dx, path.start.y + dy),
        path.step_set,
        path.steps().to_vec(),
    )
    .expect("same step set")
}

fn translate_query(q: &PathQuery, dx: i64, dy: i64, strictness: Strictness) -> PathQuery {
    PathQuery::new(
        q.boundary.clone(),
        strictness,
        (q.start.x + dx, q.start.y + dy),
        (q.end.x + dx, q.end.y + dy),
    )
}

fn integral_integer_slope(op: &'static str, q: &PathQuery) -> Result<i64> {
    if q.boundary.kind != SlopeKind::Integer {
        return Err(precondition(op, "needs a boundary y = kx - r"));
    }
    q.boundary
        .intercept
        .to_i64()
        .ok_or_else(|| precondition(op, "needs an integral intercept"))
}

/// Strict family `(a,b) -> (m,n)` onto the weak family `(a,b-1) -> (m,n-1)` by
/// lowering the path one unit.
pub fn drop_one(path: &LatticePath, source: &PathQuery) -> Result<(LatticePath, PathQuery)> {
    integral_integer_slope("drop_one", source)?;
    if source.strictness != Strictness::Strict {
        return Err(precondition("drop_one", "source family must be strict"));
    }
    member(source, path)?;
    Ok((
        translate(path, 0, -1),
        translate_query(source, 0, -1, Strictness::Weak),
    ))
}

/// Inverse of [`drop_one`]; `target` is the weak family.
pub fn raise_one(path: &LatticePath, target: &PathQuery) -> Result<(LatticePath, PathQuery)> {
    integral_integer_slope("raise_one", target)?;
    if target.strictness != Strictness::Weak {
        return Err(precondition("raise_one", "target family must be weak"));
    }
    member(target, path)?;
    Ok((
        translate(path, 0, 1),
        translate_query(target, 0, 1, Strictness::Strict),
    ))
}

/// `L(a+1, b; m, n)` onto `L(a, b-k; m-1, n-k)` by the translation `(-1, -k)`,
/// which fixes the boundary `y = kx - r`.
pub fn lemma_translate(path: &LatticePath, source: &PathQuery) -> Result<(LatticePath, PathQuery)> {
    let k = source.boundary.k;
    if source.boundary.kind != SlopeKind::Integer {
        return Err(precondition("lemma_translate", "needs a boundary y = kx - r"));
    }
    if source.start.x < 1 || source.start.y < k {
        return Err(precondition(
            "lemma_translate",
            format!("start {} must have x >= 1 and y >= k={k}", source.start),
        ));
    }
    member(source, path)?;
    Ok((
        translate(path, -1, -k),
        translate_query(source, -1, -k, source.strictness),
    ))
}

/// Inverse of [`lemma_translate`].
pub fn lemma_untranslate(path: &LatticePath, target: &PathQuery) -> Result<(LatticePath, PathQuery)> {
    let k = target.boundary.k;
    if target.boundary.kind != SlopeKind::Integer {
        return Err(precondition("lemma_untranslate", "needs a boundary y = kx - r"));
    }
    member(target, path)?;
    Ok((
        translate(path, 1, k),
        translate_query(target, 1, k, target.strictness),
    ))
}

fn reverse_swap(steps: &[Step]) -> Vec<Step> {
    steps
        .iter()
        .rev()
        .map(|s| match s {
            Step::H => Step::V,
            Step::V => Step::H,
            other => *other,
        })
        .collect()
}

/// The family above `y = kx` that [`reflect_inverse`] maps `source` onto.
pub fn reflect_inverse_target(source: &PathQuery) -> Result<PathQuery> {
    const OP: &str = "reflect_inverse";
    let line = &source.boundary;
    if line.kind != SlopeKind::Inverse {
        return Err(precondition(OP, "needs a boundary y = x/k - r"));
    }
    let kr = line
        .scaled_intercept()
        .to_i64()
        .ok_or_else(|| precondition(OP, "k*r must be an integer"))?;
    let k = line.k;
    let (a, b, m, n) = (source.start.x, source.start.y, source.end.x, source.end.y);
    let top = k * n + kr;
    Ok(PathQuery::new(
        BoundaryLine::integer(k, 0),
        source.strictness,
        (0, top - m),
        (n - b, top - a),
    ))
}

/// Paths above `y = x/k - r` onto paths above `y = kx`.
///
/// Composite of moving the origin to `(k(n+r), n)` with both axes reversed and
/// then reflecting in `y = x`; on points this is `(x, y) -> (n - y, k(n+r) - x)`.
/// On step sequences it reverses the order and exchanges `H` with `V`.
pub fn reflect_inverse(path: &LatticePath, source: &PathQuery) -> Result<(LatticePath, PathQuery)> {
    let target = reflect_inverse_target(source)?;
    member(source, path)?;
    let image = LatticePath::new(target.start, StepSet::Unit, reverse_swap(path.steps()))?;
    debug_assert!(target.contains(&image));
    Ok((image, target))
}

/// Inverse of [`reflect_inverse`]; `source` names the original family.
pub fn reflect_inverse_back(path: &LatticePath, source: &PathQuery) -> Result<LatticePath> {
    let target = reflect_inverse_target(source)?;
    member(&target, path)?;
    LatticePath::new(source.start, StepSet::Unit, reverse_swap(path.steps()))
}

fn koroljuk_params(op: &'static str, path: &LatticePath, c: i64) -> Result<(i64, i64, i64)> {
    let StepSet::Koroljuk { p } = path.step_set else {
        return Err(precondition(op, "input must use Koroljuk steps"));
    };
    if c < 1 {
        return Err(precondition(op, format!("c={c} must be positive")));
    }
    if path.start != Point::new(0, 0) {
        return Err(Error::InvalidPath(format!("{path} does not start at the origin")));
    }
    if path.points().any(|pt| pt.x == c) {
        return Err(Error::InvalidPath(format!("{path} meets the line x = {c}")));
    }
    Ok((p, path.count_of(Step::U) as i64, path.count_of(Step::D) as i64))
}

/// The strict unit-step family `Ł_{p, c+pn-m}(0,0; n,m)`.
pub fn koroljuk_unit_family(p: i64, c: i64, m: i64, n: i64) -> PathQuery {
    PathQuery::strict(BoundaryLine::integer(p, c + p * n - m), (0, 0), (n, m))
}

/// Koroljuk paths avoiding `x = c` onto strict unit-step paths: reverse the
/// step order, send `U` to `V` and `D` to `H`.
pub fn koroljuk_to_unit(path: &LatticePath, c: i64) -> Result<(LatticePath, PathQuery)> {
    let (p, m, n) = koroljuk_params("koroljuk_to_unit", path, c)?;
    let steps = path
        .steps()
        .iter()
        .rev()
        .map(|s| if *s == Step::U { Step::V } else { Step::H })
        .collect();
    let image = LatticePath::new((0, 0), StepSet::Unit, steps)?;
    Ok((image, koroljuk_unit_family(p, c, m, n)))
}

/// Inverse of [`koroljuk_to_unit`]. `family` must be `Ł_{p,v}(0,0; n,m)` with
/// `v = c + pn - m`.
pub fn unit_to_koroljuk(path: &LatticePath, family: &PathQuery, c: i64) -> Result<LatticePath> {
    const OP: &str = "unit_to_koroljuk";
    let v = integral_integer_slope(OP, family)?;
    let p = family.boundary.k;
    let (n, m) = (family.end.x, family.end.y);
    if family.strictness != Strictness::Strict || family.start != Point::new(0, 0) {
        return Err(precondition(OP, "family must be strict and start at the origin"));
    }
    if v != c + p * n - m {
        return Err(precondition(
            OP,
            format!("intercept {v} does not equal c + pn - m = {}", c + p * n - m),
        ));
    }
    member(family, path)?;
    let steps = path
        .steps()
        .iter()
        .rev()
        .map(|s| if *s == Step::V { Step::U } else { Step::D })
        .collect();
    LatticePath::new((0, 0), StepSet::Koroljuk { p }, steps)
}

fn steps_from_points(points: &[Point], set: StepSet) -> Result<Vec<Step>> {
    points
        .windows(2)
        .map(|w| {
            let d = (w[1].x - w[0].x, w[1].y - w[0].y);
            [Step::H, Step::V, Step::U, Step::D]
                .into_iter()
                .find(|s| set.vector(*s) == Some(d))
                .ok_or_else(|| Error::InvalidPath(format!("displacement {d:?} not in {set:?}")))
        })
        .collect()
}

/// Quarter turn clockwise followed by lifting the axis to `c`:
/// `(x, y) -> (y, c - x)`. A Koroljuk path avoiding `x = c` becomes a Böhm path
/// from altitude `c` to `c + pn - m` that never touches altitude 0.
pub fn bohm_rotate(path: &LatticePath, c: i64) -> Result<LatticePath> {
    let (p, _, _) = koroljuk_params("bohm_rotate", path, c)?;
    let image: Vec<Point> = path.points().map(|pt| Point::new(pt.y, c - pt.x)).collect();
    let set = StepSet::Bohm { rise: p };
    LatticePath::new(image[0], set, steps_from_points(&image, set)?)
}

/// Inverse of [`bohm_rotate`]: `(x, y) -> (c - y, x)`.
pub fn bohm_unrotate(path: &LatticePath, c: i64) -> Result<LatticePath> {
    const OP: &str = "bohm_unrotate";
    let StepSet::Bohm { rise } = path.step_set else {
        return Err(precondition(OP, "input must use Böhm steps"));
    };
    if path.start != Point::new(0, c) {
        return Err(Error::InvalidPath(format!(
            "{path} does not start at altitude {c}"
        )));
    }
    if path.points().any(|pt| pt.y <= 0) {
        return Err(Error::InvalidPath(format!("{path} touches altitude 0")));
    }
    let image: Vec<Point> = path.points().map(|pt| Point::new(c - pt.y, pt.x)).collect();
    let set = StepSet::Koroljuk { p: rise };
    LatticePath::new(image[0], set, steps_from_points(&image, set)?)
}

/// The remaining geometric steps after [`bohm_rotate`], as a step map: reverse
/// the order, send `(1,rise)` to `H` and `(1,-1)` to `V`. The target is
/// `Ł_{rise, v}(0,0; ups, downs)` with `v` the terminal altitude.
pub fn bohm_to_unit(path: &LatticePath) -> Result<(LatticePath, PathQuery)> {
    const OP: &str = "bohm_to_unit";
    let StepSet::Bohm { rise } = path.step_set else {
        return Err(precondition(OP, "input must use Böhm steps"));
    };
    if path.start.x != 0 || path.points().any(|pt| pt.y <= 0) {
        return Err(Error::InvalidPath(format!("{path} touches altitude 0")));
    }
    let ups = path.count_of(Step::U) as i64;
    let downs = path.count_of(Step::D) as i64;
    let v = path.end().y;
    let steps = path
        .steps()
        .iter()
        .rev()
        .map(|s| if *s == Step::U { Step::H } else { Step::V })
        .collect();
    let family = PathQuery::strict(BoundaryLine::integer(rise, v), (0, 0), (ups, downs));
    Ok((LatticePath::new((0, 0), StepSet::Unit, steps)?, family))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::Count;
    use crate::oracle::{dp_count, enumerate_koroljuk_avoiding, enumerate_paths};

    fn unit(start: (i64, i64), s: &str) -> LatticePath {
        LatticePath::parse(start, StepSet::Unit, s).unwrap()
    }

    fn kor(p: i64, s: &str) -> LatticePath {
        LatticePath::parse((0, 0), StepSet::Koroljuk { p }, s).unwrap()
    }

    #[test]
    fn drop_one_examples() {
        let src = PathQuery::strict(BoundaryLine::integer(1, 0), (0, 1), (1, 2));
        let (img, tgt) = drop_one(&unit((0, 1), "VH"), &src).unwrap();
        assert_eq!(img, unit((0, 0), "VH"));
        assert_eq!(tgt, PathQuery::weak(BoundaryLine::integer(1, 0), (0, 0), (1, 1)));
        assert!(tgt.contains(&img));

        let src = PathQuery::strict(BoundaryLine::integer(2, 1), (3, 8), (3, 8));
        let (img, tgt) = drop_one(&unit((3, 8), ""), &src).unwrap();
        assert_eq!(img.start, Point::new(3, 7));
        assert!(img.is_empty() && tgt.contains(&img));

        let src = PathQuery::strict(BoundaryLine::integer(1, 1), (0, 0), (2, 3));
        let tgt = PathQuery::weak(BoundaryLine::integer(1, 1), (0, -1), (2, 2));
        assert_eq!(dp_count(&src), Count::from(5));
        assert_eq!(dp_count(&tgt), Count::from(5));

        let bad = unit((0, 1), "HV");
        assert!(matches!(drop_one(&bad, &src), Err(Error::InvalidPath(_))));
    }

    #[test]
    fn lemma_translate_examples() {
        let src = PathQuery::weak(BoundaryLine::integer(1, 0), (1, 1), (2, 2));
        let (img, tgt) = lemma_translate(&unit((1, 1), "VH"), &src).unwrap();
        assert_eq!(img, unit((0, 0), "VH"));
        assert_eq!(tgt, PathQuery::weak(BoundaryLine::integer(1, 0), (0, 0), (1, 1)));
        assert_eq!(dp_count(&src), dp_count(&tgt));
        assert_eq!(dp_count(&tgt), Count::one());

        let src = PathQuery::weak(BoundaryLine::integer(2, 0), (2, 4), (2, 4));
        let (img, _) = lemma_translate(&unit((2, 4), ""), &src).unwrap();
        assert_eq!(img.start, Point::new(1, 2));
    }

    #[test]
    fn reflect_inverse_examples() {
        let src = PathQuery::weak(BoundaryLine::inverse(2, 0), (0, 0), (2, 1));
        let (img, tgt) = reflect_inverse(&unit((0, 0), "VHH"), &src).unwrap();
        assert_eq!(img, unit((0, 0), "VVH"));
        assert_eq!(tgt, PathQuery::weak(BoundaryLine::integer(2, 0), (0, 0), (1, 2)));
        assert_eq!(reflect_inverse_back(&img, &src).unwrap(), unit((0, 0), "VHH"));

        let src = PathQuery::weak(BoundaryLine::inverse(2, 1), (0, 0), (2, 1));
        let tgt = reflect_inverse_target(&src).unwrap();
        assert_eq!(tgt, PathQuery::weak(BoundaryLine::integer(2, 0), (0, 2), (1, 4)));
        assert_eq!(dp_count(&src), Count::from(3));
        assert_eq!(dp_count(&tgt), Count::from(3));

        // empty path: (m,n) lands at (n-b, k(n+r)-a)
        let src = PathQuery::weak(BoundaryLine::inverse(3, 1), (2, 1), (2, 1));
        let (img, _) = reflect_inverse(&unit((2, 1), ""), &src).unwrap();
        assert_eq!(img.start, Point::new(0, 4));
        assert!(img.is_empty());
    }

    #[test]
    fn koroljuk_unit_examples() {
        let (img, fam) = koroljuk_to_unit(&kor(1, "UDU"), 2).unwrap();
        assert_eq!(img.encode(), "VHV");
        assert_eq!(
            fam,
            PathQuery::strict(BoundaryLine::integer(1, 1), (0, 0), (1, 2))
        );
        assert!(fam.contains(&img));
        assert_eq!(unit_to_koroljuk(&img, &fam, 2).unwrap(), kor(1, "UDU"));

        let (img, _) = koroljuk_to_unit(&kor(2, "UUU"), 5).unwrap();
        assert_eq!(img.encode(), "VVV");

        assert!(matches!(
            koroljuk_to_unit(&kor(1, "UUD"), 2),
            Err(Error::InvalidPath(_))
        ));
        let wrong = PathQuery::strict(BoundaryLine::integer(1, 2), (0, 0), (1, 2));
        assert!(matches!(
            unit_to_koroljuk(&unit((0, 0), "VHV"), &wrong, 2),
            Err(Error::Precondition { .. })
        ));

        let avoiding = enumerate_koroljuk_avoiding(&crate::formulas::KoroljukQuery::new(1, 2, 2, 1)).unwrap();
        let unit_paths = enumerate_paths(&koroljuk_unit_family(1, 2, 2, 1)).unwrap();
        assert_eq!(avoiding.len(), 2);
        assert_eq!(unit_paths.len(), 2);
    }

    #[test]
    fn bohm_rotate_examples() {
        let b = bohm_rotate(&kor(1, "DUU"), 2).unwrap();
        assert_eq!(b.encode(), "UDD");
        let alts: Vec<i64> = b.points().map(|p| p.y).collect();
        assert_eq!(alts, [2, 3, 2, 1]);
        assert_eq!(bohm_unrotate(&b, 2).unwrap(), kor(1, "DUU"));
        let (u, fam) = bohm_to_unit(&b).unwrap();
        assert_eq!(
            (u.clone(), fam.clone()),
            koroljuk_to_unit(&kor(1, "DUU"), 2).unwrap()
        );
        assert!(fam.contains(&u));
    }
}
