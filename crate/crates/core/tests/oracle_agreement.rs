use latpath::exactmath::{binomial, Rational};
use latpath::formulas::{
    ballot, base_case, count, count_strict, count_weak, count_weak_inv, evaluate, fuss_catalan,
    koroljuk_literal, koroljuk_reduced, KoroljukQuery,
};
use latpath::identities::complement_avoiding;
use latpath::model::{normalize_intercept, validate_query, BoundaryLine, PathQuery, Strictness};
use latpath::oracle::{dp_count, enumerate_paths};
use latpath::Count;
use proptest::prelude::*;

fn line_strategy() -> impl Strategy<Value = BoundaryLine> {
    (1i64..=5, -6i64..=10, 1i64..=6, any::<bool>()).prop_map(|(k, num, den, inverse)| {
        let r = Rational::new(num, den).unwrap();
        if inverse {
            BoundaryLine::inverse(k, r)
        } else {
            BoundaryLine::integer(k, r)
        }
    })
}

fn query_strategy() -> impl Strategy<Value = PathQuery> {
    (
        line_strategy(),
        any::<bool>(),
        0i64..=6,
        0i64..=8,
        0i64..=8,
        0i64..=12,
    )
        .prop_map(|(line, strict, a, b, dm, dn)| {
            let s = if strict {
                Strictness::Strict
            } else {
                Strictness::Weak
            };
            PathQuery::new(line, s, (a, b), (a + dm, b + dn))
        })
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 2000,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn total_count_matches_oracle(q in query_strategy()) {
        prop_assert_eq!(count(&q), dp_count(&q), "{}", q);
    }

    #[test]
    fn closed_forms_match_oracle_on_valid_queries(q in query_strategy()) {
        let line = normalize_intercept(&q.boundary);
        let q = PathQuery { boundary: line, ..q };
        if validate_query(&q).is_valid() {
            prop_assert_eq!(evaluate(&q).unwrap(), dp_count(&q), "{}", q);
        }
    }

    #[test]
    fn weak_count_decreases_in_start_height(
        k in 1i64..=4, r in -3i64..=6, a in 0i64..=4, dm in 0i64..=4, lift in 0i64..=6, dn in 1i64..=6
    ) {
        let m = a + dm;
        let b = (k * a - r).max(0) + lift;
        let n = (b + 1).max(k * m - r) + dn;
        let here = count_weak(k, r, a, b, m, n).unwrap();
        let above = count_weak(k, r, a, b + 1, m, n).unwrap();
        prop_assert!(above <= here);
    }

    #[test]
    fn base_case_agrees(k in 1i64..=4, a in 0i64..=4, dm in 0i64..=4, lift in 0i64..=4, extra in 0i64..=6) {
        let m = (a + dm).max(1);
        let lift = lift.min(k);
        let b = k * a + lift;
        let n = (k * m).max(b) + extra;
        prop_assert_eq!(base_case(k, a, b, m, n).unwrap(), count_weak(k, 0, a, b, m, n).unwrap());
    }

    #[test]
    fn ballot_agrees(k in 1i64..=5, m in 0i64..=8, extra in 0i64..=8) {
        let n = k * m + extra;
        prop_assert_eq!(ballot(k, m, n).unwrap(), count_weak(k, 0, 0, 0, m, n).unwrap());
    }

    #[test]
    fn inverse_slope_reflects_onto_integer_slope(
        k in 1i64..=4, big_r in -4i64..=10, a in 0i64..=5, dm in 0i64..=5, b in 0i64..=5, dn in 0i64..=5
    ) {
        let (m, n) = (a + dm, b + dn);
        let r = Rational::new(big_r, k).unwrap();
        let q = PathQuery::weak(BoundaryLine::inverse(k, r.clone()), (a, b), (m, n));
        prop_assume!(validate_query(&q).is_valid());
        let top = k * n + big_r;
        let reflected = count_weak(k, 0, 0, top - m, n - b, top - a).unwrap();
        prop_assert_eq!(count_weak_inv(k, &r, a, b, m, n).unwrap(), reflected);
    }

    #[test]
    fn koroljuk_forms_and_complement(p in 1i64..=5, c in 1i64..=14, m in 1i64..=12, n in 1i64..=8) {
        let q = KoroljukQuery::new(p, c, m, n);
        let reduced = koroljuk_reduced(&q).unwrap();
        prop_assert_eq!(koroljuk_literal(&q).unwrap(), reduced.clone());
        let total = binomial(m + n, n).unwrap();
        prop_assert_eq!(&reduced + &complement_avoiding(p, c, m, n), total);
    }

    #[test]
    fn non_integer_intercept_is_strictness_blind(q in query_strategy()) {
        if q.boundary.scaled_intercept().is_integer() {
            return Ok(());
        }
        let weak = PathQuery { strictness: Strictness::Weak, ..q.clone() };
        let strict = PathQuery { strictness: Strictness::Strict, ..q.clone() };
        let normal = PathQuery::weak(normalize_intercept(&q.boundary), q.start, q.end);
        let want = dp_count(&normal);
        prop_assert_eq!(dp_count(&weak), want.clone());
        prop_assert_eq!(dp_count(&strict), want);
    }
}

#[test]
fn enumeration_size_matches_closed_form() {
    for k in 1..=3 {
        for r in -1..=3 {
            for m in 0..=4 {
                for n in 0..=8 {
                    let q = PathQuery::strict(BoundaryLine::integer(k, r), (0, 1), (m, n.max(1)));
                    if !validate_query(&q).is_valid() {
                        continue;
                    }
                    let listed = enumerate_paths(&q).unwrap();
                    let want = count_strict(k, r, 0, 1, m, n.max(1)).unwrap();
                    assert_eq!(Count::from(listed.len() as u64), want, "{q}");
                }
            }
        }
    }
}

#[test]
fn large_values_stay_exact() {
    let catalan_100 = count_weak(1, 0, 0, 0, 100, 100).unwrap();
    assert_eq!(
        catalan_100.to_string(),
        "896519947090131496687170070074100632420837521538745909320"
    );
    // (1/(2m+1)) C(3m, m) at m = 60, cross-checked against the ballot form
    let m = 60;
    assert_eq!(
        fuss_catalan(3, m).unwrap(),
        count_weak(2, 0, 0, 0, m, 2 * m).unwrap()
    );
}
