//! Batch verification suites: closed forms against the oracle, the algebraic
//! identities, and the bijections.
//!
//! Every suite expands its parameter grid into a list of independent tasks and
//! runs them either in order or on the rayon pool. Results are gathered in task
//! order, so a [`Summary`] never depends on scheduling.

use std::collections::HashSet;
use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
#[cfg(feature = "parallel")]
use rayon::prelude::*;
use serde::Serialize;

use crate::bijections::{
    bohm_rotate, bohm_to_unit, bohm_unrotate, drop_one, koroljuk_to_unit, koroljuk_unit_family,
    lemma_translate, lemma_untranslate, raise_one, reflect_inverse, reflect_inverse_back,
    reflect_inverse_target, unit_to_koroljuk,
};
use crate::error::Result;
use crate::exactmath::{Count, Rational};
use crate::formulas::{
    bohm, count, count_strict, evaluate, koroljuk_literal, koroljuk_reduced, niederhausen, BohmQuery,
    KoroljukQuery, NiederhausenQuery,
};
use crate::identities::{
    complement_avoiding, complement_check, hagen_rothe_check, ncp9_check, random_hagen_rothe,
    random_upper_negation, recurrence_check, shift_check, upper_negation_check, CheckReport,
};
use crate::model::{validate_query, BoundaryLine, LatticePath, PathQuery, QueryClass, Strictness};
use crate::oracle::{
    count_stepset, dp_count, enumerate_bohm, enumerate_koroljuk_avoiding, enumerate_paths, StepFamily,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Execution {
    Sequential,
    #[cfg(feature = "parallel")]
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        #[cfg(feature = "parallel")]
        return Execution::Parallel;
        #[cfg(not(feature = "parallel"))]
        return Execution::Sequential;
    }
}

impl Execution {
    /// Execution on `threads` workers: sequential for one thread or fewer,
    /// otherwise the global rayon pool, sized on the first call.
    pub fn with_threads(threads: usize) -> Self {
        if threads <= 1 {
            return Execution::Sequential;
        }
        #[cfg(feature = "parallel")]
        {
            // a pool that is already running keeps its size
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build_global();
            Execution::Parallel
        }
        #[cfg(not(feature = "parallel"))]
        Execution::Sequential
    }
}

type Outcome = std::result::Result<(), String>;

fn run<T, F>(tasks: &[T], exec: Execution, f: F) -> Vec<Outcome>
where
    T: Sync,
    F: Fn(&T) -> Vec<Outcome> + Sync + Send,
{
    match exec {
        Execution::Sequential => tasks.iter().flat_map(&f).collect(),
        #[cfg(feature = "parallel")]
        Execution::Parallel => tasks.par_iter().flat_map_iter(&f).collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub suite: String,
    pub checks: u64,
    pub failures: u64,
    pub first_failure: Option<String>,
}

impl Summary {
    fn collect(suite: &str, outcomes: Vec<Outcome>) -> Self {
        let mut s = Summary {
            suite: suite.to_string(),
            checks: 0,
            failures: 0,
            first_failure: None,
        };
        for o in outcomes {
            s.checks += 1;
            if let Err(e) = o {
                s.failures += 1;
                s.first_failure.get_or_insert(e);
            }
        }
        s
    }

    pub fn ok(&self) -> bool {
        self.failures == 0
    }

    /// Concatenates several summaries under one suite name.
    pub fn merge(suite: &str, parts: &[Summary]) -> Self {
        Summary {
            suite: suite.to_string(),
            checks: parts.iter().map(|p| p.checks).sum(),
            failures: parts.iter().map(|p| p.failures).sum(),
            first_failure: parts.iter().find_map(|p| p.first_failure.clone()),
        }
    }
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} checks, {} failures",
            self.suite, self.checks, self.failures
        )?;
        if let Some(e) = &self.first_failure {
            write!(f, "; first: {e}")?;
        }
        Ok(())
    }
}

fn expect_eq(what: impl FnOnce() -> String, got: &Count, want: &Count) -> Outcome {
    if got == want {
        Ok(())
    } else {
        Err(format!("{}: got {got}, expected {want}", what()))
    }
}

fn expect_report(r: Result<CheckReport>) -> Outcome {
    match r {
        Ok(r) if r.ok => Ok(()),
        Ok(r) => Err(r.to_string()),
        Err(e) => Err(e.to_string()),
    }
}

/// Parameter box for [`sweep`]: `1 <= k <= max_k`, integer intercepts in
/// `min_r..=max_r`, `0 <= a <= m <= max_m`, `0 <= b <= n <= max_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SweepGrid {
    pub max_k: i64,
    pub min_r: i64,
    pub max_r: i64,
    pub max_m: i64,
    pub max_n: i64,
}

impl SweepGrid {
    pub fn new(max_k: i64, max_m: i64, max_n: i64) -> Self {
        SweepGrid {
            max_k,
            min_r: -2,
            max_r: 4,
            max_m,
            max_n,
        }
    }

    /// Coordinates range over `0..extent`; an extent of 0 is the empty grid.
    pub fn with_extent(max_k: i64, extent: i64) -> Self {
        SweepGrid::new(max_k, extent - 1, extent - 1)
    }
}

/// Closed forms against [`dp_count`] over the grid, for both slope kinds and
/// both strictness modes, together with the shift identity and the first-step
/// recurrence wherever their hypotheses hold.
///
/// Boundary-valid queries go through [`evaluate`]; every query, valid or not,
/// also goes through the total [`count`], which must agree with the oracle.
pub fn sweep(grid: &SweepGrid, exec: Execution) -> Summary {
    let mut tasks = Vec::new();
    for k in 1..=grid.max_k {
        for r in grid.min_r..=grid.max_r {
            for a in 0..=grid.max_m {
                for b in 0..=grid.max_n {
                    tasks.push((k, r, a, b));
                }
            }
        }
    }
    let outcomes = run(&tasks, exec, |&(k, r, a, b)| {
        let mut out = Vec::new();
        for m in a..=grid.max_m {
            for n in b..=grid.max_n {
                sweep_point(k, r, a, b, m, n, &mut out);
            }
        }
        out
    });
    Summary::collect("sweep", outcomes)
}

fn sweep_point(k: i64, r: i64, a: i64, b: i64, m: i64, n: i64, out: &mut Vec<Outcome>) {
    let lines = [BoundaryLine::integer(k, r), BoundaryLine::inverse(k, r)];
    for line in lines {
        for strictness in [Strictness::Weak, Strictness::Strict] {
            let q = PathQuery::new(line.clone(), strictness, (a, b), (m, n));
            let want = dp_count(&q);
            if validate_query(&q).is_valid() {
                out.push(match evaluate(&q) {
                    Ok(got) => expect_eq(|| format!("closed form {q}"), &got, &want),
                    Err(e) => Err(format!("closed form {q}: {e}")),
                });
            }
            out.push(expect_eq(|| format!("count {q}"), &count(&q), &want));
        }
    }

    let strict = PathQuery::strict(BoundaryLine::integer(k, r), (a, b), (m, n));
    if b >= 1 && validate_query(&strict).is_valid() {
        out.push(expect_report(shift_check(k, r, a, b, m, n)));
    }
    let lemma = m >= 1 && n >= k * m - r && k * (a + 1) - r <= b && b < n;
    if lemma {
        out.push(expect_report(recurrence_check(k, r, a, b, m, n)));
    }
}

/// Sizes for [`identities`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IdentityConfig {
    pub trials: u64,
    pub negation_trials: u64,
    pub seed: u64,
}

impl Default for IdentityConfig {
    fn default() -> Self {
        IdentityConfig {
            trials: 1000,
            negation_trials: 500,
            seed: 7,
        }
    }
}

/// Random Hagen-Rothe and upper-negation trials from `cfg.seed`.
pub fn random_identities(cfg: &IdentityConfig, exec: Execution) -> Summary {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let hr: Vec<_> = (0..cfg.trials).map(|_| random_hagen_rothe(&mut rng)).collect();
    let un: Vec<_> = (0..cfg.negation_trials)
        .map(|_| random_upper_negation(&mut rng))
        .collect();
    let mut outcomes = run(&hr, exec, |p| vec![expect_report(hagen_rothe_check(p))]);
    outcomes.extend(run(&un, exec, |(x, k)| {
        vec![expect_report(upper_negation_check(x, *k))]
    }));
    Summary::collect("random identities", outcomes)
}

/// Literal against reduced Koroljuk forms, and the complement split with its
/// avoiding term confirmed by brute force whenever `m + n <= 10`, over
/// `p <= 3`, `c <= 8`, `m <= 8`, `n <= 4`.
pub fn koroljuk_suite(exec: Execution) -> Summary {
    let mut tasks = Vec::new();
    for p in 1..=3 {
        for c in 1..=8 {
            for m in 1..=8 {
                for n in 1..=4 {
                    tasks.push((p, c, m, n));
                }
            }
        }
    }
    let outcomes = run(&tasks, exec, |&(p, c, m, n)| {
        let q = KoroljukQuery::new(p, c, m, n);
        let mut out = Vec::new();
        out.push(match (koroljuk_literal(&q), koroljuk_reduced(&q)) {
            (Ok(l), Ok(r)) => expect_eq(|| format!("koroljuk forms {q:?}"), &l, &r),
            (Err(e), _) | (_, Err(e)) => Err(format!("koroljuk forms {q:?}: {e}")),
        });
        out.push(expect_report(complement_check(p, c, m, n)));
        if m + n <= 10 {
            out.push(
                match (count_stepset(&StepFamily::Koroljuk(q)), koroljuk_reduced(&q)) {
                    (Ok(t), Ok(hit)) => expect_eq(
                        || format!("stepset avoiding {q:?}"),
                        &t.avoiding,
                        &complement_avoiding(p, c, m, n),
                    )
                    .and_then(|_| expect_eq(|| format!("stepset intersecting {q:?}"), &t.intersecting, &hit)),
                    (Err(e), _) | (_, Err(e)) => Err(format!("stepset {q:?}: {e}")),
                },
            );
        }
        out
    });
    Summary::collect("koroljuk", outcomes)
}

/// The complement form against the strict count for `k <= 3`, `m, n <= 6`
/// and every integral `kd` in its domain up to `kd = 3k + 6`, each with its
/// derivation check; Böhm's formula against the strict count and against
/// brute force for `rise <= 3`, altitudes `<= 4`, `ups <= 5`.
pub fn cross_formula_suite(exec: Execution) -> Summary {
    let mut nd_tasks = Vec::new();
    for k in 1..=3i64 {
        for kd in 1..=3 * k + 6 {
            for m in 0..=6 {
                for n in 0..=6 {
                    let q = NiederhausenQuery::new(k, Rational::new(kd, k).expect("k >= 1"), m, n);
                    if q.classify() == QueryClass::Classical {
                        nd_tasks.push(q);
                    }
                }
            }
        }
    }
    let mut outcomes = run(&nd_tasks, exec, |q| {
        let kd = q.scaled_shift().expect("integral kd");
        let nd = match (niederhausen(q), count_strict(q.k, kd, 0, 0, q.m, q.n)) {
            (Ok(nd), Ok(st)) => expect_eq(|| format!("niederhausen {q:?}"), &nd, &st),
            (Err(e), _) | (_, Err(e)) => Err(format!("niederhausen {q:?}: {e}")),
        };
        vec![nd, expect_report(ncp9_check(q))]
    });

    let mut bohm_tasks = Vec::new();
    for rise in 1..=3 {
        for start in 1..=4 {
            for end in 1..=4 {
                for ups in 0..=5 {
                    let q = BohmQuery::new(rise, start, end, ups);
                    if q.downs() >= 0 {
                        bohm_tasks.push(q);
                    }
                }
            }
        }
    }
    outcomes.extend(run(&bohm_tasks, exec, |q| {
        let want = match count_strict(q.rise, q.end_alt, 0, 0, q.ups, q.downs()) {
            Ok(c) => c,
            Err(e) => return vec![Err(format!("bohm strict {q:?}: {e}"))],
        };
        let formula = match bohm(q) {
            Ok(c) => expect_eq(|| format!("bohm {q:?}"), &c, &want),
            Err(e) => Err(format!("bohm {q:?}: {e}")),
        };
        let brute = match count_stepset(&StepFamily::Bohm(*q)) {
            Ok(t) => expect_eq(|| format!("bohm stepset {q:?}"), &t.avoiding, &want),
            Err(e) => Err(format!("bohm stepset {q:?}: {e}")),
        };
        vec![formula, brute]
    }));
    Summary::collect("cross formula", outcomes)
}

/// All identity suites: random trials, Koroljuk grid and cross-formula grid.
pub fn identities(cfg: &IdentityConfig, exec: Execution) -> Summary {
    Summary::merge(
        "identities",
        &[
            random_identities(cfg, exec),
            koroljuk_suite(exec),
            cross_formula_suite(exec),
        ],
    )
}

type Map<'a> = dyn Fn(&LatticePath) -> Result<LatticePath> + 'a;

/// Checks one instance of a claimed bijection `source -> target`: every image
/// lies in the target, images are distinct, the sets have equal size and the
/// inverse undoes the map.
fn check_bijection(
    label: &str,
    source: &[LatticePath],
    target: &[LatticePath],
    forward: &Map<'_>,
    backward: &Map<'_>,
) -> Vec<Outcome> {
    let target_set: HashSet<&LatticePath> = target.iter().collect();
    let mut images = HashSet::new();
    let (mut inside, mut injective, mut round_trip) = (Ok(()), Ok(()), Ok(()));
    for path in source {
        let image = match forward(path) {
            Ok(i) => i,
            Err(e) => {
                inside = inside.and(Err(format!("{label}: {path} rejected: {e}")));
                continue;
            }
        };
        if !target_set.contains(&image) {
            inside = inside.and(Err(format!("{label}: image {image} of {path} outside target")));
        }
        match backward(&image) {
            Ok(back) if back == *path => {}
            Ok(back) => round_trip = round_trip.and(Err(format!("{label}: {path} -> {image} -> {back}"))),
            Err(e) => round_trip = round_trip.and(Err(format!("{label}: inverse of {image}: {e}"))),
        }
        if !images.insert(image.clone()) {
            injective = injective.and(Err(format!("{label}: image {image} hit twice")));
        }
    }
    let sizes = if source.len() == target.len() {
        Ok(())
    } else {
        Err(format!(
            "{label}: |source|={} |target|={}",
            source.len(),
            target.len()
        ))
    };
    vec![inside, injective, sizes, round_trip]
}

#[derive(Debug, Clone)]
enum BijectionTask {
    DropOne(PathQuery),
    LemmaTranslate(PathQuery),
    ReflectInverse(PathQuery),
    Koroljuk(KoroljukQuery),
}

fn enumerate(q: &PathQuery) -> Result<Vec<LatticePath>> {
    enumerate_paths(q)
}

fn bijection_task(task: &BijectionTask) -> Result<Vec<Outcome>> {
    Ok(match task {
        BijectionTask::DropOne(src) => {
            let tgt = PathQuery::weak(
                src.boundary.clone(),
                (src.start.x, src.start.y - 1),
                (src.end.x, src.end.y - 1),
            );
            check_bijection(
                &format!("drop_one {src}"),
                &enumerate(src)?,
                &enumerate(&tgt)?,
                &|p| drop_one(p, src).map(|x| x.0),
                &|p| raise_one(p, &tgt).map(|x| x.0),
            )
        }
        BijectionTask::LemmaTranslate(src) => {
            let k = src.boundary.k;
            let tgt = PathQuery::new(
                src.boundary.clone(),
                src.strictness,
                (src.start.x - 1, src.start.y - k),
                (src.end.x - 1, src.end.y - k),
            );
            check_bijection(
                &format!("lemma_translate {src}"),
                &enumerate(src)?,
                &enumerate(&tgt)?,
                &|p| lemma_translate(p, src).map(|x| x.0),
                &|p| lemma_untranslate(p, &tgt).map(|x| x.0),
            )
        }
        BijectionTask::ReflectInverse(src) => {
            let tgt = reflect_inverse_target(src)?;
            check_bijection(
                &format!("reflect_inverse {src}"),
                &enumerate(src)?,
                &enumerate(&tgt)?,
                &|p| reflect_inverse(p, src).map(|x| x.0),
                &|p| reflect_inverse_back(p, src),
            )
        }
        BijectionTask::Koroljuk(q) => {
            let KoroljukQuery { p, c, m, n } = *q;
            let korol = enumerate_koroljuk_avoiding(q)?;
            let family = koroljuk_unit_family(p, c, m, n);
            let unit = enumerate(&family)?;
            let mut out = check_bijection(
                &format!("koroljuk_to_unit {q:?}"),
                &korol,
                &unit,
                &|path| koroljuk_to_unit(path, c).map(|x| x.0),
                &|path| unit_to_koroljuk(path, &family, c),
            );
            out.extend(check_bijection(
                &format!("unit_to_koroljuk {q:?}"),
                &unit,
                &korol,
                &|path| unit_to_koroljuk(path, &family, c),
                &|path| koroljuk_to_unit(path, c).map(|x| x.0),
            ));
            let bq = BohmQuery::new(p, c, c + p * n - m, n);
            let bohm_paths = if bq.end_alt >= 1 {
                enumerate_bohm(&bq)?
            } else {
                Vec::new()
            };
            out.extend(check_bijection(
                &format!("bohm_rotate {q:?}"),
                &korol,
                &bohm_paths,
                &|path| bohm_rotate(path, c),
                &|path| bohm_unrotate(path, c),
            ));
            // the unit family reached from the Böhm side is the same one
            out.extend(check_bijection(
                &format!("bohm_to_unit {q:?}"),
                &bohm_paths,
                &unit,
                &|path| bohm_to_unit(path).map(|x| x.0),
                &|path| unit_to_koroljuk(path, &family, c).and_then(|k| bohm_rotate(&k, c)),
            ));
            out
        }
    })
}

fn bijection_tasks(max_steps: i64) -> Vec<BijectionTask> {
    let mut tasks = Vec::new();
    let boxes = |a_max: i64, b_lo: i64, b_hi: i64| {
        let mut v = Vec::new();
        for a in 0..=a_max {
            for b in b_lo..=b_hi {
                for dm in 0..=max_steps {
                    for dn in 0..=max_steps - dm {
                        v.push((a, b, a + dm, b + dn));
                    }
                }
            }
        }
        v
    };
    for k in 1..=3 {
        for r in -2..=4 {
            let line = BoundaryLine::integer(k, r);
            for (a, b, m, n) in boxes(2, 1, 3) {
                let q = PathQuery::strict(line.clone(), (a, b), (m, n));
                if validate_query(&q).is_valid() {
                    tasks.push(BijectionTask::DropOne(q));
                }
            }
            for (a, b, m, n) in boxes(2, k, k + 2) {
                if a < 1 {
                    continue;
                }
                for s in [Strictness::Weak, Strictness::Strict] {
                    let q = PathQuery::new(line.clone(), s, (a, b), (m, n));
                    if validate_query(&q).is_valid() {
                        tasks.push(BijectionTask::LemmaTranslate(q));
                    }
                }
            }
            for (a, b, m, n) in boxes(2, 0, 2) {
                let line = BoundaryLine::inverse(k, Rational::new(r, k).expect("k >= 1"));
                for s in [Strictness::Weak, Strictness::Strict] {
                    let q = PathQuery::new(line.clone(), s, (a, b), (m, n));
                    if validate_query(&q).is_valid() {
                        tasks.push(BijectionTask::ReflectInverse(q));
                    }
                }
            }
        }
    }
    for p in 1..=3 {
        for c in 1..=8 {
            for m in 0..=max_steps {
                for n in 0..=max_steps - m {
                    tasks.push(BijectionTask::Koroljuk(KoroljukQuery::new(p, c, m, n)));
                }
            }
        }
    }
    tasks
}

/// Every transform on every source instance of its grid with at most
/// `max_steps` steps.
pub fn bijection_suite(max_steps: i64, exec: Execution) -> Summary {
    let tasks = bijection_tasks(max_steps.max(-1));
    let outcomes = run(&tasks, exec, |t| match bijection_task(t) {
        Ok(o) => o,
        Err(e) => vec![Err(format!("{t:?}: {e}"))],
    });
    Summary::collect("bijections", outcomes)
}
