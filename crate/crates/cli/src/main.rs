use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use latpath::bijections::{
    bohm_rotate, drop_one, koroljuk_to_unit, koroljuk_unit_family, lemma_translate, reflect_inverse,
    unit_to_koroljuk,
};
use latpath::verify::{bijection_suite, identities, sweep, Execution, IdentityConfig, Summary, SweepGrid};
use latpath::{
    bohm, count, dp_count, enumerate_paths, koroljuk_literal, koroljuk_reduced, niederhausen, validate_query,
    BohmQuery, BoundaryLine, KoroljukQuery, LatticePath, NiederhausenQuery, PathQuery, Point, QueryClass,
    Rational, SlopeKind, Step, StepSet, Strictness,
};

const THREADS_VAR: &str = "LATPATH_THREADS";

#[derive(Parser)]
#[command(
    name = "latpath",
    version,
    about = "Exact counts of lattice paths above lines of rational slope"
)]
struct Cli {
    /// Print one JSON document instead of text
    #[arg(long, global = true)]
    json: bool,

    /// Also write the output to this file
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count unit-step paths above a boundary line
    Count(CountArgs),
    /// List the paths of a query in lexicographic order
    Enumerate(QueryArgs),
    /// Koroljuk paths meeting the line x = c
    Koroljuk(KoroljukArgs),
    /// Paths with steps (1,rise) and (1,-1) that never touch altitude 0
    Bohm(BohmArgs),
    /// Paths strictly above y = k(x - d), complement form
    Niederhausen(NiederhausenArgs),
    /// Apply one of the path correspondences
    Transform(TransformArgs),
    /// Run a verification suite
    Verify {
        #[command(subcommand)]
        suite: VerifyCommand,
    },
}

#[derive(Debug, Clone, Copy)]
struct Slope {
    kind: SlopeKind,
    k: i64,
}

impl std::fmt::Display for Slope {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.kind {
            SlopeKind::Integer => write!(f, "{}", self.k),
            SlopeKind::Inverse => write!(f, "1/{}", self.k),
        }
    }
}

fn parse_slope(s: &str) -> Result<Slope, String> {
    let (kind, digits) = match s.trim().strip_prefix("1/") {
        Some(rest) => (SlopeKind::Inverse, rest),
        None => (SlopeKind::Integer, s.trim()),
    };
    let k: i64 = digits
        .parse()
        .map_err(|_| format!("slope must be k or 1/k, got {s:?}"))?;
    if k < 1 {
        return Err(format!("slope parameter k must be at least 1, got {k}"));
    }
    Ok(Slope { kind, k })
}

fn parse_point(s: &str) -> Result<Point, String> {
    let (x, y) = s
        .split_once(',')
        .ok_or_else(|| format!("expected x,y, got {s:?}"))?;
    let coord = |t: &str| {
        t.trim()
            .parse::<i64>()
            .map_err(|_| format!("bad coordinate {t:?} in {s:?}"))
    };
    Ok(Point::new(coord(x)?, coord(y)?))
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    s.parse().map_err(|e: latpath::Error| e.to_string())
}

#[derive(Args)]
struct QueryArgs {
    /// Boundary slope, k or 1/k
    #[arg(long, value_parser = parse_slope, default_value = "1")]
    slope: Slope,

    /// Boundary intercept r in y = kx - r (or y = x/k - r), as p/q or an integer
    #[arg(long, value_parser = parse_rational, default_value = "0", allow_hyphen_values = true)]
    intercept: Rational,

    /// Start point a,b
    #[arg(long, value_parser = parse_point, default_value = "0,0", allow_hyphen_values = true)]
    from: Point,

    /// End point m,n
    #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
    to: Point,

    /// Stay strictly above the line
    #[arg(long, conflicts_with = "weak")]
    strict: bool,

    /// Stay on or above the line (default)
    #[arg(long)]
    weak: bool,
}

fn boundary(slope: Slope, intercept: &Rational) -> Result<BoundaryLine, Failure> {
    BoundaryLine::new(slope.kind, slope.k, intercept.clone()).map_err(Failure::from)
}

fn strictness(strict: bool) -> Strictness {
    if strict {
        Strictness::Strict
    } else {
        Strictness::Weak
    }
}

impl QueryArgs {
    fn query(&self) -> Result<PathQuery, Failure> {
        let line = boundary(self.slope, &self.intercept)?;
        Ok(PathQuery::new(line, strictness(self.strict), self.from, self.to))
    }

    fn parameters(&self) -> Value {
        json!({
            "slope": self.slope.to_string(),
            "intercept": self.intercept.to_string(),
            "from": [self.from.x, self.from.y],
            "to": [self.to.x, self.to.y],
            "strictness": if self.strict { "strict" } else { "weak" },
        })
    }
}

#[derive(Args)]
struct CountArgs {
    #[command(flatten)]
    query: QueryArgs,

    /// Also count by brute-force tabulation and compare
    #[arg(long)]
    oracle: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Form {
    Literal,
    Reduced,
    Both,
}

#[derive(Args)]
struct KoroljukArgs {
    #[arg(long)]
    p: i64,
    #[arg(long)]
    c: i64,
    #[arg(long)]
    m: i64,
    #[arg(long)]
    n: i64,
    #[arg(long, value_enum, default_value_t = Form::Reduced)]
    form: Form,
}

#[derive(Args)]
struct BohmArgs {
    #[arg(long)]
    rise: i64,
    /// Starting altitude
    #[arg(long)]
    start: i64,
    /// Final altitude
    #[arg(long)]
    end: i64,
    /// Number of (1,rise) steps
    #[arg(long)]
    ups: i64,
}

#[derive(Args)]
struct NiederhausenArgs {
    #[arg(long)]
    k: i64,
    /// Horizontal shift d, as p/q or an integer
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    d: Rational,
    #[arg(long)]
    m: i64,
    #[arg(long)]
    n: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MapKind {
    DropOne,
    LemmaTranslate,
    ReflectInverse,
    KoroljukToUnit,
    UnitToKoroljuk,
    BohmRotate,
}

#[derive(Args)]
struct TransformArgs {
    #[arg(long, value_enum)]
    map: MapKind,

    /// Step string of the input path
    #[arg(long, default_value = "")]
    path: String,

    /// Boundary slope of the source family (unit-step maps)
    #[arg(long, value_parser = parse_slope, default_value = "1")]
    slope: Slope,

    #[arg(long, value_parser = parse_rational, default_value = "0", allow_hyphen_values = true)]
    intercept: Rational,

    /// Start point of the input path (unit-step maps)
    #[arg(long, value_parser = parse_point, default_value = "0,0", allow_hyphen_values = true)]
    from: Point,

    #[arg(long, conflicts_with = "weak")]
    strict: bool,

    #[arg(long)]
    weak: bool,

    /// Koroljuk step parameter: steps (1,1) and (-p,1)
    #[arg(long, default_value_t = 1)]
    p: i64,

    /// Abscissa of the avoided line x = c
    #[arg(long)]
    c: Option<i64>,
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Closed forms against the oracle over a parameter grid
    Sweep {
        #[arg(long, default_value_t = 3)]
        max_k: i64,
        /// Coordinates range over 0..E (exclusive); overrides the default box
        #[arg(long)]
        max_extent: Option<i64>,
        /// Largest end abscissa m (default 6)
        #[arg(long)]
        max_m: Option<i64>,
        /// Largest end ordinate n (default 8)
        #[arg(long)]
        max_n: Option<i64>,
    },
    /// Random binomial identities and the Koroljuk, Niederhausen and Böhm grids
    Identities {
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 500)]
        negation_trials: u64,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
    /// Every path correspondence on all small source families
    Bijections {
        #[arg(long, default_value_t = 10)]
        max_steps: i64,
    },
}

/// Invalid input; reported on stderr with exit status 2.
#[derive(Debug)]
struct Failure(String);

impl From<latpath::Error> for Failure {
    fn from(e: latpath::Error) -> Self {
        Failure(e.to_string())
    }
}

struct Report {
    command: &'static str,
    parameters: Value,
    result: Value,
    ok: bool,
    text: String,
}

impl Report {
    fn document(&self) -> Value {
        json!({
            "command": self.command,
            "parameters": self.parameters,
            "result": self.result,
            "ok": self.ok,
        })
    }
}

fn admit(q: &PathQuery) -> Result<(), Failure> {
    match validate_query(q) {
        QueryClass::Classical => Ok(()),
        QueryClass::BoundaryValid(why) => {
            eprintln!("warning: {q} lies outside the classical conditions ({why}); counted after shifting");
            Ok(())
        }
        QueryClass::Invalid(why) => Err(Failure(format!("{q}: {why}"))),
    }
}

fn cmd_count(args: &CountArgs) -> Result<Report, Failure> {
    let q = args.query.query()?;
    admit(&q)?;
    let value = count(&q);
    let mut result = json!({ "count": value });
    let mut text = value.to_string();
    let mut ok = true;
    if args.oracle {
        let oracle = dp_count(&q);
        ok = oracle == value;
        result["oracle"] = json!(oracle);
        result["match"] = json!(ok);
        text = format!("{value} {oracle} {}", if ok { "match" } else { "mismatch" });
    }
    let mut parameters = args.query.parameters();
    parameters["oracle"] = json!(args.oracle);
    Ok(Report {
        command: "count",
        parameters,
        result,
        ok,
        text,
    })
}

fn cmd_enumerate(args: &QueryArgs) -> Result<Report, Failure> {
    let q = args.query()?;
    admit(&q)?;
    let paths = enumerate_paths(&q)?;
    let encoded: Vec<String> = paths.iter().map(LatticePath::encode).collect();
    let text = encoded
        .iter()
        .filter(|s| !s.is_empty())
        .cloned()
        .collect::<Vec<_>>()
        .join("\n");
    Ok(Report {
        command: "enumerate",
        parameters: args.parameters(),
        result: json!({ "count": paths.len().to_string(), "paths": encoded }),
        ok: true,
        text,
    })
}

fn cmd_koroljuk(args: &KoroljukArgs) -> Result<Report, Failure> {
    let q = KoroljukQuery::new(args.p, args.c, args.m, args.n);
    let parameters = json!({
        "p": args.p, "c": args.c, "m": args.m, "n": args.n,
        "form": args.form.to_possible_value().map(|v| v.get_name().to_string()),
    });
    let (result, text, ok) = match args.form {
        Form::Literal => {
            let v = koroljuk_literal(&q)?;
            (json!({ "literal": v }), v.to_string(), true)
        }
        Form::Reduced => {
            let v = koroljuk_reduced(&q)?;
            (json!({ "reduced": v }), v.to_string(), true)
        }
        Form::Both => {
            let (l, r) = (koroljuk_literal(&q)?, koroljuk_reduced(&q)?);
            let agree = l == r;
            let text = format!("{l} {r} {}", if agree { "agree" } else { "disagree" });
            (json!({ "literal": l, "reduced": r, "agree": agree }), text, agree)
        }
    };
    Ok(Report {
        command: "koroljuk",
        parameters,
        result,
        ok,
        text,
    })
}

fn cmd_bohm(args: &BohmArgs) -> Result<Report, Failure> {
    let q = BohmQuery::new(args.rise, args.start, args.end, args.ups);
    let v = bohm(&q)?;
    Ok(Report {
        command: "bohm",
        parameters: json!({ "rise": args.rise, "start": args.start, "end": args.end, "ups": args.ups }),
        result: json!({ "count": v }),
        ok: true,
        text: v.to_string(),
    })
}

fn cmd_niederhausen(args: &NiederhausenArgs) -> Result<Report, Failure> {
    let q = NiederhausenQuery::new(args.k, args.d.clone(), args.m, args.n);
    let v = niederhausen(&q)?;
    Ok(Report {
        command: "niederhausen",
        parameters: json!({ "k": args.k, "d": args.d.to_string(), "m": args.m, "n": args.n }),
        result: json!({ "count": v }),
        ok: true,
        text: v.to_string(),
    })
}

fn cmd_transform(args: &TransformArgs) -> Result<Report, Failure> {
    let need_c = || {
        args.c
            .ok_or_else(|| Failure("--c is required for this map".to_string()))
    };
    let unit_path = || LatticePath::parse(args.from, StepSet::Unit, &args.path);
    let unit_source = |default: Strictness| -> Result<(LatticePath, PathQuery), Failure> {
        let path = unit_path()?;
        let s = match (args.strict, args.weak) {
            (true, _) => Strictness::Strict,
            (_, true) => Strictness::Weak,
            _ => default,
        };
        let line = boundary(args.slope, &args.intercept)?;
        let q = PathQuery::new(line, s, path.start, path.end());
        Ok((path, q))
    };
    let koroljuk_path = || LatticePath::parse((0, 0), StepSet::Koroljuk { p: args.p }, &args.path);

    let (image, family): (LatticePath, Option<String>) = match args.map {
        MapKind::DropOne => {
            let (path, q) = unit_source(Strictness::Strict)?;
            let (img, tgt) = drop_one(&path, &q)?;
            (img, Some(tgt.to_string()))
        }
        MapKind::LemmaTranslate => {
            let (path, q) = unit_source(Strictness::Weak)?;
            let (img, tgt) = lemma_translate(&path, &q)?;
            (img, Some(tgt.to_string()))
        }
        MapKind::ReflectInverse => {
            let (path, q) = unit_source(Strictness::Weak)?;
            let (img, tgt) = reflect_inverse(&path, &q)?;
            (img, Some(tgt.to_string()))
        }
        MapKind::KoroljukToUnit => {
            let (img, tgt) = koroljuk_to_unit(&koroljuk_path()?, need_c()?)?;
            (img, Some(tgt.to_string()))
        }
        MapKind::UnitToKoroljuk => {
            let c = need_c()?;
            let path = LatticePath::parse((0, 0), StepSet::Unit, &args.path)?;
            let (h, v) = (path.count_of(Step::H) as i64, path.count_of(Step::V) as i64);
            let family = koroljuk_unit_family(args.p, c, v, h);
            (unit_to_koroljuk(&path, &family, c)?, None)
        }
        MapKind::BohmRotate => (bohm_rotate(&koroljuk_path()?, need_c()?)?, None),
    };
    let mut result = json!({
        "path": image.encode(),
        "start": [image.start.x, image.start.y],
    });
    if let Some(f) = family {
        result["family"] = json!(f);
    }
    Ok(Report {
        command: "transform",
        parameters: json!({
            "map": args.map.to_possible_value().map(|v| v.get_name().to_string()),
            "path": args.path,
            "slope": args.slope.to_string(),
            "intercept": args.intercept.to_string(),
            "from": [args.from.x, args.from.y],
            "p": args.p,
            "c": args.c,
        }),
        result,
        ok: true,
        text: image.to_string(),
    })
}

fn execution() -> Result<Execution, Failure> {
    match std::env::var(THREADS_VAR) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map(Execution::with_threads)
            .map_err(|_| Failure(format!("{THREADS_VAR} must be a thread count, got {v:?}"))),
        Err(_) => Ok(Execution::default()),
    }
}

fn summary_report(parameters: Value, summary: Summary) -> Report {
    Report {
        command: "verify",
        parameters,
        result: json!(summary),
        ok: summary.ok(),
        text: summary.to_string(),
    }
}

fn cmd_verify(suite: &VerifyCommand) -> Result<Report, Failure> {
    let exec = execution()?;
    Ok(match *suite {
        VerifyCommand::Sweep {
            max_k,
            max_extent,
            max_m,
            max_n,
        } => {
            let mut grid = match max_extent {
                Some(e) => SweepGrid::with_extent(max_k, e),
                None => SweepGrid::new(max_k, 6, 8),
            };
            grid.max_m = max_m.unwrap_or(grid.max_m);
            grid.max_n = max_n.unwrap_or(grid.max_n);
            summary_report(json!({ "suite": "sweep", "grid": grid }), sweep(&grid, exec))
        }
        VerifyCommand::Identities {
            trials,
            negation_trials,
            seed,
        } => {
            let cfg = IdentityConfig {
                trials,
                negation_trials,
                seed,
            };
            summary_report(
                json!({ "suite": "identities", "config": cfg }),
                identities(&cfg, exec),
            )
        }
        VerifyCommand::Bijections { max_steps } => summary_report(
            json!({ "suite": "bijections", "max_steps": max_steps }),
            bijection_suite(max_steps, exec),
        ),
    })
}

fn dispatch(command: &Command) -> Result<Report, Failure> {
    match command {
        Command::Count(a) => cmd_count(a),
        Command::Enumerate(a) => cmd_enumerate(a),
        Command::Koroljuk(a) => cmd_koroljuk(a),
        Command::Bohm(a) => cmd_bohm(a),
        Command::Niederhausen(a) => cmd_niederhausen(a),
        Command::Transform(a) => cmd_transform(a),
        Command::Verify { suite } => cmd_verify(suite),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match dispatch(&cli.command) {
        Ok(r) => r,
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let mut output = if cli.json {
        serde_json::to_string_pretty(&report.document()).expect("json document")
    } else {
        report.text.clone()
    };
    if !output.is_empty() {
        output.push('\n');
    }
    print!("{output}");
    if let Some(path) = &cli.out {
        if let Err(e) = fs::write(path, &output) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    if report.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
