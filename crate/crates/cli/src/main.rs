use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kahler_higgs::algebra::{export_json, fixture, load_algebra};
use kahler_higgs::convex::{parse_box, parse_polygon, ConvexBody};
use kahler_higgs::error::HodgeError;
use kahler_higgs::lefschetz::polarization_at;
use kahler_higgs::metric::Flavor;
use kahler_higgs::report::{Mode, VerificationReport};
use kahler_higgs::sampling::{random_point, rng};
use kahler_higgs::scalar::{format_rational, parse_rational, Field, GaussRational};
use kahler_higgs::suite::{
    convex_suite, hsc_scan, ineq_suite, list_fixtures, logconv_scan, resolve, verify_algebra,
    VerifyOptions,
};
use num_rational::BigRational;
use serde::Serialize;

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "kahler-higgs",
    version,
    about = "Exact checks of Hodge-Lefschetz structures over the Kähler cone"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Built-in fixtures.
    Fixtures {
        #[command(subcommand)]
        action: FixturesCmd,
    },
    /// Run every identity at seeded random points.
    Verify(VerifyArgs),
    /// HSC or log-convexity scan along a segment, as CSV.
    Scan(ScanArgs),
    /// Khovanskii-Teissier and log-convexity on seeded class tuples.
    Ineq(IneqArgs),
    /// Brunn-Minkowski, Alexandrov-Fenchel and log-concavity for convex bodies.
    Convex(ConvexArgs),
    /// Load an algebra file and validate it.
    LoadCheck { file: PathBuf },
}

#[derive(Subcommand)]
enum FixturesCmd {
    /// Name, n, N and Rank H of each fixture.
    List {
        /// Also list the *.json algebra files in this directory.
        #[arg(long)]
        dir: Option<PathBuf>,
    },
    /// Print a fixture in the algebra file format.
    Show { name: String },
}

#[derive(Args)]
struct Source {
    #[arg(long, conflicts_with = "file", required_unless_present = "file")]
    fixture: Option<String>,
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    source: Source,
    #[arg(long, default_value_t = 3)]
    points: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "exact")]
    mode: Mode,
    /// Directions per point for the curvature bounds.
    #[arg(long, default_value_t = 16)]
    directions: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ScanKind {
    Hsc,
    Logconv,
}

#[derive(Args)]
struct ScanArgs {
    #[command(flatten)]
    source: Source,
    #[arg(long, value_enum, default_value_t = ScanKind::Hsc)]
    kind: ScanKind,
    /// Segment start, comma-separated rationals. Defaults to the sample point.
    #[arg(long)]
    from: Option<String>,
    /// Segment end. Defaults to a seeded random polarized point.
    #[arg(long)]
    to: Option<String>,
    #[arg(long, default_value_t = 10)]
    steps: usize,
    #[arg(long, default_value = "lu")]
    flavor: Flavor,
    #[arg(long, default_value_t = 4)]
    directions: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "exact")]
    mode: Mode,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct IneqArgs {
    #[command(flatten)]
    source: Source,
    #[arg(long, default_value_t = 20)]
    tuples: usize,
    #[arg(long, default_value_t = 8)]
    steps: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ConvexArgs {
    /// Box side lengths, e.g. `1,2,1/2`. Repeatable.
    #[arg(long = "box")]
    boxes: Vec<String>,
    /// File of polygon vertices, one `x y` per line. Repeatable.
    #[arg(long = "polygon")]
    polygons: Vec<PathBuf>,
    #[arg(long, default_value_t = 8)]
    steps: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<HodgeError> for Failure {
    fn from(e: HodgeError) -> Self {
        let code = match e {
            HodgeError::InvalidParameter(_) | HodgeError::Parse(_) | HodgeError::Io(_) => {
                EXIT_USAGE
            }
            _ => EXIT_FAIL,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

type CmdResult = Result<bool, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Fixtures { action } => fixtures(action),
        Command::Verify(a) => verify(a),
        Command::Scan(a) => scan(a),
        Command::Ineq(a) => ineq(a),
        Command::Convex(a) => convex(a),
        Command::LoadCheck { file } => load_check(&file),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_FAIL),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(p) => {
            fs::write(p, text).map_err(|e| usage(format!("cannot write {}: {e}", p.display())))
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| usage(e.to_string()))
        }
    }
}

fn fixtures(action: FixturesCmd) -> CmdResult {
    match action {
        FixturesCmd::List { dir } => {
            let mut text = format!("{:<14} {:>3} {:>3} {:>7}\n", "name", "n", "N", "rank H");
            for f in list_fixtures(dir.as_deref())? {
                text += &format!(
                    "{:<14} {:>3} {:>3} {:>7}\n",
                    f.name, f.n, f.num_coords, f.rank
                );
            }
            emit(&text, None)?;
        }
        FixturesCmd::Show { name } => emit(&(export_json(&fixture(&name)?) + "\n"), None)?,
    }
    Ok(true)
}

fn report_text(report: &VerificationReport) -> String {
    let mut text = String::new();
    if let Some(seed) = report.seed {
        text += &format!("seed {seed}\n");
    }
    text += &format!(
        "{:<24} {:>6} {:>12}  status\n",
        "identity", "count", "worst"
    );
    for (id, (count, worst, pass)) in report.by_identity() {
        text += &format!(
            "{id:<24} {count:>6} {worst:>12.3e}  {}\n",
            if pass { "pass" } else { "FAIL" }
        );
    }
    for r in report.records.iter().filter(|r| r.skipped.is_some()) {
        text += &format!(
            "{:<24} skipped: {}\n",
            r.identity,
            r.skipped.as_deref().unwrap_or_default()
        );
    }
    for r in report.failures() {
        text += &format!(
            "failed {} at ({}) {}: residual {:e}\n",
            r.identity,
            r.point.join(","),
            r.detail,
            r.residual
        );
    }
    for n in &report.notes {
        text += &format!("{n}\n");
    }
    let s = &report.summary;
    text += &format!(
        "total {} passed {} failed {} skipped {}\n",
        s.total, s.passed, s.failed, s.skipped
    );
    text
}

fn emit_report(report: &VerificationReport, format: Format, out: Option<&Path>) -> CmdResult {
    let text = match format {
        Format::Text => report_text(report),
        Format::Json => report.to_json() + "\n",
        Format::Csv => return Err(usage("reports are text or json")),
    };
    emit(&text, out)?;
    Ok(report.all_pass())
}

fn verify(a: VerifyArgs) -> CmdResult {
    let (name, alg) = resolve(a.source.fixture.as_deref(), a.source.file.as_deref())?;
    let opts = VerifyOptions {
        points: a.points,
        seed: a.seed,
        mode: a.mode,
        directions: a.directions,
    };
    let report = verify_algebra(&name, &alg, &opts)?;
    emit_report(&report, a.format, a.out.as_deref())
}

fn parse_point(s: &str) -> Result<Vec<BigRational>, Failure> {
    s.split(',')
        .map(|x| parse_rational(x.trim()).map_err(Failure::from))
        .collect()
}

fn join_rationals(v: &[BigRational]) -> String {
    v.iter().map(format_rational).collect::<Vec<_>>().join(";")
}

fn join_gauss(v: &[GaussRational]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(";")
}

fn opt(x: Option<f64>) -> String {
    x.map(|v| format!("{v:.12e}")).unwrap_or_default()
}

#[derive(Serialize)]
struct HscRecord {
    fixture: String,
    t: String,
    flavor: String,
    direction: String,
    hsc: String,
    hsc_half: String,
    bound: String,
    margin: String,
    mode: String,
    in_cone: bool,
}

#[derive(Serialize)]
struct LogconvRecord {
    fixture: String,
    from: String,
    to: String,
    s: String,
    v: String,
    second: String,
    in_cone: bool,
    pass: bool,
}

fn serialize_rows<T: Serialize>(rows: &[T], format: Format) -> Result<String, Failure> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(vec![]);
            for r in rows {
                w.serialize(r).map_err(|e| usage(e.to_string()))?;
            }
            let bytes = w.into_inner().map_err(|e| usage(e.to_string()))?;
            Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
        }
        Format::Json => {
            Ok(serde_json::to_string_pretty(rows).map_err(|e| usage(e.to_string()))? + "\n")
        }
        Format::Text => Err(usage("scans are csv or json")),
    }
}

const HSC_HEADER: &str = "fixture,t,flavor,direction,hsc,hsc_half,bound,margin,mode,in_cone\n";
const LOGCONV_HEADER: &str = "fixture,from,to,s,v,second,in_cone,pass\n";

fn scan(a: ScanArgs) -> CmdResult {
    let (name, alg) = resolve(a.source.fixture.as_deref(), a.source.file.as_deref())?;
    let from = match &a.from {
        Some(s) => parse_point(s)?,
        None => alg.sample_point().to_vec(),
    };
    let to = match &a.to {
        Some(s) => parse_point(s)?,
        None => random_point(&alg, &mut rng(a.seed))?.t,
    };
    if from.len() != alg.num_coords() || to.len() != alg.num_coords() {
        return Err(usage(format!(
            "segment endpoints need {} coordinates",
            alg.num_coords()
        )));
    }
    let (text, ok) = match a.kind {
        ScanKind::Hsc => {
            let rows = hsc_scan(
                &alg,
                &from,
                &to,
                a.steps,
                a.flavor,
                a.directions,
                a.seed,
                a.mode,
            )?;
            let ok = rows.iter().all(|r| {
                r.margin()
                    .is_none_or(|m| m >= -kahler_higgs::metric::FLOAT_BOUND_SLACK)
            });
            let recs: Vec<HscRecord> = rows
                .iter()
                .map(|r| HscRecord {
                    fixture: name.clone(),
                    t: join_rationals(&r.t),
                    flavor: r.flavor.to_string(),
                    direction: join_gauss(&r.direction),
                    hsc: opt(r.hsc),
                    hsc_half: opt(r.hsc.map(|h| h / 2.0)),
                    bound: opt(r.bound),
                    margin: opt(r.margin()),
                    mode: a.mode.as_str().to_string(),
                    in_cone: r.in_cone,
                })
                .collect();
            let text = if recs.is_empty() && a.format == Format::Csv {
                HSC_HEADER.to_string()
            } else {
                serialize_rows(&recs, a.format)?
            };
            (text, ok)
        }
        ScanKind::Logconv => {
            let rows = logconv_scan(&alg, &from, &to, a.steps)?;
            let ok = rows.iter().all(|r| !r.in_cone || r.pass);
            let recs: Vec<LogconvRecord> = rows
                .iter()
                .map(|r| LogconvRecord {
                    fixture: name.clone(),
                    from: join_rationals(&from),
                    to: join_rationals(&to),
                    s: format_rational(&r.s),
                    v: r.v.to_string(),
                    second: r
                        .second
                        .as_ref()
                        .map(ToString::to_string)
                        .unwrap_or_default(),
                    in_cone: r.in_cone,
                    pass: r.pass,
                })
                .collect();
            let text = if recs.is_empty() && a.format == Format::Csv {
                LOGCONV_HEADER.to_string()
            } else {
                serialize_rows(&recs, a.format)?
            };
            (text, ok)
        }
    };
    emit(&text, a.out.as_deref())?;
    Ok(ok)
}

fn ineq(a: IneqArgs) -> CmdResult {
    let (name, alg) = resolve(a.source.fixture.as_deref(), a.source.file.as_deref())?;
    let report = ineq_suite(&name, &alg, a.tuples, a.steps, a.seed)?;
    emit_report(&report, a.format, a.out.as_deref())
}

fn convex(a: ConvexArgs) -> CmdResult {
    let mut bodies: Vec<ConvexBody> = a
        .boxes
        .iter()
        .map(|b| parse_box(b))
        .collect::<Result<_, _>>()?;
    for p in &a.polygons {
        let text = fs::read_to_string(p)
            .map_err(|e| usage(format!("cannot read {}: {e}", p.display())))?;
        bodies.push(parse_polygon(&text)?);
    }
    if bodies.is_empty() {
        return Err(usage("give bodies with --box or --polygon"));
    }
    let report = convex_suite(&bodies, a.steps)?;
    emit_report(&report, a.format, a.out.as_deref())
}

fn load_check(file: &Path) -> CmdResult {
    let alg = load_algebra(file)?;
    let t: Vec<GaussRational> = alg
        .sample_point()
        .iter()
        .map(GaussRational::from_rational)
        .collect();
    let arc = std::sync::Arc::new(alg);
    let pol = polarization_at(&arc, &t);
    let mut text = format!(
        "ok: {} n={} N={} rank={}\n",
        arc.name(),
        arc.n(),
        arc.num_coords(),
        arc.rank()
    );
    text += &match &pol.reason {
        None => "sample point polarized\n".to_string(),
        Some(r) => format!("sample point not polarized: {r}\n"),
    };
    emit(&text, None)?;
    Ok(pol.is_polarized())
}
