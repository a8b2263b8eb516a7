//! Verification suites over fixtures and convex bodies, assembled into
//! [`VerificationReport`]s. Output formatting lives in the CLI.

use std::path::Path;
use std::sync::Arc;

use num_complex::Complex64;
use num_rational::BigRational;
use rand::Rng;

use crate::algebra::{builtin_fixture_names, fixture, load_algebra, GradedAlgebra};
use crate::convex::{af_check, bm_check, log_concavity_check, mixed_volume, ConvexBody};
use crate::error::{HodgeError, Result};
use crate::higgs::{verify_h00_positivity, ConePoint, HiggsPoint};
use crate::inequality::{
    kt_check, log_convexity_scan, verify_effective_bm, verify_n2_curvature,
    verify_n2_derivative_identities, LogConvexityRow,
};
use crate::metric::{bound_check, hsc_samples, sample_directions, verify_metrics, Flavor};
use crate::report::{Mode, Outcome, VerificationReport};
use crate::sampling::{
    grid_rational, is_polarized_point, random_direction, random_point, rng, DENOMINATOR,
};
use crate::scalar::{format_rational, Field, GaussRational};

/// One row of `fixtures list`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixtureInfo {
    pub name: String,
    pub n: usize,
    pub num_coords: usize,
    pub rank: usize,
}

impl FixtureInfo {
    fn of(name: &str, alg: &GradedAlgebra) -> Self {
        FixtureInfo {
            name: name.to_string(),
            n: alg.n(),
            num_coords: alg.num_coords(),
            rank: alg.rank(),
        }
    }
}

/// Built-in fixtures, followed by the `*.json` files of `dir` in name order.
pub fn list_fixtures(dir: Option<&Path>) -> Result<Vec<FixtureInfo>> {
    let mut out: Vec<FixtureInfo> = builtin_fixture_names()
        .iter()
        .map(|n| Ok(FixtureInfo::of(n, &fixture(n)?)))
        .collect::<Result<_>>()?;
    if let Some(dir) = dir {
        let mut paths: Vec<_> = std::fs::read_dir(dir)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .collect();
        paths.sort();
        for p in paths {
            let alg = load_algebra(&p)?;
            let name = p
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default();
            out.push(FixtureInfo::of(&name, &alg));
        }
    }
    Ok(out)
}

/// A built-in fixture by name or an algebra file.
pub fn resolve(
    fixture_name: Option<&str>,
    file: Option<&Path>,
) -> Result<(String, Arc<GradedAlgebra>)> {
    match (fixture_name, file) {
        (Some(name), None) => Ok((name.to_string(), Arc::new(fixture(name)?))),
        (None, Some(path)) => Ok((path.display().to_string(), Arc::new(load_algebra(path)?))),
        _ => Err(HodgeError::InvalidParameter(
            "give exactly one of --fixture or --file".into(),
        )),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub points: usize,
    pub seed: u64,
    pub mode: Mode,
    /// Directions sampled per point for the curvature bounds.
    pub directions: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            points: 3,
            seed: 0,
            mode: Mode::Exact,
            directions: 16,
        }
    }
}

/// Directions used by the real-direction identities at one point.
#[derive(Clone, Debug)]
pub struct PointDirections {
    pub zeta: Vec<BigRational>,
    pub eta: Vec<BigRational>,
    pub lambda: Vec<BigRational>,
    pub seed: u64,
}

/// Every identity at one point: the Higgs-bundle identities, the metric
/// checks and curvature bounds, `H^{0,0}` positivity, effective
/// Brunn–Minkowski and, for `n = 2`, the surface identities.
pub fn verify_point<F: Field>(
    alg: &Arc<GradedAlgebra>,
    point: &ConePoint,
    dirs: &PointDirections,
    directions: usize,
) -> Result<Vec<Outcome>> {
    let hp = HiggsPoint::<F>::new(alg, point)?;
    let mut out = hp.verify_all();
    out.extend(verify_metrics(&hp)?);
    if directions > 0 {
        out.extend(bound_check(&hp, directions, dirs.seed)?);
    }
    out.extend(verify_h00_positivity::<F>(alg, point, &dirs.zeta)?);
    out.push(verify_effective_bm::<F>(alg, point, &dirs.zeta)?);
    if alg.n() == 2 {
        out.extend(verify_n2_derivative_identities::<F>(
            alg,
            point,
            &dirs.zeta,
            &dirs.eta,
            &dirs.lambda,
        )?);
        out.extend(verify_n2_curvature::<F>(alg, point, &dirs.zeta, &dirs.eta)?);
    }
    Ok(out)
}

pub fn verify_algebra(
    name: &str,
    alg: &Arc<GradedAlgebra>,
    opts: &VerifyOptions,
) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(Some(opts.seed));
    let mut r = rng(opts.seed);
    for i in 0..opts.points {
        let point = random_point(alg, &mut r)?;
        let n = alg.num_coords();
        let dirs = PointDirections {
            zeta: random_direction(n, &mut r),
            eta: random_direction(n, &mut r),
            lambda: random_direction(n, &mut r),
            seed: opts.seed.wrapping_add(i as u64),
        };
        let outcomes = match opts.mode {
            Mode::Exact => verify_point::<GaussRational>(alg, &point, &dirs, opts.directions)?,
            Mode::Float => verify_point::<Complex64>(alg, &point, &dirs, opts.directions)?,
        };
        report.push_outcomes(name, &point.labels(), opts.mode, outcomes);
    }
    if alg.n() != 2 {
        report.push_skipped(name, "n2_suite", opts.mode, "requires n=2");
    }
    Ok(report)
}

/// One row of an `HSC` scan; `hsc` is `None` where the segment leaves the
/// cone.
#[derive(Clone, Debug, PartialEq)]
pub struct HscRow {
    pub t: Vec<BigRational>,
    pub flavor: Flavor,
    pub direction: Vec<GaussRational>,
    pub hsc: Option<f64>,
    pub bound: Option<f64>,
    pub in_cone: bool,
}

impl HscRow {
    /// `bound − HSC`.
    pub fn margin(&self) -> Option<f64> {
        Some(self.bound? - self.hsc?)
    }
}

/// `(1 − s)·from + s·to` for `s = i/steps`, `i = 0..=steps`; empty when
/// `steps == 0`.
pub fn segment(from: &[BigRational], to: &[BigRational], steps: usize) -> Vec<Vec<BigRational>> {
    if steps == 0 {
        return vec![];
    }
    (0..=steps)
        .map(|i| {
            let s = BigRational::new((i as i64).into(), (steps as i64).into());
            from.iter().zip(to).map(|(a, b)| a + (b - a) * &s).collect()
        })
        .collect()
}

pub fn hsc_scan(
    alg: &Arc<GradedAlgebra>,
    from: &[BigRational],
    to: &[BigRational],
    steps: usize,
    flavor: Flavor,
    directions: usize,
    seed: u64,
    mode: Mode,
) -> Result<Vec<HscRow>> {
    let dirs = sample_directions(alg.num_coords(), directions, seed);
    let mut rows = vec![];
    for t in segment(from, to, steps) {
        if !is_polarized_point(alg, &t) {
            rows.push(HscRow {
                t,
                flavor,
                direction: vec![],
                hsc: None,
                bound: None,
                in_cone: false,
            });
            continue;
        }
        let point = ConePoint::new(t.clone());
        let samples = match mode {
            Mode::Exact => hsc_samples(
                &HiggsPoint::<GaussRational>::new(alg, &point)?,
                flavor,
                &dirs,
            )?,
            Mode::Float => hsc_samples(&HiggsPoint::<Complex64>::new(alg, &point)?, flavor, &dirs)?,
        };
        rows.extend(samples.into_iter().map(|s| HscRow {
            t: t.clone(),
            flavor,
            direction: s.direction,
            hsc: Some(s.hsc.re),
            bound: s.bound,
            in_cone: true,
        }));
    }
    Ok(rows)
}

pub fn logconv_scan(
    alg: &Arc<GradedAlgebra>,
    from: &[BigRational],
    to: &[BigRational],
    steps: usize,
) -> Result<Vec<LogConvexityRow>> {
    let fixed = vec![from.to_vec(); alg.n().saturating_sub(2)];
    log_convexity_scan(alg, from, to, &fixed, steps)
}

/// `c · t` with `c` uniform on `[½, 2]`, denominators ≤ 1000.
fn rescale(t: &[BigRational], r: &mut impl Rng) -> Vec<BigRational> {
    let c = grid_rational(r, DENOMINATOR / 2, 2 * DENOMINATOR);
    t.iter().map(|x| x * &c).collect()
}

/// Khovanskii–Teissier on `tuples` random polarized tuples, equality on a
/// proportional pair per tuple, and the log-convexity scan between the two
/// free classes.
pub fn ineq_suite(
    name: &str,
    alg: &Arc<GradedAlgebra>,
    tuples: usize,
    steps: usize,
    seed: u64,
) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(Some(seed));
    if alg.n() < 2 {
        report.push_skipped(name, "kt_inequality", Mode::Exact, "requires n>=2");
        return Ok(report);
    }
    let mut r = rng(seed);
    for _ in 0..tuples {
        let w1 = random_point(alg, &mut r)?.t;
        let w2 = random_point(alg, &mut r)?.t;
        let fixed: Vec<Vec<BigRational>> = (0..alg.n() - 2)
            .map(|_| Ok(random_point(alg, &mut r)?.t))
            .collect::<Result<_>>()?;
        let w3 = rescale(&w1, &mut r);
        let mut out = kt_check(alg, &w1, &w2, &fixed)?;
        out.extend(kt_check(alg, &w1, &w3, &fixed)?);
        if steps > 0 {
            let rows = log_convexity_scan(alg, &w1, &w2, &fixed, steps)?;
            let worst = rows
                .iter()
                .filter_map(|row| row.second.as_ref().map(|x| x.to_c64().re))
                .fold(f64::INFINITY, f64::min);
            out.push(Outcome::new(
                "log_convexity",
                format!("steps={steps} min={worst:.6}"),
                (-worst).max(0.0),
                rows.iter().all(|row| row.pass),
            ));
        }
        report.push_outcomes(
            name,
            &w1.iter().map(format_rational).collect::<Vec<_>>(),
            Mode::Exact,
            out,
        );
    }
    Ok(report)
}

/// Convex-body checks: Brunn–Minkowski and log-concavity for two bodies,
/// Alexandrov–Fenchel when `n ≥ 2` bodies of dimension `n` are given.
pub fn convex_suite(bodies: &[ConvexBody], steps: usize) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(None);
    if bodies.is_empty() {
        return Err(HodgeError::InvalidParameter("no bodies given".into()));
    }
    let n = bodies[0].dim();
    if bodies.iter().any(|b| b.dim() != n) {
        return Err(HodgeError::DimensionMismatch(
            "bodies of different dimensions".into(),
        ));
    }
    let label: Vec<String> = bodies.iter().map(ConvexBody::describe).collect();
    let mut out = vec![];
    if bodies.len() >= 2 {
        out.extend(bm_check(&bodies[0], &bodies[1])?);
        if steps > 0 {
            out.extend(log_concavity_check(&bodies[0], &bodies[1], steps)?);
        }
    }
    if bodies.len() == n && n >= 2 {
        out.extend(af_check(bodies)?);
        report.notes.push(format!(
            "mixed_volume={}",
            format_rational(&mixed_volume(bodies)?)
        ));
    }
    report.push_outcomes("convex", &label, Mode::Exact, out);
    Ok(report)
}
