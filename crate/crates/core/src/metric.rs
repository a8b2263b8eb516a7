//! Metrics on the complexified cone and their curvature.
//!
//! Three flavors of `G_{jk̄}`:
//!
//! * [`Flavor::Lu`]: `tr(θ_j ∘ θ_k^*)` over the whole bundle;
//! * [`Flavor::LuH0`]: the same trace restricted to the blocks with `p = q`;
//! * [`Flavor::Wp`]: `h(e_j, e_k)` on `H^{1,1}`, for comparison only.
//!
//! Holomorphic derivatives are `∂_l = ½ ∂/∂t^l`, and since `G` depends on
//! `t` only, `∂_{m̄}` equals `∂_m`. The curvature is
//!
//! `R_{jk̄lm̄} = −∂_l∂_{m̄} G_{jk̄} + Σ_{p,q} G^{pq̄} ∂_l G_{jq̄} ∂_{m̄} G_{pk̄}`
//!
//! and `HSC(v) = 2 R(v, v̄, v, v̄) / G(v, v̄)²`, normalized so that the
//! half-plane metric `(z + z̄)^{-2}` has `HSC ≡ −4`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{HodgeError, Result};
use crate::higgs::{part_matrix, HiggsPoint};
use crate::jet::Jet2;
use crate::lefschetz::LefschetzStructure;
use crate::linalg::Matrix;
use crate::operator::GradedOp;
use crate::report::{compare_matrices, compare_scalars_scaled, Outcome};
use crate::scalar::{Field, GaussRational};

/// Absolute slack for float-mode curvature bounds.
pub const FLOAT_BOUND_SLACK: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Flavor {
    Lu,
    LuH0,
    Wp,
}

impl Flavor {
    pub const ALL: [Flavor; 3] = [Flavor::Lu, Flavor::LuH0, Flavor::Wp];

    pub fn as_str(self) -> &'static str {
        match self {
            Flavor::Lu => "lu",
            Flavor::LuH0 => "lu-h0",
            Flavor::Wp => "wp",
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Flavor {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "lu" => Ok(Flavor::Lu),
            "lu-h0" => Ok(Flavor::LuH0),
            "wp" => Ok(Flavor::Wp),
            _ => Err(format!("unknown flavor {s:?} (expected lu, lu-h0 or wp)")),
        }
    }
}

/// `G_{jk̄}` from a Lefschetz structure and the Higgs operators.
fn metric_matrix<G: Field>(
    s: &LefschetzStructure<G>,
    theta: &[GradedOp<G>],
    flavor: Flavor,
) -> Matrix<G> {
    let nc = theta.len();
    match flavor {
        Flavor::Lu | Flavor::LuH0 => {
            let adj: Vec<GradedOp<G>> = theta.iter().map(|op| s.adjoint(op)).collect();
            Matrix::from_fn(nc, nc, |j, k| {
                let prod = theta[j].compose(&adj[k]);
                match flavor {
                    Flavor::LuH0 => prod.trace_where(|(p, q)| p == q),
                    _ => prod.trace(),
                }
            })
        }
        Flavor::Wp => {
            let alg = s.algebra();
            let e: Vec<Vec<G>> = (0..nc)
                .map(|j| alg.e_class(j).iter().map(G::from_gauss).collect())
                .collect();
            Matrix::from_fn(nc, nc, |j, k| s.metric_from_gram(&e[j], &e[k]))
        }
    }
}

/// `G` at a point with its first and second holomorphic derivatives.
#[derive(Clone, Debug)]
pub struct MetricField<F: Field> {
    flavor: Flavor,
    g: Matrix<F>,
    g_inv: Matrix<F>,
    /// `dg[l] = ∂_l G`.
    dg: Vec<Matrix<F>>,
    /// `ddg[l][m] = ∂_l ∂_{m̄} G`.
    ddg: Vec<Vec<Matrix<F>>>,
}

impl<F: Field> MetricField<F> {
    pub fn compute(hp: &HiggsPoint<F>, flavor: Flavor) -> Result<Self> {
        let nc = hp.num_coords();
        let theta: Vec<GradedOp<F>> = (0..nc).map(|j| hp.theta(j).clone()).collect();
        let g = metric_matrix(hp.structure(), &theta, flavor);
        let g_inv = g.inverse().ok_or_else(|| HodgeError::NotPolarized {
            reason: format!("{flavor} metric is singular"),
        })?;
        let theta_jet: Vec<GradedOp<Jet2<F>>> = theta
            .iter()
            .map(|op| op.convert(|x| Jet2::constant(x.clone())))
            .collect();
        let jets: BTreeMap<(usize, usize), Matrix<Jet2<F>>> = hp
            .jet_keys()
            .into_par_iter()
            .map(|key| {
                let (s, ..) = hp.jet_slot(key.0, key.1);
                (key, metric_matrix(s, &theta_jet, flavor))
            })
            .collect();
        let key_of = |j: usize, k: usize| {
            let (s, dj, dk, djk) = hp.jet_slot(j, k);
            let key = hp
                .jet_keys()
                .into_iter()
                .find(|key| std::ptr::eq(hp.jet_slot(key.0, key.1).0, s));
            (key.expect("slot maps to a built jet"), dj, dk, djk)
        };
        let half = F::from_gauss(&GaussRational::from_ratio(1, 2));
        let quarter = F::from_gauss(&GaussRational::from_ratio(1, 4));
        let dg = (0..nc)
            .map(|l| {
                let (key, dl, ..) = key_of(l, l);
                part_matrix(&jets[&key], dl).scale(&half)
            })
            .collect();
        let ddg = (0..nc)
            .map(|l| {
                (0..nc)
                    .map(|m| {
                        let (key, _, _, dlm) = key_of(l, m);
                        part_matrix(&jets[&key], dlm).scale(&quarter)
                    })
                    .collect()
            })
            .collect();
        Ok(MetricField {
            flavor,
            g,
            g_inv,
            dg,
            ddg,
        })
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn gram(&self) -> &Matrix<F> {
        &self.g
    }

    pub fn dim(&self) -> usize {
        self.g.rows()
    }

    /// `∂_l G`.
    pub fn d(&self, l: usize) -> &Matrix<F> {
        &self.dg[l]
    }

    /// `∂_l ∂_{m̄} G`.
    pub fn dd(&self, l: usize, m: usize) -> &Matrix<F> {
        &self.ddg[l][m]
    }

    pub fn is_hermitian(&self) -> bool {
        compare_matrices(&self.g, &self.g.transpose().conj()).1
    }

    pub fn is_positive_definite(&self) -> bool {
        F::hermitian_positive_definite(&self.g)
    }

    /// `G(v, w̄) = Σ G_{jk̄} v^j conj(w^k)`.
    pub fn pair(&self, v: &[F], w: &[F]) -> F {
        let wb: Vec<F> = w.iter().map(F::conj).collect();
        let gw = self.g.mul_vec(&wb);
        v.iter()
            .zip(gw)
            .fold(F::zero(), |acc, (a, b)| acc + &(a.clone() * &b))
    }

    /// `∂_l G_{jk̄} = ∂_j G_{lk̄}` for all `l < j`.
    pub fn kahler_check(&self) -> Vec<Outcome> {
        let n = self.dim();
        let scale = self
            .dg
            .iter()
            .map(Matrix::max_magnitude)
            .fold(0.0, f64::max);
        let mut out = vec![];
        for l in 0..n {
            for j in l + 1..n {
                let a = Matrix::from_fn(1, n, |_, k| self.dg[l][(j, k)].clone());
                let b = Matrix::from_fn(1, n, |_, k| self.dg[j][(l, k)].clone());
                let (res, pass) = (0..n)
                    .map(|k| compare_scalars_scaled(&a[(0, k)], &b[(0, k)], scale))
                    .fold((0.0f64, true), |(r, p), (r2, p2)| (r.max(r2), p && p2));
                out.push(Outcome::new(
                    "kahler",
                    format!("{} l={},j={}", self.flavor, l + 1, j + 1),
                    res,
                    pass,
                ));
            }
        }
        if out.is_empty() {
            out.push(Outcome::new(
                "kahler",
                format!("{} N=1", self.flavor),
                0.0,
                true,
            ));
        }
        out
    }

    pub fn curvature_tensor(&self) -> CurvatureTensor<F> {
        let n = self.dim();
        let mut r = Vec::with_capacity(n * n * n * n);
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    for m in 0..n {
                        let mut acc = -self.ddg[l][m][(j, k)].clone();
                        for p in 0..n {
                            for q in 0..n {
                                let t = self.g_inv[(q, p)].clone()
                                    * &self.dg[l][(j, q)]
                                    * &self.dg[m][(p, k)];
                                acc = acc + &t;
                            }
                        }
                        r.push(acc);
                    }
                }
            }
        }
        CurvatureTensor {
            n,
            r,
            g: self.g.clone(),
        }
    }
}

/// `R_{jk̄lm̄}` together with the metric it came from.
#[derive(Clone, Debug)]
pub struct CurvatureTensor<F> {
    n: usize,
    r: Vec<F>,
    g: Matrix<F>,
}

impl<F: Field> CurvatureTensor<F> {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, j: usize, k: usize, l: usize, m: usize) -> &F {
        let n = self.n;
        &self.r[((j * n + k) * n + l) * n + m]
    }

    /// `R(v, v̄, w, w̄) = Σ R_{jk̄lm̄} v^j conj(v^k) w^l conj(w^m)`.
    pub fn contract(&self, v: &[F], w: &[F]) -> F {
        let n = self.n;
        let outer = |x: &[F]| -> Vec<F> {
            (0..n * n)
                .map(|i| x[i / n].clone() * &x[i % n].conj())
                .collect()
        };
        let a = outer(v);
        let b = outer(w);
        let mut acc = F::zero();
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            let mut inner = F::zero();
            for (k, bk) in b.iter().enumerate() {
                inner = inner + &(self.r[i * n * n + k].clone() * bk);
            }
            acc = acc + &(ai.clone() * &inner);
        }
        acc
    }

    fn norm(&self, v: &[F]) -> Result<F> {
        if v.iter().all(F::is_zero) {
            return Err(HodgeError::ZeroDirection);
        }
        let vb: Vec<F> = v.iter().map(F::conj).collect();
        Ok(v.iter()
            .zip(self.g.mul_vec(&vb))
            .fold(F::zero(), |acc, (a, b)| acc + &(a.clone() * &b)))
    }

    /// `2 R(v, v̄, v, v̄) / G(v, v̄)²`.
    pub fn holomorphic_sectional(&self, v: &[F]) -> Result<F> {
        let g = self.norm(v)?;
        Ok(F::from_i64(2) * &self.contract(v, v) / (g.clone() * &g))
    }

    /// `2 R(v, v̄, w, w̄) / (G(v, v̄) G(w, w̄))`.
    pub fn bisectional(&self, v: &[F], w: &[F]) -> Result<F> {
        let gv = self.norm(v)?;
        let gw = self.norm(w)?;
        Ok(F::from_i64(2) * &self.contract(v, w) / (gv * &gw))
    }

    /// `R_{jk̄lm̄} = R_{lk̄jm̄} = R_{jm̄lk̄}` and `R_{jk̄lm̄} = conj(R_{kj̄ml̄})`.
    pub fn verify_symmetries(&self) -> Vec<Outcome> {
        let n = self.n;
        let scale = self.r.iter().map(F::magnitude).fold(0.0, f64::max);
        let mut worst = [(0.0f64, true); 3];
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    for m in 0..n {
                        let r = self.get(j, k, l, m);
                        let cands = [
                            self.get(l, k, j, m).clone(),
                            self.get(j, m, l, k).clone(),
                            self.get(k, j, m, l).conj(),
                        ];
                        for (w, c) in worst.iter_mut().zip(cands.iter()) {
                            let (res, pass) = compare_scalars_scaled(r, c, scale);
                            w.0 = w.0.max(res);
                            w.1 &= pass;
                        }
                    }
                }
            }
        }
        ["swap_holomorphic", "swap_antiholomorphic", "conjugate"]
            .iter()
            .zip(worst)
            .map(|(name, (res, pass))| Outcome::new("curvature_symmetry", *name, res, pass))
            .collect()
    }
}

/// The Lu metric, holomorphic-direction convention.
pub fn lu_metric<F: Field>(hp: &HiggsPoint<F>) -> Result<MetricField<F>> {
    MetricField::compute(hp, Flavor::Lu)
}

pub fn weil_petersson_metric<F: Field>(hp: &HiggsPoint<F>) -> Result<MetricField<F>> {
    MetricField::compute(hp, Flavor::Wp)
}

/// `HSC(v)` for one flavor at one point.
pub fn holomorphic_sectional_curvature<F: Field>(
    hp: &HiggsPoint<F>,
    flavor: Flavor,
    v: &[F],
) -> Result<F> {
    MetricField::compute(hp, flavor)?
        .curvature_tensor()
        .holomorphic_sectional(v)
}

/// Upper bound on `HSC`: `−1/(n² Rank H)` for [`Flavor::Lu`] and
/// `−4/(n² Rank H⁰)` for [`Flavor::LuH0`]; none for [`Flavor::Wp`].
pub fn hsc_bound(hp: &HiggsPoint<impl Field>, flavor: Flavor) -> Option<BigRational> {
    let alg = hp.algebra();
    let n2 = (alg.n() * alg.n()) as i64;
    match flavor {
        Flavor::Lu => Some(BigRational::new(
            (-1).into(),
            (n2 * alg.rank() as i64).into(),
        )),
        Flavor::LuH0 => {
            let r0: usize = alg
                .bidegrees()
                .iter()
                .filter(|(p, q)| p == q)
                .map(|bd| alg.dim(*bd))
                .sum();
            Some(BigRational::new((-4).into(), (n2 * r0 as i64).into()))
        }
        Flavor::Wp => None,
    }
}

/// `a ≤ b` exactly, or within [`FLOAT_BOUND_SLACK`] in float mode.
pub fn le_with_slack<F: Field>(a: &F, b: &F) -> bool {
    if F::EXACT {
        (b.clone() - a).re_sign() != Ordering::Less
    } else {
        a.to_c64().re <= b.to_c64().re + FLOAT_BOUND_SLACK
    }
}

fn primes(count: usize) -> Vec<u64> {
    let mut out = vec![];
    let mut c = 2u64;
    while out.len() < count {
        if out.iter().all(|p| !c.is_multiple_of(*p)) {
            out.push(c);
        }
        c += 1;
    }
    out
}

fn radical_inverse(mut i: u64, base: u64) -> f64 {
    let mut f = 1.0;
    let mut r = 0.0;
    while i > 0 {
        f /= base as f64;
        r += f * (i % base) as f64;
        i /= base;
    }
    r
}

/// `count` complex directions in `ℂ^dim`: a Halton sequence with a seeded
/// random shift, pushed through Box–Muller and rounded to denominator 1000.
pub fn sample_directions(dim: usize, count: usize, seed: u64) -> Vec<Vec<GaussRational>> {
    let bases = primes(2 * dim);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shift: Vec<f64> = (0..2 * dim).map(|_| rng.random::<f64>()).collect();
    let round = |x: f64| BigRational::new(((x * 1000.0).round() as i64).into(), 1000.into());
    let mut out = Vec::with_capacity(count);
    let mut i = 1u64;
    while out.len() < count {
        let u: Vec<f64> = (0..2 * dim)
            .map(|d| (radical_inverse(i, bases[d]) + shift[d]).fract())
            .collect();
        i += 1;
        let v: Vec<GaussRational> = (0..dim)
            .map(|j| {
                let r = (-2.0 * u[2 * j].max(1e-12).ln()).sqrt();
                let a = 2.0 * std::f64::consts::PI * u[2 * j + 1];
                GaussRational::new(round(r * a.cos()), round(r * a.sin()))
            })
            .collect();
        if !v.iter().all(Field::is_zero) {
            out.push(v);
        }
    }
    out
}

/// One sampled direction with its curvature.
#[derive(Clone, Debug)]
pub struct HscSample {
    pub flavor: Flavor,
    pub direction: Vec<GaussRational>,
    pub hsc: Complex64,
    pub bound: Option<f64>,
    pub within_bound: bool,
}

/// `HSC` along sampled directions for one flavor.
pub fn hsc_samples<F: Field>(
    hp: &HiggsPoint<F>,
    flavor: Flavor,
    dirs: &[Vec<GaussRational>],
) -> Result<Vec<HscSample>> {
    let tensor = MetricField::compute(hp, flavor)?.curvature_tensor();
    let bound = hsc_bound(hp, flavor);
    let bound_f = bound.as_ref().map(F::from_rational);
    dirs.par_iter()
        .map(|d| {
            let v: Vec<F> = d.iter().map(F::from_gauss).collect();
            let hsc = tensor.holomorphic_sectional(&v)?;
            let within = bound_f.as_ref().is_none_or(|b| le_with_slack(&hsc, b));
            Ok(HscSample {
                flavor,
                direction: d.clone(),
                hsc: hsc.to_c64(),
                bound: bound.as_ref().map(crate::scalar::ratio_to_f64),
                within_bound: within,
            })
        })
        .collect()
}

/// Samples `count` directions and checks the `HSC` bounds for the full and
/// `H⁰` Lu metrics, strict negativity, and bisectional `≤ 0` on consecutive
/// pairs.
pub fn bound_check<F: Field>(hp: &HiggsPoint<F>, count: usize, seed: u64) -> Result<Vec<Outcome>> {
    let dirs = sample_directions(hp.num_coords(), count, seed);
    let dirs_f: Vec<Vec<F>> = dirs
        .iter()
        .map(|d| d.iter().map(F::from_gauss).collect())
        .collect();
    let mut out = vec![];
    for flavor in [Flavor::Lu, Flavor::LuH0] {
        let tensor = MetricField::compute(hp, flavor)?.curvature_tensor();
        let bound = F::from_rational(&hsc_bound(hp, flavor).expect("Lu flavors have bounds"));
        let hsc: Vec<F> = dirs_f
            .par_iter()
            .map(|v| tensor.holomorphic_sectional(v))
            .collect::<Result<_>>()?;
        let max = hsc
            .iter()
            .map(|h| h.to_c64().re)
            .fold(f64::NEG_INFINITY, f64::max);
        let within = hsc.iter().all(|h| le_with_slack(h, &bound));
        let negative = hsc.iter().all(|h| h.re_sign() == Ordering::Less);
        let bound_f = bound.to_c64().re;
        out.push(Outcome::new(
            "hsc_bound",
            format!(
                "{flavor} directions={} max={max:.6} bound={bound_f:.6}",
                hsc.len()
            ),
            (max - bound_f).max(0.0),
            within,
        ));
        out.push(Outcome::new(
            "hsc_negative",
            format!("{flavor} max={max:.6}"),
            max.max(0.0),
            negative,
        ));
        if flavor == Flavor::Lu {
            let bis: Vec<F> = (0..dirs_f.len())
                .into_par_iter()
                .map(|i| tensor.bisectional(&dirs_f[i], &dirs_f[(i + 1) % dirs_f.len()]))
                .collect::<Result<_>>()?;
            let bmax = bis
                .iter()
                .map(|b| b.to_c64().re)
                .fold(f64::NEG_INFINITY, f64::max);
            let ok = bis.iter().all(|b| le_with_slack(b, &F::zero()));
            out.push(Outcome::new(
                "bisectional",
                format!("{flavor} pairs={} max={bmax:.6}", bis.len()),
                bmax.max(0.0),
                ok,
            ));
        }
    }
    Ok(out)
}

/// Hermitian and positive-definite for every flavor; Kähler and curvature
/// symmetries for the Lu flavors.
pub fn verify_metrics<F: Field>(hp: &HiggsPoint<F>) -> Result<Vec<Outcome>> {
    let mut out = vec![];
    for flavor in Flavor::ALL {
        let m = MetricField::compute(hp, flavor)?;
        out.push(Outcome::new(
            "metric_hermitian",
            flavor.as_str(),
            0.0,
            m.is_hermitian(),
        ));
        out.push(Outcome::new(
            "metric_positive",
            flavor.as_str(),
            0.0,
            m.is_positive_definite(),
        ));
        if flavor != Flavor::Wp {
            out.extend(m.kahler_check());
            out.extend(
                m.curvature_tensor()
                    .verify_symmetries()
                    .into_iter()
                    .map(|mut o| {
                        o.detail = format!("{flavor} {}", o.detail);
                        o
                    }),
            );
        }
    }
    Ok(out)
}
