//! Kähler-side inequalities and the `n = 2` identities.
//!
//! `V(ω₁, …, ω_n) = ∫ ω₁⋯ω_n` is the mixed intersection number and
//! `|X| = ∫ ω^n/n! = h(1, 1)`. Directions here follow the real convention:
//! `θ_ζ` is cup product with `Σ ζ^j e_j` and derivatives are plain
//! `∂/∂t` along `ζ`.
//!
//! For `n = 2` write `θ_ζ·1 = ω a_ζ + b_ζ` with `b_ζ` primitive and define
//! `b_{ζη}` by `b_ζ b_η = b_{ζη} ω²`. Subscripts after a comma are
//! derivatives: `a_{η,ζ} = ∂_ζ a_η`.

use std::cmp::Ordering;
use std::sync::Arc;

use num_rational::BigRational;
use rayon::prelude::*;

use crate::algebra::GradedAlgebra;
use crate::error::{HodgeError, Result};
use crate::higgs::{check_direction, h00_curvature, real_theta, ConePoint, DirectionalJet};
use crate::jet::{Jet2, JetPart};
use crate::lefschetz::{apply, LefschetzStructure};
use crate::linalg::Matrix;
use crate::report::{scalar_outcome, scaled_outcome, Outcome};
use crate::sampling::is_polarized_point;
use crate::scalar::{format_rational, Field, GaussRational};

fn to_field<F: Field>(v: &[BigRational]) -> Vec<F> {
    v.iter().map(F::from_rational).collect()
}

fn fmt_vec(v: &[BigRational]) -> String {
    format!(
        "({})",
        v.iter().map(format_rational).collect::<Vec<_>>().join(",")
    )
}

/// `∫ ω₁⋯ω_n` for classes given by full coordinates in `H^{1,1}`.
pub fn mixed_intersection<F: Field>(alg: &GradedAlgebra, classes: &[Vec<F>]) -> Result<F> {
    if classes.len() != alg.n() {
        return Err(HodgeError::InvalidParameter(format!(
            "mixed intersection takes n = {} classes, got {}",
            alg.n(),
            classes.len()
        )));
    }
    let mut prod: Vec<F> = (0..alg.rank())
        .map(|i| {
            if i == alg.unit_index() {
                F::one()
            } else {
                F::zero()
            }
        })
        .collect();
    for c in classes {
        match alg.pure_bidegree(c)? {
            Some((1, 1)) | None => {}
            Some(bd) => {
                return Err(HodgeError::WrongBidegree {
                    expected: "(1,1)".into(),
                    got: format!("({},{})", bd.0, bd.1),
                })
            }
        }
        prod = alg.mul(&prod, c);
    }
    Ok(alg.integrate(&prod))
}

/// `V` of classes given in cone coordinates `t`.
pub fn mixed_intersection_coords<F: Field>(alg: &GradedAlgebra, coords: &[Vec<F>]) -> Result<F> {
    let classes: Vec<Vec<F>> = coords.iter().map(|t| alg.class_from_coords(t)).collect();
    mixed_intersection(alg, &classes)
}

/// Values of one Khovanskii–Teissier comparison.
#[derive(Clone, Debug, PartialEq)]
pub struct KtValues {
    pub v12: GaussRational,
    pub v11: GaussRational,
    pub v22: GaussRational,
    /// `V(ω₁, ω₂, …)² − V(ω₁, ω₁, …)·V(ω₂, ω₂, …)`.
    pub margin: GaussRational,
    pub proportional: bool,
}

/// Exact rank of the `2 × N` matrix of the two coordinate vectors is 1.
pub fn proportional(a: &[BigRational], b: &[BigRational]) -> bool {
    let rows: Vec<Vec<GaussRational>> = [a, b]
        .iter()
        .map(|v| v.iter().map(|x| GaussRational::real(x.clone())).collect())
        .collect();
    Matrix::from_rows(rows).rank() <= 1
}

/// `V(ω₁, ω₂, ω₃, …)² ≥ V(ω₁, ω₁, ω₃, …)·V(ω₂, ω₂, ω₃, …)` in cone
/// coordinates, with `fixed` supplying `ω₃, …, ω_n`.
pub fn kt_values(
    alg: &Arc<GradedAlgebra>,
    w1: &[BigRational],
    w2: &[BigRational],
    fixed: &[Vec<BigRational>],
) -> Result<KtValues> {
    for w in [w1, w2] {
        if !is_polarized_point(alg, w) {
            return Err(HodgeError::NotPolarized {
                reason: format!("{} is not in the cone", fmt_vec(w)),
            });
        }
    }
    if fixed.len() + 2 != alg.n() {
        return Err(HodgeError::InvalidParameter(format!(
            "need n − 2 = {} fixed classes",
            alg.n().saturating_sub(2)
        )));
    }
    let v = |a: &[BigRational], b: &[BigRational]| -> Result<GaussRational> {
        let mut cs: Vec<Vec<GaussRational>> = vec![to_field(a), to_field(b)];
        cs.extend(fixed.iter().map(|f| to_field(f)));
        mixed_intersection_coords(alg, &cs)
    };
    let v12 = v(w1, w2)?;
    let v11 = v(w1, w1)?;
    let v22 = v(w2, w2)?;
    let margin = v12.clone() * &v12 - &(v11.clone() * &v22);
    Ok(KtValues {
        v12,
        v11,
        v22,
        margin,
        proportional: proportional(w1, w2),
    })
}

/// Margin `≥ 0` and, for proportional classes, margin `= 0`.
pub fn kt_check(
    alg: &Arc<GradedAlgebra>,
    w1: &[BigRational],
    w2: &[BigRational],
    fixed: &[Vec<BigRational>],
) -> Result<Vec<Outcome>> {
    let k = kt_values(alg, w1, w2, fixed)?;
    let detail = format!("w1={} w2={}", fmt_vec(w1), fmt_vec(w2));
    let m = k.margin.to_c64().re;
    let mut out = vec![Outcome::new(
        "kt_inequality",
        detail.clone(),
        (-m).max(0.0),
        k.margin.re_sign() != Ordering::Less,
    )];
    if k.proportional {
        out.push(Outcome::new(
            "kt_equality",
            detail,
            m.abs(),
            k.margin.is_zero(),
        ));
    }
    Ok(out)
}

/// One step of a log-convexity scan.
#[derive(Clone, Debug, PartialEq)]
pub struct LogConvexityRow {
    pub s: BigRational,
    pub in_cone: bool,
    pub v: GaussRational,
    /// `(−log V)'' = (V'² − V V'')/V²`; `None` where `V = 0`.
    pub second: Option<GaussRational>,
    pub pass: bool,
}

/// `s ↦ −log V(ω(s), ω(s), ω₃, …)` along `ω(s) = (1−s)ω₁ + sω₂`,
/// `s = i/steps` for `i = 0..=steps`.
pub fn log_convexity_scan(
    alg: &Arc<GradedAlgebra>,
    w1: &[BigRational],
    w2: &[BigRational],
    fixed: &[Vec<BigRational>],
    steps: usize,
) -> Result<Vec<LogConvexityRow>> {
    if fixed.len() + 2 != alg.n() {
        return Err(HodgeError::InvalidParameter(format!(
            "need n − 2 = {} fixed classes",
            alg.n().saturating_sub(2)
        )));
    }
    if steps == 0 {
        return Ok(vec![]);
    }
    let fixed_j: Vec<Vec<Jet2<GaussRational>>> = fixed.iter().map(|f| to_field(f)).collect();
    (0..=steps)
        .into_par_iter()
        .map(|i| {
            let s = BigRational::new((i as i64).into(), (steps as i64).into());
            let point: Vec<BigRational> =
                w1.iter().zip(w2).map(|(a, b)| a + (b - a) * &s).collect();
            let in_cone = is_polarized_point(alg, &point);
            let w: Vec<Jet2<GaussRational>> = w1
                .iter()
                .zip(w2)
                .zip(&point)
                .map(|((a, b), p)| {
                    let d = GaussRational::real(b - a);
                    Jet2::variable(GaussRational::real(p.clone()), d.clone(), d)
                })
                .collect();
            let mut cs = vec![w.clone(), w];
            cs.extend(fixed_j.iter().cloned());
            let v = mixed_intersection_coords(alg, &cs)?;
            let second = (!v.v.is_zero()).then(|| neg_log_second(&v));
            let pass = in_cone
                && second
                    .as_ref()
                    .is_some_and(|x| x.re_sign() != Ordering::Less);
            Ok(LogConvexityRow {
                s,
                in_cone,
                v: v.v,
                second,
                pass,
            })
        })
        .collect()
}

/// `(−log X)''` from a jet seeded along one direction twice.
pub fn neg_log_second<F: Field>(x: &Jet2<F>) -> F {
    let (v, d, dd) = (x.v.clone(), x.d1.clone(), x.d12.clone());
    (d.clone() * &d - &(v.clone() * &dd)) / (v.clone() * &v)
}

/// `((−log|X|)_{ζζ}, ‖θ_ζ‖²/|X|)`.
pub fn effective_bm<F: Field>(
    alg: &Arc<GradedAlgebra>,
    point: &ConePoint,
    zeta: &[BigRational],
) -> Result<(F, F)> {
    check_direction(alg, zeta)?;
    let z: Vec<F> = to_field(zeta);
    let jet = DirectionalJet::build(alg, &point.coords::<F>(), &z, &z)?;
    let x = jet.volume();
    let (_, norm) = h00_curvature::<F>(alg, point, zeta)?;
    Ok((neg_log_second(&x), norm / x.v))
}

pub fn verify_effective_bm<F: Field>(
    alg: &Arc<GradedAlgebra>,
    point: &ConePoint,
    zeta: &[BigRational],
) -> Result<Outcome> {
    let (lhs, rhs) = effective_bm::<F>(alg, point, zeta)?;
    Ok(scalar_outcome(
        "effective_bm",
        &format!("zeta={}", fmt_vec(zeta)),
        &lhs,
        &rhs,
    ))
}

/// `θ_ζ·1 = ω a_ζ + b_ζ` at an `n = 2` point.
#[derive(Clone, Debug, PartialEq)]
pub struct PrimitiveCoeffs2D<F> {
    pub a: F,
    /// Full coordinates of the primitive `(1,1)` part.
    pub b: Vec<F>,
}

fn require_n2(alg: &GradedAlgebra) -> Result<()> {
    if alg.n() != 2 {
        return Err(HodgeError::RequiresN2 { n: alg.n() });
    }
    Ok(())
}

/// Decomposes `Σ ζ^j e_j` with respect to the structure's `ω`.
pub fn primitive_coeffs_in<F: Field>(
    s: &LefschetzStructure<F>,
    zeta: &[F],
) -> Result<PrimitiveCoeffs2D<F>> {
    let alg = s.algebra();
    require_n2(alg)?;
    let c = alg.class_from_coords(zeta);
    let d = s.primitive_decomposition(&c)?;
    let mut a = F::zero();
    let mut b = vec![F::zero(); alg.rank()];
    for comp in d.components {
        match comp.r {
            1 => a = comp.class[alg.unit_index()].clone(),
            0 => b = comp.class,
            r => {
                return Err(HodgeError::invariant(
                    "primitive_coeffs",
                    format!("unexpected component r={r}"),
                ))
            }
        }
    }
    Ok(PrimitiveCoeffs2D { a, b })
}

pub fn primitive_coeffs_2d<F: Field>(
    alg: &Arc<GradedAlgebra>,
    point: &ConePoint,
    zeta: &[BigRational],
) -> Result<PrimitiveCoeffs2D<F>> {
    require_n2(alg)?;
    let s = LefschetzStructure::build(alg, &point.coords::<F>())?;
    primitive_coeffs_in(&s, &to_field(zeta))
}

/// `b_{ζη} = ∫ b_ζ b_η / ∫ ω²`.
pub fn b_pair<F: Field>(s: &LefschetzStructure<F>, b1: &[F], b2: &[F]) -> F {
    let alg = s.algebra();
    let w2 = alg.integrate(&alg.mul(s.omega(), s.omega()));
    alg.integrate(&alg.mul(b1, b2)) / w2
}

/// Coefficients for a list of directions in one structure.
struct Coeffs<F> {
    a: Vec<F>,
    b: Vec<Vec<F>>,
}

impl<F: Field> Coeffs<F> {
    fn new(s: &LefschetzStructure<F>, dirs: &[Vec<F>]) -> Result<Self> {
        let cs: Vec<PrimitiveCoeffs2D<F>> = dirs
            .iter()
            .map(|d| primitive_coeffs_in(s, d))
            .collect::<Result<_>>()?;
        Ok(Coeffs {
            a: cs.iter().map(|c| c.a.clone()).collect(),
            b: cs.into_iter().map(|c| c.b).collect(),
        })
    }
}

/// `a_{η,ζ} = b_{ζη} − a_η a_ζ` and
/// `b_{ζη,λ} = −a_ζ b_{ηλ} − a_η b_{ζλ} − 2 a_λ b_{ζη}`.
pub fn verify_n2_derivative_identities<F: Field>(
    alg: &Arc<GradedAlgebra>,
    point: &ConePoint,
    zeta: &[BigRational],
    eta: &[BigRational],
    lambda: &[BigRational],
) -> Result<Vec<Outcome>> {
    require_n2(alg)?;
    for d in [zeta, eta, lambda] {
        check_direction(alg, d)?;
    }
    let t: Vec<F> = point.coords();
    let dirs: Vec<Vec<F>> = [zeta, eta, lambda].iter().map(|d| to_field(d)).collect();
    // slot 1 differentiates along ζ, slot 2 along λ
    let jet = DirectionalJet::build(alg, &t, &dirs[0], &dirs[2])?;
    let js = jet.structure();
    let dirs_j: Vec<Vec<Jet2<F>>> = dirs
        .iter()
        .map(|d| d.iter().cloned().map(Jet2::constant).collect())
        .collect();
    let cj = Coeffs::new(js, &dirs_j)?;
    let value = |x: &Jet2<F>| x.v.clone();
    let (a_z, a_e, a_l) = (value(&cj.a[0]), value(&cj.a[1]), value(&cj.a[2]));
    let b = |i: usize, k: usize| value(&b_pair(js, &cj.b[i], &cj.b[k]));

    let lhs_a = cj.a[1].part(JetPart::D1).clone();
    let rhs_a = b(0, 1) - &(a_e.clone() * &a_z);

    let b_ze = b_pair(js, &cj.b[0], &cj.b[1]);
    let lhs_b = b_ze.part(JetPart::D2).clone();
    let two = F::from_i64(2);
    let rhs_b = -(a_z.clone() * &b(1, 2)) - &(a_e * &b(0, 2)) - &(two * &a_l * &b(0, 1));
    let detail = format!(
        "zeta={} eta={} lambda={}",
        fmt_vec(zeta),
        fmt_vec(eta),
        fmt_vec(lambda)
    );
    let scale = |xs: &[&F]| xs.iter().map(|x| x.magnitude()).fold(0.0, f64::max);
    let sa = scale(&[&b(0, 1), &(value(&cj.a[1]) * &a_z)]);
    let sb = scale(&[
        &rhs_b,
        &(a_z.clone() * &b(1, 2)),
        &(value(&cj.a[1]) * &b(0, 2)),
        &(a_l.clone() * &b(0, 1)),
    ]);
    Ok(vec![
        scaled_outcome("n2_a_derivative", &detail, &lhs_a, &rhs_a, sa),
        scaled_outcome("n2_b_derivative", &detail, &lhs_b, &rhs_b, sb),
    ])
}

/// The quantities of the `n = 2` curvature computation.
#[derive(Clone, Debug, PartialEq)]
pub struct N2Curvature<F> {
    pub a_zeta: F,
    pub a_eta: F,
    pub b_zz: F,
    pub b_ze: F,
    pub volume: F,
    /// `(Θ_ζζ θ_η, θ_η)` from the connection.
    pub r_connection: F,
    /// `‖θ_ζ θ_η‖²`.
    pub wedge_sq: F,
    /// `‖θ_ζ^* θ_η‖²`.
    pub adjoint_sq: F,
    /// `‖∂^h_ζ θ_η‖²`.
    pub chern_sq: F,
    /// `(‖θ_η‖²)_{ζζ}`.
    pub norm_second: F,
}

pub fn n2_curvature<F: Field>(
    alg: &Arc<GradedAlgebra>,
    point: &ConePoint,
    zeta: &[BigRational],
    eta: &[BigRational],
) -> Result<N2Curvature<F>> {
    require_n2(alg)?;
    check_direction(alg, zeta)?;
    check_direction(alg, eta)?;
    let t: Vec<F> = point.coords();
    let z: Vec<F> = to_field(zeta);
    let e: Vec<F> = to_field(eta);
    let base = LefschetzStructure::build(alg, &t)?;
    let cz = primitive_coeffs_in(&base, &z)?;
    let ce = primitive_coeffs_in(&base, &e)?;
    let jet = DirectionalJet::build(alg, &t, &z, &z)?;

    let theta_eta = alg.class_from_coords(&e);
    let block = &theta_eta[alg.range((1, 1))];
    let th_z = real_theta(alg, zeta)?.convert(F::from_gauss);
    let wedge = apply(alg, &th_z, &theta_eta);
    let adj = apply(alg, &base.adjoint(&th_z), &theta_eta);
    Ok(N2Curvature {
        b_zz: b_pair(&base, &cz.b, &cz.b),
        b_ze: b_pair(&base, &cz.b, &ce.b),
        a_zeta: cz.a,
        a_eta: ce.a,
        volume: base.volume(),
        r_connection: jet.curvature_pairing((1, 1), block),
        wedge_sq: base.metric_from_gram(&wedge, &wedge),
        adjoint_sq: base.metric_from_gram(&adj, &adj),
        chern_sq: jet.chern_norm_sq((1, 1), block),
        norm_second: jet.norm_sq_jet((1, 1), block).part(JetPart::D12).clone(),
    })
}

/// Every equality of the `n = 2` curvature computation.
pub fn verify_n2_curvature<F: Field>(
    alg: &Arc<GradedAlgebra>,
    point: &ConePoint,
    zeta: &[BigRational],
    eta: &[BigRational],
) -> Result<Vec<Outcome>> {
    let q = n2_curvature::<F>(alg, point, zeta, eta)?;
    let c = |k: i64| F::from_i64(k);
    let (az, ae, bzz, bze, x) = (&q.a_zeta, &q.a_eta, &q.b_zz, &q.b_ze, &q.volume);
    let aa = ae.clone() * az;
    let r_diff = q.wedge_sq.clone() - &q.adjoint_sq;
    let r_closed = c(16) * &aa * bze * x;
    let wedge_closed = c(4) * &(bze.clone() + &aa) * &(bze.clone() + &aa) * x;
    let adj_closed = c(4) * &(bze.clone() - &aa) * &(bze.clone() - &aa) * x;
    let lemma = bze.clone() * bze - &(ae.clone() * ae * bzz);
    let lemma1 = c(8) * &lemma * x;
    let lemma2 = c(8) * &(lemma - &(c(2) * &aa * bze)) * x;
    let detail = format!("zeta={} eta={}", fmt_vec(zeta), fmt_vec(eta));
    // the norms bound every term of the sums compared below
    let scale = [
        &q.wedge_sq,
        &q.adjoint_sq,
        &q.chern_sq,
        &q.norm_second,
        &(c(16) * &aa * x),
    ]
    .iter()
    .map(|v| v.magnitude())
    .fold(0.0, f64::max);
    Ok(vec![
        scaled_outcome("n2_r_difference", &detail, &q.r_connection, &r_diff, scale),
        scaled_outcome(
            "n2_r_closed_form",
            &detail,
            &q.r_connection,
            &r_closed,
            scale,
        ),
        scaled_outcome("n2_wedge_norm", &detail, &q.wedge_sq, &wedge_closed, scale),
        scaled_outcome(
            "n2_adjoint_norm",
            &detail,
            &q.adjoint_sq,
            &adj_closed,
            scale,
        ),
        scaled_outcome("n2_lemma_chern", &detail, &q.chern_sq, &lemma1, scale),
        scaled_outcome("n2_lemma_second", &detail, &q.norm_second, &lemma2, scale),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::fixture;
    use num_complex::Complex64;

    fn q(n: i64, d: i64) -> GaussRational {
        GaussRational::from_ratio(n, d)
    }

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn rv(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| r(x)).collect()
    }

    fn alg(name: &str) -> Arc<GradedAlgebra> {
        Arc::new(fixture(name).unwrap())
    }

    #[test]
    fn mixed_intersection_values() {
        let a = alg("p1xp1");
        let e = |j| a.e_class(j).to_vec();
        assert_eq!(mixed_intersection(&a, &[e(0), e(1)]).unwrap(), q(1, 1));
        assert_eq!(mixed_intersection(&a, &[e(0), e(0)]).unwrap(), q(0, 1));
        let p2 = alg("p2");
        assert_eq!(
            mixed_intersection(&p2, &[p2.e_class(0).to_vec(), p2.e_class(0).to_vec()]).unwrap(),
            q(1, 1)
        );
        assert!(mixed_intersection(&a, &[e(0)]).is_err());
        let unit: Vec<GaussRational> = (0..a.rank())
            .map(|i| if i == 0 { q(1, 1) } else { q(0, 1) })
            .collect();
        assert!(matches!(
            mixed_intersection(&a, &[unit, e(0)]),
            Err(HodgeError::WrongBidegree { .. })
        ));
    }

    #[test]
    fn kt_examples() {
        let a = alg("p1xp1");
        // e1, e2 lie on the boundary; use interior points with the same pairing pattern
        let k = kt_values(&a, &rv(&[1, 1]), &rv(&[1, 1]), &[]).unwrap();
        assert!(k.margin.is_zero() && k.proportional);
        let k = kt_values(&a, &rv(&[1, 2]), &rv(&[3, 1]), &[]).unwrap();
        assert_eq!(k.margin.re_sign(), Ordering::Greater);
        let p2 = alg("p2");
        let k = kt_values(&p2, &rv(&[1]), &rv(&[2]), &[]).unwrap();
        assert_eq!(
            (k.v12.clone(), k.v11.clone(), k.v22.clone()),
            (q(2, 1), q(1, 1), q(4, 1))
        );
        assert!(k.margin.is_zero());
        for o in kt_check(&p2, &rv(&[1]), &rv(&[2]), &[]).unwrap() {
            assert!(o.pass);
        }
        let p1p1 = alg("p1xp1");
        let e12 = mixed_intersection(&p1p1, &[p1p1.e_class(0).to_vec(), p1p1.e_class(1).to_vec()])
            .unwrap();
        assert_eq!(e12.clone() * &e12, q(1, 1));
    }

    #[test]
    fn log_convexity_closed_forms() {
        let p2 = alg("p2");
        let rows = log_convexity_scan(&p2, &rv(&[1]), &rv(&[3]), &[], 4).unwrap();
        assert_eq!(rows.len(), 5);
        for row in &rows {
            // −log V = −2 log(1 + 2s): second derivative 8/(1+2s)²
            let s = GaussRational::real(row.s.clone());
            let d = q(1, 1) + &(q(2, 1) * &s);
            assert_eq!(row.second, Some(q(8, 1) / (d.clone() * &d)));
            assert!(row.pass);
        }
        // ω₂ = cω₁ in dimension n: n(c−1)²/(1+(c−1)s)²
        let a = alg("p1xp1xp1");
        let rows =
            log_convexity_scan(&a, &rv(&[1, 2, 1]), &rv(&[2, 4, 2]), &[rv(&[1, 1, 1])], 2).unwrap();
        for row in &rows {
            let s = GaussRational::real(row.s.clone());
            let d = q(1, 1) + &s;
            assert_eq!(row.second, Some(q(2, 1) / (d.clone() * &d)));
        }
        assert!(log_convexity_scan(&p2, &rv(&[1]), &rv(&[3]), &[], 0)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn log_convexity_reports_cone_exit() {
        let a = alg("p1xp1");
        let rows = log_convexity_scan(&a, &rv(&[1, 1]), &rv(&[-1, 1]), &[], 2).unwrap();
        assert!(rows[0].in_cone && rows[0].pass);
        assert!(!rows[1].in_cone && !rows[1].pass && rows[1].second.is_none());
        assert!(!rows[2].in_cone && !rows[2].pass);
    }

    #[test]
    fn effective_bm_hand_values() {
        let p2 = alg("p2");
        let (l, rr) =
            effective_bm::<GaussRational>(&p2, &ConePoint::from_ints(&[1]), &rv(&[1])).unwrap();
        assert_eq!((l, rr), (q(2, 1), q(2, 1)));
        let a = alg("p1xp1");
        let (l, rr) =
            effective_bm::<GaussRational>(&a, &ConePoint::from_ints(&[1, 1]), &rv(&[1, 0]))
                .unwrap();
        assert_eq!((l, rr), (q(1, 1), q(1, 1)));
        let (l2, _) =
            effective_bm::<GaussRational>(&a, &ConePoint::from_ints(&[1, 1]), &rv(&[2, 0]))
                .unwrap();
        assert_eq!(l2, q(4, 1));
    }

    #[test]
    fn effective_bm_shares_h00_curvature() {
        let a = alg("p1xp2");
        let p = ConePoint::new(vec![BigRational::new(3.into(), 2.into()), r(1)]);
        let zeta = rv(&[2, -1]);
        let (curv, _) = h00_curvature::<GaussRational>(&a, &p, &zeta).unwrap();
        let (lhs, _) = effective_bm::<GaussRational>(&a, &p, &zeta).unwrap();
        let x = LefschetzStructure::build(&a, &p.coords::<GaussRational>())
            .unwrap()
            .volume();
        assert_eq!(curv / x, lhs);
    }

    #[test]
    fn n2_hand_values() {
        let a = alg("p1xp1");
        let p = ConePoint::from_ints(&[1, 1]);
        let z = rv(&[1, 0]);
        let c = primitive_coeffs_2d::<GaussRational>(&a, &p, &z).unwrap();
        assert_eq!(c.a, q(1, 2));
        let s = LefschetzStructure::build(&a, &p.coords::<GaussRational>()).unwrap();
        assert_eq!(b_pair(&s, &c.b, &c.b), q(-1, 4));
        // b = ½(e1 − e2)
        let half_diff: Vec<GaussRational> = a.class_from_coords(&[q(1, 2), q(-1, 2)]);
        assert_eq!(c.b, half_diff);
        let n2 = n2_curvature::<GaussRational>(&a, &p, &z, &z).unwrap();
        assert_eq!(n2.r_connection, q(-1, 1));
        assert_eq!(n2.wedge_sq, q(0, 1));
        assert_eq!(n2.adjoint_sq, q(1, 1));
        assert_eq!(n2.chern_sq, q(1, 1));
        assert_eq!(n2.norm_second, q(2, 1));
        for o in verify_n2_curvature::<GaussRational>(&a, &p, &z, &z).unwrap() {
            assert!(o.pass, "{}", o.identity);
        }
        for o in verify_n2_derivative_identities::<GaussRational>(&a, &p, &z, &z, &z).unwrap() {
            assert!(o.pass, "{}", o.identity);
        }
    }

    #[test]
    fn n2_derivative_hand_values() {
        let a = alg("p1xp1");
        let p = ConePoint::from_ints(&[1, 1]);
        let z: Vec<GaussRational> = vec![q(1, 1), q(0, 1)];
        let jet = DirectionalJet::build(&a, &p.coords::<GaussRational>(), &z, &z).unwrap();
        let zj: Vec<Jet2<GaussRational>> = z.iter().cloned().map(Jet2::constant).collect();
        let c = primitive_coeffs_in(jet.structure(), &zj).unwrap();
        assert_eq!(c.a.d1, q(-1, 2));
        assert_eq!(b_pair(jet.structure(), &c.b, &c.b).d2, q(1, 2));
    }

    #[test]
    fn theta_equal_omega() {
        let a = alg("p1xp1");
        let p = ConePoint::from_ints(&[2, 3]);
        let c = primitive_coeffs_2d::<GaussRational>(&a, &p, &rv(&[2, 3])).unwrap();
        assert_eq!(c.a, q(1, 1));
        assert!(c.b.iter().all(Field::is_zero));
        let n2 = n2_curvature::<GaussRational>(&a, &p, &rv(&[1, 5]), &rv(&[2, 3])).unwrap();
        assert!(n2.r_connection.is_zero());
    }

    #[test]
    fn n2_random_directions_exact_and_float() {
        for name in ["p2", "p1xp1", "torus2"] {
            let a = alg(name);
            let mut rng = crate::sampling::rng(5);
            let p = crate::sampling::random_point(&a, &mut rng).unwrap();
            let d: Vec<Vec<BigRational>> = (0..3)
                .map(|_| crate::sampling::random_direction(a.num_coords(), &mut rng))
                .collect();
            let mut outs = verify_n2_curvature::<GaussRational>(&a, &p, &d[0], &d[1]).unwrap();
            outs.extend(
                verify_n2_derivative_identities::<GaussRational>(&a, &p, &d[0], &d[1], &d[2])
                    .unwrap(),
            );
            outs.extend(verify_n2_curvature::<Complex64>(&a, &p, &d[0], &d[1]).unwrap());
            outs.push(verify_effective_bm::<GaussRational>(&a, &p, &d[0]).unwrap());
            for o in outs {
                assert!(o.pass, "{name}: {} {} {}", o.identity, o.detail, o.residual);
            }
        }
    }

    #[test]
    fn n2_guard() {
        let a = alg("p1xp1xp1");
        let e = primitive_coeffs_2d::<GaussRational>(
            &a,
            &ConePoint::from_ints(&[1, 1, 1]),
            &rv(&[1, 0, 0]),
        );
        assert!(matches!(e, Err(HodgeError::RequiresN2 { n: 3 })));
    }
}
