//! Jet derivatives against float central differences.
//!
//! Every check evaluates the quantity in `Complex64` at points shifted by
//! `±h` (exactly representable as rationals) and compares with the jet
//! derivative at the centre, relative to the size of the jet value.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_complex::Complex64;
use num_rational::BigRational;

use crate::algebra::GradedAlgebra;
use crate::error::Result;
use crate::higgs::{ConePoint, DirectionalJet, HiggsPoint};
use crate::inequality::{b_pair, neg_log_second, primitive_coeffs_in};
use crate::jet::{Jet2, JetPart};
use crate::lefschetz::LefschetzStructure;
use crate::linalg::Matrix;
use crate::metric::{Flavor, MetricField};
use crate::operator::{Bidegree, GradedOp};
use crate::report::Outcome;

pub const FD_STEP_DEN: i64 = 10_000;
pub const FD_REL_TOL: f64 = 1e-5;

type C = Complex64;

fn step() -> BigRational {
    BigRational::new(1.into(), FD_STEP_DEN.into())
}

fn h() -> f64 {
    1.0 / FD_STEP_DEN as f64
}

/// `t + Σ c_i h d_i`.
fn shifted(p: &ConePoint, moves: &[(i64, &[BigRational])]) -> ConePoint {
    let mut t = p.t.clone();
    for (c, d) in moves {
        for (x, dx) in t.iter_mut().zip(d.iter()) {
            *x += BigRational::from_integer((*c).into()) * step() * dx;
        }
    }
    ConePoint::new(t)
}

fn unit(len: usize, j: usize) -> Vec<BigRational> {
    (0..len)
        .map(|i| BigRational::from_integer(((i == j) as i64).into()))
        .collect()
}

fn outcome(module: &str, quantity: &str, diff: f64, size: f64) -> Outcome {
    let rel = if size > 0.0 { diff / size } else { diff };
    Outcome::new(
        "jet_fd",
        format!("{module} {quantity} rel={rel:.2e}"),
        rel,
        rel < FD_REL_TOL,
    )
}

fn op_diff(jet: &GradedOp<C>, fd: &GradedOp<C>) -> (f64, f64) {
    (jet.sub(fd).max_magnitude(), jet.max_magnitude())
}

fn grams_diff(
    jet: &BTreeMap<Bidegree, Matrix<C>>,
    fd: &BTreeMap<Bidegree, Matrix<C>>,
) -> (f64, f64) {
    jet.iter().fold((0.0, 0.0), |(d, s), (bd, m)| {
        (d.max(m.max_abs_diff(&fd[bd])), s.max(m.max_magnitude()))
    })
}

fn combine_grams(parts: &[(f64, &BTreeMap<Bidegree, Matrix<C>>)]) -> BTreeMap<Bidegree, Matrix<C>> {
    parts[0]
        .1
        .keys()
        .map(|bd| {
            let m = parts.iter().fold(
                Matrix::zeros(parts[0].1[bd].rows(), parts[0].1[bd].cols()),
                |acc, (c, g)| acc.add(&g[bd].scale(&C::new(*c, 0.0))),
            );
            (*bd, m)
        })
        .collect()
}

fn structure_at(alg: &Arc<GradedAlgebra>, p: &ConePoint) -> Result<LefschetzStructure<C>> {
    LefschetzStructure::build(alg, &p.coords::<C>())
}

/// `∂_j G`, `∂_k ⋆` and `∂_j ∂_k G` of the Hodge–Riemann structure.
pub fn higgs_checks(
    alg: &Arc<GradedAlgebra>,
    p: &ConePoint,
    j: usize,
    k: usize,
) -> Result<Vec<Outcome>> {
    let hp = HiggsPoint::<C>::new(alg, p)?;
    let n = hp.num_coords();
    let (ej, ek) = (unit(n, j), unit(n, k));
    let plus_j = structure_at(alg, &shifted(p, &[(1, &ej)]))?;
    let minus_j = structure_at(alg, &shifted(p, &[(-1, &ej)]))?;
    let c = 1.0 / (2.0 * h());

    let fd_g = combine_grams(&[(c, plus_j.grams()), (-c, minus_j.grams())]);
    let (d1, s1) = grams_diff(&hp.d_gram(j), &fd_g);

    let plus_k = structure_at(alg, &shifted(p, &[(1, &ek)]))?;
    let minus_k = structure_at(alg, &shifted(p, &[(-1, &ek)]))?;
    let fd_star = plus_k.star().sub(minus_k.star()).scale(&C::new(c, 0.0));
    let (d2, s2) = op_diff(&hp.d_star(k), &fd_star);

    let corners: Vec<LefschetzStructure<C>> = [(1, 1), (1, -1), (-1, 1), (-1, -1)]
        .iter()
        .map(|&(a, b)| structure_at(alg, &shifted(p, &[(a, &ej), (b, &ek)])))
        .collect::<Result<_>>()?;
    let c2 = 1.0 / (4.0 * h() * h());
    let fd_gg = combine_grams(&[
        (c2, corners[0].grams()),
        (-c2, corners[1].grams()),
        (-c2, corners[2].grams()),
        (c2, corners[3].grams()),
    ]);
    let (d3, s3) = grams_diff(&hp.d2_gram(j, k), &fd_gg);
    Ok(vec![
        outcome("higgs", &format!("d_gram[{j}]"), d1, s1),
        outcome("higgs", &format!("d_star[{k}]"), d2, s2),
        outcome("higgs", &format!("d2_gram[{j},{k}]"), d3, s3),
    ])
}

/// `∂_l G`, `∂_l ∂_{m̄} G` and `∂_m ∂_{m̄} G` of the Lu metric, where
/// `∂_l = ½ ∂/∂t^l` on functions of `t`.
pub fn metric_checks(
    alg: &Arc<GradedAlgebra>,
    p: &ConePoint,
    l: usize,
    m: usize,
) -> Result<Vec<Outcome>> {
    let hp = HiggsPoint::<C>::new(alg, p)?;
    let field = MetricField::compute(&hp, Flavor::Lu)?;
    let n = hp.num_coords();
    let (el, em) = (unit(n, l), unit(n, m));
    let gram_at = |moves: &[(i64, &[BigRational])]| -> Result<Matrix<C>> {
        Ok(
            MetricField::compute(&HiggsPoint::<C>::new(alg, &shifted(p, moves))?, Flavor::Lu)?
                .gram()
                .clone(),
        )
    };
    let first = |e: &[BigRational]| -> Result<Matrix<C>> {
        Ok(gram_at(&[(1, e)])?
            .sub(&gram_at(&[(-1, e)])?)
            .scale(&C::new(0.5 / (2.0 * h()), 0.0)))
    };
    let mixed = |a: &[BigRational], b: &[BigRational]| -> Result<Matrix<C>> {
        let s = gram_at(&[(1, a), (1, b)])?
            .sub(&gram_at(&[(1, a), (-1, b)])?)
            .sub(&gram_at(&[(-1, a), (1, b)])?)
            .add(&gram_at(&[(-1, a), (-1, b)])?);
        Ok(s.scale(&C::new(0.25 / (4.0 * h() * h()), 0.0)))
    };
    let pure = |a: &[BigRational]| -> Result<Matrix<C>> {
        let s = gram_at(&[(1, a)])?
            .sub(&field.gram().scale(&C::new(2.0, 0.0)))
            .add(&gram_at(&[(-1, a)])?);
        Ok(s.scale(&C::new(0.25 / (h() * h()), 0.0)))
    };
    // mixed derivatives vanish on products, so second derivatives share one scale
    let second = [field.dd(l, l), field.dd(l, m), field.dd(m, m)]
        .iter()
        .map(|x| x.max_magnitude())
        .fold(0.0, f64::max);
    let check = |name: String, jet: &Matrix<C>, fd: Matrix<C>, size: f64| {
        outcome("metric", &name, jet.max_abs_diff(&fd), size)
    };
    Ok(vec![
        check(
            format!("d[{l}]"),
            field.d(l),
            first(&el)?,
            field.d(l).max_magnitude(),
        ),
        check(
            format!("dd[{l},{m}]"),
            field.dd(l, m),
            mixed(&el, &em)?,
            second,
        ),
        check(format!("dd[{m},{m}]"), field.dd(m, m), pure(&em)?, second),
    ])
}

/// `(−log|X|)_{ζζ}`, `a_{η,ζ}` and `b_{ζη,λ}` at an `n = 2` point.
pub fn inequality_checks(
    alg: &Arc<GradedAlgebra>,
    p: &ConePoint,
    zeta: &[BigRational],
    eta: &[BigRational],
    lambda: &[BigRational],
) -> Result<Vec<Outcome>> {
    let to_c = |v: &[BigRational]| -> Vec<C> {
        v.iter()
            .map(|x| C::new(crate::scalar::ratio_to_f64(x), 0.0))
            .collect()
    };
    let t = p.coords::<C>();
    let (z, e, l) = (to_c(zeta), to_c(eta), to_c(lambda));

    let jz = DirectionalJet::<C>::build(alg, &t, &z, &z)?;
    let second = neg_log_second(&jz.volume());
    let neg_log = |moves: &[(i64, &[BigRational])]| -> Result<f64> {
        Ok(-structure_at(alg, &shifted(p, moves))?.volume().re.ln())
    };
    let fd_second =
        (neg_log(&[(1, zeta)])? - 2.0 * neg_log(&[])? + neg_log(&[(-1, zeta)])?) / (h() * h());

    let jzl = DirectionalJet::<C>::build(alg, &t, &z, &l)?;
    let lift = |v: &[C]| -> Vec<Jet2<C>> { v.iter().cloned().map(Jet2::constant).collect() };
    let js = jzl.structure();
    let ce = primitive_coeffs_in(js, &lift(&e))?;
    let cz = primitive_coeffs_in(js, &lift(&z))?;
    let a_deriv = *ce.a.part(JetPart::D1);
    let b_deriv = *b_pair(js, &cz.b, &ce.b).part(JetPart::D2);

    let a_at = |moves: &[(i64, &[BigRational])]| -> Result<C> {
        Ok(primitive_coeffs_in(&structure_at(alg, &shifted(p, moves))?, &e)?.a)
    };
    let b_at = |moves: &[(i64, &[BigRational])]| -> Result<C> {
        let s = structure_at(alg, &shifted(p, moves))?;
        let (bz, be) = (
            primitive_coeffs_in(&s, &z)?.b,
            primitive_coeffs_in(&s, &e)?.b,
        );
        Ok(b_pair(&s, &bz, &be))
    };
    let fd_a = (a_at(&[(1, zeta)])? - a_at(&[(-1, zeta)])?) / (2.0 * h());
    let fd_b = (b_at(&[(1, lambda)])? - b_at(&[(-1, lambda)])?) / (2.0 * h());
    Ok(vec![
        outcome(
            "inequality",
            "neg_log_volume_second",
            (second - fd_second).norm(),
            second.norm(),
        ),
        outcome(
            "inequality",
            "a_eta_zeta",
            (a_deriv - fd_a).norm(),
            a_deriv.norm(),
        ),
        outcome(
            "inequality",
            "b_zeta_eta_lambda",
            (b_deriv - fd_b).norm(),
            b_deriv.norm(),
        ),
    ])
}
