//! The Lefschetz package at one point `ω(t) = Σ t_j e_j` of the cone.
//!
//! Everything is built from a *Lefschetz frame* of each `H^{p,q}`: the
//! columns `ω_r·v` with `ω_r = ω^r/r!` and `v` running over a basis of the
//! primitive space `P^{p−r,q−r} = ker ω^{n−k'+1}` (`k' = p+q−2r`). Hard
//! Lefschetz is exactly the statement that these frames are bases. In frame
//! coordinates
//!
//! * `Λ(ω_r v) = (n−k'−r+1)·ω_{r−1} v`,
//! * `*(ω_r v) = i^{k'²}(−1)^{p−r}·ω_{n−k'−r} v`,
//!
//! and `h(u, v) = ∫ u·conj(*v)`. The frame and all operators are rational
//! functions of `t`, so building the structure over [`Jet2`](crate::jet::Jet2)
//! scalars yields their exact derivatives.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::GradedAlgebra;
use crate::error::{HodgeError, Result};
use crate::linalg::Matrix;
use crate::operator::{Bidegree, GradedOp};
use crate::scalar::{factorial, Field};

/// Matrix of `x ↦ e_j · x` for every `j`, exact.
pub fn e_operators(alg: &GradedAlgebra) -> Vec<GradedOp<crate::scalar::GaussRational>> {
    (0..alg.num_coords())
        .map(|j| {
            alg.cup_operator(alg.e_class(j))
                .expect("e_j is homogeneous")
        })
        .collect()
}

/// Applies a block operator to a full coordinate vector.
pub fn apply<F: Field>(alg: &GradedAlgebra, op: &GradedOp<F>, u: &[F]) -> Vec<F> {
    let mut out = vec![F::zero(); alg.rank()];
    for (s, t, m) in op.blocks() {
        let rs = alg.range(s);
        let rt = alg.range(t);
        let img = m.mul_vec(&u[rs]);
        for (k, v) in rt.zip(img) {
            out[k] = out[k].clone() + &v;
        }
    }
    out
}

/// `(r, base bidegree, index in the primitive basis)` of one frame column.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct FrameCol {
    pub r: usize,
    pub base: Bidegree,
    pub idx: usize,
}

#[derive(Clone, Debug)]
struct Frame<F> {
    cols: Vec<FrameCol>,
    matrix: Matrix<F>,
    inverse: Matrix<F>,
}

/// One term `u^r` of a Lefschetz decomposition.
#[derive(Clone, Debug, PartialEq)]
pub struct PrimitiveComponent<F> {
    pub r: usize,
    pub bidegree: Bidegree,
    /// Full coordinates of the primitive class `u^r`.
    pub class: Vec<F>,
}

/// `u = Σ_r ω_r·u^r` with each `u^r` primitive.
#[derive(Clone, Debug, PartialEq)]
pub struct PrimitiveDecomposition<F> {
    pub bidegree: Bidegree,
    pub components: Vec<PrimitiveComponent<F>>,
}

/// Outcome of the polarization test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polarization {
    pub hard_lefschetz: bool,
    /// Bidegrees whose Gram matrix of `h` is not positive-definite.
    pub non_positive: Vec<Bidegree>,
    pub reason: Option<String>,
}

impl Polarization {
    pub fn is_polarized(&self) -> bool {
        self.hard_lefschetz && self.non_positive.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct LefschetzStructure<F> {
    alg: Arc<GradedAlgebra>,
    t: Vec<F>,
    omega: Vec<F>,
    l: GradedOp<F>,
    primitive: BTreeMap<Bidegree, Matrix<F>>,
    frames: BTreeMap<Bidegree, Frame<F>>,
    lambda: GradedOp<F>,
    star: GradedOp<F>,
    gram: BTreeMap<Bidegree, Matrix<F>>,
    gram_inv: BTreeMap<Bidegree, Matrix<F>>,
}

/// `i^{k²}(−1)^a`.
fn star_sign<F: Field>(k: usize, a: usize) -> F {
    let base = if k.is_multiple_of(2) {
        F::one()
    } else {
        F::imag_unit()
    };
    if a.is_multiple_of(2) {
        base
    } else {
        -base
    }
}

impl<F: Field> LefschetzStructure<F> {
    /// Builds every operator at `ω(t)`; fails if hard Lefschetz fails.
    pub fn build(alg: &Arc<GradedAlgebra>, t: &[F]) -> Result<Self> {
        let ops = e_operators(alg);
        Self::build_with(alg, t, &ops)
    }

    /// As [`build`](Self::build) with precomputed [`e_operators`].
    pub fn build_with(
        alg: &Arc<GradedAlgebra>,
        t: &[F],
        e_ops: &[GradedOp<crate::scalar::GaussRational>],
    ) -> Result<Self> {
        if t.len() != alg.num_coords() {
            return Err(HodgeError::DimensionMismatch(format!(
                "point has {} coordinates, algebra has N = {}",
                t.len(),
                alg.num_coords()
            )));
        }
        let n = alg.n();
        let omega = alg.class_from_coords(t);

        let mut l = GradedOp::new();
        for s in alg.bidegrees() {
            let target = (s.0 + 1, s.1 + 1);
            if alg.dim(target) == 0 {
                continue;
            }
            let mut m = Matrix::zeros(alg.dim(target), alg.dim(s));
            for (tj, op) in t.iter().zip(e_ops) {
                if let Some((_, e)) = op.block(s) {
                    m = m.add(&e.map(|x| F::from_gauss(x) * tj));
                }
            }
            l.insert(s, target, m);
        }

        // L^m on block s, with its target; identity for m = 0.
        let power = |s: Bidegree, m: usize| -> Option<(Bidegree, Matrix<F>)> {
            let mut cur = s;
            let mut acc = Matrix::identity(alg.dim(s));
            for _ in 0..m {
                let (t, b) = l.block(cur)?;
                acc = b.mul(&acc);
                cur = t;
            }
            Some((cur, acc))
        };

        for s in alg.bidegrees() {
            let k = s.0 + s.1;
            if k > n {
                continue;
            }
            let ok = power(s, n - k).is_some_and(|(_, m)| m.is_square() && m.inverse().is_some());
            if !ok {
                return Err(HodgeError::HardLefschetzFails { bidegree: s });
            }
        }

        let mut primitive = BTreeMap::new();
        for s in alg.bidegrees() {
            let k = s.0 + s.1;
            if k > n {
                continue;
            }
            let basis = match power(s, n - k + 1) {
                Some((_, m)) => m.null_space(),
                None => Matrix::identity(alg.dim(s)),
            };
            primitive.insert(s, basis);
        }

        let mut frames = BTreeMap::new();
        for s in alg.bidegrees() {
            let (p, q) = s;
            let mut cols = Vec::new();
            let mut columns = Vec::new();
            for r in 0..=p.min(q) {
                let base = (p - r, q - r);
                let kp = base.0 + base.1;
                if kp > n || r > n - kp {
                    continue;
                }
                let Some(prim) = primitive.get(&base) else {
                    continue;
                };
                let Some((_, lr)) = power(base, r) else {
                    continue;
                };
                let scale = F::from_rational(&factorial(r).recip());
                let image = lr.mul(prim).scale(&scale);
                for idx in 0..prim.cols() {
                    cols.push(FrameCol { r, base, idx });
                    columns.push(image.column(idx));
                }
            }
            let d = alg.dim(s);
            if cols.len() != d {
                return Err(HodgeError::HardLefschetzFails { bidegree: s });
            }
            let matrix = Matrix::from_columns(d, &columns);
            let inverse = matrix
                .inverse()
                .ok_or(HodgeError::HardLefschetzFails { bidegree: s })?;
            frames.insert(
                s,
                Frame {
                    cols,
                    matrix,
                    inverse,
                },
            );
        }

        let position = |s: Bidegree, c: FrameCol| frames[&s].cols.iter().position(|x| *x == c);

        let mut lambda = GradedOp::new();
        for s in alg.bidegrees() {
            if s.0 == 0 || s.1 == 0 || alg.dim((s.0 - 1, s.1 - 1)) == 0 {
                continue;
            }
            let tgt = (s.0 - 1, s.1 - 1);
            let src_frame = &frames[&s];
            let mut d = Matrix::zeros(alg.dim(tgt), alg.dim(s));
            for (ci, c) in src_frame.cols.iter().enumerate() {
                if c.r == 0 {
                    continue;
                }
                let kp = c.base.0 + c.base.1;
                let coef = (n - kp - c.r + 1) as i64;
                let row = position(tgt, FrameCol { r: c.r - 1, ..*c }).expect("Λ target column");
                d[(row, ci)] = F::from_i64(coef);
            }
            lambda.insert(s, tgt, frames[&tgt].matrix.mul(&d).mul(&src_frame.inverse));
        }

        let mut star = GradedOp::new();
        for s in alg.bidegrees() {
            let tgt = (n - s.1, n - s.0);
            let src_frame = &frames[&s];
            let mut d = Matrix::zeros(alg.dim(tgt), alg.dim(s));
            for (ci, c) in src_frame.cols.iter().enumerate() {
                let kp = c.base.0 + c.base.1;
                let r2 = n - c.r - kp;
                let row = position(tgt, FrameCol { r: r2, ..*c }).expect("star target column");
                d[(row, ci)] = star_sign(kp, c.base.0);
            }
            star.insert(s, tgt, frames[&tgt].matrix.mul(&d).mul(&src_frame.inverse));
        }

        let mut gram = BTreeMap::new();
        let mut gram_inv = BTreeMap::new();
        for s in alg.bidegrees() {
            let (_, st) = star.block(s).expect("star block");
            let mirror = (n - s.1, n - s.0);
            let pair = alg.pairing_matrix(s).map(F::from_gauss);
            let conj = alg.conj_matrix(mirror).map(F::from_gauss);
            let g = pair.mul(&conj).mul(&st.conj());
            let gi = g.inverse().ok_or_else(|| HodgeError::NotPolarized {
                reason: format!("Gram matrix of h on H^{{{},{}}} is singular", s.0, s.1),
            })?;
            gram.insert(s, g);
            gram_inv.insert(s, gi);
        }

        Ok(LefschetzStructure {
            alg: Arc::clone(alg),
            t: t.to_vec(),
            omega,
            l,
            primitive,
            frames,
            lambda,
            star,
            gram,
            gram_inv,
        })
    }

    pub fn algebra(&self) -> &Arc<GradedAlgebra> {
        &self.alg
    }

    pub fn t(&self) -> &[F] {
        &self.t
    }

    /// Coordinates of `ω(t)`.
    pub fn omega(&self) -> &[F] {
        &self.omega
    }

    /// Cup product with `ω`.
    pub fn l(&self) -> &GradedOp<F> {
        &self.l
    }

    pub fn lambda(&self) -> &GradedOp<F> {
        &self.lambda
    }

    pub fn star(&self) -> &GradedOp<F> {
        &self.star
    }

    /// `τ = *∘*`.
    pub fn tau(&self) -> GradedOp<F> {
        self.star.compose(&self.star)
    }

    /// `Y = [ω, Λ]`.
    pub fn y(&self) -> GradedOp<F> {
        self.l.commutator(&self.lambda)
    }

    /// Gram matrix `G` of `h` on `H^{p,q}`: `h(u, v) = uᵀ G v̄`.
    pub fn gram(&self, bd: Bidegree) -> &Matrix<F> {
        &self.gram[&bd]
    }

    pub fn grams(&self) -> &BTreeMap<Bidegree, Matrix<F>> {
        &self.gram
    }

    pub fn gram_inverses(&self) -> &BTreeMap<Bidegree, Matrix<F>> {
        &self.gram_inv
    }

    /// Basis (columns) of the primitive subspace of `H^{a,b}`, `a + b ≤ n`.
    pub fn primitive_basis(&self, bd: Bidegree) -> Option<&Matrix<F>> {
        self.primitive.get(&bd)
    }

    pub fn frame(&self, bd: Bidegree) -> (&[FrameCol], &Matrix<F>) {
        let f = &self.frames[&bd];
        (&f.cols, &f.matrix)
    }

    /// `h`-adjoint of a block operator.
    pub fn adjoint(&self, op: &GradedOp<F>) -> GradedOp<F> {
        op.adjoint(&self.gram, &self.gram_inv)
    }

    /// Positive-definiteness of every Gram block.
    pub fn polarization(&self) -> Polarization {
        let non_positive: Vec<Bidegree> = self
            .gram
            .iter()
            .filter(|(_, g)| !F::hermitian_positive_definite(g))
            .map(|(bd, _)| *bd)
            .collect();
        let reason = non_positive
            .first()
            .map(|bd| format!("h is not positive-definite on H^{{{},{}}}", bd.0, bd.1));
        Polarization {
            hard_lefschetz: true,
            non_positive,
            reason,
        }
    }

    pub fn is_polarized(&self) -> bool {
        self.polarization().is_polarized()
    }

    fn homogeneous(&self, u: &[F]) -> Result<Option<Bidegree>> {
        if u.len() != self.alg.rank() {
            return Err(HodgeError::DimensionMismatch(format!(
                "{} coordinates for rank {}",
                u.len(),
                self.alg.rank()
            )));
        }
        self.alg.pure_bidegree(u)
    }

    /// Unique decomposition `u = Σ ω_r u^r` of a homogeneous class.
    pub fn primitive_decomposition(&self, u: &[F]) -> Result<PrimitiveDecomposition<F>> {
        let Some(bd) = self.homogeneous(u)? else {
            return Ok(PrimitiveDecomposition {
                bidegree: (0, 0),
                components: vec![],
            });
        };
        let frame = &self.frames[&bd];
        let coords = frame.inverse.mul_vec(&u[self.alg.range(bd)]);
        let mut by_r: BTreeMap<usize, (Bidegree, Vec<F>)> = BTreeMap::new();
        for (c, x) in frame.cols.iter().zip(coords) {
            let entry = by_r
                .entry(c.r)
                .or_insert_with(|| (c.base, vec![F::zero(); self.alg.rank()]));
            let prim = &self.primitive[&c.base];
            for (row, k) in self.alg.range(c.base).enumerate() {
                entry.1[k] = entry.1[k].clone() + &(prim[(row, c.idx)].clone() * &x);
            }
        }
        let components = by_r
            .into_iter()
            .filter(|(_, (_, class))| !class.iter().all(F::is_zero))
            .map(|(r, (bidegree, class))| PrimitiveComponent { r, bidegree, class })
            .collect();
        Ok(PrimitiveDecomposition {
            bidegree: bd,
            components,
        })
    }

    /// `ω_r · x`.
    pub fn omega_power_times(&self, r: usize, x: &[F]) -> Vec<F> {
        let mut v = x.to_vec();
        for _ in 0..r {
            v = apply(&self.alg, &self.l, &v);
        }
        let s = F::from_rational(&factorial(r).recip());
        v.into_iter().map(|c| c * &s).collect()
    }

    /// `Σ ω_r u^r`.
    pub fn reconstruct(&self, d: &PrimitiveDecomposition<F>) -> Vec<F> {
        let mut out = vec![F::zero(); self.alg.rank()];
        for c in &d.components {
            for (o, x) in out.iter_mut().zip(self.omega_power_times(c.r, &c.class)) {
                *o = o.clone() + &x;
            }
        }
        out
    }

    /// Splits a class into homogeneous parts.
    fn parts(&self, u: &[F]) -> Vec<Vec<F>> {
        self.alg
            .bidegrees()
            .into_iter()
            .filter_map(|bd| {
                let r = self.alg.range(bd);
                if u[r.clone()].iter().all(F::is_zero) {
                    return None;
                }
                let mut v = vec![F::zero(); u.len()];
                v[r.clone()].clone_from_slice(&u[r]);
                Some(v)
            })
            .collect()
    }

    /// `Λu` by decomposing `u` and applying `Λ(ω_r v) = (n−k'−r+1) ω_{r−1} v`.
    pub fn lambda_apply(&self, u: &[F]) -> Result<Vec<F>> {
        let n = self.alg.n();
        let mut out = vec![F::zero(); self.alg.rank()];
        for part in self.parts(u) {
            let d = self.primitive_decomposition(&part)?;
            for c in d.components.iter().filter(|c| c.r > 0) {
                let kp = c.bidegree.0 + c.bidegree.1;
                let coef = F::from_i64((n - kp - c.r + 1) as i64);
                for (o, x) in out
                    .iter_mut()
                    .zip(self.omega_power_times(c.r - 1, &c.class))
                {
                    *o = o.clone() + &(x * &coef);
                }
            }
        }
        Ok(out)
    }

    /// `*u = i^{k²} Σ_r (−1)^{p−r} ω_{n−k+r} u^r` for homogeneous `u` of
    /// bidegree `(p, q)`, `k = p + q`.
    pub fn hodge_star(&self, u: &[F]) -> Result<Vec<F>> {
        let n = self.alg.n();
        let mut out = vec![F::zero(); self.alg.rank()];
        let Some((p, q)) = self.homogeneous(u)? else {
            return Ok(out);
        };
        let k = p + q;
        let d = self.primitive_decomposition(u)?;
        for c in &d.components {
            let sign: F = star_sign(k, p - c.r);
            for (o, x) in out
                .iter_mut()
                .zip(self.omega_power_times(n + c.r - k, &c.class))
            {
                *o = o.clone() + &(x * &sign);
            }
        }
        Ok(out)
    }

    /// `h(u, v) = ∫ u · conj(*v)`, summed over bidegrees of `v`.
    pub fn metric_h(&self, u: &[F], v: &[F]) -> Result<F> {
        let mut acc = F::zero();
        for part in self.parts(v) {
            let sv = self.hodge_star(&part)?;
            let w = self.alg.mul(u, &self.alg.conjugate(&sv));
            acc = acc + &self.alg.integrate(&w);
        }
        Ok(acc)
    }

    /// `h(u, v)` from the Gram blocks: `Σ_bd u_bdᵀ G_bd conj(v_bd)`.
    pub fn metric_from_gram(&self, u: &[F], v: &[F]) -> F {
        let mut acc = F::zero();
        for (bd, g) in &self.gram {
            let r = self.alg.range(*bd);
            let vb: Vec<F> = v[r.clone()].iter().map(F::conj).collect();
            let gv = g.mul_vec(&vb);
            for (a, b) in u[r].iter().zip(gv) {
                acc = acc + &(a.clone() * &b);
            }
        }
        acc
    }

    /// `|X| = ∫ ω_n = h(1, 1)`.
    pub fn volume(&self) -> F {
        let u = self.alg.unit_index();
        let r = self.alg.range((0, 0));
        debug_assert_eq!(r.start, u);
        self.gram[&(0, 0)][(0, 0)].clone()
    }
}

/// Builds at `t` and reports hard Lefschetz and Hodge-Riemann positivity.
pub fn polarization_at<F: Field>(alg: &Arc<GradedAlgebra>, t: &[F]) -> Polarization {
    match LefschetzStructure::build(alg, t) {
        Ok(s) => s.polarization(),
        Err(e) => Polarization {
            hard_lefschetz: false,
            non_positive: vec![],
            reason: Some(e.to_string()),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{fixture, CohomClass};
    use crate::scalar::GaussRational;

    type Q = GaussRational;

    fn q(n: i64) -> Q {
        Q::from_i64(n)
    }

    fn qr(n: i64, d: i64) -> Q {
        Q::from_ratio(n, d)
    }

    fn setup(name: &str, t: &[i64]) -> (Arc<GradedAlgebra>, LefschetzStructure<Q>) {
        let alg = Arc::new(fixture(name).unwrap());
        let t: Vec<Q> = t.iter().map(|&x| q(x)).collect();
        let s = LefschetzStructure::build(&alg, &t).unwrap();
        (alg, s)
    }

    fn label(alg: &Arc<GradedAlgebra>, l: &str) -> Vec<Q> {
        CohomClass::<Q>::by_label(alg, l).unwrap().into_coeffs()
    }

    fn combo(alg: &Arc<GradedAlgebra>, terms: &[(Q, &str)]) -> Vec<Q> {
        let mut out = vec![q(0); alg.rank()];
        for (c, l) in terms {
            for (o, x) in out.iter_mut().zip(label(alg, l)) {
                *o = o.clone() + &(x * c);
            }
        }
        out
    }

    #[test]
    fn p2_lefschetz_operator() {
        let (alg, s) = setup("p2", &[2]);
        let one = label(&alg, "1");
        assert_eq!(apply(&alg, s.l(), &one), combo(&alg, &[(q(2), "h")]));
        assert_eq!(
            apply(&alg, s.l(), &label(&alg, "h")),
            combo(&alg, &[(q(2), "h^2")])
        );
    }

    #[test]
    fn p1xp1_lefschetz_operator() {
        let (alg, s) = setup("p1xp1", &[1, 1]);
        let f = label(&alg, "h1*h2");
        assert_eq!(apply(&alg, s.l(), &label(&alg, "h1")), f);
        assert_eq!(apply(&alg, s.l(), &label(&alg, "h2")), f);
    }

    #[test]
    fn zero_class_fails_hard_lefschetz() {
        let alg = Arc::new(fixture("p2").unwrap());
        let err = LefschetzStructure::build(&alg, &[q(0)]).unwrap_err();
        assert!(matches!(err, HodgeError::HardLefschetzFails { .. }));
        assert!(!polarization_at(&alg, &[q(0)]).is_polarized());
    }

    #[test]
    fn polarization_examples() {
        let alg = Arc::new(fixture("p2").unwrap());
        assert!(polarization_at(&alg, &[q(1)]).is_polarized());
        let alg = Arc::new(fixture("p1xp1").unwrap());
        let p = polarization_at(&alg, &[q(1), q(-1)]);
        assert!(p.hard_lefschetz);
        assert!(!p.is_polarized());
        assert!(p.non_positive.contains(&(0, 0)));
    }

    #[test]
    fn p2_decomposition_of_h() {
        let (alg, s) = setup("p2", &[2]);
        let d = s.primitive_decomposition(&label(&alg, "h")).unwrap();
        assert_eq!(d.components.len(), 1);
        assert_eq!(d.components[0].r, 1);
        assert_eq!(d.components[0].class, combo(&alg, &[(qr(1, 2), "1")]));
    }

    #[test]
    fn p1xp1_decomposition_of_e1() {
        let (alg, s) = setup("p1xp1", &[1, 1]);
        let d = s.primitive_decomposition(&label(&alg, "h1")).unwrap();
        let prim = combo(&alg, &[(qr(1, 2), "h1"), (qr(-1, 2), "h2")]);
        assert_eq!(
            d.components[0],
            PrimitiveComponent {
                r: 0,
                bidegree: (1, 1),
                class: prim.clone()
            }
        );
        assert_eq!(d.components[1].class, combo(&alg, &[(qr(1, 2), "1")]));
        let d = s.primitive_decomposition(&prim).unwrap();
        assert_eq!(
            d.components,
            vec![PrimitiveComponent {
                r: 0,
                bidegree: (1, 1),
                class: prim
            }]
        );
    }

    #[test]
    fn p2_lambda_examples() {
        let (alg, s) = setup("p2", &[1]);
        assert_eq!(
            s.lambda_apply(&label(&alg, "h")).unwrap(),
            combo(&alg, &[(q(2), "1")])
        );
        // Λ(ω²/2) = ω at t = 1.
        let w2 = combo(&alg, &[(qr(1, 2), "h^2")]);
        assert_eq!(s.lambda_apply(&w2).unwrap(), label(&alg, "h"));
        assert_eq!(apply(&alg, s.lambda(), &w2), label(&alg, "h"));
    }

    #[test]
    fn star_examples() {
        let (alg, s) = setup("p2", &[3]);
        assert_eq!(
            s.hodge_star(&label(&alg, "1")).unwrap(),
            combo(&alg, &[(qr(9, 2), "h^2")])
        );
        assert_eq!(s.hodge_star(&label(&alg, "h")).unwrap(), label(&alg, "h"));
        let (alg, s) = setup("p1xp1", &[1, 1]);
        let prim = combo(&alg, &[(q(1), "h1"), (q(-1), "h2")]);
        let neg: Vec<Q> = prim.iter().map(|c| -c.clone()).collect();
        assert_eq!(s.hodge_star(&prim).unwrap(), neg);
    }

    #[test]
    fn metric_examples() {
        let (alg, s) = setup("p2", &[2]);
        let one = label(&alg, "1");
        let h = label(&alg, "h");
        assert_eq!(s.metric_h(&one, &one).unwrap(), q(2));
        assert_eq!(s.metric_h(&h, &h).unwrap(), q(1));
        assert_eq!(s.volume(), q(2));
        let (alg, s) = setup("p1xp1", &[1, 1]);
        let e1 = label(&alg, "h1");
        assert_eq!(s.metric_h(&e1, &e1).unwrap(), q(1));
        assert_eq!(s.metric_from_gram(&e1, &e1), q(1));
    }

    #[test]
    fn sl2_and_tau_on_torus() {
        let (alg, s) = setup("torus2", &[1, 1, 1, 1]);
        let n = alg.n() as i64;
        let y = s.y();
        let tau = s.tau();
        for bd in alg.bidegrees() {
            let k = (bd.0 + bd.1) as i64;
            let d = alg.dim(bd);
            let zero = Matrix::zeros(d, d);
            let yb = y.block(bd).map_or(&zero, |(_, m)| m);
            assert_eq!(yb, &Matrix::identity(d).scale(&q(k - n)), "Y on {bd:?}");
            let (_, tb) = tau.block(bd).unwrap();
            let sign = if k % 2 == 0 { 1 } else { -1 };
            assert_eq!(tb, &Matrix::identity(d).scale(&q(sign)), "τ on {bd:?}");
        }
        let two = q(2);
        assert!(y.commutator(s.l()).sub(&s.l().scale(&two)).is_zero());
        assert!(y
            .commutator(s.lambda())
            .add(&s.lambda().scale(&two))
            .is_zero());
        assert!(s.is_polarized());
    }
}
