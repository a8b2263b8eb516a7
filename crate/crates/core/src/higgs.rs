//! The Higgs bundle `H = ⊕ H^{p,q}` over the complexified Kähler cone.
//!
//! Points are `z^j = t^j + i s^j`; nothing depends on `s`, so holomorphic
//! derivatives are `∂/∂z^j = ½ ∂/∂t^j` on all bundle data. With respect to
//! the constant frame given by the algebra basis:
//!
//! * `θ_j` is cup product with `½ e_j`; `θ_j^*` is its `h(t)`-adjoint.
//! * The Chern connection is `A_j = ½ (∂_j G · G⁻¹)ᵀ` per bidegree, where
//!   `G` is the Gram matrix of `h(u, v) = uᵀ G v̄`. It agrees with the
//!   commutator `[Λ, θ_j]`.
//! * The curvature coefficient is `Θ_{jk̄} = −½ ∂_k A_j`, i.e.
//!   `−¼ (∂_k∂_j G · G⁻¹ − ∂_j G · G⁻¹ · ∂_k G · G⁻¹)ᵀ`.
//!
//! In a real direction `ζ` the conventions drop the halves: `θ_ζ` is cup
//! product with `Σ ζ^j e_j` and `(Θ_ζζ u, u) = uᵀ(−G'' + G' G⁻¹ G')ū`.
//!
//! All derivatives come from building the [`LefschetzStructure`] over
//! [`Jet2`] scalars, so in exact mode every identity is checked with zero
//! tolerance.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use crate::algebra::GradedAlgebra;
use crate::error::{HodgeError, Result};
use crate::jet::{Jet2, JetPart};
use crate::lefschetz::{e_operators, LefschetzStructure};
use crate::linalg::Matrix;
use crate::operator::{Bidegree, GradedOp};
use crate::report::{op_outcome, scalar_outcome, scaled_op_outcome, scaled_outcome, Outcome};
use crate::scalar::{format_rational, Field, GaussRational};

/// A point `z = t + i s` of the complexified cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConePoint {
    pub t: Vec<BigRational>,
    /// Imaginary part. Stored for completeness; no operator reads it.
    pub s: Vec<BigRational>,
}

impl ConePoint {
    pub fn new(t: Vec<BigRational>) -> Self {
        let s = vec![BigRational::zero(); t.len()];
        ConePoint { t, s }
    }

    pub fn from_ints(t: &[i64]) -> Self {
        Self::new(
            t.iter()
                .map(|&x| BigRational::from_integer(x.into()))
                .collect(),
        )
    }

    pub fn with_imaginary(t: Vec<BigRational>, s: Vec<BigRational>) -> Self {
        ConePoint { t, s }
    }

    pub fn coords<F: Field>(&self) -> Vec<F> {
        self.t.iter().map(F::from_rational).collect()
    }

    /// `t` as `"p/q"` strings.
    pub fn labels(&self) -> Vec<String> {
        self.t.iter().map(format_rational).collect()
    }
}

/// `θ_j`: cup product with `½ e_j`.
pub fn higgs_theta(alg: &GradedAlgebra, j: usize) -> Result<GradedOp<GaussRational>> {
    check_index(alg, j)?;
    let half = GaussRational::from_ratio(1, 2);
    let class: Vec<GaussRational> = alg.e_class(j).iter().map(|c| c.clone() * &half).collect();
    alg.cup_operator(&class)
}

/// Cup product with the complex conjugate of `½ e_j`.
pub fn conj_theta(alg: &GradedAlgebra, j: usize) -> Result<GradedOp<GaussRational>> {
    check_index(alg, j)?;
    let half = GaussRational::from_ratio(1, 2);
    let class: Vec<GaussRational> = alg.e_class(j).iter().map(|c| c.clone() * &half).collect();
    alg.cup_operator(&alg.conjugate(&class))
}

/// `θ_ζ`: cup product with `Σ ζ^j e_j` (real-direction convention).
pub fn real_theta(alg: &GradedAlgebra, zeta: &[BigRational]) -> Result<GradedOp<GaussRational>> {
    check_direction(alg, zeta)?;
    let z: Vec<GaussRational> = zeta
        .iter()
        .map(|x| GaussRational::real(x.clone()))
        .collect();
    alg.cup_operator(&alg.class_from_coords(&z))
}

fn check_index(alg: &GradedAlgebra, j: usize) -> Result<()> {
    if j >= alg.num_coords() {
        return Err(HodgeError::InvalidParameter(format!(
            "direction index {j} out of range (N = {})",
            alg.num_coords()
        )));
    }
    Ok(())
}

pub(crate) fn check_direction(alg: &GradedAlgebra, zeta: &[BigRational]) -> Result<()> {
    if zeta.len() != alg.num_coords() {
        return Err(HodgeError::DimensionMismatch(format!(
            "direction has {} components, N = {}",
            zeta.len(),
            alg.num_coords()
        )));
    }
    if zeta.iter().all(Zero::is_zero) {
        return Err(HodgeError::ZeroDirection);
    }
    Ok(())
}

/// `e_j` as a coordinate vector.
pub fn unit_vector<F: Field>(len: usize, j: usize) -> Vec<F> {
    (0..len)
        .map(|i| if i == j { F::one() } else { F::zero() })
        .collect()
}

/// The point `t + ε₁ a + ε₂ b` in jet scalars.
pub fn seed<F: Field>(t: &[F], a: &[F], b: &[F]) -> Vec<Jet2<F>> {
    t.iter()
        .zip(a)
        .zip(b)
        .map(|((t, a), b)| Jet2::variable(t.clone(), a.clone(), b.clone()))
        .collect()
}

pub fn part_op<F: Field>(op: &GradedOp<Jet2<F>>, p: JetPart) -> GradedOp<F> {
    op.convert(|x| x.part(p).clone())
}

pub fn part_matrix<F: Field>(m: &Matrix<Jet2<F>>, p: JetPart) -> Matrix<F> {
    m.map(|x| x.part(p).clone())
}

fn to_field_op<F: Field>(op: &GradedOp<GaussRational>) -> GradedOp<F> {
    op.convert(F::from_gauss)
}

/// Lefschetz structure seeded along two directions.
#[derive(Clone, Debug)]
pub struct DirectionalJet<F: Field> {
    s: LefschetzStructure<Jet2<F>>,
}

impl<F: Field> DirectionalJet<F> {
    pub fn build(alg: &Arc<GradedAlgebra>, t: &[F], a: &[F], b: &[F]) -> Result<Self> {
        Self::build_with(alg, t, a, b, &e_operators(alg))
    }

    pub fn build_with(
        alg: &Arc<GradedAlgebra>,
        t: &[F],
        a: &[F],
        b: &[F],
        e_ops: &[GradedOp<GaussRational>],
    ) -> Result<Self> {
        Ok(DirectionalJet {
            s: LefschetzStructure::build_with(alg, &seed(t, a, b), e_ops)?,
        })
    }

    pub fn structure(&self) -> &LefschetzStructure<Jet2<F>> {
        &self.s
    }

    pub fn gram(&self, bd: Bidegree, p: JetPart) -> Matrix<F> {
        part_matrix(self.s.gram(bd), p)
    }

    pub fn gram_value_inverse(&self, bd: Bidegree) -> Matrix<F> {
        part_matrix(&self.s.gram_inverses()[&bd], JetPart::Value)
    }

    /// `(Θ_ζζ u, u) = uᵀ(−G'' + G' G⁻¹ G')ū` on one bidegree, with both
    /// seeds equal to `ζ`; `u` in block coordinates.
    pub fn curvature_pairing(&self, bd: Bidegree, u: &[F]) -> F {
        let g1 = self.gram(bd, JetPart::D1);
        let g2 = self.gram(bd, JetPart::D12);
        let gi = self.gram_value_inverse(bd);
        let m = g1.mul(&gi).mul(&g1).sub(&g2);
        bilinear(&m, u)
    }

    /// `‖∂^h_ζ u‖² = uᵀ G' G⁻¹ G' ū` for a constant section `u`.
    pub fn chern_norm_sq(&self, bd: Bidegree, u: &[F]) -> F {
        let g1 = self.gram(bd, JetPart::D1);
        let gi = self.gram_value_inverse(bd);
        bilinear(&g1.mul(&gi).mul(&g1), u)
    }

    /// `h(u, u)` of a constant section, with both derivative slots.
    pub fn norm_sq_jet(&self, bd: Bidegree, u: &[F]) -> Jet2<F> {
        let uj: Vec<Jet2<F>> = u.iter().cloned().map(Jet2::constant).collect();
        bilinear(self.s.gram(bd), &uj)
    }

    /// `|X| = h(1, 1)` with derivatives.
    pub fn volume(&self) -> Jet2<F> {
        self.s.volume()
    }
}

/// `uᵀ M ū`.
pub fn bilinear<F: Field>(m: &Matrix<F>, u: &[F]) -> F {
    let ub: Vec<F> = u.iter().map(F::conj).collect();
    let mu = m.mul_vec(&ub);
    u.iter()
        .zip(mu)
        .fold(F::zero(), |acc, (a, b)| acc + &(a.clone() * &b))
}

/// Which jet slot carries a requested derivative.
#[derive(Clone, Copy, Debug)]
struct Slot {
    key: (usize, usize),
    dj: JetPart,
    dk: JetPart,
    djk: JetPart,
}

/// Everything about the bundle at one cone point: the Lefschetz structure,
/// `θ_j`, `θ_j^*`, and jets of the structure along every pair of
/// coordinate directions.
#[derive(Clone, Debug)]
pub struct HiggsPoint<F: Field> {
    point: ConePoint,
    base: LefschetzStructure<F>,
    theta: Vec<GradedOp<F>>,
    theta_conj: Vec<GradedOp<F>>,
    theta_adj: Vec<GradedOp<F>>,
    jets: BTreeMap<(usize, usize), LefschetzStructure<Jet2<F>>>,
}

impl<F: Field> HiggsPoint<F> {
    /// Fails with [`HodgeError::NotPolarized`] off the cone.
    pub fn new(alg: &Arc<GradedAlgebra>, point: &ConePoint) -> Result<Self> {
        let e_ops = e_operators(alg);
        let t: Vec<F> = point.coords();
        let base = LefschetzStructure::build_with(alg, &t, &e_ops).map_err(|e| match e {
            HodgeError::HardLefschetzFails { .. } => HodgeError::NotPolarized {
                reason: e.to_string(),
            },
            other => other,
        })?;
        let pol = base.polarization();
        if !pol.is_polarized() {
            return Err(HodgeError::NotPolarized {
                reason: pol.reason.unwrap_or_default(),
            });
        }
        let nc = alg.num_coords();
        let theta: Vec<GradedOp<F>> = (0..nc)
            .map(|j| higgs_theta(alg, j).map(|op| to_field_op(&op)))
            .collect::<Result<_>>()?;
        let theta_conj: Vec<GradedOp<F>> = (0..nc)
            .map(|j| conj_theta(alg, j).map(|op| to_field_op(&op)))
            .collect::<Result<_>>()?;
        let theta_adj = theta.iter().map(|op| base.adjoint(op)).collect();

        let keys: Vec<(usize, usize)> = if nc == 1 {
            vec![(0, 0)]
        } else {
            (0..nc)
                .flat_map(|j| (j + 1..nc).map(move |k| (j, k)))
                .collect()
        };
        let jets = keys
            .into_par_iter()
            .map(|(j, k)| {
                let s = LefschetzStructure::build_with(
                    alg,
                    &seed(&t, &unit_vector(nc, j), &unit_vector(nc, k)),
                    &e_ops,
                )?;
                Ok(((j, k), s))
            })
            .collect::<Result<BTreeMap<_, _>>>()?;
        Ok(HiggsPoint {
            point: point.clone(),
            base,
            theta,
            theta_conj,
            theta_adj,
            jets,
        })
    }

    pub fn algebra(&self) -> &Arc<GradedAlgebra> {
        self.base.algebra()
    }

    pub fn point(&self) -> &ConePoint {
        &self.point
    }

    pub fn structure(&self) -> &LefschetzStructure<F> {
        &self.base
    }

    pub fn num_coords(&self) -> usize {
        self.theta.len()
    }

    pub fn theta(&self, j: usize) -> &GradedOp<F> {
        &self.theta[j]
    }

    pub fn theta_adjoint(&self, j: usize) -> &GradedOp<F> {
        &self.theta_adj[j]
    }

    fn slot(&self, j: usize, k: usize) -> Slot {
        let nc = self.num_coords();
        if nc == 1 {
            return Slot {
                key: (0, 0),
                dj: JetPart::D1,
                dk: JetPart::D2,
                djk: JetPart::D12,
            };
        }
        if j != k {
            let key = (j.min(k), j.max(k));
            let side = |x| if x == key.0 { JetPart::D1 } else { JetPart::D2 };
            return Slot {
                key,
                dj: side(j),
                dk: side(k),
                djk: JetPart::D12,
            };
        }
        if j + 1 < nc {
            Slot {
                key: (j, j + 1),
                dj: JetPart::D1,
                dk: JetPart::D1,
                djk: JetPart::D11,
            }
        } else {
            Slot {
                key: (j - 1, j),
                dj: JetPart::D2,
                dk: JetPart::D2,
                djk: JetPart::D22,
            }
        }
    }

    /// Jet structure whose slots carry `∂/∂t^j`, `∂/∂t^k` and `∂²/∂t^j∂t^k`.
    pub fn jet_slot(
        &self,
        j: usize,
        k: usize,
    ) -> (&LefschetzStructure<Jet2<F>>, JetPart, JetPart, JetPart) {
        let sl = self.slot(j, k);
        (&self.jets[&sl.key], sl.dj, sl.dk, sl.djk)
    }

    /// Pairs `(j, k)` for which a jet structure was built.
    pub fn jet_keys(&self) -> Vec<(usize, usize)> {
        self.jets.keys().copied().collect()
    }

    fn jet(&self, j: usize) -> (&LefschetzStructure<Jet2<F>>, JetPart) {
        let s = self.slot(j, j);
        (&self.jets[&s.key], s.dj)
    }

    /// `∂G/∂t^j` per bidegree.
    pub fn d_gram(&self, j: usize) -> BTreeMap<Bidegree, Matrix<F>> {
        let (s, p) = self.jet(j);
        s.grams()
            .iter()
            .map(|(bd, g)| (*bd, part_matrix(g, p)))
            .collect()
    }

    /// `∂²G/∂t^j∂t^k` per bidegree.
    pub fn d2_gram(&self, j: usize, k: usize) -> BTreeMap<Bidegree, Matrix<F>> {
        let sl = self.slot(j, k);
        self.jets[&sl.key]
            .grams()
            .iter()
            .map(|(bd, g)| (*bd, part_matrix(g, sl.djk)))
            .collect()
    }

    /// `∂*/∂t^j`.
    pub fn d_star(&self, j: usize) -> GradedOp<F> {
        let (s, p) = self.jet(j);
        part_op(s.star(), p)
    }

    /// `∂Λ/∂t^j`.
    pub fn d_lambda(&self, j: usize) -> GradedOp<F> {
        let (s, p) = self.jet(j);
        part_op(s.lambda(), p)
    }

    /// `∂θ_j^*/∂t^k`.
    pub fn d_theta_adjoint(&self, j: usize, k: usize) -> GradedOp<F> {
        let sl = self.slot(j, k);
        let s = &self.jets[&sl.key];
        let th = self.theta[j].convert(|x| Jet2::constant(x.clone()));
        part_op(&s.adjoint(&th), sl.dk)
    }

    /// `[Λ, θ_j]`.
    pub fn connection(&self, j: usize) -> GradedOp<F> {
        self.base.lambda().commutator(&self.theta[j])
    }

    /// `½ (∂_j G · G⁻¹)ᵀ` per bidegree.
    pub fn chern_connection(&self, j: usize) -> GradedOp<F> {
        let half = F::from_gauss(&GaussRational::from_ratio(1, 2));
        let mut out = GradedOp::new();
        for (bd, dg) in self.d_gram(j) {
            let a = dg
                .mul(&self.base.gram_inverses()[&bd])
                .transpose()
                .scale(&half);
            out.insert(bd, bd, a);
        }
        out
    }

    /// `Θ_{jk̄} = −¼ (∂_k∂_j G · G⁻¹ − ∂_j G · G⁻¹ · ∂_k G · G⁻¹)ᵀ`.
    pub fn curvature(&self, j: usize, k: usize) -> GradedOp<F> {
        let quarter = F::from_gauss(&GaussRational::from_ratio(-1, 4));
        let dj = self.d_gram(j);
        let dk = self.d_gram(k);
        let djk = self.d2_gram(j, k);
        let mut out = GradedOp::new();
        for (bd, gi) in self.base.gram_inverses() {
            let first = djk[bd].mul(gi);
            let second = dj[bd].mul(gi).mul(&dk[bd]).mul(gi);
            out.insert(*bd, *bd, first.sub(&second).transpose().scale(&quarter));
        }
        out
    }

    /// `½ ∂*/∂t^j = * [Λ, θ_j]`.
    pub fn verify_fundamental_identity(&self, j: usize) -> Outcome {
        let half = F::from_gauss(&GaussRational::from_ratio(1, 2));
        let lhs = self.d_star(j).scale(&half);
        let rhs = self.base.star().compose(&self.connection(j));
        op_outcome("fundamental_identity", &format!("j={}", j + 1), &lhs, &rhs)
    }

    /// `θ_k^* = −½ ∂Λ/∂t^k` and `θ_k^* = −½ [Λ, [Λ, θ̄_k]]`.
    pub fn verify_adjoint_identity(&self, k: usize) -> Vec<Outcome> {
        let mhalf = F::from_gauss(&GaussRational::from_ratio(-1, 2));
        let lam = self.base.lambda();
        let a = self.d_lambda(k).scale(&mhalf);
        let b = lam
            .commutator(&lam.commutator(&self.theta_conj[k]))
            .scale(&mhalf);
        let detail = format!("k={}", k + 1);
        vec![
            op_outcome("adjoint_identity_a", &detail, &self.theta_adj[k], &a),
            op_outcome("adjoint_identity_b", &detail, &self.theta_adj[k], &b),
        ]
    }

    /// `[Λ, θ_j]` equals the Chern connection.
    pub fn verify_connection_forms(&self, j: usize) -> Outcome {
        op_outcome(
            "connection_forms",
            &format!("j={}", j + 1),
            &self.connection(j),
            &self.chern_connection(j),
        )
    }

    /// The three flatness families for every `(j, k)`. Float residuals are
    /// relative to the product of the factor sizes, since mixed terms
    /// vanish identically on products.
    pub fn verify_flatness(&self) -> Vec<Outcome> {
        let nc = self.num_coords();
        let chern: Vec<GradedOp<F>> = (0..nc).map(|j| self.chern_connection(j)).collect();
        let mut families: [Vec<(String, GradedOp<F>, GradedOp<F>)>; 3] = Default::default();
        for j in 0..nc {
            for k in 0..nc {
                let detail = format!("j={},k={}", j + 1, k + 1);
                families[0].push((
                    detail.clone(),
                    self.curvature(j, k),
                    self.theta_adj[k].commutator(&self.theta[j]),
                ));
                if j < k {
                    families[1].push((
                        detail.clone(),
                        self.d_theta_adjoint(j, k),
                        self.d_theta_adjoint(k, j),
                    ));
                    families[2].push((
                        detail,
                        chern[j].commutator(&self.theta[k]),
                        chern[k].commutator(&self.theta[j]),
                    ));
                }
            }
        }
        let size =
            |ops: &[GradedOp<F>]| ops.iter().map(GradedOp::max_magnitude).fold(0.0, f64::max);
        let (st, sa, sc) = (size(&self.theta), size(&self.theta_adj), size(&chern));
        let mut out = vec![];
        for ((id, fam), factor) in ["flatness_i", "flatness_ii", "flatness_iii"]
            .iter()
            .zip(&families)
            .zip([sa * st, sa * sc, sc * st])
        {
            let scale = fam
                .iter()
                .map(|(_, l, r)| l.max_magnitude().max(r.max_magnitude()))
                .fold(factor, f64::max);
            out.extend(
                fam.iter()
                    .map(|(d, l, r)| scaled_op_outcome(id, d, l, r, scale)),
            );
        }
        out
    }

    /// `θ` raises, `θ^*` lowers bidegree by `(1,1)`; `A` and `Θ` preserve it.
    pub fn verify_grading(&self) -> Vec<Outcome> {
        let nc = self.num_coords();
        let mut out = vec![];
        for j in 0..nc {
            let ok = self.theta[j].has_shift(1, 1)
                && self.theta_adj[j].has_shift(-1, -1)
                && self.chern_connection(j).has_shift(0, 0)
                && (0..nc).all(|k| self.curvature(j, k).has_shift(0, 0));
            out.push(Outcome::new("grading", format!("j={}", j + 1), 0.0, ok));
        }
        out
    }

    /// Block-diagonality of `θ`, `θ^*`, `A`, `Θ` along `p − q`.
    pub fn verify_subbundles(&self) -> Outcome {
        let split = subbundle_split(self.algebra());
        let nc = self.num_coords();
        let ok = (0..nc).all(|j| {
            split.preserves(&self.theta[j])
                && split.preserves(&self.theta_adj[j])
                && split.preserves(&self.chern_connection(j))
                && (0..nc).all(|k| split.preserves(&self.curvature(j, k)))
        });
        let ranks: Vec<String> = split
            .ranks()
            .iter()
            .map(|(k, r)| format!("{k}:{r}"))
            .collect();
        Outcome::new("subbundle_split", ranks.join(","), 0.0, ok)
    }

    /// `h(u, θ_j^* v) = h(θ_j u, v)` for basis vectors.
    pub fn verify_adjoint_definition(&self, j: usize) -> Outcome {
        let alg = self.algebra();
        let rank = alg.rank();
        let mut pairs = vec![];
        for a in 0..rank {
            let u = unit_vector::<F>(rank, a);
            let tu = crate::lefschetz::apply(alg, &self.theta[j], &u);
            for b in 0..rank {
                let v = unit_vector::<F>(rank, b);
                let tv = crate::lefschetz::apply(alg, &self.theta_adj[j], &v);
                pairs.push((
                    self.base.metric_from_gram(&tu, &v),
                    self.base.metric_from_gram(&u, &tv),
                ));
            }
        }
        let scale = pairs
            .iter()
            .map(|(l, r)| l.magnitude().max(r.magnitude()))
            .fold(0.0, f64::max);
        let mut worst = 0.0f64;
        let mut pass = true;
        for (l, r) in &pairs {
            let o = scaled_outcome("", "", l, r, scale);
            worst = worst.max(o.residual);
            pass &= o.pass;
        }
        Outcome::new("adjoint_definition", format!("j={}", j + 1), worst, pass)
    }

    /// Every holomorphic-direction identity at this point.
    pub fn verify_all(&self) -> Vec<Outcome> {
        let nc = self.num_coords();
        let mut out = vec![];
        for j in 0..nc {
            out.push(self.verify_fundamental_identity(j));
            out.extend(self.verify_adjoint_identity(j));
            out.push(self.verify_connection_forms(j));
            out.push(self.verify_adjoint_definition(j));
        }
        out.extend(self.verify_flatness());
        out.extend(self.verify_grading());
        out.push(self.verify_subbundles());
        out
    }
}

/// `((Θ_ζζ·1, 1), ‖θ_ζ‖²)` in the real-direction convention.
pub fn h00_curvature<F: Field>(
    alg: &Arc<GradedAlgebra>,
    point: &ConePoint,
    zeta: &[BigRational],
) -> Result<(F, F)> {
    check_direction(alg, zeta)?;
    let t: Vec<F> = point.coords();
    let z: Vec<F> = zeta.iter().map(F::from_rational).collect();
    let jet = DirectionalJet::build(alg, &t, &z, &z)?;
    let base = LefschetzStructure::build(alg, &t)?;
    if !base.is_polarized() {
        return Err(HodgeError::NotPolarized {
            reason: base.polarization().reason.unwrap_or_default(),
        });
    }
    let curv = jet.curvature_pairing((0, 0), &[F::one()]);
    let theta1 = alg.class_from_coords(&z);
    Ok((curv, base.metric_from_gram(&theta1, &theta1)))
}

/// `(Θ_ζζ·1, 1) = ‖θ_ζ‖²` as an outcome.
pub fn verify_h00_positivity<F: Field>(
    alg: &Arc<GradedAlgebra>,
    point: &ConePoint,
    zeta: &[BigRational],
) -> Result<Vec<Outcome>> {
    let (curv, norm) = h00_curvature::<F>(alg, point, zeta)?;
    let detail = format!(
        "zeta=({})",
        zeta.iter()
            .map(format_rational)
            .collect::<Vec<_>>()
            .join(",")
    );
    let positive = norm.to_c64().re > 0.0;
    Ok(vec![
        scalar_outcome("h00_curvature", &detail, &curv, &norm),
        Outcome::new("h00_positive", detail, 0.0, positive),
    ])
}

/// Partition of the basis by `k = p − q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubbundleSplit {
    pub blocks: BTreeMap<isize, Vec<usize>>,
    degree_of: Vec<isize>,
    bidegree_offset: BTreeMap<Bidegree, isize>,
}

impl SubbundleSplit {
    pub fn ranks(&self) -> Vec<(isize, usize)> {
        self.blocks.iter().map(|(k, v)| (*k, v.len())).collect()
    }

    pub fn weight_of(&self, index: usize) -> isize {
        self.degree_of[index]
    }

    /// True when every nonzero block of `op` stays inside one `H^k`.
    pub fn preserves<F: Field>(&self, op: &GradedOp<F>) -> bool {
        op.blocks()
            .all(|(s, t, m)| m.is_zero() || self.bidegree_offset[&s] == self.bidegree_offset[&t])
    }
}

pub fn subbundle_split(alg: &GradedAlgebra) -> SubbundleSplit {
    let mut blocks: BTreeMap<isize, Vec<usize>> = BTreeMap::new();
    let mut degree_of = vec![0; alg.rank()];
    let mut bidegree_offset = BTreeMap::new();
    for bd in alg.bidegrees() {
        let k = bd.0 as isize - bd.1 as isize;
        bidegree_offset.insert(bd, k);
        for i in alg.range(bd) {
            blocks.entry(k).or_default().push(i);
            degree_of[i] = k;
        }
    }
    SubbundleSplit {
        blocks,
        degree_of,
        bidegree_offset,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::fixture;
    use num_complex::Complex64;

    fn q(n: i64, d: i64) -> GaussRational {
        GaussRational::from_ratio(n, d)
    }

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn entry(op: &GradedOp<GaussRational>, bd: Bidegree) -> GaussRational {
        op.block(bd)
            .map(|(_, m)| m[(0, 0)].clone())
            .unwrap_or_else(GaussRational::zero)
    }

    #[test]
    fn p1_hand_values() {
        let alg = Arc::new(fixture("p1").unwrap());
        for t in [r(1, 1), r(3, 2), r(2, 7)] {
            let hp: HiggsPoint<GaussRational> =
                HiggsPoint::new(&alg, &ConePoint::new(vec![t.clone()])).unwrap();
            let tt = GaussRational::real(t);
            let inv_t = GaussRational::one() / tt.clone();
            // θ^*(e) = 1/(2t²)
            assert_eq!(
                entry(hp.theta_adjoint(0), (1, 1)),
                inv_t.clone() * &inv_t * &q(1, 2)
            );
            // A·1 = 1/(2t) both ways
            assert_eq!(entry(&hp.connection(0), (0, 0)), inv_t.clone() * &q(1, 2));
            assert_eq!(
                entry(&hp.chern_connection(0), (0, 0)),
                inv_t.clone() * &q(1, 2)
            );
            // Θ on H^{0,0} is 1/(4t²); on H^{1,1} its negative; trace zero
            let th = hp.curvature(0, 0);
            let c00 = entry(&th, (0, 0));
            assert_eq!(c00, inv_t.clone() * &inv_t * &q(1, 4));
            assert_eq!(entry(&th, (1, 1)), -c00);
            assert!(th.trace().is_zero());
        }
    }

    #[test]
    fn theta_commutes() {
        let alg = Arc::new(fixture("p1xp1").unwrap());
        let a = higgs_theta(&alg, 0).unwrap();
        let b = higgs_theta(&alg, 1).unwrap();
        assert!(a.commutator(&b).is_zero());
        assert!(a.compose(&a).is_zero());
        assert!(higgs_theta(&alg, 2).is_err());
    }

    #[test]
    fn real_theta_has_no_half() {
        let alg = Arc::new(fixture("p2").unwrap());
        let th = real_theta(&alg, &[r(1, 1)]).unwrap();
        assert_eq!(entry(&th, (0, 0)), q(1, 1));
        assert_eq!(entry(&higgs_theta(&alg, 0).unwrap(), (0, 0)), q(1, 2));
        assert!(matches!(
            real_theta(&alg, &[r(0, 1)]),
            Err(HodgeError::ZeroDirection)
        ));
    }

    #[test]
    fn all_identities_exact() {
        for (name, t) in [
            ("p1", vec![r(5, 3)]),
            ("p2", vec![r(1, 1)]),
            ("p1xp1", vec![r(3, 4), r(7, 5)]),
            ("p1xp2", vec![r(1, 2), r(2, 3)]),
            ("torus2", vec![r(1, 1), r(9, 8), r(1, 10), r(-1, 7)]),
        ] {
            let alg = Arc::new(fixture(name).unwrap());
            let hp: HiggsPoint<GaussRational> = HiggsPoint::new(&alg, &ConePoint::new(t)).unwrap();
            for o in hp.verify_all() {
                assert!(
                    o.pass,
                    "{name}: {} {} residual {}",
                    o.identity, o.detail, o.residual
                );
            }
        }
    }

    #[test]
    fn float_mode_identities() {
        let alg = Arc::new(fixture("torus2").unwrap());
        let p = ConePoint::new(vec![r(1, 1), r(1, 1), r(0, 1), r(0, 1)]);
        let hp: HiggsPoint<Complex64> = HiggsPoint::new(&alg, &p).unwrap();
        for o in hp.verify_all() {
            assert!(
                o.pass,
                "{} {} residual {}",
                o.identity, o.detail, o.residual
            );
            assert!(o.residual < 1e-10);
        }
    }

    #[test]
    fn not_polarized_is_error() {
        let alg = Arc::new(fixture("p1xp1").unwrap());
        let e =
            HiggsPoint::<GaussRational>::new(&alg, &ConePoint::from_ints(&[1, -1])).unwrap_err();
        assert!(matches!(e, HodgeError::NotPolarized { .. }));
    }

    #[test]
    fn h00_hand_values() {
        let p2 = Arc::new(fixture("p2").unwrap());
        let (c, n) =
            h00_curvature::<GaussRational>(&p2, &ConePoint::from_ints(&[1]), &[r(1, 1)]).unwrap();
        assert_eq!((c.clone(), n), (q(1, 1), q(1, 1)));
        let (c2, _) =
            h00_curvature::<GaussRational>(&p2, &ConePoint::from_ints(&[1]), &[r(2, 1)]).unwrap();
        assert_eq!(c2, c * &q(4, 1));
        let p1p1 = Arc::new(fixture("p1xp1").unwrap());
        let (c, n) = h00_curvature::<GaussRational>(
            &p1p1,
            &ConePoint::from_ints(&[1, 1]),
            &[r(1, 1), r(0, 1)],
        )
        .unwrap();
        assert_eq!((c, n), (q(1, 1), q(1, 1)));
    }

    #[test]
    fn subbundle_ranks() {
        let p2 = Arc::new(fixture("p2").unwrap());
        assert_eq!(subbundle_split(&p2).ranks(), vec![(0, 3)]);
        let t2 = Arc::new(fixture("torus2").unwrap());
        assert_eq!(
            subbundle_split(&t2).ranks(),
            vec![(-2, 1), (-1, 4), (0, 6), (1, 4), (2, 1)]
        );
    }

    #[test]
    fn imaginary_part_is_ignored() {
        let alg = Arc::new(fixture("p1xp1").unwrap());
        let a: HiggsPoint<GaussRational> =
            HiggsPoint::new(&alg, &ConePoint::from_ints(&[1, 2])).unwrap();
        let b: HiggsPoint<GaussRational> = HiggsPoint::new(
            &alg,
            &ConePoint::with_imaginary(vec![r(1, 1), r(2, 1)], vec![r(5, 1), r(-3, 1)]),
        )
        .unwrap();
        assert!(a.curvature(0, 1).sub(&b.curvature(0, 1)).is_zero());
    }

    #[test]
    fn jet_matches_finite_difference() {
        let alg = Arc::new(fixture("p1xp1").unwrap());
        let t = [0.8, 1.3];
        let h = 1e-4;
        let hp: HiggsPoint<Complex64> =
            HiggsPoint::new(&alg, &ConePoint::new(vec![r(4, 5), r(13, 10)])).unwrap();
        let star_at = |x: [f64; 2]| {
            let tc: Vec<Complex64> = x.iter().map(|v| Complex64::new(*v, 0.0)).collect();
            LefschetzStructure::build(&alg, &tc).unwrap().star().clone()
        };
        let fd = star_at([t[0] + h, t[1]])
            .sub(&star_at([t[0] - h, t[1]]))
            .scale(&Complex64::new(1.0 / (2.0 * h), 0.0));
        let jet = hp.d_star(0);
        let scale = jet.max_magnitude().max(1.0);
        assert!(fd.sub(&jet).max_magnitude() / scale < 1e-5);
    }
}
