//! Randomized invariants. Each case draws a seed; points, classes and
//! directions come from the library's seeded samplers so failures replay.

use std::sync::Arc;

use kahler_higgs::algebra::{builtin_fixture_names, fixture, GradedAlgebra};
use kahler_higgs::convex::{bm_values, minkowski_sum, mixed_volume, ConvexBody};
use kahler_higgs::higgs::{verify_h00_positivity, ConePoint, HiggsPoint};
use kahler_higgs::inequality::{effective_bm, kt_values, mixed_intersection};
use kahler_higgs::lefschetz::{apply, LefschetzStructure};
use kahler_higgs::linalg::Matrix;
use kahler_higgs::metric::{holomorphic_sectional_curvature, hsc_bound, Flavor};
use kahler_higgs::report::Mode;
use kahler_higgs::sampling::{grid_rational, random_direction, random_point, rng};
use kahler_higgs::scalar::{Field, GaussRational};
use kahler_higgs::suite::{verify_algebra, VerifyOptions};
use num_rational::BigRational;
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

type Q = GaussRational;

fn alg(name: &str) -> Arc<GradedAlgebra> {
    Arc::new(fixture(name).unwrap())
}

fn gauss(v: &[BigRational]) -> Vec<Q> {
    v.iter().map(|x| Q::real(x.clone())).collect()
}

/// Random class with Gaussian-rational entries supported on one bidegree.
fn random_class(alg: &GradedAlgebra, bd: (usize, usize), r: &mut ChaCha8Rng) -> Vec<Q> {
    let mut u = vec![Q::zero(); alg.rank()];
    for i in alg.range(bd) {
        u[i] = Q::new(grid_rational(r, -1000, 1000), grid_rational(r, -1000, 1000));
    }
    u
}

fn structure(alg: &Arc<GradedAlgebra>, r: &mut ChaCha8Rng) -> LefschetzStructure<Q> {
    let p = random_point(alg, r).unwrap();
    LefschetzStructure::build(alg, &gauss(&p.t)).unwrap()
}

const LEFSCHETZ_FIXTURES: [&str; 5] = ["p1", "p2", "p1xp1", "p1xp1xp1", "torus2"];

#[test]
fn pairing_is_nondegenerate() {
    for name in builtin_fixture_names() {
        let a = fixture(name).unwrap();
        for bd in a.bidegrees() {
            let m = a.pairing_matrix(bd);
            assert_eq!(m.rank(), a.dim(bd), "{name} {bd:?}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    #[test]
    fn sl2_tau_and_adjoint(seed in any::<u64>(), which in 0usize..LEFSCHETZ_FIXTURES.len()) {
        let a = alg(LEFSCHETZ_FIXTURES[which]);
        let s = structure(&a, &mut rng(seed));
        let (l, lam, y, tau) = (s.l(), s.lambda(), s.y(), s.tau());
        let two = Q::from_i64(2);
        prop_assert!(y.commutator(l).sub(&l.scale(&two)).is_zero());
        prop_assert!(y.commutator(lam).add(&lam.scale(&two)).is_zero());
        let n = a.n() as i64;
        for bd in a.bidegrees() {
            let k = (bd.0 + bd.1) as i64;
            let d = a.dim(bd);
            let yb = y.block(bd).map(|(_, m)| m.clone()).unwrap_or_else(|| Matrix::zeros(d, d));
            prop_assert_eq!(yb, Matrix::identity(d).scale(&Q::from_i64(k - n)));
            let sign = if k % 2 == 0 { 1 } else { -1 };
            prop_assert_eq!(tau.block(bd).unwrap().1, &Matrix::identity(d).scale(&Q::from_i64(sign)));
        }
        let tau2 = tau.compose(&tau);
        for bd in a.bidegrees() {
            prop_assert_eq!(tau2.block(bd).unwrap().1, &Matrix::identity(a.dim(bd)));
        }
        prop_assert!(s.adjoint(l).sub(lam).is_zero());
        prop_assert!(s.is_polarized());
    }

    #[test]
    fn star_reconstruction_and_metric(seed in any::<u64>(), which in 0usize..LEFSCHETZ_FIXTURES.len()) {
        let a = alg(LEFSCHETZ_FIXTURES[which]);
        let mut r = rng(seed);
        let s = structure(&a, &mut r);
        let bds = a.bidegrees();
        for &bd in &bds {
            let u = random_class(&a, bd, &mut r);
            let d = s.primitive_decomposition(&u).unwrap();
            prop_assert_eq!(s.reconstruct(&d), u.clone());
            prop_assert_eq!(apply(&a, s.star(), &u), s.hodge_star(&u).unwrap());
            let v = random_class(&a, bd, &mut r);
            prop_assert_eq!(s.metric_h(&u, &v).unwrap(), s.metric_h(&v, &u).unwrap().conj());
            prop_assert_eq!(s.metric_h(&u, &v).unwrap(), s.metric_from_gram(&u, &v));
            let other = bds[(bds.iter().position(|b| *b == bd).unwrap() + 1) % bds.len()];
            if other != bd {
                let w = random_class(&a, other, &mut r);
                prop_assert!(s.metric_h(&u, &w).unwrap().is_zero());
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn higgs_identities_exact(seed in any::<u64>(), which in 0usize..4) {
        let a = alg(["p1", "p2", "p1xp1", "p1xp1xp1"][which]);
        let mut r = rng(seed);
        let p = random_point(&a, &mut r).unwrap();
        let hp = HiggsPoint::<Q>::new(&a, &p).unwrap();
        for o in hp.verify_all() {
            prop_assert!(o.pass && o.residual == 0.0, "{:?}", o);
        }
        let zeta = random_direction(a.num_coords(), &mut r);
        for o in verify_h00_positivity::<Q>(&a, &p, &zeta).unwrap() {
            prop_assert!(o.pass, "{:?}", o);
        }
        let (lhs, rhs) = effective_bm::<Q>(&a, &p, &zeta).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn hsc_invariant_under_complex_rescaling(seed in any::<u64>(), which in 0usize..3) {
        let a = alg(["p2", "p1xp1", "p1xp1xp1"][which]);
        let mut r = rng(seed);
        let p = random_point(&a, &mut r).unwrap();
        let hp = HiggsPoint::<Q>::new(&a, &p).unwrap();
        let v: Vec<Q> = random_direction(a.num_coords(), &mut r).into_iter().map(Q::real).collect();
        let c = Q::new(grid_rational(&mut r, 1, 2000), grid_rational(&mut r, -1000, 1000));
        let cv: Vec<Q> = v.iter().map(|x| x.clone() * &c).collect();
        for flavor in [Flavor::Lu, Flavor::LuH0] {
            let h1 = holomorphic_sectional_curvature(&hp, flavor, &v).unwrap();
            prop_assert_eq!(h1.clone(), holomorphic_sectional_curvature(&hp, flavor, &cv).unwrap());
            let bound = Q::real(hsc_bound(&hp, flavor).unwrap());
            prop_assert!((bound - &h1).re >= BigRational::from_integer(0.into()));
        }
    }

    #[test]
    fn hsc_invariant_under_basis_doubling(seed in any::<u64>(), which in 0usize..2) {
        let a = alg(["p1xp1", "p2"][which]);
        let mut data = a.data().clone();
        let two = BigRational::from_integer(2.into());
        for e in data.e_basis.iter_mut() {
            for x in e.iter_mut() {
                *x *= &two;
            }
        }
        for x in data.sample_point.iter_mut() {
            *x /= &two;
        }
        let doubled = Arc::new(GradedAlgebra::new(data).unwrap());
        let mut r = rng(seed);
        let p = random_point(&a, &mut r).unwrap();
        let half = ConePoint::new(p.t.iter().map(|x| x / &two).collect());
        let v: Vec<Q> = random_direction(a.num_coords(), &mut r).into_iter().map(Q::real).collect();
        let hp = HiggsPoint::<Q>::new(&a, &p).unwrap();
        let hq = HiggsPoint::<Q>::new(&doubled, &half).unwrap();
        for flavor in [Flavor::Lu, Flavor::LuH0] {
            prop_assert_eq!(
                holomorphic_sectional_curvature(&hp, flavor, &v).unwrap(),
                holomorphic_sectional_curvature(&hq, flavor, &v).unwrap()
            );
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn mixed_intersection_symmetric_multilinear(seed in any::<u64>()) {
        let a = alg("p1xp1xp1");
        let mut r = rng(seed);
        let cls: Vec<Vec<Q>> = (0..4).map(|_| a.class_from_coords(&gauss(&random_direction(3, &mut r)))).collect();
        let v = |x: &[Vec<Q>]| mixed_intersection::<Q>(&a, x).unwrap();
        let base = v(&cls[..3]);
        prop_assert_eq!(base.clone(), v(&[cls[2].clone(), cls[0].clone(), cls[1].clone()]));
        prop_assert_eq!(base.clone(), v(&[cls[1].clone(), cls[2].clone(), cls[0].clone()]));
        let c = Q::real(grid_rational(&mut r, -1000, 1000));
        let comb: Vec<Q> = cls[0].iter().zip(&cls[3]).map(|(x, y)| x.clone() * &c + y).collect();
        let lhs = v(&[comb, cls[1].clone(), cls[2].clone()]);
        let rhs = c * &base + &v(&[cls[3].clone(), cls[1].clone(), cls[2].clone()]);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn kt_margin_nonnegative(seed in any::<u64>(), which in 0usize..4) {
        let a = alg(["p2", "p1xp1", "p1xp1xp1", "torus2"][which]);
        let mut r = rng(seed);
        let w1 = random_point(&a, &mut r).unwrap().t;
        let w2 = random_point(&a, &mut r).unwrap().t;
        let fixed: Vec<Vec<BigRational>> = (0..a.n() - 2).map(|_| random_point(&a, &mut r).unwrap().t).collect();
        let k = kt_values(&a, &w1, &w2, &fixed).unwrap();
        prop_assert!(k.margin.re >= BigRational::from_integer(0.into()));
        let c = grid_rational(&mut r, 1, 3000);
        let w3: Vec<BigRational> = w1.iter().map(|x| x * &c).collect();
        prop_assert!(kt_values(&a, &w1, &w3, &fixed).unwrap().margin.is_zero());
    }
}

fn random_polygon(r: &mut ChaCha8Rng) -> ConvexBody {
    loop {
        let pts: Vec<(BigRational, BigRational)> = (0..r.random_range(3..8))
            .map(|_| (grid_rational(r, -2000, 2000), grid_rational(r, -2000, 2000)))
            .collect();
        let p = ConvexBody::hull_of(pts).unwrap();
        if p.is_full_dimensional() {
            return p;
        }
    }
}

fn random_box(dim: usize, r: &mut ChaCha8Rng) -> ConvexBody {
    ConvexBody::Box((0..dim).map(|_| grid_rational(r, 1, 3000)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn polygon_sum_expansion(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (p, q) = (random_polygon(&mut r), random_polygon(&mut r));
        let m = mixed_volume(&[p.clone(), q.clone()]).unwrap();
        prop_assert_eq!(minkowski_sum(&p, &q).unwrap().volume(), p.volume() + q.volume() + &m);
        prop_assert_eq!(m, mixed_volume(&[q.clone(), p.clone()]).unwrap());
        prop_assert!(bm_values(&p, &q).unwrap().sign != std::cmp::Ordering::Less);
    }

    #[test]
    fn mixed_volume_multilinear_boxes(seed in any::<u64>()) {
        let mut r = rng(seed);
        let bodies: Vec<ConvexBody> = (0..4).map(|_| random_box(3, &mut r)).collect();
        let v = mixed_volume(&bodies[..3]).unwrap();
        prop_assert_eq!(v.clone(), mixed_volume(&[bodies[2].clone(), bodies[0].clone(), bodies[1].clone()]).unwrap());
        let c = grid_rational(&mut r, 1, 3000);
        let comb = minkowski_sum(&bodies[0].scale(&c), &bodies[3]).unwrap();
        let lhs = mixed_volume(&[comb, bodies[1].clone(), bodies[2].clone()]).unwrap();
        let rhs = c * &v + mixed_volume(&[bodies[3].clone(), bodies[1].clone(), bodies[2].clone()]).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn bm_equality_on_homothets(seed in any::<u64>(), dim in 2usize..4) {
        let mut r = rng(seed);
        let a = random_box(dim, &mut r);
        let c = BigRational::from_integer(r.random_range(1i64..6).into()) / BigRational::from_integer(r.random_range(1i64..6).into());
        prop_assert_eq!(bm_values(&a, &a.scale(&c)).unwrap().sign, std::cmp::Ordering::Equal);
        let p = random_polygon(&mut r);
        prop_assert_eq!(bm_values(&p, &p.scale(&c)).unwrap().sign, std::cmp::Ordering::Equal);
    }
}

#[test]
fn reports_are_byte_identical() {
    let a = alg("p2");
    let opts = VerifyOptions {
        points: 2,
        seed: 9,
        mode: Mode::Exact,
        directions: 4,
    };
    let one = verify_algebra("p2", &a, &opts).unwrap().to_json();
    assert_eq!(one, verify_algebra("p2", &a, &opts).unwrap().to_json());
}
