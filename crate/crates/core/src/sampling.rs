//! Seeded random rational points and directions.
//!
//! Points are drawn as `t_j = sample_j · m_j` with `m_j` uniform in
//! `[½, 3/2]` on the grid of denominator 1000, and rejected unless the
//! algebra is polarized there.

use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::GradedAlgebra;
use crate::error::{HodgeError, Result};
use crate::higgs::ConePoint;
use crate::lefschetz::polarization_at;
use crate::scalar::GaussRational;

pub const DENOMINATOR: i64 = 1000;
pub const MAX_ATTEMPTS: usize = 1000;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn rational(num: i64) -> BigRational {
    BigRational::new(num.into(), DENOMINATOR.into())
}

/// Uniform on `{lo/1000, …, hi/1000}`.
pub fn grid_rational(rng: &mut impl Rng, lo: i64, hi: i64) -> BigRational {
    rational(rng.random_range(lo..=hi))
}

pub fn is_polarized_point(alg: &Arc<GradedAlgebra>, t: &[BigRational]) -> bool {
    let tg: Vec<GaussRational> = t.iter().map(|x| GaussRational::real(x.clone())).collect();
    polarization_at(alg, &tg).is_polarized()
}

/// One polarized point near the algebra's sample point.
pub fn random_point(alg: &Arc<GradedAlgebra>, rng: &mut impl Rng) -> Result<ConePoint> {
    for _ in 0..MAX_ATTEMPTS {
        let t: Vec<BigRational> = alg
            .sample_point()
            .iter()
            .map(|s| s * grid_rational(rng, DENOMINATOR / 2, 3 * DENOMINATOR / 2))
            .collect();
        if is_polarized_point(alg, &t) {
            return Ok(ConePoint::new(t));
        }
    }
    Err(HodgeError::Exhausted(format!(
        "no polarized point of {} found in {MAX_ATTEMPTS} draws",
        alg.name()
    )))
}

pub fn sample_points(alg: &Arc<GradedAlgebra>, count: usize, seed: u64) -> Result<Vec<ConePoint>> {
    let mut r = rng(seed);
    (0..count).map(|_| random_point(alg, &mut r)).collect()
}

/// A nonzero real direction with entries in `[−1, 1]`.
pub fn random_direction(len: usize, rng: &mut impl Rng) -> Vec<BigRational> {
    loop {
        let v: Vec<BigRational> = (0..len)
            .map(|_| grid_rational(rng, -DENOMINATOR, DENOMINATOR))
            .collect();
        if !v.iter().all(Zero::is_zero) {
            return v;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::fixture;

    #[test]
    fn deterministic_and_polarized() {
        let alg = Arc::new(fixture("p1xp1").unwrap());
        let a = sample_points(&alg, 5, 42).unwrap();
        assert_eq!(a, sample_points(&alg, 5, 42).unwrap());
        for p in &a {
            assert!(is_polarized_point(&alg, &p.t));
            for x in &p.t {
                assert!(x.denom() <= &1000.into());
            }
        }
    }

    #[test]
    fn torus_sample_points_polarize() {
        let alg = Arc::new(fixture("torus2").unwrap());
        assert_eq!(sample_points(&alg, 3, 1).unwrap().len(), 3);
    }

    #[test]
    fn directions_nonzero() {
        let mut r = rng(0);
        for _ in 0..50 {
            assert!(!random_direction(2, &mut r).iter().all(Zero::is_zero));
        }
    }
}
