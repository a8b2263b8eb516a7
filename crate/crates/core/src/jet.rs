//! Second-order truncated Taylor arithmetic in two formal directions.
//!
//! A [`Jet2`] stores a value together with its first partial derivatives
//! along two directions and the three second derivatives (`∂₁∂₁`, `∂₁∂₂`,
//! `∂₂∂₂`). Products obey the Leibniz rule exactly up to order two, so any
//! rational expression of the cone coordinates evaluated in `Jet2<F>`
//! yields exact derivatives when `F` is exact.
//!
//! Seeding both directions with the same vector gives a plain second
//! derivative in the `d12` slot.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::linalg::Matrix;
use crate::scalar::{Field, GaussRational};

/// Selects one coefficient of a [`Jet2`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JetPart {
    Value,
    D1,
    D2,
    D11,
    D12,
    D22,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Jet2<F> {
    pub v: F,
    pub d1: F,
    pub d2: F,
    pub d11: F,
    pub d12: F,
    pub d22: F,
}

impl<F: Field> Jet2<F> {
    pub fn constant(v: F) -> Self {
        Jet2 {
            v,
            d1: F::zero(),
            d2: F::zero(),
            d11: F::zero(),
            d12: F::zero(),
            d22: F::zero(),
        }
    }

    /// An affine variable `v + a·ε₁ + b·ε₂`.
    pub fn variable(v: F, a: F, b: F) -> Self {
        Jet2 {
            v,
            d1: a,
            d2: b,
            d11: F::zero(),
            d12: F::zero(),
            d22: F::zero(),
        }
    }

    pub fn part(&self, which: JetPart) -> &F {
        match which {
            JetPart::Value => &self.v,
            JetPart::D1 => &self.d1,
            JetPart::D2 => &self.d2,
            JetPart::D11 => &self.d11,
            JetPart::D12 => &self.d12,
            JetPart::D22 => &self.d22,
        }
    }

    fn is_constant(&self) -> bool {
        self.d1.is_zero()
            && self.d2.is_zero()
            && self.d11.is_zero()
            && self.d12.is_zero()
            && self.d22.is_zero()
    }

    fn scale(&self, c: &F) -> Self {
        Jet2 {
            v: self.v.clone() * c,
            d1: self.d1.clone() * c,
            d2: self.d2.clone() * c,
            d11: self.d11.clone() * c,
            d12: self.d12.clone() * c,
            d22: self.d22.clone() * c,
        }
    }

    fn mul_ref(&self, o: &Self) -> Self {
        if o.is_constant() {
            return self.scale(&o.v);
        }
        if self.is_constant() {
            return o.scale(&self.v);
        }
        let f = self;
        let two = F::from_i64(2);
        Jet2 {
            v: f.v.clone() * &o.v,
            d1: f.d1.clone() * &o.v + f.v.clone() * &o.d1,
            d2: f.d2.clone() * &o.v + f.v.clone() * &o.d2,
            d11: f.d11.clone() * &o.v + two.clone() * &f.d1 * &o.d1 + f.v.clone() * &o.d11,
            d12: f.d12.clone() * &o.v
                + f.d1.clone() * &o.d2
                + f.d2.clone() * &o.d1
                + f.v.clone() * &o.d12,
            d22: f.d22.clone() * &o.v + two * &f.d2 * &o.d2 + f.v.clone() * &o.d22,
        }
    }

    /// Reciprocal; the value part must be invertible.
    pub fn recip(&self) -> Self {
        let y = F::one() / self.v.clone();
        if self.is_constant() {
            return Jet2::constant(y);
        }
        let y2 = y.clone() * &y;
        let y3 = y2.clone() * &y;
        let two = F::from_i64(2);
        let f = self;
        Jet2 {
            d1: -(f.d1.clone() * &y2),
            d2: -(f.d2.clone() * &y2),
            d11: two.clone() * &f.d1 * &f.d1 * &y3 - f.d11.clone() * &y2,
            d12: two.clone() * &f.d1 * &f.d2 * &y3 - f.d12.clone() * &y2,
            d22: two * &f.d2 * &f.d2 * &y3 - f.d22.clone() * &y2,
            v: y,
        }
    }
}

impl<F: Field> Add for Jet2<F> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        self + &o
    }
}

impl<'a, F: Field> Add<&'a Jet2<F>> for Jet2<F> {
    type Output = Self;
    fn add(self, o: &'a Self) -> Self {
        Jet2 {
            v: self.v + &o.v,
            d1: self.d1 + &o.d1,
            d2: self.d2 + &o.d2,
            d11: self.d11 + &o.d11,
            d12: self.d12 + &o.d12,
            d22: self.d22 + &o.d22,
        }
    }
}

impl<F: Field> Sub for Jet2<F> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self - &o
    }
}

impl<'a, F: Field> Sub<&'a Jet2<F>> for Jet2<F> {
    type Output = Self;
    fn sub(self, o: &'a Self) -> Self {
        Jet2 {
            v: self.v - &o.v,
            d1: self.d1 - &o.d1,
            d2: self.d2 - &o.d2,
            d11: self.d11 - &o.d11,
            d12: self.d12 - &o.d12,
            d22: self.d22 - &o.d22,
        }
    }
}

impl<F: Field> Mul for Jet2<F> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        self.mul_ref(&o)
    }
}

impl<'a, F: Field> Mul<&'a Jet2<F>> for Jet2<F> {
    type Output = Self;
    fn mul(self, o: &'a Self) -> Self {
        self.mul_ref(o)
    }
}

impl<F: Field> Div for Jet2<F> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        self.mul_ref(&o.recip())
    }
}

impl<F: Field> Neg for Jet2<F> {
    type Output = Self;
    fn neg(self) -> Self {
        Jet2 {
            v: -self.v,
            d1: -self.d1,
            d2: -self.d2,
            d11: -self.d11,
            d12: -self.d12,
            d22: -self.d22,
        }
    }
}

impl<F: Field> Field for Jet2<F> {
    const EXACT: bool = F::EXACT;

    fn zero() -> Self {
        Jet2::constant(F::zero())
    }
    fn one() -> Self {
        Jet2::constant(F::one())
    }
    fn imag_unit() -> Self {
        Jet2::constant(F::imag_unit())
    }
    fn from_gauss(g: &GaussRational) -> Self {
        Jet2::constant(F::from_gauss(g))
    }
    fn conj(&self) -> Self {
        Jet2 {
            v: self.v.conj(),
            d1: self.d1.conj(),
            d2: self.d2.conj(),
            d11: self.d11.conj(),
            d12: self.d12.conj(),
            d22: self.d22.conj(),
        }
    }
    fn is_zero(&self) -> bool {
        self.v.is_zero() && self.is_constant()
    }
    fn value_is_zero(&self) -> bool {
        self.v.value_is_zero()
    }
    fn magnitude(&self) -> f64 {
        self.v.magnitude()
    }
    fn to_c64(&self) -> Complex64 {
        self.v.to_c64()
    }
    fn re_sign(&self) -> std::cmp::Ordering {
        self.v.re_sign()
    }
    fn hermitian_positive_definite(m: &Matrix<Self>) -> bool {
        F::hermitian_positive_definite(&m.map(|x| x.v.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type J = Jet2<GaussRational>;

    fn c(n: i64) -> GaussRational {
        GaussRational::from_i64(n)
    }

    // f(x, y) = x² y / (1 + x) at (1, 2), directions ε₁ = ∂x, ε₂ = ∂y.
    // Hand derivatives: f = 1, f_x = 3/2, f_y = 1/2, f_xx = 1/2, f_xy = 3/4, f_yy = 0.
    #[test]
    fn rational_function_derivatives_are_exact() {
        let x = J::variable(c(1), c(1), c(0));
        let y = J::variable(c(2), c(0), c(1));
        let f = x.clone() * &x * &y / (J::one() + &x);
        assert_eq!(f.v, c(1));
        assert_eq!(f.d1, GaussRational::from_ratio(3, 2));
        assert_eq!(f.d2, GaussRational::from_ratio(1, 2));
        assert_eq!(f.d11, GaussRational::from_ratio(1, 2));
        assert_eq!(f.d12, GaussRational::from_ratio(3, 4));
        assert_eq!(f.d22, c(0));
    }

    #[test]
    fn same_direction_twice_gives_second_derivative() {
        // g(t) = 1/t² at t = 2 along ε₁ = ε₂ = ∂t: g'' = 6/t⁴ = 3/8.
        let t = J::variable(c(2), c(1), c(1));
        let g = J::one() / (t.clone() * &t);
        assert_eq!(g.d12, GaussRational::from_ratio(3, 8));
        assert_eq!(g.d1, GaussRational::from_ratio(-1, 4));
    }

    #[test]
    fn float_jet_matches_central_difference() {
        let f = |x: f64| (1.0 + x * x).recip() * x;
        let x0 = 0.7;
        let x = Jet2::<Complex64>::variable(x0.into(), 1.0.into(), 1.0.into());
        let jet = (Jet2::one() + &(x.clone() * &x)).recip() * &x;
        let h = 1e-4;
        let fd1 = (f(x0 + h) - f(x0 - h)) / (2.0 * h);
        let fd2 = (f(x0 + h) - 2.0 * f(x0) + f(x0 - h)) / (h * h);
        assert!((jet.d1.re - fd1).abs() < 1e-7);
        assert!((jet.d12.re - fd2).abs() < 1e-5);
    }
}
