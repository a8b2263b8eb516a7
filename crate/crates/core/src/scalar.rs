//! Coefficient fields.
//!
//! Every algorithm in the crate is generic over [`Field`]. Three instances
//! exist: [`GaussRational`] (exact, `ℚ(i)`), [`Complex64`] (float) and
//! [`Jet2`](crate::jet::Jet2) over either of them, which carries derivatives
//! through the same code paths.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::HodgeError;
use crate::linalg::Matrix;

/// Relative eigenvalue threshold for float positive-definiteness.
pub const FLOAT_PD_THRESHOLD: f64 = 1e-10;

/// Arithmetic needed by the linear algebra and every geometric construction.
///
/// `value_*` methods look only at the leading (undifferentiated) part of a
/// scalar. For plain fields that is the scalar itself.
pub trait Field:
    Clone
    + fmt::Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    /// True when arithmetic is rounding-free.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn imag_unit() -> Self;
    fn from_gauss(g: &GaussRational) -> Self;

    fn from_rational(r: &BigRational) -> Self {
        Self::from_gauss(&GaussRational::real(r.clone()))
    }

    fn from_i64(n: i64) -> Self {
        Self::from_gauss(&GaussRational::from_i64(n))
    }

    fn conj(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn value_is_zero(&self) -> bool;
    fn magnitude(&self) -> f64;
    fn to_c64(&self) -> Complex64;
    /// Sign of the real part (of the value part for jets).
    fn re_sign(&self) -> Ordering;

    /// Positive-definiteness of a Hermitian matrix given through its
    /// transpose-or-self Gram form (`h(u, v) = uᵀ G v̄`).
    fn hermitian_positive_definite(m: &Matrix<Self>) -> bool;
}

/// Exact Gaussian rational `re + i·im`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRational { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        GaussRational {
            re,
            im: BigRational::zero(),
        }
    }

    pub fn from_i64(n: i64) -> Self {
        Self::real(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::real(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn i() -> Self {
        GaussRational {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// `|z|²`, always a nonnegative rational.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        if self.im.is_zero() {
            if self.re.is_zero() {
                return None;
            }
            return Some(Self::real(self.re.recip()));
        }
        let d = self.norm_sqr();
        Some(GaussRational {
            re: &self.re / &d,
            im: -(&self.im / &d),
        })
    }

    /// Sign of a real value; `None` when the imaginary part is nonzero.
    pub fn real_sign(&self) -> Option<Ordering> {
        if !self.im.is_zero() {
            return None;
        }
        Some(self.re.cmp(&BigRational::zero()))
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (ratio_to_f64(&self.re), ratio_to_f64(&self.im))
    }
}

/// Lossy conversion used for reporting and for the float mode.
pub fn ratio_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        if r.is_positive() {
            f64::INFINITY
        } else {
            f64::NEG_INFINITY
        }
    })
}

/// Formats a rational as `p/q`, or `p` when the denominator is one.
pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p`, `p/q` or a finite decimal such as `0.25`.
pub fn parse_rational(s: &str) -> Result<BigRational, HodgeError> {
    let s = s.trim();
    let err = || HodgeError::Parse(format!("not a rational number: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| err())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(err());
        }
        let neg = int.trim_start().starts_with('-');
        let int_part = if int.is_empty() || int == "-" || int == "+" {
            BigInt::zero()
        } else {
            BigInt::from_str(int).map_err(|_| err())?
        };
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let frac_part = BigInt::from_str(frac).map_err(|_| err())?;
        let mag = int_part.abs() * &scale + frac_part;
        let num = if neg { -mag } else { mag };
        return Ok(BigRational::new(num, scale));
    }
    BigInt::from_str(s)
        .map(BigRational::from_integer)
        .map_err(|_| err())
}

impl fmt::Display for GaussRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", format_rational(&self.re));
        }
        if self.re.is_zero() {
            return write!(f, "{}i", format_rational(&self.im));
        }
        let sign = if self.im.is_negative() { "-" } else { "+" };
        write!(
            f,
            "{}{}{}i",
            format_rational(&self.re),
            sign,
            format_rational(&self.im.abs())
        )
    }
}

impl fmt::Debug for GaussRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add for GaussRational {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        self + &o
    }
}

impl<'a> Add<&'a GaussRational> for GaussRational {
    type Output = Self;
    fn add(self, o: &'a Self) -> Self {
        let im = if o.im.is_zero() {
            self.im
        } else {
            self.im + &o.im
        };
        GaussRational {
            re: self.re + &o.re,
            im,
        }
    }
}

impl Sub for GaussRational {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self - &o
    }
}

impl<'a> Sub<&'a GaussRational> for GaussRational {
    type Output = Self;
    fn sub(self, o: &'a Self) -> Self {
        let im = if o.im.is_zero() {
            self.im
        } else {
            self.im - &o.im
        };
        GaussRational {
            re: self.re - &o.re,
            im,
        }
    }
}

impl Mul for GaussRational {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        self * &o
    }
}

impl<'a> Mul<&'a GaussRational> for GaussRational {
    type Output = Self;
    fn mul(self, o: &'a Self) -> Self {
        match (self.im.is_zero(), o.im.is_zero()) {
            (true, true) => Self::real(self.re * &o.re),
            (true, false) => GaussRational {
                re: &self.re * &o.re,
                im: self.re * &o.im,
            },
            (false, true) => GaussRational {
                re: self.re * &o.re,
                im: self.im * &o.re,
            },
            (false, false) => GaussRational {
                re: &self.re * &o.re - &self.im * &o.im,
                im: &self.re * &o.im + &self.im * &o.re,
            },
        }
    }
}

impl Div for GaussRational {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        let inv = o.inv().expect("division by zero in exact arithmetic");
        self * &inv
    }
}

impl Neg for GaussRational {
    type Output = Self;
    fn neg(self) -> Self {
        GaussRational {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Field for GaussRational {
    const EXACT: bool = true;

    fn zero() -> Self {
        GaussRational::default()
    }
    fn one() -> Self {
        Self::from_i64(1)
    }
    fn imag_unit() -> Self {
        Self::i()
    }
    fn from_gauss(g: &GaussRational) -> Self {
        g.clone()
    }
    fn conj(&self) -> Self {
        GaussRational {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn value_is_zero(&self) -> bool {
        Field::is_zero(self)
    }
    fn magnitude(&self) -> f64 {
        let (re, im) = self.to_f64_pair();
        re.hypot(im)
    }
    fn to_c64(&self) -> Complex64 {
        let (re, im) = self.to_f64_pair();
        Complex64::new(re, im)
    }
    fn re_sign(&self) -> Ordering {
        self.re.cmp(&BigRational::zero())
    }

    /// Sylvester's criterion via elimination without pivoting: every pivot
    /// (ratio of consecutive leading minors) must be a positive rational.
    fn hermitian_positive_definite(m: &Matrix<Self>) -> bool {
        let n = m.rows();
        let mut a = m.clone();
        for k in 0..n {
            let pivot = a[(k, k)].clone();
            if pivot.real_sign() != Some(Ordering::Greater) {
                return false;
            }
            let inv = pivot.inv().expect("nonzero pivot");
            for i in k + 1..n {
                let factor = a[(i, k)].clone() * &inv;
                if Field::is_zero(&factor) {
                    continue;
                }
                for j in k..n {
                    let v = a[(i, j)].clone() - &(factor.clone() * &a[(k, j)]);
                    a[(i, j)] = v;
                }
            }
        }
        true
    }
}

impl Field for Complex64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn imag_unit() -> Self {
        Complex64::new(0.0, 1.0)
    }
    fn from_gauss(g: &GaussRational) -> Self {
        g.to_c64()
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn value_is_zero(&self) -> bool {
        Field::is_zero(self)
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
    fn to_c64(&self) -> Complex64 {
        *self
    }
    fn re_sign(&self) -> Ordering {
        self.re.partial_cmp(&0.0).unwrap_or(Ordering::Equal)
    }

    /// Eigenvalues of the Hermitian form must exceed
    /// `FLOAT_PD_THRESHOLD · max|entry|`.
    fn hermitian_positive_definite(m: &Matrix<Self>) -> bool {
        let n = m.rows();
        if n == 0 {
            return true;
        }
        // h(u, u) = uᵀ G ū, so the Hermitian matrix in the usual sense is Gᵀ.
        let herm = DMatrix::from_fn(n, n, |i, j| m[(j, i)]);
        let scale = m.max_magnitude();
        if scale == 0.0 {
            return false;
        }
        let eig = nalgebra::SymmetricEigen::new(herm);
        eig.eigenvalues
            .iter()
            .all(|&l| l > FLOAT_PD_THRESHOLD * scale)
    }
}

/// Integer binomial coefficient.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// `m!` as an exact rational.
pub fn factorial(m: usize) -> BigRational {
    let mut acc = BigInt::one();
    for i in 2..=m {
        acc *= BigInt::from(i);
    }
    BigRational::from_integer(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn gauss_field_ops() {
        let a = GaussRational::new(q(1, 2), q(1, 3));
        let b = GaussRational::new(q(-2, 1), q(3, 4));
        let prod = a.clone() * &b;
        assert_eq!(prod.re, q(-1, 1) - q(1, 4));
        assert_eq!(prod.im, q(3, 8) - q(2, 3));
        let back = prod / b.clone();
        assert_eq!(back, a);
        assert_eq!(Field::conj(&GaussRational::i()), -GaussRational::i());
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("3/6").unwrap(), q(1, 2));
        assert_eq!(parse_rational("-7").unwrap(), q(-7, 1));
        assert_eq!(parse_rational("0.25").unwrap(), q(1, 4));
        assert_eq!(parse_rational("-1.5").unwrap(), q(-3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert_eq!(format_rational(&q(4, 2)), "2");
        assert_eq!(format_rational(&q(-1, 3)), "-1/3");
    }

    #[test]
    fn display_forms() {
        assert_eq!(GaussRational::new(q(1, 2), q(-1, 1)).to_string(), "1/2-1i");
        assert_eq!(GaussRational::i().to_string(), "1i");
    }

    #[test]
    fn exact_positive_definite() {
        let m = Matrix::from_rows(vec![
            vec![
                GaussRational::from_i64(2),
                GaussRational::new(q(0, 1), q(1, 1)),
            ],
            vec![
                GaussRational::new(q(0, 1), q(-1, 1)),
                GaussRational::from_i64(1),
            ],
        ]);
        assert!(GaussRational::hermitian_positive_definite(&m));
        let m = Matrix::from_rows(vec![
            vec![GaussRational::from_i64(1), GaussRational::from_i64(2)],
            vec![GaussRational::from_i64(2), GaussRational::from_i64(1)],
        ]);
        assert!(!GaussRational::hermitian_positive_definite(&m));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(2, 3), 0);
        assert_eq!(factorial(4), q(24, 1));
    }
}
