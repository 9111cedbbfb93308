//! Scalar abstraction shared by fusion elements, multipliers and the TLJ analysis.
//!
//! Everything that only needs field arithmetic is written against [`Scalar`], so the
//! same code runs in floating point (`f64`, `f32`, `Complex64`) and in exact
//! arithmetic (`BigRational`, `Complex<BigRational>`). Order-dependent routines
//! (PSD tests, sup-norms, range scans) use [`RealScalar`].

use std::fmt::Debug;
use std::ops::Neg;

use num::bigint::BigInt;
use num::complex::Complex64;
use num::rational::BigRational;
use num::traits::{Num, Signed, ToPrimitive, Zero};
use num::Complex;

/// Categorical dimension of an irreducible: always a float value, plus the exact
/// rational value whenever the ring parameters make it rational.
#[derive(Clone, Debug, PartialEq)]
pub struct Dimension {
    value: f64,
    exact: Option<BigRational>,
}

impl Dimension {
    pub fn exact(value: BigRational) -> Self {
        Dimension {
            value: ToPrimitive::to_f64(&value).unwrap_or(f64::INFINITY),
            exact: Some(value),
        }
    }

    pub fn approx(value: f64) -> Self {
        Dimension { value, exact: None }
    }

    pub fn integer(n: i64) -> Self {
        Dimension::exact(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn one() -> Self {
        Dimension::integer(1)
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn as_exact(&self) -> Option<&BigRational> {
        self.exact.as_ref()
    }

    pub fn is_exact(&self) -> bool {
        self.exact.is_some()
    }

    /// Product of two dimensions; stays exact when both factors are.
    pub fn times(&self, other: &Dimension) -> Dimension {
        match (&self.exact, &other.exact) {
            (Some(a), Some(b)) => Dimension::exact(a * b),
            _ => Dimension::approx(self.value * other.value),
        }
    }
}

/// Field-like scalar used for coefficients and multiplier values.
pub trait Scalar:
    Clone + Debug + PartialEq + Send + Sync + 'static + Num + Neg<Output = Self>
{
    /// True when arithmetic is exact, so equality tests need no tolerance.
    const EXACT: bool;

    fn conj(&self) -> Self;

    fn from_int(n: i64) -> Self;

    /// Converts a float. Exact types take the exact binary value of `x`.
    fn from_f64(x: f64) -> Option<Self>;

    /// Converts a dimension; exact types refuse irrational dimensions.
    fn from_dimension(d: &Dimension) -> Option<Self>;

    fn from_rational(r: &BigRational) -> Self;

    fn to_c64(&self) -> Complex64;
}

/// Ordered real scalar.
pub trait RealScalar: Scalar + PartialOrd {
    fn to_f64(&self) -> f64;

    fn magnitude(&self) -> Self {
        if *self < Self::zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn conj(&self) -> Self {
        *self
    }
    fn from_int(n: i64) -> Self {
        n as f64
    }
    fn from_f64(x: f64) -> Option<Self> {
        Some(x)
    }
    fn from_dimension(d: &Dimension) -> Option<Self> {
        Some(d.value())
    }
    fn from_rational(r: &BigRational) -> Self {
        ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(*self, 0.0)
    }
}

impl RealScalar for f64 {
    fn to_f64(&self) -> f64 {
        *self
    }
}

impl Scalar for f32 {
    const EXACT: bool = false;

    fn conj(&self) -> Self {
        *self
    }
    fn from_int(n: i64) -> Self {
        n as f32
    }
    fn from_f64(x: f64) -> Option<Self> {
        Some(x as f32)
    }
    fn from_dimension(d: &Dimension) -> Option<Self> {
        Some(d.value() as f32)
    }
    fn from_rational(r: &BigRational) -> Self {
        r.to_f32().unwrap_or(f32::NAN)
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(*self as f64, 0.0)
    }
}

impl RealScalar for f32 {
    fn to_f64(&self) -> f64 {
        *self as f64
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn conj(&self) -> Self {
        self.clone()
    }
    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn from_f64(x: f64) -> Option<Self> {
        BigRational::from_float(x)
    }
    fn from_dimension(d: &Dimension) -> Option<Self> {
        d.as_exact().cloned()
    }
    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(RealScalar::to_f64(self), 0.0)
    }
}

impl RealScalar for BigRational {
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn magnitude(&self) -> Self {
        self.abs()
    }
}

impl<T> Scalar for Complex<T>
where
    T: RealScalar,
{
    const EXACT: bool = T::EXACT;

    fn conj(&self) -> Self {
        Complex::new(self.re.clone(), -self.im.clone())
    }
    fn from_int(n: i64) -> Self {
        Complex::new(T::from_int(n), T::zero())
    }
    fn from_f64(x: f64) -> Option<Self> {
        T::from_f64(x).map(|re| Complex::new(re, T::zero()))
    }
    fn from_dimension(d: &Dimension) -> Option<Self> {
        T::from_dimension(d).map(|re| Complex::new(re, T::zero()))
    }
    fn from_rational(r: &BigRational) -> Self {
        Complex::new(T::from_rational(r), T::zero())
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }
}

/// Parses a decimal literal such as `-1.25`, `5`, `3e-2` or a fraction `11/2`
/// into an exact rational.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let text = text.trim();
    if let Some((num, den)) = text.split_once('/') {
        let n: BigInt = num.trim().parse().ok()?;
        let d: BigInt = den.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    let (mantissa, exponent) = match text.find(['e', 'E']) {
        Some(pos) => (&text[..pos], text[pos + 1..].parse::<i32>().ok()?),
        None => (text, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let all: BigInt = format!("{int_part}{frac_part}0").parse().ok()?;
    let scale = exponent - frac_part.len() as i32 - 1;
    let ten = BigInt::from(10);
    let mut value = BigRational::from_integer(all);
    if scale >= 0 {
        value *= BigRational::from_integer(num::pow(ten, scale as usize));
    } else {
        value /= BigRational::from_integer(num::pow(ten, (-scale) as usize));
    }
    Some(if negative { -value } else { value })
}

/// Rational with the given numerator and denominator.
pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub(crate) fn u64_to_scalar<S: Scalar>(n: u64) -> S {
    S::from_int(i64::try_from(n).expect("multiplicity exceeds i64"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_decimals_exactly() {
        assert_eq!(parse_rational("5.5"), Some(ratio(11, 2)));
        assert_eq!(parse_rational("-1.2"), Some(ratio(-6, 5)));
        assert_eq!(parse_rational("4"), Some(ratio(4, 1)));
        assert_eq!(parse_rational("2.5e-1"), Some(ratio(1, 4)));
        assert_eq!(parse_rational("1e2"), Some(ratio(100, 1)));
        assert_eq!(parse_rational("11/2"), Some(ratio(11, 2)));
        assert_eq!(parse_rational(".5"), Some(ratio(1, 2)));
        assert_eq!(parse_rational("abc"), None);
        assert_eq!(parse_rational("1/0"), None);
    }

    #[test]
    fn complex_conjugation() {
        let z = Complex::new(ratio(2, 1), ratio(1, 1));
        assert_eq!(z.conj(), Complex::new(ratio(2, 1), ratio(-1, 1)));
    }

    #[test]
    fn exact_dimension_refuses_float_only() {
        let d = Dimension::approx(2.0_f64.sqrt());
        assert!(<BigRational as Scalar>::from_dimension(&d).is_none());
        assert_eq!(<f64 as Scalar>::from_dimension(&d), Some(2.0_f64.sqrt()));
    }
}
