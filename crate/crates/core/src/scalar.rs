//! Exact coefficient fields: rationals and Gaussian rationals.
//!
//! `Rational` wraps `Ratio<i128>` and routes every operation through the
//! checked arithmetic of `num-rational`, so an overflow aborts the
//! computation instead of wrapping into a wrong answer.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, Signed, Zero};

use crate::error::Error;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rational(Ratio<i128>);

const OVERFLOW: &str = "exact rational arithmetic overflowed i128";

impl Rational {
    pub const ZERO: Rational = Rational(Ratio::new_raw(0, 1));
    pub const ONE: Rational = Rational(Ratio::new_raw(1, 1));

    pub fn new(numer: i128, denom: i128) -> Rational {
        assert!(denom != 0, "zero denominator");
        Rational(Ratio::new(numer, denom))
    }

    pub const fn from_int(value: i128) -> Rational {
        Rational(Ratio::new_raw(value, 1))
    }

    pub fn numer(&self) -> i128 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i128 {
        *self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.numer().is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Rational {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Rational {
        assert!(!self.is_zero(), "reciprocal of zero");
        Rational(self.0.recip())
    }

    pub fn pow(&self, exp: u32) -> Rational {
        let mut acc = Rational::ONE;
        for _ in 0..exp {
            acc *= *self;
        }
        acc
    }

    pub fn checked_add(&self, rhs: &Rational) -> Option<Rational> {
        self.0.checked_add(&rhs.0).map(Rational)
    }

    pub fn checked_mul(&self, rhs: &Rational) -> Option<Rational> {
        self.0.checked_mul(&rhs.0).map(Rational)
    }

    /// Exact square root when the value is a square of a rational.
    pub fn sqrt_exact(&self) -> Option<Rational> {
        if self.is_negative() {
            return None;
        }
        let n = isqrt(self.numer())?;
        let d = isqrt(self.denom())?;
        Some(Rational::new(n, d))
    }
}

fn isqrt(v: i128) -> Option<i128> {
    if v < 0 {
        return None;
    }
    let r = (v as f64).sqrt() as i128;
    (r.saturating_sub(2)..=r + 2).find(|c| *c >= 0 && c * c == v)
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Rational::from_int(v as i128)
    }
}

impl From<i32> for Rational {
    fn from(v: i32) -> Self {
        Rational::from_int(v as i128)
    }
}

impl Add for Rational {
    type Output = Rational;
    fn add(self, rhs: Rational) -> Rational {
        if self.is_integer() && rhs.is_integer() {
            let n = self.numer().checked_add(rhs.numer()).expect(OVERFLOW);
            return Rational::from_int(n);
        }
        Rational(self.0.checked_add(&rhs.0).expect(OVERFLOW))
    }
}

impl Sub for Rational {
    type Output = Rational;
    fn sub(self, rhs: Rational) -> Rational {
        if self.is_integer() && rhs.is_integer() {
            let n = self.numer().checked_sub(rhs.numer()).expect(OVERFLOW);
            return Rational::from_int(n);
        }
        Rational(self.0.checked_sub(&rhs.0).expect(OVERFLOW))
    }
}

impl Mul for Rational {
    type Output = Rational;
    fn mul(self, rhs: Rational) -> Rational {
        if self.is_integer() && rhs.is_integer() {
            let n = self.numer().checked_mul(rhs.numer()).expect(OVERFLOW);
            return Rational::from_int(n);
        }
        Rational(self.0.checked_mul(&rhs.0).expect(OVERFLOW))
    }
}

impl Div for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        Rational(self.0.checked_div(&rhs.0).expect(OVERFLOW))
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl AddAssign for Rational {
    fn add_assign(&mut self, rhs: Rational) {
        *self = *self + rhs;
    }
}

impl SubAssign for Rational {
    fn sub_assign(&mut self, rhs: Rational) {
        *self = *self - rhs;
    }
}

impl MulAssign for Rational {
    fn mul_assign(&mut self, rhs: Rational) {
        *self = *self * rhs;
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::ZERO, |a, b| a + b)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom() == 1 {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || Error::Parse {
            pos: 0,
            message: format!("not a rational number: {s:?}"),
        };
        match s.split_once('/') {
            Some((n, d)) => {
                let n: i128 = n.trim().parse().map_err(|_| bad())?;
                let d: i128 = d.trim().parse().map_err(|_| bad())?;
                if d == 0 {
                    return Err(bad());
                }
                Ok(Rational::new(n, d))
            }
            None => Ok(Rational::from_int(s.parse().map_err(|_| bad())?)),
        }
    }
}

/// Least common multiple of denominators, used to clear fractions.
pub fn lcm_denominators<'a>(values: impl IntoIterator<Item = &'a Rational>) -> i128 {
    values.into_iter().fold(1i128, |acc, v| acc.lcm(&v.denom()))
}

/// A Gaussian rational `re + im·i`. Real structures keep `im == 0`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    pub re: Rational,
    pub im: Rational,
}

impl Scalar {
    pub const ZERO: Scalar = Scalar {
        re: Rational::ZERO,
        im: Rational::ZERO,
    };
    pub const ONE: Scalar = Scalar {
        re: Rational::ONE,
        im: Rational::ZERO,
    };
    pub const I: Scalar = Scalar {
        re: Rational::ZERO,
        im: Rational::ONE,
    };

    pub fn new(re: Rational, im: Rational) -> Scalar {
        Scalar { re, im }
    }

    pub fn real(re: Rational) -> Scalar {
        Scalar {
            re,
            im: Rational::ZERO,
        }
    }

    pub fn int(v: i128) -> Scalar {
        Scalar::real(Rational::from_int(v))
    }

    pub fn ratio(n: i128, d: i128) -> Scalar {
        Scalar::real(Rational::new(n, d))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Scalar {
        Scalar {
            re: self.re,
            im: -self.im,
        }
    }

    /// |z|² = re² + im².
    pub fn norm_sq(&self) -> Rational {
        self.re * self.re + self.im * self.im
    }

    pub fn recip(&self) -> Scalar {
        let n = self.norm_sq();
        assert!(!n.is_zero(), "reciprocal of zero");
        Scalar {
            re: self.re / n,
            im: -self.im / n,
        }
    }

    /// (−1)^k as a scalar.
    pub fn sign(odd: bool) -> Scalar {
        if odd {
            -Scalar::ONE
        } else {
            Scalar::ONE
        }
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::real(r)
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::int(v as i128)
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        if self.im.is_zero() && rhs.im.is_zero() {
            return Scalar::real(self.re + rhs.re);
        }
        Scalar {
            re: self.re + rhs.re,
            im: self.im + rhs.im,
        }
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        if self.im.is_zero() && rhs.im.is_zero() {
            return Scalar::real(self.re - rhs.re);
        }
        Scalar {
            re: self.re - rhs.re,
            im: self.im - rhs.im,
        }
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        if self.im.is_zero() && rhs.im.is_zero() {
            return Scalar::real(self.re * rhs.re);
        }
        Scalar {
            re: self.re * rhs.re - self.im * rhs.im,
            im: self.re * rhs.im + self.im * rhs.re,
        }
    }
}

impl Mul<Rational> for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Rational) -> Scalar {
        Scalar {
            re: self.re * rhs,
            im: if self.im.is_zero() {
                Rational::ZERO
            } else {
                self.im * rhs
            },
        }
    }
}

impl Div for Scalar {
    type Output = Scalar;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Scalar) -> Scalar {
        if rhs.im.is_zero() {
            return Scalar {
                re: self.re / rhs.re,
                im: self.im / rhs.re,
            };
        }
        self * rhs.recip()
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl AddAssign for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        *self = *self + rhs;
    }
}

impl SubAssign for Scalar {
    fn sub_assign(&mut self, rhs: Scalar) {
        *self = *self - rhs;
    }
}

impl MulAssign for Scalar {
    fn mul_assign(&mut self, rhs: Scalar) {
        *self = *self * rhs;
    }
}

impl Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::ZERO, |a, b| a + b)
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on (re, im); only used to give maps a deterministic order.
impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        self.re.cmp(&other.re).then(self.im.cmp(&other.im))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            if self.im == Rational::ONE {
                write!(f, "i")
            } else if self.im == -Rational::ONE {
                write!(f, "-i")
            } else {
                write!(f, "{}i", self.im)
            }
        } else {
            let sign = if self.im.is_negative() { '-' } else { '+' };
            let im = self.im.abs();
            if im == Rational::ONE {
                write!(f, "({}{}i)", self.re, sign)
            } else {
                write!(f, "({}{}{}i)", self.re, sign, im)
            }
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Zero for Rational {
    fn zero() -> Self {
        Rational::ZERO
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
}

impl One for Rational {
    fn one() -> Self {
        Rational::ONE
    }
}
