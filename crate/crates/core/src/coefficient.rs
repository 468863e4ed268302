//! Exact rational coefficients.
//!
//! `Coefficient` wraps a canonical [`BigRational`] and adds an integer fast
//! path: almost every coefficient produced by the identity builders is an
//! integer, and skipping the gcd on integer-by-integer operations is most of
//! the cost of the series kernels.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// An exact rational number in canonical form (`gcd(|num|, den) = 1`,
/// `den > 0`).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Coefficient(BigRational);

impl Coefficient {
    pub fn zero() -> Self {
        Coefficient(BigRational::zero())
    }

    pub fn one() -> Self {
        Coefficient(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Coefficient(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Coefficient(BigRational::from_integer(n))
    }

    /// Builds `num/den`, reducing to canonical form.
    pub fn new(num: BigInt, den: BigInt) -> Result<Self, Error> {
        if den.is_zero() {
            return Err(Error::Parse("zero denominator".into()));
        }
        Ok(Coefficient(BigRational::new(num, den)))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Coefficient(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    /// `true` for `1` and `-1`, the only leading coefficients the series
    /// inverse accepts.
    pub fn is_sign_unit(&self) -> bool {
        self.0.is_integer() && self.0.numer().abs().is_one()
    }

    pub fn abs(&self) -> Self {
        Coefficient(self.0.abs())
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Coefficient(self.0.recip()))
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        if self.is_integer() {
            self.0.numer().to_i64()
        } else {
            None
        }
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    /// Canonical `num/den` rendering used by every JSON schema.
    pub fn to_fraction_string(&self) -> String {
        format!("{}/{}", self.0.numer(), self.0.denom())
    }

    fn add_ref(&self, other: &Self) -> Self {
        if self.0.is_integer() && other.0.is_integer() {
            Coefficient(BigRational::from_integer(self.0.numer() + other.0.numer()))
        } else {
            Coefficient(&self.0 + &other.0)
        }
    }

    fn sub_ref(&self, other: &Self) -> Self {
        if self.0.is_integer() && other.0.is_integer() {
            Coefficient(BigRational::from_integer(self.0.numer() - other.0.numer()))
        } else {
            Coefficient(&self.0 - &other.0)
        }
    }

    fn mul_ref(&self, other: &Self) -> Self {
        if self.0.is_integer() && other.0.is_integer() {
            Coefficient(BigRational::from_integer(self.0.numer() * other.0.numer()))
        } else {
            Coefficient(&self.0 * &other.0)
        }
    }

    /// `self += a * b` without allocating an intermediate rational when all
    /// three are integers.
    pub fn add_product(&mut self, a: &Self, b: &Self) {
        if self.0.is_integer() && a.0.is_integer() && b.0.is_integer() {
            let prod = a.0.numer() * b.0.numer();
            let sum = self.0.numer() + prod;
            self.0 = BigRational::from_integer(sum);
        } else {
            self.0 = &self.0 + &a.0 * &b.0;
        }
    }

    /// Least common multiple of the denominators of `coeffs`.
    pub fn lcm_denominators<'a>(coeffs: impl IntoIterator<Item = &'a Coefficient>) -> BigInt {
        coeffs
            .into_iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }
}

impl From<i64> for Coefficient {
    fn from(n: i64) -> Self {
        Coefficient::from_int(n)
    }
}

impl From<BigInt> for Coefficient {
    fn from(n: BigInt) -> Self {
        Coefficient::from_bigint(n)
    }
}

impl From<BigRational> for Coefficient {
    fn from(r: BigRational) -> Self {
        Coefficient(r)
    }
}

impl FromStr for Coefficient {
    type Err = Error;

    /// Accepts `"n"` and `"n/d"`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let bad = || Error::Parse(format!("invalid rational {s:?}"));
        match s.split_once('/') {
            Some((n, d)) => {
                let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
                let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
                Coefficient::new(n, d)
            }
            None => Ok(Coefficient::from_bigint(
                BigInt::from_str(s).map_err(|_| bad())?,
            )),
        }
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add for Coefficient {
    type Output = Coefficient;
    fn add(self, rhs: Coefficient) -> Coefficient {
        self.add_ref(&rhs)
    }
}

impl<'a> Add<&'a Coefficient> for &'a Coefficient {
    type Output = Coefficient;
    fn add(self, rhs: &'a Coefficient) -> Coefficient {
        self.add_ref(rhs)
    }
}

impl Sub for Coefficient {
    type Output = Coefficient;
    fn sub(self, rhs: Coefficient) -> Coefficient {
        self.sub_ref(&rhs)
    }
}

impl<'a> Sub<&'a Coefficient> for &'a Coefficient {
    type Output = Coefficient;
    fn sub(self, rhs: &'a Coefficient) -> Coefficient {
        self.sub_ref(rhs)
    }
}

impl Mul for Coefficient {
    type Output = Coefficient;
    fn mul(self, rhs: Coefficient) -> Coefficient {
        self.mul_ref(&rhs)
    }
}

impl<'a> Mul<&'a Coefficient> for &'a Coefficient {
    type Output = Coefficient;
    fn mul(self, rhs: &'a Coefficient) -> Coefficient {
        self.mul_ref(rhs)
    }
}

impl Div for Coefficient {
    type Output = Coefficient;
    /// Panics on division by zero, like the integer types.
    fn div(self, rhs: Coefficient) -> Coefficient {
        Coefficient(self.0 / rhs.0)
    }
}

impl<'a> Div<&'a Coefficient> for &'a Coefficient {
    type Output = Coefficient;
    fn div(self, rhs: &'a Coefficient) -> Coefficient {
        Coefficient(&self.0 / &rhs.0)
    }
}

impl Neg for Coefficient {
    type Output = Coefficient;
    fn neg(self) -> Coefficient {
        Coefficient(-self.0)
    }
}

impl Neg for &Coefficient {
    type Output = Coefficient;
    fn neg(self) -> Coefficient {
        Coefficient(-&self.0)
    }
}

impl AddAssign<&Coefficient> for Coefficient {
    fn add_assign(&mut self, rhs: &Coefficient) {
        *self = self.add_ref(rhs);
    }
}

impl SubAssign<&Coefficient> for Coefficient {
    fn sub_assign(&mut self, rhs: &Coefficient) {
        *self = self.sub_ref(rhs);
    }
}

impl Sum for Coefficient {
    fn sum<I: Iterator<Item = Coefficient>>(iter: I) -> Self {
        iter.fold(Coefficient::zero(), |a, b| a + b)
    }
}
