//! Exact arithmetic over `k = Z[1/2]` and `k' = Z[1/2, sqrt(-1)]`.

mod frame;
mod matrix;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

pub use frame::{monomial_to_weyl, TorusFrame, WeylConvention};
pub use matrix::{apply_involution, ExactMatrix, MatrixInvolution};

/// An element `mantissa * 2^exponent` of `Z[1/2]`.
///
/// Always normalized: the mantissa is odd, or zero with exponent zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mantissa: BigInt,
    exponent: i64,
}

impl Dyadic {
    pub fn new(mantissa: impl Into<BigInt>, exponent: i64) -> Self {
        let mut mantissa = mantissa.into();
        let mut exponent = exponent;
        if mantissa.is_zero() {
            return Self::zero();
        }
        let tz = mantissa.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            mantissa >>= tz;
            exponent += tz as i64;
        }
        Dyadic { mantissa, exponent }
    }

    pub fn from_int(v: i64) -> Self {
        Self::new(v, 0)
    }

    /// `numerator / 2^k`.
    pub fn frac(numerator: i64, log2_denominator: u32) -> Self {
        Self::new(numerator, -(log2_denominator as i64))
    }

    pub fn zero() -> Self {
        Dyadic {
            mantissa: BigInt::zero(),
            exponent: 0,
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn is_normalized(&self) -> bool {
        if self.mantissa.is_zero() {
            self.exponent == 0
        } else {
            self.mantissa.is_odd()
        }
    }

    /// True iff the value is `±2^k`, i.e. a unit of `Z[1/2]`.
    pub fn is_unit(&self) -> bool {
        self.mantissa.abs().is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.is_negative()
    }

    /// Exact division; fails unless the quotient lies in `Z[1/2]`.
    pub fn checked_div(&self, rhs: &Dyadic) -> Result<Dyadic> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (q, r) = self.mantissa.div_rem(&rhs.mantissa);
        if !r.is_zero() {
            return Err(Error::DivisionNotDyadic(format!("{self} / {rhs}")));
        }
        Ok(Dyadic::new(q, self.exponent - rhs.exponent))
    }

    fn aligned(a: &Dyadic, b: &Dyadic) -> (BigInt, BigInt, i64) {
        let e = a.exponent.min(b.exponent);
        let ma = &a.mantissa << ((a.exponent - e) as usize);
        let mb = &b.mantissa << ((b.exponent - e) as usize);
        (ma, mb, e)
    }
}

impl Default for Dyadic {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for Dyadic {
    fn from(v: i64) -> Self {
        Self::from_int(v)
    }
}

impl<'a> Add<&'a Dyadic> for &'a Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let (a, b, e) = Dyadic::aligned(self, rhs);
        Dyadic::new(a + b, e)
    }
}

impl<'a> Sub<&'a Dyadic> for &'a Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: &Dyadic) -> Dyadic {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Dyadic> for &'a Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: &Dyadic) -> Dyadic {
        Dyadic::new(&self.mantissa * &rhs.mantissa, self.exponent + rhs.exponent)
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic {
            mantissa: -&self.mantissa,
            exponent: self.exponent,
        }
    }
}

macro_rules! forward_owned {
    ($ty:ty, $($tr:ident $m:ident),*) => {$(
        impl $tr<$ty> for $ty {
            type Output = $ty;
            fn $m(self, rhs: $ty) -> $ty { (&self).$m(&rhs) }
        }
    )*};
}
forward_owned!(Dyadic, Add add, Sub sub, Mul mul);

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        -&self
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent >= 0 {
            write!(f, "{}", &self.mantissa << (self.exponent as usize))
        } else {
            write!(f, "{}/{}", self.mantissa, BigInt::one() << ((-self.exponent) as usize))
        }
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// JSON form: `[mantissa, exponent]`; the mantissa is a number when it fits in
/// an `i64` and a decimal string otherwise.
impl Serialize for Dyadic {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.mantissa.to_i64() {
            Some(m) => (m, self.exponent).serialize(s),
            None => (self.mantissa.to_string(), self.exponent).serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for Dyadic {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Mantissa {
            Int(i64),
            Text(String),
        }
        let (m, e): (Mantissa, i64) = Deserialize::deserialize(d)?;
        let m = match m {
            Mantissa::Int(v) => BigInt::from(v),
            Mantissa::Text(t) => t.parse().map_err(serde::de::Error::custom)?,
        };
        Ok(Dyadic::new(m, e))
    }
}

/// An element `re + im * sqrt(-1)` of `Z[1/2, sqrt(-1)]`.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct DyadicGauss {
    pub re: Dyadic,
    pub im: Dyadic,
}

impl DyadicGauss {
    pub fn new(re: Dyadic, im: Dyadic) -> Self {
        DyadicGauss { re, im }
    }

    pub fn real(re: Dyadic) -> Self {
        DyadicGauss {
            re,
            im: Dyadic::zero(),
        }
    }

    pub fn from_int(v: i64) -> Self {
        Self::real(Dyadic::from_int(v))
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// `sqrt(-1)`.
    pub fn i() -> Self {
        DyadicGauss::new(Dyadic::zero(), Dyadic::one())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.im.is_zero() && self.re == Dyadic::one()
    }

    pub fn conj(&self) -> Self {
        DyadicGauss::new(self.re.clone(), -&self.im)
    }

    /// `re^2 + im^2`.
    pub fn norm(&self) -> Dyadic {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    /// Units of `k'` are exactly the elements whose norm is a power of two.
    pub fn is_unit(&self) -> bool {
        self.norm().mantissa().is_one()
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_unit() {
            return Err(Error::NotAUnit(self.to_string()));
        }
        DyadicGauss::one().checked_div(self)
    }

    /// Exact division; fails unless the quotient lies in `k'`.
    pub fn checked_div(&self, rhs: &DyadicGauss) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = rhs.norm();
        let num = self * &rhs.conj();
        let re = num.re.checked_div(&n);
        let im = num.im.checked_div(&n);
        match (re, im) {
            (Ok(re), Ok(im)) => Ok(DyadicGauss::new(re, im)),
            _ => Err(Error::DivisionNotDyadic(format!("({self}) / ({rhs})"))),
        }
    }
}

impl From<Dyadic> for DyadicGauss {
    fn from(d: Dyadic) -> Self {
        Self::real(d)
    }
}

impl<'a> Add<&'a DyadicGauss> for &'a DyadicGauss {
    type Output = DyadicGauss;
    fn add(self, rhs: &DyadicGauss) -> DyadicGauss {
        DyadicGauss::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl<'a> Sub<&'a DyadicGauss> for &'a DyadicGauss {
    type Output = DyadicGauss;
    fn sub(self, rhs: &DyadicGauss) -> DyadicGauss {
        DyadicGauss::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl<'a> Mul<&'a DyadicGauss> for &'a DyadicGauss {
    type Output = DyadicGauss;
    fn mul(self, rhs: &DyadicGauss) -> DyadicGauss {
        let re = &(&self.re * &rhs.re) - &(&self.im * &rhs.im);
        let im = &(&self.re * &rhs.im) + &(&self.im * &rhs.re);
        DyadicGauss::new(re, im)
    }
}

impl Neg for &DyadicGauss {
    type Output = DyadicGauss;
    fn neg(self) -> DyadicGauss {
        DyadicGauss::new(-&self.re, -&self.im)
    }
}

forward_owned!(DyadicGauss, Add add, Sub sub, Mul mul);

impl Neg for DyadicGauss {
    type Output = DyadicGauss;
    fn neg(self) -> DyadicGauss {
        -&self
    }
}

impl fmt::Display for DyadicGauss {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let im = |f: &mut fmt::Formatter<'_>, v: &Dyadic| {
            if *v == Dyadic::one() {
                write!(f, "i")
            } else if *v == -Dyadic::one() {
                write!(f, "-i")
            } else {
                write!(f, "{v}i")
            }
        };
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => im(f, &self.im),
            (false, false) => {
                write!(f, "{}", self.re)?;
                if !self.im.is_negative() {
                    write!(f, "+")?;
                }
                im(f, &self.im)
            }
        }
    }
}

impl fmt::Debug for DyadicGauss {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
