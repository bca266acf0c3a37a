//! Exact scalars: rationals and quadratic-extension elements with p-adic valuations.

mod padic;
mod quad;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub use padic::{
    hensel_lift, is_padic_square, quad_root_valuations, rational_cbrt, rational_sqrt, rational_valuation,
    PAdicContext, Valuation, DEFAULT_PRECISION_CAP,
};
pub use padic::pow_rational;
pub use quad::{QuadExt, QuadField};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Always `num/den`, including integers.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Accepts `num/den` or a bare integer.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
        None => Some(Rational::from_integer(s.parse().ok()?)),
    }
}

/// A value in ℚ or in one fixed quadratic extension. Quadratic values with zero `θ`-part
/// collapse to `Rat`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(Rational),
    Quad(QuadExt),
}

impl Scalar {
    pub fn int(n: i64) -> Self {
        Scalar::Rat(rat(n))
    }

    pub fn zero() -> Self {
        Scalar::int(0)
    }

    pub fn one() -> Self {
        Scalar::int(1)
    }

    fn canon(q: QuadExt) -> Scalar {
        if q.b.is_zero() {
            Scalar::Rat(q.a)
        } else {
            Scalar::Quad(q)
        }
    }

    pub fn from_quad(q: QuadExt) -> Scalar {
        Scalar::canon(q)
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Scalar::Rat(r) => Some(r),
            Scalar::Quad(_) => None,
        }
    }

    pub fn field(&self) -> Option<&QuadExt> {
        match self {
            Scalar::Rat(_) => None,
            Scalar::Quad(q) => Some(q),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Scalar::Rat(r) if r.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Scalar::Rat(r) if r.is_one())
    }

    /// Both operands lifted into a common field, or `FieldMismatch`.
    fn lift_pair(&self, other: &Scalar) -> Result<Option<(QuadExt, QuadExt)>> {
        Ok(match (self, other) {
            (Scalar::Rat(_), Scalar::Rat(_)) => None,
            (Scalar::Rat(r), Scalar::Quad(q)) => Some((q.from_rational(r.clone()), q.clone())),
            (Scalar::Quad(q), Scalar::Rat(r)) => Some((q.clone(), q.from_rational(r.clone()))),
            (Scalar::Quad(x), Scalar::Quad(y)) => {
                if !x.same_field(y) {
                    return Err(Error::FieldMismatch);
                }
                Some((x.clone(), y.clone()))
            }
        })
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        match self.lift_pair(other)? {
            None => Ok(Scalar::Rat(self.as_rational().unwrap() + other.as_rational().unwrap())),
            Some((x, y)) => Ok(Scalar::canon(x.add(&y))),
        }
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        match self.lift_pair(other)? {
            None => Ok(Scalar::Rat(self.as_rational().unwrap() * other.as_rational().unwrap())),
            Some((x, y)) => Ok(Scalar::canon(x.mul(&y))),
        }
    }

    pub fn inverse(&self) -> Result<Scalar> {
        match self {
            Scalar::Rat(r) if r.is_zero() => Err(Error::DivisionByZero),
            Scalar::Rat(r) => Ok(Scalar::Rat(r.recip())),
            Scalar::Quad(q) => q.inverse().map(Scalar::canon).ok_or(Error::DivisionByZero),
        }
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        self.checked_mul(&other.inverse()?)
    }

    pub fn pow(&self, e: i64) -> Result<Scalar> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut n = e.unsigned_abs();
        let mut acc = Scalar::one();
        let mut sq = base;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &sq;
            }
            n >>= 1;
            if n > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    pub fn scale(&self, r: &Rational) -> Scalar {
        match self {
            Scalar::Rat(x) => Scalar::Rat(x * r),
            Scalar::Quad(q) => Scalar::canon(q.scale(r)),
        }
    }

    pub fn conjugate(&self) -> Scalar {
        match self {
            Scalar::Rat(_) => self.clone(),
            Scalar::Quad(q) => Scalar::canon(q.conjugate()),
        }
    }

    pub fn valuation(&self, ctx: &PAdicContext) -> Result<Valuation> {
        match self {
            Scalar::Rat(r) => Ok(rational_valuation(r, ctx.p())),
            Scalar::Quad(q) => q.valuation(ctx),
        }
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::Rat(r)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => write!(f, "{r}"),
            Scalar::Quad(q) => write!(f, "{q}"),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(r) => Scalar::Rat(-r),
            Scalar::Quad(q) => Scalar::Quad(q.neg()),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

// Operators panic on mixing two different quadratic fields; use the `checked_*` forms on
// untrusted data.
macro_rules! scalar_op {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs).expect("scalars from different quadratic fields")
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                self.$m(&rhs)
            }
        }
    };
}

scalar_op!(Add, add, checked_add);
scalar_op!(Sub, sub, checked_sub);
scalar_op!(Mul, mul, checked_mul);
