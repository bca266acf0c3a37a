//! p-adic valuations, Newton polygons of quadratics, and capped Hensel lifting.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{rat, Rational};
use crate::arith::{self, big_pow, int_valuation, mod_inverse, rational_residue};
use crate::error::{Error, Result};

pub const DEFAULT_PRECISION_CAP: u32 = 64;

/// The prime `p`, the weight-space generator `u = 1 + p`, and the digit cap for
/// approximate p-adic computations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PAdicContext {
    p: u64,
    u: Rational,
    cap: u32,
}

impl PAdicContext {
    /// Context for the Hecke-theoretic layer; requires `p > 3`.
    pub fn new(p: u64) -> Result<Self> {
        if p <= 3 {
            return Err(Error::InvalidContext(format!("p = {p} must be a prime > 3")));
        }
        Self::any_prime(p)
    }

    /// Context for pure valuation work, where `p = 2, 3` are also allowed.
    pub fn any_prime(p: u64) -> Result<Self> {
        if !arith::is_prime(p) {
            return Err(Error::InvalidContext(format!("{p} is not prime")));
        }
        Ok(PAdicContext {
            p,
            u: rat(p as i64 + 1),
            cap: DEFAULT_PRECISION_CAP,
        })
    }

    pub fn with_cap(mut self, cap: u32) -> Self {
        self.cap = cap.max(1);
        self
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn u(&self) -> &Rational {
        &self.u
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }
}

/// An element of ℚ ∪ {+∞}.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Valuation {
    Finite(Rational),
    Infinite,
}

impl Valuation {
    pub fn int(v: i64) -> Self {
        Valuation::Finite(rat(v))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Valuation::Infinite)
    }

    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    pub fn add(&self, other: &Valuation) -> Valuation {
        match (self, other) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinite,
        }
    }

    pub fn sub_rational(&self, r: &Rational) -> Valuation {
        match self {
            Valuation::Finite(a) => Valuation::Finite(a - r),
            Valuation::Infinite => Valuation::Infinite,
        }
    }

    pub fn halved(&self) -> Valuation {
        match self {
            Valuation::Finite(a) => Valuation::Finite(a / rat(2)),
            Valuation::Infinite => Valuation::Infinite,
        }
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Valuation::Infinite, Valuation::Infinite) => Ordering::Equal,
            (Valuation::Infinite, _) => Ordering::Greater,
            (_, Valuation::Infinite) => Ordering::Less,
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

pub fn rational_valuation(x: &Rational, p: u64) -> Valuation {
    if x.is_zero() {
        return Valuation::Infinite;
    }
    let num = int_valuation(x.numer(), p) as i64;
    let den = int_valuation(x.denom(), p) as i64;
    Valuation::int(num - den)
}

fn int_rational_valuation(x: &Rational, p: u64) -> Option<i64> {
    if x.is_zero() {
        None
    } else {
        Some(int_valuation(x.numer(), p) as i64 - int_valuation(x.denom(), p) as i64)
    }
}

/// Valuations of the two roots of `X² − tX + d`, read off the Newton polygon, ascending.
pub fn quad_root_valuations(t: &Rational, d: &Rational, ctx: &PAdicContext) -> (Valuation, Valuation) {
    let vt = rational_valuation(t, ctx.p);
    let vd = rational_valuation(d, ctx.p);
    let half = vd.halved();
    if vt <= half {
        let other = match (&vd, &vt) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a - b),
            _ => Valuation::Infinite,
        };
        (vt, other)
    } else {
        (half.clone(), half)
    }
}

/// Lifts a simple root `seed` of `X² − tX + d` modulo p to a root modulo `p^digits`.
pub fn hensel_lift(
    t: &Rational,
    d: &Rational,
    seed: &BigInt,
    ctx: &PAdicContext,
    digits: u32,
) -> Result<BigInt> {
    let digits = digits.max(1);
    let p = BigInt::from(ctx.p);
    let modulus = big_pow(ctx.p, digits);
    let tm = rational_residue(t, &modulus).ok_or(Error::NonIntegralPolynomial)?;
    let dm = rational_residue(d, &modulus).ok_or(Error::NonIntegralPolynomial)?;
    let f = |r: &BigInt| (r * r - &tm * r + &dm).mod_floor(&modulus);
    let r0 = seed.mod_floor(&p);
    if !f(&r0).mod_floor(&p).is_zero() {
        return Err(Error::NotARoot { residue: r0.to_string() });
    }
    let deriv = |r: &BigInt| (BigInt::from(2) * r - &tm).mod_floor(&modulus);
    if deriv(&r0).mod_floor(&p).is_zero() {
        return Err(Error::NonSimpleRoot { residue: r0.to_string() });
    }
    let mut r = r0;
    // Quadratic convergence: ⌈log₂ digits⌉ + 1 steps suffice.
    for _ in 0..=(64 - (digits as u64).leading_zeros()) {
        let fr = f(&r);
        if fr.is_zero() {
            break;
        }
        let inv = mod_inverse(&deriv(&r), &modulus).expect("derivative is a unit");
        r = (&r - fr * inv).mod_floor(&modulus);
    }
    debug_assert!(f(&r).is_zero());
    Ok(r)
}

/// A p-adic number known to finite precision: `p^val · unit` with `unit` a p-adic unit
/// known modulo `p^prec`.
#[derive(Debug, Clone)]
pub(crate) enum Approx {
    Zero,
    Known { val: i64, unit: BigInt, prec: u32 },
    /// Congruent to zero modulo `p^abs`; true valuation not determined.
    Vanishing { abs: i64 },
}

impl Approx {
    pub(crate) fn from_rational(x: &Rational, p: u64, prec: u32) -> Approx {
        let Some(v) = int_rational_valuation(x, p) else {
            return Approx::Zero;
        };
        let unit = x / pow_rational(p, v);
        let modulus = big_pow(p, prec);
        let unit = rational_residue(&unit, &modulus).expect("unit is p-integral");
        Approx::Known { val: v, unit, prec }
    }

    pub(crate) fn valuation(&self) -> Option<Valuation> {
        match self {
            Approx::Zero => Some(Valuation::Infinite),
            Approx::Known { val, .. } => Some(Valuation::int(*val)),
            Approx::Vanishing { .. } => None,
        }
    }

    pub(crate) fn neg(&self, p: u64) -> Approx {
        match self {
            Approx::Known { val, unit, prec } => {
                let m = big_pow(p, *prec);
                Approx::Known { val: *val, unit: (-unit).mod_floor(&m), prec: *prec }
            }
            other => other.clone(),
        }
    }

    pub(crate) fn mul(&self, other: &Approx, p: u64) -> Approx {
        match (self, other) {
            (Approx::Zero, _) | (_, Approx::Zero) => Approx::Zero,
            (Approx::Vanishing { abs: a }, Approx::Vanishing { abs: b }) => Approx::Vanishing { abs: a + b },
            (Approx::Vanishing { abs }, Approx::Known { val, .. })
            | (Approx::Known { val, .. }, Approx::Vanishing { abs }) => Approx::Vanishing { abs: abs + val },
            (
                Approx::Known { val: va, unit: ua, prec: pa },
                Approx::Known { val: vb, unit: ub, prec: pb },
            ) => {
                let prec = (*pa).min(*pb);
                let m = big_pow(p, prec);
                Approx::Known { val: va + vb, unit: (ua * ub).mod_floor(&m), prec }
            }
        }
    }

    pub(crate) fn add(&self, other: &Approx, p: u64) -> Approx {
        match (self, other) {
            (Approx::Zero, x) | (x, Approx::Zero) => x.clone(),
            (Approx::Vanishing { abs: a }, Approx::Vanishing { abs: b }) => Approx::Vanishing { abs: *a.min(b) },
            (Approx::Vanishing { abs }, Approx::Known { val, unit, prec })
            | (Approx::Known { val, unit, prec }, Approx::Vanishing { abs }) => {
                if val < abs {
                    let prec = (*prec as i64).min(abs - val) as u32;
                    let m = big_pow(p, prec);
                    Approx::Known { val: *val, unit: unit.mod_floor(&m), prec }
                } else {
                    Approx::Vanishing { abs: (*abs).min(val + *prec as i64) }
                }
            }
            (
                Approx::Known { val: va, unit: ua, prec: pa },
                Approx::Known { val: vb, unit: ub, prec: pb },
            ) => {
                let v = (*va).min(*vb);
                let abs = (va + *pa as i64).min(vb + *pb as i64);
                let rel = (abs - v) as u32;
                let m = big_pow(p, rel);
                let s = (ua * big_pow(p, (va - v) as u32) + ub * big_pow(p, (vb - v) as u32)).mod_floor(&m);
                if s.is_zero() {
                    return Approx::Vanishing { abs };
                }
                let k = int_valuation(&s, p) as u32;
                let prec = rel - k;
                let unit = (s / big_pow(p, k)).mod_floor(&big_pow(p, prec));
                Approx::Known { val: v + k as i64, unit, prec }
            }
        }
    }

    /// Square root of a rational in ℚ_p, if one exists; `None` when the rational is not a square.
    pub(crate) fn sqrt_of(x: &Rational, p: u64, prec: u32) -> Option<Approx> {
        let v = int_rational_valuation(x, p)?;
        if v % 2 != 0 {
            return None;
        }
        let unit = x / pow_rational(p, v);
        let root = if p == 2 {
            // Units of ℤ₂ are squares iff ≡ 1 mod 8; lift one bit at a time.
            let n = prec + 1;
            let modulus = big_pow(2, n + 1);
            let u = rational_residue(&unit, &modulus).expect("unit");
            if (&u % BigInt::from(8)) != BigInt::one() {
                return None;
            }
            let mut r = BigInt::one();
            for k in 3..=n {
                let mk1 = big_pow(2, k + 1);
                if (&r * &r - &u).mod_floor(&mk1) != BigInt::zero() {
                    r += big_pow(2, k - 1);
                }
            }
            r.mod_floor(&big_pow(2, prec))
        } else {
            let res = rational_residue(&unit, &BigInt::from(p)).expect("unit");
            let res = u64::try_from(&res).expect("residue fits");
            let r0 = arith::sqrt_mod_prime(res, p)?;
            let ctx = PAdicContext { p, u: rat(p as i64 + 1), cap: prec };
            hensel_lift(&Rational::zero(), &(-unit), &BigInt::from(r0), &ctx, prec).ok()?
        };
        Some(Approx::Known { val: v / 2, unit: root, prec })
    }

    /// Base-p digit expansion of the unit part, least significant first.
    pub(crate) fn unit_digits(&self, p: u64) -> Option<Vec<u64>> {
        let Approx::Known { unit, prec, .. } = self else { return None };
        let pb = BigInt::from(p);
        let mut u = unit.clone();
        let mut out = Vec::with_capacity(*prec as usize);
        for _ in 0..*prec {
            let (q, r) = u.div_mod_floor(&pb);
            out.push(u64::try_from(&r).expect("digit"));
            u = q;
        }
        Some(out)
    }
}

/// p^e as a rational.
pub fn pow_rational(p: u64, e: i64) -> Rational {
    let base = Rational::from_integer(BigInt::from(p));
    if e >= 0 {
        num_traits::pow(base, e as usize)
    } else {
        num_traits::pow(base.recip(), (-e) as usize)
    }
}

/// `true` iff the rational is a square in ℚ_p.
pub fn is_padic_square(x: &Rational, p: u64) -> bool {
    if x.is_zero() {
        return true;
    }
    Approx::sqrt_of(x, p, 4).is_some()
}

/// `true` iff the rational is a square in ℚ.
pub fn rational_sqrt(x: &Rational) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    if &(&n * &n) == x.numer() && &(&d * &d) == x.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

/// Real cube root of a rational, when it is rational.
pub fn rational_cbrt(x: &Rational) -> Option<Rational> {
    let neg = x.is_negative();
    let a = x.abs();
    let n = a.numer().cbrt();
    let d = a.denom().cbrt();
    if &(&n * &n * &n) == a.numer() && &(&d * &d * &d) == a.denom() {
        let r = Rational::new(n, d);
        Some(if neg { -r } else { r })
    } else {
        None
    }
}
