//! Elements `a + bθ` of ℚ[X]/(X² − tX + d), with `θ` pinned to one p-adic root.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Zero};

use super::padic::{is_padic_square, rational_sqrt, rational_valuation, Approx, PAdicContext, Valuation};
use super::{rat, Rational};
use crate::error::{Error, Result};

/// The defining quadratic `X² − tX + d`. Reducible quadratics are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadField {
    pub t: Rational,
    pub d: Rational,
}

impl QuadField {
    pub fn new(t: Rational, d: Rational) -> Self {
        QuadField { t, d }
    }

    pub fn discriminant(&self) -> Rational {
        &self.t * &self.t - rat(4) * &self.d
    }

    /// Both roots when they are rational, larger first.
    pub fn rational_roots(&self) -> Option<(Rational, Rational)> {
        let s = rational_sqrt(&self.discriminant())?;
        let two = rat(2);
        Some(((&self.t + &s) / &two, (&self.t - &s) / &two))
    }

    /// `true` iff the quadratic has both roots in ℚ_p.
    pub fn splits_over(&self, p: u64) -> bool {
        is_padic_square(&self.discriminant(), p)
    }

    /// Roots as p-adic approximations, ordered by branch: `None` when not split over ℚ_p.
    pub(crate) fn branch_roots(&self, ctx: &PAdicContext) -> Result<Option<[Approx; 2]>> {
        let p = ctx.p();
        let cap = ctx.cap();
        let (r0, r1) = if let Some((x, y)) = self.rational_roots() {
            (Approx::from_rational(&x, p, cap), Approx::from_rational(&y, p, cap))
        } else {
            let Some(s) = Approx::sqrt_of(&self.discriminant(), p, cap) else {
                return Ok(None);
            };
            let t = Approx::from_rational(&self.t, p, cap);
            let half = Approx::from_rational(&(Rational::one() / rat(2)), p, cap);
            (t.add(&s, p).mul(&half, p), t.add(&s.neg(p), p).mul(&half, p))
        };
        match compare_roots(&r0, &r1, p, cap)? {
            Ordering::Greater => Ok(Some([r1, r0])),
            _ => Ok(Some([r0, r1])),
        }
    }

    /// The branch-`b` root when it is rational.
    pub fn rational_branch_root(&self, branch: u8, ctx: &PAdicContext) -> Result<Option<Rational>> {
        let Some((x, y)) = self.rational_roots() else {
            return Ok(None);
        };
        let p = ctx.p();
        let cap = ctx.cap();
        let ord = compare_roots(&Approx::from_rational(&x, p, cap), &Approx::from_rational(&y, p, cap), p, cap)?;
        let (first, second) = if ord == Ordering::Greater { (y, x) } else { (x, y) };
        Ok(Some(if branch == 0 { first } else { second }))
    }
}

/// Newton slope first, then unit digits from the least significant end.
fn compare_roots(x: &Approx, y: &Approx, p: u64, cap: u32) -> Result<Ordering> {
    let vx = x.valuation().ok_or(Error::PrecisionExhausted { cap })?;
    let vy = y.valuation().ok_or(Error::PrecisionExhausted { cap })?;
    if vx != vy {
        return Ok(vx.cmp(&vy));
    }
    match (x.unit_digits(p), y.unit_digits(p)) {
        (Some(dx), Some(dy)) => {
            for (a, b) in dx.iter().zip(dy.iter()) {
                if a != b {
                    return Ok(a.cmp(b));
                }
            }
            if dx.len() == dy.len() && x.is_exact_equal(y) {
                Ok(Ordering::Equal)
            } else {
                Err(Error::PrecisionExhausted { cap })
            }
        }
        // Both zero: a double root at 0.
        _ => Ok(Ordering::Equal),
    }
}

impl Approx {
    fn is_exact_equal(&self, other: &Approx) -> bool {
        match (self, other) {
            (Approx::Known { val: a, unit: u, prec: pa }, Approx::Known { val: b, unit: w, prec: pb }) => {
                a == b && u == w && pa == pb
            }
            _ => false,
        }
    }
}

/// `a + bθ`, where `θ` is the branch-selected root of the field's quadratic.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadExt {
    pub field: QuadField,
    pub a: Rational,
    pub b: Rational,
    pub branch: u8,
}

impl QuadExt {
    pub fn new(field: QuadField, a: Rational, b: Rational, branch: u8) -> Self {
        QuadExt { field, a, b, branch: branch.min(1) }
    }

    /// The generator `θ` itself.
    pub fn theta(field: QuadField, branch: u8) -> Self {
        QuadExt::new(field, Rational::zero(), Rational::one(), branch)
    }

    pub fn same_field(&self, other: &QuadExt) -> bool {
        self.field == other.field && self.branch == other.branch
    }

    pub fn from_rational(&self, r: Rational) -> QuadExt {
        QuadExt::new(self.field.clone(), r, Rational::zero(), self.branch)
    }

    pub fn add(&self, o: &QuadExt) -> QuadExt {
        QuadExt::new(self.field.clone(), &self.a + &o.a, &self.b + &o.b, self.branch)
    }

    pub fn neg(&self) -> QuadExt {
        QuadExt::new(self.field.clone(), -&self.a, -&self.b, self.branch)
    }

    pub fn mul(&self, o: &QuadExt) -> QuadExt {
        // θ² = tθ − d
        let bb = &self.b * &o.b;
        let a = &self.a * &o.a - &bb * &self.field.d;
        let b = &self.a * &o.b + &self.b * &o.a + &bb * &self.field.t;
        QuadExt::new(self.field.clone(), a, b, self.branch)
    }

    pub fn scale(&self, r: &Rational) -> QuadExt {
        QuadExt::new(self.field.clone(), &self.a * r, &self.b * r, self.branch)
    }

    /// Image under θ ↦ t − θ.
    pub fn conjugate(&self) -> QuadExt {
        QuadExt::new(self.field.clone(), &self.a + &self.b * &self.field.t, -&self.b, self.branch)
    }

    pub fn norm(&self) -> Rational {
        &self.a * &self.a + &self.a * &self.b * &self.field.t + &self.b * &self.b * &self.field.d
    }

    pub fn trace(&self) -> Rational {
        rat(2) * &self.a + &self.b * &self.field.t
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// `None` for zero and, in a reducible field, for zero divisors.
    pub fn inverse(&self) -> Option<QuadExt> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        Some(self.conjugate().scale(&(Rational::one() / n)))
    }

    pub fn valuation(&self, ctx: &PAdicContext) -> Result<Valuation> {
        if self.b.is_zero() {
            return Ok(rational_valuation(&self.a, ctx.p()));
        }
        if let Some(r) = self.field.rational_branch_root(self.branch, ctx)? {
            return Ok(rational_valuation(&(&self.a + &self.b * r), ctx.p()));
        }
        let p = ctx.p();
        let cap = ctx.cap();
        match self.field.branch_roots(ctx)? {
            None => Ok(rational_valuation(&self.norm(), p).halved()),
            Some(roots) => {
                let root = &roots[self.branch as usize];
                let a = Approx::from_rational(&self.a, p, cap);
                let b = Approx::from_rational(&self.b, p, cap);
                a.add(&b.mul(root, p), p).valuation().ok_or(Error::PrecisionExhausted { cap })
            }
        }
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} + {}*θ[X^2-({})X+({}),{}]",
            self.a, self.b, self.field.t, self.field.d, self.branch
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn field(t: i64, d: i64) -> QuadField {
        QuadField::new(rat(t), rat(d))
    }

    #[test]
    fn ramified_half_valuation() {
        let c3 = PAdicContext::any_prime(3).unwrap();
        for br in 0..2 {
            let th = QuadExt::theta(field(3, 3), br);
            assert_eq!(th.valuation(&c3).unwrap(), Valuation::Finite(q(1, 2)));
        }
    }

    #[test]
    fn split_rational_branches() {
        let c2 = PAdicContext::any_prime(2).unwrap();
        let b0 = QuadExt::theta(field(5, 6), 0);
        let b1 = QuadExt::theta(field(5, 6), 1);
        assert_eq!(b0.valuation(&c2).unwrap(), Valuation::int(0));
        assert_eq!(b1.valuation(&c2).unwrap(), Valuation::int(1));
    }

    #[test]
    fn split_over_qp_only() {
        // X² + 1 over ℚ₅: roots ≡ 2, 3 mod 5; branch 0 is the residue-2 root.
        let c5 = PAdicContext::new(5).unwrap();
        let f = field(0, 1);
        let th = QuadExt::theta(f.clone(), 0);
        assert_eq!(th.valuation(&c5).unwrap(), Valuation::int(0));
        // θ − 2 has valuation ≥ 1 on branch 0 and 0 on branch 1; θ − 7 reaches 2.
        let m2 = th.add(&th.from_rational(rat(-2)));
        assert_eq!(m2.valuation(&c5).unwrap(), Valuation::int(1));
        let m7 = th.add(&th.from_rational(rat(-7)));
        assert_eq!(m7.valuation(&c5).unwrap(), Valuation::int(2));
        let other = QuadExt::new(f, rat(-2), rat(1), 1);
        assert_eq!(other.valuation(&c5).unwrap(), Valuation::int(0));
    }

    #[test]
    fn split_newton_slopes_differ() {
        // X² − X + 5 over ℚ₅ splits with root valuations 0 and 1.
        let c5 = PAdicContext::new(5).unwrap();
        let f = field(1, 5);
        assert!(f.rational_roots().is_none());
        assert_eq!(QuadExt::theta(f.clone(), 0).valuation(&c5).unwrap(), Valuation::int(0));
        assert_eq!(QuadExt::theta(f, 1).valuation(&c5).unwrap(), Valuation::int(1));
    }

    #[test]
    fn inert_valuation_from_norm() {
        let c5 = PAdicContext::new(5).unwrap();
        let th = QuadExt::theta(field(0, -2), 0);
        let x = th.scale(&rat(25)).add(&th.from_rational(rat(5)));
        assert_eq!(x.valuation(&c5).unwrap(), Valuation::int(1));
    }

    #[test]
    fn arithmetic_and_conjugate() {
        let f = field(3, 5);
        let th = QuadExt::theta(f, 0);
        let sq = th.mul(&th);
        assert_eq!(sq, QuadExt::new(th.field.clone(), rat(-5), rat(3), 0));
        let x = QuadExt::new(th.field.clone(), q(1, 2), rat(4), 0);
        assert_eq!(x.mul(&x.inverse().unwrap()), th.from_rational(rat(1)));
        assert_eq!(th.add(&th.conjugate()), th.from_rational(rat(3)));
        assert_eq!(th.mul(&th.conjugate()), th.from_rational(rat(5)));
        assert_eq!(x.trace(), x.add(&x.conjugate()).a);
    }

    #[test]
    fn zero_divisor_has_no_inverse() {
        let f = field(5, 6);
        let th = QuadExt::theta(f, 0);
        assert!(th.add(&th.from_rational(rat(-2))).inverse().is_none());
    }
}
