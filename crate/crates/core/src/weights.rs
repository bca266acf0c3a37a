//! Weight-space coordinates, the symmetric cube weight map, Hodge–Tate weights and
//! Sen eigenvalue factorizations.

use std::fmt;

use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::poly::{divide_exact, BiPoly, UniPoly};
use crate::scalar::{rat, rational_valuation, PAdicContext, Rational, Scalar, Valuation};

/// A classical weight: k for GL₂, (k₁, k₂) for GSp₄.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Weight {
    GL2(i64),
    GSp4(i64, i64),
}

impl Weight {
    pub fn coords(&self) -> Vec<i64> {
        match *self {
            Weight::GL2(k) => vec![k],
            Weight::GSp4(k1, k2) => vec![k1, k2],
        }
    }

    /// Weight of the symmetric cube lift.
    pub fn sym3(&self) -> Option<Weight> {
        match *self {
            Weight::GL2(k) => Some(Weight::GSp4(2 * k - 1, k + 1)),
            Weight::GSp4(..) => None,
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Weight::GL2(k) => write!(f, "{k}"),
            Weight::GSp4(a, b) => write!(f, "({a},{b})"),
        }
    }
}

pub fn hodge_tate_weights(w: &Weight) -> Vec<i64> {
    let mut v = match *w {
        Weight::GL2(k) => vec![0, k - 1],
        Weight::GSp4(k1, k2) => vec![0, k2 - 2, k1 - 1, k1 + k2 - 3],
    };
    v.sort();
    v
}

fn u_pow(ctx: &PAdicContext, k: i64) -> Rational {
    let u = ctx.u().clone();
    if k >= 0 {
        num_traits::pow(u, k as usize)
    } else {
        num_traits::pow(u.recip(), k.unsigned_abs() as usize)
    }
}

/// The coordinate u^k − 1 of a classical weight.
pub fn classical_point(k: i64, ctx: &PAdicContext) -> Rational {
    u_pow(ctx, k) - Rational::one()
}

/// T ↦ (u⁻¹(1+T)² − 1, u(1+T) − 1).
pub fn iota(t: &Rational, ctx: &PAdicContext) -> (Rational, Rational) {
    let s = Rational::one() + t;
    (u_pow(ctx, -1) * &s * &s - Rational::one(), ctx.u() * s - Rational::one())
}

/// The same map with T left symbolic.
pub fn iota_symbolic(ctx: &PAdicContext) -> (UniPoly, UniPoly) {
    let s = UniPoly::from_ints(&[1, 1]);
    let one = UniPoly::from_ints(&[1]);
    let t1 = s.mul(&s).scale(&Scalar::Rat(u_pow(ctx, -1))).sub(&one);
    let t2 = s.scale(&Scalar::Rat(ctx.u().clone())).sub(&one);
    (t1, t2)
}

/// u⁻³(1+T₂)² − (1+T₁), for polynomial coordinates.
pub fn image_equation(t1: &UniPoly, t2: &UniPoly, ctx: &PAdicContext) -> UniPoly {
    let one = UniPoly::from_ints(&[1]);
    let s2 = one.add(t2);
    s2.mul(&s2).scale(&Scalar::Rat(u_pow(ctx, -3))).sub(&one.add(t1))
}

fn one_plus(x: BiPoly) -> BiPoly {
    x.add(&BiPoly::constant(Rational::one()))
}

/// Eigenvalues of exp(φ′): 1, u⁻²(1+T₂), u⁻¹(1+T₁), u⁻³(1+T₁)(1+T₂).
pub fn sen_eigenvalues(ctx: &PAdicContext) -> [BiPoly; 4] {
    let a = one_plus(BiPoly::t1());
    let b = one_plus(BiPoly::t2());
    [
        BiPoly::constant(Rational::one()),
        b.scale(&u_pow(ctx, -2)),
        a.scale(&u_pow(ctx, -1)),
        a.mul(&b).scale(&u_pow(ctx, -3)),
    ]
}

/// Diagonal of C_{T₁,T₂}.
pub fn sen_diagonal(ctx: &PAdicContext) -> [BiPoly; 4] {
    let [e0, e1, e2, e3] = sen_eigenvalues(ctx);
    [e3, e2, e1, e0]
}

/// The four bad-prime generators, with display names.
pub fn bad_divisors(ctx: &PAdicContext) -> Vec<(&'static str, BiPoly)> {
    let u = ctx.u().clone();
    let a = one_plus(BiPoly::t1());
    let b = one_plus(BiPoly::t2());
    vec![
        ("1+T1-u", a.sub(&BiPoly::constant(u.clone()))),
        ("1+T2-u^2", b.sub(&BiPoly::constant(&u * &u))),
        ("1+T2-u(1+T1)", b.sub(&a.scale(&u))),
        ("(1+T1)(1+T2)-u^3", a.mul(&b).sub(&BiPoly::constant(&u * &u * &u))),
    ]
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SenFactor {
    /// eigenvalue indices (i, j), difference e_j − e_i
    pub pair: (usize, usize),
    pub difference: BiPoly,
    pub divisor_name: &'static str,
    pub divisor: BiPoly,
    pub cofactor: BiPoly,
}

/// Every pairwise difference of the exp(φ′) eigenvalues, split as (bad divisor) × cofactor.
pub fn sen_eigenvalue_differences(ctx: &PAdicContext) -> Result<Vec<SenFactor>> {
    let e = sen_eigenvalues(ctx);
    let bad = bad_divisors(ctx);
    let mut out = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            let difference = e[j].sub(&e[i]);
            let (name, divisor, cofactor) = bad
                .iter()
                .find_map(|(n, g)| divide_exact(&difference, g).map(|q| (*n, g.clone(), q)))
                .ok_or_else(|| Error::NoBadDivisor { difference: difference.to_string() })?;
            out.push(SenFactor { pair: (i, j), difference, divisor_name: name, divisor, cofactor });
        }
    }
    Ok(out)
}

/// Disc of radius p^{−s_h} membership: v_p(k_i) > s_h − 1 for every coordinate.
pub fn adapted_disc_contains(k: &[i64], s_h: &Rational, ctx: &PAdicContext) -> Result<bool> {
    if s_h.is_negative() {
        return Err(Error::InvalidInput(format!("s_h = {s_h} must be ≥ 0")));
    }
    let bound = Valuation::Finite(s_h - rat(1));
    Ok(k.iter().all(|&ki| rational_valuation(&rat(ki), ctx.p()) > bound))
}
