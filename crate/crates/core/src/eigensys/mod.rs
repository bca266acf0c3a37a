//! Eigensystems of GL₂ and GSp₄: normalization, p-stabilization, symmetric cube lifts, slopes,
//! twists, and the symmetric cube locus.

mod character;
mod classify;

use std::collections::BTreeMap;

pub use character::DirichletCharacter;
pub use classify::{
    branch_binomials, classify_sym3, is_sym3_quartic, quartic_coefficients, satisfied_branches, QuarticRoot,
    Sym3Classification,
};
pub(crate) use classify::scalar_cbrt;

use crate::arith::{gcd, is_prime, lcm};
use crate::error::{Error, Result};
use crate::hecke::{transfer_unramified, Group, TransferBranch};
use crate::levels::sym3_level;
use crate::scalar::{pow_rational, rat, PAdicContext, QuadExt, QuadField, Rational, Scalar, Valuation};
use crate::weights::Weight;

pub const DEGENERATE_FLAG: &str = "degenerate-double-root";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Eigensystem {
    pub id: Option<String>,
    pub group: Group,
    pub p: u64,
    pub tame_level: u64,
    pub weight: Weight,
    /// ℓ ↦ (T_ℓ, T_{ℓ,0}) for GL₂, (T_{ℓ,0}, T_{ℓ,1}, T_{ℓ,2}) for GSp₄.
    pub spherical: BTreeMap<u64, Vec<Scalar>>,
    /// Torus character values (t₀, t₁[, t₂]) at p.
    pub iwahori_p: Option<Vec<Scalar>>,
    pub nebentypus: Option<DirichletCharacter>,
    pub flags: Vec<String>,
}

impl Eigensystem {
    pub fn new(group: Group, p: u64, tame_level: u64, weight: Weight) -> Self {
        Eigensystem {
            id: None,
            group,
            p,
            tame_level,
            weight,
            spherical: BTreeMap::new(),
            iwahori_p: None,
            nebentypus: None,
            flags: Vec::new(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidInput(m));
        if !is_prime(self.p) {
            return bad(format!("p = {} is not prime", self.p));
        }
        if self.tame_level == 0 || gcd(self.tame_level, self.p) != 1 {
            return bad(format!("tame level {} must be positive and prime to p", self.tame_level));
        }
        match (self.group, self.weight) {
            (Group::GL2, Weight::GL2(_)) => {}
            (Group::GSp4, Weight::GSp4(k1, k2)) if k1 >= k2 => {}
            (Group::GSp4, Weight::GSp4(..)) => return bad("GSp4 weight needs k1 >= k2".into()),
            _ => return bad(format!("weight {} does not fit group {}", self.weight, self.group)),
        }
        let width = self.group.rank();
        for (ell, v) in &self.spherical {
            if !is_prime(*ell) {
                return bad(format!("spherical key {ell} is not prime"));
            }
            if self.tame_level % ell == 0 {
                return bad(format!("spherical prime {ell} divides the tame level"));
            }
            if v.len() != width {
                return bad(format!("spherical values at {ell}: expected {width}, found {}", v.len()));
            }
        }
        if let Some(t) = &self.iwahori_p {
            if t.len() != width {
                return bad(format!("iwahori values: expected {width}, found {}", t.len()));
            }
        }
        if let Some(eps) = &self.nebentypus {
            if self.tame_level % eps.modulus() != 0 {
                return bad(format!("nebentypus modulus {} does not divide the tame level", eps.modulus()));
            }
        }
        Ok(())
    }

    pub fn spherical_at(&self, ell: u64) -> Result<&[Scalar]> {
        self.spherical.get(&ell).map(|v| v.as_slice()).ok_or_else(|| Error::MissingData(format!("no spherical values at {ell}")))
    }

    pub fn iwahori(&self) -> Result<&[Scalar]> {
        self.iwahori_p.as_deref().ok_or_else(|| Error::MissingData("iwahori values at p are not set".into()))
    }

    pub fn is_degenerate(&self) -> bool {
        self.flags.iter().any(|f| f == DEGENERATE_FLAG)
    }

    fn expect_group(&self, g: Group) -> Result<()> {
        if self.group != g {
            return Err(Error::GroupMismatch { expected: g.to_string(), found: self.group.to_string() });
        }
        Ok(())
    }
}

/// p^{−(k₂−2)} for GSp₄ weights.
fn normalization_factor(w: &Weight, p: u64) -> Rational {
    match *w {
        Weight::GL2(_) => rat(1),
        Weight::GSp4(_, k2) => pow_rational(p, -(k2 - 2)),
    }
}

/// Normalized system: U_{p,1} scaled by p^{−(k₂−2)} for GSp₄; GL₂ unchanged.
pub fn normalize(chi: &Eigensystem) -> Eigensystem {
    let mut out = chi.clone();
    if let (Group::GSp4, Some(t)) = (chi.group, out.iwahori_p.as_mut()) {
        t[1] = t[1].scale(&normalization_factor(&chi.weight, chi.p));
    }
    out
}

/// The two p-stabilizations (t₀, t₁) = (αβ, α) and (αβ, β), α of smaller slope first.
pub fn stabilizations(chi: &Eigensystem, ctx: &PAdicContext) -> Result<[Eigensystem; 2]> {
    chi.expect_group(Group::GL2)?;
    let p = chi.p;
    let vals = chi.spherical_at(p)?;
    let (Some(tp), Some(tp0)) = (vals[0].as_rational(), vals[1].as_rational()) else {
        return Err(Error::InvalidInput("stabilization needs rational T_p and T_{p,0}".into()));
    };
    let d = rat(p as i64) * tp0;
    let field = QuadField::new(tp.clone(), d.clone());
    let (alpha, beta) = match (field.rational_branch_root(0, ctx)?, field.rational_branch_root(1, ctx)?) {
        (Some(a), Some(b)) => (Scalar::Rat(a), Scalar::Rat(b)),
        _ => {
            let theta = QuadExt::theta(field.clone(), 0);
            let a = Scalar::from_quad(theta.clone());
            let b = Scalar::from_quad(theta.conjugate());
            (a, b)
        }
    };
    let degenerate = field.discriminant() == rat(0);
    let make = |root: Scalar| {
        let mut s = chi.clone();
        s.iwahori_p = Some(vec![Scalar::Rat(d.clone()), root]);
        if degenerate {
            s.flags.push(DEGENERATE_FLAG.to_string());
        }
        s
    };
    Ok([make(alpha), make(beta)])
}

/// GSp₄ spherical values (T₀, T₁, T₂) of the symmetric cube of (T_ℓ, T_{ℓ,0}) = (a, c).
pub fn transfer_values(ell: u64, a: &Scalar, c: &Scalar) -> Result<Vec<Scalar>> {
    let vals = [c.clone(), a.clone()];
    (0..3).map(|i| transfer_unramified(ell, i)?.eval(&vals)).collect()
}

/// Symmetric cube lift along branch `i`. Every spherical key is transferred; iwahori values are
/// lifted when present and required unless `spherical_only`.
fn lift_impl(chi: &Eigensystem, branch: u8, spherical_only: bool) -> Result<Eigensystem> {
    chi.expect_group(Group::GL2)?;
    let Weight::GL2(k) = chi.weight else { unreachable!("validated GL2 weight") };
    let b = TransferBranch::new(branch)?;
    let mut out = Eigensystem::new(Group::GSp4, chi.p, sym3_level(chi.tame_level), Weight::GSp4(2 * k - 1, k + 1));
    for (ell, v) in &chi.spherical {
        out.spherical.insert(*ell, transfer_values(*ell, &v[0], &v[1])?);
    }
    out.iwahori_p = match (&chi.iwahori_p, spherical_only) {
        (Some(t), _) => Some(b.lift_values(t)?),
        (None, true) => None,
        (None, false) => return Err(Error::MissingData("sym3_lift needs a stabilized system".into())),
    };
    out.nebentypus = chi.nebentypus.as_ref().map(|e| e.pow(3));
    out.flags = chi.flags.clone();
    Ok(out)
}

pub fn sym3_lift(chi: &Eigensystem, branch: u8) -> Result<Eigensystem> {
    lift_impl(chi, branch, false)
}

/// Lift of the spherical part only; iwahori values are carried when present.
pub fn sym3_lift_spherical(chi: &Eigensystem) -> Result<Eigensystem> {
    lift_impl(chi, 1, true)
}

/// v_p of the normalized U_p value.
pub fn slope(chi: &Eigensystem, ctx: &PAdicContext) -> Result<Valuation> {
    let t = chi.iwahori()?;
    match chi.group {
        Group::GL2 => t[1].valuation(ctx),
        Group::GSp4 => {
            let u = t[1].checked_mul(&t[2])?.scale(&normalization_factor(&chi.weight, chi.p));
            u.valuation(ctx)
        }
    }
}

/// slo < k₂ − 3.
pub fn classicality_guaranteed(chi: &Eigensystem, ctx: &PAdicContext) -> Result<bool> {
    chi.expect_group(Group::GSp4)?;
    let Weight::GSp4(_, k2) = chi.weight else { unreachable!("validated GSp4 weight") };
    Ok(slope(chi, ctx)? < Valuation::int(k2 - 3))
}

/// Twist by η. GSp₄: (T₀, T₁, T₂) ↦ (η²T₀, η²T₁, ηT₂) and (t₀, t₁, t₂) ↦ (η(p)²t₀, η(p)²t₁, η(p)t₂);
/// GL₂: (T, T₀) ↦ (ηT, η²T₀) and (t₀, t₁) ↦ (η(p)²t₀, η(p)t₁). Primes dividing m₀ are dropped.
pub fn twist(chi: &Eigensystem, eta: &DirichletCharacter) -> Result<Eigensystem> {
    if gcd(eta.modulus(), chi.p) != 1 {
        return Err(Error::InvalidInput(format!("character modulus {} is not prime to p", eta.modulus())));
    }
    // per-slot powers of η
    let powers: &[u32] = match chi.group {
        Group::GL2 => &[1, 2],
        Group::GSp4 => &[2, 2, 1],
    };
    let iw_powers: &[u32] = match chi.group {
        Group::GL2 => &[2, 1],
        Group::GSp4 => &[2, 2, 1],
    };
    let scale = |vals: &[Scalar], pw: &[u32], n: u64| -> Result<Vec<Scalar>> {
        let e = eta.value(n)?;
        vals.iter().zip(pw).map(|(v, k)| v.checked_mul(&e.pow(*k as i64)?)).collect()
    };
    let mut out = chi.clone();
    out.spherical = BTreeMap::new();
    for (ell, v) in &chi.spherical {
        if eta.modulus() % ell != 0 {
            out.spherical.insert(*ell, scale(v, powers, *ell)?);
        }
    }
    if let Some(t) = &chi.iwahori_p {
        out.iwahori_p = Some(scale(t, iw_powers, chi.p)?);
    }
    out.tame_level = match chi.group {
        Group::GL2 => lcm(chi.tame_level, eta.modulus() * eta.modulus()),
        Group::GSp4 => lcm(chi.tame_level, eta.modulus()).pow(2),
    };
    let eps = chi.nebentypus.clone().unwrap_or_else(DirichletCharacter::trivial);
    out.nebentypus = Some(eps.mul(&eta.pow(2)));
    Ok(out)
}

#[cfg(test)]
mod tests;
