use std::collections::BTreeMap;

use num_traits::Zero;

use super::Eigensystem;
use crate::error::{Error, Result};
use crate::hecke::{Binomial, Group, TransferBranch};
use crate::scalar::{pow_rational, rat, rational_cbrt, rational_sqrt, Rational, Scalar};

/// A solution (T, D) of the Sym³ quartic system.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum QuarticRoot {
    Rational { t: Rational, d: Rational },
    /// T and D exist only after adjoining a cube root; kept as (T³, TD, D³).
    CubicExt { a: Rational, p: Rational, c: Rational },
}

impl QuarticRoot {
    /// (a_ℓ, c_ℓ) = (T, D/ℓ) when rational.
    pub fn gl2_pair(&self, ell: u64) -> Option<(Rational, Rational)> {
        match self {
            QuarticRoot::Rational { t, d } => Some((t.clone(), d / rat(ell as i64))),
            QuarticRoot::CubicExt { .. } => None,
        }
    }

    fn invariants(&self) -> (Rational, Rational, Rational) {
        match self {
            QuarticRoot::Rational { t, d } => (t * t * t, t * d, d * d * d),
            QuarticRoot::CubicExt { a, p, c } => (a.clone(), p.clone(), c.clone()),
        }
    }
}

/// (e₁, e₂, e₃, e₄) = (T₂, T₂² − T₁ − ℓ²T₀, ℓ³T₂T₀, ℓ⁶T₀²) from GSp₄ values (T₀, T₁, T₂).
pub fn quartic_coefficients(ell: u64, v: &[Scalar]) -> Result<[Scalar; 4]> {
    let (t0, t1, t2) = (&v[0], &v[1], &v[2]);
    let l2 = pow_rational(ell, 2);
    let e2 = t2.checked_mul(t2)?.checked_sub(t1)?.checked_sub(&t0.scale(&l2))?;
    let e3 = t2.checked_mul(t0)?.scale(&pow_rational(ell, 3));
    let e4 = t0.checked_mul(t0)?.scale(&pow_rational(ell, 6));
    Ok([t2.clone(), e2, e3, e4])
}

fn rational_quadratic_roots(b: &Rational, c: &Rational) -> Vec<Rational> {
    // X² − bX + c
    let disc = b * b - rat(4) * c;
    match rational_sqrt(&disc) {
        None => Vec::new(),
        Some(s) if s.is_zero() => vec![b / rat(2)],
        Some(s) => vec![(b - &s) / rat(2), (b + &s) / rat(2)],
    }
}

/// All (T, D) with e₁ = T³ − 2TD, e₂ = D(T⁴ − 3DT² + 2D²), e₃ = D³e₁, e₄ = D⁶, found through
/// A = T³, P = TD, C = D³. An empty list means the quartic is not a symmetric cube.
pub fn is_sym3_quartic(e: &[Scalar; 4], allow_cubic_ext: bool) -> Result<Vec<QuarticRoot>> {
    let e: Vec<&Rational> = e
        .iter()
        .map(|x| x.as_rational().ok_or_else(|| Error::InvalidInput("quartic coefficients must be rational".into())))
        .collect::<Result<_>>()?;
    let (e1, e2, e3, e4) = (e[0], e[1], e[2], e[3]);
    let cs: Vec<Rational> = if !e1.is_zero() {
        let c = e3 / e1;
        if &(&c * &c) != e4 {
            return Ok(Vec::new());
        }
        vec![c]
    } else {
        if !e3.is_zero() {
            return Ok(Vec::new());
        }
        match rational_sqrt(e4) {
            None => return Ok(Vec::new()),
            Some(s) if s.is_zero() => vec![s],
            Some(s) => vec![s.clone(), -s],
        }
    };
    let mut out = Vec::new();
    for c in cs {
        for p in rational_quadratic_roots(e1, &(e2 - rat(2) * &c)) {
            let a = e1 + rat(2) * &p;
            if &a * &c != &p * &p * &p {
                continue;
            }
            let root = if !c.is_zero() {
                rational_cbrt(&c).map(|d| QuarticRoot::Rational { t: &p / &d, d })
            } else {
                rational_cbrt(&a).map(|t| QuarticRoot::Rational { t, d: Rational::zero() })
            };
            let root = match root {
                Some(r) => r,
                None if allow_cubic_ext => QuarticRoot::CubicExt { a: a.clone(), p: p.clone(), c: c.clone() },
                None => continue,
            };
            let (ra, rp, rc) = root.invariants();
            let ok = &ra - rat(2) * &rp == *e1
                && &rp * &ra - rat(3) * &rp * &rp + rat(2) * &rc == *e2
                && &rc * e1 == *e3
                && &rc * &rc == *e4;
            if ok && !out.contains(&root) {
                out.push(root);
            }
        }
    }
    Ok(out)
}

pub fn branch_binomials(branch: &TransferBranch) -> Vec<Binomial> {
    branch.binomials()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Sym3Classification {
    NotSym3 { witness: u64 },
    Candidate {
        /// Solutions of the quartic system at each tested prime.
        roots: BTreeMap<u64, Vec<QuarticRoot>>,
        /// Some prime needed a cube root outside ℚ, so (a_ℓ, c_ℓ) is fixed only up to a cube root of unity.
        cube_root_ambiguous: bool,
        /// Branches 1..=4 whose binomials vanish on the values at p, when those are present.
        branches: Option<Vec<u8>>,
    },
}

impl Sym3Classification {
    pub fn is_candidate(&self) -> bool {
        matches!(self, Sym3Classification::Candidate { .. })
    }
}

/// Branches among 1..=4 whose binomial relations hold on the given (U₀, U₁, U₂).
pub fn satisfied_branches(u: &[Scalar]) -> Result<Vec<u8>> {
    let mut out = Vec::new();
    for i in 1..=4u8 {
        let b = TransferBranch::new(i)?;
        let mut all = true;
        for rel in branch_binomials(&b) {
            all &= rel.eval(u)?.is_zero();
        }
        if all {
            out.push(i);
        }
    }
    Ok(out)
}

/// Runs the quartic test at every prime of `primes` (all spherical keys when empty).
pub fn classify_sym3(chi: &Eigensystem, primes: &[u64], allow_cubic_ext: bool) -> Result<Sym3Classification> {
    chi.expect_group(Group::GSp4)?;
    let primes: Vec<u64> = if primes.is_empty() { chi.spherical.keys().copied().collect() } else { primes.to_vec() };
    let mut roots = BTreeMap::new();
    let mut ambiguous = false;
    for ell in primes {
        let e = quartic_coefficients(ell, chi.spherical_at(ell)?)?;
        let r = is_sym3_quartic(&e, allow_cubic_ext)?;
        if r.is_empty() {
            return Ok(Sym3Classification::NotSym3 { witness: ell });
        }
        ambiguous |= r.iter().any(|x| matches!(x, QuarticRoot::CubicExt { .. }));
        roots.insert(ell, r);
    }
    let branches = chi.iwahori_p.as_deref().map(satisfied_branches).transpose()?;
    Ok(Sym3Classification::Candidate { roots, cube_root_ambiguous: ambiguous, branches })
}

/// Rational cube root of a rational scalar.
pub(crate) fn scalar_cbrt(x: &Scalar) -> Option<Scalar> {
    x.as_rational().and_then(rational_cbrt).map(Scalar::Rat)
}
