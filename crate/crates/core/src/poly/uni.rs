use std::fmt;

use crate::scalar::{rat, Scalar};

/// Dense univariate polynomial, ascending coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UniPoly {
    coeffs: Vec<Scalar>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        UniPoly::new(coeffs.iter().map(|&c| Scalar::int(c)).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn x() -> Self {
        UniPoly::from_ints(&[0, 1])
    }

    pub fn constant(c: Scalar) -> Self {
        UniPoly::new(vec![c])
    }

    /// X⁴ − e₁X³ + e₂X² − ..., from elementary symmetric functions.
    pub fn monic_from_elementary(e: &[Scalar]) -> Self {
        let d = e.len();
        let mut coeffs = vec![Scalar::zero(); d + 1];
        coeffs[d] = Scalar::one();
        for (i, ei) in e.iter().enumerate() {
            let k = i + 1;
            coeffs[d - k] = if k % 2 == 1 { -ei } else { ei.clone() };
        }
        UniPoly::new(coeffs)
    }

    /// ∏ (X − r).
    pub fn from_roots(roots: &[Scalar]) -> Self {
        roots.iter().fold(UniPoly::constant(Scalar::one()), |acc, r| {
            acc.mul(&UniPoly::new(vec![-r, Scalar::one()]))
        })
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(Scalar::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Signed elementary symmetric functions read back off a monic polynomial.
    pub fn elementary(&self) -> Vec<Scalar> {
        let d = self.degree().unwrap_or(0);
        (1..=d)
            .map(|k| {
                let c = self.coeff(d - k);
                if k % 2 == 1 {
                    -c
                } else {
                    c
                }
            })
            .collect()
    }

    pub fn add(&self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, o: &UniPoly) -> UniPoly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &UniPoly) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Scalar::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        UniPoly::new(out)
    }

    pub fn scale(&self, c: &Scalar) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn pow(&self, n: u32) -> UniPoly {
        (0..n).fold(UniPoly::constant(Scalar::one()), |acc, _| acc.mul(self))
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.coeffs.iter().rev().fold(Scalar::zero(), |acc, c| &(&acc * x) + c)
    }

    /// Substitute a polynomial for X.
    pub fn compose(&self, g: &UniPoly) -> UniPoly {
        self.coeffs
            .iter()
            .rev()
            .fold(UniPoly::zero(), |acc, c| acc.mul(g).add(&UniPoly::constant(c.clone())))
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*X")?,
                _ => write!(f, "({c})*X^{i}")?,
            }
        }
        Ok(())
    }
}

/// Characteristic polynomial of X² − TX + D's symmetric cube: roots α³, α²β, αβ², β³.
pub fn sym3_quadratic(t: &Scalar, d: &Scalar) -> UniPoly {
    let t2 = t * t;
    let t3 = &t2 * t;
    let d2 = d * d;
    let d3 = &d2 * d;
    let e1 = &t3 - &(t * d).scale(&rat(2));
    let e2 = d * &(&(&t2 * &t2) - &(d * &t2).scale(&rat(3)) + d2.scale(&rat(2)));
    let e3 = &d3 * &e1;
    let e4 = &d3 * &d3;
    UniPoly::monic_from_elementary(&[e1, e2, e3, e4])
}

/// Newton's identities: the monic degree-d polynomial whose roots have power sums `s`.
pub fn charpoly_from_power_traces(s: &[Scalar]) -> UniPoly {
    let mut e: Vec<Scalar> = Vec::with_capacity(s.len());
    for k in 1..=s.len() {
        // k·e_k = Σ_{i=1}^{k} (−1)^{i−1} e_{k−i} s_i
        let mut acc = Scalar::zero();
        for i in 1..=k {
            let prev = if k == i { Scalar::one() } else { e[k - i - 1].clone() };
            let term = &prev * &s[i - 1];
            acc = if i % 2 == 1 { &acc + &term } else { &acc - &term };
        }
        e.push(acc.scale(&(rat(1) / rat(k as i64))));
    }
    UniPoly::monic_from_elementary(&e)
}

/// Power sums s₁..s_d of the roots of a monic polynomial.
pub fn power_sums(f: &UniPoly) -> Vec<Scalar> {
    let e = f.elementary();
    let d = e.len();
    let mut s: Vec<Scalar> = Vec::with_capacity(d);
    for k in 1..=d {
        // s_k = Σ_{i=1}^{k−1} (−1)^{i−1} e_i s_{k−i} + (−1)^{k−1} k e_k
        let mut acc = Scalar::zero();
        for i in 1..k {
            let term = &e[i - 1] * &s[k - i - 1];
            acc = if i % 2 == 1 { &acc + &term } else { &acc - &term };
        }
        let last = e[k - 1].scale(&rat(k as i64));
        acc = if k % 2 == 1 { &acc + &last } else { &acc - &last };
        s.push(acc);
    }
    s
}

/// Trace of the symmetric cube of a 2-dimensional pseudocharacter: T(g)·T(g²).
pub fn sym3_trace(t_g: &Scalar, t_g2: &Scalar) -> Scalar {
    t_g * t_g2
}
