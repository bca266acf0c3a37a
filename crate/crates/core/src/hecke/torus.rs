use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::{Exp, Group};
use crate::scalar::{format_rational, Rational};

/// A Laurent combination of torus double cosets at a prime ℓ, indexed by exponent vectors
/// in the generators t₀, t₁ (and t₂ for GSp₄). Unused trailing slots are zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TorusElement {
    group: Group,
    ell: u64,
    terms: BTreeMap<Exp, Rational>,
}

impl TorusElement {
    pub fn zero(group: Group, ell: u64) -> Self {
        TorusElement { group, ell, terms: BTreeMap::new() }
    }

    pub fn monomial(group: Group, ell: u64, exp: Exp, c: Rational) -> Self {
        let mut t = TorusElement::zero(group, ell);
        t.insert_add(exp, c);
        t
    }

    pub fn one(group: Group, ell: u64) -> Self {
        TorusElement::monomial(group, ell, [0, 0, 0], Rational::one())
    }

    /// The generator t_i.
    pub fn generator(group: Group, ell: u64, i: usize) -> Self {
        let mut e = [0; 3];
        e[i] = 1;
        TorusElement::monomial(group, ell, e, Rational::one())
    }

    pub fn group(&self) -> Group {
        self.group
    }

    pub fn ell(&self) -> u64 {
        self.ell
    }

    pub fn terms(&self) -> &BTreeMap<Exp, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The single exponent vector of a monic monomial.
    pub fn as_monic_monomial(&self) -> Option<Exp> {
        match self.terms.iter().next() {
            Some((e, c)) if self.terms.len() == 1 && c.is_one() => Some(*e),
            _ => None,
        }
    }

    pub(crate) fn insert_add(&mut self, exp: Exp, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(exp).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&exp);
        }
    }

    fn check(&self, o: &TorusElement) {
        assert!(
            self.group == o.group && self.ell == o.ell,
            "torus elements over different groups or primes"
        );
    }

    pub fn add(&self, o: &TorusElement) -> TorusElement {
        self.check(o);
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.insert_add(*e, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> TorusElement {
        let mut out = TorusElement::zero(self.group, self.ell);
        for (e, v) in &self.terms {
            out.insert_add(*e, v * c);
        }
        out
    }

    pub fn sub(&self, o: &TorusElement) -> TorusElement {
        self.add(&o.scale(&-Rational::one()))
    }

    pub fn mul(&self, o: &TorusElement) -> TorusElement {
        self.check(o);
        let mut out = TorusElement::zero(self.group, self.ell);
        for (e, a) in &self.terms {
            for (f, b) in &o.terms {
                out.insert_add([e[0] + f[0], e[1] + f[1], e[2] + f[2]], a * b);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> TorusElement {
        (0..n).fold(TorusElement::one(self.group, self.ell), |acc, _| acc.mul(self))
    }

    /// Applies an exponent-lattice map termwise.
    pub fn map_exponents(&self, group: Group, f: impl Fn(&Exp) -> Exp) -> TorusElement {
        let mut out = TorusElement::zero(group, self.ell);
        for (e, c) in &self.terms {
            out.insert_add(f(e), c.clone());
        }
        out
    }
}

impl fmt::Display for TorusElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let n = self.group.rank();
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut s = format!("({})", format_rational(c));
                for (i, k) in e.iter().take(n).enumerate() {
                    if *k != 0 {
                        s.push_str(&format!("*t{i}^{k}"));
                    }
                }
                s
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
