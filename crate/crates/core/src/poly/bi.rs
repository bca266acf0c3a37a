use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::scalar::{format_rational, rat, Rational};

/// Sparse polynomial in T₁, T₂ over ℚ. Keys are `(deg T₁, deg T₂)`; lexicographic key order
/// with T₁ > T₂ is the monomial order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }

    pub fn constant(c: Rational) -> Self {
        BiPoly::monomial(0, 0, c)
    }

    pub fn monomial(i: u32, j: u32, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        BiPoly { terms }
    }

    pub fn t1() -> Self {
        BiPoly::monomial(1, 0, Rational::one())
    }

    pub fn t2() -> Self {
        BiPoly::monomial(0, 1, Rational::one())
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn insert_add(&mut self, k: (u32, u32), c: Rational) {
        let e = self.terms.entry(k).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn add(&self, o: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.insert_add(*k, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> BiPoly {
        if c.is_zero() {
            return BiPoly::zero();
        }
        BiPoly { terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect() }
    }

    pub fn neg(&self) -> BiPoly {
        self.scale(&rat(-1))
    }

    pub fn sub(&self, o: &BiPoly) -> BiPoly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for ((i, j), a) in &self.terms {
            for ((k, l), b) in &o.terms {
                out.insert_add((i + k, j + l), a * b);
            }
        }
        out
    }

    pub fn leading(&self) -> Option<((u32, u32), &Rational)> {
        self.terms.iter().next_back().map(|(k, v)| (*k, v))
    }

    pub fn eval(&self, t1: &Rational, t2: &Rational) -> Rational {
        self.terms.iter().fold(Rational::zero(), |acc, ((i, j), c)| {
            acc + c * num_traits::pow(t1.clone(), *i as usize) * num_traits::pow(t2.clone(), *j as usize)
        })
    }
}

/// Exact quotient `f / g` in ℚ[T₁, T₂], or `None` if `g` does not divide `f`.
pub fn divide_exact(f: &BiPoly, g: &BiPoly) -> Option<BiPoly> {
    let ((gi, gj), gc) = g.leading()?;
    let mut r = f.clone();
    let mut q = BiPoly::zero();
    while let Some(((ri, rj), rc)) = r.leading() {
        if ri < gi || rj < gj {
            return None;
        }
        let m = BiPoly::monomial(ri - gi, rj - gj, rc / gc);
        r = r.sub(&m.mul(g));
        q = q.add(&m);
    }
    Some(q)
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|((i, j), c)| {
                let mut s = format!("({})", format_rational(c));
                if *i > 0 {
                    s.push_str(&format!("*T1^{i}"));
                }
                if *j > 0 {
                    s.push_str(&format!("*T2^{j}"));
                }
                s
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
