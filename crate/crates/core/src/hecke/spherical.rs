use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::weyl::{orbit, to_weight, WeylElement};
use super::{Exp, Group, TorusElement};
use crate::error::{Error, Result};
use crate::scalar::{format_rational, pow_rational, rat, Rational, Scalar};

/// Generator index in a spherical Hecke algebra. GSp₄: T₀, T₁, T₂ at 0, 1, 2.
/// GL₂: T₀ at 0 and T (= T_{ℓ,1}) at 1.
pub type SphGen = usize;

/// A polynomial in the spherical generators, Laurent in T₀.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SphericalPoly {
    group: Group,
    ell: u64,
    terms: BTreeMap<Exp, Rational>,
}

impl SphericalPoly {
    pub fn zero(group: Group, ell: u64) -> Self {
        SphericalPoly { group, ell, terms: BTreeMap::new() }
    }

    pub fn constant(group: Group, ell: u64, c: Rational) -> Self {
        SphericalPoly::monomial(group, ell, [0, 0, 0], c)
    }

    pub fn monomial(group: Group, ell: u64, exp: Exp, c: Rational) -> Self {
        let mut p = SphericalPoly::zero(group, ell);
        p.insert_add(exp, c);
        p
    }

    pub fn generator(group: Group, ell: u64, g: SphGen) -> Self {
        let mut e = [0; 3];
        e[g] = 1;
        SphericalPoly::monomial(group, ell, e, Rational::one())
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

    fn insert_add(&mut self, exp: Exp, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(exp).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn add(&self, o: &SphericalPoly) -> SphericalPoly {
        assert!(self.group == o.group && self.ell == o.ell, "spherical polynomials over different algebras");
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.insert_add(*e, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> SphericalPoly {
        let mut out = SphericalPoly::zero(self.group, self.ell);
        for (e, v) in &self.terms {
            out.insert_add(*e, v * c);
        }
        out
    }

    pub fn sub(&self, o: &SphericalPoly) -> SphericalPoly {
        self.add(&o.scale(&rat(-1)))
    }

    pub fn mul(&self, o: &SphericalPoly) -> SphericalPoly {
        assert!(self.group == o.group && self.ell == o.ell, "spherical polynomials over different algebras");
        let mut out = SphericalPoly::zero(self.group, self.ell);
        for (e, a) in &self.terms {
            for (f, b) in &o.terms {
                out.insert_add([e[0] + f[0], e[1] + f[1], e[2] + f[2]], a * b);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> SphericalPoly {
        (0..n).fold(SphericalPoly::constant(self.group, self.ell, Rational::one()), |acc, _| acc.mul(self))
    }

    /// Evaluates at generator values (indexed as in [`SphGen`]).
    pub fn eval(&self, values: &[Scalar]) -> Result<Scalar> {
        let mut acc = Scalar::zero();
        for (e, c) in &self.terms {
            let mut m = Scalar::Rat(c.clone());
            for (g, k) in e.iter().enumerate().take(self.group.rank()) {
                if *k != 0 {
                    m = &m * &values[g].pow(*k)?;
                }
            }
            acc = &acc + &m;
        }
        Ok(acc)
    }

    /// Ring map sending generator `g` to `images[g]`. T₀ may appear with negative exponent only
    /// if its image is a monomial.
    pub fn substitute(&self, images: &[SphericalPoly]) -> Result<SphericalPoly> {
        let target = &images[0];
        let mut acc = SphericalPoly::zero(target.group, target.ell);
        for (e, c) in &self.terms {
            let mut m = SphericalPoly::constant(target.group, target.ell, c.clone());
            for (g, k) in e.iter().enumerate().take(self.group.rank()) {
                let img = if *k >= 0 {
                    images[g].pow(*k as u32)
                } else {
                    images[g].monomial_inverse()?.pow(k.unsigned_abs() as u32)
                };
                m = m.mul(&img);
            }
            acc = acc.add(&m);
        }
        Ok(acc)
    }

    fn monomial_inverse(&self) -> Result<SphericalPoly> {
        match self.terms.iter().next() {
            Some((e, c)) if self.terms.len() == 1 => Ok(SphericalPoly::monomial(
                self.group,
                self.ell,
                [-e[0], -e[1], -e[2]],
                c.recip(),
            )),
            _ => Err(Error::DivisionByZero),
        }
    }

    /// Image in the torus algebra.
    pub fn satake(&self) -> TorusElement {
        let imgs: Vec<TorusElement> = (0..self.group.rank()).map(|g| satake_generator(self.group, self.ell, g)).collect();
        let t0_inv = TorusElement::monomial(
            self.group,
            self.ell,
            [-1, 0, 0],
            pow_rational(self.ell, self.group.t0_scale()),
        );
        let mut acc = TorusElement::zero(self.group, self.ell);
        for (e, c) in &self.terms {
            let mut m = TorusElement::monomial(self.group, self.ell, [0, 0, 0], c.clone());
            for (g, k) in e.iter().enumerate().take(self.group.rank()) {
                let f = if *k < 0 {
                    t0_inv.pow(k.unsigned_abs() as u32)
                } else {
                    imgs[g].pow(*k as u32)
                };
                m = m.mul(&f);
            }
            acc = acc.add(&m);
        }
        acc
    }
}

/// Satake image of one generator.
pub fn satake_generator(group: Group, ell: u64, g: SphGen) -> TorusElement {
    let t0 = TorusElement::generator(group, ell, 0);
    match (group, g) {
        (_, 0) => t0.scale(&pow_rational(ell, -group.t0_scale())),
        (Group::GL2, _) => {
            let t1 = TorusElement::generator(group, ell, 1);
            t1.add(&TorusElement::monomial(group, ell, [1, -1, 0], Rational::one()))
        }
        (Group::GSp4, 2) => orbit_sum(group, ell, &[0, 0, 1]),
        (Group::GSp4, _) => {
            let t2 = orbit_sum(group, ell, &[0, 0, 1]);
            let orb = orbit(group, &[0, 0, 1]);
            let mut e2 = TorusElement::zero(group, ell);
            for i in 0..orb.len() {
                for j in i + 1..orb.len() {
                    let (a, b) = (orb[i], orb[j]);
                    e2.insert_add([a[0] + b[0], a[1] + b[1], a[2] + b[2]], Rational::one());
                }
            }
            t2.mul(&t2).sub(&e2).sub(&t0.scale(&pow_rational(ell, -1)))
        }
    }
}

pub(crate) fn orbit_sum(group: Group, ell: u64, e: &Exp) -> TorusElement {
    let mut out = TorusElement::zero(group, ell);
    for x in orbit(group, e) {
        out.insert_add(x, Rational::one());
    }
    out
}

/// `true` iff every Weyl generator fixes `x`.
pub fn is_invariant(x: &TorusElement) -> bool {
    let n = match x.group() {
        Group::GL2 => 1,
        Group::GSp4 => 3,
    };
    (0..n).all(|i| WeylElement::generator(x.group(), i as u8).and_then(|w| w.act(x)).as_ref() == Ok(x))
}

/// Writes a Weyl-invariant torus element as a spherical polynomial, by repeatedly cancelling
/// the leading dominant weight.
pub fn reduce(x: &TorusElement) -> Result<SphericalPoly> {
    if !is_invariant(x) {
        return Err(Error::NotInvariant);
    }
    let group = x.group();
    let ell = x.ell();
    let mut rest = x.clone();
    let mut out = SphericalPoly::zero(group, ell);
    while !rest.is_zero() {
        let (lead, coef) = rest
            .terms()
            .iter()
            .max_by_key(|(e, _)| dominance_key(group, e))
            .map(|(e, c)| (*e, c.clone()))
            .expect("nonempty");
        let m = leading_monomial(group, ell, &lead)?.scale(&coef);
        rest = rest.sub(&m.satake());
        out = out.add(&m);
    }
    Ok(out)
}

fn dominance_key(group: Group, e: &Exp) -> (i64, i64) {
    match group {
        Group::GL2 => (e[1], 0),
        Group::GSp4 => {
            let [nu, a, b] = to_weight(e);
            let (x, y) = (2 * a - nu, 2 * b - nu);
            (x + y, x)
        }
    }
}

/// The spherical monomial whose Satake image has leading term t^e with coefficient 1.
fn leading_monomial(group: Group, ell: u64, e: &Exp) -> Result<SphericalPoly> {
    match group {
        Group::GL2 => {
            if e[1] < 0 {
                return Err(Error::NotInvariant);
            }
            let c = e[0];
            Ok(SphericalPoly::monomial(group, ell, [c, e[1], 0], pow_rational(ell, c)))
        }
        Group::GSp4 => {
            let [nu, a, b] = to_weight(e);
            let (x, y) = (2 * a - nu, 2 * b - nu);
            if !(x >= y && y >= 0) {
                return Err(Error::NotInvariant);
            }
            let c = (nu - x) / 2;
            let t2 = SphericalPoly::generator(group, ell, 2);
            let t1 = SphericalPoly::generator(group, ell, 1);
            let q = t2.mul(&t2).sub(&t1);
            let t0 = SphericalPoly::monomial(group, ell, [c, 0, 0], pow_rational(ell, 3 * c));
            Ok(t2.pow(y as u32).mul(&q.pow(((x - y) / 2) as u32)).mul(&t0))
        }
    }
}

/// ∏ over the Weyl orbit of (X − x^w), coefficients ascending in X and expressed spherically.
pub fn minimal_polynomial(x: &TorusElement) -> Result<Vec<SphericalPoly>> {
    let group = x.group();
    let ell = x.ell();
    let supported: &[Exp] = match group {
        Group::GL2 => &[[0, 1, 0]],
        Group::GSp4 => &[[0, 0, 1], [0, 1, 0]],
    };
    let e = x
        .as_monic_monomial()
        .filter(|e| supported.contains(e))
        .ok_or_else(|| Error::UnsupportedGenerator(x.to_string()))?;
    // coefficients in the torus algebra, ascending in X
    let mut poly: Vec<TorusElement> = vec![TorusElement::one(group, ell)];
    for y in orbit(group, &e) {
        let root = TorusElement::monomial(group, ell, y, Rational::one());
        let mut next = vec![TorusElement::zero(group, ell); poly.len() + 1];
        for (i, c) in poly.iter().enumerate() {
            next[i + 1] = next[i + 1].add(c);
            next[i] = next[i].sub(&c.mul(&root));
        }
        poly = next;
    }
    poly.iter().map(reduce).collect()
}

impl fmt::Display for SphericalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let names: &[&str] = match self.group {
            Group::GL2 => &["T0", "T"],
            Group::GSp4 => &["T0", "T1", "T2"],
        };
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(e, c)| {
                let mut s = format!("({})", format_rational(c));
                for (i, k) in e.iter().take(self.group.rank()).enumerate() {
                    match k {
                        0 => {}
                        1 => s.push_str(&format!("*{}", names[i])),
                        _ => s.push_str(&format!("*{}^{k}", names[i])),
                    }
                }
                s
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
