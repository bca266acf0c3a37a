use std::fmt;

use crate::arith::{gcd, is_prime, lcm, legendre};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A Dirichlet character modulo `modulus` with values in the `order`-th roots of unity, stored
/// as exponents: η(r) = ζ^{exponents[r]}, `None` off the unit group.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DirichletCharacter {
    modulus: u64,
    order: u32,
    exponents: Vec<Option<u32>>,
}

impl DirichletCharacter {
    pub fn new(modulus: u64, order: u32, exponents: Vec<Option<u32>>) -> Result<Self> {
        if modulus == 0 || order == 0 {
            return Err(Error::InvalidInput("character modulus and order must be positive".into()));
        }
        if exponents.len() as u64 != modulus {
            return Err(Error::InvalidInput(format!("character table has {} entries, expected {modulus}", exponents.len())));
        }
        for (r, e) in exponents.iter().enumerate() {
            let unit = gcd(r as u64, modulus) == 1;
            match e {
                Some(k) if !unit || *k >= order => {
                    return Err(Error::InvalidInput(format!("bad character value at residue {r}")));
                }
                None if unit => return Err(Error::InvalidInput(format!("missing character value at unit {r}"))),
                _ => {}
            }
        }
        if modulus > 1 && exponents[1] != Some(0) {
            return Err(Error::InvalidInput("character must send 1 to 1".into()));
        }
        for a in 0..modulus {
            for b in a..modulus {
                if let (Some(x), Some(y)) = (exponents[a as usize], exponents[b as usize]) {
                    let ab = ((a as u128 * b as u128) % modulus as u128) as usize;
                    if exponents[ab] != Some((x + y) % order) {
                        return Err(Error::InvalidInput(format!("character is not multiplicative at ({a}, {b})")));
                    }
                }
            }
        }
        Ok(DirichletCharacter { modulus, order, exponents })
    }

    pub fn trivial() -> Self {
        DirichletCharacter { modulus: 1, order: 1, exponents: vec![Some(0)] }
    }

    /// The quadratic character r ↦ (r/q) for an odd prime q.
    pub fn legendre(q: u64) -> Result<Self> {
        if q == 2 || !is_prime(q) {
            return Err(Error::InvalidInput(format!("legendre character needs an odd prime, got {q}")));
        }
        let exponents = (0..q)
            .map(|r| match legendre(r as i64, q) {
                0 => None,
                1 => Some(0),
                _ => Some(1),
            })
            .collect();
        Ok(DirichletCharacter { modulus: q, order: 2, exponents })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn exponents(&self) -> &[Option<u32>] {
        &self.exponents
    }

    /// Values are ±1, so they live in ℚ.
    pub fn is_exact(&self) -> bool {
        self.order <= 2 || self.exponents.iter().flatten().all(|&k| (2 * k) % self.order == 0)
    }

    pub fn is_trivial(&self) -> bool {
        self.exponents.iter().flatten().all(|&k| k == 0)
    }

    /// Exponent of η(n) as a root of unity, or `None` when gcd(n, m₀) > 1.
    pub fn exponent(&self, n: u64) -> Option<u32> {
        self.exponents[(n % self.modulus) as usize]
    }

    /// η(n) as an exact scalar; formal-unit values raise a mode error.
    pub fn value(&self, n: u64) -> Result<Scalar> {
        match self.exponent(n) {
            None => Ok(Scalar::zero()),
            Some(0) => Ok(Scalar::one()),
            Some(k) if 2 * k == self.order => Ok(Scalar::int(-1)),
            Some(k) => Err(Error::CharacterMode(format!("η({n}) = ζ_{}^{k} is not rational", self.order))),
        }
    }

    /// Product of two characters, on the lcm of the moduli.
    pub fn mul(&self, o: &DirichletCharacter) -> DirichletCharacter {
        let m = lcm(self.modulus, o.modulus);
        let n = lcm(self.order as u64, o.order as u64) as u32;
        let (sa, sb) = (n / self.order, n / o.order);
        let exponents = (0..m)
            .map(|r| match (self.exponent(r), o.exponent(r)) {
                (Some(x), Some(y)) => Some((x * sa + y * sb) % n),
                _ => None,
            })
            .collect();
        DirichletCharacter { modulus: m, order: n, exponents }.reduced()
    }

    pub fn pow(&self, k: u32) -> DirichletCharacter {
        let exponents = self.exponents.iter().map(|e| e.map(|x| ((x as u64 * k as u64) % self.order as u64) as u32)).collect();
        DirichletCharacter { modulus: self.modulus, order: self.order, exponents }.reduced()
    }

    /// Shrinks `order` to the actual order of the character.
    fn reduced(mut self) -> Self {
        let g = self.exponents.iter().flatten().fold(self.order as u64, |acc, &k| gcd(acc, k as u64)) as u32;
        if g > 1 {
            self.order /= g;
            for e in self.exponents.iter_mut().flatten() {
                *e /= g;
            }
        }
        self
    }
}

impl fmt::Display for DirichletCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "character mod {} of order {}", self.modulus, self.order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_values() {
        let eta = DirichletCharacter::legendre(7).unwrap();
        let v: Vec<i64> = (1..7).map(|r| if eta.value(r).unwrap().is_one() { 1 } else { -1 }).collect();
        assert_eq!(v, vec![1, 1, -1, 1, -1, -1]);
        assert!(eta.value(14).unwrap().is_zero());
        assert!(eta.pow(2).is_trivial());
        assert_eq!(eta.pow(3), eta);
        assert!(DirichletCharacter::legendre(9).is_err());
    }

    #[test]
    fn products_and_validation() {
        let a = DirichletCharacter::legendre(3).unwrap();
        let b = DirichletCharacter::legendre(5).unwrap();
        let ab = a.mul(&b);
        assert_eq!(ab.modulus(), 15);
        for r in [1u64, 2, 4, 7, 8, 11, 13, 14] {
            assert_eq!(ab.value(r).unwrap(), &a.value(r).unwrap() * &b.value(r).unwrap());
        }
        assert!(DirichletCharacter::new(5, 4, vec![None, Some(0), Some(1), Some(3), Some(2)]).is_ok());
        assert!(DirichletCharacter::new(5, 4, vec![None, Some(0), Some(1), Some(2), Some(2)]).is_err());
        let quartic = DirichletCharacter::new(5, 4, vec![None, Some(0), Some(1), Some(3), Some(2)]).unwrap();
        assert!(matches!(quartic.value(2), Err(Error::CharacterMode(_))));
        assert_eq!(quartic.value(4).unwrap(), Scalar::int(-1));
        assert_eq!(quartic.pow(2).order(), 2);
    }
}
