use std::fmt;

use num_integer::Integer;

use super::{Exp, Group, SphericalPoly, TorusElement};
use crate::error::{Error, Result};
use crate::scalar::{rat, Scalar};

/// Image of T^{(2)}_{ℓ,target} under the unramified transfer, as a polynomial in
/// a = T_ℓ and c = T_{ℓ,0}.
pub fn transfer_unramified(ell: u64, target: usize) -> Result<SphericalPoly> {
    let l = ell as i64;
    let g = Group::GL2;
    // exponent layout: [deg c, deg a, 0]
    let term = |c: i64, a: i64, coef: i64| SphericalPoly::monomial(g, ell, [c, a, 0], rat(coef));
    Ok(match target {
        0 => term(3, 0, 1),
        1 => term(0, 6, 1)
            .add(&term(1, 4, -5 * l))
            .add(&term(2, 2, 7 * l * l))
            .add(&term(3, 0, -(l * l + 2 * l * l * l))),
        2 => term(0, 3, 1).add(&term(1, 1, -2 * l)),
        _ => return Err(Error::UnsupportedGenerator(format!("T_{{{ell},{target}}}"))),
    })
}

/// The unramified transfer as a ring map on GSp₄ spherical polynomials.
pub fn lambda_ell(x: &SphericalPoly) -> Result<SphericalPoly> {
    if x.group() != Group::GSp4 {
        return Err(Error::GroupMismatch { expected: "GSp4".into(), found: x.group().to_string() });
    }
    let images = (0..3).map(|i| transfer_unramified(x.ell(), i)).collect::<Result<Vec<_>>>()?;
    x.substitute(&images)
}

/// δ on GL₂ torus exponents: t₁ ↦ t₀t₁⁻¹.
pub fn delta_exp(e: &Exp) -> Exp {
    [e[0] + e[1], -e[1], 0]
}

pub fn delta(x: &TorusElement) -> TorusElement {
    x.map_exponents(Group::GL2, delta_exp)
}

/// One of the eight monomial transfers λ_i at p. Row j holds the GL₂ exponents (of t₀, t₁)
/// of the image of t_j.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TransferBranch {
    index: u8,
    matrix: [[i64; 2]; 3],
}

const BASE: [[[i64; 2]; 3]; 4] = [
    [[3, 0], [1, 4], [0, 3]],
    [[3, 0], [2, 2], [0, 3]],
    [[3, 0], [1, 4], [1, 1]],
    [[3, 0], [4, -2], [1, 1]],
];

impl TransferBranch {
    /// Branches 1..=4, and 5..=8 as δ∘λ_{i−4}.
    pub fn new(index: u8) -> Result<Self> {
        match index {
            1..=4 => Ok(TransferBranch { index, matrix: BASE[index as usize - 1] }),
            5..=8 => {
                let m = BASE[index as usize - 5].map(|r| {
                    let d = delta_exp(&[r[0], r[1], 0]);
                    [d[0], d[1]]
                });
                Ok(TransferBranch { index, matrix: m })
            }
            _ => Err(Error::BadBranch(index, 8)),
        }
    }

    pub fn all() -> Vec<TransferBranch> {
        (1..=8).map(|i| TransferBranch::new(i).expect("valid")).collect()
    }

    pub fn index(&self) -> u8 {
        self.index
    }

    pub fn matrix(&self) -> [[i64; 2]; 3] {
        self.matrix
    }

    /// Image exponent of a GSp₄ exponent vector.
    pub fn map_exp(&self, e: &Exp) -> Exp {
        let m = &self.matrix;
        [
            e[0] * m[0][0] + e[1] * m[1][0] + e[2] * m[2][0],
            e[0] * m[0][1] + e[1] * m[1][1] + e[2] * m[2][1],
            0,
        ]
    }

    pub fn apply(&self, x: &TorusElement) -> Result<TorusElement> {
        if x.group() != Group::GSp4 {
            return Err(Error::GroupMismatch { expected: "GSp4".into(), found: x.group().to_string() });
        }
        Ok(x.map_exponents(Group::GL2, |e| self.map_exp(e)))
    }

    /// Dilating generators t₁, t₂ land in the GL₂ dilating cone.
    pub fn preserves_dilating_cone(&self) -> bool {
        self.matrix[1][1] >= 0 && self.matrix[2][1] >= 0
    }

    /// Primitive generator of the left kernel {v : vᵀM = 0}, first nonzero entry positive.
    pub fn kernel_vector(&self) -> [i64; 3] {
        let (v, _) = self.kernel_and_index();
        v
    }

    /// Index of the image lattice in its saturation.
    pub fn lattice_index(&self) -> i64 {
        self.kernel_and_index().1
    }

    fn kernel_and_index(&self) -> ([i64; 3], i64) {
        let m = &self.matrix;
        let c0 = [m[0][0], m[1][0], m[2][0]];
        let c1 = [m[0][1], m[1][1], m[2][1]];
        let mut v = [
            c0[1] * c1[2] - c0[2] * c1[1],
            c0[2] * c1[0] - c0[0] * c1[2],
            c0[0] * c1[1] - c0[1] * c1[0],
        ];
        let g = v.iter().fold(0i64, |acc, x| acc.gcd(x));
        for x in v.iter_mut() {
            *x /= g;
        }
        if v.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
            for x in v.iter_mut() {
                *x = -*x;
            }
        }
        (v, g)
    }

    /// The binomial relations among U₀, U₁, U₂ cut out by this branch.
    pub fn binomials(&self) -> Vec<Binomial> {
        let v = self.kernel_vector();
        vec![Binomial {
            pos: v.map(|x| x.max(0) as u32),
            neg: v.map(|x| (-x).max(0) as u32),
        }]
    }

    /// GSp₄ torus values at p from GL₂ values (t₀, t₁).
    pub fn lift_values(&self, gl2: &[Scalar]) -> Result<Vec<Scalar>> {
        self.matrix
            .iter()
            .map(|r| extend_character(gl2, &[r[0], r[1], 0]))
            .collect()
    }
}

/// U^pos − U^neg.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Binomial {
    pub pos: [u32; 3],
    pub neg: [u32; 3],
}

impl Binomial {
    pub fn eval(&self, u: &[Scalar]) -> Result<Scalar> {
        let side = |e: &[u32; 3]| -> Result<Scalar> {
            let mut acc = Scalar::one();
            for (x, k) in u.iter().zip(e) {
                acc = acc.checked_mul(&x.pow(*k as i64)?)?;
            }
            Ok(acc)
        };
        side(&self.pos)?.checked_sub(&side(&self.neg)?)
    }
}

impl fmt::Display for Binomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |e: &[u32; 3]| {
            let parts: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, k)| **k > 0)
                .map(|(i, k)| if *k == 1 { format!("U{i}") } else { format!("U{i}^{k}") })
                .collect();
            if parts.is_empty() {
                "1".to_string()
            } else {
                parts.join("*")
            }
        };
        write!(f, "{} - {}", side(&self.pos), side(&self.neg))
    }
}

/// Monomial image of the GSp₄ generator t_j under branch `i`.
pub fn transfer_iwahori(i: u8, j: usize, p: u64) -> Result<TorusElement> {
    let b = TransferBranch::new(i)?;
    if j > 2 {
        return Err(Error::UnsupportedGenerator(format!("t_{{{p},{j}}}")));
    }
    let mut e = [0; 3];
    e[j] = 1;
    Ok(TorusElement::monomial(Group::GL2, p, b.map_exp(&e), rat(1)))
}

/// χ on an arbitrary torus exponent, from its values on the generators: the exponent is split
/// as a difference of two dilating exponents and χ(γ₁)/χ(γ₂) returned.
pub fn extend_character(values: &[Scalar], e: &Exp) -> Result<Scalar> {
    let mut num = Scalar::one();
    let mut den = Scalar::one();
    for (i, v) in values.iter().enumerate() {
        let k = e[i];
        // t₀ is invertible; the rest split by sign
        if i == 0 || k >= 0 {
            num = num.checked_mul(&v.pow(k)?)?;
        } else {
            den = den.checked_mul(&v.pow(-k)?)?;
        }
    }
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    num.checked_div(&den)
}
