//! Brute-force ground truth: small exact matrices, the symmetric cube representation,
//! its invariant symplectic form, and characteristic polynomials.

use std::fmt;

use num_traits::{One, Zero};

use crate::poly::UniPoly;
use crate::scalar::{rat, Rational, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mat<const N: usize> {
    pub rows: [[Rational; N]; N],
}

pub type Mat2 = Mat<2>;
pub type Mat4 = Mat<4>;

impl<const N: usize> Mat<N> {
    pub fn from_fn(f: impl Fn(usize, usize) -> Rational) -> Self {
        Mat { rows: std::array::from_fn(|i| std::array::from_fn(|j| f(i, j))) }
    }

    pub fn zero() -> Self {
        Mat::from_fn(|_, _| Rational::zero())
    }

    pub fn identity() -> Self {
        Mat::from_fn(|i, j| if i == j { Rational::one() } else { Rational::zero() })
    }

    pub fn from_ints(rows: [[i64; N]; N]) -> Self {
        Mat::from_fn(|i, j| rat(rows[i][j]))
    }

    pub fn diag(d: [Rational; N]) -> Self {
        Mat::from_fn(|i, j| if i == j { d[i].clone() } else { Rational::zero() })
    }

    pub fn mul(&self, o: &Self) -> Self {
        Mat::from_fn(|i, j| (0..N).fold(Rational::zero(), |acc, k| acc + &self.rows[i][k] * &o.rows[k][j]))
    }

    pub fn add(&self, o: &Self) -> Self {
        Mat::from_fn(|i, j| &self.rows[i][j] + &o.rows[i][j])
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Mat::from_fn(|i, j| &self.rows[i][j] * c)
    }

    pub fn transpose(&self) -> Self {
        Mat::from_fn(|i, j| self.rows[j][i].clone())
    }

    pub fn trace(&self) -> Rational {
        (0..N).fold(Rational::zero(), |acc, i| acc + &self.rows[i][i])
    }

    pub fn det(&self) -> Rational {
        let c = char_poly(self).coeff(0);
        let c = c.as_rational().expect("rational entries").clone();
        if N % 2 == 0 {
            c
        } else {
            -c
        }
    }
}

impl<const N: usize> fmt::Display for Mat<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")))
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

/// det(X·I − M), by Faddeev–LeVerrier.
pub fn char_poly<const N: usize>(m: &Mat<N>) -> UniPoly {
    let mut coeffs = vec![Rational::zero(); N + 1];
    coeffs[N] = Rational::one();
    let mut mk = Mat::<N>::zero();
    let id = Mat::<N>::identity();
    for k in 1..=N {
        mk = m.mul(&mk).add(&id.scale(&coeffs[N - k + 1]));
        let amk = m.mul(&mk);
        coeffs[N - k] = -amk.trace() / rat(k as i64);
    }
    UniPoly::new(coeffs.into_iter().map(Scalar::Rat).collect())
}

/// Matrix of `g` on Sym³ of the standard representation, basis (e₁³, e₁²e₂, e₁e₂², e₂³).
/// Column `j` holds the expansion of `g` applied to basis element `j`.
pub fn sym3_matrix(g: &Mat2) -> Mat4 {
    let [[a, b], [c, d]] = &g.rows;
    let ge1 = [a.clone(), c.clone()];
    let ge2 = [b.clone(), d.clone()];
    let mut m = Mat4::zero();
    for j in 0..4 {
        // coefficient index counts powers of e₂
        let mut poly = vec![Rational::one()];
        for f in std::iter::repeat_n(&ge1, 3 - j).chain(std::iter::repeat_n(&ge2, j)) {
            let mut next = vec![Rational::zero(); poly.len() + 1];
            for (k, coef) in poly.iter().enumerate() {
                next[k] += coef * &f[0];
                next[k + 1] += coef * &f[1];
            }
            poly = next;
        }
        for (i, coef) in poly.into_iter().enumerate() {
            m.rows[i][j] = coef;
        }
    }
    m
}

/// `true` iff Mᵀ·J·M = ν·J.
pub fn similitude_check(m: &Mat4, nu: &Rational, j: &Mat4) -> bool {
    m.transpose().mul(j).mul(m) == j.scale(nu)
}

/// The Sym³-invariant alternating form, frozen from [`derive_invariant_form`].
pub fn invariant_form() -> Mat4 {
    Mat4::from_ints([[0, 0, 0, 3], [0, 0, -1, 0], [0, 1, 0, 0], [-3, 0, 0, 0]])
}

/// Solves Mᵀ J M = det(g)³ J over generator samples for the 16 entries of J and returns the
/// one-dimensional solution space normalized so that J[0][3] = 3.
pub fn derive_invariant_form() -> Option<Mat4> {
    let samples = [
        Mat2::from_ints([[1, 1], [0, 1]]),
        Mat2::from_ints([[1, 0], [1, 1]]),
        Mat2::from_ints([[2, 0], [0, 3]]),
        Mat2::from_ints([[0, 1], [1, 0]]),
    ];
    let mut eqs: Vec<Vec<Rational>> = Vec::new();
    for g in &samples {
        let m = sym3_matrix(g);
        let nu = num_traits::pow(g.det(), 3);
        // (MᵀJM)[r][c] = Σ_{k,l} M[k][r] J[k][l] M[l][c]
        for r in 0..4 {
            for c in 0..4 {
                let mut row = vec![Rational::zero(); 16];
                for k in 0..4 {
                    for l in 0..4 {
                        row[4 * k + l] += &m.rows[k][r] * &m.rows[l][c];
                    }
                }
                row[4 * r + c] -= &nu;
                eqs.push(row);
            }
        }
    }
    let basis = nullspace(eqs, 16);
    if basis.len() != 1 {
        return None;
    }
    let v = &basis[0];
    let pivot = v[3].clone();
    if pivot.is_zero() {
        return None;
    }
    let s = rat(3) / pivot;
    Some(Mat4::from_fn(|i, j| &v[4 * i + j] * &s))
}

/// Basis of the right nullspace of a dense rational matrix with `n` columns.
pub(crate) fn nullspace(mut rows: Vec<Vec<Rational>>, n: usize) -> Vec<Vec<Rational>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for k in 0..n {
                    let delta = &f * &rows[r][k];
                    rows[i][k] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); n];
            v[f] = Rational::one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -rows[i][f].clone();
            }
            v
        })
        .collect()
}
