//! Hecke algebras of GL₂ and GSp₄: torus algebras, Weyl actions, spherical generators,
//! minimal polynomials and the symmetric cube transfers.

mod spherical;
mod torus;
mod transfer;
mod weyl;

use std::fmt;
use std::str::FromStr;

pub use spherical::{is_invariant, minimal_polynomial, reduce, satake_generator, SphGen, SphericalPoly};
pub use torus::TorusElement;
pub use transfer::{
    delta, delta_exp, extend_character, lambda_ell, transfer_iwahori, transfer_unramified, Binomial,
    TransferBranch,
};
pub use weyl::{orbit, WeylElement};

use crate::error::Error;

/// Exponents of (t₀, t₁, t₂); GL₂ leaves the last slot at zero.
pub type Exp = [i64; 3];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Group {
    GL2,
    GSp4,
}

impl Group {
    /// Number of torus generators.
    pub fn rank(self) -> usize {
        match self {
            Group::GL2 => 2,
            Group::GSp4 => 3,
        }
    }

    /// T₀ = ℓ^{−s} t₀.
    pub(crate) fn t0_scale(self) -> i64 {
        match self {
            Group::GL2 => 1,
            Group::GSp4 => 3,
        }
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Group::GL2 => "GL2",
            Group::GSp4 => "GSp4",
        })
    }
}

impl FromStr for Group {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "GL2" => Ok(Group::GL2),
            "GSp4" => Ok(Group::GSp4),
            _ => Err(Error::InvalidInput(format!("unknown group {s:?}"))),
        }
    }
}
