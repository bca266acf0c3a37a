use std::collections::BTreeSet;
use std::fmt;

use super::{Exp, Group, TorusElement};
use crate::error::{Error, Result};

/// A word in the Weyl generators: `w` for GL₂ (letter 0), `w₀, w₁, w₂` for GSp₄.
/// Letters act left to right.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeylElement {
    group: Group,
    word: Vec<u8>,
}

impl WeylElement {
    pub fn new(group: Group, word: Vec<u8>) -> Result<Self> {
        let max = match group {
            Group::GL2 => 0,
            Group::GSp4 => 2,
        };
        if let Some(&bad) = word.iter().find(|&&l| l > max) {
            return Err(Error::InvalidInput(format!("Weyl letter w{bad} out of range for {group}")));
        }
        Ok(WeylElement { group, word })
    }

    pub fn identity(group: Group) -> Self {
        WeylElement { group, word: Vec::new() }
    }

    pub fn generator(group: Group, i: u8) -> Result<Self> {
        WeylElement::new(group, vec![i])
    }

    pub fn group(&self) -> Group {
        self.group
    }

    pub fn word(&self) -> &[u8] {
        &self.word
    }

    pub fn act_exp(&self, e: &Exp) -> Exp {
        self.word.iter().fold(*e, |acc, &l| letter(self.group, l, &acc))
    }

    pub fn act(&self, x: &TorusElement) -> Result<TorusElement> {
        if x.group() != self.group {
            return Err(Error::GroupMismatch {
                expected: self.group.to_string(),
                found: x.group().to_string(),
            });
        }
        Ok(x.map_exponents(self.group, |e| self.act_exp(e)))
    }

    /// Every element of the Weyl group, each once, as a shortest word.
    pub fn all(group: Group) -> Vec<WeylElement> {
        // A regular exponent vector has trivial stabilizer.
        let probe: Exp = match group {
            Group::GL2 => [0, 1, 0],
            Group::GSp4 => [0, 1, 3],
        };
        let gens: &[u8] = match group {
            Group::GL2 => &[0],
            Group::GSp4 => &[0, 1, 2],
        };
        let mut seen = BTreeSet::from([probe]);
        let mut out = vec![WeylElement::identity(group)];
        let mut i = 0;
        while i < out.len() {
            for &g in gens {
                let mut word = out[i].word.clone();
                word.push(g);
                let w = WeylElement { group, word };
                if seen.insert(w.act_exp(&probe)) {
                    out.push(w);
                }
            }
            i += 1;
        }
        out
    }
}

/// Distinct images of an exponent vector under the Weyl group, sorted.
pub fn orbit(group: Group, e: &Exp) -> Vec<Exp> {
    let set: BTreeSet<Exp> = WeylElement::all(group).iter().map(|w| w.act_exp(e)).collect();
    set.into_iter().collect()
}

fn letter(group: Group, l: u8, e: &Exp) -> Exp {
    match group {
        // w: (n₀, n₁) ↦ (n₀ + n₁, −n₁)
        Group::GL2 => [e[0] + e[1], -e[1], 0],
        Group::GSp4 => {
            let [nu, a, b] = to_weight(e);
            let w = match l {
                0 => [nu, b, a],
                1 => [nu, a, nu - b],
                _ => [nu, nu - a, b],
            };
            from_weight(&w)
        }
    }
}

/// GSp₄ exponents (n₀, n₁, n₂) to character coordinates (ν, a, b).
pub(crate) fn to_weight(e: &Exp) -> [i64; 3] {
    [2 * e[0] + 2 * e[1] + e[2], e[0], e[0] + e[1]]
}

pub(crate) fn from_weight(w: &[i64; 3]) -> Exp {
    [w[1], w[2] - w[1], w[0] - 2 * w[2]]
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "1");
        }
        let s: Vec<String> = self
            .word
            .iter()
            .map(|l| match self.group {
                Group::GL2 => "w".to_string(),
                Group::GSp4 => format!("w{l}"),
            })
            .collect();
        write!(f, "{}", s.join("·"))
    }
}
