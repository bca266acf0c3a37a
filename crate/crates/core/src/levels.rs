//! Tame levels and conductor exponents for the symmetric cube.

use crate::arith::factorize;
use crate::error::{Error, Result};
use crate::scalar::{rat, Rational};

/// Exponent a stays 1 when a = 1 and becomes 3a otherwise.
pub fn sym3_level(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .map(|(q, a)| q.pow(if a == 1 { 1 } else { 3 * a }))
        .product()
}

/// Codimensions of fixed spaces along a ramification filtration at one prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RamificationProfile {
    d_inertia: u32,
    /// (index [I : I_k], d_{I_k}) for k ≥ 1
    steps: Vec<(u64, u32)>,
}

impl RamificationProfile {
    pub fn new(d_inertia: u32, steps: Vec<(u64, u32)>) -> Result<Self> {
        let mut prev_idx = 1u64;
        let mut prev_d = d_inertia;
        for &(idx, d) in &steps {
            if idx <= prev_idx {
                return Err(Error::InvalidInput(format!("subgroup indices must increase strictly (got {idx} after {prev_idx})")));
            }
            if d > prev_d {
                return Err(Error::InvalidInput(format!("codimension {d} increases along the filtration")));
            }
            prev_idx = idx;
            prev_d = d;
        }
        Ok(RamificationProfile { d_inertia, steps })
    }

    pub fn unramified() -> Self {
        RamificationProfile { d_inertia: 0, steps: Vec::new() }
    }

    pub fn d_inertia(&self) -> u32 {
        self.d_inertia
    }

    pub fn steps(&self) -> &[(u64, u32)] {
        &self.steps
    }

    /// d ↦ min(3d, 4) at every step.
    pub fn tripled(&self) -> RamificationProfile {
        RamificationProfile {
            d_inertia: (3 * self.d_inertia).min(4),
            steps: self.steps.iter().map(|&(i, d)| (i, (3 * d).min(4))).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConductorExponent {
    pub value: Rational,
    /// False when the data cannot come from an actual representation.
    pub integral: bool,
}

/// d_I + Σ_k d_{I_k} / [I : I_k].
pub fn conductor_exponent(profile: &RamificationProfile) -> ConductorExponent {
    let value = profile
        .steps
        .iter()
        .fold(rat(profile.d_inertia as i64), |acc, &(idx, d)| acc + Rational::new((d as i64).into(), (idx as i64).into()));
    let integral = value.is_integer();
    ConductorExponent { value, integral }
}

/// n_sym3 ≤ 3n.
pub fn sym3_conductor_bound_check(n: u64, n_sym3: u64) -> bool {
    n_sym3 <= 3 * n
}

/// Same check on profiles, for rational exponents.
pub fn sym3_conductor_bound_holds(profile: &RamificationProfile) -> bool {
    let n = conductor_exponent(profile).value;
    let n3 = conductor_exponent(&profile.tripled()).value;
    n3 <= rat(3) * n
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    #[test]
    fn level_examples() {
        assert_eq!(sym3_level(1), 1);
        assert_eq!(sym3_level(4), 64);
        assert_eq!(sym3_level(11), 11);
        assert_eq!(sym3_level(12), 192);
        assert_eq!(sym3_level(30), 30);
    }

    #[test]
    fn level_divides_cube() {
        for n in 1..=2000u64 {
            assert_eq!(n.pow(3) % sym3_level(n), 0);
        }
    }

    #[test]
    fn conductor_examples() {
        assert_eq!(conductor_exponent(&RamificationProfile::unramified()).value, rat(0));
        let st = RamificationProfile::new(1, vec![]).unwrap();
        assert_eq!(conductor_exponent(&st), ConductorExponent { value: rat(1), integral: true });
        let wild = RamificationProfile::new(2, vec![(2, 1)]).unwrap();
        assert_eq!(conductor_exponent(&wild), ConductorExponent { value: ratio(5, 2), integral: false });
    }

    #[test]
    fn malformed_profiles() {
        assert!(RamificationProfile::new(1, vec![(2, 1), (2, 0)]).is_err());
        assert!(RamificationProfile::new(1, vec![(2, 2)]).is_err());
        assert!(RamificationProfile::new(1, vec![(1, 1)]).is_err());
    }

    #[test]
    fn bound_examples() {
        assert!(sym3_conductor_bound_check(1, 3));
        assert!(sym3_conductor_bound_check(1, 1));
        assert!(!sym3_conductor_bound_check(2, 7));
    }
}
