//! Seeded cross-module identity checks against the matrix oracle.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::eigensys::{satisfied_branches, slope, sym3_lift, transfer_values, twist, DirichletCharacter, Eigensystem};
use crate::error::Result;
use crate::hecke::Group;
use crate::oracle::{char_poly, invariant_form, sym3_matrix, Mat2};
use crate::poly::{sym3_quadratic, UniPoly};
use crate::scalar::{pow_rational, rat, ratio, PAdicContext, QuadExt, QuadField, Rational, Scalar, Valuation};
use crate::weights::{sen_eigenvalue_differences, Weight};

pub const CHECKS: [&str; 7] = ["functoriality", "similitude", "transfer", "slopes", "branch-separation", "twist", "sen"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: usize,
    pub trials: usize,
    /// Reproducer for the first failing trial.
    pub failure: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub seed: u64,
    pub trials: usize,
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.failure.is_none())
    }

    pub fn first_failure(&self) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.failure.is_some())
    }

    pub fn to_json(&self) -> Value {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| json!({"name": c.name, "passed": c.passed, "trials": c.trials, "failure": c.failure}))
            .collect();
        json!({"seed": self.seed, "trials": self.trials, "all_passed": self.all_passed(), "checks": checks})
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = if c.failure.is_none() { "PASS" } else { "FAIL" };
            writeln!(f, "{status} {:<18} {}/{}", c.name, c.passed, c.trials)?;
            if let Some(r) = &c.failure {
                writeln!(f, "     reproducer: {r}")?;
            }
        }
        Ok(())
    }
}

/// Test-only perturbation of the unramified transfer: T₂ ↦ a³ + 2ℓac.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Fault {
    pub flip_transfer_sign: bool,
}

fn faulty_transfer(ell: u64, a: &Scalar, c: &Scalar, fault: Fault) -> Result<Vec<Scalar>> {
    let mut v = transfer_values(ell, a, c)?;
    if fault.flip_transfer_sign {
        v[2] = &v[2] + &(a * c).scale(&rat(4 * ell as i64));
    }
    Ok(v)
}

fn quartic_from_transfer(ell: u64, v: &[Scalar]) -> Result<UniPoly> {
    Ok(UniPoly::monic_from_elementary(&crate::eigensys::quartic_coefficients(ell, v)?))
}

fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    ratio(rng.gen_range(-12..=12), rng.gen_range(1..=4))
}

fn invertible_matrix(rng: &mut ChaCha8Rng) -> Mat2 {
    loop {
        let e: Vec<Rational> = (0..4).map(|_| small_rational(rng)).collect();
        let g = Mat2::from_fn(|i, j| e[2 * i + j].clone());
        if g.det() != rat(0) {
            return g;
        }
    }
}

const ELLS: [u64; 5] = [2, 3, 5, 7, 11];

/// Runs one check over `trials` seeded trials; the closure returns a reproducer on failure.
fn run_check(
    name: &'static str,
    trials: usize,
    rng: &mut ChaCha8Rng,
    mut trial: impl FnMut(&mut ChaCha8Rng) -> Result<Option<String>>,
) -> CheckResult {
    let mut passed = 0;
    let mut failure = None;
    for _ in 0..trials {
        match trial(rng) {
            Ok(None) => passed += 1,
            Ok(Some(r)) => {
                failure.get_or_insert(r);
            }
            Err(e) => {
                failure.get_or_insert(format!("error: {e}"));
            }
        }
    }
    CheckResult { name, passed, trials, failure }
}

fn unit_system(p: u64, k: i64, alpha: Scalar, beta: Scalar, spherical: &[(u64, Rational, Rational)]) -> Eigensystem {
    let mut f = Eigensystem::new(Group::GL2, p, 1, Weight::GL2(k));
    for (ell, a, c) in spherical {
        f.spherical.insert(*ell, vec![Scalar::Rat(a.clone()), Scalar::Rat(c.clone())]);
    }
    f.iwahori_p = Some(vec![&alpha * &beta, alpha]);
    f
}

/// A stabilized GL₂ system at p with v(α) = h2/2 and αβ = p^{k−1}.
pub fn slope_system(p: u64, k: i64, h2: i64) -> Eigensystem {
    let alpha = if h2 % 2 == 0 {
        Scalar::Rat(pow_rational(p, h2 / 2))
    } else {
        let theta = Scalar::from_quad(QuadExt::theta(QuadField::new(rat(0), rat(-(p as i64))), 0));
        theta.scale(&pow_rational(p, (h2 - 1) / 2))
    };
    let beta = Scalar::Rat(pow_rational(p, k - 1)).checked_div(&alpha).expect("alpha is nonzero");
    unit_system(p, k, alpha, beta, &[])
}

/// {7h, k−1+5h, k−1+5h, 4(k−1)−h} in branch order.
pub fn expected_lift_slopes(k: i64, h: &Rational) -> [Rational; 4] {
    let k1 = rat(k - 1);
    [rat(7) * h, &k1 + rat(5) * h, &k1 + rat(5) * h, rat(4) * &k1 - h]
}

pub fn oracle_suite(seed: u64, trials: usize, fault: Fault) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();

    checks.push(run_check("functoriality", trials, &mut rng, |rng| {
        let g = invertible_matrix(rng);
        let ell = ELLS[rng.gen_range(0..ELLS.len())];
        let oracle = char_poly(&sym3_matrix(&g));
        let (t, d) = (Scalar::Rat(g.trace()), Scalar::Rat(g.det()));
        let c = d.scale(&rat(ell as i64).recip());
        let via_transfer = quartic_from_transfer(ell, &faulty_transfer(ell, &t, &c, fault)?)?;
        let ok = sym3_quadratic(&t, &d) == oracle && via_transfer == oracle;
        Ok((!ok).then(|| format!("g = {g}, ell = {ell}")))
    }));

    let j = invariant_form();
    checks.push(run_check("similitude", trials, &mut rng, |rng| {
        let g = invertible_matrix(rng);
        let s = sym3_matrix(&g);
        let lhs = s.transpose().mul(&j).mul(&s);
        let rhs = j.scale(&num_traits::pow(g.det(), 3));
        Ok((lhs != rhs).then(|| format!("g = {g}")))
    }));

    checks.push(run_check("transfer", trials, &mut rng, |rng| {
        let (a, c) = (Scalar::Rat(small_rational(rng)), Scalar::Rat(small_rational(rng)));
        let ell = ELLS[rng.gen_range(0..ELLS.len())];
        let q = quartic_from_transfer(ell, &faulty_transfer(ell, &a, &c, fault)?)?;
        let ok = q == sym3_quadratic(&a, &c.scale(&rat(ell as i64)));
        Ok((!ok).then(|| format!("ell = {ell}, a = {a}, c = {c}")))
    }));

    checks.push(run_check("slopes", trials, &mut rng, |rng| {
        let p = [5u64, 7, 11][rng.gen_range(0..3)];
        let ctx = PAdicContext::new(p)?;
        let k = rng.gen_range(2..=12i64);
        let h2 = rng.gen_range(0..=2 * (k - 1));
        let f = slope_system(p, k, h2);
        let expect = expected_lift_slopes(k, &ratio(h2, 2));
        for (i, e) in (1..=4u8).zip(expect) {
            if slope(&sym3_lift(&f, i)?, &ctx)? != Valuation::Finite(e) {
                return Ok(Some(format!("p = {p}, k = {k}, h = {}/2, branch {i}", h2)));
            }
        }
        Ok(None)
    }));

    checks.push(run_check("branch-separation", trials, &mut rng, |rng| {
        let p = 5u64;
        let unit = |rng: &mut ChaCha8Rng| rat([1, 2, 3, 4, 6, 7, 8, 9][rng.gen_range(0..8)] * if rng.gen_bool(0.5) { 1 } else { -1 });
        let (i, j) = loop {
            let (i, j) = (rng.gen_range(0..4i64), rng.gen_range(0..4i64));
            if i != j {
                break (i, j);
            }
        };
        let alpha = Scalar::Rat(unit(rng) * pow_rational(p, i));
        let beta = Scalar::Rat(unit(rng) * pow_rational(p, j));
        let f = unit_system(p, 2, alpha.clone(), beta.clone(), &[]);
        for b in 1..=4u8 {
            let got = satisfied_branches(sym3_lift(&f, b)?.iwahori()?)?;
            if got != vec![b] {
                return Ok(Some(format!("alpha = {alpha}, beta = {beta}, branch {b} satisfies {got:?}")));
            }
        }
        Ok(None)
    }));

    checks.push(run_check("twist", trials, &mut rng, |rng| {
        let p = 5u64;
        let ctx = PAdicContext::new(p)?;
        let q = [3u64, 7, 11, 13][rng.gen_range(0..4)];
        let eta = DirichletCharacter::legendre(q)?;
        let ells: Vec<u64> = [2u64, 3, 7, 11, 13].into_iter().filter(|&l| l != q).collect();
        let sph: Vec<(u64, Rational, Rational)> = ells.iter().map(|&l| (l, small_rational(rng), small_rational(rng))).collect();
        let f = unit_system(p, 2, Scalar::int(5 * rng.gen_range(1..=4)), Scalar::int(rng.gen_range(1..=4)), &sph);
        for i in 1..=4u8 {
            let lhs = sym3_lift(&twist(&f, &eta)?, i)?;
            let base = sym3_lift(&f, i)?;
            let rhs = twist(&base, &eta.pow(3))?;
            let same = lhs.spherical == rhs.spherical && lhs.iwahori_p == rhs.iwahori_p;
            if !same || slope(&rhs, &ctx)? != slope(&base, &ctx)? {
                return Ok(Some(format!("eta = ({q}/.), f = {f:?}, branch {i}")));
            }
        }
        Ok(None)
    }));

    checks.push(run_check("sen", trials.min(8), &mut rng, |rng| {
        let p = [5u64, 7, 11, 13][rng.gen_range(0..4)];
        let ctx = PAdicContext::new(p)?;
        let f = sen_eigenvalue_differences(&ctx)?;
        let ok = f.len() == 6 && f.iter().all(|x| x.divisor.mul(&x.cofactor) == x.difference);
        Ok((!ok).then(|| format!("p = {p}")))
    }));

    SuiteReport { seed, trials, checks }
}
