//! The twelve acceptance criteria. Runs without the libtest harness so every criterion prints
//! one PASS/FAIL line; the process exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use symcube::congruence::{scan_congruences, ScanOptions, Verdict};
use symcube::eigensys::{
    classify_sym3, is_sym3_quartic, quartic_coefficients, satisfied_branches, slope, sym3_lift, transfer_values, twist,
    DirichletCharacter, Eigensystem, QuarticRoot, Sym3Classification,
};
use symcube::hecke::{transfer_unramified, Group, TransferBranch};
use symcube::levels::{sym3_conductor_bound_holds, sym3_level, RamificationProfile};
use symcube::oracle::{char_poly, derive_invariant_form, invariant_form, sym3_matrix, Mat2, Mat4};
use symcube::poly::{charpoly_from_power_traces, power_sums, sym3_quadratic, sym3_trace, UniPoly};
use symcube::scalar::{pow_rational, rat, ratio, PAdicContext, QuadExt, QuadField, Rational, Scalar, Valuation};
use symcube::weights::{classical_point, image_equation, iota, iota_symbolic, sen_eigenvalue_differences, Weight};

const SEED: u64 = 20_240_601;
const CRIT1_BUDGET: Duration = Duration::from_secs(5);
const CRIT12_BUDGET: Duration = Duration::from_secs(10);

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    ratio(rng.gen_range(-15..=15), rng.gen_range(1..=5))
}

fn random_invertible(rng: &mut ChaCha8Rng) -> Mat2 {
    loop {
        let e: Vec<Rational> = (0..4).map(|_| small_rational(rng)).collect();
        let g = Mat2::from_fn(|i, j| e[2 * i + j].clone());
        if !g.det().is_zero() {
            return g;
        }
    }
}

fn sample_matrices() -> Vec<Mat2> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    (0..200).map(|_| random_invertible(&mut rng)).collect()
}

fn gl2_system(p: u64, k: i64, alpha: Scalar, beta: Scalar, spherical: &[(u64, Rational, Rational)]) -> Eigensystem {
    let mut f = Eigensystem::new(Group::GL2, p, 1, Weight::GL2(k));
    for (ell, a, c) in spherical {
        f.spherical.insert(*ell, vec![Scalar::Rat(a.clone()), Scalar::Rat(c.clone())]);
    }
    f.iwahori_p = Some(vec![&alpha * &beta, alpha]);
    f
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let sample = sample_matrices();
    for g in &sample {
        let lhs = char_poly(&sym3_matrix(g));
        let rhs = sym3_quadratic(&Scalar::Rat(g.trace()), &Scalar::Rat(g.det()));
        ensure(lhs == rhs, || format!("mismatch at g = {g}"))?;
    }
    let took = start.elapsed();
    ensure(took < CRIT1_BUDGET, || format!("took {took:?}"))?;
    Ok(format!("{} matrices, {:.3} s", sample.len(), took.as_secs_f64()))
}

fn criterion_2() -> Outcome {
    let j = invariant_form();
    ensure(Some(j.clone()) == derive_invariant_form(), || "frozen form differs from the derived one".into())?;
    let anti = Mat4::from_ints([[0, 0, 0, 3], [0, 0, -1, 0], [0, 1, 0, 0], [-3, 0, 0, 0]]);
    ensure(j == anti, || format!("form is {j}"))?;
    let sample = sample_matrices();
    for g in &sample {
        let s = sym3_matrix(g);
        let lhs = s.transpose().mul(&j).mul(&s);
        ensure(lhs == j.scale(&num_traits::pow(g.det(), 3)), || format!("similitude fails at g = {g}"))?;
    }
    Ok(format!("{} matrices, J = antidiag(3,-1,1,-3)", sample.len()))
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 3);
    let ells = [2u64, 3, 5, 7, 11];
    for _ in 0..150 {
        let (a, c) = (Scalar::Rat(small_rational(&mut rng)), Scalar::Rat(small_rational(&mut rng)));
        let ell = ells[rng.gen_range(0..5)];
        let vals: Vec<Scalar> = (0..3).map(|i| transfer_unramified(ell, i).unwrap().eval(&[c.clone(), a.clone()]).unwrap()).collect();
        let q = UniPoly::monic_from_elementary(&quartic_coefficients(ell, &vals).map_err(|e| e.to_string())?);
        ensure(q == sym3_quadratic(&a, &c.scale(&rat(ell as i64))), || format!("ell = {ell}, a = {a}, c = {c}"))?;
    }
    let anchor = transfer_values(2, &Scalar::int(3), &Scalar::int(1)).map_err(|e| e.to_string())?;
    ensure(anchor == vec![Scalar::int(1), Scalar::int(151), Scalar::int(15)], || format!("anchor gives {anchor:?}"))?;
    Ok("150 samples, anchor (1, 151, 15)".into())
}

fn criterion_4() -> Outcome {
    let p = 5u64;
    let ctx = PAdicContext::new(p).unwrap();
    let theta = Scalar::from_quad(QuadExt::theta(QuadField::new(rat(0), rat(-(p as i64))), 0));
    let mut cells = 0;
    for k in 2..=12i64 {
        for h2 in 0..=2 * (k - 1) {
            // α = p^{h} (times √p for half-integral h), αβ = p^{k−1}
            let alpha = if h2 % 2 == 0 { Scalar::Rat(pow_rational(p, h2 / 2)) } else { theta.scale(&pow_rational(p, (h2 - 1) / 2)) };
            let beta = Scalar::Rat(pow_rational(p, k - 1)).checked_div(&alpha).unwrap();
            let f = gl2_system(p, k, alpha, beta, &[]);
            let h = ratio(h2, 2);
            let k1 = rat(k - 1);
            let expect = [rat(7) * &h, &k1 + rat(5) * &h, &k1 + rat(5) * &h, rat(4) * &k1 - &h];
            for (i, e) in (1..=4u8).zip(expect) {
                let got = slope(&sym3_lift(&f, i).unwrap(), &ctx).map_err(|e| e.to_string())?;
                ensure(got == Valuation::Finite(e.clone()), || format!("k = {k}, h = {h}, branch {i}: {got} vs {e}"))?;
            }
            cells += 1;
        }
    }
    Ok(format!("{cells} (k, h) cells"))
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 5);
    let p = 7u64;
    let mut n = 0;
    while n < 120 {
        let (i, j) = (rng.gen_range(0..4i64), rng.gen_range(0..4i64));
        if i == j {
            continue;
        }
        let unit = |rng: &mut ChaCha8Rng| rat(loop {
            let u = rng.gen_range(-40..=40i64);
            if u % 7 != 0 {
                break u;
            }
        });
        let alpha = Scalar::Rat(unit(&mut rng) * pow_rational(p, i));
        let beta = Scalar::Rat(unit(&mut rng) * pow_rational(p, j));
        let f = gl2_system(p, 2, alpha.clone(), beta.clone(), &[]);
        for b in 1..=4u8 {
            let got = satisfied_branches(sym3_lift(&f, b).unwrap().iwahori().unwrap()).unwrap();
            ensure(got == vec![b], || format!("α = {alpha}, β = {beta}, branch {b}: {got:?}"))?;
        }
        n += 1;
    }
    let shown = |i: u8| TransferBranch::new(i).unwrap().binomials()[0].to_string();
    ensure(shown(2) == "U0^2*U2^2 - U1^3", || shown(2))?;
    ensure(shown(4) == "U0^2 - U1*U2^2", || shown(4))?;
    Ok(format!("{n} systems; E2, E4 verbatim"))
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 6);
    let primes = [2u64, 3, 7, 11];
    let (mut accepted, mut rejected) = (0, 0);
    for t in 0..120 {
        let sph: Vec<(u64, Rational, Rational)> = primes
            .iter()
            .map(|&l| {
                let c = loop {
                    let c = rng.gen_range(-6..=6i64);
                    if c != 0 {
                        break rat(c);
                    }
                };
                (l, rat(rng.gen_range(-30..=30)), c)
            })
            .collect();
        let f = gl2_system(5, 2, Scalar::int(rng.gen_range(1..=4)), Scalar::int(5 * rng.gen_range(1..=4)), &sph);
        let b = (t % 4) as u8 + 1;
        let lift = sym3_lift(&f, b).unwrap();
        match classify_sym3(&lift, &primes, false).map_err(|e| e.to_string())? {
            Sym3Classification::Candidate { roots, branches, .. } => {
                for (l, a, c) in &sph {
                    let hit = roots[l].iter().any(|r| r.gl2_pair(*l) == Some((a.clone(), c.clone())));
                    ensure(hit, || format!("lift {t}: (a, c) not recovered at {l}"))?;
                }
                ensure(branches.as_deref().is_some_and(|v| v.contains(&b)), || format!("lift {t}: branch {b} missing"))?;
                accepted += 1;
            }
            other => return Err(format!("lift {t} rejected: {other:?}")),
        }
        let mut bad = lift.clone();
        let l = primes[rng.gen_range(0..primes.len())];
        let shift = rat(loop {
            let s = rng.gen_range(-9..=9i64);
            if s != 0 {
                break s;
            }
        });
        let v = bad.spherical.get_mut(&l).unwrap();
        v[1] = v[1].checked_add(&Scalar::Rat(shift)).unwrap();
        match classify_sym3(&bad, &primes, false).map_err(|e| e.to_string())? {
            Sym3Classification::NotSym3 { witness } if witness == l => rejected += 1,
            other => return Err(format!("perturbation {t} at {l}: {other:?}")),
        }
    }
    let ints = |v: [i64; 4]| v.map(Scalar::int);
    let r = is_sym3_quartic(&ints([15, 70, 120, 64]), false).unwrap();
    ensure(r == vec![QuarticRoot::Rational { t: rat(3), d: rat(2) }], || format!("(15,70,120,64) gives {r:?}"))?;
    let r = is_sym3_quartic(&ints([1, 1, 1, 1]), false).unwrap();
    ensure(r.is_empty(), || format!("(1,1,1,1) gives {r:?}"))?;
    Ok(format!("{accepted} lifts accepted, {rejected} perturbations rejected"))
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 7);
    for _ in 0..100 {
        let deg = rng.gen_range(1..=4);
        let roots: Vec<Scalar> = (0..deg).map(|_| Scalar::Rat(small_rational(&mut rng))).collect();
        let f = UniPoly::from_roots(&roots);
        ensure(charpoly_from_power_traces(&power_sums(&f)) == f, || format!("roots {roots:?}"))?;
    }
    for g in sample_matrices().iter().take(100) {
        let t = Scalar::Rat(g.trace());
        let t2 = Scalar::Rat(g.mul(g).trace());
        ensure(sym3_trace(&t, &t2) == Scalar::Rat(sym3_matrix(g).trace()), || format!("trace identity fails at {g}"))?;
    }
    // the variant T(g)²(3T(g²) − T(g)²)/2 at (3, 5)
    let (t, t2) = (rat(3), rat(5));
    let variant = &t * &t * (rat(3) * &t2 - &t * &t) / rat(2);
    let oracle = sym3_trace(&Scalar::Rat(t), &Scalar::Rat(t2));
    ensure(variant == rat(27) && oracle == Scalar::int(15), || format!("variant {variant}, oracle {oracle}"))?;
    Ok("Newton inversion and T(g)·T(g²); variant formula gives 27 vs 15".into())
}

fn criterion_8() -> Outcome {
    for p in [5u64, 7] {
        let ctx = PAdicContext::new(p).unwrap();
        for k in -20..=20i64 {
            let got = iota(&classical_point(k, &ctx), &ctx);
            ensure(got == (classical_point(2 * k - 1, &ctx), classical_point(k + 1, &ctx)), || format!("p = {p}, k = {k}"))?;
        }
        let (t1, t2) = iota_symbolic(&ctx);
        ensure(image_equation(&t1, &t2, &ctx).is_zero(), || format!("image equation nonzero at p = {p}"))?;
    }
    Ok("k in -20..=20, p in {5, 7}".into())
}

fn criterion_9() -> Outcome {
    for p in [5u64, 7, 11, 13] {
        let ctx = PAdicContext::new(p).unwrap();
        let f = sen_eigenvalue_differences(&ctx).map_err(|e| e.to_string())?;
        ensure(f.len() == 6, || format!("{} differences", f.len()))?;
        for x in &f {
            ensure(x.divisor.mul(&x.cofactor) == x.difference, || format!("p = {p}, pair {:?}", x.pair))?;
        }
    }
    Ok("6 differences factor exactly, p in {5, 7, 11, 13}".into())
}

fn criterion_10() -> Outcome {
    let got: Vec<u64> = [1, 4, 11, 12].map(sym3_level).to_vec();
    ensure(got == vec![1, 64, 11, 192], || format!("{got:?}"))?;
    for n in 1..=10_000u64 {
        let n3 = (n as u128).pow(3);
        ensure(n3 % sym3_level(n) as u128 == 0, || format!("N = {n}"))?;
    }
    let mut profiles = 0;
    for d0 in 0..=2u32 {
        for d1 in 0..=d0 {
            for d2 in 0..=d1 {
                for (i1, i2) in [(2u64, 4u64), (3, 9), (2, 6), (5, 25)] {
                    for steps in [vec![], vec![(i1, d1)], vec![(i1, d1), (i2, d2)]] {
                        let prof = RamificationProfile::new(d0, steps).map_err(|e| e.to_string())?;
                        ensure(sym3_conductor_bound_holds(&prof), || format!("{prof:?}"))?;
                        profiles += 1;
                    }
                }
            }
        }
    }
    Ok(format!("N <= 10000, {profiles} tripled profiles"))
}

fn criterion_11() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 11);
    let p = 5u64;
    let ctx = PAdicContext::new(p).unwrap();
    for t in 0..60 {
        let q = [3u64, 7, 11, 13][rng.gen_range(0..4)];
        let eta = DirichletCharacter::legendre(q).unwrap();
        let sph: Vec<(u64, Rational, Rational)> =
            [2u64, 3, 7, 11, 13, 17].into_iter().filter(|&l| l != q).map(|l| (l, small_rational(&mut rng), small_rational(&mut rng))).collect();
        let h = rng.gen_range(0..=3i64);
        let k = rng.gen_range(h + 1..=8i64);
        let f = gl2_system(p, k, Scalar::Rat(pow_rational(p, h)), Scalar::Rat(pow_rational(p, k - 1 - h)), &sph);
        for i in 1..=4u8 {
            let lhs = sym3_lift(&twist(&f, &eta).unwrap(), i).unwrap();
            let base = sym3_lift(&f, i).unwrap();
            let rhs = twist(&base, &eta.pow(3)).unwrap();
            ensure(lhs.spherical == rhs.spherical, || format!("trial {t}, η = ({q}/.), branch {i}: spherical"))?;
            ensure(lhs.iwahori_p == rhs.iwahori_p, || format!("trial {t}, η = ({q}/.), branch {i}: values at p"))?;
            let (s0, s1) = (slope(&base, &ctx).unwrap(), slope(&twist(&base, &eta).unwrap(), &ctx).unwrap());
            ensure(s0 == s1, || format!("trial {t}: slope {s0} vs {s1}"))?;
        }
        let (s0, s1) = (slope(&f, &ctx).unwrap(), slope(&twist(&f, &eta).unwrap(), &ctx).unwrap());
        ensure(s0 == s1, || format!("trial {t}: GL2 slope {s0} vs {s1}"))?;
    }
    Ok("60 systems x 4 branches".into())
}

fn criterion_12() -> Outcome {
    let start = Instant::now();
    let p = 5u64;
    let ctx = PAdicContext::new(p).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 12);
    let primes = vec![2u64, 3, 7];
    let max_depth = 6;
    // unit roots with α ≢ ±β mod 5 keep the four branch lifts pairwise incongruent at p
    let roots = [(1, 2), (2, 1), (1, 3), (3, 4), (4, 2)];
    let gl2: Vec<Eigensystem> = roots
        .iter()
        .enumerate()
        .map(|(i, &(a, b))| {
            let sph: Vec<(u64, Rational, Rational)> =
                primes.iter().map(|&l| (l, rat(rng.gen_range(-40..=40)), rat(rng.gen_range(1..=9)))).collect();
            let mut f = gl2_system(p, 2, Scalar::int(a), Scalar::int(b), &sph);
            f.id = Some(format!("f{i}"));
            f
        })
        .collect();
    let mut entries = Vec::new();
    let mut expected = Vec::new();
    for (i, f) in gl2.iter().enumerate() {
        let b = (i % 4) as u8 + 1;
        let mut x = sym3_lift(f, b).unwrap();
        x.id = Some(format!("exact{i}"));
        entries.push(x);
        expected.push(Verdict::ExactSym3 { matched: format!("f{i}"), branches: vec![b] });
    }
    for (i, f) in gl2.iter().enumerate() {
        let depth = [1u32, 2, 3, 1, 2][i];
        let b = ((i + 1) % 4) as u8 + 1;
        let ell = primes[i % primes.len()];
        let slot = i % 3;
        let mut x = sym3_lift(f, b).unwrap();
        x.id = Some(format!("near{i}"));
        let v = &mut x.spherical.get_mut(&ell).unwrap()[slot];
        *v = v.checked_add(&Scalar::Rat(pow_rational(p, depth as i64) * rat(2))).unwrap();
        entries.push(x);
        expected.push(Verdict::Congruent { matched: format!("f{i}"), branch: Some(b), depth, witness_primes: vec![ell] });
    }
    for i in 0..10 {
        let mut x = Eigensystem::new(Group::GSp4, p, 1, Weight::GSp4(3, 3));
        x.id = Some(format!("random{i}"));
        for &l in &primes {
            x.spherical.insert(l, (0..3).map(|_| Scalar::int(rng.gen_range(-500..=500))).collect());
        }
        x.iwahori_p = Some((0..3).map(|_| Scalar::int(rng.gen_range(-500..=500))).collect());
        entries.push(x);
        expected.push(Verdict::NotCongruent);
    }
    let opts = ScanOptions { primes, max_depth, jobs: Some(4) };
    let report = scan_congruences(&entries, &gl2, &opts, &ctx).map_err(|e| e.to_string())?;
    ensure(report.entries.len() == 20, || format!("{} entries", report.entries.len()))?;
    for (e, want) in report.entries.iter().zip(&expected) {
        ensure(&e.verdict == want, || format!("{}: got {:?}, want {want:?}", e.id, e.verdict))?;
    }
    let took = start.elapsed();
    ensure(took < CRIT12_BUDGET, || format!("took {took:?}"))?;
    Ok(format!("20 entries classified, {:.3} s", took.as_secs_f64()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("functoriality identity", criterion_1),
        ("similitude", criterion_2),
        ("transfer identity", criterion_3),
        ("slope table", criterion_4),
        ("branch separation", criterion_5),
        ("classifier soundness and completeness", criterion_6),
        ("pseudocharacter identities", criterion_7),
        ("weight map", criterion_8),
        ("Sen and bad-prime factorization", criterion_9),
        ("levels", criterion_10),
        ("twist compatibility", criterion_11),
        ("congruence scan", criterion_12),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
