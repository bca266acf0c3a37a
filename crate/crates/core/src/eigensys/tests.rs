use proptest::prelude::*;

use super::*;
use crate::oracle::{char_poly, sym3_matrix, Mat2};
use crate::poly::{sym3_quadratic, UniPoly};
use crate::scalar::ratio;

fn ctx(p: u64) -> PAdicContext {
    PAdicContext::any_prime(p).unwrap()
}

fn gl2(p: u64, k: i64, spherical: &[(u64, i64, i64)]) -> Eigensystem {
    let mut e = Eigensystem::new(Group::GL2, p, 1, Weight::GL2(k));
    for &(ell, a, c) in spherical {
        e.spherical.insert(ell, vec![Scalar::int(a), Scalar::int(c)]);
    }
    e
}

fn stabilized(p: u64, k: i64, alpha: Scalar, beta: Scalar) -> Eigensystem {
    let mut e = gl2(p, k, &[(2, 3, 1), (3, -1, 1)]);
    e.iwahori_p = Some(vec![&alpha * &beta, alpha]);
    e
}

fn ints(v: &[i64]) -> [Scalar; 4] {
    [Scalar::int(v[0]), Scalar::int(v[1]), Scalar::int(v[2]), Scalar::int(v[3])]
}

#[test]
fn normalize_examples() {
    let f = stabilized(5, 2, Scalar::int(5), Scalar::int(1));
    assert_eq!(normalize(&f), f);
    let mut g = Eigensystem::new(Group::GSp4, 5, 1, Weight::GSp4(12, 12));
    g.iwahori_p = Some(vec![Scalar::int(1), Scalar::Rat(num_traits::pow(rat(5), 10)), Scalar::int(7)]);
    assert_eq!(normalize(&g).iwahori_p.unwrap()[1], Scalar::int(1));
    g.weight = Weight::GSp4(3, 3);
    g.iwahori_p = Some(vec![Scalar::int(1); 3]);
    assert_eq!(normalize(&g).iwahori_p.unwrap(), vec![Scalar::int(1), Scalar::Rat(ratio(1, 5)), Scalar::int(1)]);
}

#[test]
fn stabilization_examples() {
    let f = gl2(2, 2, &[(2, 3, 1)]);
    let [a, b] = stabilizations(&f, &ctx(2)).unwrap();
    let mut roots: Vec<Scalar> = vec![a.iwahori_p.unwrap()[1].clone(), b.iwahori_p.unwrap()[1].clone()];
    roots.sort_by_key(|x| x.to_string());
    assert_eq!(roots, vec![Scalar::int(1), Scalar::int(2)]);

    let f = gl2(5, 2, &[(5, 0, 1)]);
    let c = ctx(5);
    let [a, b] = stabilizations(&f, &c).unwrap();
    assert_eq!(slope(&a, &c).unwrap(), Valuation::Finite(ratio(1, 2)));
    assert_eq!(slope(&b, &c).unwrap(), Valuation::Finite(ratio(1, 2)));
    assert!(!a.is_degenerate());

    // X² − 10X + 25
    let mut f = gl2(5, 2, &[]);
    f.spherical.insert(5, vec![Scalar::int(10), Scalar::int(5)]);
    let [a, b] = stabilizations(&f, &c).unwrap();
    assert_eq!(a, b);
    assert!(a.is_degenerate());
}

#[test]
fn lift_examples() {
    let f = stabilized(5, 2, Scalar::int(5), Scalar::int(1));
    let l = sym3_lift(&f, 1).unwrap();
    assert_eq!(l.weight, Weight::GSp4(3, 3));
    assert_eq!(l.spherical[&2], vec![Scalar::int(1), Scalar::int(151), Scalar::int(15)]);
    let (a, b) = (Scalar::int(5), Scalar::int(1));
    let ab = &a * &b;
    let expect = vec![ab.pow(3).unwrap(), &ab * &a.pow(4).unwrap(), a.pow(3).unwrap()];
    assert_eq!(l.iwahori_p.unwrap(), expect);
    assert!(matches!(sym3_lift(&gl2(5, 2, &[]), 1), Err(Error::MissingData(_))));
    assert_eq!(sym3_lift(&f, 9).unwrap_err(), Error::BadBranch(9, 8));
}

/// α = p^m·√p with v(α) = h; β = p^{k−1}/α.
fn slope_system(p: u64, k: i64, h2: i64) -> Eigensystem {
    let theta = Scalar::from_quad(QuadExt::theta(QuadField::new(rat(0), rat(-(p as i64))), 0));
    let alpha = if h2 % 2 == 0 {
        Scalar::Rat(pow_rational(p, h2 / 2))
    } else {
        theta.scale(&pow_rational(p, (h2 - 1) / 2))
    };
    let beta = Scalar::Rat(pow_rational(p, k - 1)).checked_div(&alpha).unwrap();
    stabilized(p, k, alpha, beta)
}

#[test]
fn slope_examples() {
    let c = ctx(5);
    let f = slope_system(5, 12, 0);
    assert_eq!(slope(&f, &c).unwrap(), Valuation::int(0));
    let got: Vec<Valuation> = (1..=4).map(|i| slope(&sym3_lift(&f, i).unwrap(), &c).unwrap()).collect();
    assert_eq!(got, vec![Valuation::int(0), Valuation::int(11), Valuation::int(11), Valuation::int(44)]);
    let f = slope_system(5, 2, 2);
    assert_eq!(slope(&sym3_lift(&f, 1).unwrap(), &c).unwrap(), Valuation::int(7));
}

#[test]
fn classicality_examples() {
    let c = ctx(5);
    let mut g = Eigensystem::new(Group::GSp4, 5, 1, Weight::GSp4(12, 12));
    // slope = v(t₁t₂) − 10
    g.iwahori_p = Some(vec![Scalar::int(1), Scalar::Rat(pow_rational(5, 18)), Scalar::int(1)]);
    assert!(classicality_guaranteed(&g, &c).unwrap());
    g.iwahori_p = Some(vec![Scalar::int(1), Scalar::Rat(pow_rational(5, 19)), Scalar::int(1)]);
    assert!(!classicality_guaranteed(&g, &c).unwrap());
    g.weight = Weight::GSp4(3, 3);
    g.iwahori_p = Some(vec![Scalar::int(1), Scalar::int(5), Scalar::int(1)]);
    assert_eq!(slope(&g, &c).unwrap(), Valuation::int(0));
    assert!(!classicality_guaranteed(&g, &c).unwrap());
}

#[test]
fn twist_examples() {
    let c = ctx(5);
    let f = stabilized(5, 2, Scalar::int(5), Scalar::int(1));
    let l = sym3_lift(&f, 1).unwrap();
    let t = twist(&l, &DirichletCharacter::trivial()).unwrap();
    assert_eq!(t.spherical, l.spherical);
    assert_eq!(t.iwahori_p, l.iwahori_p);
    assert_eq!(t.tame_level, 1);

    let eta = DirichletCharacter::legendre(3).unwrap();
    assert_eq!(eta.value(2).unwrap(), Scalar::int(-1));
    let t = twist(&l, &eta).unwrap();
    assert_eq!(t.spherical[&2], vec![Scalar::int(1), Scalar::int(151), Scalar::int(-15)]);
    assert!(!t.spherical.contains_key(&3));
    assert_eq!(t.tame_level, 9);
    assert_eq!(slope(&t, &c).unwrap(), slope(&l, &c).unwrap());

    let quartic = DirichletCharacter::new(5, 4, vec![None, Some(0), Some(1), Some(3), Some(2)]).unwrap();
    let g = stabilized(7, 2, Scalar::int(7), Scalar::int(1));
    assert!(matches!(twist(&sym3_lift(&g, 1).unwrap(), &quartic), Err(Error::CharacterMode(_))));
    assert!(twist(&l, &DirichletCharacter::legendre(5).unwrap()).is_err());
}

#[test]
fn quartic_examples() {
    assert_eq!(is_sym3_quartic(&ints(&[15, 70, 120, 64]), false).unwrap(), vec![QuarticRoot::Rational { t: rat(3), d: rat(2) }]);
    assert_eq!(is_sym3_quartic(&ints(&[4, 6, 4, 1]), false).unwrap(), vec![QuarticRoot::Rational { t: rat(2), d: rat(1) }]);
    assert!(is_sym3_quartic(&ints(&[1, 1, 1, 1]), true).unwrap().is_empty());
    // T = 0 and D³ = 2
    assert!(is_sym3_quartic(&ints(&[0, 4, 0, 4]), false).unwrap().is_empty());
    let ext = is_sym3_quartic(&ints(&[0, 4, 0, 4]), true).unwrap();
    assert!(ext.iter().any(|r| matches!(r, QuarticRoot::CubicExt { .. })));
}

#[test]
fn quartic_matches_oracle() {
    for (t, d) in [(3, 2), (-1, 5), (0, 7), (4, -3), (2, 0)] {
        let g = Mat2::from_ints([[t, -d], [1, 0]]);
        let f = char_poly(&sym3_matrix(&g));
        let e = f.elementary();
        let roots = is_sym3_quartic(&[e[0].clone(), e[1].clone(), e[2].clone(), e[3].clone()], false).unwrap();
        assert!(roots.contains(&QuarticRoot::Rational { t: rat(t), d: rat(d) }), "({t},{d}) → {roots:?}");
    }
}

#[test]
fn classify_examples() {
    let f = stabilized(5, 2, Scalar::int(5), Scalar::int(1));
    let l = sym3_lift(&f, 1).unwrap();
    match classify_sym3(&l, &[2, 3], false).unwrap() {
        Sym3Classification::Candidate { roots, branches, cube_root_ambiguous } => {
            assert_eq!(roots[&2][0].gl2_pair(2), Some((rat(3), rat(1))));
            assert_eq!(roots[&3][0].gl2_pair(3), Some((rat(-1), rat(1))));
            assert_eq!(branches, Some(vec![1]));
            assert!(!cube_root_ambiguous);
        }
        other => panic!("{other:?}"),
    }
    let mut bad = l.clone();
    let v = bad.spherical.get_mut(&3).unwrap();
    v[1] = &v[1] + &Scalar::one();
    assert_eq!(classify_sym3(&bad, &[2, 3], false).unwrap(), Sym3Classification::NotSym3 { witness: 3 });
    assert!(matches!(classify_sym3(&l, &[7], false), Err(Error::MissingData(_))));
}

#[test]
fn branch_binomial_examples() {
    let shown: Vec<String> = (1..=4).map(|i| branch_binomials(&TransferBranch::new(i).unwrap())[0].to_string()).collect();
    assert_eq!(shown, vec!["U0*U2^4 - U1^3", "U0^2*U2^2 - U1^3", "U0*U1 - U2^4", "U0^2 - U1*U2^2"]);
}

#[test]
fn eight_stabilizations_are_distinct() {
    let c = ctx(5);
    let mut f = gl2(5, 4, &[(2, 3, 1)]);
    f.spherical.insert(5, vec![Scalar::int(26), Scalar::int(25)]);
    let mut seen = Vec::new();
    for s in stabilizations(&f, &c).unwrap() {
        for i in 1..=4 {
            let l = sym3_lift(&s, i).unwrap();
            assert!(!seen.contains(&l.iwahori_p));
            seen.push(l.iwahori_p);
        }
    }
    assert_eq!(seen.len(), 8);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn lift_quartic_is_oracle_charpoly(a in -20i64..20, c in -6i64..6, li in 0usize..5) {
        let ell = [2u64, 3, 5, 7, 11][li];
        let vals = transfer_values(ell, &Scalar::int(a), &Scalar::int(c)).unwrap();
        let e = quartic_coefficients(ell, &vals).unwrap();
        let g = Mat2::from_ints([[a, -(ell as i64) * c], [1, 0]]);
        let oracle = char_poly(&sym3_matrix(&g));
        prop_assert_eq!(UniPoly::monic_from_elementary(&e), oracle.clone());
        prop_assert_eq!(sym3_quadratic(&Scalar::int(a), &Scalar::int(ell as i64 * c)), oracle);
    }

    #[test]
    fn round_trip_through_classifier(a in -20i64..20, c in 1i64..6, i in 1u8..=4) {
        let mut f = gl2(5, 2, &[(2, a, c), (3, a + 1, c)]);
        f.iwahori_p = Some(vec![Scalar::int(25), Scalar::int(1)]);
        let l = sym3_lift(&f, i).unwrap();
        let Sym3Classification::Candidate { roots, branches, .. } = classify_sym3(&l, &[2, 3], false).unwrap() else {
            panic!("lift rejected");
        };
        prop_assert!(roots[&2].iter().any(|r| r.gl2_pair(2) == Some((rat(a), rat(c)))));
        prop_assert!(branches.unwrap().contains(&i));
    }
}
