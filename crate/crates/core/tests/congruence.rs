use proptest::prelude::*;
use rcft_core::arith::{inv_mod, units};
use rcft_core::catalog::*;
use rcft_core::congruence::*;
use rcft_core::galois::{check_condition6, eq7_expressions, extract_galois, g_matrix, lift_for};
use rcft_core::moddata::validate;
use rcft_core::{ModularData, Rational};

fn mul(a: &Sl2Mat, b: &Sl2Mat) -> Sl2Mat {
    let f = |i: usize, j: usize| a[i][0] * b[0][j] + a[i][1] * b[1][j];
    [[f(0, 0), f(0, 1)], [f(1, 0), f(1, 1)]]
}

/// Product of the token matrices, computed here from scratch.
fn oracle(tokens: &[Token]) -> Sl2Mat {
    tokens.iter().fold([[1, 0], [0, 1]], |acc, t| {
        let m = match t {
            Token::S => [[0, 1], [-1, 0]],
            Token::SInv => [[0, -1], [1, 0]],
            Token::T(k) => [[1, *k], [0, 1]],
        };
        mul(&acc, &m)
    })
}

fn token() -> impl Strategy<Value = Token> {
    prop_oneof![Just(Token::S), Just(Token::SInv), (-5i64..=5).prop_map(Token::T)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn words_round_trip(tokens in prop::collection::vec(token(), 0..14)) {
        let m = oracle(&tokens);
        let w = GeneratorWord(tokens.clone());
        prop_assert_eq!(w.evaluate(), m);
        let back = sl2_word(&m).unwrap();
        prop_assert_eq!(back.evaluate(), m);
        prop_assert_eq!(w.inverse().then(&w).evaluate(), [[1, 0], [0, 1]]);
    }

    #[test]
    fn crt_solution_is_minimal(e in 0u32..6, m in prop::sample::select(vec![1u64, 3, 5, 7, 9, 15, 21])) {
        let d = crt_d(e, m);
        let p = 1u64 << e;
        prop_assert_eq!(d % p, 1 % p);
        prop_assert_eq!(d % m, 0);
        prop_assert!((0..d).all(|x| x % p != 1 % p || x % m != 0));
    }

    #[test]
    fn h_lift_is_diagonal_mod_n(n in 2u64..60, l in 1i64..200) {
        prop_assume!(inv_mod(l, n).is_some());
        let h = h_lift(l, n).unwrap();
        prop_assert_eq!(h[0][0] as i128 * h[1][1] as i128 - h[0][1] as i128 * h[1][0] as i128, 1);
        let ni = n as i64;
        prop_assert_eq!(h[0][0].rem_euclid(ni), l.rem_euclid(ni));
        prop_assert_eq!((h[1][1] as i128 * l as i128).rem_euclid(n as i128), 1 % n as i128);
        prop_assert_eq!(h[0][1].rem_euclid(ni), 0);
        prop_assert_eq!(h[1][0].rem_euclid(ni), 0);
    }
}

#[test]
fn word_errors_and_display() {
    assert!(matches!(sl2_word(&[[2, 0], [0, 1]]), Err(CongruenceError::Determinant(_))));
    assert_eq!(GeneratorWord::default().to_string(), "1");
    let w = GeneratorWord(vec![Token::S, Token::T(3), Token::SInv, Token::T(1)]);
    assert_eq!(w.to_string(), "s t^3 s^-1 t");
    assert!(h_lift(2, 4).is_err());
}

#[test]
fn sl2_orders_by_enumeration() {
    for n in 1..=12u64 {
        let want = sl2_order_formula(n);
        assert_eq!(sl2_group_order(n, SL2_DEFAULT_CAP).unwrap(), want, "N = {n}");
        if n <= 7 {
            // Brute-force count of ad − bc ≡ 1.
            let mut count = 0;
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        for d in 0..n {
                            count += u64::from((a * d + n * n - b * c) % n == 1 % n);
                        }
                    }
                }
            }
            assert_eq!(count, want, "N = {n}");
        }
    }
    assert!(matches!(sl2_group_order(12, 100), Err(CongruenceError::CapExceeded { cap: 100 })));
    assert!(sl2_group_order(0, 10).is_err());
}

#[test]
fn presentations_hold_mod_n() {
    let cases: &[(Variant, &[u64])] = &[
        (Variant::AP2, &[3, 5, 7, 9]),
        (Variant::AP3, &[2, 4, 5, 8]),
        (Variant::BP5, &[3, 4, 6]),
        (Variant::BP7, &[3, 5, 8]),
        (Variant::C, &[6, 12]),
        (Variant::All, &[5, 6, 8]),
    ];
    for (v, ns) in cases {
        for &n in *ns {
            let r = lemma1_relations(&Sl2ModN(n), *v).unwrap();
            assert!(r.iter().all(|x| x.holds), "{v:?} N = {n}: {r:?}");
        }
    }
    assert!(lemma1_relations(&Sl2ModN(4), Variant::AP2).is_err());
    assert!("a-p4".parse::<Variant>().is_err());
}

#[test]
fn presentations_hold_on_modular_data() {
    let md = lattice_data(2).unwrap();
    assert!(lemma1_relations(&md, Variant::All).unwrap().iter().all(|r| r.holds));
    let a2 = affine_data(Algebra::A2, 2).unwrap();
    assert!(lemma1_relations(&a2, Variant::AP2).unwrap().iter().all(|r| r.holds));
    let d = quantum_double_data(&builtin_group("s3").unwrap()).unwrap();
    assert!(lemma1_relations(&d, Variant::C).unwrap().iter().all(|r| r.holds));
}

#[test]
fn branches_of_the_congruence_test() {
    let a2 = affine_data(Algebra::A2, 2).unwrap();
    let r = theorem2_test(&a2).unwrap();
    assert_eq!((r.branch, r.n, r.e), (Branch::CoprimeP2, 15, 0));
    assert!(r.passed());

    let z2 = quantum_double_data(&builtin_group("z2").unwrap()).unwrap();
    let r = theorem2_test(&z2).unwrap();
    assert_eq!(r.branch, Branch::CoprimeP3);
    assert!(r.passed());

    for n in [2, 4, 6, 8, 10] {
        let md = lattice_data(n).unwrap();
        let r = theorem2_test(&md).unwrap();
        assert_eq!(r.branch, Branch::Composite, "lattice {n}");
        assert_eq!(r.d, Some(crt_d(r.e, r.m)));
        assert!(r.passed(), "lattice {n}: {r}");
    }
    let s3 = quantum_double_data(&builtin_group("s3").unwrap()).unwrap();
    let r = theorem2_test(&s3).unwrap();
    assert_eq!((r.branch, r.n, r.e, r.m, r.d), (Branch::Composite, 6, 1, 3, Some(3)));
    assert!(r.conditions.len() >= 4 && r.passed());
}

#[test]
fn u_matrix_on_lattices() {
    for n in [2i64, 4, 6, 8, 10] {
        let md = lattice_data(n as u32).unwrap();
        let u = u_matrix(&md).unwrap();
        assert!(u.unitary && u.symmetric && u.order_ok && u.zero_pattern, "lattice {n}");
        let g = num_integer::gcd(u.m as i64, n);
        for a in 0..n {
            for c in 0..n {
                let nonzero = !u.u.get(a as usize, c as usize).is_zero();
                assert_eq!(nonzero, (a - c) % g == 0, "lattice {n} ({a}, {c})");
            }
        }
    }
    assert!(u_matrix(&affine_data(Algebra::A2, 2).unwrap()).is_err());
}

#[test]
fn galois_matrices_come_from_sl2() {
    let data = [
        lattice_data(6).unwrap(),
        affine_data(Algebra::A1, 2).unwrap(),
        affine_data(Algebra::A2, 2).unwrap(),
        quantum_double_data(&builtin_group("d4").unwrap()).unwrap(),
    ];
    for md in &data {
        let n = md.t_order();
        for l in units(n) {
            assert!(rho_h_check(md, l).unwrap(), "N = {n}, ℓ = {l}");
            if check_condition6(md, lift_for(md, l).unwrap()).unwrap() {
                let [e1, e2, e3, e4] = eq7_expressions(md, l).unwrap();
                let g = g_matrix(&extract_galois(md, lift_for(md, l).unwrap()).unwrap());
                assert!(e1 == g && e2 == g && e3 == g && e4 == g, "N = {n}, ℓ = {l}");
            }
        }
    }
}

#[test]
fn gamma_n_acts_trivially() {
    for md in [lattice_data(4).unwrap(), affine_data(Algebra::A1, 3).unwrap()] {
        let v = gamma_n_sample(&md, 30, 7).unwrap();
        assert!(v.passed(), "{v}");
        assert_eq!(v, gamma_n_sample(&md, 30, 7).unwrap());
    }
}

#[test]
fn gamma_n_detects_a_broken_representation() {
    let good = lattice_data(4).unwrap();
    let mut t = good.t_exponents().to_vec();
    t[0] = Rational::from_integer(0.into());
    let bad = good.with_t(t).unwrap();
    assert!(!validate(&bad).unwrap().passed());
    assert!(!gamma_n_sample(&bad, 50, 1).unwrap().passed());
}

#[test]
fn odd_order_criterion_matches_t_order() {
    for k in 1..=4 {
        for alg in [Algebra::A1, Algebra::A2] {
            let md = affine_data(alg, k).unwrap();
            let meta = affine_metadata(alg, k);
            assert_eq!(
                odd_order_criterion(&meta.c, &meta.h),
                md.t_order() % 2 == 1,
                "{alg:?} level {k}"
            );
        }
    }
    for n in [2, 4, 6] {
        let meta = lattice_metadata(n);
        assert!(!odd_order_criterion(&meta.c, &meta.h));
    }
    assert!(theorem4_applies(&affine_data(Algebra::A2, 4).unwrap()));
    assert!(!theorem4_applies(&ModularData::trivial().with_t(vec![Rational::new(1.into(), 2.into())]).unwrap()));
}
