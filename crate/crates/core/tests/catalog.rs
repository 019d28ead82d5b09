use num_integer::Integer;
use rcft_core::arith::{lift_unit, units};
use rcft_core::catalog::*;
use rcft_core::format::{parse_group, serialize_group};
use rcft_core::moddata::{quantum_dimensions, validate, verlinde};
use rcft_core::{Cyclo, Rational};

fn sin_ratio(x: f64, kappa: f64) -> f64 {
    (std::f64::consts::PI * x / kappa).sin() / (std::f64::consts::PI / kappa).sin()
}

fn approx(z: &Cyclo, want: f64) -> bool {
    let (re, im) = z.to_complex();
    (re - want).abs() < 1e-9 && im.abs() < 1e-9
}

#[test]
fn lattice_family() {
    for n in (2..=10).step_by(2) {
        let md = lattice_data(n).unwrap();
        assert_eq!(md.size(), n as usize);
        assert_eq!(md.t_order(), 24u64.lcm(&(2 * n as u64)));
        assert!(validate(&md).unwrap().passed(), "lattice {n}");
        let f = verlinde(&md).unwrap();
        for a in 0..n as usize {
            for b in 0..n as usize {
                for c in 0..n as usize {
                    assert_eq!(f.get(a, b, c), u64::from((a + b) % n as usize == c));
                }
            }
        }
        let meta = lattice_metadata(n);
        assert_eq!(meta.c, Rational::from_integer(1.into()));
        for (a, h) in meta.h.iter().enumerate() {
            // lowest weight in the coset a + nZ
            let m = (a as i64).min(n as i64 - a as i64);
            assert_eq!(*h, Rational::new((m * m).into(), (2 * n as i64).into()));
        }
    }
    assert!(matches!(lattice_data(3), Err(CatalogError::OddLattice(3))));
}

#[test]
fn a1_fusion_is_truncated_clebsch_gordan() {
    for k in 1..=5u32 {
        let md = affine_data(Algebra::A1, k).unwrap();
        assert_eq!(md.size(), k as usize + 1);
        assert!(validate(&md).unwrap().passed(), "A1 level {k}");
        let f = verlinde(&md).unwrap();
        let k = k as usize;
        for a in 0..=k {
            for b in 0..=k {
                for c in 0..=k {
                    let allowed = a.abs_diff(b) <= c && c <= (a + b).min(2 * k - a - b) && (a + b + c) % 2 == 0;
                    assert_eq!(f.get(a, b, c), u64::from(allowed), "k={k} {a} {b} {c}");
                }
            }
        }
        let dims = quantum_dimensions(&md).unwrap();
        for (a, d) in dims.iter().enumerate() {
            assert!(approx(d, sin_ratio(a as f64 + 1.0, k as f64 + 2.0)));
        }
    }
}

#[test]
fn a2_dimensions_follow_weyl_formula() {
    for k in 1..=4u32 {
        let md = affine_data(Algebra::A2, k).unwrap();
        let weights = affine_weights(Algebra::A2, k);
        assert_eq!(md.size(), ((k + 1) * (k + 2) / 2) as usize);
        assert!(validate(&md).unwrap().passed(), "A2 level {k}");
        assert!(verlinde(&md).unwrap().ring_axioms_hold());
        let kappa = k as f64 + 3.0;
        let dims = quantum_dimensions(&md).unwrap();
        for (w, d) in weights.iter().zip(&dims) {
            let (a, b) = (w[0] as f64, w[1] as f64);
            let want = sin_ratio(a + 1.0, kappa) * sin_ratio(b + 1.0, kappa) * sin_ratio(a + b + 2.0, kappa)
                / sin_ratio(2.0, kappa);
            assert!(approx(d, want), "A2 level {k} weight {w:?}");
        }
    }
    let md = affine_data(Algebra::A2, 1).unwrap();
    let f = verlinde(&md).unwrap();
    for a in 0..3 {
        for b in 0..3 {
            assert_eq!((0..3).map(|c| f.get(a, b, c)).sum::<u64>(), 1);
        }
    }
}

#[test]
fn affine_metadata_matches_sugawara() {
    let meta = affine_metadata(Algebra::A1, 2);
    assert_eq!(meta.c, Rational::new(3.into(), 2.into()));
    assert_eq!(meta.h[1], Rational::new(3.into(), 16.into()));
    assert_eq!(meta.h[2], Rational::new(1.into(), 2.into()));
    let meta = affine_metadata(Algebra::A2, 1);
    assert_eq!(meta.c, Rational::from_integer(2.into()));
    assert_eq!(meta.h[1], Rational::new(1.into(), 3.into()));
    assert!(matches!(affine_data(Algebra::A1, 0), Err(CatalogError::ZeroLevel)));
    assert!("b2".parse::<Algebra>().is_err());
}

#[test]
fn affine_galois_matches_weyl_folding() {
    for (alg, k) in [(Algebra::A1, 1), (Algebra::A1, 3), (Algebra::A2, 1), (Algebra::A2, 2), (Algebra::A2, 4)] {
        let md = affine_data(alg, k).unwrap();
        let weights = affine_weights(alg, k);
        let kappa = k as u64 + alg.dual_coxeter() as u64;
        let guard = 4 * (alg.rank() as u64 + 1) * kappa;
        for ell in units(md.t_order()) {
            let l = lift_unit(ell, md.t_order(), md.full_order() * guard).unwrap();
            let gs = rcft_core::galois::extract_galois(&md, l).unwrap();
            for (a, lam) in weights.iter().enumerate() {
                let (img, sign) = affine_galois_weight(alg, k, l, lam).unwrap();
                let b = weights.iter().position(|w| *w == img).unwrap();
                assert_eq!(gs.perm[a], b, "{alg:?} level {k}, ℓ = {l}, λ = {lam:?}");
                assert_eq!(gs.signs[a], sign, "{alg:?} level {k}, ℓ = {l}, λ = {lam:?}");
            }
        }
        assert!(affine_galois_weight(alg, k, 2, &weights[0]).is_err());
    }
}

#[test]
fn doubles_of_builtin_groups() {
    for (name, order, classes) in [("z2", 2, 2), ("z3", 3, 3), ("z5", 5, 5), ("s3", 6, 3), ("d4", 8, 5), ("q8", 8, 5)] {
        let g = builtin_group(name).unwrap();
        assert_eq!(g.order(), order);
        assert_eq!(g.classes.len(), classes);
        let md = quantum_double_data(&g).unwrap();
        let rank: usize = g.classes.iter().map(|c| c.characters.len()).sum();
        assert_eq!(md.size(), rank);
        assert!(validate(&md).unwrap().passed(), "D({name})");
        assert_eq!(md.t_order(), g.exponent() as u64, "D({name})");
        // S_00 = 1/|G| and the quantum dimensions are |class|·χ(e).
        assert_eq!(*md.s().get(0, 0), Cyclo::from_frac(1, order as i64));
        let dims = quantum_dimensions(&md).unwrap();
        let mut total = 0i64;
        for (l, d) in double_labels(&g).iter().zip(&dims) {
            let c = &g.classes[l.class];
            let chi_e = c.characters[l.chi][c.centralizer.iter().position(|&x| x == g.identity).unwrap()]
                .as_i64()
                .unwrap();
            let want = (order / c.centralizer.len()) as i64 * chi_e;
            assert_eq!(d.as_i64(), Some(want));
            total += want * want;
        }
        assert_eq!(total, (order * order) as i64);
        let meta = double_metadata(&g).unwrap();
        assert_eq!(meta.h, md.t_exponents());
        for ell in units(g.exponent() as u64) {
            assert!(double_galois_check(&g, ell).unwrap(), "D({name}) ℓ = {ell}");
        }
    }
}

#[test]
fn abelian_doubles_fuse_as_groups() {
    for n in 2..=4 {
        let g = builtin_group(&format!("z{n}")).unwrap();
        let md = quantum_double_data(&g).unwrap();
        let f = verlinde(&md).unwrap();
        let size = md.size();
        assert_eq!(size, n * n);
        for a in 0..size {
            for b in 0..size {
                let row: Vec<u64> = (0..size).map(|c| f.get(a, b, c)).collect();
                assert_eq!(row.iter().sum::<u64>(), 1);
                assert!(row.iter().all(|&x| x <= 1));
            }
        }
    }
}

#[test]
fn group_tables() {
    // Klein four-group from an explicit table.
    let mul = vec![vec![0, 1, 2, 3], vec![1, 0, 3, 2], vec![2, 3, 0, 1], vec![3, 2, 1, 0]];
    let names = ["e", "a", "b", "c"].map(String::from).to_vec();
    let g = from_table(mul, 0, names).unwrap();
    assert_eq!(g.classes.len(), 4);
    assert_eq!(g.exponent(), 2);
    let md = quantum_double_data(&g).unwrap();
    assert_eq!(md.size(), 16);
    assert!(validate(&md).unwrap().passed());

    let bad = vec![vec![0, 1], vec![1, 1]];
    assert!(from_table(bad, 0, vec!["e".into(), "x".into()]).is_err());
    assert!(builtin_group("a5").is_err());

    for name in ["z4", "s3", "d4", "q8"] {
        let g = builtin_group(name).unwrap();
        let back = parse_group(&serialize_group(&g)).unwrap();
        assert_eq!(back.mul, g.mul);
        assert_eq!(back.names, g.names);
        assert_eq!(back.classes, g.classes);
    }
}

#[test]
fn gauss_sums() {
    // S(1, 0, c) for c ≡ 1 mod 4 is √c.
    let s5 = gauss_sum(2, 0, 5).unwrap();
    assert_eq!(s5.checked_mul(&s5.conj()).unwrap(), Cyclo::from_int(5));
    assert!(gauss_sum(1, 0, 0).is_err());
    assert!(gauss_reciprocity_check(1, 1, 1).unwrap().holds(1e-9));
    assert!(gauss_reciprocity_check(0, 0, 1).is_err());
    assert!(gauss_reciprocity_check(1, 0, 1).is_err());
}
