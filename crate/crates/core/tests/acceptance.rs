//! Acceptance report: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the report is always printed.

use std::time::{Duration, Instant};

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rcft_core::arith::units;
use rcft_core::bantay::*;
use rcft_core::catalog::*;
use rcft_core::cli;
use rcft_core::congruence::*;
use rcft_core::format::parse;
use rcft_core::galois::{check_condition6, eq7_expressions, extract_galois, g_matrix, lift_for};
use rcft_core::moddata::*;
use rcft_core::{ModularData, Rational, Verdict};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<E: std::fmt::Display>(x: E) -> String {
    x.to_string()
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t0 = Instant::now();
    let v = f();
    (v, t0.elapsed())
}

fn cli_out(args: &[&str], input: &str) -> (i32, String) {
    let mut argv = vec!["rcft"];
    argv.extend_from_slice(args);
    let mut stdin = input.as_bytes();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = cli::run(argv, &mut stdin, &mut out, &mut err);
    (code, String::from_utf8_lossy(&out).into_owned() + &String::from_utf8_lossy(&err))
}

fn lattice_suite() -> Outcome {
    let mut times = Vec::new();
    for n in [2u32, 4, 6, 8, 10] {
        let t0 = Instant::now();
        let (code, doc) = cli_out(&["gen", "lattice", &n.to_string()], "");
        ensure(code == 0, || format!("gen lattice {n} exited {code}"))?;
        let (code, report) = cli_out(&["validate"], &doc);
        ensure(code == 0, || format!("validate lattice {n}: {report}"))?;
        let md = parse(&doc).map_err(e)?.data;
        let want = 24u64.lcm(&(2 * n as u64));
        ensure(md.t_order() == want, || format!("lattice {n}: N = {}, want {want}", md.t_order()))?;
        let f = verlinde(&md).map_err(e)?;
        let n_us = n as usize;
        for a in 0..n_us {
            for b in 0..n_us {
                for c in 0..n_us {
                    ensure(f.get(a, b, c) == u64::from((a + b) % n_us == c), || {
                        format!("lattice {n}: N_{a}{b}^{c} is not cyclic convolution")
                    })?;
                }
            }
        }
        let r = theorem2_test(&md).map_err(e)?;
        ensure(r.branch == Branch::Composite && r.passed(), || format!("lattice {n}: {r}"))?;
        let u = u_matrix(&md).map_err(e)?;
        // m | a − c read in Z/n, i.e. gcd(m, n) | a − c.
        let g = (u.m as i64).gcd(&(n as i64));
        for a in 0..n as i64 {
            for c in 0..n as i64 {
                let nonzero = !u.u.get(a as usize, c as usize).is_zero();
                ensure(nonzero == ((a - c) % g == 0), || format!("lattice {n}: U_{a}{c} pattern"))?;
            }
        }
        let dt = t0.elapsed();
        ensure(dt < Duration::from_secs(10), || format!("lattice {n} took {dt:?}"))?;
        times.push(format!("n={n} {:.2}s", dt.as_secs_f64()));
    }
    Ok(times.join(", "))
}

fn odd_suite() -> Outcome {
    let t0 = Instant::now();
    let mut notes = Vec::new();
    for k in [2u32, 4] {
        let md = affine_data(Algebra::A2, k).map_err(e)?;
        let n = md.t_order();
        ensure(n % 2 == 1, || format!("A2 level {k}: N = {n} is even"))?;
        let r = theorem2_test(&md).map_err(e)?;
        ensure(r.branch == Branch::CoprimeP2 && r.passed(), || format!("A2 level {k}: {r}"))?;
        ensure(corollary6_check(&md).map_err(e)?.is_pass(), || format!("A2 level {k}: pseudo-real primary"))?;
        let sq = fusion_sqrt_check(&md).map_err(e)?;
        let want = format!("(0,{},{})", k / 2, k / 2);
        ensure(sq.verdict.is_pass() && md.labels()[sq.witness] == want, || {
            format!("A2 level {k}: witness {} ({})", md.labels()[sq.witness], sq.verdict)
        })?;
        let f = verlinde(&md).map_err(e)?;
        let a = sq.witness;
        ensure((0..md.size()).all(|b| f.get(a, a, b) <= 1), || format!("A2 level {k}: multiplicity > 1"))?;
        notes.push(format!("A2 level {k}: N={n}, witness {want}"));
    }
    let dt = t0.elapsed();
    ensure(dt < Duration::from_secs(30), || format!("took {dt:?}"))?;
    notes.push(format!("{:.2}s", dt.as_secs_f64()));
    Ok(notes.join(", "))
}

fn bantay_suite() -> Outcome {
    let data = vec![
        ("A2 level 2", affine_data(Algebra::A2, 2).map_err(e)?),
        ("D(Z2)", quantum_double_data(&builtin_group("z2").map_err(e)?).map_err(e)?),
        ("D(Z3)", quantum_double_data(&builtin_group("z3").map_err(e)?).map_err(e)?),
        ("D(S3)", quantum_double_data(&builtin_group("s3").map_err(e)?).map_err(e)?),
    ];
    let mut triples = 0usize;
    for (name, md) in &data {
        let r = indicator_report(md).map_err(e)?;
        ensure(r.all_integral(), || format!("{name}: non-integral Z(a,b)"))?;
        ensure(r.parity_ok && r.bound_ok, || format!("{name}: parity or bound violated"))?;
        if md.t_order() % 2 == 1 {
            ensure(r.closed_form_ok == Some(true), || format!("{name}: closed form disagrees"))?;
            let ind = Indicators::new(md).map_err(e)?;
            let n = md.size();
            for a in 0..n {
                for b in 0..n {
                    for d in 0..n {
                        let z = ind.z_general(a, b, d).map_err(e)?;
                        ensure(z.as_i64().is_some(), || format!("{name}: Z({a},{b},{d}) = {z}"))?;
                        triples += 1;
                    }
                }
            }
        }
    }
    Ok(format!("4 data, {triples} odd-N triples integral"))
}

fn double_suite() -> Outcome {
    let t0 = Instant::now();
    let g = builtin_group("s3").map_err(e)?;
    let md = quantum_double_data(&g).map_err(e)?;
    ensure(md.size() == 8, || format!("{} primaries", md.size()))?;
    ensure(md.t_order() == 6, || format!("N = {}", md.t_order()))?;
    ensure(validate(&md).map_err(e)?.passed(), || "validate fails".into())?;
    verlinde(&md).map_err(e)?;
    let r = theorem2_test(&md).map_err(e)?;
    ensure(r.branch == Branch::Composite && r.passed(), || format!("{r}"))?;
    for ell in [1, 5] {
        ensure(double_galois_check(&g, ell).map_err(e)?, || format!("Galois check fails for ℓ = {ell}"))?;
    }
    let dt = t0.elapsed();
    ensure(dt < Duration::from_secs(10), || format!("took {dt:?}"))?;
    Ok(format!("8 primaries, N=6, d={:?}, {:.2}s", r.d.unwrap_or(0), dt.as_secs_f64()))
}

fn catalog() -> Result<Vec<(String, ModularData)>, String> {
    let mut out = Vec::new();
    for n in [2u32, 4, 6, 8, 10] {
        out.push((format!("lattice {n}"), lattice_data(n).map_err(e)?));
    }
    for k in 1..=4 {
        out.push((format!("A1 level {k}"), affine_data(Algebra::A1, k).map_err(e)?));
        out.push((format!("A2 level {k}"), affine_data(Algebra::A2, k).map_err(e)?));
    }
    for g in ["z2", "z3", "s3", "d4", "q8"] {
        let grp = builtin_group(g).map_err(e)?;
        out.push((format!("D({g})"), quantum_double_data(&grp).map_err(e)?));
    }
    Ok(out)
}

fn galois_word_suite() -> Outcome {
    let mut checked = 0;
    let mut eq7 = 0;
    for (name, md) in catalog()? {
        if !theorem2_test(&md).map_err(e)?.passed() {
            continue;
        }
        checked += 1;
        let n = md.t_order();
        for l in units(n) {
            if n <= 30 {
                ensure(rho_h_check(&md, l).map_err(e)?, || format!("{name}: ρ(h_{l}) ≠ G_{l}"))?;
            }
            let lifted = lift_for(&md, l).map_err(e)?;
            if check_condition6(&md, lifted).map_err(e)? {
                let g = g_matrix(&extract_galois(&md, lifted).map_err(e)?);
                let exprs = eq7_expressions(&md, l).map_err(e)?;
                ensure(exprs.iter().all(|x| *x == g), || format!("{name}: expressions for G_{l} differ"))?;
                eq7 += 1;
            }
        }
        let v = gamma_n_sample(&md, 100, 1).map_err(e)?;
        ensure(v.passed(), || format!("{name}: {v}"))?;
    }
    Ok(format!("{checked} data, {eq7} (datum, ℓ) pairs with all four expressions equal"))
}

fn sl2_suite() -> Outcome {
    let mut slowest = Duration::ZERO;
    for n in 1..=12u64 {
        let (k, dt) = timed(|| sl2_group_order(n, SL2_DEFAULT_CAP));
        let k = k.map_err(e)?;
        ensure(k == sl2_order_formula(n), || format!("|SL2(Z/{n})| = {k}"))?;
        ensure(dt < Duration::from_secs(5), || format!("N = {n} took {dt:?}"))?;
        slowest = slowest.max(dt);
    }
    let cases: [(Variant, &[u64]); 3] = [
        (Variant::AP2, &[3, 5, 7, 9]),
        (Variant::AP3, &[2, 4, 5, 8]),
        (Variant::C, &[6, 12]),
    ];
    for (v, ns) in cases {
        for &n in ns {
            let r = lemma1_relations(&Sl2ModN(n), v).map_err(e)?;
            if let Some(bad) = r.iter().find(|x| !x.holds) {
                return Err(format!("{v:?} N = {n}: {} fails", bad.name));
            }
        }
    }
    Ok(format!("N ≤ 12, slowest {:.3}s; a-p2, a-p3, c relations hold", slowest.as_secs_f64()))
}

fn reciprocity_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut done = 0;
    let mut worst = 0f64;
    while done < 200 {
        let a: i64 = rng.gen_range(-20..=20);
        let c: i64 = rng.gen_range(-20..=20);
        let b: i64 = rng.gen_range(-40..=40);
        if a * c == 0 || (a * c + b).rem_euclid(2) != 0 {
            continue;
        }
        let r = gauss_reciprocity_check(a, b, c).map_err(e)?;
        ensure(r.holds(1e-9), || format!("({a}, {b}, {c}): error {}, exact |·|² {}", r.error, r.exact_modulus))?;
        worst = worst.max(r.error);
        done += 1;
    }
    for n in [2u32, 4, 8] {
        let md = lattice_data(n).map_err(e)?;
        let u = u_matrix(&md).map_err(e)?;
        let m = u.m as i64;
        let phase = exp_2pi_i(&Rational::new((-m).into(), 24.into())).map_err(e)?;
        let scale = Rational::new(1.into(), (n as i64).into());
        for a in 0..n as i64 {
            for c in 0..n as i64 {
                let s = gauss_sum(m, 2 * a - 2 * c, n as i64).map_err(e)?;
                let want = s.checked_mul(&phase).map_err(e)?.scale(&scale);
                ensure(*u.u.get(a as usize, c as usize) == want, || format!("lattice {n}: U_{a}{c}"))?;
            }
        }
    }
    Ok(format!("200 triples, max error {worst:.1e}; U identity exact on n = 2, 4, 8"))
}

fn commutant_suite() -> Outcome {
    let data = vec![
        ("lattice 2", lattice_data(2).map_err(e)?),
        ("lattice 4", lattice_data(4).map_err(e)?),
        ("D(Z2)", quantum_double_data(&builtin_group("z2").map_err(e)?).map_err(e)?),
    ];
    let mut dims = Vec::new();
    for (name, md) in &data {
        let plain = commutant_basis(md).map_err(e)?;
        let integral = integral_commutant_basis(md).map_err(e)?;
        ensure(same_span(&plain, &integral.matrices).map_err(e)?, || format!("{name}: spans differ"))?;
        for x in integral.matrices.iter().chain(&plain) {
            ensure(commutes_with_st(md, x).map_err(e)?, || format!("{name}: element fails to commute"))?;
        }
        for x in &integral.matrices {
            let ok = x.as_rational().is_some_and(|v| v.iter().all(|q| q.is_integer()));
            ensure(ok, || format!("{name}: non-integral basis element"))?;
        }
        dims.push(format!("{name} dim {}", plain.len()));
    }
    let q = |p: i64, d: i64| Rational::new(p.into(), d.into());
    for (x, want) in [(q(12, 5), 2), (q(5, 3), 0), (q(67, 2), -1)] {
        let t = two_ness(&x).map_err(e)?;
        ensure(t == want, || format!("t({x}) = {t}, want {want}"))?;
    }
    Ok(dims.join(", ") + "; t(2.4)=2, t(5/3)=0, t(33.5)=-1")
}

fn prop3_suite() -> Outcome {
    let mut failures = Vec::new();
    for (name, md) in catalog()? {
        for b in 0..md.size() {
            let r = prop3c_check(&md, b).map_err(e)?;
            if !r.passed {
                failures.push(format!("{name} {} (K={}, M={})", md.labels()[b], r.k, r.m));
            }
        }
    }
    for g in ["z2", "z3", "s3", "d4", "q8"] {
        let md = quantum_double_data(&builtin_group(g).map_err(e)?).map_err(e)?;
        let v = central_charge_integrality_check(&md).map_err(e)?;
        ensure(matches!(v, Verdict::Pass), || format!("D({g}) central charge: {v}"))?;
    }
    if failures.is_empty() {
        Ok("all labels pass; central charge integral on all doubles".into())
    } else {
        Err(format!(
            "M/K not coprime to K at {} labels: {}; central charge integral on all doubles",
            failures.len(),
            failures.join(", ")
        ))
    }
}

/// Labels where the conductor check fails with K minimal: the ratio M/K
/// divides 24 but shares the factor 2 with K.
const EXPECTED_PROP3_FAILURES: usize = 8;

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("lattice suite", lattice_suite),
        ("odd-N suite", odd_suite),
        ("Bantay suite", bantay_suite),
        ("quantum-double suite", double_suite),
        ("Galois/word suite", galois_word_suite),
        ("SL2(N) enumeration", sl2_suite),
        ("Gauss reciprocity", reciprocity_suite),
        ("commutant", commutant_suite),
        ("conductor checks", prop3_suite),
    ];
    let mut unexpected = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let (res, dt) = timed(f);
        let no = i + 1;
        match &res {
            Ok(msg) => println!("criterion {no} ({name}): PASS [{msg}] ({:.2}s)", dt.as_secs_f64()),
            Err(msg) => println!("criterion {no} ({name}): FAIL [{msg}] ({:.2}s)", dt.as_secs_f64()),
        }
        let expected_fail = no == 9
            && matches!(&res, Err(m) if m.starts_with(&format!("M/K not coprime to K at {EXPECTED_PROP3_FAILURES} labels")));
        if res.is_err() != expected_fail {
            unexpected.push(no);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected outcome for criteria {unexpected:?}");
        std::process::exit(1);
    }
}
