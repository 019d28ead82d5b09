use std::ffi::{CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use rcft_ffi::*;

fn last_error() -> String {
    let p = rcft_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn lattice(n: u32) -> *mut RcftModularData {
    let mut md = ptr::null_mut();
    assert_eq!(unsafe { rcft_gen_lattice(n, &mut md) }, RcftStatus::Ok);
    assert!(!md.is_null());
    md
}

#[test]
fn lattice_round_trip() {
    let md = lattice(4);
    unsafe {
        let mut size = 0usize;
        assert_eq!(rcft_size(md, &mut size), RcftStatus::Ok);
        assert_eq!(size, 4);
        let mut n = 0u64;
        assert_eq!(rcft_t_order(md, &mut n), RcftStatus::Ok);
        assert_eq!(n, 24);
        assert_eq!(rcft_validate(md), RcftStatus::Ok);
        assert_eq!(rcft_theorem2(md), RcftStatus::Ok);

        let mut text = ptr::null_mut();
        assert_eq!(rcft_serialize(md, &mut text), RcftStatus::Ok);
        let mut back = ptr::null_mut();
        assert_eq!(rcft_parse(text, &mut back), RcftStatus::Ok);
        let mut size2 = 0usize;
        assert_eq!(rcft_size(back, &mut size2), RcftStatus::Ok);
        assert_eq!(size2, 4);
        rcft_string_free(text);
        rcft_free(back);
        rcft_free(md);
    }
}

#[test]
fn fusion_of_lattice_is_group_law() {
    let md = lattice(6);
    unsafe {
        for a in 0..6 {
            for b in 0..6 {
                for c in 0..6 {
                    let mut v = 99u64;
                    assert_eq!(rcft_fusion(md, a, b, c, &mut v), RcftStatus::Ok);
                    assert_eq!(v, u64::from((a + b) % 6 == c));
                }
            }
        }
        let mut v = 0u64;
        assert_eq!(rcft_fusion(md, 6, 0, 0, &mut v), RcftStatus::OutOfRange);
        assert!(last_error().contains("out of range"));
        rcft_free(md);
    }
}

#[test]
fn affine_and_double() {
    unsafe {
        let alg = CString::new("a2").unwrap();
        let mut md = ptr::null_mut();
        assert_eq!(rcft_gen_affine(alg.as_ptr(), 2, &mut md), RcftStatus::Ok);
        assert_eq!(rcft_validate(md), RcftStatus::Ok);
        let mut perm = [0usize; 6];
        let mut signs = [0i8; 6];
        assert_eq!(rcft_galois(md, 1, perm.as_mut_ptr(), signs.as_mut_ptr(), 6), RcftStatus::Ok);
        assert_eq!(perm, [0, 1, 2, 3, 4, 5]);
        assert_eq!(signs, [1; 6]);
        assert_eq!(rcft_galois(md, 1, perm.as_mut_ptr(), signs.as_mut_ptr(), 3), RcftStatus::OutOfRange);
        rcft_free(md);

        let g = CString::new("s3").unwrap();
        let mut d = ptr::null_mut();
        assert_eq!(rcft_gen_double(g.as_ptr(), &mut d), RcftStatus::Ok);
        let mut size = 0usize;
        rcft_size(d, &mut size);
        assert_eq!(size, 8);
        rcft_free(d);
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let mut md = ptr::null_mut();
        assert_eq!(rcft_gen_lattice(3, &mut md), RcftStatus::Precondition);
        assert!(md.is_null());
        assert!(!last_error().is_empty());

        let good = lattice(2);
        let mut text = ptr::null_mut();
        assert_eq!(rcft_serialize(good, &mut text), RcftStatus::Ok);
        let full = CStr::from_ptr(text).to_str().unwrap().to_owned();
        rcft_string_free(text);
        rcft_free(good);
        let bad = CString::new(full.replace("end\n", "")).unwrap();
        assert_eq!(rcft_parse(bad.as_ptr(), &mut md), RcftStatus::Parse);
        assert!(last_error().contains("end"), "{}", last_error());

        assert_eq!(rcft_parse(ptr::null(), &mut md), RcftStatus::NullPointer);
        assert_eq!(rcft_validate(ptr::null()), RcftStatus::NullPointer);
        assert_eq!(rcft_size(ptr::null(), ptr::null_mut()), RcftStatus::NullPointer);

        let g = CString::new("nope").unwrap();
        assert_eq!(rcft_gen_double(g.as_ptr(), &mut md), RcftStatus::Precondition);

        rcft_free(ptr::null_mut());
        rcft_string_free(ptr::null_mut());
    }
}

#[test]
fn number_theory() {
    unsafe {
        let mut k = 0u64;
        assert_eq!(rcft_sl2_group_order(4, 1_000_000, &mut k), RcftStatus::Ok);
        assert_eq!(k, 48);
        assert_eq!(rcft_sl2_group_order(12, 10, &mut k), RcftStatus::Precondition);
        let mut t = 0i64;
        assert_eq!(rcft_two_ness(3, 8, &mut t), RcftStatus::Ok);
        assert_eq!(t, -3);
        assert_eq!(rcft_two_ness(12, 5, &mut t), RcftStatus::Ok);
        assert_eq!(t, 2);
        assert_eq!(rcft_two_ness(0, 1, &mut t), RcftStatus::Arithmetic);
        assert_eq!(rcft_two_ness(1, 0, &mut t), RcftStatus::Arithmetic);
    }
}

#[test]
fn header_compiles_as_c() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let header = dir.join("include/rcft.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for f in ["rcft_parse", "rcft_free", "rcft_validate", "rcft_theorem2", "rcft_last_error"] {
        assert!(text.contains(f), "{f} missing from header");
    }
    let Ok(cc) = which_cc() else { return };
    let src = std::env::temp_dir().join("rcft_header_check.c");
    std::fs::write(
        &src,
        "#include \"rcft.h\"\nint main(void) { RcftModularData *m = 0; \
         return rcft_gen_lattice(2, &m) == RCFT_STATUS_OK ? 0 : 1; }\n",
    )
    .unwrap();
    let status = Command::new(cc)
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(dir.join("include"))
        .arg(&src)
        .status()
        .unwrap();
    assert!(status.success());
}

fn which_cc() -> Result<&'static str, ()> {
    ["cc", "gcc", "clang"]
        .into_iter()
        .find(|c| Command::new(c).arg("--version").output().is_ok())
        .ok_or(())
}
