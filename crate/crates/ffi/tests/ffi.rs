use std::ffi::CStr;
use std::ptr;

use cbrauer_ffi::*;

fn last_error() -> String {
    let p = cbr_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn algebra(u: &[(i64, i64)], r: usize) -> (CbrStatus, *mut CbrAlgebra) {
    let num: Vec<i64> = u.iter().map(|x| x.0).collect();
    let den: Vec<i64> = u.iter().map(|x| x.1).collect();
    let mut h = ptr::null_mut();
    let status = unsafe { cbr_algebra_new(u.len(), r, num.as_ptr(), den.as_ptr(), 5000, &mut h) };
    (status, h)
}

fn micro_datum(c: (i64, i64)) -> *mut CbrDatum {
    let p = [4usize];
    let mut h = ptr::null_mut();
    let status = unsafe { cbr_datum_new(CbrRootType::D, 4, p.as_ptr(), 1, 1, &c.0, &c.1, &mut h) };
    assert_eq!(status, CbrStatus::Ok);
    h
}

#[test]
fn algebra_handle_round_trip() {
    let (status, h) = algebra(&[(1, 3), (7, 5)], 2);
    assert_eq!(status, CbrStatus::Ok);
    let mut dim = 0;
    assert_eq!(unsafe { cbr_algebra_dimension(h, &mut dim) }, CbrStatus::Ok);
    // a^r (2r-1)!! = 4 * 3
    assert_eq!(dim, 12);
    let (mut n, mut d) = (0, 0);
    assert_eq!(unsafe { cbr_algebra_omega(h, 0, &mut n, &mut d) }, CbrStatus::Ok);
    assert!(d > 0);
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { cbr_algebra_decomposition_json(h, &mut json) }, CbrStatus::Ok);
    let text = unsafe { CStr::from_ptr(json) }.to_str().unwrap().to_owned();
    unsafe { cbr_string_free(json) };
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["identity"], true);
    assert_eq!(v["rows"].as_array().unwrap().len(), 6);
    unsafe { cbr_algebra_free(h) };
}

#[test]
fn omega_of_zero_parameters_is_zero() {
    let (_, h) = algebra(&[(0, 1), (0, 1)], 2);
    for k in 0..3 {
        let (mut n, mut d) = (9, 9);
        assert_eq!(unsafe { cbr_algebra_omega(h, k, &mut n, &mut d) }, CbrStatus::Ok);
        assert_eq!((n, d), (0, 1));
    }
    unsafe { cbr_algebra_free(h) };
}

#[test]
fn errors_map_to_status_codes() {
    let (status, h) = algebra(&[(1, 0)], 2);
    assert_eq!(status, CbrStatus::InvalidInput);
    assert!(h.is_null());
    assert!(last_error().contains("denominator"));

    let mut dim = 0;
    assert_eq!(unsafe { cbr_algebra_dimension(ptr::null(), &mut dim) }, CbrStatus::NullPointer);

    let (status, h) = algebra(&[(1, 1), (2, 1), (3, 1)], 5);
    assert_eq!(status, CbrStatus::BudgetExceeded);
    assert!(h.is_null());
    assert!(last_error().contains("budget"));
}

#[test]
fn datum_gives_lie_parameters() {
    let h = micro_datum((-7, 3));
    let mut level = 0;
    assert_eq!(unsafe { cbr_datum_level(h, &mut level) }, CbrStatus::Ok);
    assert_eq!(level, 2);
    let (mut n, mut d) = (0, 0);
    assert_eq!(unsafe { cbr_datum_omega0(h, &mut n, &mut d) }, CbrStatus::Ok);
    assert_eq!((n, d), (8, 1));
    for j in 0..level {
        assert_eq!(unsafe { cbr_datum_u(h, j, &mut n, &mut d) }, CbrStatus::Ok);
    }
    assert_eq!(unsafe { cbr_datum_u(h, level, &mut n, &mut d) }, CbrStatus::InvalidInput);

    let mut alg = ptr::null_mut();
    assert_eq!(unsafe { cbr_datum_algebra(h, 2, 5000, &mut alg) }, CbrStatus::Ok);
    assert_eq!(unsafe { cbr_algebra_omega(alg, 0, &mut n, &mut d) }, CbrStatus::Ok);
    assert_eq!((n, d), (8, 1));
    unsafe { cbr_algebra_free(alg) };
    unsafe { cbr_datum_free(h) };
}

#[test]
fn datum_checks_run_through_the_abi() {
    let h = micro_datum((-7, 3));
    let mut flag = -1;
    assert_eq!(unsafe { cbr_datum_saturation(h, 2, 5000, &mut flag) }, CbrStatus::Ok);
    assert_eq!(flag, 1);
    let mut flag = -1;
    assert_eq!(unsafe { cbr_datum_verify_singular(h, 2, &mut flag) }, CbrStatus::Ok);
    assert_eq!(flag, 1);
    assert_eq!(unsafe { cbr_datum_verify_singular(h, 3, &mut flag) }, CbrStatus::Unsupported);
    unsafe { cbr_datum_free(h) };
}

#[test]
fn header_declares_the_public_surface() {
    let header = include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/include/cbrauer.h"));
    assert!(header.contains("#ifndef CBRAUER_H"));
    assert!(header.contains("typedef struct CbrAlgebra CbrAlgebra;"));
    assert!(header.contains("CBR_STATUS_BUDGET_EXCEEDED = 3"));
    for f in [
        "cbr_algebra_new", "cbr_algebra_free", "cbr_algebra_dimension", "cbr_algebra_omega",
        "cbr_algebra_decomposition_json", "cbr_datum_new", "cbr_datum_free", "cbr_datum_saturation",
        "cbr_datum_verify_singular", "cbr_string_free", "cbr_last_error",
    ] {
        assert!(header.contains(&format!("{f}(")), "missing {f}");
    }
}

#[test]
fn header_compiles_as_c() {
    let Ok(cc) = which_cc() else { return };
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/include");
    let status = std::process::Command::new(cc)
        .args(["-fsyntax-only", "-Wall", "-Werror", "-x", "c", &format!("{dir}/cbrauer.h")])
        .status()
        .unwrap();
    assert!(status.success());
}

fn which_cc() -> Result<&'static str, ()> {
    ["cc", "gcc", "clang"]
        .into_iter()
        .find(|c| std::process::Command::new(c).arg("--version").output().is_ok())
        .ok_or(())
}
