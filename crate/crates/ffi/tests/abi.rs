use std::ffi::CStr;
use std::ptr;

use allee_ffi::*;

fn last_error() -> String {
    let p = allee_last_error_message();
    assert!(!p.is_null(), "expected an error message");
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn model(a: f64, k: f64, u: f64, m: f64) -> *mut AlleeModel {
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { allee_model_new(a, k, u, m, &mut h) }, AlleeStatus::Ok);
    assert!(!h.is_null());
    h
}

#[test]
fn version_is_the_crate_version() {
    let v = unsafe { CStr::from_ptr(allee_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn invalid_model_reports_status_and_message() {
    let mut h = ptr::null_mut();
    let s = unsafe { allee_model_new(-1.0, 1.0, 1.0, 1.0, &mut h) };
    assert_ne!(s, AlleeStatus::Ok);
    assert!(h.is_null());
    assert!(!last_error().is_empty());
}

#[test]
fn null_out_pointer_is_rejected() {
    let s = unsafe { allee_model_new(1.0, 1.0, 1.0, 1.0, ptr::null_mut()) };
    assert_eq!(s, AlleeStatus::NullPointer);
    let mut dx = 0.0;
    let s = unsafe { allee_rhs(ptr::null(), 0.5, 1.0, &mut dx, ptr::null_mut()) };
    assert_eq!(s, AlleeStatus::NullPointer);
}

#[test]
fn success_clears_the_last_error() {
    let mut h = ptr::null_mut();
    unsafe { allee_model_new(-1.0, 1.0, 1.0, 1.0, &mut h) };
    assert!(!allee_last_error_message().is_null());
    let m = model(1.0, 1.0, 1.0, 1.0);
    assert!(allee_last_error_message().is_null());
    unsafe { allee_model_free(m) };
}

#[test]
fn rhs_vanishes_at_a_reported_fixed_point() {
    let m = model(1.0, 1.0, 1.0, 1.0);
    let mut fps = ptr::null_mut();
    assert_eq!(unsafe { allee_fixed_points(m, &mut fps) }, AlleeStatus::Ok);
    let n = unsafe { allee_fixed_points_len(fps) };
    assert!(n >= 1);
    for i in 0..n {
        let mut fp = std::mem::MaybeUninit::<AlleeFixedPoint>::uninit();
        assert_eq!(unsafe { allee_fixed_points_get(fps, i, fp.as_mut_ptr()) }, AlleeStatus::Ok);
        let fp = unsafe { fp.assume_init() };
        let (mut dx, mut dy) = (1.0, 1.0);
        assert_eq!(unsafe { allee_rhs(m, fp.x, fp.y, &mut dx, &mut dy) }, AlleeStatus::Ok);
        assert!(dx.abs() < 1e-8 && dy.abs() < 1e-8, "{fp:?}: {dx} {dy}");
    }
    let mut fp = std::mem::MaybeUninit::<AlleeFixedPoint>::uninit();
    assert_eq!(unsafe { allee_fixed_points_get(fps, n, fp.as_mut_ptr()) }, AlleeStatus::OutOfRange);
    unsafe {
        allee_fixed_points_free(fps);
        allee_model_free(m);
    }
}

#[test]
fn jacobian_matches_finite_differences() {
    let m = model(0.8, 2.0, 1.3, 3.0);
    let mut j = [0.0; 4];
    assert_eq!(unsafe { allee_jacobian(m, 0.4, 1.7, j.as_mut_ptr()) }, AlleeStatus::Ok);
    let h = 1e-6;
    let f = |x: f64, y: f64| {
        let (mut dx, mut dy) = (0.0, 0.0);
        unsafe { allee_rhs(m, x, y, &mut dx, &mut dy) };
        (dx, dy)
    };
    let (fxp, gxp) = f(0.4 + h, 1.7);
    let (fxm, gxm) = f(0.4 - h, 1.7);
    let (fyp, gyp) = f(0.4, 1.7 + h);
    let (fym, gym) = f(0.4, 1.7 - h);
    let fd = [(fxp - fxm) / (2.0 * h), (fyp - fym) / (2.0 * h), (gxp - gxm) / (2.0 * h), (gyp - gym) / (2.0 * h)];
    for (a, b) in j.iter().zip(fd) {
        assert!((a - b).abs() < 1e-6, "{j:?} vs {fd:?}");
    }
    unsafe { allee_model_free(m) };
}

#[test]
fn trajectory_round_trip() {
    let m = model(1.0, 1.0, 1.0, 1.0);
    let mut t = ptr::null_mut();
    assert_eq!(unsafe { allee_integrate(m, 0.5, 2.0, 1.0, 0.01, &mut t) }, AlleeStatus::Ok);
    let n = unsafe { allee_trajectory_len(t) };
    assert_eq!(n, 101);
    let (mut tt, mut x, mut y) = (0.0, 0.0, 0.0);
    assert_eq!(unsafe { allee_trajectory_get(t, 0, &mut tt, &mut x, &mut y) }, AlleeStatus::Ok);
    assert_eq!((tt, x, y), (0.0, 0.5, 2.0));
    assert_eq!(unsafe { allee_trajectory_get(t, n, &mut tt, &mut x, &mut y) }, AlleeStatus::OutOfRange);
    unsafe {
        allee_trajectory_free(t);
        allee_model_free(m);
    }
}

#[test]
fn bad_integration_step_fails() {
    let m = model(1.0, 1.0, 1.0, 1.0);
    let mut t = ptr::null_mut();
    assert_ne!(unsafe { allee_integrate(m, 0.5, 2.0, 1.0, 0.0, &mut t) }, AlleeStatus::Ok);
    assert!(t.is_null());
    unsafe { allee_model_free(m) };
}

#[test]
fn scan_counts_match_the_core_scan() {
    let m = model(0.5, 1.0, 2.0, 1.0);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { allee_scan_region(m, 0.01, 0.99, 0.1, 5.0, 40, 40, &mut s) }, AlleeStatus::Ok);
    let core = allee_core::bifurcation::scan_region(
        &allee_core::ModelParams::new(0.5, 1.0, 2.0, 1.0),
        &allee_core::GainSpec::default(),
        (0.01, 0.99),
        (0.1, 5.0),
        (40, 40),
    )
    .unwrap();
    assert_eq!(unsafe { allee_scan_hopf_count(s) }, core.hopf_cells.len());
    assert_eq!(unsafe { allee_scan_tb_count(s) }, core.tb_cells.len());
    unsafe {
        allee_scan_free(s);
        allee_model_free(m);
    }
}

#[test]
fn freeing_null_is_a_no_op() {
    unsafe {
        allee_model_free(ptr::null_mut());
        allee_trajectory_free(ptr::null_mut());
        allee_fixed_points_free(ptr::null_mut());
        allee_scan_free(ptr::null_mut());
        allee_network_free(ptr::null_mut());
    }
}

fn small_network(kind: AlleeRuleKind) -> *mut AlleeNetwork {
    let cfg = AlleeNetworkConfig {
        layers: 2,
        n_u: 20,
        n_v: 20,
        patterns: 3,
        pattern_seed: 7,
        init_seed: 8,
        epochs: 5,
        auto_associative: false,
    };
    let rule = allee_rule_params_default(kind);
    let mut net = ptr::null_mut();
    assert_eq!(unsafe { allee_network_train(&cfg, &rule, &mut net) }, AlleeStatus::Ok);
    net
}

#[test]
fn trained_network_recalls_clean_cues() {
    let net = small_network(AlleeRuleKind::Hebbian);
    let (mut rows, mut cols) = (0, 0);
    assert_eq!(unsafe { allee_network_dims(net, &mut rows, &mut cols) }, AlleeStatus::Ok);
    assert_eq!((rows, cols), (40, 40));
    assert!(!unsafe { allee_network_weights(net) }.is_null());
    assert_eq!(unsafe { allee_network_pattern_count(net) }, 3);
    let (mut u, mut v, mut out) = (vec![0i8; rows], vec![0i8; cols], vec![0i8; cols]);
    assert_eq!(unsafe { allee_network_pattern(net, 0, u.as_mut_ptr(), v.as_mut_ptr()) }, AlleeStatus::Ok);
    let (mut acc, mut conv) = (0.0, false);
    let s = unsafe {
        allee_network_retrieve(net, u.as_ptr(), rows, v.as_ptr(), cols, 100, out.as_mut_ptr(), &mut acc, &mut conv)
    };
    assert_eq!(s, AlleeStatus::Ok);
    assert!((0.0..=1.0).contains(&acc));
    assert!(out.iter().all(|&b| b == 1 || b == -1));
    assert_eq!(unsafe { allee_network_pattern(net, 3, u.as_mut_ptr(), v.as_mut_ptr()) }, AlleeStatus::OutOfRange);
    unsafe { allee_network_free(net) };
}

#[test]
fn retrieve_rejects_wrong_lengths_and_values() {
    let net = small_network(AlleeRuleKind::Allee);
    let u = [1i8; 39];
    let v = [1i8; 40];
    let mut out = vec![0i8; 40];
    let (mut acc, mut conv) = (0.0, false);
    let s = unsafe {
        allee_network_retrieve(net, u.as_ptr(), 39, v.as_ptr(), 40, 10, out.as_mut_ptr(), &mut acc, &mut conv)
    };
    assert_eq!(s, AlleeStatus::ShapeMismatch);
    let u = [0i8; 40];
    let s = unsafe {
        allee_network_retrieve(net, u.as_ptr(), 40, v.as_ptr(), 40, 10, out.as_mut_ptr(), &mut acc, &mut conv)
    };
    assert_eq!(s, AlleeStatus::InvalidParameter);
    unsafe { allee_network_free(net) };
}

#[test]
fn training_is_deterministic_across_calls() {
    let a = small_network(AlleeRuleKind::StdpPair);
    let b = small_network(AlleeRuleKind::StdpPair);
    let wa = unsafe { std::slice::from_raw_parts(allee_network_weights(a), 1600) };
    let wb = unsafe { std::slice::from_raw_parts(allee_network_weights(b), 1600) };
    assert_eq!(wa, wb);
    unsafe {
        allee_network_free(a);
        allee_network_free(b);
    }
}

#[test]
fn every_rule_kind_trains() {
    for kind in [
        AlleeRuleKind::Hebbian,
        AlleeRuleKind::Oja,
        AlleeRuleKind::Allee,
        AlleeRuleKind::StdpPair,
        AlleeRuleKind::StdpWeight,
        AlleeRuleKind::StdpAddmul,
        AlleeRuleKind::StdpPower,
        AlleeRuleKind::StdpContinuous,
        AlleeRuleKind::AlleeTemporal,
    ] {
        let net = small_network(kind);
        assert!(!net.is_null(), "{kind:?}");
        unsafe { allee_network_free(net) };
    }
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/allee.h")).unwrap();
    for name in [
        "allee_model_new",
        "allee_model_free",
        "allee_rhs",
        "allee_jacobian",
        "allee_integrate",
        "allee_fixed_points_get",
        "allee_scan_region",
        "allee_scan_hopf_centroid",
        "allee_rule_params_default",
        "allee_network_train",
        "allee_network_retrieve",
        "allee_last_error_message",
        "allee_version",
        "ALLEE_STATUS_NULL_POINTER",
    ] {
        assert!(header.contains(name), "missing {name}");
    }
}

#[test]
fn header_compiles_as_c() {
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("probe.c");
    std::fs::write(
        &src,
        "#include \"allee.h\"\nint main(void) { AlleeModel *m = 0; return allee_model_new(1, 1, 1, 1, &m) == ALLEE_STATUS_OK ? 0 : 1; }\n",
    )
    .unwrap();
    let status = match std::process::Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I", concat!(env!("CARGO_MANIFEST_DIR"), "/include")])
        .arg(&src)
        .status()
    {
        Ok(s) => s,
        Err(_) => {
            eprintln!("no C compiler on PATH, skipping");
            return;
        }
    };
    assert!(status.success());
}
