use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::path::Path;
use std::process::Command;
use std::ptr;

use holoform_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { hf_string_free(s) };
    out
}

fn form(src: &str, n: usize) -> *mut HfForm {
    let mut f = ptr::null_mut();
    assert_eq!(unsafe { hf_form_parse(c(src).as_ptr(), n, 0, &mut f) }, HfStatus::Ok);
    f
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(hf_last_error()) }.to_str().unwrap().to_string()
}

#[test]
fn wedge_star_and_display() {
    let a = form("e01", 7);
    let b = form("2/3 e2", 7);
    let mut w = ptr::null_mut();
    let mut s = ptr::null_mut();
    let mut text = ptr::null_mut();
    unsafe {
        assert_eq!(hf_form_wedge(a, b, &mut w), HfStatus::Ok);
        assert_eq!(hf_form_to_string(w, 0, &mut text), HfStatus::Ok);
        assert_eq!(take(text), "2/3 e012");
        assert_eq!(hf_form_star(w, &mut s), HfStatus::Ok);
        assert_eq!(hf_form_to_string(s, 1, &mut text), HfStatus::Ok);
        assert_eq!(take(text), "2/3 e4567");
        [a, b, w, s].into_iter().for_each(|f| hf_form_free(f));
    }
}

#[test]
fn phi_norm_is_seven() {
    let mut phi = ptr::null_mut();
    let mut out = ptr::null_mut();
    unsafe {
        assert_eq!(hf_structure_form(HfStructure::G2, c("phi").as_ptr(), &mut phi), HfStatus::Ok);
        assert_eq!(hf_form_dim(phi), 7);
        assert_eq!(hf_form_inner(phi, phi, &mut out), HfStatus::Ok);
        assert_eq!(take(out), "7");
        hf_form_free(phi);
        assert_eq!(hf_structure_form(HfStructure::G2, c("Omega").as_ptr(), &mut phi), HfStatus::Unknown);
    }
}

#[test]
fn add_and_equal() {
    let a = form("e01 + e23", 4);
    let b = form("e23 - e01", 4);
    let two = form("2 e23", 4);
    let mut sum = ptr::null_mut();
    unsafe {
        assert_eq!(hf_form_add(a, b, &mut sum), HfStatus::Ok);
        assert!(hf_form_equal(sum, two));
        assert!(!hf_form_equal(a, ptr::null()));
        [a, b, two, sum].into_iter().for_each(|f| hf_form_free(f));
    }
}

#[test]
fn errors_map_to_status_codes() {
    let mut f = ptr::null_mut();
    unsafe {
        assert_eq!(hf_form_parse(c("e12 +").as_ptr(), 7, 1, &mut f), HfStatus::Parse);
        assert!(last_error().contains("byte 5"), "{}", last_error());
        assert_eq!(hf_form_parse(c("e1").as_ptr(), 9, 0, &mut f), HfStatus::DimensionMismatch);
        assert!(f.is_null());
        let bad = [0xffu8, 0];
        assert_eq!(hf_form_parse(bad.as_ptr().cast(), 7, 0, &mut f), HfStatus::InvalidUtf8);
    }
    let a = form("e0", 7);
    let b = form("e0", 8);
    let mut w = ptr::null_mut();
    unsafe {
        assert_eq!(hf_form_wedge(a, b, &mut w), HfStatus::DimensionMismatch);
        assert!(w.is_null());
        hf_form_free(a);
        hf_form_free(b);
    }
}

#[test]
fn decompose_returns_json() {
    let a = form("e01", 7);
    let mut out = ptr::null_mut();
    unsafe {
        assert_eq!(hf_decompose_json(a, HfStructure::G2, 0, &mut out), HfStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
        assert_eq!(v["structure"], "g2");
        assert_eq!(v["recombines"], true);
        assert_eq!(hf_decompose_json(a, HfStructure::Spin7, 0, &mut out), HfStatus::DimensionMismatch);
        hf_form_free(a);
    }
}

#[test]
fn suite_report_round_trip() {
    let mut r = ptr::null_mut();
    let (mut pass, mut fail) = (0usize, 0usize);
    let mut json = ptr::null_mut();
    unsafe {
        assert_eq!(hf_run_suite(c("eigen-decompositions").as_ptr(), 7, 0, &mut r), HfStatus::Ok);
        assert_eq!(hf_report_counts(r, &mut pass, &mut fail, ptr::null_mut()), HfStatus::Ok);
        assert!(pass > 0);
        assert_eq!(fail, 0);
        assert_eq!(hf_report_to_json(r, &mut json), HfStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(json)).unwrap();
        assert_eq!(v["suite"], "eigen-decompositions");
        hf_report_free(r);
        assert_eq!(hf_run_suite(c("no-such-suite").as_ptr(), 7, 0, &mut r), HfStatus::Unknown);
    }
}

#[test]
fn preset_solve_and_classify() {
    let mut p = ptr::null_mut();
    let mut out = ptr::null_mut();
    unsafe {
        assert_eq!(hf_preset_load(c("nk6").as_ptr(), &mut p), HfStatus::Ok);
        assert_eq!(hf_preset_solve(p, c("phi_c").as_ptr(), -3, 8, &mut out), HfStatus::Ok);
        assert_eq!(take(out), "1/3 r^3 omega");
        assert_eq!(hf_preset_classify(p, c("r^3 omega").as_ptr(), &mut out), HfStatus::Ok);
        assert_eq!(take(out), "linear");
        assert_eq!(hf_preset_solve(p, c("omega").as_ptr(), -3, 8, &mut out), HfStatus::NotClosed);
        hf_preset_free(p);
        assert_eq!(hf_preset_load(c("nowhere").as_ptr(), &mut p), HfStatus::Unknown);
    }
}

#[test]
fn header_declares_every_entry_point() {
    let header = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("include/holoform.h")).unwrap();
    for name in [
        "hf_last_error",
        "hf_string_free",
        "hf_form_parse",
        "hf_form_wedge",
        "hf_form_star",
        "hf_decompose_json",
        "hf_run_suite",
        "hf_preset_solve",
        "HF_STATUS_NO_SOLUTION",
        "typedef struct HfForm HfForm;",
    ] {
        assert!(header.contains(name), "header lacks {name}");
    }
}

#[test]
fn header_compiles_as_c() {
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    if Command::new(&cc).arg("--version").output().is_err() {
        eprintln!("no C compiler; skipped");
        return;
    }
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("include");
    let src = Path::new(env!("CARGO_TARGET_TMPDIR")).join("header_check.c");
    std::fs::write(
        &src,
        "#include \"holoform.h\"\nint main(void) { HfForm *f = 0; return hf_form_parse(\"e01\", 7, 0, &f) == HF_STATUS_OK ? 0 : 1; }\n",
    )
    .unwrap();
    let status = Command::new(&cc)
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(&dir)
        .arg(&src)
        .status()
        .unwrap();
    assert!(status.success());
}
