use std::ffi::{CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use gamma_desk_ffi::*;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut std::ffi::c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_string();
    gd_string_free(s);
    out
}

#[test]
fn permutation_round_trip() {
    unsafe {
        let mut p = ptr::null_mut();
        assert_eq!(gd_perm_parse(cstr("2 4 1 3").as_ptr(), &mut p), GdStatus::Ok);
        let mut n = 0usize;
        assert_eq!(gd_perm_len(p, &mut n), GdStatus::Ok);
        assert_eq!(n, 4);
        let mut s = GdStats::default();
        assert_eq!(gd_perm_stats(p, &mut s), GdStatus::Ok);
        assert_eq!((s.des, s.maj), (1, 2));
        let mut text = ptr::null_mut();
        assert_eq!(gd_perm_to_string(p, &mut text), GdStatus::Ok);
        assert_eq!(take(text), "2413");

        let letters = [1u32, 2];
        let mut pat = ptr::null_mut();
        assert_eq!(gd_perm_new(letters.as_ptr(), 2, &mut pat), GdStatus::Ok);
        let mut hit = false;
        assert_eq!(gd_perm_contains(p, pat, &mut hit), GdStatus::Ok);
        assert!(hit);
        gd_perm_free(pat);
        gd_perm_free(p);
    }
}

#[test]
fn errors_carry_status_and_message() {
    unsafe {
        let mut p = ptr::null_mut();
        assert_eq!(
            gd_perm_parse(cstr("1 1").as_ptr(), &mut p),
            GdStatus::InvalidPermutation
        );
        assert!(p.is_null());
        let msg = take(gd_last_error_message());
        assert!(msg.contains("not a permutation"), "{msg}");

        assert_eq!(gd_perm_parse(ptr::null(), &mut p), GdStatus::NullPointer);
        assert_eq!(gd_perm_stats(ptr::null(), ptr::null_mut()), GdStatus::NullPointer);

        let mut t = ptr::null_mut();
        assert_eq!(gd_table_compute(b'z' as _, 5, &mut t), GdStatus::InvalidArgument);

        let mut g = ptr::null_mut();
        assert_eq!(
            gd_class_gamma(cstr("all").as_ptr(), 12, &mut g),
            GdStatus::LimitExceeded
        );
        assert_eq!(
            gd_class_gamma(cstr("nonsense").as_ptr(), 3, &mut g),
            GdStatus::InvalidArgument
        );

        assert_eq!(gd_perm_parse(cstr("12").as_ptr(), &mut p), GdStatus::Ok);
        assert!(gd_last_error_message().is_null());
        gd_perm_free(p);
        gd_perm_free(ptr::null_mut());
    }
}

#[test]
fn tables_and_gamma() {
    unsafe {
        let mut t = ptr::null_mut();
        assert_eq!(gd_table_compute(b'b' as _, 4, &mut t), GdStatus::Ok);
        let mut v = ptr::null_mut();
        assert_eq!(gd_table_entry(t, 4, 4, &mut v), GdStatus::Ok);
        assert_eq!(take(v), "-7");
        assert_eq!(gd_table_entry(t, 4, 99, &mut v), GdStatus::Ok);
        assert_eq!(take(v), "0");
        assert_eq!(gd_table_entry(t, 5, 1, &mut v), GdStatus::OutOfRange);

        let mut g = ptr::null_mut();
        assert_eq!(gd_table_gamma(t, 2, &mut g), GdStatus::Ok);
        let mut ok = true;
        assert_eq!(gd_gamma_is_nonnegative(g, &mut ok), GdStatus::Ok);
        assert!(!ok);
        let mut c2 = 0;
        assert_eq!(gd_gamma_center2(g, &mut c2), GdStatus::Ok);
        assert_eq!(c2, 4);
        gd_gamma_free(g);
        gd_table_free(t);

        assert_eq!(
            gd_class_gamma(cstr("avoiding:2413,3142").as_ptr(), 5, &mut g),
            GdStatus::Ok
        );
        let mut s = ptr::null_mut();
        assert_eq!(gd_gamma_to_string(g, &mut s), GdStatus::Ok);
        assert_eq!(take(s), "1,16,10");
        gd_gamma_free(g);

        let mut poly = ptr::null_mut();
        assert_eq!(
            gd_descent_polynomial(cstr("involutions").as_ptr(), 4, &mut poly),
            GdStatus::Ok
        );
        assert_eq!(take(poly), "1+4*t+4*t^2+t^3");
    }
}

fn target_dir() -> PathBuf {
    // tests/<name>-hash lives in target/<profile>/deps
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn c_program_links_against_static_library() {
    let dir = target_dir();
    let lib = dir.join("libgamma_desk_ffi.a");
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR"));
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    if !lib.exists() || Command::new(&cc).arg("--version").output().is_err() {
        eprintln!("skipping: no C compiler or static library at {}", lib.display());
        return;
    }
    let out = tempfile::tempdir().unwrap();
    let exe = out.path().join("smoke");
    let status = Command::new(&cc)
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(manifest.join("tests/c/smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm"])
        .arg("-o")
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C compile failed");
    let run = Command::new(&exe).output().unwrap();
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    assert!(String::from_utf8_lossy(&run.stdout).starts_with("ok "));
}
