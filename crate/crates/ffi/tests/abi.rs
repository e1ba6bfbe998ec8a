use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use silting_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn take(s: *mut std::ffi::c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { silt_string_free(s) };
    out
}

struct Pack {
    alg: *mut SiltAlgebra,
}

impl Pack {
    fn new(name: &str, field: Option<&str>) -> Pack {
        let mut alg = ptr::null_mut();
        let f = field.map(c);
        let s = unsafe { silt_algebra_from_fixture(c(name).as_ptr(), f.as_ref().map_or(ptr::null(), |f| f.as_ptr()), &mut alg) };
        assert_eq!(s, SiltStatus::Ok);
        Pack { alg }
    }

    fn module(&self, pack: &str, name: &str) -> *mut SiltModule {
        let mut m = ptr::null_mut();
        let s = unsafe { silt_module_from_fixture(self.alg, c(pack).as_ptr(), c(name).as_ptr(), &mut m) };
        assert_eq!(s, SiltStatus::Ok, "{name}");
        m
    }
}

impl Drop for Pack {
    fn drop(&mut self) {
        unsafe { silt_algebra_free(self.alg) };
    }
}

fn check(m: *const SiltModule, prop: SiltProperty, n: u32, mm: u32) -> (SiltOutcome, String) {
    let mut o = SiltOutcome::Inconclusive;
    let mut json = ptr::null_mut();
    let s = unsafe { silt_check(m, prop, n, mm, &mut o, &mut json) };
    assert_eq!(s, SiltStatus::Ok);
    (o, take(json))
}

#[test]
fn eximp_through_the_abi() {
    for field in [None, Some("Q")] {
        let p = Pack::new("eximp", field);
        assert_eq!(unsafe { silt_algebra_dim(p.alg) }, 6);
        let m = p.module("eximp", "M");
        assert_eq!(check(m, SiltProperty::TauTilting, 2, 0).0, SiltOutcome::Holds);
        assert_eq!(check(m, SiltProperty::TauTilting, 1, 0).0, SiltOutcome::Fails);
        assert_eq!(check(m, SiltProperty::TauTilting, 2, 2).0, SiltOutcome::Holds);
        assert_eq!(check(m, SiltProperty::NTilting, 2, 0).0, SiltOutcome::Fails);
        let (o, json) = check(m, SiltProperty::TauRigid, 1, 0);
        assert_eq!(o, SiltOutcome::Fails);
        assert!(json.contains("hom(P(2), S(2))"), "{json}");
        unsafe { silt_module_free(m) };
    }
}

#[test]
fn tau_and_ext() {
    let p = Pack::new("eximp", None);
    let s1 = p.module("eximp", "S(1)");
    let s2 = p.module("eximp", "S(2)");
    let mut t = ptr::null_mut();
    assert_eq!(unsafe { silt_tau_n(s1, 1, &mut t) }, SiltStatus::Ok);
    assert_eq!(unsafe { silt_module_dim(t) }, 1);
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { silt_module_to_json(t, &mut json) }, SiltStatus::Ok);
    let text = take(json);
    let mut back = ptr::null_mut();
    assert_eq!(
        unsafe { silt_module_from_json(p.alg, c(&text).as_ptr(), &mut back) },
        SiltStatus::Ok
    );
    assert_eq!(unsafe { silt_module_dim(back) }, 1);
    let mut d = usize::MAX;
    assert_eq!(unsafe { silt_ext_dim(s1, s2, 1, &mut d) }, SiltStatus::Ok);
    let mut d0 = usize::MAX;
    assert_eq!(unsafe { silt_ext_dim(s2, s1, 1, &mut d0) }, SiltStatus::Ok);
    assert_eq!(d + d0, 1);
    assert_eq!(unsafe { silt_tau_n(s1, 0, &mut t) }, SiltStatus::Precondition);
    unsafe {
        silt_module_free(back);
        silt_module_free(t);
        silt_module_free(s1);
        silt_module_free(s2);
    }
}

#[test]
fn input_errors() {
    let mut alg = ptr::null_mut();
    assert_eq!(
        unsafe { silt_algebra_from_fixture(c("nope").as_ptr(), ptr::null(), &mut alg) },
        SiltStatus::InvalidInput
    );
    let msg = unsafe { CStr::from_ptr(silt_last_error()) }.to_str().unwrap().to_owned();
    assert!(!msg.is_empty());
    let bad = [0xffu8, 0];
    assert_eq!(
        unsafe { silt_algebra_from_fixture(bad.as_ptr().cast(), ptr::null(), &mut alg) },
        SiltStatus::InvalidUtf8
    );
    let p = Pack::new("ejp1", None);
    let mut m = ptr::null_mut();
    let s = unsafe { silt_module_from_fixture(p.alg, c("eximp").as_ptr(), c("M").as_ptr(), &mut m) };
    assert_eq!(s, SiltStatus::InvalidInput);
    assert!(m.is_null());
    let mut o = SiltOutcome::Holds;
    assert_eq!(
        unsafe { silt_verify(c("bogus").as_ptr(), ptr::null(), &mut o, ptr::null_mut()) },
        SiltStatus::InvalidInput
    );
}

#[test]
fn verify_suite() {
    let mut o = SiltOutcome::Fails;
    let mut json = ptr::null_mut();
    assert_eq!(
        unsafe { silt_verify(c("teo").as_ptr(), ptr::null(), &mut o, &mut json) },
        SiltStatus::Ok
    );
    assert_eq!(o, SiltOutcome::Holds);
    let v: serde_json::Value = serde_json::from_str(&take(json)).unwrap();
    assert_eq!(v["suite"], "teo");
}

#[test]
fn header_compiles_as_c() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header = dir.join("include/silting.h");
    assert!(header.exists());
    let src = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("header_check.c");
    std::fs::write(
        &src,
        "#include \"silting.h\"\nint main(void) { SiltAlgebra *a = 0; silt_algebra_free(a); return SILT_STATUS_OK; }\n",
    )
    .unwrap();
    let Ok(out) = Command::new("cc")
        .args(["-fsyntax-only", "-Wall", "-Werror", "-I"])
        .arg(dir.join("include"))
        .arg(&src)
        .output()
    else {
        eprintln!("no C compiler; skipping");
        return;
    };
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}
