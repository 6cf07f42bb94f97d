use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use nodal_ffi::*;

fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { nodal_string_free(s) };
    out
}

fn last_error() -> String {
    let p = nodal_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

fn load(json: &str) -> *mut NodalTuple {
    let c = CString::new(json).unwrap();
    let mut t = ptr::null_mut();
    assert_eq!(unsafe { nodal_tuple_from_json(c.as_ptr(), &mut t) }, NodalStatus::Ok);
    t
}

const PLUS: &str = r#"{"version":1,"chains":[{"tag":"cx","len":1},{"tag":"cx","len":1}],"sim":[[[0,0],[1,0]]],"gamma":[{"pair":[[0,0],[1,0]],"sign":1}]}"#;
const MINUS: &str = r#"{"version":1,"chains":[{"tag":"cx","len":1},{"tag":"cx","len":1}],"sim":[[[0,0],[1,0]]],"gamma":[{"pair":[[0,0],[1,0]],"sign":-1}]}"#;

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(nodal_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn keys_and_equivalence() {
    let (a, b) = (load(PLUS), load(MINUS));
    let (mut ka, mut kb) = (ptr::null_mut(), ptr::null_mut());
    unsafe {
        assert_eq!(nodal_tuple_canonical_key(a, &mut ka), NodalStatus::Ok);
        assert_eq!(nodal_tuple_canonical_key(b, &mut kb), NodalStatus::Ok);
    }
    assert_eq!(take(ka), take(kb));
    let mut eq = false;
    let mut w = ptr::null_mut();
    assert_eq!(unsafe { nodal_tuple_equivalent(a, b, &mut eq, &mut w) }, NodalStatus::Ok);
    assert!(eq);
    let w: serde_json::Value = serde_json::from_str(&take(w)).unwrap();
    assert_eq!(w["chain_map"].as_array().unwrap().len(), 2);
    unsafe {
        nodal_tuple_free(a);
        nodal_tuple_free(b);
    }
}

#[test]
fn verify_and_basify() {
    let t = load(r#"{"version":1,"chains":[{"tag":"re","len":2}],"sim":[[[0,1],[0,1]]],"wt":{"0:0":2}}"#);
    let mut pass = false;
    let mut report = ptr::null_mut();
    assert_eq!(unsafe { nodal_tuple_verify(t, 3, &mut pass, &mut report) }, NodalStatus::Ok);
    assert!(pass);
    assert!(take(report).contains("radical-match"));
    assert_eq!(unsafe { nodal_tuple_verify(t, 1, &mut pass, ptr::null_mut()) }, NodalStatus::Invalid);
    let mut b = ptr::null_mut();
    assert_eq!(unsafe { nodal_tuple_basify(t, &mut b) }, NodalStatus::Ok);
    let mut j = ptr::null_mut();
    assert_eq!(unsafe { nodal_tuple_to_json(b, &mut j) }, NodalStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(j)).unwrap();
    assert!(v["wt"].as_object().unwrap().values().all(|w| w == 1));
    unsafe {
        nodal_tuple_free(t);
        nodal_tuple_free(b);
    }
}

#[test]
fn error_codes() {
    let mut t = ptr::null_mut();
    assert_eq!(unsafe { nodal_tuple_from_json(ptr::null(), &mut t) }, NodalStatus::NullPointer);
    assert!(t.is_null());
    let bad = CString::new("{\"version\":1,").unwrap();
    assert_eq!(unsafe { nodal_tuple_from_json(bad.as_ptr(), &mut t) }, NodalStatus::Parse);
    assert!(last_error().contains("line 1"));
    let ex = CString::new(r#"{"version":1,"chains":[{"tag":"re","len":1}],"alpha":{"0:0":"ex"}}"#).unwrap();
    assert_eq!(unsafe { nodal_tuple_from_json(ex.as_ptr(), &mut t) }, NodalStatus::Invalid);
    assert!(last_error().contains("(d)(i)"));
    let utf = [0xffu8, 0];
    assert_eq!(unsafe { nodal_tuple_from_json(utf.as_ptr().cast(), &mut t) }, NodalStatus::InvalidUtf8);
    let mut k = ptr::null_mut();
    assert_eq!(unsafe { nodal_tuple_canonical_key(ptr::null(), &mut k) }, NodalStatus::NullPointer);
    unsafe {
        nodal_tuple_free(ptr::null_mut());
        nodal_string_free(ptr::null_mut());
    }
}

#[test]
fn enumeration_lines() {
    let mut out = ptr::null_mut();
    let st = unsafe { nodal_enumerate(2, 1, NODAL_FILTER_BASIC | NODAL_FILTER_COMMUTATIVE | NODAL_FILTER_NON_HEREDITARY, &mut out) };
    assert_eq!(st, NodalStatus::Ok);
    assert_eq!(take(out).lines().count(), 3);
    assert_eq!(unsafe { nodal_enumerate(1, 0, 0, &mut out) }, NodalStatus::Invalid);
}

const C_PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "nodal.h"

int main(void) {
    const char *a = "{\"version\":1,\"chains\":[{\"tag\":\"tc\",\"len\":2}],\"sim\":[[[0,0],[0,1]]],\"gamma\":[{\"pair\":[[0,0],[0,1]],\"sign\":1}]}";
    const char *b = "{\"version\":1,\"chains\":[{\"tag\":\"tc\",\"len\":2}],\"sim\":[[[0,0],[0,1]]],\"gamma\":[{\"pair\":[[0,0],[0,1]],\"sign\":-1}]}";
    NodalTuple *ta = NULL, *tb = NULL;
    if (nodal_tuple_from_json(a, &ta) != NODAL_STATUS_OK) return 2;
    if (nodal_tuple_from_json(b, &tb) != NODAL_STATUS_OK) return 3;
    bool eq = false;
    if (nodal_tuple_equivalent(ta, tb, &eq, NULL) != NODAL_STATUS_OK || !eq) return 4;
    char *key = NULL;
    if (nodal_tuple_canonical_key(ta, &key) != NODAL_STATUS_OK) return 5;
    printf("%s\n", key);
    nodal_string_free(key);
    NodalTuple *bad = NULL;
    if (nodal_tuple_from_json("{}", &bad) != NODAL_STATUS_PARSE) return 6;
    if (nodal_last_error() == NULL) return 7;
    nodal_tuple_free(ta);
    nodal_tuple_free(tb);
    return 0;
}
"#;

#[test]
fn c_program_links_against_static_library() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    // test binaries live in <target>/<profile>/deps
    let profile_dir = std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf();
    let lib = profile_dir.join("libnodal_ffi.a");
    assert!(lib.exists(), "missing {}", lib.display());
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("main.c");
    std::fs::write(&src, C_PROGRAM).unwrap();
    let exe = dir.path().join("main");
    let status = Command::new("cc")
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("C compiler");
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("v1|tc["));
}
