//! Compiles a C program against the generated header and links the static library.

use std::path::{Path, PathBuf};
use std::process::Command;

/// The static library sits next to the test binary in `<target>/<profile>/deps`,
/// and is copied up one level by a plain `cargo build`.
fn static_lib() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    let deps = exe.parent().unwrap();
    let candidates = [deps.join("libtreespace_ffi.a"), deps.parent().unwrap().join("libtreespace_ffi.a")];
    candidates.iter().find(|p| p.exists()).cloned().unwrap_or_else(|| panic!("static library not found in {}", deps.display()))
}

fn compiler() -> Option<String> {
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    Command::new(&cc).arg("--version").output().ok().filter(|o| o.status.success()).map(|_| cc)
}

#[test]
fn header_is_valid_c_and_cpp() {
    let Some(cc) = compiler() else {
        eprintln!("no C compiler; skipping");
        return;
    };
    let include = Path::new(env!("CARGO_MANIFEST_DIR")).join("include");
    for (lang, std) in [("c", "-std=c11"), ("c++", "-std=c++17")] {
        let out = Command::new(&cc)
            .args(["-x", lang, std, "-fsyntax-only", "-Wall", "-Werror", "-I"])
            .arg(&include)
            .arg(include.join("treespace.h"))
            .output()
            .unwrap();
        assert!(out.status.success(), "{lang}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn c_program_links_and_runs() {
    let Some(cc) = compiler() else {
        eprintln!("no C compiler; skipping");
        return;
    };
    let lib = static_lib();
    let dir = tempfile::tempdir().unwrap();
    let exe = dir.path().join("smoke");
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR"));
    let out = Command::new(&cc)
        .arg("-std=c11")
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(manifest.join("tests/c/smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let run = Command::new(&exe).output().unwrap();
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    assert!(String::from_utf8_lossy(&run.stdout).starts_with("ok "));
}
