//! Builds the static library, compiles `tests/c/smoke.c` against the
//! generated header and runs it. Skipped when no C compiler is on PATH.

use std::path::PathBuf;
use std::process::Command;

#[test]
fn c_program_links_and_runs() {
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    if Command::new(&cc).arg("--version").output().is_err() {
        eprintln!("skipping: {cc} not found");
        return;
    }
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let target = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).parent().unwrap().to_path_buf();
    let status = Command::new(env!("CARGO"))
        .args(["build", "-p", "circlift-ffi", "--target-dir"])
        .arg(&target)
        .status()
        .unwrap();
    assert!(status.success());
    let lib = target.join("debug/libcirclift_ffi.a");
    assert!(lib.exists(), "{}", lib.display());

    let exe = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("circlift_smoke");
    let status = Command::new(&cc)
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(manifest.join("tests/c/smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(out.status.success(), "{stdout}{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout.ends_with("ok\n"), "{stdout}");
}
