//! Compiles and runs tests/fixtures/smoke.c against the generated header
//! and the built static library, exercising the ABI from real C.

use std::path::PathBuf;
use std::process::Command;

fn cc() -> Option<&'static str> {
    ["cc", "gcc", "clang"].into_iter().find(|&candidate| Command::new(candidate)
            .arg("--version")
            .output()
            .is_ok_and(|o| o.status.success())).map(|v| v as _)
}

#[test]
fn c_program_links_and_runs() {
    let Some(cc) = cc() else {
        eprintln!("no C compiler found; skipping the C smoke test");
        return;
    };

    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    // target/debug/deps/<test-bin> -> target/debug
    let lib_dir = std::env::current_exe()
        .unwrap()
        .parent()
        .unwrap()
        .parent()
        .unwrap()
        .to_path_buf();
    let staticlib = lib_dir.join("libcwenum_ffi.a");
    assert!(staticlib.exists(), "static library missing at {staticlib:?}");

    let out_dir = std::env::temp_dir().join("cwenum-c-smoke");
    std::fs::create_dir_all(&out_dir).unwrap();
    let binary = out_dir.join("smoke");

    let compile = Command::new(cc)
        .arg(manifest.join("tests/fixtures/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(staticlib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&binary)
        .output()
        .expect("compiler runs");
    assert!(
        compile.status.success(),
        "compilation failed:\n{}",
        String::from_utf8_lossy(&compile.stderr)
    );

    let run = Command::new(&binary).output().expect("smoke binary runs");
    assert!(
        run.status.success(),
        "smoke binary failed:\n{}",
        String::from_utf8_lossy(&run.stderr)
    );
    let stdout = String::from_utf8_lossy(&run.stdout);
    assert!(stdout.contains("c-abi smoke ok"), "{stdout}");
    let _ = std::fs::remove_file(&binary);
}
