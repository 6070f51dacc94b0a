//! Builds tests/c/client.c against the generated header and the static
//! library, then runs it.

use std::path::PathBuf;
use std::process::Command;

#[test]
fn c_client_links_and_runs() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let tmp = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let profile = tmp.parent().unwrap().join(if cfg!(debug_assertions) {
        "debug"
    } else {
        "release"
    });
    let lib = profile.join("liblightcone_ffi.a");
    assert!(lib.exists(), "{} missing", lib.display());
    let exe = tmp.join("lightcone_c_client");
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    let st = Command::new(&cc)
        .arg(manifest.join("tests/c/client.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lm", "-lpthread", "-ldl", "-o"])
        .arg(&exe)
        .status()
        .expect("C compiler");
    assert!(st.success(), "compiling the C client failed");
    let out = Command::new(&exe).output().unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(String::from_utf8_lossy(&out.stdout).contains("line 1"));
}
