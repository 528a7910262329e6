//! Compiles and runs a small C client against the generated header and the
//! static library, proving the ABI end to end.

use std::path::PathBuf;
use std::process::Command;

#[test]
fn c_client_links_and_runs() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header_dir = manifest.join("include");
    if !header_dir.join("mlfun.h").exists() {
        panic!("mlfun.h was not generated; check the cbindgen build step");
    }
    // target/debug (or release) hosting libmlfun_ffi.a
    let mut lib_dir = PathBuf::from(std::env::current_exe().unwrap());
    lib_dir.pop(); // test binary
    lib_dir.pop(); // deps/
    let staticlib = lib_dir.join("libmlfun_ffi.a");
    if !staticlib.exists() {
        // cargo does not always materialize the staticlib before running
        // tests; build it explicitly
        let st = Command::new(env!("CARGO"))
            .args(["build", "-p", "mlfun-ffi"])
            .current_dir(&manifest)
            .status()
            .unwrap();
        assert!(st.success(), "cargo build -p mlfun-ffi failed");
    }
    if !staticlib.exists() {
        panic!("staticlib not found at {}", staticlib.display());
    }

    let dir = std::env::temp_dir().join(format!("mlfun-c-smoke-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let src = dir.join("demo.c");
    std::fs::write(
        &src,
        r#"
#include "mlfun.h"
#include <stdio.h>
#include <math.h>

int main(void) {
    struct MlfunDerivResult r;
    if (mlfun_eval_deriv(1.0, 1.0, 1.0, 0.0, 0, 1e-13, &r) != MlfunStatus_Ok) return 1;
    if (fabs(r.value_re - 2.718281828459045) > 1e-12) return 2;

    double re[4] = {0.0, 1.0, 0.0, 0.0};
    struct MlfunMatrix *h = mlfun_matrix_create(2, re, NULL);
    if (!h) return 3;
    double out_re[4], out_im[4];
    size_t order = 0;
    if (mlfun_matrix_ml(h, 1.0, 1.0, 1e-13, 0.1, out_re, out_im, &order) != MlfunStatus_Ok) return 4;
    if (fabs(out_re[1] - 1.0) > 1e-12) return 5;
    mlfun_matrix_free(h);

    printf("%s\n", mlfun_version());
    return 0;
}
"#,
    )
    .unwrap();
    let exe = dir.join("demo");
    let cc = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(&header_dir)
        .arg(&staticlib)
        .args(["-lm", "-lpthread", "-ldl", "-o"])
        .arg(&exe)
        .output()
        .unwrap();
    assert!(cc.status.success(), "cc failed: {}", String::from_utf8_lossy(&cc.stderr));
    let run = Command::new(&exe).output().unwrap();
    assert!(run.status.success(), "demo exited {:?}", run.status.code());
    assert!(!run.stdout.is_empty());
}
