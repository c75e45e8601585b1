//! Compiles and runs a small C program against the generated header and the
//! static library.

use std::path::{Path, PathBuf};
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "sumperfect.h"

int main(void) {
    size_t edges[] = {0, 1, 1, 2, 2, 3, 3, 4, 4, 0};
    SpGraph *g = NULL;
    if (sp_graph_from_edges(5, edges, 5, &g) != SP_STATUS_OK) return 10;
    bool ok = true;
    size_t index = 0;
    if (sp_is_sum_perfect(g, &ok, &index) != SP_STATUS_OK) return 11;
    if (ok || index != 1) return 12;
    char *text = NULL;
    if (sp_graph_to_graph6(g, &text) != SP_STATUS_OK) return 13;
    if (strcmp(text, "Dhc") != 0) return 14;
    sp_string_free(text);
    sp_graph_free(g);
    if (sp_graph_from_graph6("??", &g) != SP_STATUS_PARSE) return 15;
    printf("%s\n", sp_status_message(SP_STATUS_OK));
    return 0;
}
"#;

fn target_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    // target/<profile>/deps/<test binary>
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

fn find_cc() -> Option<&'static str> {
    ["cc", "gcc", "clang"]
        .into_iter()
        .find(|c| Command::new(c).arg("--version").output().is_ok())
}

#[test]
fn header_compiles_and_links() {
    let Some(cc) = find_cc() else {
        eprintln!("no C compiler found; skipping");
        return;
    };
    let include = Path::new(env!("CARGO_MANIFEST_DIR")).join("include");
    assert!(include.join("sumperfect.h").exists());
    let lib = target_dir().join("libsumperfect_ffi.a");
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("check.c");
    std::fs::write(&src, PROGRAM).unwrap();

    if !lib.exists() {
        // Without the archive, at least type-check the header.
        let status = Command::new(cc)
            .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
            .arg(&include)
            .arg(&src)
            .status()
            .unwrap();
        assert!(status.success());
        return;
    }
    let exe = dir.path().join("check");
    let status = Command::new(cc)
        .args(["-std=c99", "-Wall", "-Werror", "-I"])
        .arg(&include)
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C build failed");
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "C program exited with {:?}", out.status.code());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "ok");
}
