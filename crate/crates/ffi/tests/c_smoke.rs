//! Compiles and runs a small C program against the generated header and the
//! static library. Skipped when no C compiler or static library is present.

use std::path::{Path, PathBuf};
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include "degseq.h"

int main(void) {
    size_t deg[4] = {1, 1, 1, 1};
    DsGraph *g = NULL;
    if (ds_graph_realize(deg, 4, &g) != DS_STATUS_OK) return 1;
    if (ds_graph_sample(g, 100, 7) != DS_STATUS_OK) return 2;
    size_t buf[4], written = 0;
    if (ds_graph_edges(g, buf, 4, &written) != DS_STATUS_OK || written != 2) return 3;
    ds_graph_free(g);
    size_t bad[2] = {2, 1};
    if (ds_graph_realize(bad, 2, &g) != DS_STATUS_NOT_REALIZABLE) return 4;
    if (ds_last_error() == NULL) return 5;
    size_t out[3] = {1, 1, 1}, in[3] = {1, 1, 1};
    DsArcSwapReport *r = NULL;
    if (ds_recognize(out, in, 3, &r) != DS_STATUS_OK) return 6;
    if (ds_report_is_arc_swap(r) || ds_report_cycle_set_count(r) != 1) return 7;
    ds_report_free(r);
    puts("ok");
    return 0;
}
"#;

fn static_lib() -> Option<PathBuf> {
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR"));
    let target = std::env::var_os("CARGO_TARGET_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| manifest.join("../../target"));
    ["debug", "release"].iter().map(|p| target.join(p).join("libdegseq_ffi.a")).find(|p| p.exists())
}

#[test]
fn c_program_links_and_runs() {
    let Some(lib) = static_lib() else {
        eprintln!("skipping: static library not built");
        return;
    };
    if Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: no C compiler");
        return;
    }
    let dir = std::env::temp_dir().join(format!("degseq_c_smoke_{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let src = dir.join("smoke.c");
    let exe = dir.join("smoke");
    std::fs::write(&src, PROGRAM).unwrap();
    let include = Path::new(env!("CARGO_MANIFEST_DIR")).join("include");
    let status = Command::new("cc")
        .arg("-std=c99")
        .arg("-I")
        .arg(&include)
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C compilation failed");
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "smoke program exited with {:?}", out.status.code());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "ok");
    let _ = std::fs::remove_dir_all(&dir);
}
