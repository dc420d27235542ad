mod common;

use std::path::PathBuf;
use std::process::Command;

use freeprod::cli::run;

fn golden_path(stem: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{stem}.txt"))
}

fn invoke(args: &[&str]) -> (i32, String) {
    run(std::iter::once("freeprod").chain(args.iter().copied()))
}

/// Set `UPDATE_GOLDEN=1` to rewrite the files.
#[test]
fn golden_outputs() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    for (stem, args, code) in common::cli_cases() {
        let (got_code, out) = invoke(&args);
        assert_eq!(got_code, code, "{stem}: {out}");
        let path = golden_path(stem);
        if update {
            std::fs::write(&path, &out).unwrap();
        }
        let want = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(out, want, "{stem}");
    }
}

#[test]
fn documented_examples() {
    assert_eq!(invoke(&["nc-enum", "--n", "4", "--count"]), (0, "14\n".to_string()));
    let (code, out) = invoke(&["normalize", "--expr", "R * R"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().next(), Some("M2(LF(5))"));
    let (code, out) = invoke(&["free-check", "--model", "UX", "--max-len", "4"]);
    assert_eq!(code, 0);
    assert!(out.contains("PASS"));
}

#[test]
fn exit_codes() {
    assert_eq!(invoke(&["nc-enum", "--n", "40"]).0, 2);
    assert_eq!(invoke(&["nc-kreweras", "--partition", "1,3|2,4"]).0, 2);
    assert_eq!(invoke(&["trace", "--word", "q"]).0, 2);
    assert_eq!(invoke(&["free-check", "--model", "XY"]).0, 2);
    assert_eq!(invoke(&["normalize"]).0, 2);
    assert_eq!(invoke(&["--help"]).0, 0);
}

#[test]
fn model_file() {
    let dir = std::env::temp_dir().join(format!("freeprod-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("model.json");
    std::fs::write(
        &path,
        r#"{"legs":[{"name":"P","kind":"finite","m":2,"elements":{"p":["1","0"]}}]}"#,
    )
    .unwrap();
    let (code, out) = invoke(&["trace", "--word", "d{p} u d{p} u*", "--model-file", path.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("trace: 1/4"), "{out}");
    assert_eq!(invoke(&["trace", "--word", "c", "--model-file", "/nonexistent.json"]).0, 2);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn binary_matches_library() {
    let (code, out) = invoke(&["normalize", "--expr", "C^2 * C^2", "--steps"]);
    let bin = Command::new(env!("CARGO_BIN_EXE_freeprod"))
        .args(["normalize", "--expr", "C^2 * C^2", "--steps"])
        .output()
        .unwrap();
    assert_eq!(bin.status.code(), Some(code));
    assert_eq!(String::from_utf8(bin.stdout).unwrap(), out);
    let bad = Command::new(env!("CARGO_BIN_EXE_freeprod")).args(["normalize", "--expr", "M3(C)"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8(bad.stderr).unwrap().starts_with("error:"));
}
