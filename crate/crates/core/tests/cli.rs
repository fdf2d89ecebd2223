use std::path::{Path, PathBuf};
use std::process::Command;

fn corpus() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

fn files(dir: &str) -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = std::fs::read_dir(corpus().join(dir))
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "gk"))
        .collect();
    v.sort();
    v
}

fn cli(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_gradedhom")).args(args).output().unwrap();
    (String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap(), out.status.code().unwrap())
}

#[test]
fn pass_corpus_exits_zero() {
    for f in files("pass") {
        let (out, _, code) = cli(&[f.to_str().unwrap(), "--quiet"]);
        assert_eq!(code, 0, "{}:\n{}", f.display(), out);
        assert!(out.trim_end().ends_with("0 failed"));
    }
}

#[test]
fn fail_corpus_exits_one() {
    for f in files("fail") {
        let (out, _, code) = cli(&[f.to_str().unwrap(), "--quiet"]);
        assert_eq!(code, 1, "{}", f.display());
        assert!(out.lines().any(|l| l.starts_with("FAIL")));
    }
}

#[test]
fn json_matches_golden_files() {
    for f in files("pass").into_iter().chain(files("fail")) {
        let stem = f.file_stem().unwrap().to_str().unwrap().to_string();
        let golden = std::fs::read_to_string(corpus().join("golden").join(format!("{}.json", stem))).unwrap();
        let (out, _, _) = cli(&[f.to_str().unwrap(), "--format", "json"]);
        assert_eq!(out, golden, "{} drifted from its golden report", stem);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["schema"], 1);
    }
}

#[test]
fn same_seed_gives_identical_json() {
    let f = corpus().join("pass/explicit.gk");
    let (a, _, ca) = cli(&[f.to_str().unwrap(), "--format", "json", "--oracle-seed", "1"]);
    let (b, _, cb) = cli(&[f.to_str().unwrap(), "--format", "json", "--oracle-seed", "1"]);
    assert_eq!(a, b);
    assert_eq!((ca, cb), (0, 0));
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["seed"], 1);
}

#[test]
fn usage_and_parse_errors_exit_two() {
    let (_, _, code) = cli(&["/nonexistent/problem.gk"]);
    assert_eq!(code, 2);
    let dir = std::env::temp_dir().join(format!("gradedhom-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.gk");
    std::fs::write(&bad, "manifold M\nx even 0\nend\nfunction f on M = x + yy\n").unwrap();
    let (_, err, code) = cli(&[bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("yy"), "{}", err);
    let (_, _, code) = cli(&["--format", "yaml", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    std::fs::remove_dir_all(&dir).unwrap();
}
