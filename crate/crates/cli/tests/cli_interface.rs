//! End-to-end CLI behavior: exit codes, canonical-form echo, JSON reports,
//! and seed determinism through the binary.

use std::path::Path;
use std::process::Command;

fn nccell() -> Command {
    Command::new(env!("CARGO_BIN_EXE_nccell"))
}

fn repo_root() -> &'static Path {
    Path::new(env!("CARGO_MANIFEST_DIR")).parent().unwrap().parent().unwrap()
}

#[test]
fn parse_echoes_canonical_form_and_exits_zero() {
    let out = nccell()
        .arg("parse")
        .arg(repo_root().join("presentations/g2st.ncp"))
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("presentation G2st nonunital {"), "{text}");
    assert!(text.contains("rel proj(P);"));
}

#[test]
fn parse_rejects_bad_files() {
    let dir = std::env::temp_dir().join("nccell-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.ncp");
    std::fs::write(&bad, "presentation Bad nonunital { gen a; rel zero(b); }").unwrap();
    let out = nccell().arg("parse").arg(&bad).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let missing = dir.join("does-not-exist.ncp");
    let out = nccell().arg("parse").arg(&missing).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    let out = nccell().arg("verify").arg("no-such-suite").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = nccell().arg("frobnicate").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn prove_runs_the_shipped_identity_file() {
    let out = nccell()
        .arg("prove")
        .arg(repo_root().join("identities/ideal_identities.txt"))
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.matches("[pass]").count(), 9, "{text}");
}

#[test]
fn prove_fails_on_false_identities() {
    let dir = std::env::temp_dir().join("nccell-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("false.ids");
    std::fs::write(&file, "p * l == l * p  modulo free-pl\n").unwrap();
    let out = nccell().arg("prove").arg(&file).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn boundary_index_reports_the_class() {
    let out = nccell().args(["boundary", "index", "--symbol", "z"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("convention class: -1"), "{text}");
    let out = nccell().args(["boundary", "index", "--symbol", "z^-2"]).output().unwrap();
    assert!(String::from_utf8(out.stdout).unwrap().contains("convention class: 2"));
}

#[test]
fn boundary_exp_and_cone_run() {
    let out = nccell()
        .args(["boundary", "exp", "--dim", "4", "--seed", "3", "--grid", "256"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let out = nccell()
        .args(["boundary", "cone", "--size", "5", "--rank", "2"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("convention class: 2"), "{text}");
}

#[test]
fn json_reports_have_the_documented_shape_and_are_seed_deterministic() {
    let dir = std::env::temp_dir().join("nccell-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path_a = dir.join("a.json");
    let path_b = dir.join("b.json");
    for path in [&path_a, &path_b] {
        let out = nccell()
            .args([
                "verify",
                "exp-cell",
                "--trials",
                "4",
                "--seed",
                "11",
                "--json",
                path.to_str().unwrap(),
            ])
            .output()
            .unwrap();
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
    let a: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path_a).unwrap()).unwrap();
    let b: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path_b).unwrap()).unwrap();

    // Schema shape.
    assert_eq!(a["suite"], "exp-cell");
    assert!(a["convention"].is_object());
    let case = &a["cases"][0];
    for key in ["name", "status", "residual", "tol", "seed"] {
        assert!(case.get(key).is_some(), "case missing {key}");
    }
    assert!(a["summary"]["pass"].is_u64());
    assert!(a["summary"]["fail"].is_u64());

    // Determinism modulo elapsed-ms.
    assert_eq!(strip(a), strip(b));
}

fn strip(mut v: serde_json::Value) -> serde_json::Value {
    fn walk(v: &mut serde_json::Value) {
        match v {
            serde_json::Value::Object(map) => {
                map.remove("elapsed_ms");
                for (_, inner) in map.iter_mut() {
                    walk(inner);
                }
            }
            serde_json::Value::Array(items) => {
                for inner in items.iter_mut() {
                    walk(inner);
                }
            }
            _ => {}
        }
    }
    walk(&mut v);
    v
}
