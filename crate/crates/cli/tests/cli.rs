use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn laman(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_laman"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

const K3: &str = r#"{"n":3,"rotation":{"1":[2,3],"2":[1,3],"3":[1,2]},"outer":[1,2,3]}"#;
const K4: &str =
    r#"{"n":4,"rotation":{"1":[3,4,2],"2":[3,1,4],"3":[1,2,4],"4":[2,1,3]},"outer":[1,2,3]}"#;

#[test]
fn stage_dumps_match_goldens() {
    let graph = golden("k3_plus_v4.json");
    for stage in [
        "henneberg",
        "angular-tree",
        "angle-labeling",
        "edge-labeling",
        "types",
        "dr",
        "db",
        "coords",
    ] {
        let out = laman(&["stage", graph.to_str().unwrap(), "--stage", stage]);
        assert!(
            out.status.success(),
            "{stage}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        let got: Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(
            got,
            json(&golden(&format!("k3_plus_v4.{stage}.json"))),
            "{stage}"
        );
    }
}

#[test]
fn dumped_sequence_feeds_back() {
    let dir = TempDir::new().unwrap();
    let g = dir.path().join("g.json");
    let seq = dir.path().join("seq.json");
    assert!(laman(&[
        "generate",
        "30",
        "--seed",
        "4",
        "--out",
        g.to_str().unwrap()
    ])
    .status
    .success());
    let gs = g.to_str().unwrap();
    assert!(laman(&[
        "stage",
        gs,
        "--stage",
        "henneberg",
        "--out",
        seq.to_str().unwrap()
    ])
    .status
    .success());
    let direct = laman(&["stage", gs, "--stage", "coords"]);
    let fed = laman(&[
        "stage",
        gs,
        "--stage",
        "coords",
        "--henneberg",
        seq.to_str().unwrap(),
    ]);
    assert!(fed.status.success());
    assert_eq!(direct.stdout, fed.stdout);
}

#[test]
fn foreign_sequence_is_rejected() {
    let dir = TempDir::new().unwrap();
    let seq = dir.path().join("seq.json");
    let g = golden("k3_plus_v4.json");
    assert!(laman(&[
        "stage",
        g.to_str().unwrap(),
        "--stage",
        "henneberg",
        "--out",
        seq.to_str().unwrap()
    ])
    .status
    .success());
    let k3 = write(&dir, "k3.json", K3);
    let out = laman(&["draw", &k3, "--henneberg", seq.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn generate_is_deterministic() {
    let a = laman(&["generate", "10", "--seed", "1"]);
    let b = laman(&["generate", "10", "--seed", "1"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let c = laman(&["generate", "10", "--seed", "2"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn generate_base_case_is_triangle() {
    for seed in ["0", "17"] {
        let out = laman(&["generate", "3", "--seed", seed]);
        let got: Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(got, serde_json::from_str::<Value>(K3).unwrap());
    }
}

#[test]
fn generated_graphs_pass_check() {
    let dir = TempDir::new().unwrap();
    for seed in 0..5 {
        let p = dir.path().join(format!("g{seed}.json"));
        let s = seed.to_string();
        assert!(
            laman(&["generate", "25", "--seed", &s, "--out", p.to_str().unwrap()])
                .status
                .success()
        );
        let out = laman(&["check", p.to_str().unwrap()]);
        assert!(out.status.success());
    }
}

#[test]
fn draw_triangle() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "k3.json", K3);
    let out = laman(&["draw", &g]);
    assert!(out.status.success());
    let bundle: Value = serde_json::from_slice(&out.stdout).unwrap();
    for s in bundle["representation"]["shapes"].as_array().unwrap() {
        for c in s["bend"].as_array().unwrap() {
            assert!((1..=3).contains(&c.as_i64().unwrap()));
        }
    }
    assert_eq!(
        bundle["representation"]["contacts"]
            .as_array()
            .unwrap()
            .len(),
        3
    );
}

#[test]
fn draw_fifty_stays_on_grid() {
    let dir = TempDir::new().unwrap();
    let g = dir.path().join("g.json");
    assert!(laman(&[
        "generate",
        "50",
        "--seed",
        "50",
        "--out",
        g.to_str().unwrap()
    ])
    .status
    .success());
    let out = laman(&["draw", g.to_str().unwrap()]);
    assert!(out.status.success());
    let bundle: Value = serde_json::from_slice(&out.stdout).unwrap();
    let shapes = bundle["representation"]["shapes"].as_array().unwrap();
    assert_eq!(shapes.len(), 50);
    for s in shapes {
        for c in s["bend"].as_array().unwrap() {
            assert!((1..=50).contains(&c.as_i64().unwrap()));
        }
    }
}

#[test]
fn draw_is_byte_identical() {
    let dir = TempDir::new().unwrap();
    let g = dir.path().join("g.json");
    assert!(laman(&[
        "generate",
        "40",
        "--seed",
        "9",
        "--out",
        g.to_str().unwrap()
    ])
    .status
    .success());
    let a = laman(&["draw", g.to_str().unwrap(), "--seed", "9"]);
    let b = laman(&["draw", g.to_str().unwrap(), "--seed", "9"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn timings_are_opt_in() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "k3.json", K3);
    let plain: Value = serde_json::from_slice(&laman(&["draw", &g]).stdout).unwrap();
    assert!(plain["meta"].get("timings_ms").is_none());
    let timed: Value = serde_json::from_slice(&laman(&["draw", &g, "--timings"]).stdout).unwrap();
    assert!(timed["meta"]["timings_ms"]["angular-tree"].is_number());
}

#[test]
fn k4_exits_with_witness() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "k4.json", K4);
    for cmd in ["draw", "check"] {
        let out = laman(&[cmd, &g]);
        assert_eq!(out.status.code(), Some(2), "{cmd}");
        assert!(String::from_utf8_lossy(&out.stderr).contains("[1, 2, 3, 4]"));
    }
}

#[test]
fn exit_codes_for_bad_input() {
    let dir = TempDir::new().unwrap();
    let garbage = write(&dir, "bad.json", "{ not json");
    assert_eq!(laman(&["draw", &garbage]).status.code(), Some(1));
    assert_eq!(
        laman(&["draw", "/nonexistent/g.json"]).status.code(),
        Some(1)
    );
    assert_eq!(laman(&["frobnicate"]).status.code(), Some(1));
    let inconsistent = write(
        &dir,
        "inc.json",
        r#"{"n":3,"rotation":{"1":[2,3],"2":[1],"3":[1,2]},"outer":[1,2,3]}"#,
    );
    assert_eq!(laman(&["draw", &inconsistent]).status.code(), Some(1));
    // reversed outer triple bounds no face
    let flipped = write(
        &dir,
        "flip.json",
        r#"{"n":4,"rotation":{"1":[3,4,2],"2":[1,3],"3":[2,4,1],"4":[1,3]},"outer":[1,3,2]}"#,
    );
    assert_eq!(laman(&["draw", &flipped]).status.code(), Some(3));
}

#[test]
fn validate_bare_and_bundled() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "k3.json", K3);
    let bundle = dir.path().join("b.json");
    assert!(laman(&["draw", &g, "--out", bundle.to_str().unwrap()])
        .status
        .success());
    let mut repr = json(&bundle)["representation"].clone();
    let bare = write(&dir, "r.json", &repr.to_string());
    let ok = laman(&["validate", bundle.to_str().unwrap(), &bare, "--graph", &g]);
    assert!(
        ok.status.success(),
        "{}",
        String::from_utf8_lossy(&ok.stdout)
    );

    // move v1's bend onto v3's leg: a bend contact
    repr["shapes"][0]["bend"] = serde_json::json!([3, 2]);
    repr["shapes"][0]["h_end"] = serde_json::json!([4, 2]);
    let broken = write(&dir, "broken.json", &repr.to_string());
    let out = laman(&["validate", &broken, "--graph", &g]);
    assert_eq!(out.status.code(), Some(5));
    assert!(String::from_utf8_lossy(&out.stdout).contains("clause (C)"));

    let missing_graph = laman(&["validate", &bare]);
    assert_eq!(missing_graph.status.code(), Some(1));
}

#[test]
fn validate_batch_with_jobs() {
    let dir = TempDir::new().unwrap();
    let mut files = Vec::new();
    for seed in 0..8 {
        let g = dir.path().join(format!("g{seed}.json"));
        let b = dir.path().join(format!("b{seed}.json"));
        let s = seed.to_string();
        assert!(
            laman(&["generate", "20", "--seed", &s, "--out", g.to_str().unwrap()])
                .status
                .success()
        );
        assert!(
            laman(&["draw", g.to_str().unwrap(), "--out", b.to_str().unwrap()])
                .status
                .success()
        );
        files.push(b.to_str().unwrap().to_string());
    }
    let mut args = vec!["validate", "--jobs", "4"];
    args.extend(files.iter().map(String::as_str));
    let out = laman(&args);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(text.lines().filter(|l| l.ends_with(": valid")).count(), 8);
    // output order follows the argument order
    assert!(text.lines().next().unwrap().contains("b0.json"));
}

#[test]
fn svg_export() {
    let dir = TempDir::new().unwrap();
    let g = golden("k3_plus_v4.json");
    let svg = dir.path().join("d.svg");
    let out = laman(&["draw", g.to_str().unwrap(), "--svg", svg.to_str().unwrap()]);
    assert!(out.status.success());
    let text = fs::read_to_string(&svg).unwrap();
    assert!(text.starts_with("<svg"));
    assert_eq!(text.matches("<polyline").count(), 4);
    assert!(text.matches("<line").count() > 4);
}
