use std::process::{Command, Output};

use grasspack::export::ExportRecord;

fn grasspack(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grasspack"))
        .args(args)
        .env_remove("GRASSPACK_MAX_LEVEL")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn generate_main_level_two() {
    let o = grasspack(&["generate", "--family", "main", "--i", "2"]);
    assert!(o.status.success());
    let rec = ExportRecord::from_json(&stdout(&o)).unwrap();
    assert_eq!(rec.subspaces.len(), 18);
    assert_eq!(rec.summary.min_squared_distance.unwrap().to_string(), "1");
}

#[test]
fn generate_lines_level_two() {
    let o = grasspack(&["generate", "--family", "lines", "--i", "2"]);
    assert!(o.status.success());
    let rec = ExportRecord::from_json(&stdout(&o)).unwrap();
    assert_eq!(rec.family.count, 24);
    assert_eq!(rec.family.n, 1);
}

#[test]
fn level_zero_is_a_usage_error() {
    assert_eq!(
        grasspack(&["generate", "--family", "main", "--i", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(grasspack(&["order", "--i", "0"]).status.code(), Some(2));
}

#[test]
fn unknown_family_is_a_usage_error() {
    assert_eq!(
        grasspack(&["generate", "--family", "cubes", "--i", "2"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn level_cap_is_enforced() {
    let o = Command::new(env!("CARGO_BIN_EXE_grasspack"))
        .args(["verify", "--family", "main", "--i", "4"])
        .env("GRASSPACK_MAX_LEVEL", "3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(
        grasspack(&["generate", "--family", "main", "--i", "6"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn stretch_levels_need_opt_in() {
    assert_eq!(
        grasspack(&["verify", "--family", "planes2", "--i", "4"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(grasspack(&["order", "--i", "5"]).status.code(), Some(2));
}

#[test]
fn verify_main_level_three_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let o = grasspack(&[
        "verify",
        "--family",
        "main",
        "--i",
        "3",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(json["passed"], true);
    assert_eq!(json["min_squared_distance"], "2");
    assert_eq!(json["bound"]["meets_bound"], true);
}

#[test]
fn verify_transitive_mode() {
    let o = grasspack(&["verify", "--family", "main", "--i", "4", "--transitive"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("orbit equals family"));
}

#[test]
fn sweep_flags_are_exclusive() {
    let o = grasspack(&[
        "verify",
        "--family",
        "main",
        "--i",
        "2",
        "--exhaustive",
        "--transitive",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_planes_level_three() {
    let o = grasspack(&["verify", "--family", "planes2", "--i", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("N = 420"));
}

#[test]
fn order_level_three() {
    let o = grasspack(&["order", "--i", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.matches("5160960").count(), 2);
    assert!(out.contains("match"));
}

#[test]
fn orbits_from_coordinate_seeds() {
    for (i, seed, n) in [
        ("3", "coords:4", 70),
        ("2", "coords:1", 24),
        ("2", "coords:2", 18),
    ] {
        let o = grasspack(&["orbit", "--i", i, "--seed", seed]);
        assert!(o.status.success(), "{seed}");
        assert_eq!(
            ExportRecord::from_json(&stdout(&o)).unwrap().family.count,
            n,
            "{seed}"
        );
    }
}

#[test]
fn orbit_from_inline_seed() {
    let o = grasspack(&["orbit", "--i", "2", "--seed", "1,1,0,0;0,0,1,-1"]);
    assert!(o.status.success());
    assert_eq!(
        ExportRecord::from_json(&stdout(&o)).unwrap().family.count,
        18
    );
}

#[test]
fn orbit_limit_is_an_error() {
    let o = grasspack(&["orbit", "--i", "3", "--seed", "coords:4", "--limit", "10"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
}

#[test]
fn csv_output() {
    let o = grasspack(&[
        "generate", "--family", "main", "--i", "1", "--format", "csv",
    ]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        "subspace_index,row_index,c0,c1\n0,0,1,0\n1,0,0,1\n2,0,1,1\n3,0,1,-1\n"
    );
}

#[test]
fn thread_count_does_not_change_output() {
    let a = grasspack(&["--threads", "1", "generate", "--family", "main", "--i", "3"]);
    let b = grasspack(&["--threads", "4", "generate", "--family", "main", "--i", "3"]);
    assert_eq!(a.stdout, b.stdout);
}
