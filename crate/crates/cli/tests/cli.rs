use std::process::{Command, Output};

use serde_json::Value;

fn epair(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_epair")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn rootsys_counts_roots() {
    for (args, roots) in [(&["--type", "A", "--rank", "2"][..], 6), (&["--type", "G2"][..], 12)] {
        let mut full = vec!["rootsys"];
        full.extend_from_slice(args);
        let v = json(&epair(&full));
        assert_eq!(2 * v["positive_roots"].as_array().unwrap().len(), roots);
    }
}

#[test]
fn invalid_type_exits_2() {
    let out = epair(&["rootsys", "--type", "E", "--rank", "9"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unsupported type/rank"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(epair(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(epair(&["char", "--type", "A2", "--weight", "1,0,0"]).status.code(), Some(2));
    assert_eq!(epair(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn character_dimension() {
    let v = json(&epair(&["char", "--type", "A2", "--weight", "1,1"]));
    assert_eq!(v["dim"], "8");
    let f = json(&epair(&["char", "--type", "A2", "--weight", "1,1", "--method", "freudenthal"]));
    assert_eq!(v["character"], f["character"]);
}

#[test]
fn homology_sources_agree() {
    let args = ["homology", "--type", "B2", "--weight", "1,1", "--twist", "2,1"];
    let k = json(&epair(&args));
    let mut with = args.to_vec();
    with.extend(["--source", "kostant"]);
    let c = json(&epair(&with));
    assert_eq!(k["homology"], c["homology"]);
}

#[test]
fn sl2_elliptic_is_identity_on_discrete_series() {
    let v = json(&epair(&["pairing", "--preset", "sl2", "--bound", "2"]));
    let labels: Vec<&str> = v["labels"].as_array().unwrap().iter().map(|l| l.as_str().unwrap()).collect();
    let m = &v["matrices"]["elliptic"];
    for (i, a) in labels.iter().enumerate() {
        for (j, b) in labels.iter().enumerate() {
            let expect = if i == j && a.starts_with("DS") && b.starts_with("DS") { "1" } else { "0" };
            assert_eq!(m[i][j], expect, "{a} x {b}");
        }
    }
}

#[test]
fn catalog_round_trip_through_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a1.json");
    let path = path.to_str().unwrap();
    let out = epair(&["zoo", "--preset", "compact", "--type", "A1", "--bound", "3", "--out", path]);
    assert!(out.status.success());
    let v = json(&epair(&["pairing", "--catalog", path, "--kind", "all"]));
    assert_eq!(v["all_equal"], true);
    let m = v["matrices"]["homological"].as_array().unwrap();
    assert_eq!(m.len(), 4);
    for (i, row) in m.iter().enumerate() {
        for (j, x) in row.as_array().unwrap().iter().enumerate() {
            assert_eq!(x, if i == j { "1" } else { "0" });
        }
    }
}

#[test]
fn multiplicity_needs_compact_context() {
    assert_eq!(epair(&["pairing", "--preset", "sl2", "--kind", "multiplicity"]).status.code(), Some(2));
}

#[test]
fn unequal_rank_catalog_pairs_to_zero() {
    let v = json(&epair(&["pairing", "--preset", "unequal", "--kind", "all"]));
    for m in v["matrices"].as_object().unwrap().values() {
        assert!(m.as_array().unwrap().iter().flat_map(|r| r.as_array().unwrap()).all(|x| x == "0"));
    }
}

#[test]
fn verify_examples() {
    let v = json(&epair(&["verify", "--suite", "kazhdan", "--type", "A1", "--bound", "3"]));
    assert_eq!(v["summary"]["failed"], 0);
    let v = json(&epair(&["verify", "--suite", "weyldenom", "--type", "B2"]));
    assert_eq!(v["summary"]["total"], 8);
    assert_eq!(v["summary"]["passed"], 8);
    let v = json(&epair(&["verify", "--suite", "lavan", "--dims", "1..6"]));
    assert_eq!(v["summary"]["failed"], 0);
    assert_eq!(v["seed"], 0);
}

#[test]
fn verify_is_byte_reproducible() {
    let args = ["verify", "--suite", "kazhdan,standard", "--type", "A2", "--bound", "1", "--fuzz", "25", "--seed", "7"];
    let a = epair(&args);
    let b = epair(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn cap_skips_suite() {
    let v = json(&epair(&["verify", "--suite", "weyldenom", "--type", "B3", "--cap-weyl", "10"]));
    assert_eq!(v["reports"][0]["status"], "skipped: cap");
    assert_eq!(v["summary"]["total"], 0);
}

#[test]
fn config_file_and_table() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "# smoke run\nsuites = weyldenom, unequal\ntypes = A2\nseed = 3\n").unwrap();
    let out = epair(&["verify", "--config", cfg.to_str().unwrap(), "--emit", "table"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("weyldenom") && text.contains("unequal"));
    let bad = dir.path().join("bad.cfg");
    std::fs::write(&bad, "colour = blue\n").unwrap();
    assert_eq!(epair(&["verify", "--config", bad.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn timing_only_on_request() {
    let plain = json(&epair(&["verify", "--suite", "lavan"]));
    assert!(plain["reports"][0].get("timing_ms").is_none());
    let timed = json(&epair(&["verify", "--suite", "lavan", "--timing"]));
    assert!(timed["reports"][0].get("timing_ms").is_some());
}
