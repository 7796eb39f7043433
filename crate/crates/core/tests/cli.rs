use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bsdefect")).args(args).env_remove("CACHE_DIR").output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn graded_rank_command() {
    let out = run(&["grk", "--type", "A", "--rank", "2", "--word", "1,2,1,2,1", "--x", "2,1"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["grk"]["display"], "1+3v^-2+v^-4");
    assert_eq!(v["grk"]["coeffs"]["-2"], 3);
}

#[test]
fn decompose_and_census_commands() {
    let out = run(&["decompose", "--type", "A", "--rank", "2", "--word", "1,2,1", "--char", "0"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(
        v["decomposition"],
        serde_json::json!([{ "z": "1,2,1", "r": 0, "mult": 1 }, { "z": "1", "r": -2, "mult": 1 }])
    );
    let out = run(&["census", "--type", "A", "--rank", "2", "--n", "3"]);
    assert_eq!(json(&out), serde_json::json!({ "type": "A", "rank": 2, "n": 3, "count": 6 }));
}

#[test]
fn exit_codes() {
    let out = run(&["defect", "--rank", "2", "--word", "1,2", "--x", "e", "--char", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"], "NonGKMInput");
    let out = run(&["defect", "--rank", "2", "--word", "1,2", "--x", "e", "--char", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["error"], "InvalidCharacteristic");
    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["error"], "Usage");
    let out = run(&["grk", "--rank", "2", "--word", "1,5", "--x", "e"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["error"], "InvalidWord");
    let out = run(&["decompose", "--rank", "2", "--word", "1,1"]);
    assert_eq!(json(&out)["error"], "NotReduced");
    let out = run(&["decompose", "--rank", "2", "--word", "1,1", "--allow-nonreduced"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["experimental"], true);
    assert!(String::from_utf8_lossy(&out.stderr).contains("experimental"));
}

#[test]
fn other_commands() {
    let v = json(&run(&["roots", "--type", "B", "--rank", "2"]));
    assert_eq!(v["positive"].as_array().unwrap().len(), 4);
    let v = json(&run(&["group", "--rank", "3"]));
    assert_eq!(v["count"], 24);
    let v = json(&run(&["gkm", "--rank", "1", "--affine", "--word", "0,1,0,1", "--char", "3"]));
    assert_eq!(v["passes"], false);
    let v = json(&run(&["tree", "--rank", "2", "--word", "1,2,1", "--x", "1", "--dot"]));
    assert_eq!(v["paths"].as_array().unwrap().len(), 2);
    assert!(v["dot"].as_str().unwrap().starts_with("digraph"));
    let v = json(&run(&["phi", "--rank", "2", "--word", "1,2,1", "--x", "1"]));
    assert_eq!(v["phi"]["entries"][1][1], "-1");
    let v = json(&run(&["defect", "--rank", "2", "--word", "1,2,1", "--x", "1"]));
    assert_eq!(v["defect"]["display"], "v^-2");
    let kl = json(&run(&["kl", "--rank", "2", "--x", "1,2,1"]));
    let character = json(&run(&["character", "--rank", "2", "--x", "1,2,1"]));
    assert_eq!(kl["kl"], character["character"]);
    let bs = json(&run(&["character", "--rank", "2", "--word", "1,1"]));
    assert_eq!(bs["character"]["terms"][0]["coeff"], serde_json::json!({ "0": 1, "2": 1 }));
}

#[test]
fn output_is_deterministic() {
    let args = ["tree", "--rank", "3", "--word", "1,2,1,3,2,1", "--x", "1"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let pretty = run(&["census", "--rank", "3", "--n", "1", "--pretty"]);
    assert!(String::from_utf8_lossy(&pretty.stdout).contains("\n  \"count\": 14"));
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().to_str().unwrap();
    let args = ["decompose", "--rank", "3", "--word", "1,2,1,3,2,1", "--cache-dir", path];
    let cold = run(&args);
    assert!(cold.status.success());
    let files: Vec<_> = fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().path()).collect();
    assert_eq!(files.len(), 1);
    let warm = run(&args);
    assert_eq!(cold.stdout, warm.stdout);
    let mut verify = args.to_vec();
    verify.push("--verify-cache");
    assert_eq!(run(&verify).stdout, cold.stdout);

    // A tampered entry is caught by verification and ignored once corrupt.
    let text = fs::read_to_string(&files[0]).unwrap();
    fs::write(&files[0], text.replace("\"mult\":1", "\"mult\":7")).unwrap();
    let tampered = run(&verify);
    assert_eq!(tampered.status.code(), Some(1));
    assert_eq!(json(&tampered)["error"], "InternalInvariant");
    fs::write(&files[0], "garbage").unwrap();
    assert_eq!(run(&args).stdout, cold.stdout);

    let via_env = Command::new(env!("CARGO_BIN_EXE_bsdefect"))
        .args(["census", "--rank", "2", "--n", "1"])
        .env("CACHE_DIR", path)
        .output()
        .unwrap();
    assert!(via_env.status.success());
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 2);
}
