use std::process::{Command, Output};

use serde_json::Value;

fn gamehop(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gamehop"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn facts_blum_and_non_blum() {
    let out = gamehop(&["facts", "--p", "3", "--q", "7"]);
    assert_eq!(code(&out), 0);
    let j = json(&out);
    assert_eq!(j["summary"]["passed"], 8);

    let out = gamehop(&["facts", "--p", "3", "--q", "5"]);
    assert_eq!(code(&out), 0);
    let j = json(&out);
    let checks = j["checks"].as_array().unwrap();
    assert!(checks[..4].iter().all(|c| c["pass"] == true));
    assert!(checks[4..].iter().all(|c| c["pass"].is_null()));

    assert_eq!(code(&gamehop(&["facts", "--p", "4", "--q", "7"])), 2);
}

#[test]
fn replay_bbs_pass_and_mutant() {
    let out = gamehop(&[
        "replay-bbs",
        "--p",
        "3",
        "--q",
        "7",
        "--len",
        "2",
        "--family",
        "default",
    ]);
    assert_eq!(code(&out), 0);
    let j = json(&out);
    assert_eq!(j["summary"]["failed"], 0);
    assert!(j["runs"].as_array().unwrap().iter().all(|r| r["epsilon_used"] == "0/1"));

    let out = gamehop(&[
        "replay-bbs",
        "--p",
        "3",
        "--q",
        "7",
        "--len",
        "2",
        "--mutate",
        "bbs8-drop-xor1",
    ]);
    assert_eq!(code(&out), 1);
    let j = json(&out);
    let bad = j["runs"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["equal"] == false)
        .unwrap();
    assert_eq!(bad["step_id"], "BBS8");
    assert!(bad["counterexample"]["left"].is_string());

    assert_eq!(code(&gamehop(&["replay-bbs", "--p", "3", "--q", "7", "--len", "0"])), 0);
    assert_eq!(code(&gamehop(&["replay-bbs", "--p", "3", "--q", "5"])), 2);
}

#[test]
fn replay_gm_defaults_and_errors() {
    let out = gamehop(&["replay-gm", "--p", "3", "--q", "7", "--random", "4"]);
    assert_eq!(code(&out), 0);
    let steps: Vec<String> = json(&out)["runs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["step_id"].as_str().unwrap().to_string())
        .collect();
    for s in ["GM1", "GM4.i", "COIN.ii", "GM9.iii", "GM9.iv", "E2E-GM.iv"] {
        assert!(steps.iter().any(|t| t == s), "{s}");
    }
    let out = gamehop(&["replay-gm", "--p", "3", "--q", "5", "--y", "7"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("QNR_15(+1)"));
    assert_eq!(
        code(&gamehop(&["replay-gm", "--p", "3", "--q", "7", "--mutate", "gm7-skip"])),
        1
    );
    assert_eq!(
        code(&gamehop(&["replay-gm", "--p", "3", "--q", "7", "--mutate", "nope"])),
        2
    );
}

#[test]
fn bbs_and_stats() {
    let out = gamehop(&["bbs", "--p", "3", "--q", "7", "--seed", "2", "--len", "3"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["bits"], "000");
    let out = gamehop(&["bbs", "--p", "3", "--q", "7", "--seed", "21", "--len", "3"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("not a unit"));

    let j = json(&gamehop(&[
        "stats", "--p", "3", "--q", "7", "--seed", "8", "--len", "3",
    ]));
    assert_eq!((j["zeros"].as_u64(), j["ones"].as_u64()), (Some(0), Some(3)));
    let j = json(&gamehop(&[
        "stats", "--p", "3", "--q", "7", "--seed", "2", "--len", "3",
    ]));
    assert_eq!((j["zeros"].as_u64(), j["ones"].as_u64()), (Some(3), Some(0)));
    let j = json(&gamehop(&[
        "stats", "--p", "3", "--q", "7", "--seed", "2", "--len", "0",
    ]));
    assert_eq!((j["zeros"].as_u64(), j["ones"].as_u64()), (Some(0), Some(0)));
}

#[test]
fn gm_bit_and_bits() {
    let out = gamehop(&["gm", "--p", "3", "--q", "7", "--y", "5", "--bit", "1", "--x", "2"]);
    assert_eq!(code(&out), 0);
    let j = json(&out);
    assert_eq!(j["ciphertexts"][0], 20);
    assert_eq!(j["decrypted"], "1");

    let out = gamehop(&["gm", "--p", "3", "--q", "7", "--bits", "0110", "--seed", "3"]);
    assert_eq!(code(&out), 0);
    let j = json(&out);
    assert_eq!(j["y"], 5);
    assert_eq!(j["decrypted"], "0110");
    assert_eq!(j["x"].as_array().unwrap().len(), 4);

    assert_eq!(
        code(&gamehop(&["gm", "--p", "3", "--q", "7", "--bit", "1", "--x", "7"])),
        2
    );
    assert_eq!(
        code(&gamehop(&["gm", "--p", "3", "--q", "7", "--y", "4", "--bit", "0"])),
        2
    );
    assert_eq!(
        code(&gamehop(&["gm", "--p", "3", "--q", "7", "--bits", "01", "--x", "2"])),
        2
    );
}

#[test]
fn reports_are_byte_identical() {
    let args = ["replay-bbs", "--p", "3", "--q", "11", "--len", "1,3", "--seed", "5"];
    assert_eq!(gamehop(&args).stdout, gamehop(&args).stdout);
}

#[test]
fn output_file() {
    let path = std::env::temp_dir().join(format!("gamehop-facts-{}.json", std::process::id()));
    let out = gamehop(&["facts", "--p", "7", "--q", "11", "--output", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let j: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(j["summary"]["passed"], 8);
}
