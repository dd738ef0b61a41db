use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn mercode(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mercode")).args(args).output().expect("binary runs")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn encode_then_decode_recovers_message() {
    let dir = TempDir::new().unwrap();
    let word = dir.path().join("word.txt");
    let msg = dir.path().join("msg.txt");
    for code in ["mult", "frs"] {
        let out = mercode(&[
            "encode", "--code", code, "--n", "16", "--s", "25", "--d", "100", "--seed", "7",
            "--message-out", path_str(&msg), "--out", path_str(&word),
        ]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        let dec = mercode(&["decode", path_str(&word), "--epsilon", "0.5", "--seed", "1"]);
        assert_eq!(dec.status.code(), Some(0), "{}", String::from_utf8_lossy(&dec.stderr));
        let coeffs = std::fs::read_to_string(&msg).unwrap().lines().nth(1).unwrap().to_string();
        assert!(stdout(&dec).lines().any(|l| l == format!("agreement=16 {coeffs}")), "{}", stdout(&dec));
    }
}

#[test]
fn message_file_round_trip_through_corruption() {
    let dir = TempDir::new().unwrap();
    let msg = dir.path().join("msg.txt");
    let word = dir.path().join("word.txt");
    let bad = dir.path().join("bad.txt");
    let coeffs: Vec<String> = (0..17).map(|i| ((i * 37 + 5) % 7919).to_string()).collect();
    std::fs::write(&msg, format!("MSG p=7919 d=16\n{}\n", coeffs.join(" "))).unwrap();
    assert!(mercode(&["encode", path_str(&msg), "--code", "mult", "--n", "32", "--s", "2", "--out", path_str(&word)])
        .status
        .success());
    assert!(mercode(&["corrupt", path_str(&word), "--errors", "10", "--seed", "3", "--out", path_str(&bad)])
        .status
        .success());
    let dec = mercode(&["decode", path_str(&bad), "--mode", "johnson", "--epsilon", "0.25"]);
    assert_eq!(dec.status.code(), Some(0));
    assert!(stdout(&dec).contains(&format!("agreement=22 {}", coeffs.join(" "))), "{}", stdout(&dec));
}

#[test]
fn corruption_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let word = dir.path().join("word.txt");
    let (a, b) = (dir.path().join("a.txt"), dir.path().join("b.txt"));
    assert!(mercode(&["encode", "--code", "frs", "--n", "8", "--s", "4", "--d", "10", "--out", path_str(&word)])
        .status
        .success());
    for out in [&a, &b] {
        assert!(mercode(&["corrupt", path_str(&word), "--errors", "3", "--seed", "9", "--out", path_str(out)])
            .status
            .success());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_ne!(std::fs::read(&a).unwrap(), std::fs::read(&word).unwrap());
    let too_many = mercode(&["corrupt", path_str(&word), "--errors", "9"]);
    assert_eq!(too_many.status.code(), Some(1));
}

#[test]
fn malformed_input_exits_with_one() {
    let dir = TempDir::new().unwrap();
    let word = dir.path().join("word.txt");
    std::fs::write(&word, "CODE kind=mult p=7919 n=3 s=2 d=1 gamma=1\n0 1 2\n1 3 4\n").unwrap();
    let out = mercode(&["decode", path_str(&word)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 4"));
    assert_eq!(mercode(&["decode", "--no-such-flag"]).status.code(), Some(1));
    assert_eq!(mercode(&["decode", path_str(&dir.path().join("missing"))]).status.code(), Some(1));
}

#[test]
fn hopeless_word_exits_with_two() {
    let dir = TempDir::new().unwrap();
    let word = dir.path().join("word.txt");
    let bad = dir.path().join("bad.txt");
    assert!(mercode(&["encode", "--code", "mult", "--p", "7919", "--n", "32", "--s", "2", "--d", "16", "--out", path_str(&word)])
        .status
        .success());
    assert!(mercode(&["corrupt", path_str(&word), "--errors", "32", "--out", path_str(&bad)]).status.success());
    let out = mercode(&["decode", path_str(&bad), "--mode", "johnson", "--epsilon", "0.25"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).starts_with("# messages=0"));
}

#[test]
fn bench_prints_csv() {
    let out = mercode(&["bench", "--n", "32", "--trials", "1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,interp_ms,solve_ms,prune_ms,total_ms");
    assert_eq!(lines.len(), 2);
    assert!(lines[1].starts_with("32,"));
}

#[test]
fn selftest_detects_injected_fault() {
    let clean = mercode(&["selftest", "--trials", "4"]);
    assert_eq!(clean.status.code(), Some(0), "{}", stdout(&clean));
    assert_eq!(stdout(&clean).lines().count(), 7);
    let faulty = mercode(&["selftest", "--trials", "4", "--inject-fault"]);
    assert_ne!(faulty.status.code(), Some(0));
    assert!(stdout(&faulty).contains("FAIL"));
}
