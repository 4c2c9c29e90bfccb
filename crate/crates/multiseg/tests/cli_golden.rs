mod common;

use common::{expectations_hold, golden_path, run_case, transcript, CASES};

/// Set `UPDATE_GOLDEN=1` to rewrite the transcripts.
#[test]
fn transcripts_match_golden_files() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let mut bad = Vec::new();
    for case in CASES {
        let (code, stdout) = run_case(case);
        assert!(expectations_hold(case, code, &stdout), "{}: exit {code}\n{stdout}", case.name);
        let got = transcript(case, code, &stdout);
        let path = golden_path(case.name);
        if update {
            std::fs::write(&path, &got).unwrap();
            continue;
        }
        match std::fs::read_to_string(&path) {
            Ok(want) if want == got => {}
            Ok(want) => bad.push(format!("{}: differs\n--- want\n{want}--- got\n{got}", case.name)),
            Err(e) => bad.push(format!("{}: {e}", case.name)),
        }
    }
    assert!(bad.is_empty(), "{}", bad.join("\n"));
}

#[test]
fn binary_matches_in_process_run() {
    let case = &CASES[0];
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_multiseg")).args(case.args).output().unwrap();
    let (code, stdout) = run_case(case);
    assert_eq!(out.status.code(), Some(code));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), stdout);
}

#[test]
fn stdin_argument_and_json() {
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_multiseg"))
        .args(["--json", "resultant", "{[2,4],[3]}", "{[2,8],[3,6]}"])
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v.get("resultant").is_some());

    let mut child = std::process::Command::new(env!("CARGO_BIN_EXE_multiseg"))
        .args(["resultant", "-", "{[2,8],[3,6]}"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    use std::io::Write;
    child.stdin.take().unwrap().write_all(b"{[2,4],[3]}\n").unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "{[4,8],[5,6]}\n");
}

#[test]
fn usage_errors_exit_2() {
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_multiseg")).args(["resultant", "{[3,1]}", "{}"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().starts_with("error: "));
}
