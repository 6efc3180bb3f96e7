#![allow(dead_code)]

use std::path::PathBuf;
use std::process::Command;

pub fn corpus() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

pub struct Case {
    pub name: String,
    pub code: i32,
    pub args: Vec<String>,
}

/// Reads `corpus/cases.txt`: `name | exit code | arguments`.
pub fn cases() -> Vec<Case> {
    let text = std::fs::read_to_string(corpus().join("cases.txt")).expect("cases.txt");
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            let parts: Vec<&str> = l.split('|').map(str::trim).collect();
            assert_eq!(parts.len(), 3, "bad case line: {}", l);
            Case {
                name: parts[0].to_string(),
                code: parts[1].parse().expect("exit code"),
                args: parts[2].split_whitespace().map(str::to_string).collect(),
            }
        })
        .collect()
}

pub struct Run {
    pub code: i32,
    pub stdout: Vec<u8>,
    pub stderr: String,
}

/// Runs the built binary from the corpus directory.
pub fn prelie(args: &[String], env: &[(&str, &str)]) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_prelie"));
    cmd.args(args).current_dir(corpus()).env_remove("PRELIE_BUDGET");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: out.stdout,
        stderr: String::from_utf8_lossy(&out.stderr).into_owned(),
    }
}

pub fn args(s: &str) -> Vec<String> {
    s.split_whitespace().map(str::to_string).collect()
}
