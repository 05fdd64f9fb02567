#![allow(dead_code)]

use std::path::PathBuf;
use std::process::{Command, Output};

pub fn zlq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zlq")).args(args).env_remove("ZLQ_THREADS").output().expect("zlq binary runs")
}

pub fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

pub fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

pub fn fixture_path(q: u32) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(format!("data/v1/q{q}.zlq"))
}

pub fn json(text: &str) -> serde_json::Value {
    serde_json::from_str(text.trim()).unwrap_or_else(|e| panic!("not JSON ({e}): {text}"))
}
