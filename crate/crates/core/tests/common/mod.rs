#![allow(dead_code)]

pub mod tamper;

use std::path::PathBuf;

use turancert::specio::{load_spec, SequenceSpec};

pub const TABLE: [(&str, i64); 8] = [
    ("fine", 6),
    ("motzkin", 11),
    ("cohen", 9),
    ("schroeder", 9),
    ("polyhex", 6),
    ("walks", 26),
    ("t", 5),
    ("domb", 6),
];

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("fixtures").join(name)
}

pub fn spec(name: &str) -> SequenceSpec {
    let text = std::fs::read_to_string(fixture_path(&format!("{name}.json"))).unwrap();
    load_spec(&text).unwrap_or_else(|e| panic!("{name}: {e}"))
}
