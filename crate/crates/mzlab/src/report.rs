//! Deterministic key/value reports.
//!
//! Every subcommand emits the same data in two renderings: a human
//! `key: value` listing and a machine `key<TAB>value` line format. Keys
//! appear in the order the command pushed them; nothing here depends on
//! hashing or time.

use std::fmt::Display;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    lines: Vec<(String, String)>,
}

impl Report {
    pub fn new() -> Self {
        Report { lines: Vec::new() }
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl Display) {
        self.lines.push((key.into(), value.to_string()));
    }

    pub fn lines(&self) -> &[(String, String)] {
        &self.lines
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.lines
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn render(&self, machine: bool) -> String {
        let mut out = String::new();
        for (k, v) in &self.lines {
            if machine {
                out.push_str(&format!("{k}\t{v}\n"));
            } else {
                out.push_str(&format!("{k}: {v}\n"));
            }
        }
        out
    }
}
