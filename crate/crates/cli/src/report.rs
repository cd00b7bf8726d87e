//! Reports: a human rendering plus the line-oriented machine format
//! described in docs/machine-format.md.

use std::fmt::{Display, Write};

pub const HEADER: &str = "holonomy-report 1";

pub struct Report {
    command: String,
    fields: Vec<(String, String)>,
    human: String,
    pub verdict: Option<bool>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            fields: Vec::new(),
            human: String::new(),
            verdict: None,
        }
    }

    pub fn field(&mut self, key: impl Into<String>, value: impl Display) {
        self.fields.push((key.into(), value.to_string()));
    }

    pub fn line(&mut self, text: impl Display) {
        writeln!(self.human, "{text}").unwrap();
    }

    pub fn verdict(&mut self, v: bool) {
        self.verdict = Some(v);
    }

    pub fn render(&self, machine: bool) -> String {
        let mut out = String::new();
        if machine {
            writeln!(out, "{HEADER}").unwrap();
            writeln!(out, "command {}", self.command).unwrap();
            for (k, v) in &self.fields {
                writeln!(out, "{k} {v}").unwrap();
            }
            if let Some(v) = self.verdict {
                writeln!(out, "verdict {v}").unwrap();
            }
            writeln!(out, "end").unwrap();
        } else {
            out.push_str(&self.human);
            if let Some(v) = self.verdict {
                writeln!(out, "verdict: {}", if v { "pass" } else { "fail" }).unwrap();
            }
        }
        out
    }
}

/// Comma-joined list; `-` when empty.
pub fn list<T: Display>(items: impl IntoIterator<Item = T>) -> String {
    let parts: Vec<String> = items.into_iter().map(|x| x.to_string()).collect();
    if parts.is_empty() {
        "-".to_string()
    } else {
        parts.join(",")
    }
}
