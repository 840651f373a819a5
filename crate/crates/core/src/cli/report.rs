//! Canonical report emission.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{Map, Value};

use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Refuted,
    Mismatch,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Refuted => "refuted",
            Status::Mismatch => "mismatch",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Refuted | Status::Mismatch => 1,
        }
    }
}

/// A reproduced quantity that disagrees with its expected value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diff {
    pub quantity: String,
    pub expected: String,
    pub got: String,
}

#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub args: Value,
    pub results: Value,
    pub exclusion_witnesses: Vec<Value>,
    pub diffs: Vec<Diff>,
    pub status: Status,
}

/// Exit code for errors raised before a report exists.
pub fn error_exit_code(e: &Error) -> i32 {
    match e {
        Error::Refuted(_) | Error::CrossCheck(_) | Error::Unsolvable(_) => 1,
        _ => 2,
    }
}

impl Report {
    pub fn new(command: &str, args: Value, results: Value) -> Self {
        Report {
            command: command.to_string(),
            args,
            results,
            exclusion_witnesses: Vec::new(),
            diffs: Vec::new(),
            status: Status::Ok,
        }
    }

    pub fn refuted(command: &str, args: Value, e: &Error) -> Self {
        let mut r = Report::new(command, args, Value::Object(Map::new()));
        r.exclusion_witnesses.push(serde_json::json!({ "error": e.to_string() }));
        r.status = Status::Refuted;
        r
    }

    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }

    /// Every `assumptions` list found anywhere in the results, deduplicated and sorted.
    pub fn assumptions(&self) -> Vec<String> {
        let mut out = BTreeSet::new();
        collect_assumptions(&self.results, &mut out);
        out.into_iter().collect()
    }

    pub fn to_value(&self) -> Value {
        serde_json::json!({
            "command": self.command,
            "args": self.args,
            "results": self.results,
            "assumptions": self.assumptions(),
            "exclusion_witnesses": self.exclusion_witnesses,
            "diffs": self.diffs,
            "status": self.status.as_str(),
            "exit_code": self.exit_code(),
        })
    }

    /// Pretty JSON with sorted keys and a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("values serialize");
        s.push('\n');
        s
    }

    pub fn to_markdown(&self) -> String {
        let v = self.to_value();
        let mut out = format!("# {}\n\n", self.command);
        if let Value::Object(m) = &v {
            for (k, val) in m {
                if k == "command" {
                    continue;
                }
                let _ = writeln!(out, "## {k}\n");
                render_md(val, 0, &mut out);
                out.push('\n');
            }
        }
        out
    }
}

fn collect_assumptions(v: &Value, out: &mut BTreeSet<String>) {
    match v {
        Value::Object(m) => {
            for (k, val) in m {
                if k == "assumptions" {
                    if let Value::Array(xs) = val {
                        out.extend(xs.iter().filter_map(|x| x.as_str().map(str::to_string)));
                    }
                } else {
                    collect_assumptions(val, out);
                }
            }
        }
        Value::Array(xs) => xs.iter().for_each(|x| collect_assumptions(x, out)),
        _ => {}
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("null".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(format!("`{s}`")),
        Value::Array(xs) if xs.iter().all(|x| !x.is_object() && !x.is_array()) => Some(format!(
            "[{}]",
            xs.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")
        )),
        _ => None,
    }
}

fn render_md(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    if let Some(s) = scalar(v) {
        let _ = writeln!(out, "{pad}{s}");
        return;
    }
    match v {
        Value::Object(m) if m.is_empty() => {
            let _ = writeln!(out, "{pad}(none)");
        }
        Value::Object(m) => {
            for (k, val) in m {
                match scalar(val) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}- **{k}**: {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}- **{k}**:");
                        render_md(val, depth + 1, out);
                    }
                }
            }
        }
        Value::Array(xs) => {
            for (i, x) in xs.iter().enumerate() {
                match scalar(x) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}- {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}- [{i}]");
                        render_md(x, depth + 1, out);
                    }
                }
            }
        }
        _ => unreachable!("scalars handled above"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn keys_sorted_and_assumptions_collected() {
        let r = Report::new(
            "x",
            json!({}),
            json!({"zeta": 1, "alpha": {"assumptions": ["b", "a"]}, "list": [{"assumptions": ["a"]}]}),
        );
        let s = r.to_json();
        assert!(s.find("\"alpha\"").unwrap() < s.find("\"zeta\"").unwrap());
        assert_eq!(r.assumptions(), vec!["a", "b"]);
    }

    #[test]
    fn markdown_mentions_values() {
        let r = Report::new("x", json!({"seed": 7}), json!({"pairings": ["4", "4", "7"]}));
        let md = r.to_markdown();
        assert!(md.contains("[`4`, `4`, `7`]"), "{md}");
        assert!(md.contains("**seed**: 7"));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(error_exit_code(&Error::Refuted("x".into())), 1);
        assert_eq!(error_exit_code(&Error::Scenario("x".into())), 2);
        let r = Report::refuted("x", json!({}), &Error::Refuted("y".into()));
        assert_eq!(r.exit_code(), 1);
    }
}
