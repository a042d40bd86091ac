use std::collections::BTreeMap;
use std::fmt::Write as _;

use cpl_core::geometry::{ComponentReport, DegenerationGraph};
use serde::Serialize;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    /// Differs from the published statement, for a recorded reason.
    Flagged,
    Fail,
}

impl Status {
    fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Flagged => "FLAG",
            Status::Fail => "FAIL",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Item {
    pub name: String,
    pub status: Status,
    pub detail: String,
    /// Names an `--only` filter can select this item by.
    #[serde(skip)]
    pub keys: Vec<String>,
}

impl Item {
    pub fn new(name: impl Into<String>, status: Status, detail: impl Into<String>) -> Item {
        let name = name.into();
        Item { keys: vec![name.clone()], name, status, detail: detail.into() }
    }

    pub fn keyed(mut self, keys: &[&str]) -> Item {
        self.keys.extend(keys.iter().map(|k| k.to_string()));
        self
    }

    pub fn check(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Item {
        Item::new(name, if ok { Status::Pass } else { Status::Fail }, detail)
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub flagged: usize,
    pub fail: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Filters {
    pub variety: Option<String>,
    pub only: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub suite: String,
    pub seed: u64,
    pub samples: usize,
    pub filters: Filters,
    pub data_hashes: BTreeMap<String, String>,
    pub summary: Summary,
    pub items: Vec<Item>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub dimensions: Vec<ComponentReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub graphs: Vec<DegenerationGraph>,
}

impl Report {
    pub fn summarise(&mut self) {
        let mut s = Summary::default();
        for i in &self.items {
            match i.status {
                Status::Pass => s.pass += 1,
                Status::Flagged => s.flagged += 1,
                Status::Fail => s.fail += 1,
            }
        }
        self.summary = s;
    }

    pub fn failed(&self) -> bool {
        self.summary.fail > 0
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialises");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} (seed {}, {} samples)", self.suite, self.seed, self.samples);
        for (file, hash) in &self.data_hashes {
            let _ = writeln!(out, "  {file}  sha256:{hash}");
        }
        out.push('\n');
        for i in &self.items {
            let _ = writeln!(out, "{}  {}", i.status.label(), i.name);
            if !i.detail.is_empty() && i.status != Status::Pass {
                let _ = writeln!(out, "      {}", i.detail);
            }
        }
        for d in &self.dimensions {
            let _ = writeln!(out, "\n{} has dimension {}", d.variety, d.dimension);
            for c in &d.components {
                let _ = writeln!(
                    out,
                    "  {:<24} params {}  dim Der {}  orbit closure dim {}",
                    c.label, c.params, c.generic_derivation_dim, c.dimension
                );
            }
            if !d.rigid.is_empty() {
                let _ = writeln!(out, "  rigid: {}", d.rigid.join(", "));
            }
        }
        let s = &self.summary;
        let _ = writeln!(out, "\n{} passed, {} flagged, {} failed", s.pass, s.flagged, s.fail);
        out
    }
}
