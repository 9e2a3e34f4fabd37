use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

/// A value stated in the source material that disagrees with the computed
/// one. Both are carried; neither is corrected.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Note {
    pub level: String,
    pub topic: String,
    pub stated: String,
    pub computed: String,
    pub stated_provenance: String,
    pub computed_provenance: String,
}

impl Note {
    pub fn warn(topic: &str, stated: &str, computed: &str, stated_provenance: &str, computed_provenance: &str) -> Self {
        Note {
            level: "WARN".into(),
            topic: topic.into(),
            stated: stated.into(),
            computed: computed.into(),
            stated_provenance: stated_provenance.into(),
            computed_provenance: computed_provenance.into(),
        }
    }

    pub fn line(&self) -> String {
        format!(
            "{}: {}: stated {} ({}); computed {} ({})",
            self.level, self.topic, self.stated, self.stated_provenance, self.computed, self.computed_provenance
        )
    }
}

/// Machine-readable output of every command. Maps are ordered, and nothing
/// time-dependent is stored, so a fixed invocation serializes to fixed bytes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    /// Canonical argument vector that reproduces this report.
    pub command: Vec<String>,
    pub inputs: BTreeMap<String, Value>,
    pub verdicts: BTreeMap<String, Value>,
    pub witnesses: BTreeMap<String, Value>,
    pub notes: Vec<Note>,
}

impl Report {
    pub fn new(command: Vec<String>) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            command,
            inputs: BTreeMap::new(),
            verdicts: BTreeMap::new(),
            witnesses: BTreeMap::new(),
            notes: Vec::new(),
        }
    }

    pub fn input(&mut self, key: &str, v: impl Serialize) -> &mut Self {
        self.inputs.insert(key.into(), to_value(v));
        self
    }

    pub fn verdict(&mut self, key: &str, v: impl Serialize) -> &mut Self {
        self.verdicts.insert(key.into(), to_value(v));
        self
    }

    pub fn witness(&mut self, key: &str, v: impl Serialize) -> &mut Self {
        self.witnesses.insert(key.into(), to_value(v));
        self
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> anyhow::Result<Self> {
        let r: Report = serde_json::from_str(s)?;
        anyhow::ensure!(
            r.schema_version == SCHEMA_VERSION,
            "unsupported schema_version {} (expected {SCHEMA_VERSION})",
            r.schema_version
        );
        Ok(r)
    }
}

fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("report values serialize")
}
