use std::collections::BTreeMap;
use std::path::Path;
use std::time::Instant;

use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Debug, Serialize)]
pub struct Claim {
    pub id: String,
    pub pass: bool,
    /// Witness on success or counterexample on failure, when one exists.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

#[derive(Debug, Serialize)]
pub struct Certificate {
    pub construction: String,
    pub inputs: BTreeMap<String, String>,
    pub claims: Vec<Claim>,
    pub data: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
    pub timing_ms: f64,
    #[serde(skip)]
    started: Option<Instant>,
}

pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl Certificate {
    pub fn new(construction: &str) -> Self {
        Certificate {
            construction: construction.to_string(),
            inputs: BTreeMap::new(),
            claims: Vec::new(),
            data: BTreeMap::new(),
            warnings: Vec::new(),
            timing_ms: 0.0,
            started: Some(Instant::now()),
        }
    }

    pub fn input(&mut self, name: &str, bytes: &[u8]) {
        self.inputs.insert(name.to_string(), digest(bytes));
    }

    pub fn claim(&mut self, id: &str, pass: bool, witness: Option<Value>) {
        self.claims.push(Claim {
            id: id.to_string(),
            pass,
            witness,
        });
    }

    pub fn data(&mut self, key: &str, value: impl Serialize) {
        self.data
            .insert(key.to_string(), serde_json::to_value(value).expect("serializable"));
    }

    pub fn passed(&self) -> bool {
        self.claims.iter().all(|c| c.pass)
    }

    pub fn finish(&mut self) {
        if let Some(t) = self.started {
            self.timing_ms = t.elapsed().as_secs_f64() * 1000.0;
        }
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let text = serde_json::to_string_pretty(self)? + "\n";
        std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
    }
}
