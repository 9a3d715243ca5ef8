use std::collections::BTreeMap;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

/// SHA-256 of every input file read, keyed by the path as given.
#[derive(Default)]
pub struct Digests(BTreeMap<String, String>);

impl Digests {
    /// Records `path` and returns its bytes.
    pub fn read(&mut self, path: &Path) -> Result<Vec<u8>, std::io::Error> {
        let bytes = std::fs::read(path)?;
        self.0.insert(path.display().to_string(), hex::encode(Sha256::digest(&bytes)));
        Ok(bytes)
    }

    pub fn into_entries(self) -> Vec<InputDigest> {
        self.0.into_iter().map(|(path, sha256)| InputDigest { path, sha256 }).collect()
    }
}

#[derive(Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Vec<InputDigest>,
    pub results: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub runtime_ms: u64,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}
