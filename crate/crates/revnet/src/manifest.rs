//! Run manifests: one JSON document per command invocation.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::fsio;

pub const MANIFEST_FILE: &str = "manifest.json";

/// Column schema of one output table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OutputEntry {
    pub path: String,
    pub sha256: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub analysis: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub columns: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub command: String,
    /// Digest of the effective command configuration.
    pub config_sha256: String,
    pub config: serde_json::Value,
    pub seed: Option<u64>,
    /// Input path -> sha256.
    pub inputs: BTreeMap<String, String>,
    pub outputs: Vec<OutputEntry>,
    pub timings_ms: BTreeMap<String, u128>,
}

impl RunManifest {
    pub fn new(command: &str, config: serde_json::Value, seed: Option<u64>) -> Self {
        let canonical = serde_json::to_vec(&config).expect("json value serializes");
        RunManifest {
            tool: String::from("revnet"),
            version: String::from(env!("CARGO_PKG_VERSION")),
            command: String::from(command),
            config_sha256: fsio::sha256_hex(&canonical),
            config,
            seed,
            inputs: BTreeMap::new(),
            outputs: Vec::new(),
            timings_ms: BTreeMap::new(),
        }
    }

    pub fn input(&mut self, path: &Path, bytes: &[u8]) {
        self.inputs.insert(path.display().to_string(), fsio::sha256_hex(bytes));
    }

    /// Write `bytes` atomically into `dir/name` and record it.
    pub fn emit(
        &mut self,
        dir: &Path,
        name: &str,
        bytes: &[u8],
        analysis: Option<&str>,
        columns: &[&str],
    ) -> std::io::Result<()> {
        fsio::write_atomic(&dir.join(name), bytes)?;
        self.outputs.push(OutputEntry {
            path: String::from(name),
            sha256: fsio::sha256_hex(bytes),
            analysis: analysis.map(String::from),
            columns: columns.iter().map(|c| String::from(*c)).collect(),
        });
        Ok(())
    }

    pub fn time(&mut self, stage: &str, start: std::time::Instant) {
        self.timings_ms.insert(String::from(stage), start.elapsed().as_millis());
    }

    pub fn write(&self, dir: &Path) -> std::io::Result<()> {
        let mut text = serde_json::to_string_pretty(self).expect("manifest serializes");
        text.push('\n');
        fsio::write_atomic(&dir.join(MANIFEST_FILE), text.as_bytes())
    }

    pub fn read(dir: &Path) -> std::io::Result<RunManifest> {
        let text = std::fs::read_to_string(dir.join(MANIFEST_FILE))?;
        serde_json::from_str(&text).map_err(std::io::Error::other)
    }
}
