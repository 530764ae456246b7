//! Run manifest embedded in every output for provenance.

use serde::Serialize;
use sha2::{Digest, Sha256};
use std::path::Path;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InputFile {
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunManifest {
    pub subcommand: String,
    pub inputs: Vec<InputFile>,
    pub params: serde_json::Value,
    pub version: String,
    pub seed: Option<u64>,
    pub outputs: Vec<String>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl RunManifest {
    pub fn new(subcommand: &str, params: serde_json::Value) -> Self {
        RunManifest {
            subcommand: subcommand.into(),
            inputs: Vec::new(),
            params,
            version: env!("CARGO_PKG_VERSION").into(),
            seed: None,
            outputs: Vec::new(),
        }
    }

    pub fn add_input(&mut self, path: &Path, content: &[u8]) {
        self.inputs.push(InputFile { path: path.display().to_string(), sha256: sha256_hex(content) });
    }

    /// Hash of the canonical JSON form of the manifest.
    pub fn hash(&self) -> String {
        sha256_hex(serde_json::to_string(self).expect("manifest serializes").as_bytes())
    }

    /// The manifest with its hash, as stored in output files.
    pub fn to_value(&self) -> serde_json::Value {
        let mut v = serde_json::to_value(self).expect("manifest serializes");
        v["sha256"] = self.hash().into();
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hash_depends_on_inputs() {
        let mut a = RunManifest::new("embed", serde_json::json!({}));
        let b = a.clone();
        assert_eq!(a.hash(), b.hash());
        a.add_input(Path::new("g.txt"), b"0 1\n");
        assert_ne!(a.hash(), b.hash());
        assert_eq!(a.to_value()["sha256"], a.hash());
    }
}
