use std::collections::BTreeMap;

use serde::Serialize;
use sha2::{Digest, Sha256};

/// Provenance record attached to every report. Contains no timestamps, so
/// identical invocations produce identical bytes.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct RunManifest {
    pub command: String,
    pub arguments: Vec<String>,
    pub seed: Option<u64>,
    pub versions: BTreeMap<String, String>,
    /// SHA-256 of every input file, keyed by the path as given.
    pub input_digests: BTreeMap<String, String>,
    pub outcome: String,
    /// SHA-256 of the compact JSON encoding of the result.
    pub result_digest: Option<String>,
}

impl RunManifest {
    pub fn new(command: impl Into<String>, arguments: Vec<String>) -> Self {
        let versions = BTreeMap::from([
            ("periodrel".to_string(), env!("CARGO_PKG_VERSION").to_string()),
            ("periodrel-core".to_string(), periodrel_core::VERSION.to_string()),
        ]);
        RunManifest {
            command: command.into(),
            arguments,
            seed: None,
            versions,
            input_digests: BTreeMap::new(),
            outcome: String::new(),
            result_digest: None,
        }
    }

    pub fn record_input(&mut self, path: &str, bytes: &[u8]) {
        self.input_digests.insert(path.to_string(), sha256_hex(bytes));
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_of_empty_input() {
        assert_eq!(sha256_hex(b""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    }
}
