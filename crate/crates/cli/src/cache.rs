//! On-disk result cache keyed by spec, operation, parameters and version.

use std::path::{Path, PathBuf};

use serde_json::Value;

use crate::output::{canonical, sha256_hex, CODE_VERSION};

pub struct Cache {
    dir: PathBuf,
}

pub fn key(spec: &str, op: &str, params: &Value) -> String {
    let material = canonical(&serde_json::json!({
        "spec": spec,
        "op": op,
        "params": params,
        "version": CODE_VERSION,
    }));
    sha256_hex(material.as_bytes())
}

impl Cache {
    pub fn new(dir: &Path) -> anyhow::Result<Self> {
        std::fs::create_dir_all(dir)?;
        Ok(Cache { dir: dir.to_path_buf() })
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// A stored value, or `None` when absent or unreadable.
    pub fn get(&self, key: &str) -> Option<Value> {
        let text = std::fs::read_to_string(self.path(key)).ok()?;
        serde_json::from_str(&text).ok()
    }

    pub fn put(&self, key: &str, value: &Value) -> anyhow::Result<()> {
        // write then rename so readers never see a partial file
        let tmp = self.dir.join(format!("{key}.json.tmp{}", std::process::id()));
        std::fs::write(&tmp, canonical(value))?;
        std::fs::rename(&tmp, self.path(key))?;
        Ok(())
    }
}
