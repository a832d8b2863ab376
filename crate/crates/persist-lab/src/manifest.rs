//! Run manifests written next to every output file.

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

/// Everything needed to regenerate an output file.
///
/// Re-running `command_line` reproduces the output byte for byte; only
/// `timestamp` differs between two manifests of the same run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    /// Full argv, program name included.
    pub command_line: Vec<String>,
    /// Subcommand name.
    pub command: String,
    /// Resolved parameter values, defaults filled in.
    pub parameters: Map<String, Value>,
    /// RNG seeds used (empty for deterministic numerics).
    pub seeds: Vec<u64>,
    /// `persist-core` version.
    pub library_version: String,
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
    /// The file this manifest describes.
    pub output: PathBuf,
}

impl RunManifest {
    /// Manifest for `command` writing to `output`, stamped now.
    pub fn new(
        command_line: Vec<String>,
        command: &str,
        parameters: Map<String, Value>,
        seeds: Vec<u64>,
        output: &Path,
    ) -> Self {
        let timestamp = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        RunManifest {
            command_line,
            command: command.to_string(),
            parameters,
            seeds,
            library_version: persist_core::VERSION.to_string(),
            timestamp,
            output: output.to_path_buf(),
        }
    }

    /// `<output>.manifest.json`.
    pub fn sidecar_path(output: &Path) -> PathBuf {
        let mut name = output.as_os_str().to_os_string();
        name.push(".manifest.json");
        PathBuf::from(name)
    }

    /// Write the sidecar as pretty JSON and return its path.
    pub fn write(&self) -> anyhow::Result<PathBuf> {
        let path = Self::sidecar_path(&self.output);
        let mut text = serde_json::to_string_pretty(self)?;
        text.push('\n');
        fs::write(&path, text)?;
        Ok(path)
    }

    /// Read a sidecar back.
    pub fn read(path: &Path) -> anyhow::Result<Self> {
        Ok(serde_json::from_str(&fs::read_to_string(path)?)?)
    }
}
