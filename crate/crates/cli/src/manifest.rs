use anyhow::{Context, Result};
use serde::Serialize;
use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Instant;

/// Record written next to every primary output, sufficient to rerun it.
#[derive(Debug, Serialize)]
pub struct RunManifest<P: Serialize> {
    pub command: &'static str,
    pub argv: Vec<String>,
    pub parameters: P,
    pub tool_version: &'static str,
    pub seed: Option<u64>,
    pub outputs: Vec<PathBuf>,
    pub wall_clock_seconds: f64,
}

/// `<out>.manifest.json`.
pub fn manifest_path(out: &Path) -> PathBuf {
    let mut name = OsString::from(out.as_os_str());
    name.push(".manifest.json");
    PathBuf::from(name)
}

pub fn write<P: Serialize>(
    command: &'static str,
    parameters: P,
    seed: Option<u64>,
    outputs: Vec<PathBuf>,
    started: Instant,
) -> Result<()> {
    let primary = outputs.first().context("no outputs to record")?.clone();
    let manifest = RunManifest {
        command,
        argv: std::env::args().collect(),
        parameters,
        tool_version: env!("CARGO_PKG_VERSION"),
        seed,
        outputs,
        wall_clock_seconds: started.elapsed().as_secs_f64(),
    };
    let path = manifest_path(&primary);
    let text = serde_json::to_string_pretty(&manifest)? + "\n";
    std::fs::write(&path, text).with_context(|| format!("writing {}", path.display()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn appends_suffix() {
        assert_eq!(
            manifest_path(Path::new("runs/code.json")),
            PathBuf::from("runs/code.json.manifest.json")
        );
    }
}
