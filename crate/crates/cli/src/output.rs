use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{Duration, SystemTime, UNIX_EPOCH};

use serde::Serialize;
use serde_json::Value;

/// Written next to every output file as `<out>.manifest.json`.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub parameters: BTreeMap<String, Value>,
    pub seed: Option<u64>,
    pub tool_version: &'static str,
    pub wall_time_ms: u128,
    pub timestamp_unix: u64,
}

impl RunManifest {
    pub fn new(command: &str, parameters: BTreeMap<String, Value>, seed: Option<u64>, elapsed: Duration) -> Self {
        RunManifest {
            command: command.to_string(),
            parameters,
            seed,
            tool_version: env!("CARGO_PKG_VERSION"),
            wall_time_ms: elapsed.as_millis(),
            timestamp_unix: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map_or(0, |d| d.as_secs()),
        }
    }
}

pub fn manifest_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".manifest.json");
    PathBuf::from(name)
}

/// Prints `body` or writes it to `out` together with its manifest.
pub fn emit(body: &str, out: Option<&Path>, manifest: RunManifest) -> std::io::Result<()> {
    match out {
        None => {
            print!("{body}");
            Ok(())
        }
        Some(path) => {
            fs::write(path, body)?;
            let m = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
            fs::write(manifest_path(path), m + "\n")
        }
    }
}

pub fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("output serializes") + "\n"
}

pub fn csv_rows(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
}
