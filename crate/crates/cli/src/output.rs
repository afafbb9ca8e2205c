//! Self-describing output files.

use std::io::Write;
use std::path::Path;

use serde::Serialize;
use symrc::{Error, Result};

/// Output serialisation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// What every artifact records about how it was produced.
#[derive(Debug, Clone, Serialize)]
pub struct Meta {
    pub command: String,
    pub version: String,
    pub seed: u64,
    pub rng: String,
    pub config: serde_json::Value,
}

impl Meta {
    pub fn new(command: &str, seed: u64, config: &impl Serialize) -> Result<Self> {
        Ok(Meta {
            command: command.into(),
            version: symrc::VERSION.into(),
            seed,
            rng: symrc::inference::RNG_ALGORITHM.into(),
            config: serde_json::to_value(config).map_err(|e| Error::Internal(e.to_string()))?,
        })
    }

    fn header(&self, extra: &[(String, String)]) -> String {
        let mut s = format!(
            "# command={}\n# version={}\n# seed={}\n# rng={}\n# config={}\n",
            self.command, self.version, self.seed, self.rng, self.config
        );
        for (k, v) in extra {
            s.push_str(&format!("# {k}={v}\n"));
        }
        s
    }
}

fn sink(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(std::fs::File::create(p).map_err(|e| Error::Input(format!("{}: {e}", p.display())))?),
        None => Box::new(std::io::stdout().lock()),
    })
}

fn io(e: impl std::fmt::Display) -> Error {
    Error::Internal(format!("write failed: {e}"))
}

/// Writes rows as CSV below a `# key=value` header.
pub fn write_csv<T: Serialize>(path: Option<&Path>, meta: &Meta, extra: &[(String, String)], rows: &[T]) -> Result<()> {
    let mut out = sink(path)?;
    out.write_all(meta.header(extra).as_bytes()).map_err(io)?;
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row).map_err(io)?;
    }
    w.flush().map_err(io)
}

/// Writes `{"meta": ..., "result": ...}`.
pub fn write_json<T: Serialize>(path: Option<&Path>, meta: &Meta, result: &T) -> Result<()> {
    let mut out = sink(path)?;
    let v = serde_json::json!({ "meta": meta, "result": result });
    serde_json::to_writer_pretty(&mut out, &v).map_err(io)?;
    out.write_all(b"\n").map_err(io)
}

/// Writes pre-rendered CSV text below the metadata header.
pub fn write_raw(path: Option<&Path>, meta: &Meta, extra: &[(String, String)], body: &str) -> Result<()> {
    let mut out = sink(path)?;
    out.write_all(meta.header(extra).as_bytes()).map_err(io)?;
    out.write_all(body.as_bytes()).map_err(io)
}
