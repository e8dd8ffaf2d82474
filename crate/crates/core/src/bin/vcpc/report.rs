use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use serde::Serialize;
use serde_json::{json, Value};

use crate::Format;

pub enum Failure {
    Usage(String),
    Domain(vcpc::Error),
}

impl From<vcpc::Error> for Failure {
    fn from(e: vcpc::Error) -> Self {
        match e {
            vcpc::Error::Config(msg) => Failure::Usage(msg),
            e => Failure::Domain(e),
        }
    }
}

pub type Outcome<T = ()> = Result<T, Failure>;

/// Output directory, effective settings and the files written so far.
pub struct Ctx {
    pub out: PathBuf,
    format: Format,
    seed: Option<u64>,
    threads: Option<usize>,
    written: Vec<String>,
}

impl Ctx {
    pub fn new(out: PathBuf, format: Format, seed: Option<u64>, threads: Option<usize>) -> Self {
        Ctx { out, format, seed, threads, written: Vec::new() }
    }

    /// `--seed` if given, else `fallback`.
    pub fn seed_or(&self, fallback: u64) -> u64 {
        self.seed.unwrap_or(fallback)
    }

    pub fn write(&mut self, name: &str, bytes: impl AsRef<[u8]>) -> Outcome {
        fs::create_dir_all(&self.out).map_err(|e| io_failure(&self.out, e))?;
        let path = self.out.join(name);
        fs::write(&path, bytes).map_err(|e| io_failure(&path, e))?;
        self.written.push(name.to_string());
        Ok(())
    }

    pub fn write_json(&mut self, name: &str, value: &impl Serialize) -> Outcome {
        let text = serde_json::to_string_pretty(value).map_err(vcpc::Error::from)? + "\n";
        self.write(name, text)
    }

    pub fn write_csv<T: Serialize>(&mut self, name: &str, rows: &[T]) -> Outcome {
        let mut w = csv::Writer::from_writer(Vec::new());
        for r in rows {
            w.serialize(r).map_err(vcpc::Error::from)?;
        }
        let bytes = w.into_inner().map_err(|e| io_failure(&self.out.join(name), e.into_error()))?;
        self.write(name, bytes)
    }

    /// Writes `<command>.manifest.json` with the effective configuration and
    /// prints the one-line summary.
    pub fn finish(mut self, command: &str, config: Value, summary: &impl Serialize) -> Outcome {
        let summary_value = serde_json::to_value(summary).map_err(vcpc::Error::from)?;
        let manifest = json!({
            "tool": "vcpc",
            "version": env!("CARGO_PKG_VERSION"),
            "command": command,
            "seed": self.seed,
            "threads": self.threads,
            "config": config,
            "outputs": self.written,
            "summary": summary_value,
        });
        self.write_json(&format!("{command}.manifest.json"), &manifest)?;
        self.print(&[summary])
    }

    /// Prints rows to stdout in the chosen format.
    pub fn print<T: Serialize>(&self, rows: &[T]) -> Outcome {
        let stdout = io::stdout();
        let mut out = stdout.lock();
        let res = match self.format {
            Format::Json => {
                let value = if rows.len() == 1 { serde_json::to_value(&rows[0]) } else { serde_json::to_value(rows) };
                value
                    .and_then(|v| serde_json::to_writer_pretty(&mut out, &v))
                    .map_err(vcpc::Error::from)
                    .and_then(|_| writeln!(out).map_err(stdout_error))
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(&mut out);
                rows.iter()
                    .try_for_each(|r| w.serialize(r))
                    .map_err(vcpc::Error::from)
                    .and_then(|_| w.flush().map_err(stdout_error))
            }
        };
        res.map_err(Failure::from)
    }
}

fn io_failure(path: &std::path::Path, e: io::Error) -> Failure {
    Failure::Domain(vcpc::Error::Io { path: path.to_path_buf(), source: e })
}

fn stdout_error(e: io::Error) -> vcpc::Error {
    vcpc::Error::Io { path: "<stdout>".into(), source: e }
}
