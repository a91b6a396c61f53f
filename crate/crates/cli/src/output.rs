use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Table,
    Structured,
}

pub struct Sink {
    out: Box<dyn Write>,
    format: Format,
    config: Value,
}

impl Sink {
    pub fn new(path: Option<&Path>, format: Format, config: Value) -> Result<Self> {
        let out: Box<dyn Write> = match path {
            Some(p) => Box::new(BufWriter::new(
                File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
            )),
            None => Box::new(BufWriter::new(io::stdout())),
        };
        Ok(Sink { out, format, config })
    }

    /// Writes one document: a CSV table (header plus one record per row) or
    /// `{config, <key>: payload}`.
    pub fn emit<P: Serialize>(mut self, key: &str, payload: &P, header: &[&str], rows: Vec<Vec<String>>) -> Result<()> {
        match self.format {
            Format::Structured => {
                let doc = json!({ "config": self.config, key: payload });
                serde_json::to_writer_pretty(&mut self.out, &doc)?;
                writeln!(self.out)?;
            }
            Format::Table => {
                let mut w = csv::Writer::from_writer(&mut self.out);
                w.write_record(header)?;
                for row in rows {
                    w.write_record(&row)?;
                }
                w.flush()?;
            }
        }
        self.out.flush()?;
        Ok(())
    }
}

/// `deg:count` pairs separated by spaces, e.g. `11:6 12:1`.
pub fn degree_map<'a>(m: impl IntoIterator<Item = (&'a u32, &'a u64)>) -> String {
    m.into_iter()
        .map(|(k, v)| format!("{k}:{v}"))
        .collect::<Vec<_>>()
        .join(" ")
}
