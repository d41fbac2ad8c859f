use std::io::{self, Write};

use clap::ValueEnum;
use comfy_table::presets::UTF8_FULL_CONDENSED;
use comfy_table::Table;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

/// Result of one command: JSON records plus a flat tabular view.
pub struct Output {
    pub records: Vec<Value>,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Output {
    pub fn new(header: &[&str]) -> Self {
        Output { records: Vec::new(), header: header.iter().map(|h| h.to_string()).collect(), rows: Vec::new() }
    }

    /// Extends the header with `prefix0 .. prefix{n-1}`.
    pub fn numbered_columns(&mut self, prefix: &str, n: usize) {
        self.header.extend((0..n).map(|j| format!("{prefix}{j}")));
    }

    /// Pads every row with empty cells up to the header width.
    fn padded_rows(&self) -> impl Iterator<Item = Vec<String>> + '_ {
        let width = self.header.len();
        self.rows.iter().map(move |r| {
            let mut r = r.clone();
            r.resize(width.max(r.len()), String::new());
            r
        })
    }

    pub fn write(&self, format: Format, out: &mut impl Write) -> io::Result<()> {
        match format {
            Format::Json => {
                for r in &self.records {
                    writeln!(out, "{r}")?;
                }
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(&self.header)?;
                for r in self.padded_rows() {
                    w.write_record(&r)?;
                }
                w.flush()?;
            }
            Format::Table => {
                let mut t = Table::new();
                t.load_style(UTF8_FULL_CONDENSED).set_header(&self.header);
                for r in self.padded_rows() {
                    t.add_row(r);
                }
                writeln!(out, "{t}")?;
            }
        }
        Ok(())
    }
}
