//! Rendering of command results as JSON, TSV or aligned text.

use std::io::Write;

use anyhow::Result;
use clap::ValueEnum;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
    Pretty,
}

/// A command result: a JSON document plus the same data as a flat table.
pub struct Output {
    pub title: String,
    pub json: Value,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    /// Extra lines printed under the table in pretty mode.
    pub notes: Vec<String>,
}

impl Output {
    pub fn write(&self, format: Format, out: &mut impl Write) -> Result<()> {
        match format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut *out, &self.json)?;
                writeln!(out)?;
            }
            Format::Tsv => {
                writeln!(out, "{}", self.header.join("\t"))?;
                for r in &self.rows {
                    debug_assert_eq!(r.len(), self.header.len());
                    writeln!(out, "{}", r.join("\t"))?;
                }
            }
            Format::Pretty => {
                writeln!(out, "{}", self.title)?;
                let mut widths: Vec<usize> = self.header.iter().map(|h| h.chars().count()).collect();
                for r in &self.rows {
                    for (w, c) in widths.iter_mut().zip(r) {
                        *w = (*w).max(c.chars().count());
                    }
                }
                let line = |cells: Vec<&str>| {
                    cells
                        .iter()
                        .zip(&widths)
                        .map(|(c, w)| format!("{c:<w$}"))
                        .collect::<Vec<_>>()
                        .join("  ")
                        .trim_end()
                        .to_string()
                };
                writeln!(out, "{}", line(self.header.clone()))?;
                for r in &self.rows {
                    writeln!(out, "{}", line(r.iter().map(String::as_str).collect()))?;
                }
                for n in &self.notes {
                    writeln!(out, "{n}")?;
                }
            }
        }
        Ok(())
    }
}

pub fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}
