use std::io::Write;

use clap::ValueEnum;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// A small table: every command reports one or more rows over fixed columns.
/// JSON and CSV render the same cells; nested values become compact JSON
/// text inside a CSV cell.
#[derive(Debug, Clone, PartialEq)]
pub struct OutputRecord {
    columns: Vec<&'static str>,
    rows: Vec<Vec<Value>>,
}

fn cell_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

impl OutputRecord {
    pub fn new(columns: Vec<&'static str>) -> Self {
        OutputRecord {
            columns,
            rows: Vec::new(),
        }
    }

    pub fn single(column: &'static str, value: impl Into<Value>) -> Self {
        let mut r = OutputRecord::new(vec![column]);
        r.push(vec![value.into()]);
        r
    }

    pub fn push(&mut self, row: Vec<Value>) {
        assert_eq!(row.len(), self.columns.len(), "row width");
        self.rows.push(row);
    }

    fn objects(&self) -> Vec<Value> {
        self.rows
            .iter()
            .map(|row| {
                let map: Map<String, Value> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(c, v)| (c.to_string(), v.clone()))
                    .collect();
                Value::Object(map)
            })
            .collect()
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> anyhow::Result<()> {
        match format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut *out, &self.objects())?;
                writeln!(out)?;
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(&self.columns)?;
                for row in &self.rows {
                    w.write_record(row.iter().map(cell_text))?;
                }
                w.flush()?;
            }
            Format::Text => self.write_text(out)?,
        }
        Ok(())
    }

    fn write_text(&self, out: &mut dyn Write) -> std::io::Result<()> {
        match (self.columns.len(), self.rows.as_slice()) {
            (1, [row]) => writeln!(out, "{}", cell_text(&row[0])),
            (_, [row]) => {
                for (c, v) in self.columns.iter().zip(row) {
                    writeln!(out, "{c}: {}", cell_text(v))?;
                }
                Ok(())
            }
            _ => {
                let cells: Vec<Vec<String>> = self
                    .rows
                    .iter()
                    .map(|r| r.iter().map(cell_text).collect())
                    .collect();
                let widths: Vec<usize> = (0..self.columns.len())
                    .map(|k| {
                        cells
                            .iter()
                            .map(|r| r[k].len())
                            .chain([self.columns[k].len()])
                            .max()
                            .unwrap_or(0)
                    })
                    .collect();
                let line = |items: Vec<&str>| {
                    items
                        .iter()
                        .zip(&widths)
                        .map(|(s, w)| format!("{s:<w$}"))
                        .collect::<Vec<_>>()
                        .join("  ")
                        .trim_end()
                        .to_string()
                };
                writeln!(out, "{}", line(self.columns.clone()))?;
                for r in &cells {
                    writeln!(out, "{}", line(r.iter().map(String::as_str).collect()))?;
                }
                Ok(())
            }
        }
    }
}
