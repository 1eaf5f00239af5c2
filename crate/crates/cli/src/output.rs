//! CSV tables: header row, LF line endings, floats in 12-significant-digit
//! scientific notation.

use std::path::Path;

use crate::error::CliError;

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(headers: &[&str]) -> Self {
        Self {
            headers: headers.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }
}

pub fn sci(x: f64) -> String {
    format!("{x:.11e}")
}

pub fn render(table: &Table) -> Result<Vec<u8>, CliError> {
    if let Some((i, row)) = table
        .rows
        .iter()
        .enumerate()
        .find(|(_, r)| r.len() != table.headers.len())
    {
        return Err(CliError::Numerical(format!(
            "row {i} has {} fields, header has {}",
            row.len(),
            table.headers.len()
        )));
    }
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    let io = |e: csv::Error| CliError::Io(format!("csv: {e}"));
    w.write_record(&table.headers).map_err(io)?;
    for row in &table.rows {
        w.write_record(row).map_err(io)?;
    }
    w.into_inner().map_err(|e| CliError::Io(format!("csv: {e}")))
}

pub fn emit_csv(table: &Table, path: &Path) -> Result<(), CliError> {
    let bytes = render(table)?;
    std::fs::write(path, bytes).map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}
