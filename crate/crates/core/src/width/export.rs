use std::io::Write;

use serde::Serialize;

use super::table::LengthTable;
use crate::error::Result;
use crate::nilpotent::NormalForm;

/// One line of the table export.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub code: u64,
    /// `a_1 … a_n` digits.
    pub alpha: String,
    /// `b_21 b_31 b_32 …` digits in pair order.
    pub beta: String,
    pub length: u8,
    pub witness: String,
}

impl TableRow {
    pub fn for_code(table: &LengthTable, code: u64) -> Result<TableRow> {
        let g = NormalForm::from_code(table.spec(), code)?;
        let bits = g.bit_string()?;
        let (alpha, beta) = bits.split_at(table.spec().rank());
        Ok(TableRow {
            code,
            alpha: alpha.to_string(),
            beta: beta.to_string(),
            length: table.length_of_code(code),
            witness: table.witness(&g)?.render(),
        })
    }
}

impl LengthTable {
    /// Every element in code order.
    pub fn rows(&self) -> Result<Vec<TableRow>> {
        (0..self.len() as u64)
            .map(|code| TableRow::for_code(self, code))
            .collect()
    }
}

/// CSV with columns `code,alpha,beta,length,witness`.
pub fn write_table_csv<W: Write>(table: &LengthTable, out: W) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    for row in table.rows()? {
        writer.serialize(row)?;
    }
    writer.flush()?;
    Ok(())
}
