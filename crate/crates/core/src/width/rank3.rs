//! The 64 elements of the rank-3 involutive quotient, and a set of
//! hand-derived palindromic factorizations checked against them.
//!
//! Elements are named by the digit string `a_1 a_2 a_3 b_21 b_31 b_32`.
//! Each shipped row names an element, a word for it and a split of that
//! word into palindromes. Rows marked `verify-by-oracle` carry a word that
//! does not evaluate to the named element (or does not parse); only the
//! row's length bound is checked for those, against the exact table.

use serde::{Deserialize, Serialize};

use super::table::{build_length_table, BuildOptions, LengthTable};
use crate::error::{Error, Result};
use crate::identities::freely_equal;
use crate::nilpotent::NormalForm;
use crate::words::{GroupSpec, Word};

const ROWS_CSV: &str = include_str!("../../data/rank3_rows.csv");

pub fn rank3_spec() -> GroupSpec {
    GroupSpec::quotient(3, 2).expect("valid spec")
}

/// The element with digit string `a1a2a3b1b2b3`.
pub fn element_from_bits(bits: &str) -> Result<NormalForm> {
    let spec = rank3_spec();
    if bits.len() != 6 || !bits.bytes().all(|b| b == b'0' || b == b'1') {
        return Err(Error::Syntax {
            position: 0,
            message: format!("expected six binary digits, got {bits:?}"),
        });
    }
    let code = bits
        .bytes()
        .enumerate()
        .fold(0u64, |acc, (k, b)| acc | (((b - b'0') as u64) << k));
    NormalForm::from_code(&spec, code)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Rank3Record {
    pub code: u64,
    pub bits: String,
    pub element: String,
    pub length: u8,
    pub witness: String,
}

/// Every element with its exact length and a shortest witness.
pub fn rank3_table() -> Result<Vec<Rank3Record>> {
    let table = build_length_table(&rank3_spec(), &BuildOptions::default())?;
    rank3_records(&table)
}

pub fn rank3_records(table: &LengthTable) -> Result<Vec<Rank3Record>> {
    rank3_spec().ensure_same(table.spec())?;
    (0..64u64)
        .map(|code| {
            let g = NormalForm::from_code(table.spec(), code)?;
            Ok(Rank3Record {
                code,
                bits: g.bit_string()?,
                element: g.render(),
                length: table.length_of_code(code),
                witness: table.witness(&g)?.render(),
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RowStatus {
    Exact,
    VerifyByOracle,
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
pub struct CaseRow {
    pub bits: String,
    pub status: RowStatus,
    pub claimed_bound: u8,
    pub word: String,
    /// Palindromic factors separated by `|`.
    pub factors: String,
}

impl CaseRow {
    pub fn factor_texts(&self) -> Vec<&str> {
        self.factors.split('|').map(str::trim).collect()
    }
}

pub fn case_rows() -> Result<Vec<CaseRow>> {
    let mut reader = csv::Reader::from_reader(ROWS_CSV.as_bytes());
    reader
        .deserialize()
        .map(|row| row.map_err(Error::from))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RowCheck {
    pub bits: String,
    pub status: RowStatus,
    pub passed: bool,
    pub detail: String,
}

fn check_exact(row: &CaseRow, target: &NormalForm) -> Result<(bool, String)> {
    let spec = *target.spec();
    let factors = row
        .factor_texts()
        .into_iter()
        .map(|t| Word::parse(t, &spec))
        .collect::<Result<Vec<_>>>()?;
    let word = Word::parse(&row.word, &spec)?;
    let product = factors.iter().fold(Word::empty(), |acc, w| acc.concat(w));
    let mut problems = Vec::new();
    if let Some(bad) = factors.iter().find(|w| !w.is_palindrome()) {
        problems.push(format!("factor {} is not a palindrome", bad.render(&spec)));
    }
    if factors.len() > row.claimed_bound as usize {
        problems.push(format!("{} factors exceed the bound", factors.len()));
    }
    if !freely_equal(&product, &word, &spec) {
        problems.push("factors do not multiply to the word".to_string());
    }
    let value = NormalForm::eval(&word, &spec)?;
    if &value != target {
        problems.push(format!("word evaluates to {}", value.bit_string()?));
    }
    Ok(if problems.is_empty() {
        (true, format!("{} palindromic factors", factors.len()))
    } else {
        (false, problems.join("; "))
    })
}

/// Checks one row: exact rows must evaluate, flagged rows only need the
/// exact length to respect the claimed bound.
pub fn check_row(row: &CaseRow, table: &LengthTable) -> Result<RowCheck> {
    rank3_spec().ensure_same(table.spec())?;
    let target = element_from_bits(&row.bits)?;
    let (passed, detail) = match row.status {
        RowStatus::Exact => check_exact(row, &target)?,
        RowStatus::VerifyByOracle => {
            let exact = table.palindromic_length(&target)?;
            let literal = match Word::parse(&row.word, table.spec()) {
                Ok(w) => format!(
                    "literal word evaluates to {}",
                    NormalForm::eval(&w, table.spec())?.bit_string()?
                ),
                Err(e) => format!("literal word rejected ({e})"),
            };
            (
                exact <= row.claimed_bound,
                format!("exact length {exact} vs bound {}; {literal}", row.claimed_bound),
            )
        }
    };
    Ok(RowCheck {
        bits: row.bits.clone(),
        status: row.status,
        passed,
        detail,
    })
}

pub fn validate_case_rows(table: &LengthTable) -> Result<Vec<RowCheck>> {
    case_rows()?.iter().map(|r| check_row(r, table)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_has_one_element_of_length_four() {
        let records = rank3_table().unwrap();
        assert_eq!(records.len(), 64);
        let long: Vec<_> = records.iter().filter(|r| r.length == 4).collect();
        assert_eq!(long.len(), 1);
        assert_eq!(long[0].bits, "000111");
        assert_eq!(long[0].element, "z2.1 z3.1 z3.2");
        assert_eq!(records[0].length, 0);
        assert_eq!(records[0].witness, "e");
        assert!(records[63].length <= 3);
    }

    #[test]
    fn bits_parse() {
        let g = element_from_bits("000101").unwrap();
        assert_eq!(g.render(), "z2.1 z3.2");
        assert!(element_from_bits("0001").is_err());
        assert!(element_from_bits("00012x").is_err());
    }

    #[test]
    fn shipped_rows_check_out() {
        let table = build_length_table(&rank3_spec(), &BuildOptions::default()).unwrap();
        let checks = validate_case_rows(&table).unwrap();
        assert_eq!(checks.len(), 37);
        for c in &checks {
            assert!(c.passed, "{c:?}");
        }
        let flagged: Vec<_> = checks
            .iter()
            .filter(|c| c.status == RowStatus::VerifyByOracle)
            .map(|c| c.bits.as_str())
            .collect();
        assert_eq!(flagged, ["000110", "110010", "011011", "011111"]);
    }

    #[test]
    fn broken_exact_row_is_reported() {
        let table = build_length_table(&rank3_spec(), &BuildOptions::default()).unwrap();
        let row = CaseRow {
            bits: "000110".into(),
            status: RowStatus::Exact,
            claimed_bound: 3,
            word: "y2 y1 y2 y3 y1 y3 y1".into(),
            factors: "y2 y1 y2 | y3 y1 y3 | y1".into(),
        };
        let check = check_row(&row, &table).unwrap();
        assert!(!check.passed);
        assert!(check.detail.contains("100110"), "{}", check.detail);
    }
}
