//! Palindromic length and width in the finite quotients.
//!
//! [`build_length_table`] runs an exact breadth-first search; the rest of
//! the module turns its output into witnesses, certificates, exports and
//! a binary cache, and provides search-free factorizations to compare
//! against.

mod cache;
mod certificate;
mod decompose;
mod export;
mod packed;
pub mod rank3;
mod table;

pub use cache::{cache_file_name, load_or_build, read_table, write_table, CACHE_MAGIC};
pub use certificate::{support_certificate, Certificate, Claim, Statement};
pub use decompose::{decompose_2n, decompose_free, project_factorization};
pub use export::{write_table_csv, TableRow};
pub use packed::{PackedGroup, MAX_CODE_BITS};
pub use table::{
    build_length_table, memory_estimate, palindrome_word, palindromic_width, spectrum,
    BuildOptions, LengthTable, RankLimits,
};

use crate::error::Result;
use crate::nilpotent::NormalForm;
use crate::words::Word;

/// Palindromic words whose product is `target`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    target: NormalForm,
    factors: Vec<Word>,
}

impl Factorization {
    pub fn new(target: NormalForm, factors: Vec<Word>) -> Self {
        Factorization { target, factors }
    }

    pub fn target(&self) -> &NormalForm {
        &self.target
    }

    pub fn factors(&self) -> &[Word] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn product_word(&self) -> Word {
        self.factors
            .iter()
            .fold(Word::empty(), |acc, w| acc.concat(w))
    }

    /// Every factor is a palindrome and the product evaluates to the target.
    pub fn verify(&self) -> Result<bool> {
        let spec = self.target.spec();
        Ok(self.factors.iter().all(Word::is_palindrome)
            && NormalForm::eval(&self.product_word(), spec)? == self.target)
    }

    /// Factors rendered in the word grammar and joined with ` | `.
    pub fn render(&self) -> String {
        if self.factors.is_empty() {
            return "e".to_string();
        }
        let spec = self.target.spec();
        self.factors
            .iter()
            .map(|w| w.render(spec))
            .collect::<Vec<_>>()
            .join(" | ")
    }
}

/// [`LengthTable::palindromic_length`] as a free function.
pub fn palindromic_length(g: &NormalForm, table: &LengthTable) -> Result<u8> {
    table.palindromic_length(g)
}

pub fn witness(g: &NormalForm, table: &LengthTable) -> Result<Factorization> {
    table.witness(g)
}

pub fn verify_minimum(g: &NormalForm, bound: u32, table: &LengthTable) -> Result<bool> {
    table.verify_minimum(g, bound)
}

/// `∏_{j < i} z_{ij}`: every commutator once.
pub fn all_commutators(spec: &crate::words::GroupSpec) -> Result<NormalForm> {
    spec.ensure_class_two()?;
    NormalForm::from_parts(
        spec,
        vec![Default::default(); spec.rank()],
        vec![num_bigint::BigInt::from(1); spec.pair_count()],
    )
}
