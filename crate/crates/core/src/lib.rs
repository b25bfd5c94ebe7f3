//! Exact palindromic lengths in class-2 free nilpotent groups `N_{n,2}`
//! and in their quotients by the squares of the generators.
//!
//! - [`words`]: group words, the text grammar, reduction, palindromes.
//! - [`nilpotent`]: collected normal forms and their arithmetic.
//! - [`palindromes`]: palindrome normal forms, recognition, enumeration.
//! - [`width`]: exact length tables, witnesses, certificates, cache.
//! - [`identities`]: word-level palindromic factorization identities.

pub mod error;
pub mod identities;
pub mod nilpotent;
pub mod palindromes;
pub mod width;
pub mod words;

pub use error::{Error, Result};
pub use nilpotent::{BSet, NormalForm};
pub use palindromes::PalindromeForm;
pub use width::{BuildOptions, Factorization, LengthTable, RankLimits};
pub use words::{GroupSpec, Letter, Word};

// The guide under book/ is compiled here so its snippets run as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/words.md")]
    mod words {}
    #[doc = include_str!("../../../book/src/normal-forms.md")]
    mod normal_forms {}
    #[doc = include_str!("../../../book/src/palindromes.md")]
    mod palindromes {}
    #[doc = include_str!("../../../book/src/lengths.md")]
    mod lengths {}
    #[doc = include_str!("../../../book/src/factorizations.md")]
    mod factorizations {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
