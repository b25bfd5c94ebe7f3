//! Group words over `x_1^{±1}, …, x_n^{±1}` (free mode) or the involutions
//! `y_1, …, y_n` (quotient mode), with a small text grammar.
//!
//! Grammar, one whitespace-separated token at a time:
//!
//! ```text
//! token := e | <g><k> | <g><k>^<int> | z<i>.<j> | z<i>.<j>^<int>
//! ```
//!
//! `<g>` is `x` in free mode and `y` in quotient mode, `i > j` for
//! commutator tokens, and every power is expanded into unit letters.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Rank, nilpotency class and whether generators are involutions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupSpec {
    rank: usize,
    class: u8,
    quotient: bool,
}

impl GroupSpec {
    pub fn new(rank: usize, class: u8, quotient: bool) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidSpec("rank must be at least 1".into()));
        }
        if !(class == 1 || class == 2) {
            return Err(Error::InvalidSpec(format!(
                "class must be 1 or 2, got {class}"
            )));
        }
        Ok(GroupSpec {
            rank,
            class,
            quotient,
        })
    }

    /// `N_{n,c}` with integer exponents.
    pub fn free(rank: usize, class: u8) -> Result<Self> {
        Self::new(rank, class, false)
    }

    /// `N_{n,c}` modulo the squares of the generators.
    pub fn quotient(rank: usize, class: u8) -> Result<Self> {
        Self::new(rank, class, true)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn class(&self) -> u8 {
        self.class
    }

    pub fn is_quotient(&self) -> bool {
        self.quotient
    }

    /// Same rank and class with the other exponent domain.
    pub fn with_quotient(&self, quotient: bool) -> Self {
        GroupSpec { quotient, ..*self }
    }

    /// Number of basic commutators `z_{ij}`, `i > j` (zero in class 1).
    pub fn pair_count(&self) -> usize {
        if self.class == 2 {
            self.rank * (self.rank - 1) / 2
        } else {
            0
        }
    }

    pub fn generator_prefix(&self) -> char {
        if self.quotient {
            'y'
        } else {
            'x'
        }
    }

    pub(crate) fn ensure_same(&self, other: &GroupSpec) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::SpecMismatch {
                left: *self,
                right: *other,
            })
        }
    }

    pub(crate) fn ensure_quotient(&self) -> Result<()> {
        if self.quotient {
            Ok(())
        } else {
            Err(Error::RequiresQuotient(*self))
        }
    }

    pub(crate) fn ensure_class_two(&self) -> Result<()> {
        if self.class == 2 {
            Ok(())
        } else {
            Err(Error::RequiresClassTwo(*self))
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tilde = if self.quotient { "~" } else { "" };
        write!(f, "N{tilde}({},{})", self.rank, self.class)
    }
}

/// A single generator or its inverse. Generators are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    generator: usize,
    inverted: bool,
}

impl Letter {
    /// Validated constructor; in quotient mode the sign is dropped.
    pub fn new(generator: usize, sign: i8, spec: &GroupSpec) -> Result<Self> {
        if generator == 0 || generator > spec.rank {
            return Err(Error::GeneratorOutOfRange {
                index: generator,
                rank: spec.rank,
            });
        }
        Ok(Letter {
            generator,
            inverted: sign < 0 && !spec.quotient,
        })
    }

    pub const fn pos(generator: usize) -> Self {
        Letter {
            generator,
            inverted: false,
        }
    }

    pub const fn neg(generator: usize) -> Self {
        Letter {
            generator,
            inverted: true,
        }
    }

    pub fn generator(&self) -> usize {
        self.generator
    }

    pub fn sign(&self) -> i8 {
        if self.inverted {
            -1
        } else {
            1
        }
    }

    pub fn is_inverted(&self) -> bool {
        self.inverted
    }

    /// Formal inverse. Involutive letters are their own inverse.
    pub fn inverse(&self, spec: &GroupSpec) -> Self {
        Letter {
            generator: self.generator,
            inverted: !self.inverted && !spec.quotient,
        }
    }

    fn cancels(&self, other: &Letter, spec: &GroupSpec) -> bool {
        self.generator == other.generator
            && if spec.quotient {
                true
            } else {
                self.inverted != other.inverted
            }
    }
}

/// A finite sequence of letters; the empty word is the identity.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    /// `g^{exponent}` expanded into unit letters.
    pub fn generator_power(generator: usize, exponent: i64, spec: &GroupSpec) -> Self {
        let letter = if exponent < 0 && !spec.quotient {
            Letter::neg(generator)
        } else {
            Letter::pos(generator)
        };
        Word(vec![letter; exponent.unsigned_abs() as usize])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reverse(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// Letter-for-letter comparison with the reverse; no reduction is applied.
    pub fn is_palindrome(&self) -> bool {
        let n = self.0.len();
        (0..n / 2).all(|k| self.0[k] == self.0[n - 1 - k])
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// The reversed word with every letter inverted.
    pub fn inverse(&self, spec: &GroupSpec) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse(spec)).collect())
    }

    /// `m`-fold concatenation; negative powers repeat the inverse.
    pub fn power(&self, m: i64, spec: &GroupSpec) -> Word {
        let base = if m < 0 {
            self.inverse(spec)
        } else {
            self.clone()
        };
        let times = m.unsigned_abs() as usize;
        let mut letters = Vec::with_capacity(base.len() * times);
        for _ in 0..times {
            letters.extend_from_slice(&base.0);
        }
        Word(letters)
    }

    /// `a^{-1} b^{-1} a b`.
    pub fn commutator(a: &Word, b: &Word, spec: &GroupSpec) -> Word {
        a.inverse(spec)
            .concat(&b.inverse(spec))
            .concat(a)
            .concat(b)
    }

    /// Deletes cancelling neighbours until none remain. In quotient mode
    /// any two equal adjacent letters cancel.
    pub fn free_reduce(&self, spec: &GroupSpec) -> Word {
        let mut stack: Vec<Letter> = Vec::with_capacity(self.len());
        for &letter in &self.0 {
            match stack.last() {
                Some(top) if top.cancels(&letter, spec) => {
                    stack.pop();
                }
                _ => stack.push(letter),
            }
        }
        Word(stack)
    }

    pub fn is_reduced(&self, spec: &GroupSpec) -> bool {
        self.0.windows(2).all(|w| !w[0].cancels(&w[1], spec))
    }

    /// Largest generator index used, 0 for the empty word.
    pub fn max_generator(&self) -> usize {
        self.0.iter().map(|l| l.generator).max().unwrap_or(0)
    }

    /// Prints the word in the token grammar, compressing runs of equal letters.
    pub fn render(&self, spec: &GroupSpec) -> String {
        if self.0.is_empty() {
            return "e".to_string();
        }
        let g = spec.generator_prefix();
        let mut out = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let letter = self.0[i];
            let mut run = 1;
            while i + run < self.0.len() && self.0[i + run] == letter {
                run += 1;
            }
            let exponent = run as i64 * letter.sign() as i64;
            out.push(if exponent == 1 {
                format!("{g}{}", letter.generator)
            } else {
                format!("{g}{}^{exponent}", letter.generator)
            });
            i += run;
        }
        out.join(" ")
    }

    /// Parses the token grammar into an expanded letter sequence.
    pub fn parse(text: &str, spec: &GroupSpec) -> Result<Word> {
        let mut letters = Vec::new();
        for (position, token) in tokens(text) {
            parse_token(token, position, spec, &mut letters)?;
        }
        Ok(Word(letters))
    }

    /// Uniform independent letters from a seeded ChaCha stream.
    pub fn random(spec: &GroupSpec, length: usize, seed: u64) -> Word {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Self::random_with(spec, length, &mut rng)
    }

    pub fn random_with<R: Rng + ?Sized>(spec: &GroupSpec, length: usize, rng: &mut R) -> Word {
        let letters = (0..length)
            .map(|_| {
                let generator = rng.gen_range(1..=spec.rank);
                if !spec.quotient && rng.gen::<bool>() {
                    Letter::neg(generator)
                } else {
                    Letter::pos(generator)
                }
            })
            .collect();
        Word(letters)
    }
}

impl From<Vec<Letter>> for Word {
    fn from(letters: Vec<Letter>) -> Self {
        Word(letters)
    }
}

/// Free function form of [`Word::parse`].
pub fn parse(text: &str, spec: &GroupSpec) -> Result<Word> {
    Word::parse(text, spec)
}

/// Same as [`Word::random`].
pub fn random_word(spec: &GroupSpec, length: usize, seed: u64) -> Word {
    Word::random(spec, length, seed)
}

fn tokens(text: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut rest = text;
    let mut offset = 0;
    std::iter::from_fn(move || {
        let trimmed = rest.trim_start();
        offset += rest.len() - trimmed.len();
        if trimmed.is_empty() {
            return None;
        }
        let end = trimmed
            .find(char::is_whitespace)
            .unwrap_or(trimmed.len());
        let token = &trimmed[..end];
        let start = offset;
        rest = &trimmed[end..];
        offset += end;
        Some((start, token))
    })
}

fn syntax(position: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        position,
        message: message.into(),
    }
}

fn parse_index(digits: &str, position: usize) -> Result<usize> {
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(syntax(position, format!("expected generator index, found {digits:?}")));
    }
    let value: usize = digits
        .parse()
        .map_err(|_| syntax(position, format!("index {digits} too large")))?;
    if value == 0 {
        return Err(syntax(position, "generator indices start at 1"));
    }
    Ok(value)
}

fn check_range(index: usize, spec: &GroupSpec) -> Result<usize> {
    if index > spec.rank {
        Err(Error::GeneratorOutOfRange {
            index,
            rank: spec.rank,
        })
    } else {
        Ok(index)
    }
}

fn parse_token(
    token: &str,
    position: usize,
    spec: &GroupSpec,
    letters: &mut Vec<Letter>,
) -> Result<()> {
    if token == "e" {
        return Ok(());
    }
    let (base, exponent) = match token.split_once('^') {
        Some((base, exp)) => {
            let value: i64 = exp.parse().map_err(|_| {
                syntax(
                    position + base.len() + 1,
                    format!("invalid exponent {exp:?}"),
                )
            })?;
            (base, value)
        }
        None => (token, 1),
    };
    let mut chars = base.chars();
    let head = chars
        .next()
        .ok_or_else(|| syntax(position, "empty token"))?;
    let body = chars.as_str();
    let unit = match head {
        'z' => {
            let (i, j) = body
                .split_once('.')
                .ok_or_else(|| syntax(position, "commutator token must look like z<i>.<j>"))?;
            let i = check_range(parse_index(i, position + 1)?, spec)?;
            let j = check_range(parse_index(j, position + 1)?, spec)?;
            if i <= j {
                return Err(syntax(
                    position,
                    format!("commutator z{i}.{j} needs i > j"),
                ));
            }
            let gen = |k| Word::from_letters(vec![Letter::pos(k)]);
            Word::commutator(&gen(i), &gen(j), spec)
        }
        'x' | 'y' => {
            if head != spec.generator_prefix() {
                return Err(syntax(
                    position,
                    format!(
                        "generator letter '{head}' used, but {spec} expects '{}'",
                        spec.generator_prefix()
                    ),
                ));
            }
            let k = check_range(parse_index(body, position + 1)?, spec)?;
            Word::from_letters(vec![Letter::pos(k)])
        }
        other => return Err(syntax(position, format!("unexpected character '{other}'"))),
    };
    letters.extend_from_slice(unit.power(exponent, spec).letters());
    Ok(())
}
