use std::collections::BTreeMap;

use rayon::prelude::*;

use super::packed::{PackedGroup, MAX_CODE_BITS};
use super::Factorization;
use crate::error::{Error, Result};
use crate::nilpotent::{code_bits, NormalForm};
use crate::palindromes;
use crate::words::{GroupSpec, Word};

const UNSET: u8 = u8::MAX;

/// Largest rank searched by default, per class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RankLimits {
    pub class1: usize,
    pub class2: usize,
}

impl Default for RankLimits {
    fn default() -> Self {
        RankLimits {
            class1: 20,
            class2: 6,
        }
    }
}

impl RankLimits {
    /// Raises (or lowers) both caps to `rank`.
    pub fn with_override(rank: usize) -> Self {
        RankLimits {
            class1: rank,
            class2: rank,
        }
    }

    pub fn limit_for(&self, class: u8) -> usize {
        if class == 1 {
            self.class1
        } else {
            self.class2
        }
    }

    pub fn check(&self, spec: &GroupSpec) -> Result<()> {
        spec.ensure_quotient()?;
        let limit = self.limit_for(spec.class());
        if spec.rank() > limit {
            return Err(Error::RankAboveLimit {
                rank: spec.rank(),
                class: spec.class(),
                limit,
            });
        }
        if code_bits(spec) > MAX_CODE_BITS {
            // no override gets past the table index width
            let hard = (1..=spec.rank())
                .rev()
                .find(|&n| {
                    GroupSpec::quotient(n, spec.class())
                        .map(|s| code_bits(&s) <= MAX_CODE_BITS)
                        .unwrap_or(false)
                })
                .unwrap_or(1);
            return Err(Error::RankAboveLimit {
                rank: spec.rank(),
                class: spec.class(),
                limit: hard,
            });
        }
        Ok(())
    }
}

/// Rough bytes needed by [`build_length_table`]: one length byte and two
/// 4-byte parent entries per element.
pub fn memory_estimate(spec: &GroupSpec) -> u128 {
    9u128 << code_bits(spec)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct BuildOptions {
    pub limits: RankLimits,
    /// Use rayon for the large levels. The result is bit-identical either way.
    pub parallel: bool,
}

/// Exact palindromic length of every element of a finite quotient, with
/// one parent edge per element for witness extraction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LengthTable {
    spec: GroupSpec,
    lengths: Vec<u8>,
    pred: Vec<u32>,
    pal: Vec<u32>,
}

impl LengthTable {
    pub(crate) fn from_raw(
        spec: GroupSpec,
        lengths: Vec<u8>,
        pred: Vec<u32>,
        pal: Vec<u32>,
    ) -> Self {
        LengthTable {
            spec,
            lengths,
            pred,
            pal,
        }
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    /// Number of elements (the group order).
    pub fn len(&self) -> usize {
        self.lengths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lengths.is_empty()
    }

    pub fn lengths(&self) -> &[u8] {
        &self.lengths
    }

    pub fn length_of_code(&self, code: u64) -> u8 {
        self.lengths[code as usize]
    }

    /// `(predecessor, palindrome)` with `code = predecessor · palindrome`;
    /// `None` for the identity.
    pub fn parent(&self, code: u64) -> Option<(u64, u64)> {
        (code != 0).then(|| {
            let c = code as usize;
            (self.pred[c] as u64, self.pal[c] as u64)
        })
    }

    fn code_of(&self, g: &NormalForm) -> Result<u64> {
        self.spec.ensure_same(g.spec())?;
        g.code()
    }

    pub fn palindromic_length(&self, g: &NormalForm) -> Result<u8> {
        Ok(self.length_of_code(self.code_of(g)?))
    }

    pub fn width(&self) -> u8 {
        self.lengths.iter().copied().max().unwrap_or(0)
    }

    /// Element count per length value.
    pub fn spectrum(&self) -> BTreeMap<u8, u64> {
        let mut hist = BTreeMap::new();
        for &l in &self.lengths {
            *hist.entry(l).or_insert(0) += 1;
        }
        hist
    }

    /// Palindrome codes `p_1, …, p_k` with `code = p_1 ⋯ p_k`, `k` minimal.
    pub fn witness_codes(&self, code: u64) -> Vec<u64> {
        let mut factors = Vec::with_capacity(self.length_of_code(code) as usize);
        let mut current = code;
        while let Some((pred, pal)) = self.parent(current) {
            factors.push(pal);
            current = pred;
        }
        factors.reverse();
        factors
    }

    /// A shortest factorization of `g` into lifted palindromic words.
    pub fn witness(&self, g: &NormalForm) -> Result<Factorization> {
        let code = self.code_of(g)?;
        let factors = self
            .witness_codes(code)
            .into_iter()
            .map(|p| palindrome_word(&self.spec, p))
            .collect::<Result<Vec<_>>>()?;
        Ok(Factorization::new(g.clone(), factors))
    }

    /// True iff no product of fewer than `bound` palindromes equals `g`.
    pub fn verify_minimum(&self, g: &NormalForm, bound: u32) -> Result<bool> {
        Ok(self.palindromic_length(g)? as u32 >= bound)
    }
}

/// The lifted word of the palindrome with packed `code`.
pub fn palindrome_word(spec: &GroupSpec, code: u64) -> Result<Word> {
    let g = NormalForm::from_code(spec, code)?;
    palindromes::palindrome_word(&g)?
        .ok_or_else(|| Error::NotPalindrome(g.render()))
}

/// Breadth-first search from the identity over right multiplication by
/// the non-trivial palindromes. Among all shortest last steps an element
/// keeps the one with the smallest palindrome code (which fixes the
/// predecessor too).
pub fn build_length_table(spec: &GroupSpec, options: &BuildOptions) -> Result<LengthTable> {
    options.limits.check(spec)?;
    let group = PackedGroup::new(spec)?;
    let palindromes: Vec<u32> = palindromes::enumerate_codes(spec)?
        .into_iter()
        .filter(|&c| c != 0)
        .map(|c| c as u32)
        .collect();
    let inverses: Vec<u32> = palindromes.iter().map(|&p| group.inv(p)).collect();

    let order = group.order();
    let mut lengths = vec![UNSET; order];
    let mut pred = vec![0u32; order];
    let mut pal = vec![0u32; order];
    lengths[0] = 0;
    let mut frontier = vec![0u32];
    let mut remaining = order - 1;
    let mut level: u8 = 0;

    while !frontier.is_empty() && remaining > 0 {
        let next_level = level
            .checked_add(1)
            .filter(|&l| l < UNSET)
            .ok_or_else(|| Error::InvalidSpec(format!("{spec}: lengths exceed 8 bits")))?;
        let pull = options.parallel && frontier.len().saturating_mul(4) >= remaining;
        let next = if pull {
            // every unreached element looks for its smallest palindrome
            // leading back into the frontier
            let found: Vec<(u32, u32, u32)> = (0..order as u32)
                .into_par_iter()
                .filter(|&g| lengths[g as usize] == UNSET)
                .filter_map(|g| {
                    palindromes.iter().zip(&inverses).find_map(|(&p, &p_inv)| {
                        let h = group.mul(g, p_inv);
                        (lengths[h as usize] == level).then_some((g, h, p))
                    })
                })
                .collect();
            let mut next = Vec::with_capacity(found.len());
            for (g, h, p) in found {
                lengths[g as usize] = next_level;
                pred[g as usize] = h;
                pal[g as usize] = p;
                next.push(g);
            }
            next
        } else {
            let mut next = Vec::new();
            for &h in &frontier {
                for &p in &palindromes {
                    let g = group.mul(h, p) as usize;
                    if lengths[g] == UNSET {
                        lengths[g] = next_level;
                        pred[g] = h;
                        pal[g] = p;
                        next.push(g as u32);
                    } else if lengths[g] == next_level && (p, h) < (pal[g], pred[g]) {
                        pred[g] = h;
                        pal[g] = p;
                    }
                }
            }
            next.sort_unstable();
            next
        };
        remaining -= next.len();
        frontier = next;
        level = next_level;
    }

    if remaining > 0 {
        return Err(Error::InvalidSpec(format!(
            "{spec}: {remaining} elements unreachable by palindromes"
        )));
    }
    Ok(LengthTable::from_raw(*spec, lengths, pred, pal))
}

/// Largest palindromic length in the quotient.
pub fn palindromic_width(spec: &GroupSpec, options: &BuildOptions) -> Result<u8> {
    Ok(build_length_table(spec, options)?.width())
}

pub fn spectrum(spec: &GroupSpec, options: &BuildOptions) -> Result<BTreeMap<u8, u64>> {
    Ok(build_length_table(spec, options)?.spectrum())
}
