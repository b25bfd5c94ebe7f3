//! Commutator-support certificate for the lower bound on
//! `∏_{j<i} z_{ij}`.
//!
//! `b(p_j)` for the maximal-support palindrome of pivot `j` is every
//! commutator touching `j`. A product of palindromes equal to an element
//! whose support is all of `Bas_n` must use every pivot type except at most
//! one, and each used type an even number of times (each contributes `e_j`
//! to the generator part, which must vanish), hence `2(n-1)` factors.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::Result;
use crate::nilpotent::{BSet, NormalForm};
use crate::palindromes::PalindromeForm;
use crate::words::GroupSpec;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "claim", rename_all = "snake_case")]
pub enum Claim {
    /// `b(p_1) ∪ … ∪ b(p_n) = Bas_n`.
    Cover,
    /// The union without `b(p_i)` is still `Bas_n`.
    DropOne { i: usize },
    /// The union without `b(p_i)` and `b(p_j)` misses `z_{ji}`.
    DropTwo { i: usize, j: usize },
    /// Every type `p_j` has generator part `e_j`.
    Parity,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Statement {
    #[serde(flatten)]
    pub claim: Claim,
    pub holds: bool,
    /// For [`Claim::DropTwo`], the commutator `(i, j)` shown to be missing.
    pub missing: Option<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub n: usize,
    pub statements: Vec<Statement>,
    /// The lower bound the statements imply, `2(n-1)`.
    pub implied_bound: usize,
}

impl Certificate {
    pub fn all_hold(&self) -> bool {
        self.statements.iter().all(|s| s.holds)
    }
}

#[cfg(test)]
fn union_except(sets: &[BSet], skip: &[usize]) -> BSet {
    sets.iter()
        .enumerate()
        .filter(|(k, _)| !skip.contains(&(k + 1)))
        .fold(BSet::empty(), |acc, (_, s)| acc.union(s))
}

/// For every commutator, the pivots whose support contains it — but only
/// up to three of them, which is all the drop statements need.
fn holders(supports: &[BSet], n: usize) -> Vec<((usize, usize), Vec<usize>)> {
    BSet::full(n)
        .iter()
        .map(|(a, b)| {
            let who: Vec<usize> = supports
                .iter()
                .enumerate()
                .filter(|(_, s)| s.contains(a, b))
                .map(|(k, _)| k + 1)
                .take(3)
                .collect();
            ((a, b), who)
        })
        .collect()
}

/// Checks the cover, drop-one, drop-two and parity statements for rank `n`.
///
/// A commutator is missing from the union of the supports outside `skip`
/// exactly when all of its holders lie in `skip`, so each statement is
/// read off the holder lists instead of rebuilding unions.
pub fn support_certificate(n: usize) -> Result<Certificate> {
    let spec = GroupSpec::quotient(n.max(1), 2)?;
    let forms: Vec<NormalForm> = (1..=n)
        .map(|j| PalindromeForm::from_i64(&spec, j, 1, &vec![1; n - 1]).map(|f| f.normal_form()))
        .collect::<Result<_>>()?;
    let supports: Vec<BSet> = forms.iter().map(NormalForm::bset).collect::<Result<_>>()?;
    let held = holders(&supports, n);
    let gap = |skip: &[usize]| -> Vec<(usize, usize)> {
        held.iter()
            .filter(|(_, who)| who.len() <= skip.len() && who.iter().all(|k| skip.contains(k)))
            .map(|&(pair, _)| pair)
            .collect()
    };

    let mut statements = vec![Statement {
        claim: Claim::Cover,
        holds: gap(&[]).is_empty(),
        missing: None,
    }];
    for i in 1..=n {
        statements.push(Statement {
            claim: Claim::DropOne { i },
            holds: gap(&[i]).is_empty(),
            missing: None,
        });
    }
    let by_pair: HashMap<(usize, usize), &[usize]> =
        held.iter().map(|(pair, who)| (*pair, who.as_slice())).collect();
    for i in 1..=n {
        for j in i + 1..=n {
            let holds = by_pair
                .get(&(j, i))
                .is_some_and(|who| who.iter().all(|k| *k == i || *k == j));
            statements.push(Statement {
                claim: Claim::DropTwo { i, j },
                holds,
                missing: holds.then_some((j, i)),
            });
        }
    }
    let parity = forms.iter().enumerate().all(|(k, g)| {
        g.alphas()
            .iter()
            .enumerate()
            .all(|(t, a)| a == &num_bigint::BigInt::from((t == k) as u8))
    });
    statements.push(Statement {
        claim: Claim::Parity,
        holds: parity,
        missing: None,
    });

    Ok(Certificate {
        n,
        statements,
        implied_bound: 2 * n.saturating_sub(1),
    })
}
