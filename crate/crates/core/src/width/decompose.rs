use super::Factorization;
use crate::error::{Error, Result};
use crate::identities::{commutator_factor_3, involutive_commutator_y};
use crate::nilpotent::{exponent_i64, NormalForm};
use crate::words::{Letter, Word};

/// Splits `g` as `y_1^{a_1} ⋯ y_n^{a_n} · c` with `c` central and returns
/// the generator word and `c`.
fn split_generators(g: &NormalForm) -> Result<(Word, NormalForm)> {
    let spec = g.spec();
    let mut head = Word::empty();
    for (k, a) in g.alphas().iter().enumerate() {
        head = head.concat(&Word::generator_power(k + 1, exponent_i64(a)?, spec));
    }
    let central = NormalForm::eval(&head, spec)?.inv().mul(g)?;
    debug_assert!(central.is_central());
    Ok((head, central))
}

/// Search-free factorization into at most `2n` palindromes:
/// `g = ∏_j [u_j, y_j] y_j^{a_j}` with `u_j` from the central part, each
/// factor rewritten as `ū_j y_j u_j` (when `a_j = 1`) or
/// `ū_j y_j u_j · y_j` (when `a_j = 0`). Trivial factors are skipped.
pub fn decompose_2n(g: &NormalForm) -> Result<Factorization> {
    let spec = *g.spec();
    spec.ensure_quotient()?;
    spec.ensure_class_two()?;
    let (_, central) = split_generators(g)?;
    let us = central.central_decompose()?;
    let mut factors = Vec::new();
    for (k, u) in us.iter().enumerate() {
        let j = k + 1;
        let a = g.alpha(j).bit(0) as u8;
        if u.is_empty() {
            if a == 1 {
                factors.push(Word::generator_power(j, 1, &spec));
            }
            continue;
        }
        factors.extend(involutive_commutator_y(u, j, a, &spec)?);
    }
    Ok(Factorization::new(g.clone(), factors))
}

/// Factorization of an element of the free class-2 group into at most
/// `4n` palindromes: one power `x_i^{a_i}` per generator followed by a
/// three-palindrome split of every `[u_j, x_j]` of the central part.
pub fn decompose_free(g: &NormalForm) -> Result<Factorization> {
    let spec = *g.spec();
    if spec.is_quotient() {
        return Err(Error::RequiresFree(spec));
    }
    spec.ensure_class_two()?;
    let (_, central) = split_generators(g)?;
    let mut factors: Vec<Word> = g
        .alphas()
        .iter()
        .enumerate()
        .map(|(k, a)| Ok(Word::generator_power(k + 1, exponent_i64(a)?, &spec)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|w| !w.is_empty())
        .collect();
    for (k, u) in central.central_decompose()?.iter().enumerate() {
        if u.is_empty() {
            continue;
        }
        let x = Word::generator_power(k + 1, 1, &spec);
        factors.extend(commutator_factor_3(u, &x, &spec)?);
    }
    Ok(Factorization::new(g.clone(), factors))
}

/// Image of a free-mode factorization in the involutive quotient: every
/// letter `x_i^{±1}` maps to `y_i`, so palindromic words stay palindromic.
pub fn project_factorization(f: &Factorization) -> Result<Factorization> {
    let target = f.target().project_mod2()?;
    let spec = *target.spec();
    let factors = f
        .factors()
        .iter()
        .map(|w| {
            w.letters()
                .iter()
                .map(|l| Letter::new(l.generator(), 1, &spec))
                .collect::<Result<Vec<_>>>()
                .map(Word::from_letters)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Factorization::new(target, factors))
}
