//! Palindrome normal forms.
//!
//! A palindromic word collects to `u · x_j^{a_0} · reverse(u)` with
//! `u = ∏_{t ≠ j} x_t^{a_t}`, and in class 2 that element has the normal form
//!
//! ```text
//! x_j^{a_0} · ∏_{t ≠ j} x_t^{2a_t}
//!   · ∏_{l < k; k, l ≠ j} z_{kl}^{2 a_k a_l}
//!   · ∏_{t < j} z_{jt}^{a_0 a_t} · ∏_{s > j} z_{sj}^{a_s a_0}
//! ```
//!
//! Modulo squares only `y_j^{a_0}` and the commutators touching `j` survive.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::nilpotent::{exponent_i64, pair_index, pairs, NormalForm};
use crate::words::{GroupSpec, Word};

/// Parameters of a palindrome of pivot type `j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PalindromeForm {
    spec: GroupSpec,
    pivot: usize,
    pivot_exponent: BigInt,
    /// Exponents `a_t` for `t ≠ pivot`, in increasing `t`.
    outer: Vec<BigInt>,
}

impl PalindromeForm {
    pub fn new(
        spec: &GroupSpec,
        pivot: usize,
        pivot_exponent: BigInt,
        outer: Vec<BigInt>,
    ) -> Result<Self> {
        if pivot == 0 || pivot > spec.rank() {
            return Err(Error::GeneratorOutOfRange {
                index: pivot,
                rank: spec.rank(),
            });
        }
        if outer.len() != spec.rank() - 1 {
            return Err(Error::InvalidSpec(format!(
                "pivot form for {spec} needs {} outer exponents, got {}",
                spec.rank() - 1,
                outer.len()
            )));
        }
        let mut f = PalindromeForm {
            spec: *spec,
            pivot,
            pivot_exponent,
            outer,
        };
        if spec.is_quotient() {
            let two = BigInt::from(2);
            f.pivot_exponent = f.pivot_exponent.mod_floor(&two);
            for a in &mut f.outer {
                *a = a.mod_floor(&two);
            }
        }
        Ok(f)
    }

    pub fn from_i64(spec: &GroupSpec, pivot: usize, pivot_exponent: i64, outer: &[i64]) -> Result<Self> {
        Self::new(
            spec,
            pivot,
            BigInt::from(pivot_exponent),
            outer.iter().map(|&a| BigInt::from(a)).collect(),
        )
    }

    /// The all-zero form of the given pivot.
    pub fn trivial(spec: &GroupSpec, pivot: usize) -> Result<Self> {
        Self::new(
            spec,
            pivot,
            BigInt::zero(),
            vec![BigInt::zero(); spec.rank() - 1],
        )
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn pivot(&self) -> usize {
        self.pivot
    }

    pub fn pivot_exponent(&self) -> &BigInt {
        &self.pivot_exponent
    }

    pub fn outer(&self) -> &[BigInt] {
        &self.outer
    }

    /// Exponent of generator `t` in the full parameter vector
    /// (the pivot exponent when `t` is the pivot).
    pub fn parameter(&self, t: usize) -> &BigInt {
        use std::cmp::Ordering::*;
        match t.cmp(&self.pivot) {
            Less => &self.outer[t - 1],
            Equal => &self.pivot_exponent,
            Greater => &self.outer[t - 2],
        }
    }

    /// In quotient mode every form with zero pivot exponent denotes the
    /// identity; those collapse onto the trivial pivot-1 form.
    pub fn canonical(&self) -> PalindromeForm {
        if self.spec.is_quotient() && self.pivot_exponent.is_zero() {
            PalindromeForm::trivial(&self.spec, 1).expect("rank ≥ 1")
        } else {
            self.clone()
        }
    }

    /// Closed-form normal form of the palindrome.
    pub fn normal_form(&self) -> NormalForm {
        let n = self.spec.rank();
        let j = self.pivot;
        let two = BigInt::from(2);
        let alpha = (1..=n)
            .map(|t| {
                if t == j {
                    self.pivot_exponent.clone()
                } else {
                    self.parameter(t) * &two
                }
            })
            .collect();
        let beta = if self.spec.class() == 2 {
            pairs(n)
                .map(|(k, l)| {
                    let prod = self.parameter(k) * self.parameter(l);
                    if k == j || l == j {
                        prod
                    } else {
                        prod * &two
                    }
                })
                .collect()
        } else {
            Vec::new()
        };
        NormalForm::from_parts(&self.spec, alpha, beta).expect("dimensions match spec")
    }

    /// The palindromic word `u x_j^{a_0} reverse(u)`, `u` in increasing generator order.
    pub fn lift(&self) -> Result<Word> {
        let mut u = Word::empty();
        for t in (1..=self.spec.rank()).filter(|&t| t != self.pivot) {
            u = u.concat(&Word::generator_power(
                t,
                exponent_i64(self.parameter(t))?,
                &self.spec,
            ));
        }
        let middle = Word::generator_power(
            self.pivot,
            exponent_i64(&self.pivot_exponent)?,
            &self.spec,
        );
        Ok(u.concat(&middle).concat(&u.reverse()))
    }
}

pub fn palindrome_nf(form: &PalindromeForm) -> NormalForm {
    form.normal_form()
}

pub fn lift(form: &PalindromeForm) -> Result<Word> {
    form.lift()
}

/// All parameter sets, over every pivot, whose palindrome equals `g`.
pub fn recognize(g: &NormalForm) -> Vec<PalindromeForm> {
    let spec = *g.spec();
    (1..=spec.rank())
        .filter_map(|j| candidate(g, j))
        .filter(|f| &f.normal_form() == g)
        .collect()
}

/// The only parameters pivot `j` could use for `g`, if any.
fn candidate(g: &NormalForm, j: usize) -> Option<PalindromeForm> {
    let spec = g.spec();
    let n = spec.rank();
    let outer_of = |t: usize| -> Option<BigInt> {
        if spec.is_quotient() {
            if !g.alpha(t).is_zero() {
                return None;
            }
            if spec.class() == 1 || g.alpha(j).is_zero() {
                return Some(BigInt::zero());
            }
            let (hi, lo) = if t > j { (t, j) } else { (j, t) };
            Some(g.betas()[pair_index(hi, lo)].clone())
        } else {
            let (half, rem) = g.alpha(t).div_rem(&BigInt::from(2));
            rem.is_zero().then_some(half)
        }
    };
    let outer = (1..=n)
        .filter(|&t| t != j)
        .map(outer_of)
        .collect::<Option<Vec<_>>>()?;
    PalindromeForm::new(spec, j, g.alpha(j).clone(), outer).ok()
}

pub fn is_palindrome_element(g: &NormalForm) -> bool {
    !recognize(g).is_empty()
}

/// Every palindrome of a finite quotient, sorted by packed code.
pub fn enumerate(spec: &GroupSpec) -> Result<Vec<NormalForm>> {
    spec.ensure_quotient()?;
    let n = spec.rank();
    let mut out = vec![NormalForm::identity(spec)];
    for j in 1..=n {
        if spec.class() == 1 {
            out.push(NormalForm::generator(spec, j, 1)?);
            continue;
        }
        for mask in 0..1u64 << (n - 1) {
            let outer = (0..n - 1)
                .map(|k| BigInt::from((mask >> k) & 1))
                .collect();
            out.push(PalindromeForm::new(spec, j, BigInt::one(), outer)?.normal_form());
        }
    }
    out.sort_by_key(|g| g.code().expect("quotient"));
    out.dedup();
    Ok(out)
}

/// Packed codes of [`enumerate`].
pub fn enumerate_codes(spec: &GroupSpec) -> Result<Vec<u64>> {
    enumerate(spec)?.iter().map(NormalForm::code).collect()
}

/// Writes the palindrome set as CSV with a single `code` column.
pub fn write_codes_csv<W: std::io::Write>(spec: &GroupSpec, out: W) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(["code"])?;
    for code in enumerate_codes(spec)? {
        writer.write_record([code.to_string()])?;
    }
    writer.flush()?;
    Ok(())
}

/// The palindromic word lifted from a palindrome element's first
/// canonical form.
pub fn palindrome_word(g: &NormalForm) -> Result<Option<Word>> {
    match recognize(g).first() {
        Some(f) => f.canonical().lift().map(Some),
        None => Ok(None),
    }
}
