//! Normal forms in class-2 free nilpotent groups and their quotients by
//! the squares of the generators.
//!
//! Every element is written uniquely as
//!
//! ```text
//! x_1^{a_1} … x_n^{a_n} · ∏_{j < i} z_{ij}^{b_{ij}},    z_{ij} = [x_i, x_j] = x_i^{-1} x_j^{-1} x_i x_j
//! ```
//!
//! Commutators are central, and pushing `x_j` left past `x_i` (`i > j`)
//! leaves `z_{ij}` behind, so products collect in closed form:
//!
//! ```text
//! a_k(gh)    = a_k(g) + a_k(h)
//! b_{ij}(gh) = b_{ij}(g) + b_{ij}(h) + a_i(g)·a_j(h)      (i > j)
//! ```
//!
//! In the quotient all exponents live in `Z/2`. Class 1 keeps only `a`.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::words::{GroupSpec, Word};

/// Position of `z_{ij}` (`i > j`, 1-based) in lexicographic pair order.
pub fn pair_index(i: usize, j: usize) -> usize {
    debug_assert!(j >= 1 && j < i);
    (i - 1) * (i - 2) / 2 + (j - 1)
}

/// All pairs `(i, j)` with `1 ≤ j < i ≤ n`, in [`pair_index`] order.
pub fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (2..=n).flat_map(|i| (1..i).map(move |j| (i, j)))
}

/// One element of `N_{n,c}` or its square quotient, in collected form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalForm {
    spec: GroupSpec,
    alpha: Vec<BigInt>,
    beta: Vec<BigInt>,
}

impl NormalForm {
    pub fn identity(spec: &GroupSpec) -> Self {
        NormalForm {
            spec: *spec,
            alpha: vec![BigInt::zero(); spec.rank()],
            beta: vec![BigInt::zero(); spec.pair_count()],
        }
    }

    /// Builds an element from raw exponents, reducing mod 2 in quotient mode.
    /// `beta` is indexed by [`pair_index`] and must be empty in class 1.
    pub fn from_parts(spec: &GroupSpec, alpha: Vec<BigInt>, beta: Vec<BigInt>) -> Result<Self> {
        if alpha.len() != spec.rank() || beta.len() != spec.pair_count() {
            return Err(Error::InvalidSpec(format!(
                "{spec} needs {} generator and {} commutator exponents, got {} and {}",
                spec.rank(),
                spec.pair_count(),
                alpha.len(),
                beta.len()
            )));
        }
        let mut g = NormalForm {
            spec: *spec,
            alpha,
            beta,
        };
        g.normalize();
        Ok(g)
    }

    /// Convenience constructor from machine integers.
    pub fn from_i64(spec: &GroupSpec, alpha: &[i64], beta: &[i64]) -> Result<Self> {
        Self::from_parts(
            spec,
            alpha.iter().map(|&a| BigInt::from(a)).collect(),
            beta.iter().map(|&b| BigInt::from(b)).collect(),
        )
    }

    /// `x_generator^{±1}`.
    pub fn generator(spec: &GroupSpec, generator: usize, sign: i8) -> Result<Self> {
        if generator == 0 || generator > spec.rank() {
            return Err(Error::GeneratorOutOfRange {
                index: generator,
                rank: spec.rank(),
            });
        }
        let mut g = Self::identity(spec);
        g.alpha[generator - 1] = BigInt::from(sign);
        g.normalize();
        Ok(g)
    }

    /// `z_{ij}^{exponent}`.
    pub fn commutator(spec: &GroupSpec, i: usize, j: usize, exponent: i64) -> Result<Self> {
        spec.ensure_class_two()?;
        if !(1 <= j && j < i && i <= spec.rank()) {
            return Err(Error::GeneratorOutOfRange {
                index: i.max(j),
                rank: spec.rank(),
            });
        }
        let mut g = Self::identity(spec);
        g.beta[pair_index(i, j)] = BigInt::from(exponent);
        g.normalize();
        Ok(g)
    }

    fn normalize(&mut self) {
        if self.spec.is_quotient() {
            let two = BigInt::from(2);
            for e in self.alpha.iter_mut().chain(self.beta.iter_mut()) {
                *e = e.mod_floor(&two);
            }
        }
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    /// Exponent of `x_i`, 1-based.
    pub fn alpha(&self, i: usize) -> &BigInt {
        &self.alpha[i - 1]
    }

    pub fn alphas(&self) -> &[BigInt] {
        &self.alpha
    }

    /// Exponent of `z_{ij}`, `i > j`.
    pub fn beta(&self, i: usize, j: usize) -> &BigInt {
        &self.beta[pair_index(i, j)]
    }

    pub fn betas(&self) -> &[BigInt] {
        &self.beta
    }

    pub fn is_identity(&self) -> bool {
        self.alpha.iter().chain(&self.beta).all(Zero::is_zero)
    }

    /// True when every generator exponent vanishes.
    pub fn is_central(&self) -> bool {
        self.alpha.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &NormalForm) -> Result<NormalForm> {
        self.spec.ensure_same(&other.spec)?;
        let alpha = self
            .alpha
            .iter()
            .zip(&other.alpha)
            .map(|(a, b)| a + b)
            .collect();
        let beta = pairs(self.spec.rank())
            .zip(self.beta.iter().zip(&other.beta))
            .map(|((i, j), (a, b))| a + b + &self.alpha[i - 1] * &other.alpha[j - 1])
            .collect();
        let mut g = NormalForm {
            spec: self.spec,
            alpha,
            beta,
        };
        g.normalize();
        Ok(g)
    }

    /// `b'_{ij} = -b_{ij} + a_i a_j`, `a' = -a`.
    pub fn inv(&self) -> NormalForm {
        let alpha = self.alpha.iter().map(|a| -a).collect();
        let beta = pairs(self.spec.rank())
            .zip(&self.beta)
            .map(|((i, j), b)| &self.alpha[i - 1] * &self.alpha[j - 1] - b)
            .collect();
        let mut g = NormalForm {
            spec: self.spec,
            alpha,
            beta,
        };
        g.normalize();
        g
    }

    /// Left fold of [`NormalForm::mul`] over the letters of `word`.
    pub fn eval(word: &Word, spec: &GroupSpec) -> Result<NormalForm> {
        let mut acc = NormalForm::identity(spec);
        for letter in word.letters() {
            let g = NormalForm::generator(spec, letter.generator(), letter.sign())?;
            acc = acc.mul(&g)?;
        }
        Ok(acc)
    }

    pub fn pow(&self, exponent: u64) -> NormalForm {
        let mut acc = NormalForm::identity(&self.spec);
        for _ in 0..exponent {
            acc = acc.mul(self).expect("same spec");
        }
        acc
    }

    /// Commutators that occur with nonzero exponent.
    pub fn bset(&self) -> Result<BSet> {
        self.spec.ensure_class_two()?;
        Ok(BSet {
            pairs: pairs(self.spec.rank())
                .zip(&self.beta)
                .filter(|(_, b)| !b.is_zero())
                .map(|(p, _)| p)
                .collect(),
        })
    }

    /// Image in the quotient by the squares of the generators.
    pub fn project_mod2(&self) -> Result<NormalForm> {
        if self.spec.is_quotient() {
            return Err(Error::RequiresFree(self.spec));
        }
        let mut g = self.clone();
        g.spec = self.spec.with_quotient(true);
        g.normalize();
        Ok(g)
    }

    /// Number of nonzero exponents (quotient mode).
    pub fn weight(&self) -> Result<usize> {
        self.spec.ensure_quotient()?;
        Ok(self
            .alpha
            .iter()
            .chain(&self.beta)
            .filter(|e| !e.is_zero())
            .count())
    }

    /// For central `c`, words `u_1..u_n` with `c = [u_1, x_1] ⋯ [u_n, x_n]`,
    /// taking `u_j = ∏_{i > j} x_i^{b_{ij}}`.
    pub fn central_decompose(&self) -> Result<Vec<Word>> {
        self.spec.ensure_class_two()?;
        if !self.is_central() {
            return Err(Error::NotCentral);
        }
        let n = self.spec.rank();
        (1..=n)
            .map(|j| {
                let mut u = Word::empty();
                for i in j + 1..=n {
                    let e = exponent_i64(self.beta(i, j))?;
                    u = u.concat(&Word::generator_power(i, e, &self.spec));
                }
                Ok(u)
            })
            .collect()
    }

    /// Packed code: bit `i-1` holds `a_i`, bit `n + pair_index(i, j)` holds `b_{ij}`.
    pub fn code(&self) -> Result<u64> {
        self.spec.ensure_quotient()?;
        let bits = code_bits(&self.spec);
        if bits > 64 {
            return Err(Error::InvalidSpec(format!(
                "{} does not fit a 64-bit code",
                self.spec
            )));
        }
        Ok(self
            .alpha
            .iter()
            .chain(&self.beta)
            .enumerate()
            .filter(|(_, e)| e.is_one())
            .fold(0u64, |acc, (k, _)| acc | (1 << k)))
    }

    /// Inverse of [`NormalForm::code`].
    pub fn from_code(spec: &GroupSpec, code: u64) -> Result<NormalForm> {
        spec.ensure_quotient()?;
        let bits = code_bits(spec);
        if bits < 64 && code >> bits != 0 {
            return Err(Error::InvalidSpec(format!(
                "code {code} out of range for {spec}"
            )));
        }
        let bit = |k: usize| BigInt::from((code >> k) & 1);
        let n = spec.rank();
        Ok(NormalForm {
            spec: *spec,
            alpha: (0..n).map(bit).collect(),
            beta: (0..spec.pair_count()).map(|k| bit(n + k)).collect(),
        })
    }

    /// Exponents as `a_1..a_n b_21 b_31 b_32 …` digits (quotient mode).
    pub fn bit_string(&self) -> Result<String> {
        self.spec.ensure_quotient()?;
        Ok(self
            .alpha
            .iter()
            .chain(&self.beta)
            .map(|e| if e.is_zero() { '0' } else { '1' })
            .collect())
    }

    /// Renders in the word grammar using `z<i>.<j>` tokens, e.g. `x1^2 x2 z2.1^-3`.
    pub fn render(&self) -> String {
        let g = self.spec.generator_prefix();
        let mut tokens = Vec::new();
        let mut push = |base: String, e: &BigInt| {
            if e.is_one() {
                tokens.push(base);
            } else if !e.is_zero() {
                tokens.push(format!("{base}^{e}"));
            }
        };
        for (k, a) in self.alpha.iter().enumerate() {
            push(format!("{g}{}", k + 1), a);
        }
        for ((i, j), b) in pairs(self.spec.rank()).zip(&self.beta) {
            push(format!("z{i}.{j}"), b);
        }
        if tokens.is_empty() {
            "e".to_string()
        } else {
            tokens.join(" ")
        }
    }

    /// A word evaluating to this element: the generator part followed by
    /// commutator words.
    pub fn to_word(&self) -> Result<Word> {
        let mut w = Word::empty();
        for (k, a) in self.alpha.iter().enumerate() {
            w = w.concat(&Word::generator_power(k + 1, exponent_i64(a)?, &self.spec));
        }
        for ((i, j), b) in pairs(self.spec.rank()).zip(&self.beta) {
            let e = exponent_i64(b)?;
            if e != 0 {
                let x = |k| Word::generator_power(k, 1, &self.spec);
                w = w.concat(&Word::commutator(&x(i), &x(j), &self.spec).power(e, &self.spec));
            }
        }
        Ok(w)
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Free-function forms matching the operation names used elsewhere.
pub fn identity(spec: &GroupSpec) -> NormalForm {
    NormalForm::identity(spec)
}

pub fn mul(a: &NormalForm, b: &NormalForm) -> Result<NormalForm> {
    a.mul(b)
}

pub fn inv(g: &NormalForm) -> NormalForm {
    g.inv()
}

pub fn eval(word: &Word, spec: &GroupSpec) -> Result<NormalForm> {
    NormalForm::eval(word, spec)
}

/// Total number of bits in a packed code.
pub fn code_bits(spec: &GroupSpec) -> usize {
    spec.rank() + spec.pair_count()
}

pub(crate) fn exponent_i64(e: &BigInt) -> Result<i64> {
    e.to_i64()
        .filter(|v| v.unsigned_abs() <= u32::MAX as u64)
        .ok_or_else(|| Error::ExponentTooLarge(e.to_string()))
}

/// A set of basic commutators `z_{ij}`, stored as index pairs `(i, j)`, `i > j`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BSet {
    pairs: BTreeSet<(usize, usize)>,
}

impl BSet {
    pub fn empty() -> Self {
        Self::default()
    }

    /// All `n(n-1)/2` commutators of weight 2.
    pub fn full(n: usize) -> Self {
        BSet {
            pairs: pairs(n).collect(),
        }
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.pairs.contains(&(i, j))
    }

    pub fn insert(&mut self, i: usize, j: usize) -> bool {
        self.pairs.insert((i, j))
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn union(&self, other: &BSet) -> BSet {
        BSet {
            pairs: self.pairs.union(&other.pairs).copied().collect(),
        }
    }

    pub fn difference(&self, other: &BSet) -> BSet {
        BSet {
            pairs: self.pairs.difference(&other.pairs).copied().collect(),
        }
    }

    pub fn is_subset(&self, other: &BSet) -> bool {
        self.pairs.is_subset(&other.pairs)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pairs.iter().copied()
    }
}

impl FromIterator<(usize, usize)> for BSet {
    fn from_iter<T: IntoIterator<Item = (usize, usize)>>(iter: T) -> Self {
        BSet {
            pairs: iter.into_iter().collect(),
        }
    }
}

impl fmt::Display for BSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.iter().map(|(i, j)| format!("z{i}.{j}")).collect();
        write!(f, "{{{}}}", items.join(", "))
    }
}

/// Largest absolute exponent among `a` and `b`.
pub fn max_abs_exponent(g: &NormalForm) -> BigInt {
    g.alpha
        .iter()
        .chain(&g.beta)
        .map(|e| e.abs())
        .max()
        .unwrap_or_default()
}
