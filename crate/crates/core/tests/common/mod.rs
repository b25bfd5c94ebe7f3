//! An independent collector for class ≤ 2: bubble-sort the letters into
//! generator order, recording one commutator per exchange of adjacent
//! letters `x_j^s x_i^t = x_i^t x_j^s z_{ji}^{st}` (j > i).
#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use palwidth::{GroupSpec, NormalForm, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Collected {
    pub alpha: Vec<i64>,
    /// `(j, i) -> exponent of z_{ji}`, j > i.
    pub beta: BTreeMap<(usize, usize), i64>,
}

pub fn collect(word: &Word, spec: &GroupSpec) -> Collected {
    let n = spec.rank();
    let mut letters: Vec<(usize, i64)> = word
        .letters()
        .iter()
        .map(|l| (l.generator(), l.sign() as i64))
        .collect();
    let mut beta = BTreeMap::new();
    let mut swapped = true;
    while swapped {
        swapped = false;
        for k in 1..letters.len() {
            let (j, s) = letters[k - 1];
            let (i, t) = letters[k];
            if j > i {
                *beta.entry((j, i)).or_insert(0) += s * t;
                letters.swap(k - 1, k);
                swapped = true;
            }
        }
    }
    let mut alpha = vec![0i64; n];
    for (g, s) in letters {
        alpha[g - 1] += s;
    }
    if spec.class() == 1 {
        beta.clear();
    }
    let modulus = |v: i64| if spec.is_quotient() { v.rem_euclid(2) } else { v };
    Collected {
        alpha: alpha.into_iter().map(modulus).collect(),
        beta: beta
            .into_iter()
            .map(|(k, v)| (k, modulus(v)))
            .filter(|&(_, v)| v != 0)
            .collect(),
    }
}

/// Reads a normal form into the collector's layout.
pub fn observe(g: &NormalForm) -> Collected {
    let spec = g.spec();
    let small = |b: &BigInt| i64::try_from(b).expect("small exponent");
    let mut beta = BTreeMap::new();
    if spec.class() == 2 {
        for j in 1..=spec.rank() {
            for i in 1..j {
                let v = small(g.beta(j, i));
                if v != 0 {
                    beta.insert((j, i), v);
                }
            }
        }
    }
    Collected {
        alpha: g.alphas().iter().map(small).collect(),
        beta,
    }
}
