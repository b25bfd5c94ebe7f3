//! Word-level constructions that split conjugates and commutators into
//! products of palindromic words.
//!
//! Every constructor returns unreduced words that are palindromes letter
//! for letter; their concatenation is equal to the target after free
//! reduction (or involutive reduction when generators are involutions).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::nilpotent::NormalForm;
use crate::words::{GroupSpec, Word};

fn require_palindrome(p: &Word, spec: &GroupSpec) -> Result<()> {
    if p.is_palindrome() {
        Ok(())
    } else {
        Err(Error::NotPalindrome(p.render(spec)))
    }
}

fn generator(i: usize, spec: &GroupSpec) -> Result<Word> {
    if i == 0 || i > spec.rank() {
        return Err(Error::GeneratorOutOfRange {
            index: i,
            rank: spec.rank(),
        });
    }
    Ok(Word::generator_power(i, 1, spec))
}

/// `v^{-1} p v` as `(v^{-1} p reverse(v)^{-1}) · (reverse(v) v)`.
pub fn conjugate_factor(v: &Word, p: &Word, spec: &GroupSpec) -> Result<[Word; 2]> {
    require_palindrome(p, spec)?;
    let rv = v.reverse();
    Ok([
        v.inverse(spec).concat(p).concat(&rv.inverse(spec)),
        rv.concat(v),
    ])
}

/// `[u, p]` in three palindromes: the conjugate split of `u^{-1} p^{-1} u`, then `p`.
pub fn commutator_factor_3(u: &Word, p: &Word, spec: &GroupSpec) -> Result<[Word; 3]> {
    require_palindrome(p, spec)?;
    let [a, b] = conjugate_factor(u, &p.inverse(spec), spec)?;
    Ok([a, b, p.clone()])
}

/// `[u, pq]` in four palindromes:
/// `(u^{-1} q^{-1} p^{-1} q^{-1} reverse(u)^{-1}) · (reverse(u) q u) · p · q`.
///
/// With `q` empty this is [`commutator_factor_3`] followed by an empty factor.
pub fn commutator_factor_4(u: &Word, p: &Word, q: &Word, spec: &GroupSpec) -> Result<[Word; 4]> {
    require_palindrome(p, spec)?;
    require_palindrome(q, spec)?;
    let qi = q.inverse(spec);
    let middle = qi.concat(&p.inverse(spec)).concat(&qi);
    let ru = u.reverse();
    Ok([
        u.inverse(spec).concat(&middle).concat(&ru.inverse(spec)),
        ru.concat(q).concat(u),
        p.clone(),
        q.clone(),
    ])
}

/// `[g, p] = (ḡ p̄ g) · p` when generators are involutions.
pub fn involutive_commutator_factor(g: &Word, p: &Word, spec: &GroupSpec) -> Result<[Word; 2]> {
    spec.ensure_quotient()?;
    require_palindrome(p, spec)?;
    Ok([g.reverse().concat(&p.reverse()).concat(g), p.clone()])
}

/// `[g, y_i] y_i^a = ḡ y_i g y_i^{1+a}`: one palindrome when `a = 1`,
/// two when `a = 0`.
pub fn involutive_commutator_y(g: &Word, i: usize, a: u8, spec: &GroupSpec) -> Result<Vec<Word>> {
    spec.ensure_quotient()?;
    let y = generator(i, spec)?;
    let head = g.reverse().concat(&y).concat(g);
    Ok(if a % 2 == 1 { vec![head] } else { vec![head, y] })
}

/// `[g, y_i]^h = (h̄ ḡ y_i g h) · (h̄ y_i h)` when generators are involutions.
pub fn conjugated_commutator_factor(
    g: &Word,
    i: usize,
    h: &Word,
    spec: &GroupSpec,
) -> Result<[Word; 2]> {
    spec.ensure_quotient()?;
    let y = generator(i, spec)?;
    let rh = h.reverse();
    Ok([
        rh.concat(&g.reverse()).concat(&y).concat(g).concat(h),
        rh.concat(&y).concat(h),
    ])
}

/// Equality in the free group (or the free product of order-2 groups).
pub fn freely_equal(a: &Word, b: &Word, spec: &GroupSpec) -> bool {
    a.free_reduce(spec) == b.free_reduce(spec)
}

fn product(words: &[Word]) -> Word {
    words.iter().fold(Word::empty(), |acc, w| acc.concat(w))
}

/// One failed trial, with its inputs in the word grammar.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Reproducer {
    pub trial: u64,
    pub spec: String,
    pub inputs: Vec<String>,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub identity: String,
    pub trials: u64,
    pub failure_count: usize,
    pub failures: Vec<Reproducer>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Names of the checks performed by [`run_suite`], in report order.
pub const IDENTITY_NAMES: [&str; 7] = [
    "palindrome_power",
    "conjugate_factor",
    "commutator_factor_3",
    "commutator_factor_4",
    "involutive_commutator_factor",
    "involutive_commutator_y",
    "conjugated_commutator_factor",
];

fn trial_seed(master: u64, identity: usize, trial: u64) -> u64 {
    // splitmix64 over the packed triple
    let mut z = master
        .wrapping_add((identity as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
        .wrapping_add(trial.wrapping_mul(0xD1B5_4A32_D192_ED03));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn random_palindrome<R: Rng>(spec: &GroupSpec, rng: &mut R) -> Word {
    let half = Word::random_with(spec, rng.gen_range(0..5), rng);
    let mid = Word::random_with(spec, rng.gen_range(0..2), rng);
    half.concat(&mid).concat(&half.reverse())
}

fn check_factors(factors: &[Word], target: &Word, count: usize, spec: &GroupSpec) -> Option<String> {
    if factors.len() != count {
        return Some(format!("expected {count} factors, got {}", factors.len()));
    }
    if let Some(bad) = factors.iter().find(|w| !w.is_palindrome()) {
        return Some(format!("factor {} is not a palindrome", bad.render(spec)));
    }
    if !freely_equal(&product(factors), target, spec) {
        return Some("product differs from target".to_string());
    }
    None
}

fn run_trial(identity: usize, rng: &mut ChaCha8Rng) -> (GroupSpec, Vec<Word>, Option<String>) {
    let n = rng.gen_range(1..=5);
    let involutive = identity >= 4;
    let spec = GroupSpec::new(n, 2, involutive).expect("valid rank");
    let word = |rng: &mut ChaCha8Rng| Word::random_with(&spec, rng.gen_range(0..8), rng);
    match identity {
        0 => {
            let p = random_palindrome(&spec, rng);
            let m = rng.gen_range(-5..=5);
            let pm = p.power(m, &spec);
            let reason = if !pm.is_palindrome() {
                Some("power is not a palindrome".to_string())
            } else {
                let g = NormalForm::eval(&p, &spec).expect("letters in range");
                let base = if m < 0 { g.inv() } else { g };
                let expected = base.pow(m.unsigned_abs());
                (NormalForm::eval(&pm, &spec).expect("letters in range") != expected)
                    .then(|| "power evaluates incorrectly".to_string())
            };
            (spec, vec![p, Word::generator_power(1, m, &spec)], reason)
        }
        1 => {
            let v = word(rng);
            let p = random_palindrome(&spec, rng);
            let target = v.inverse(&spec).concat(&p).concat(&v);
            let out = conjugate_factor(&v, &p, &spec).expect("palindromic input");
            let reason = check_factors(&out, &target, 2, &spec);
            (spec, vec![v, p], reason)
        }
        2 => {
            let u = word(rng);
            let p = random_palindrome(&spec, rng);
            let target = Word::commutator(&u, &p, &spec);
            let out = commutator_factor_3(&u, &p, &spec).expect("palindromic input");
            let reason = check_factors(&out, &target, 3, &spec);
            (spec, vec![u, p], reason)
        }
        3 => {
            let u = word(rng);
            let p = random_palindrome(&spec, rng);
            let q = random_palindrome(&spec, rng);
            let target = Word::commutator(&u, &p.concat(&q), &spec);
            let out = commutator_factor_4(&u, &p, &q, &spec).expect("palindromic input");
            let reason = check_factors(&out, &target, 4, &spec);
            (spec, vec![u, p, q], reason)
        }
        4 => {
            let g = word(rng);
            let p = random_palindrome(&spec, rng);
            let target = Word::commutator(&g, &p, &spec);
            let out = involutive_commutator_factor(&g, &p, &spec).expect("involutive");
            let reason = check_factors(&out, &target, 2, &spec);
            (spec, vec![g, p], reason)
        }
        5 => {
            let g = word(rng);
            let i = rng.gen_range(1..=n);
            let a = rng.gen_range(0..=1u8);
            let y = Word::generator_power(i, 1, &spec);
            let target = Word::commutator(&g, &y, &spec).concat(&y.power(a as i64, &spec));
            let out = involutive_commutator_y(&g, i, a, &spec).expect("involutive");
            let reason = check_factors(&out, &target, 2 - a as usize, &spec);
            (spec, vec![g, y, Word::generator_power(1, a as i64, &spec)], reason)
        }
        _ => {
            let g = word(rng);
            let h = word(rng);
            let i = rng.gen_range(1..=n);
            let y = Word::generator_power(i, 1, &spec);
            let target = h
                .inverse(&spec)
                .concat(&Word::commutator(&g, &y, &spec))
                .concat(&h);
            let out = conjugated_commutator_factor(&g, i, &h, &spec).expect("involutive");
            let reason = check_factors(&out, &target, 2, &spec);
            (spec, vec![g, y, h], reason)
        }
    }
}

/// Runs every construction `trials` times on seeded random inputs.
/// Trials run in parallel; each derives its own generator from
/// `(seed, identity, trial)`, so reports do not depend on scheduling.
pub fn run_suite(trials: u64, seed: u64) -> Vec<IdentityReport> {
    IDENTITY_NAMES
        .iter()
        .enumerate()
        .map(|(identity, name)| {
            let failures: Vec<Reproducer> = (0..trials)
                .into_par_iter()
                .filter_map(|trial| {
                    let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(seed, identity, trial));
                    let (spec, inputs, reason) = run_trial(identity, &mut rng);
                    reason.map(|reason| Reproducer {
                        trial,
                        spec: spec.to_string(),
                        inputs: inputs.iter().map(|w| w.render(&spec)).collect(),
                        reason,
                    })
                })
                .collect();
            IdentityReport {
                identity: name.to_string(),
                trials,
                failure_count: failures.len(),
                failures,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(n: usize) -> GroupSpec {
        GroupSpec::free(n, 2).unwrap()
    }

    fn q(n: usize) -> GroupSpec {
        GroupSpec::quotient(n, 2).unwrap()
    }

    fn w(text: &str, spec: &GroupSpec) -> Word {
        Word::parse(text, spec).unwrap()
    }

    fn rendered<const K: usize>(ws: &[Word; K], spec: &GroupSpec) -> Vec<String> {
        ws.iter().map(|x| x.render(spec)).collect()
    }

    #[test]
    fn conjugate_examples() {
        let spec = f(2);
        let out = conjugate_factor(&w("x1", &spec), &w("x2", &spec), &spec).unwrap();
        assert_eq!(rendered(&out, &spec), ["x1^-1 x2 x1^-1", "x1^2"]);
        assert!(freely_equal(&product(&out), &w("x1^-1 x2 x1", &spec), &spec));

        let p = w("x2 x1 x2", &spec);
        let out = conjugate_factor(&Word::empty(), &p, &spec).unwrap();
        assert_eq!(out, [p, Word::empty()]);

        assert!(matches!(
            conjugate_factor(&Word::empty(), &w("x1 x2", &spec), &spec),
            Err(Error::NotPalindrome(_))
        ));
    }

    #[test]
    fn commutator3_examples() {
        let spec = f(2);
        let out = commutator_factor_3(&w("x1", &spec), &w("x2", &spec), &spec).unwrap();
        assert_eq!(rendered(&out, &spec), ["x1^-1 x2^-1 x1^-1", "x1^2", "x2"]);
        assert!(freely_equal(
            &product(&out),
            &w("x1^-1 x2^-1 x1 x2", &spec),
            &spec
        ));
        let trivial = commutator_factor_3(&Word::empty(), &w("x2 x1 x2", &spec), &spec).unwrap();
        assert!(product(&trivial).free_reduce(&spec).is_empty());
    }

    #[test]
    fn commutator4_examples() {
        let spec = f(2);
        let (u, p) = (w("x1 x2^-1", &spec), w("x2 x1 x2", &spec));
        let with_empty = commutator_factor_4(&u, &p, &Word::empty(), &spec).unwrap();
        let three = commutator_factor_3(&u, &p, &spec).unwrap();
        assert_eq!(&with_empty[..3], &three[..]);
        assert!(with_empty[3].is_empty());

        let (u, p, q) = (w("x1", &spec), w("x2", &spec), w("x1", &spec));
        let out = commutator_factor_4(&u, &p, &q, &spec).unwrap();
        assert!(out.iter().all(Word::is_palindrome));
        let target = Word::commutator(&u, &w("x2 x1", &spec), &spec);
        assert!(freely_equal(&product(&out), &target, &spec));
        assert!(commutator_factor_4(&u, &p, &w("x1 x2", &spec), &spec).is_err());
    }

    #[test]
    fn involutive_commutator_examples() {
        let spec = q(3);
        let out =
            involutive_commutator_factor(&w("y1 y2", &spec), &w("y3", &spec), &spec).unwrap();
        assert_eq!(rendered(&out, &spec), ["y2 y1 y3 y1 y2", "y3"]);
        let target = Word::commutator(&w("y1 y2", &spec), &w("y3", &spec), &spec);
        assert!(freely_equal(&product(&out), &target, &spec));

        let p = w("y3", &spec);
        let out = involutive_commutator_factor(&Word::empty(), &p, &spec).unwrap();
        assert_eq!(out, [p.clone(), p]);
        assert!(product(&out).free_reduce(&spec).is_empty());

        assert!(matches!(
            involutive_commutator_factor(&Word::empty(), &w("x1", &f(3)), &f(3)),
            Err(Error::RequiresQuotient(_))
        ));
    }

    #[test]
    fn involutive_y_examples() {
        let spec = q(3);
        let g = w("y2", &spec);
        let one = involutive_commutator_y(&g, 1, 1, &spec).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].render(&spec), "y2 y1 y2");
        let two = involutive_commutator_y(&g, 1, 0, &spec).unwrap();
        let two: Vec<_> = two.iter().map(|x| x.render(&spec)).collect();
        assert_eq!(two, ["y2 y1 y2", "y1"]);
        assert!(involutive_commutator_y(&g, 4, 0, &spec).is_err());
    }

    #[test]
    fn involutive_y_exhaustive_short_words() {
        let spec = q(3);
        let mut words = vec![Word::empty()];
        let mut all = words.clone();
        for _ in 0..4 {
            words = words
                .iter()
                .flat_map(|x| (1..=3).map(move |k| x.concat(&Word::generator_power(k, 1, &spec))))
                .collect();
            all.extend(words.iter().cloned());
        }
        for g in &all {
            for i in 1..=3 {
                for a in 0..=1u8 {
                    let y = Word::generator_power(i, 1, &spec);
                    let target = Word::commutator(g, &y, &spec).concat(&y.power(a as i64, &spec));
                    let out = involutive_commutator_y(g, i, a, &spec).unwrap();
                    assert!(out.iter().all(Word::is_palindrome));
                    assert!(freely_equal(&product(&out), &target, &spec));
                }
            }
        }
    }

    #[test]
    fn conjugated_commutator_examples() {
        let spec = q(3);
        let out = conjugated_commutator_factor(&w("y2", &spec), 1, &w("y3", &spec), &spec).unwrap();
        assert_eq!(rendered(&out, &spec), ["y3 y2 y1 y2 y3", "y3 y1 y3"]);

        let g = w("y2 y3", &spec);
        let plain = conjugated_commutator_factor(&g, 1, &Word::empty(), &spec).unwrap();
        let y1 = w("y1", &spec);
        assert_eq!(plain, involutive_commutator_factor(&g, &y1, &spec).unwrap());
    }

    #[test]
    fn suite_is_clean_and_deterministic() {
        let a = run_suite(500, 42);
        assert_eq!(a.len(), IDENTITY_NAMES.len());
        assert!(a.iter().all(IdentityReport::passed), "{a:?}");
        assert_eq!(a, run_suite(500, 42));
        let single = run_suite(1, 7);
        assert!(single.iter().all(|r| r.trials == 1));
    }

    #[test]
    fn suite_report_serializes() {
        let json = serde_json::to_value(&run_suite(2, 0)[0]).unwrap();
        assert_eq!(json["identity"], "palindrome_power");
        assert_eq!(json["failure_count"], 0);
    }
}
