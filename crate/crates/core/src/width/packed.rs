use crate::error::{Error, Result};
use crate::nilpotent::{code_bits, pair_index, pairs};
use crate::words::GroupSpec;

/// Tables are indexed by `u32` codes.
pub const MAX_CODE_BITS: usize = 32;

/// Multiplication on packed codes of a finite quotient.
///
/// Generator parts add with XOR; the commutator correction `a_i(g)·a_j(h)`
/// is looked up from a `2^n × 2^n` table of beta masks.
#[derive(Debug, Clone)]
pub struct PackedGroup {
    spec: GroupSpec,
    rank: usize,
    bits: usize,
    alpha_mask: u32,
    cross: Vec<u32>,
}

impl PackedGroup {
    pub fn new(spec: &GroupSpec) -> Result<Self> {
        spec.ensure_quotient()?;
        let bits = code_bits(spec);
        if bits > MAX_CODE_BITS {
            return Err(Error::InvalidSpec(format!(
                "{spec} needs {bits}-bit codes, more than the supported {MAX_CODE_BITS}"
            )));
        }
        let n = spec.rank();
        let cross = if spec.class() == 2 {
            let size = 1usize << n;
            let mut cross = vec![0u32; size * size];
            for a in 0..size {
                for b in 0..size {
                    cross[(a << n) | b] = pairs(n)
                        .filter(|&(i, j)| (a >> (i - 1)) & (b >> (j - 1)) & 1 == 1)
                        .fold(0, |m, (i, j)| m | 1 << (n + pair_index(i, j)));
                }
            }
            cross
        } else {
            Vec::new()
        };
        Ok(PackedGroup {
            spec: *spec,
            rank: n,
            bits,
            alpha_mask: ((1u64 << n) - 1) as u32,
            cross,
        })
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn bits(&self) -> usize {
        self.bits
    }

    pub fn order(&self) -> usize {
        1usize << self.bits
    }

    #[inline]
    fn correction(&self, a: u32, b: u32) -> u32 {
        if self.cross.is_empty() {
            0
        } else {
            let idx = (((a & self.alpha_mask) as usize) << self.rank) | (b & self.alpha_mask) as usize;
            self.cross[idx]
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        a ^ b ^ self.correction(a, b)
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        a ^ self.correction(a, a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nilpotent::NormalForm;

    #[test]
    fn agrees_with_normal_form_arithmetic() {
        for n in 1..=3 {
            for class in 1..=2 {
                let spec = GroupSpec::quotient(n, class).unwrap();
                let group = PackedGroup::new(&spec).unwrap();
                for a in 0..group.order() as u32 {
                    let ga = NormalForm::from_code(&spec, a as u64).unwrap();
                    assert_eq!(group.inv(a) as u64, ga.inv().code().unwrap());
                    for b in 0..group.order() as u32 {
                        let gb = NormalForm::from_code(&spec, b as u64).unwrap();
                        let expected = ga.mul(&gb).unwrap().code().unwrap();
                        assert_eq!(group.mul(a, b) as u64, expected);
                    }
                }
            }
        }
    }

    #[test]
    fn rejects_free_mode_and_oversized_codes() {
        assert!(PackedGroup::new(&GroupSpec::free(3, 2).unwrap()).is_err());
        assert!(PackedGroup::new(&GroupSpec::quotient(8, 2).unwrap()).is_err());
        assert!(PackedGroup::new(&GroupSpec::quotient(7, 2).unwrap()).is_ok());
    }
}
