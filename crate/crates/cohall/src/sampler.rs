//! Deterministic sampling of symmetric polynomials, Laurent polynomials and
//! dimension vectors for the identity-check suites. Seeded, so every failure
//! is reproducible from the seed recorded in the report.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::quiver::DimVector;
use crate::rat::{rat_i, Rat};
use crate::symfun::laurent::LaurentPoly;
use crate::symfun::msym::{msym_labels, msym_labels_laurent, msym_laurent, msym_poly};
use crate::symfun::poly::MultiPoly;
use crate::symfun::vars::VarSpec;

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    /// Small nonzero integer coefficient.
    pub fn coeff(&mut self) -> Rat {
        loop {
            let n = self.int(-4, 4);
            if n != 0 {
                return rat_i(n);
            }
        }
    }

    pub fn dim_vector(&mut self, len: usize, lo: i64, hi: i64) -> DimVector {
        DimVector::new((0..len).map(|_| self.int(lo, hi)).collect())
    }

    /// Non-negative grade, componentwise at most `bound`.
    pub fn grade(&mut self, bound: &DimVector) -> DimVector {
        DimVector::new(bound.components().iter().map(|&b| self.int(0, b.max(0))).collect())
    }

    /// A symmetric polynomial: up to `terms` monomial-symmetric summands of
    /// degree at most `max_deg`, with small integer coefficients.
    pub fn sym_poly(&mut self, spec: &VarSpec, max_deg: i64, terms: usize) -> MultiPoly {
        let mut labels = Vec::new();
        for d in 0..=max_deg {
            labels.extend(msym_labels(spec, d));
        }
        let mut p = MultiPoly::zero(spec);
        if labels.is_empty() {
            return p;
        }
        for _ in 0..terms {
            let pick = self.int(0, labels.len() as i64 - 1) as usize;
            p = p.add(&msym_poly(spec, &labels[pick]).scale(&self.coeff()));
        }
        p
    }

    /// A symmetric Laurent polynomial with per-variable exponents in
    /// `[min_e, max_e]`.
    pub fn sym_laurent(&mut self, spec: &VarSpec, min_e: i32, max_e: i32, terms: usize) -> LaurentPoly {
        let labels = msym_labels_laurent(spec, min_e, max_e);
        let mut p = LaurentPoly::zero(spec);
        if labels.is_empty() {
            return p;
        }
        for _ in 0..terms {
            let pick = self.int(0, labels.len() as i64 - 1) as usize;
            p = p.add(&msym_laurent(spec, &labels[pick]).scale(&self.coeff()));
        }
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampling_is_deterministic() {
        let spec = VarSpec::new(&DimVector::new(vec![2])).unwrap();
        let mut s1 = Sampler::new(42);
        let mut s2 = Sampler::new(42);
        let p1 = s1.sym_poly(&spec, 3, 2);
        let p2 = s2.sym_poly(&spec, 3, 2);
        assert_eq!(p1, p2);
        assert!(p1.is_symmetric());
        let l1 = s1.sym_laurent(&spec, -2, 2, 2);
        let l2 = s2.sym_laurent(&spec, -2, 2, 2);
        assert_eq!(l1, l2);
        assert!(l1.is_symmetric());
    }
}
