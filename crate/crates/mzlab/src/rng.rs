//! Deterministic sampling for reproducible experiments.
//!
//! A fixed-seed SplitMix64 keeps every randomized check byte-identical
//! across runs and platforms; no external randomness enters the crate.

use crate::rings::{FieldChar, LaurentPoly, MultiIndex, Scalar};

#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    /// Uniform in \[lo, hi\] (inclusive).
    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        debug_assert!(lo <= hi);
        let span = (hi - lo + 1) as u64;
        lo + (self.next_u64() % span) as i64
    }

    /// A sparse Laurent polynomial with exponents in \[exp_lo, exp_hi\]^n,
    /// up to max_terms terms, small integer coefficients, possibly zero.
    pub fn laurent_poly(
        &mut self,
        nvars: usize,
        ch: FieldChar,
        exp_lo: i64,
        exp_hi: i64,
        max_terms: usize,
    ) -> LaurentPoly {
        let n_terms = self.int_in(0, max_terms as i64) as usize;
        let mut p = LaurentPoly::zero(nvars, ch);
        for _ in 0..n_terms {
            let exps: Vec<i64> = (0..nvars).map(|_| self.int_in(exp_lo, exp_hi)).collect();
            let coeff = Scalar::from_int(self.int_in(-9, 9), ch);
            let term = LaurentPoly::monomial(MultiIndex::new(exps), coeff);
            p = p.add(&term).expect("same ring");
        }
        p
    }

    /// Like `laurent_poly` but guaranteed nonzero.
    pub fn nonzero_laurent_poly(
        &mut self,
        nvars: usize,
        ch: FieldChar,
        exp_lo: i64,
        exp_hi: i64,
        max_terms: usize,
    ) -> LaurentPoly {
        loop {
            let p = self.laurent_poly(nvars, ch, exp_lo, exp_hi, max_terms);
            if !p.is_zero() {
                return p;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_stream() {
        let mut a = SplitMix64::new(42);
        let mut b = SplitMix64::new(42);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn sampled_polynomials_respect_the_window() {
        let mut rng = SplitMix64::new(7);
        for _ in 0..50 {
            let p = rng.laurent_poly(2, FieldChar::Zero, -5, 5, 8);
            for idx in p.support() {
                assert!(idx.exponents().iter().all(|&e| (-5..=5).contains(&e)));
            }
        }
    }
}
