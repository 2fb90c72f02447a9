//! Cyclotomic polynomials and root-of-unity order recognition.
//!
//! A monic irreducible factor of degree k can only be cyclotomic of
//! order m when totient(m) = k, and totient(m) >= sqrt(m/2) bounds the
//! search to m <= 2 k^2. Candidates are compared against Phi_m computed
//! by the recursive division Phi_m = (T^m - 1) / prod_{d | m, d < m} Phi_d.

use std::collections::BTreeMap;

use crate::rings::{FieldChar, Scalar, UniPoly};

pub fn totient(m: u64) -> u64 {
    assert!(m >= 1);
    let mut n = m;
    let mut result = m;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// The m-th cyclotomic polynomial over Q.
pub fn cyclotomic_polynomial(m: u64) -> UniPoly {
    fn build(m: u64, memo: &mut BTreeMap<u64, UniPoly>) -> UniPoly {
        if let Some(p) = memo.get(&m) {
            return p.clone();
        }
        let ch = FieldChar::Zero;
        let mut numerator = {
            // T^m - 1
            let mut coeffs = vec![Scalar::zero(ch); m as usize + 1];
            coeffs[0] = Scalar::from_int(-1, ch);
            coeffs[m as usize] = Scalar::one(ch);
            UniPoly::from_coeffs(ch, coeffs)
        };
        for d in 1..m {
            if m.is_multiple_of(d) {
                let phi_d = build(d, memo);
                let (q, r) = numerator.divrem(&phi_d).expect("nonzero divisor");
                debug_assert!(r.is_zero());
                numerator = q;
            }
        }
        memo.insert(m, numerator.clone());
        numerator
    }
    assert!(m >= 1);
    let mut memo = BTreeMap::new();
    build(m, &mut memo)
}

/// If the monic polynomial equals some cyclotomic Phi_m, returns m.
pub fn cyclotomic_order_of(f: &UniPoly) -> Option<u64> {
    let deg = f.degree()? as u64;
    if deg == 0 || !f.is_monic() {
        return None;
    }
    let bound = 2 * deg * deg;
    (1..=bound)
        .filter(|&m| totient(m) == deg)
        .find(|&m| &cyclotomic_polynomial(m) == f)
}
