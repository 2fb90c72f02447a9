//! The prime-field telescoping sum.
//!
//! If t^(p-1) were u(t) - u(t+1) for some u in F_p\[t\], shifting t through
//! 0..p-1 and adding would force sum_{i=0}^{p-1} (t+i)^(p-1) = 0. Direct
//! expansion shows the sum is the constant -1 instead (at t = 0 this is
//! Fermat's little theorem summed over the nonzero residues), so no such
//! u exists and the image misses t^(p-1) unconditionally.

use crate::error::{Error, Result};
use crate::rings::{FieldChar, Scalar, UniPoly};

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Computes sum_{i=0}^{p-1} (t+i)^(p-1) in F_p\[t\] by direct expansion.
/// The result is always the constant -1.
pub fn charp_telescope(p: u64) -> Result<UniPoly> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let ch = FieldChar::Prime(p);
    let mut acc = UniPoly::zero(ch);
    for i in 0..p {
        let shifted = UniPoly::from_coeffs(
            ch,
            vec![Scalar::from_int(i as i64, ch), Scalar::one(ch)],
        );
        acc = acc.add(&shifted.pow(p - 1));
    }
    Ok(acc)
}
