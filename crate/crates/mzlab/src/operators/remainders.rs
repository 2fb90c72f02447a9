//! Remainder structure of iterated scaling derivations on geometric
//! series.
//!
//! For D on k\[\[v\]\] with D(v) = c v, the m-th iterate on (1-v)^(-1) is
//! m! c^m v^m (1-v)^(-(m+1)) plus (1-v)^(-m) p_m(v) for a polynomial
//! p_m. The check computes the remainder as a truncated series,
//! multiplies by (1-v)^m and verifies that everything above degree m
//! vanishes up to the valid order, then extracts p_m.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::rings::{FieldChar, Scalar, TruncSeries, UniPoly};

use super::{iterate_operator, scaling_derivation, Operator};

#[derive(Clone, Debug)]
pub struct ScalingRemainderReport {
    pub m: u64,
    pub c: Scalar,
    pub order: i64,
    /// True when R_m * (1-v)^m has no term of degree > m up to the order.
    pub remainder_is_polynomial: bool,
    pub p_m: UniPoly,
}

pub fn scaling_remainder_check(c: &Scalar, m: u64, order: i64) -> Result<ScalingRemainderReport> {
    if m < 1 {
        return Err(Error::InvalidInput("m must be at least 1".into()));
    }
    if c.characteristic() != FieldChar::Zero {
        return Err(Error::InvalidInput(
            "the scaling derivation check runs over characteristic zero".into(),
        ));
    }
    if order < 4 * m as i64 {
        return Err(Error::Inconclusive(format!(
            "truncation order {order} is too small; need at least {}",
            4 * m
        )));
    }
    let ch = FieldChar::Zero;
    let v = TruncSeries::variable(1, 0, ch, order);
    let one_minus_v = TruncSeries::one(1, ch, order).sub(&v)?;
    let u = one_minus_v.inverse()?;

    let d = scaling_derivation(&v, std::slice::from_ref(c))?;
    let dm_u = iterate_operator(&Operator::Derivation(d), m, &u)?;

    let mut factorial = BigInt::from(1);
    for i in 2..=m {
        factorial *= BigInt::from(i);
    }
    let scale = Scalar::from_bigint(&factorial, ch).mul(&c.pow_i64(m as i64)?);
    let lead = v
        .pow(m)
        .mul(&u.pow(m + 1))?
        .scalar_mul(&scale);

    let remainder = dm_u.sub(&lead)?;
    let product = remainder.mul(&one_minus_v.pow(m))?;

    let mut remainder_is_polynomial = true;
    let mut coeffs = vec![Scalar::zero(ch); m as usize + 1];
    for (idx, coeff) in product.terms() {
        let deg = idx.total_degree();
        if deg > m as i64 {
            remainder_is_polynomial = false;
        } else {
            coeffs[deg as usize] = coeff.clone();
        }
    }
    let p_m = UniPoly::from_coeffs(ch, coeffs);
    Ok(ScalingRemainderReport {
        m,
        c: c.clone(),
        order,
        remainder_is_polynomial,
        p_m,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::MultiIndex;

    /// p_m(v) evaluated as a series in v.
    fn unipoly_in_v(p: &UniPoly, order: i64) -> TruncSeries {
        let ch = p.characteristic();
        TruncSeries::from_terms(
            1,
            ch,
            order,
            p.coeffs()
                .iter()
                .enumerate()
                .map(|(d, c)| (MultiIndex::new(vec![d as i64]), c.clone())),
        )
        .expect("polynomial terms are valid series terms")
    }

    fn q() -> FieldChar {
        FieldChar::Zero
    }

    #[test]
    fn first_remainder_vanishes() {
        // D((1-v)^-1) = c v (1-v)^-2 exactly, so p_1 = 0
        for c in [Scalar::from_int(1, q()), Scalar::from_int(2, q()), Scalar::rational(1, 2)] {
            let report = scaling_remainder_check(&c, 1, 16).unwrap();
            assert!(report.remainder_is_polynomial);
            assert!(report.p_m.is_zero());
        }
    }

    #[test]
    fn second_remainder_is_c_squared_v() {
        // hand computation: D^2((1-v)^-1) = 2 c^2 v^2 (1-v)^-3 + c^2 v (1-v)^-2
        let c = Scalar::rational(1, 2);
        let report = scaling_remainder_check(&c, 2, 16).unwrap();
        assert!(report.remainder_is_polynomial);
        let expected = UniPoly::from_coeffs(
            q(),
            vec![Scalar::zero(q()), c.mul(&c)],
        );
        assert_eq!(report.p_m, expected);
    }

    #[test]
    fn degree_bound_holds_up_to_m_six() {
        for m in 1..=6 {
            for c in [Scalar::from_int(1, q()), Scalar::from_int(2, q()), Scalar::rational(1, 2)] {
                let report = scaling_remainder_check(&c, m, 40).unwrap();
                assert!(report.remainder_is_polynomial, "m = {m}, c = {c}");
                assert!(
                    report.p_m.degree().map_or(0, |d| d) <= m as usize,
                    "degree bound at m = {m}"
                );
            }
        }
    }

    #[test]
    fn identity_reconstructs_exactly() {
        // D^m(u) = m! c^m v^m (1-v)^-(m+1) + (1-v)^-m p_m as truncated series
        let c = Scalar::from_int(2, q());
        let m = 4u64;
        let order = 20i64;
        let report = scaling_remainder_check(&c, m, order).unwrap();
        let v = TruncSeries::variable(1, 0, q(), order);
        let one_minus_v = TruncSeries::one(1, q(), order).sub(&v).unwrap();
        let u = one_minus_v.inverse().unwrap();
        let d = scaling_derivation(&v, std::slice::from_ref(&c)).unwrap();
        let dm_u = iterate_operator(&Operator::Derivation(d), m, &u).unwrap();
        let lead = v
            .pow(m)
            .mul(&u.pow(m + 1))
            .unwrap()
            .scalar_mul(&Scalar::from_int(24, q()).mul(&c.pow_i64(4).unwrap()));
        let tail = u
            .pow(m)
            .mul(&unipoly_in_v(&report.p_m, order))
            .unwrap();
        assert_eq!(dm_u, lead.add(&tail).unwrap());
    }

    #[test]
    fn too_small_order_is_inconclusive() {
        assert!(matches!(
            scaling_remainder_check(&Scalar::from_int(1, q()), 3, 11),
            Err(Error::Inconclusive(_))
        ));
    }
}
