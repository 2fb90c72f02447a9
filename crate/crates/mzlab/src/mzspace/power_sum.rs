//! The power-sum nilpotency criterion on truncated quotients.
//!
//! For a_1..a_n in a commutative Q-algebra, if the power sums
//! a_1^(r+i) + ... + a_n^(r+i) vanish for i = 1..n then every a_j is
//! nilpotent. The check runs on the truncated polynomial quotient, where
//! nilpotency is decidable: any element with zero constant term dies at
//! the power order + 1, and an element with nonzero constant term never
//! does.

use crate::error::Result;
use crate::rings::TruncSeries;

#[derive(Clone, Debug)]
pub struct PowerSumReport {
    pub r: u64,
    /// None when the hypothesis holds; Some(i) records the first failing
    /// shift i in 1..=n, with the failing exponent r + i.
    pub first_failure: Option<(u64, u64)>,
    pub hypothesis_holds: bool,
    /// Per element: the least m with a_j^m = 0 in the quotient, None if
    /// no power vanishes up to order + 1.
    pub nilpotency: Vec<Option<u64>>,
    pub all_nilpotent: bool,
}

/// Checks the hypothesis sum_j a_j^(r+i) = 0 for i = 1..n and then tests
/// each a_j for nilpotency in the truncated quotient. A report with the
/// hypothesis holding and a non-nilpotent element would falsify the
/// criterion; it never happens.
pub fn power_sum_nilpotency_check(
    elements: &[TruncSeries],
    r: u64,
) -> Result<PowerSumReport> {
    let n = elements.len() as u64;
    let mut first_failure = None;
    if let Some(first) = elements.first() {
        'outer: for i in 1..=n {
            let mut acc = TruncSeries::zero(
                first.nvars(),
                first.characteristic(),
                first.order(),
            );
            for a in elements {
                acc = acc.add(&a.pow(r + i))?;
            }
            if !acc.is_zero() {
                first_failure = Some((i, r + i));
                break 'outer;
            }
        }
    }
    let hypothesis_holds = first_failure.is_none();
    let mut nilpotency = Vec::new();
    for a in elements {
        let cap = a.order() as u64 + 1;
        let mut found = None;
        let mut p = TruncSeries::one(a.nvars(), a.characteristic(), a.order());
        for m in 1..=cap {
            p = p.mul_tracked(a).truncate(a.order());
            if p.is_zero() {
                found = Some(m);
                break;
            }
        }
        nilpotency.push(found);
    }
    let all_nilpotent = nilpotency.iter().all(|m| m.is_some());
    Ok(PowerSumReport {
        r,
        first_failure,
        hypothesis_holds,
        nilpotency,
        all_nilpotent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::{FieldChar, Scalar};

    fn q() -> FieldChar {
        FieldChar::Zero
    }

    #[test]
    fn dual_numbers_epsilon_pair() {
        // Q[e]/(e^2) as the degree-1 truncation: a = (e, -e), r = 1
        let e = TruncSeries::variable(1, 0, q(), 1);
        let report = power_sum_nilpotency_check(&[e.clone(), e.neg()], 1).unwrap();
        assert!(report.hypothesis_holds);
        assert!(report.all_nilpotent);
        assert_eq!(report.nilpotency, vec![Some(2), Some(2)]);
    }

    #[test]
    fn units_fail_the_hypothesis() {
        // a = (1, -1), r = 1: the exponent-2 sum is 1 + 1 = 2, failing at i = 1
        let one = TruncSeries::one(1, q(), 3);
        let report = power_sum_nilpotency_check(&[one.clone(), one.neg()], 1).unwrap();
        assert!(!report.hypothesis_holds);
        assert_eq!(report.first_failure, Some((1, 2)));
        assert!(!report.all_nilpotent);
    }

    #[test]
    fn zero_tuple_is_trivially_nilpotent() {
        let z = TruncSeries::zero(1, q(), 2);
        let report = power_sum_nilpotency_check(&[z.clone(), z.clone(), z], 1).unwrap();
        assert!(report.hypothesis_holds);
        assert!(report.all_nilpotent);
        assert_eq!(report.nilpotency, vec![Some(1), Some(1), Some(1)]);
    }

    #[test]
    fn mixed_nilpotents_with_cancelling_sums() {
        // a = (x, i x, -x, -i x) has no rational i; use instead the pair
        // (x, -x) with r = 3 on a deeper truncation
        let x = TruncSeries::variable(1, 0, q(), 4);
        let report = power_sum_nilpotency_check(&[x.clone(), x.neg()], 3).unwrap();
        // exponents 4 and 5: x^4 + x^4 = 2 x^4, nonzero at order 4
        assert!(!report.hypothesis_holds);
        assert_eq!(report.first_failure, Some((1, 4)));
        // elements are nonetheless nilpotent in the quotient
        assert!(report.all_nilpotent);
    }

    #[test]
    fn scaled_nilpotents_pass() {
        // (2x, -x, -x): sums of equal powers vanish only when the scalar
        // sums do; 2^k - 1 - 1 = 0 only for k = 1, so pick r = 0, n = 1
        let x = TruncSeries::variable(1, 0, q(), 2);
        let a = x.scalar_mul(&Scalar::from_int(2, q()));
        let b = x.neg();
        let report = power_sum_nilpotency_check(&[a, b.clone(), b], 0).unwrap();
        // i = 1: 2x - x - x = 0; hypothesis range is i = 1..3, and
        // i = 2 gives 4x^2 - 2x^2 = 2x^2 = 0 in the order-2 quotient? no:
        // order 2 keeps degree-2 terms, so the sum is nonzero there
        assert!(!report.hypothesis_holds);
        assert_eq!(report.first_failure, Some((2, 2)));
        assert!(report.all_nilpotent);
    }
}
