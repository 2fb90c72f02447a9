//! A common interface over the two carrier rings (Laurent polynomials and
//! truncated power series) so that operator and local-finiteness machinery
//! can be written once.

use std::fmt;

use crate::error::Result;
use crate::linalg::SparseVec;

use super::laurent::LaurentPoly;
use super::multiindex::MultiIndex;
use super::scalar::{FieldChar, Scalar};
use super::series::TruncSeries;

pub trait Carrier: Clone + PartialEq + fmt::Display + fmt::Debug {
    fn nvars(&self) -> usize;
    fn characteristic(&self) -> FieldChar;
    fn is_zero(&self) -> bool;
    fn coeff(&self, a: &MultiIndex) -> Scalar;
    /// Sparse coefficient vector over the monomial basis.
    fn term_map(&self) -> SparseVec;
    /// Rebuilds an element with the same ring context as `self`.
    fn with_terms(&self, terms: SparseVec) -> Self;
    fn try_add(&self, other: &Self) -> Result<Self>;
    fn try_sub(&self, other: &Self) -> Result<Self>;
    fn try_mul(&self, other: &Self) -> Result<Self>;
    fn neg(&self) -> Self;
    fn scalar_mul(&self, s: &Scalar) -> Self;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn partial_derivative(&self, i: usize) -> Self;
    fn substitute(&self, images: &[Self]) -> Result<Self>;
    /// True when the element is a unit of the carrier ring.
    fn is_unit(&self) -> bool;
    /// The truncation order for truncated carriers, None for exact ones.
    fn truncation_order(&self) -> Option<i64>;
}

impl Carrier for LaurentPoly {
    fn nvars(&self) -> usize {
        LaurentPoly::nvars(self)
    }

    fn characteristic(&self) -> FieldChar {
        LaurentPoly::characteristic(self)
    }

    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }

    fn coeff(&self, a: &MultiIndex) -> Scalar {
        LaurentPoly::coeff(self, a)
    }

    fn term_map(&self) -> SparseVec {
        self.terms().map(|(i, c)| (i.clone(), c.clone())).collect()
    }

    fn with_terms(&self, terms: SparseVec) -> Self {
        LaurentPoly::from_terms(self.nvars(), self.characteristic(), terms)
            .expect("terms from the same ring")
    }

    fn try_add(&self, other: &Self) -> Result<Self> {
        self.add(other)
    }

    fn try_sub(&self, other: &Self) -> Result<Self> {
        self.sub(other)
    }

    fn try_mul(&self, other: &Self) -> Result<Self> {
        self.mul(other)
    }

    fn neg(&self) -> Self {
        LaurentPoly::neg(self)
    }

    fn scalar_mul(&self, s: &Scalar) -> Self {
        LaurentPoly::scalar_mul(self, s)
    }

    fn zero_like(&self) -> Self {
        LaurentPoly::zero(self.nvars(), self.characteristic())
    }

    fn one_like(&self) -> Self {
        LaurentPoly::one(self.nvars(), self.characteristic())
    }

    fn partial_derivative(&self, i: usize) -> Self {
        LaurentPoly::partial_derivative(self, i)
    }

    fn substitute(&self, images: &[Self]) -> Result<Self> {
        LaurentPoly::substitute(self, images)
    }

    fn is_unit(&self) -> bool {
        self.as_unit().is_some()
    }

    fn truncation_order(&self) -> Option<i64> {
        None
    }
}

impl Carrier for TruncSeries {
    fn nvars(&self) -> usize {
        TruncSeries::nvars(self)
    }

    fn characteristic(&self) -> FieldChar {
        TruncSeries::characteristic(self)
    }

    fn is_zero(&self) -> bool {
        TruncSeries::is_zero(self)
    }

    fn coeff(&self, a: &MultiIndex) -> Scalar {
        TruncSeries::coeff(self, a)
    }

    fn term_map(&self) -> SparseVec {
        self.terms().map(|(i, c)| (i.clone(), c.clone())).collect()
    }

    fn with_terms(&self, terms: SparseVec) -> Self {
        TruncSeries::from_terms(self.nvars(), self.characteristic(), self.order(), terms)
            .expect("terms from the same ring")
    }

    fn try_add(&self, other: &Self) -> Result<Self> {
        self.add(other)
    }

    fn try_sub(&self, other: &Self) -> Result<Self> {
        self.sub(other)
    }

    /// Order-tracked product; unlike the user-facing `mul` this accepts
    /// operands of different truncation orders.
    fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.nvars() != other.nvars() {
            return Err(crate::error::Error::NvarsMismatch(
                self.nvars(),
                other.nvars(),
            ));
        }
        if self.characteristic() != other.characteristic() {
            return Err(crate::error::Error::CharMismatch(
                self.characteristic().to_string(),
                other.characteristic().to_string(),
            ));
        }
        Ok(self.mul_tracked(other))
    }

    fn neg(&self) -> Self {
        TruncSeries::neg(self)
    }

    fn scalar_mul(&self, s: &Scalar) -> Self {
        TruncSeries::scalar_mul(self, s)
    }

    fn zero_like(&self) -> Self {
        TruncSeries::zero(self.nvars(), self.characteristic(), self.order())
    }

    fn one_like(&self) -> Self {
        TruncSeries::one(self.nvars(), self.characteristic(), self.order())
    }

    fn partial_derivative(&self, i: usize) -> Self {
        let mut out = TruncSeries::zero(
            self.nvars(),
            self.characteristic(),
            (self.order() - 1).max(0),
        );
        for (idx, c) in self.terms() {
            let e = idx.get(i);
            if e == 0 {
                continue;
            }
            let mut exps = idx.exponents().to_vec();
            exps[i] -= 1;
            let factor = Scalar::from_int(e, self.characteristic());
            out = out
                .add(
                    &TruncSeries::from_terms(
                        self.nvars(),
                        self.characteristic(),
                        out.order(),
                        vec![(MultiIndex::new(exps), c.mul(&factor))],
                    )
                    .expect("valid term"),
                )
                .expect("same ring");
        }
        out
    }

    fn substitute(&self, images: &[Self]) -> Result<Self> {
        TruncSeries::substitute(self, images)
    }

    fn is_unit(&self) -> bool {
        !self.constant_term().is_zero()
    }

    fn truncation_order(&self) -> Option<i64> {
        Some(self.order())
    }
}
