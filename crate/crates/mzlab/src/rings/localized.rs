//! Elements of the localization k\[\[x\]\]\[x^-1\]: a monomial prefix times a
//! truncated power series, written x^alpha * h with alpha in Z^n.
//!
//! The units of this ring are exactly the elements x^alpha * h with h a
//! unit of k\[\[x\]\], which is why constant-term experiments behave so
//! differently here than on Laurent polynomials: 1/(1-x1) exists as a
//! genuine element.

use std::fmt;

use crate::error::{Error, Result};

use super::display::write_terms;
use super::laurent::LaurentPoly;
use super::multiindex::MultiIndex;
use super::scalar::{FieldChar, Scalar};
use super::series::TruncSeries;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalizedSeries {
    alpha: MultiIndex,
    h: TruncSeries,
}

impl LocalizedSeries {
    pub fn new(alpha: MultiIndex, h: TruncSeries) -> Result<Self> {
        if alpha.len() != h.nvars() {
            return Err(Error::NvarsMismatch(alpha.len(), h.nvars()));
        }
        if h.is_zero() {
            return Ok(Self::zero(h.nvars(), h.characteristic(), h.order()));
        }
        Ok(LocalizedSeries { alpha, h })
    }

    pub fn zero(nvars: usize, ch: FieldChar, order: i64) -> Self {
        LocalizedSeries {
            alpha: MultiIndex::zero(nvars),
            h: TruncSeries::zero(nvars, ch, order),
        }
    }

    pub fn one(nvars: usize, ch: FieldChar, order: i64) -> Self {
        LocalizedSeries {
            alpha: MultiIndex::zero(nvars),
            h: TruncSeries::one(nvars, ch, order),
        }
    }

    pub fn from_series(h: TruncSeries) -> Self {
        LocalizedSeries {
            alpha: MultiIndex::zero(h.nvars()),
            h,
        }
    }

    /// The monomial x^a (a may have negative entries).
    pub fn monomial(a: MultiIndex, c: Scalar, order: i64) -> Self {
        let nvars = a.len();
        LocalizedSeries {
            alpha: a,
            h: TruncSeries::constant(c, nvars, order),
        }
    }

    /// Embeds a Laurent polynomial: splits off the componentwise-minimal
    /// negative exponents as the monomial prefix.
    pub fn from_laurent(p: &LaurentPoly, order: i64) -> Result<Self> {
        if p.is_zero() {
            return Ok(Self::zero(p.nvars(), p.characteristic(), order));
        }
        let nvars = p.nvars();
        let mut mins = vec![0i64; nvars];
        for idx in p.support() {
            for (i, &e) in idx.exponents().iter().enumerate() {
                mins[i] = mins[i].min(e);
            }
        }
        let alpha = MultiIndex::new(mins);
        let h = TruncSeries::from_terms(
            nvars,
            p.characteristic(),
            order,
            p.terms().map(|(idx, c)| (idx.sub(&alpha), c.clone())),
        )?;
        Self::new(alpha, h)
    }

    pub fn alpha(&self) -> &MultiIndex {
        &self.alpha
    }

    pub fn series_part(&self) -> &TruncSeries {
        &self.h
    }

    pub fn nvars(&self) -> usize {
        self.h.nvars()
    }

    pub fn characteristic(&self) -> FieldChar {
        self.h.characteristic()
    }

    pub fn order(&self) -> i64 {
        self.h.order()
    }

    pub fn is_zero(&self) -> bool {
        self.h.is_zero()
    }

    /// True when the element is x^alpha * h with h(0) != 0 (unit form as
    /// stored, without re-factoring).
    pub fn is_unit_form(&self) -> bool {
        !self.h.constant_term().is_zero()
    }

    fn check_ctx(&self, other: &Self) -> Result<()> {
        if self.nvars() != other.nvars() {
            return Err(Error::NvarsMismatch(self.nvars(), other.nvars()));
        }
        if self.characteristic() != other.characteristic() {
            return Err(Error::CharMismatch(
                self.characteristic().to_string(),
                other.characteristic().to_string(),
            ));
        }
        Ok(())
    }

    /// Multiplies the series part by x^delta (delta >= 0), which shifts
    /// every exponent up and extends the exact window accordingly.
    fn shift_series(h: &TruncSeries, delta: &MultiIndex) -> TruncSeries {
        debug_assert!(delta.is_nonnegative());
        TruncSeries::from_terms(
            h.nvars(),
            h.characteristic(),
            h.order() + delta.total_degree(),
            h.terms().map(|(idx, c)| (idx.add(delta), c.clone())),
        )
        .expect("shifted terms stay valid")
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        let gamma = MultiIndex::new(
            self.alpha
                .exponents()
                .iter()
                .zip(other.alpha.exponents())
                .map(|(a, b)| (*a).min(*b))
                .collect(),
        );
        let left = Self::shift_series(&self.h, &self.alpha.sub(&gamma));
        let right = Self::shift_series(&other.h, &other.alpha.sub(&gamma));
        Self::new(gamma, left.add(&right)?)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        LocalizedSeries {
            alpha: self.alpha.clone(),
            h: self.h.neg(),
        }
    }

    pub fn scalar_mul(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return Self::zero(self.nvars(), self.characteristic(), self.order());
        }
        LocalizedSeries {
            alpha: self.alpha.clone(),
            h: self.h.scalar_mul(s),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        Self::new(
            self.alpha.add(&other.alpha),
            self.h.mul_tracked(&other.h),
        )
    }

    pub fn pow(&self, e: u64) -> Self {
        let mut acc = Self::one(self.nvars(), self.characteristic(), self.order());
        for _ in 0..e {
            acc = acc.mul(self).expect("same context");
        }
        acc
    }

    /// Inverse of a unit x^alpha * h: factors any monomial out of h and
    /// inverts the remaining unit of k\[\[x\]\].
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::NotAUnit("zero is not a unit".into()));
        }
        let nvars = self.nvars();
        let mut mins = vec![i64::MAX; nvars];
        for (idx, _) in self.h.terms() {
            for (i, &e) in idx.exponents().iter().enumerate() {
                mins[i] = mins[i].min(e);
            }
        }
        let delta = MultiIndex::new(mins);
        let shifted = TruncSeries::from_terms(
            nvars,
            self.characteristic(),
            self.h.order() - delta.total_degree(),
            self.h.terms().map(|(idx, c)| (idx.sub(&delta), c.clone())),
        )?;
        if shifted.constant_term().is_zero() {
            return Err(Error::NotAUnit(format!(
                "{self} is not a unit of k[[x]][x^-1]"
            )));
        }
        Self::new(
            self.alpha.add(&delta).scale(-1),
            shifted.inverse()?,
        )
    }

    pub fn pow_i64(&self, e: i64) -> Result<Self> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.inverse()?.pow(e.unsigned_abs()))
        }
    }

    /// Coefficient of x^gamma. Exponents outside the cone alpha + N^n are
    /// exactly zero; inside, the series must still cover the requested
    /// total degree, otherwise the query is inconclusive.
    pub fn coeff_at(&self, gamma: &MultiIndex) -> Result<Scalar> {
        if gamma.len() != self.nvars() {
            return Err(Error::NvarsMismatch(gamma.len(), self.nvars()));
        }
        let beta = gamma.sub(&self.alpha);
        if !beta.is_nonnegative() {
            return Ok(Scalar::zero(self.characteristic()));
        }
        if beta.total_degree() > self.h.order() {
            return Err(Error::Inconclusive(format!(
                "coefficient at {gamma} lies beyond the truncation order {}",
                self.h.order()
            )));
        }
        Ok(self.h.coeff(&beta))
    }

    pub fn constant_term(&self) -> Result<Scalar> {
        self.coeff_at(&MultiIndex::zero(self.nvars()))
    }

    /// Known terms as (exponent, coefficient) with the prefix applied.
    pub fn known_terms(&self) -> Vec<(MultiIndex, Scalar)> {
        self.h
            .terms()
            .map(|(idx, c)| (idx.add(&self.alpha), c.clone()))
            .collect()
    }
}

impl fmt::Display for LocalizedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: std::collections::BTreeMap<MultiIndex, Scalar> =
            self.known_terms().into_iter().collect();
        write_terms(f, terms.iter())
    }
}
