//! Sparse multivariate Laurent polynomials k\[x, x^-1\].
//!
//! An element is a finite map from exponent vectors in Z^n to nonzero
//! scalars. Units are exactly the nonzero scalar multiples of monomials,
//! which is what makes negative powers substitutable under endomorphisms.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

use super::display::write_terms;
use super::multiindex::MultiIndex;
use super::scalar::{FieldChar, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly {
    nvars: usize,
    ch: FieldChar,
    terms: BTreeMap<MultiIndex, Scalar>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize, ch: FieldChar) -> Self {
        LaurentPoly {
            nvars,
            ch,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize, ch: FieldChar) -> Self {
        Self::constant(Scalar::one(ch), nvars)
    }

    pub fn constant(c: Scalar, nvars: usize) -> Self {
        let mut p = Self::zero(nvars, c.characteristic());
        p.insert(MultiIndex::zero(nvars), c);
        p
    }

    pub fn monomial(idx: MultiIndex, c: Scalar) -> Self {
        let mut p = Self::zero(idx.len(), c.characteristic());
        p.insert(idx, c);
        p
    }

    /// The variable x_{i+1} (0-based i).
    pub fn variable(nvars: usize, i: usize, ch: FieldChar) -> Self {
        Self::monomial(MultiIndex::unit(nvars, i), Scalar::one(ch))
    }

    pub fn from_terms(
        nvars: usize,
        ch: FieldChar,
        terms: impl IntoIterator<Item = (MultiIndex, Scalar)>,
    ) -> Result<Self> {
        let mut p = Self::zero(nvars, ch);
        for (idx, c) in terms {
            if idx.len() != nvars {
                return Err(Error::NvarsMismatch(idx.len(), nvars));
            }
            if c.characteristic() != ch {
                return Err(Error::CharMismatch(
                    c.characteristic().to_string(),
                    ch.to_string(),
                ));
            }
            p.add_term(&idx, &c);
        }
        Ok(p)
    }

    fn insert(&mut self, idx: MultiIndex, c: Scalar) {
        if !c.is_zero() {
            self.terms.insert(idx, c);
        }
    }

    fn add_term(&mut self, idx: &MultiIndex, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(idx) {
            Some(existing) => {
                let sum = existing.add(c);
                if sum.is_zero() {
                    self.terms.remove(idx);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(idx.clone(), c.clone());
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn characteristic(&self) -> FieldChar {
        self.ch
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Scalar)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &MultiIndex> {
        self.terms.keys()
    }

    /// Coefficient of x^a, zero if absent.
    pub fn coeff(&self, a: &MultiIndex) -> Scalar {
        self.terms
            .get(a)
            .cloned()
            .unwrap_or_else(|| Scalar::zero(self.ch))
    }

    pub fn constant_term(&self) -> Scalar {
        self.coeff(&MultiIndex::zero(self.nvars))
    }

    fn check_ctx(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::NvarsMismatch(self.nvars, other.nvars));
        }
        if self.ch != other.ch {
            return Err(Error::CharMismatch(
                self.ch.to_string(),
                other.ch.to_string(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        let mut out = self.clone();
        for (idx, c) in &other.terms {
            out.add_term(idx, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            nvars: self.nvars,
            ch: self.ch,
            terms: self
                .terms
                .iter()
                .map(|(i, c)| (i.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        let mut out = Self::zero(self.nvars, self.ch);
        for (ia, ca) in &self.terms {
            for (ib, cb) in &other.terms {
                out.add_term(&ia.add(ib), &ca.mul(cb));
            }
        }
        Ok(out)
    }

    pub fn scalar_mul(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return Self::zero(self.nvars, self.ch);
        }
        LaurentPoly {
            nvars: self.nvars,
            ch: self.ch,
            terms: self
                .terms
                .iter()
                .map(|(i, c)| (i.clone(), c.mul(s)))
                .collect(),
        }
    }

    pub fn pow(&self, e: u64) -> Self {
        let mut acc = Self::one(self.nvars, self.ch);
        let mut sq = self.clone();
        let mut n = e;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&sq).expect("same context");
            }
            sq = sq.mul(&sq).expect("same context");
            n >>= 1;
        }
        acc
    }

    /// A unit of k\[x, x^-1\] is a single term c*x^a with c nonzero.
    pub fn as_unit(&self) -> Option<(&MultiIndex, &Scalar)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// Integer power; negative exponents require the base to be a unit.
    pub fn pow_i64(&self, e: i64) -> Result<Self> {
        if e >= 0 {
            return Ok(self.pow(e as u64));
        }
        let (idx, c) = self
            .as_unit()
            .ok_or_else(|| Error::NotAUnit(format!("{self} is not a unit of the Laurent ring")))?;
        let inv = Self::monomial(idx.scale(-1), c.inv()?);
        Ok(inv.pow(e.unsigned_abs()))
    }

    /// Formal partial derivative with respect to x_{i+1} (0-based i).
    pub fn partial_derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars, self.ch);
        for (idx, c) in &self.terms {
            let e = idx.get(i);
            if e == 0 {
                continue;
            }
            let mut exps = idx.exponents().to_vec();
            exps[i] -= 1;
            let factor = Scalar::from_int(e, self.ch);
            out.add_term(&MultiIndex::new(exps), &c.mul(&factor));
        }
        out
    }

    /// Substitutes x_i -> `images[i]`. Negative exponents require the
    /// corresponding image to be a unit.
    pub fn substitute(&self, images: &[LaurentPoly]) -> Result<Self> {
        if images.len() != self.nvars {
            return Err(Error::NvarsMismatch(images.len(), self.nvars));
        }
        for im in images {
            if im.nvars != self.nvars || im.ch != self.ch {
                return Err(Error::InvalidInput(
                    "substitution image in a different ring".into(),
                ));
            }
        }
        let mut out = Self::zero(self.nvars, self.ch);
        for (idx, c) in &self.terms {
            let mut term = Self::constant(c.clone(), self.nvars);
            for (i, &e) in idx.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                term = term.mul(&images[i].pow_i64(e)?)?;
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }

    /// Max total degree over the support, None for the zero polynomial.
    pub fn max_total_degree(&self) -> Option<i64> {
        self.terms.keys().map(|i| i.total_degree()).max()
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms())
    }
}
