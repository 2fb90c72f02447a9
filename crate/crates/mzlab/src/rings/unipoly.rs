//! Dense univariate polynomials over the scalar field, used for
//! characteristic and minimal polynomials and the prime-field
//! counterexample computations.

use std::fmt;

use crate::error::{Error, Result};

use super::scalar::{FieldChar, Scalar};

/// Coefficients ascending by degree; the leading coefficient is nonzero
/// unless the polynomial is zero (empty coefficient list).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    ch: FieldChar,
    coeffs: Vec<Scalar>,
}

impl UniPoly {
    pub fn zero(ch: FieldChar) -> Self {
        UniPoly {
            ch,
            coeffs: Vec::new(),
        }
    }

    pub fn one(ch: FieldChar) -> Self {
        Self::constant(Scalar::one(ch))
    }

    pub fn constant(c: Scalar) -> Self {
        let ch = c.characteristic();
        let mut p = Self::zero(ch);
        if !c.is_zero() {
            p.coeffs.push(c);
        }
        p
    }

    pub fn from_coeffs(ch: FieldChar, coeffs: Vec<Scalar>) -> Self {
        let mut p = UniPoly { ch, coeffs };
        p.trim();
        p
    }

    pub fn from_ints(ch: FieldChar, coeffs: &[i64]) -> Self {
        Self::from_coeffs(
            ch,
            coeffs.iter().map(|&c| Scalar::from_int(c, ch)).collect(),
        )
    }

    /// c * T^d
    pub fn monomial(c: Scalar, d: usize) -> Self {
        let ch = c.characteristic();
        if c.is_zero() {
            return Self::zero(ch);
        }
        let mut coeffs = vec![Scalar::zero(ch); d + 1];
        coeffs[d] = c;
        UniPoly { ch, coeffs }
    }

    fn trim(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn characteristic(&self) -> FieldChar {
        self.ch
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, d: usize) -> Scalar {
        self.coeffs
            .get(d)
            .cloned()
            .unwrap_or_else(|| Scalar::zero(self.ch))
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        matches!(self.leading(), Some(c) if c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.ch, other.ch, "characteristic mismatch");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i).add(&other.coeff(i))).collect();
        Self::from_coeffs(self.ch, coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        UniPoly {
            ch: self.ch,
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn scalar_mul(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return Self::zero(self.ch);
        }
        UniPoly {
            ch: self.ch,
            coeffs: self.coeffs.iter().map(|c| c.mul(s)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.ch);
        }
        let mut coeffs =
            vec![Scalar::zero(self.ch); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        Self::from_coeffs(self.ch, coeffs)
    }

    pub fn pow(&self, e: u64) -> Self {
        let mut acc = Self::one(self.ch);
        let mut sq = self.clone();
        let mut n = e;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&sq);
            }
            sq = sq.mul(&sq);
            n >>= 1;
        }
        acc
    }

    /// Euclidean division: self = q * divisor + r with deg r < deg divisor.
    pub fn divrem(&self, divisor: &Self) -> Result<(Self, Self)> {
        self.check(divisor);
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let dd = divisor.degree().unwrap();
        let lead_inv = divisor.leading().unwrap().inv()?;
        let mut rem = self.clone();
        let mut quot = Self::zero(self.ch);
        while let Some(dr) = rem.degree() {
            if dr < dd {
                break;
            }
            let factor = rem.leading().unwrap().mul(&lead_inv);
            let shift = dr - dd;
            quot = quot.add(&Self::monomial(factor.clone(), shift));
            rem = rem.sub(&divisor.mul(&Self::monomial(factor, shift)));
        }
        Ok((quot, rem))
    }

    pub fn divides(&self, other: &Self) -> bool {
        match other.divrem(self) {
            Ok((_, r)) => r.is_zero(),
            Err(_) => false,
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.make_monic()
    }

    pub fn make_monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(l) => self.scalar_mul(&l.inv().expect("leading coefficient nonzero")),
        }
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero(self.ch);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.mul(&Scalar::from_int(i as i64, self.ch)))
            .collect();
        Self::from_coeffs(self.ch, coeffs)
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = Scalar::zero(self.ch);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// Horner evaluation at a square matrix.
    pub fn eval_mat(&self, m: &crate::linalg::Mat) -> crate::linalg::Mat {
        let n = m.n_rows();
        let mut acc = crate::linalg::Mat::zero(n, n, self.ch);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(m);
            for i in 0..n {
                acc.set(i, i, acc.get(i, i).add(c));
            }
        }
        acc
    }

    /// Squarefree part: self / gcd(self, self'), monic. Characteristic
    /// zero only.
    pub fn squarefree_part(&self) -> Self {
        debug_assert!(self.ch.is_zero_char());
        if self.is_zero() || self.is_constant() {
            return self.make_monic();
        }
        let g = self.gcd(&self.derivative());
        let (q, r) = self.divrem(&g).expect("gcd divides");
        debug_assert!(r.is_zero());
        q.make_monic()
    }

    pub fn is_squarefree(&self) -> bool {
        if self.is_zero() || self.is_constant() {
            return true;
        }
        self.gcd(&self.derivative()).is_constant()
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for d in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[d];
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = match c {
                Scalar::Rat(r) if num_traits::Signed::is_negative(r) => (true, c.neg()),
                _ => (false, c.clone()),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if d == 0 {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                if d == 1 {
                    write!(f, "T")?;
                } else {
                    write!(f, "T^{d}")?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldChar {
        FieldChar::Zero
    }

    #[test]
    fn divrem_roundtrip() {
        let f = UniPoly::from_ints(q(), &[1, -1, -1, 1]); // (T-1)^2 (T+1)
        let g = UniPoly::from_ints(q(), &[-1, 1]); // T - 1
        let (quot, rem) = f.divrem(&g).unwrap();
        assert!(rem.is_zero());
        assert_eq!(quot.mul(&g), f);
    }

    #[test]
    fn gcd_picks_common_root() {
        let f = UniPoly::from_ints(q(), &[-1, 0, 1]); // T^2 - 1
        let g = UniPoly::from_ints(q(), &[1, -2, 1]); // (T-1)^2
        assert_eq!(f.gcd(&g), UniPoly::from_ints(q(), &[-1, 1]));
    }

    #[test]
    fn squarefree_part_strips_multiplicity() {
        let f = UniPoly::from_ints(q(), &[1, -2, 1]); // (T-1)^2
        assert_eq!(f.squarefree_part(), UniPoly::from_ints(q(), &[-1, 1]));
        assert!(!f.is_squarefree());
        assert!(f.squarefree_part().is_squarefree());
    }

    #[test]
    fn display_descending() {
        let f = UniPoly::from_ints(q(), &[1, 0, 1]);
        assert_eq!(f.to_string(), "T^2 + 1");
        let g = UniPoly::from_ints(q(), &[-2, 1]);
        assert_eq!(g.to_string(), "T - 2");
    }

    #[test]
    fn char_p_arithmetic() {
        let p = FieldChar::Prime(3);
        // (T+1)^3 = T^3 + 1 over F_3
        let f = UniPoly::from_ints(p, &[1, 1]).pow(3);
        assert_eq!(f, UniPoly::from_ints(p, &[1, 0, 0, 1]));
    }
}
