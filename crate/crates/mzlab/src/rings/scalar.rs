//! Exact field scalars: arbitrary-precision rationals and prime-field
//! residues.
//!
//! Every scalar knows its characteristic. Mixing characteristics in an
//! arithmetic operation is a programming error and panics; public ring
//! operations validate contexts before descending to scalar arithmetic.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Characteristic of the base field: 0 (rationals) or a prime p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldChar {
    Zero,
    Prime(u64),
}

impl FieldChar {
    pub fn is_zero_char(&self) -> bool {
        matches!(self, FieldChar::Zero)
    }
}

impl fmt::Display for FieldChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldChar::Zero => write!(f, "0"),
            FieldChar::Prime(p) => write!(f, "{p}"),
        }
    }
}

/// An exact field element: a rational in lowest terms, or a residue in
/// \[0, p) for a prime p.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Mod { value: u64, p: u64 },
}

fn mod_inv(a: u64, p: u64) -> Option<u64> {
    // extended Euclid on (a, p)
    if a == 0 {
        return None;
    }
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(p as i128) as u64)
}

impl Scalar {
    pub fn zero(ch: FieldChar) -> Self {
        match ch {
            FieldChar::Zero => Scalar::Rat(BigRational::zero()),
            FieldChar::Prime(p) => Scalar::Mod { value: 0, p },
        }
    }

    pub fn one(ch: FieldChar) -> Self {
        match ch {
            FieldChar::Zero => Scalar::Rat(BigRational::one()),
            FieldChar::Prime(p) => Scalar::Mod { value: 1 % p, p },
        }
    }

    pub fn from_int(n: i64, ch: FieldChar) -> Self {
        match ch {
            FieldChar::Zero => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
            FieldChar::Prime(p) => Scalar::Mod {
                value: (n as i128).rem_euclid(p as i128) as u64,
                p,
            },
        }
    }

    pub fn from_bigint(n: &BigInt, ch: FieldChar) -> Self {
        match ch {
            FieldChar::Zero => Scalar::Rat(BigRational::from_integer(n.clone())),
            FieldChar::Prime(p) => {
                let p_big = BigInt::from(p);
                let mut r = n % &p_big;
                if r.is_negative() {
                    r += &p_big;
                }
                Scalar::Mod {
                    value: r.to_u64().expect("reduced residue fits in u64"),
                    p,
                }
            }
        }
    }

    /// Rational p/q. Panics if q = 0.
    pub fn rational(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar::Rat(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Scalar::Rat(r)
    }

    pub fn characteristic(&self) -> FieldChar {
        match self {
            Scalar::Rat(_) => FieldChar::Zero,
            Scalar::Mod { p, .. } => FieldChar::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Mod { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Mod { value, p } => *value == 1 % p,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rat(r) => Some(r),
            Scalar::Mod { .. } => None,
        }
    }

    fn check_same(&self, other: &Scalar) {
        match (self, other) {
            (Scalar::Rat(_), Scalar::Rat(_)) => {}
            (Scalar::Mod { p: p1, .. }, Scalar::Mod { p: p2, .. }) if p1 == p2 => {}
            _ => panic!(
                "scalar characteristic mismatch: {} vs {}",
                self.characteristic(),
                other.characteristic()
            ),
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        self.check_same(other);
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Mod { value: a, p }, Scalar::Mod { value: b, .. }) => Scalar::Mod {
                value: ((*a as u128 + *b as u128) % *p as u128) as u64,
                p: *p,
            },
            _ => unreachable!("checked above"),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        self.check_same(other);
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Mod { value: a, p }, Scalar::Mod { value: b, .. }) => Scalar::Mod {
                value: ((*a as u128 * *b as u128) % *p as u128) as u64,
                p: *p,
            },
            _ => unreachable!("checked above"),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Mod { value, p } => Scalar::Mod {
                value: if *value == 0 { 0 } else { p - value },
                p: *p,
            },
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        match self {
            Scalar::Rat(a) => {
                if a.is_zero() {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(Scalar::Rat(a.recip()))
                }
            }
            Scalar::Mod { value, p } => mod_inv(*value, *p)
                .map(|v| Scalar::Mod { value: v, p: *p })
                .ok_or(Error::DivisionByZero),
        }
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        Ok(self.mul(&other.inv()?))
    }

    /// Parses `p` or `p/q` into the given characteristic.
    pub fn parse(text: &str, ch: FieldChar) -> Result<Scalar> {
        let bad = || Error::InvalidInput(format!("cannot parse `{text}` as a scalar"));
        let parse_int = |s: &str| s.trim().parse::<BigInt>().map_err(|_| bad());
        match text.split_once('/') {
            None => Ok(Scalar::from_bigint(&parse_int(text)?, ch)),
            Some((num, den)) => {
                let num = parse_int(num)?;
                let den = parse_int(den)?;
                if den.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                Scalar::from_bigint(&num, ch).div(&Scalar::from_bigint(&den, ch))
            }
        }
    }

    /// Integer power, negative exponents via inversion.
    pub fn pow_i64(&self, e: i64) -> Result<Scalar> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut n = e.unsigned_abs();
        let mut acc = Scalar::one(self.characteristic());
        let mut sq = base;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&sq);
            }
            sq = sq.mul(&sq);
            n >>= 1;
        }
        Ok(acc)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Mod { value, .. } => write!(f, "{value}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_lowest_terms_positive_denominator() {
        let s = Scalar::rational(4, -6);
        match &s {
            Scalar::Rat(r) => {
                assert_eq!(r.numer(), &BigInt::from(-2));
                assert_eq!(r.denom(), &BigInt::from(3));
            }
            _ => unreachable!(),
        }
        assert_eq!(s.to_string(), "-2/3");
    }

    #[test]
    fn mod_arithmetic_stays_reduced() {
        let p = FieldChar::Prime(7);
        let a = Scalar::from_int(10, p); // 3
        let b = Scalar::from_int(-1, p); // 6
        assert_eq!(a.add(&b), Scalar::from_int(2, p));
        assert_eq!(a.mul(&b), Scalar::from_int(4, p)); // 18 mod 7
        assert_eq!(b.inv().unwrap(), Scalar::from_int(6, p)); // 6*6=36=1
    }

    #[test]
    fn pow_negative_exponent() {
        let s = Scalar::rational(2, 3);
        assert_eq!(s.pow_i64(-2).unwrap(), Scalar::rational(9, 4));
        assert_eq!(s.pow_i64(0).unwrap(), Scalar::one(FieldChar::Zero));
    }

    #[test]
    #[should_panic(expected = "characteristic mismatch")]
    fn mixing_characteristics_panics() {
        let a = Scalar::rational(1, 1);
        let b = Scalar::from_int(1, FieldChar::Prime(5));
        let _ = a.add(&b);
    }

    #[test]
    fn zero_has_no_inverse() {
        assert_eq!(
            Scalar::zero(FieldChar::Zero).inv(),
            Err(Error::DivisionByZero)
        );
        assert_eq!(
            Scalar::zero(FieldChar::Prime(5)).inv(),
            Err(Error::DivisionByZero)
        );
    }
}
