//! Truncated multivariate formal power series.
//!
//! A series is stored as all coefficients of total degree <= K together
//! with the truncation order K. Arithmetic tracks the order at which the
//! result is still exact: a product of series known to orders K1 and K2
//! with valuations v1 and v2 is exact up to min(K1 + v2, K2 + v1), and a
//! partial derivative drops the order by one. Substitution requires every
//! image to vanish at 0, which is exactly the continuity condition for
//! the (x1,...,xn)-adic topology: an endomorphism sending some x_i to
//! c + h with c != 0 would have to invert h, whose constant term is 0.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

use super::display::write_terms;
use super::laurent::LaurentPoly;
use super::multiindex::MultiIndex;
use super::scalar::{FieldChar, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeries {
    nvars: usize,
    ch: FieldChar,
    order: i64,
    terms: BTreeMap<MultiIndex, Scalar>,
}

impl TruncSeries {
    pub fn zero(nvars: usize, ch: FieldChar, order: i64) -> Self {
        assert!(order >= 0, "truncation order must be nonnegative");
        TruncSeries {
            nvars,
            ch,
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize, ch: FieldChar, order: i64) -> Self {
        Self::constant(Scalar::one(ch), nvars, order)
    }

    pub fn constant(c: Scalar, nvars: usize, order: i64) -> Self {
        let mut s = Self::zero(nvars, c.characteristic(), order);
        if !c.is_zero() {
            s.terms.insert(MultiIndex::zero(nvars), c);
        }
        s
    }

    pub fn variable(nvars: usize, i: usize, ch: FieldChar, order: i64) -> Self {
        let mut s = Self::zero(nvars, ch, order);
        if order >= 1 {
            s.terms.insert(MultiIndex::unit(nvars, i), Scalar::one(ch));
        }
        s
    }

    /// The tuple (x1, ..., xn), the identity system of coordinates.
    pub fn identity_tuple(nvars: usize, ch: FieldChar, order: i64) -> Vec<Self> {
        (0..nvars)
            .map(|i| Self::variable(nvars, i, ch, order))
            .collect()
    }

    pub fn from_terms(
        nvars: usize,
        ch: FieldChar,
        order: i64,
        terms: impl IntoIterator<Item = (MultiIndex, Scalar)>,
    ) -> Result<Self> {
        let mut s = Self::zero(nvars, ch, order);
        for (idx, c) in terms {
            if idx.len() != nvars {
                return Err(Error::NvarsMismatch(idx.len(), nvars));
            }
            if !idx.is_nonnegative() {
                return Err(Error::InvalidInput(format!(
                    "negative exponent {idx} in a power-series context"
                )));
            }
            if c.characteristic() != ch {
                return Err(Error::CharMismatch(
                    c.characteristic().to_string(),
                    ch.to_string(),
                ));
            }
            if idx.total_degree() <= order {
                s.add_term(&idx, &c);
            }
        }
        Ok(s)
    }

    fn add_term(&mut self, idx: &MultiIndex, c: &Scalar) {
        if c.is_zero() || idx.total_degree() > self.order {
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

    /// The truncation order: coefficients of total degree <= order are exact.
    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, a: &MultiIndex) -> Scalar {
        self.terms
            .get(a)
            .cloned()
            .unwrap_or_else(|| Scalar::zero(self.ch))
    }

    pub fn constant_term(&self) -> Scalar {
        self.coeff(&MultiIndex::zero(self.nvars))
    }

    /// Min total degree of a stored term; order + 1 for the zero series
    /// (all that is known is that the valuation exceeds the order).
    pub fn valuation(&self) -> i64 {
        self.terms
            .keys()
            .next()
            .map(|i| i.total_degree())
            .unwrap_or(self.order + 1)
    }

    pub fn truncate(&self, new_order: i64) -> Self {
        assert!(new_order >= 0);
        let mut s = Self::zero(self.nvars, self.ch, new_order.min(self.order));
        for (idx, c) in &self.terms {
            if idx.total_degree() <= s.order {
                s.terms.insert(idx.clone(), c.clone());
            }
        }
        s
    }

    /// Terms of total degree exactly d, kept at the same order.
    pub fn homogeneous_part(&self, d: i64) -> Self {
        let mut s = Self::zero(self.nvars, self.ch, self.order);
        for (idx, c) in &self.terms {
            if idx.total_degree() == d {
                s.terms.insert(idx.clone(), c.clone());
            }
        }
        s
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
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

    /// Addition at the minimum of the two orders.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let mut out = Self::zero(self.nvars, self.ch, self.order.min(other.order));
        for (idx, c) in self.terms.iter().chain(other.terms.iter()) {
            out.add_term(idx, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        TruncSeries {
            nvars: self.nvars,
            ch: self.ch,
            order: self.order,
            terms: self
                .terms
                .iter()
                .map(|(i, c)| (i.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn scalar_mul(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return Self::zero(self.nvars, self.ch, self.order);
        }
        TruncSeries {
            nvars: self.nvars,
            ch: self.ch,
            order: self.order,
            terms: self
                .terms
                .iter()
                .map(|(i, c)| (i.clone(), c.mul(s)))
                .collect(),
        }
    }

    /// Product of two series declared at the same order K, truncated to K.
    /// Unequal declared orders are an input error.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        if self.order != other.order {
            return Err(Error::OrderMismatch(self.order, other.order));
        }
        Ok(self.mul_tracked(other).truncate(self.order))
    }

    /// Product with sharp order tracking: exact up to
    /// min(K1 + val2, K2 + val1), which can exceed both K1 and K2.
    pub(crate) fn mul_tracked(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "nvars mismatch");
        assert_eq!(self.ch, other.ch, "characteristic mismatch");
        let order = (self.order + other.valuation()).min(other.order + self.valuation());
        let mut out = Self::zero(self.nvars, self.ch, order.max(0));
        for (ia, ca) in &self.terms {
            let da = ia.total_degree();
            if da + other.valuation() > order {
                break; // graded iteration: nothing below this point fits
            }
            for (ib, cb) in &other.terms {
                if da + ib.total_degree() > order {
                    break;
                }
                out.add_term(&ia.add(ib), &ca.mul(cb));
            }
        }
        out
    }

    pub fn pow(&self, e: u64) -> Self {
        let mut acc = Self::one(self.nvars, self.ch, self.order);
        for _ in 0..e {
            acc = acc.mul_tracked(self).truncate(self.order);
        }
        acc
    }

    /// Multiplicative inverse of a unit of k\[\[x\]\] (nonzero constant term),
    /// at the same order.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = self.constant_term();
        if c0.is_zero() {
            return Err(Error::NotAUnit(
                "series with zero constant term has no inverse in k[[x]]".into(),
            ));
        }
        let c0_inv = c0.inv()?;
        // f = c0 (1 - v) with val(v) >= 1, so 1/f = (1/c0) sum v^i.
        let v = Self::one(self.nvars, self.ch, self.order)
            .sub(&self.scalar_mul(&c0_inv))
            .expect("same ring");
        let mut acc = Self::one(self.nvars, self.ch, self.order);
        let mut power = Self::one(self.nvars, self.ch, self.order);
        for _ in 1..=self.order {
            power = power.mul_tracked(&v).truncate(self.order);
            if power.is_zero() {
                break;
            }
            acc = acc.add(&power).expect("same ring");
        }
        Ok(acc.scalar_mul(&c0_inv))
    }

    /// Substitutes x_i -> `images[i]`; every image must vanish at 0.
    /// The result is exact to min(self.order, min image order).
    pub fn substitute(&self, images: &[TruncSeries]) -> Result<Self> {
        if images.len() != self.nvars {
            return Err(Error::NvarsMismatch(images.len(), self.nvars));
        }
        let mut order = self.order;
        for im in images {
            im.check_ring(self)?;
            if !im.constant_term().is_zero() {
                return Err(Error::InvalidInput(format!(
                    "substitution image {im} has a nonzero constant term; \
                     such a map is not continuous on k[[x]] (it would have to \
                     invert a series vanishing at 0)"
                )));
            }
            order = order.min(im.order);
        }
        let mut out = Self::zero(self.nvars, self.ch, order);
        // cache images[i]^j as needed
        let mut powers: Vec<Vec<TruncSeries>> = images
            .iter()
            .map(|im| vec![Self::one(self.nvars, self.ch, order), im.truncate(order)])
            .collect();
        for (idx, c) in &self.terms {
            if idx.total_degree() > order {
                break; // substituted term has valuation >= its degree
            }
            let mut term = Self::constant(c.clone(), self.nvars, order);
            for (i, &e) in idx.exponents().iter().enumerate() {
                let e = e as usize;
                while powers[i].len() <= e {
                    let next = powers[i]
                        .last()
                        .unwrap()
                        .mul_tracked(&powers[i][1])
                        .truncate(order);
                    powers[i].push(next);
                }
                term = term.mul_tracked(&powers[i][e]).truncate(order);
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }

    /// Coefficients of the degree-1 part as a row indexed by variables.
    pub fn linear_coeffs(&self) -> Vec<Scalar> {
        (0..self.nvars)
            .map(|j| self.coeff(&MultiIndex::unit(self.nvars, j)))
            .collect()
    }

    /// Equality of all coefficients of total degree <= k.
    pub fn eq_at_order(&self, other: &Self, k: i64) -> bool {
        debug_assert!(k <= self.order && k <= other.order);
        let mut keys: Vec<&MultiIndex> = self.terms.keys().collect();
        keys.extend(other.terms.keys());
        keys.into_iter()
            .filter(|i| i.total_degree() <= k)
            .all(|i| self.coeff(i) == other.coeff(i))
    }

    /// The polynomial part, forgetting the truncation order.
    pub fn to_laurent(&self) -> LaurentPoly {
        LaurentPoly::from_terms(
            self.nvars,
            self.ch,
            self.terms.iter().map(|(i, c)| (i.clone(), c.clone())),
        )
        .expect("series terms are valid polynomial terms")
    }
}

/// Compositional inverse of a system F = (F_1, ..., F_n) with F_i(0) = 0
/// and invertible linear part: returns G with F(G) = G(F) = id at order K.
///
/// G is built degree by degree. With G correct below degree d, the error
/// E := F(G) - id has valuation >= d, and adding the homogeneous
/// correction H = -M^(-1) E_d (M the linear part of F) cancels the
/// degree-d term without disturbing lower degrees.
pub fn formal_inverse(system: &[TruncSeries], order: i64) -> Result<Vec<TruncSeries>> {
    let n = system.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    let ch = system[0].characteristic();
    for f in system {
        if f.nvars() != n {
            return Err(Error::NvarsMismatch(f.nvars(), n));
        }
        if f.characteristic() != ch {
            return Err(Error::CharMismatch(
                f.characteristic().to_string(),
                ch.to_string(),
            ));
        }
        if !f.constant_term().is_zero() {
            return Err(Error::InvalidInput(
                "formal inverse requires every component to vanish at 0".into(),
            ));
        }
    }
    let sys: Vec<TruncSeries> = system.iter().map(|f| f.truncate(order)).collect();
    // linear part M[i][j] = coefficient of x_j in F_i
    let m: Vec<Vec<Scalar>> = sys.iter().map(|f| f.linear_coeffs()).collect();
    let m_inv = crate::linalg::invert(&m, ch).ok_or(Error::SingularLinearPart)?;

    let mut g: Vec<TruncSeries> = (0..n)
        .map(|i| {
            let mut acc = TruncSeries::zero(n, ch, order);
            for (j, entry) in m_inv[i].iter().enumerate() {
                acc = acc
                    .add(&TruncSeries::variable(n, j, ch, order).scalar_mul(entry))
                    .expect("same ring");
            }
            acc
        })
        .collect();

    for d in 2..=order {
        let composed: Vec<TruncSeries> = sys
            .iter()
            .map(|f| f.substitute(&g))
            .collect::<Result<_>>()?;
        let errors: Vec<TruncSeries> = composed
            .iter()
            .enumerate()
            .map(|(i, fi)| {
                fi.sub(&TruncSeries::variable(n, i, ch, order))
                    .expect("same ring")
                    .homogeneous_part(d)
            })
            .collect();
        if errors.iter().all(|e| e.is_zero()) {
            continue;
        }
        for i in 0..n {
            let mut correction = TruncSeries::zero(n, ch, order);
            for (j, entry) in m_inv[i].iter().enumerate() {
                correction = correction
                    .add(&errors[j].scalar_mul(entry))
                    .expect("same ring");
            }
            g[i] = g[i].sub(&correction).expect("same ring");
        }
    }

    // round-trip check; failure here is a bug, not bad input
    let identity = TruncSeries::identity_tuple(n, ch, order);
    for (i, f) in sys.iter().enumerate() {
        assert_eq!(
            f.substitute(&g)?,
            identity[i],
            "formal inverse failed the F(G) = id check"
        );
        assert_eq!(
            g[i].substitute(&sys)?,
            identity[i],
            "formal inverse failed the G(F) = id check"
        );
    }
    Ok(g)
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldChar {
        FieldChar::Zero
    }

    fn one_minus_x(order: i64) -> TruncSeries {
        TruncSeries::one(1, q(), order)
            .sub(&TruncSeries::variable(1, 0, q(), order))
            .unwrap()
    }

    fn geometric(order: i64) -> TruncSeries {
        one_minus_x(order).inverse().unwrap()
    }

    #[test]
    fn geometric_series_inverse() {
        let g = geometric(8);
        for d in 0..=8 {
            assert_eq!(
                g.coeff(&MultiIndex::new(vec![d])),
                Scalar::from_int(1, q())
            );
        }
        assert_eq!(
            one_minus_x(8).mul(&g).unwrap(),
            TruncSeries::one(1, q(), 8)
        );
    }

    #[test]
    fn inverse_of_one_is_one() {
        let one = TruncSeries::one(2, q(), 5);
        assert_eq!(one.inverse().unwrap(), one);
    }

    #[test]
    fn inverse_by_long_division_oracle() {
        // oracle: univariate long division of 1 by f, coefficient by coefficient
        let f = TruncSeries::from_terms(
            1,
            q(),
            6,
            (0..=2).map(|d| (MultiIndex::new(vec![d]), Scalar::from_int(1, q()))),
        )
        .unwrap();
        let inv = f.inverse().unwrap();

        let fc: Vec<Scalar> = (0..=6)
            .map(|d| f.coeff(&MultiIndex::new(vec![d])))
            .collect();
        let mut gc = vec![Scalar::zero(q()); 7];
        for d in 0..=6usize {
            let mut acc = if d == 0 {
                Scalar::one(q())
            } else {
                Scalar::zero(q())
            };
            for i in 1..=d {
                acc = acc.sub(&fc[i].mul(&gc[d - i]));
            }
            gc[d] = acc.div(&fc[0]).unwrap();
        }
        for (d, expected) in gc.iter().enumerate() {
            assert_eq!(&inv.coeff(&MultiIndex::new(vec![d as i64])), expected);
        }
        // frozen from the oracle: 1 - x + x^3 - x^4 + x^6
        assert_eq!(inv.to_string(), "1 - x1 + x1^3 - x1^4 + x1^6");
    }

    #[test]
    fn zero_constant_term_is_not_a_unit() {
        let x = TruncSeries::variable(1, 0, q(), 4);
        assert!(matches!(x.inverse(), Err(Error::NotAUnit(_))));
    }

    #[test]
    fn truncating_product() {
        let x = TruncSeries::variable(1, 0, q(), 1);
        assert!(x.mul(&x).unwrap().is_zero());
    }

    #[test]
    fn binomial_cube() {
        let one_plus_x = TruncSeries::one(1, q(), 4)
            .add(&TruncSeries::variable(1, 0, q(), 4))
            .unwrap();
        let cube = one_plus_x.pow(2).mul(&one_plus_x).unwrap();
        assert_eq!(cube.to_string(), "1 + 3*x1 + 3*x1^2 + x1^3");
    }

    #[test]
    fn substitution_swaps_variables() {
        let f = TruncSeries::variable(2, 0, q(), 5);
        let images = vec![
            TruncSeries::variable(2, 1, q(), 5),
            TruncSeries::variable(2, 0, q(), 5),
        ];
        assert_eq!(
            f.substitute(&images).unwrap(),
            TruncSeries::variable(2, 1, q(), 5)
        );
    }

    #[test]
    fn substitute_geometric_with_doubled_variable() {
        let g = geometric(7);
        let two_x = TruncSeries::variable(1, 0, q(), 7).scalar_mul(&Scalar::from_int(2, q()));
        let sub = g.substitute(&[two_x]).unwrap();
        for d in 0..=7i64 {
            assert_eq!(
                sub.coeff(&MultiIndex::new(vec![d])),
                Scalar::from_int(2, q()).pow_i64(d).unwrap()
            );
        }
    }

    #[test]
    fn substitute_square_into_shift() {
        let f = TruncSeries::variable(1, 0, q(), 4).pow(2);
        let image = TruncSeries::variable(1, 0, q(), 4)
            .add(&TruncSeries::variable(1, 0, q(), 4).pow(2))
            .unwrap();
        let sub = f.substitute(&[image]).unwrap();
        assert_eq!(sub.to_string(), "x1^2 + 2*x1^3 + x1^4");
    }

    #[test]
    fn substitution_rejects_nonzero_constant_term() {
        let f = TruncSeries::variable(1, 0, q(), 4);
        let bad = TruncSeries::one(1, q(), 4);
        assert!(f.substitute(&[bad]).is_err());
    }

    #[test]
    fn order_mismatch_is_an_input_error() {
        let a = TruncSeries::one(1, q(), 4);
        let b = TruncSeries::one(1, q(), 5);
        assert!(matches!(a.mul(&b), Err(Error::OrderMismatch(4, 5))));
    }

    fn lagrange_inverse_oracle(f_coeffs: &[i64], order: usize) -> Vec<Scalar> {
        // univariate Lagrange inversion: n [x^n] G = [x^(n-1)] (x / F)^n
        // where F = x * phi(x); works for F with F'(0) = 1
        let k = order as i64;
        let mut phi = TruncSeries::zero(1, q(), k);
        for (i, &c) in f_coeffs.iter().enumerate().skip(1) {
            // phi = F / x
            phi = phi
                .add(&TruncSeries::from_terms(
                    1,
                    q(),
                    k,
                    vec![(MultiIndex::new(vec![i as i64 - 1]), Scalar::from_int(c, q()))],
                )
                .unwrap())
                .unwrap();
        }
        let inv_phi = phi.inverse().unwrap();
        let mut out = vec![Scalar::zero(q())];
        for n in 1..=order {
            let p = inv_phi.pow(n as u64);
            out.push(
                p.coeff(&MultiIndex::new(vec![n as i64 - 1]))
                    .div(&Scalar::from_int(n as i64, q()))
                    .unwrap(),
            );
        }
        out
    }

    #[test]
    fn formal_inverse_of_x_plus_x_squared() {
        let f = TruncSeries::variable(1, 0, q(), 5)
            .add(&TruncSeries::variable(1, 0, q(), 5).pow(2))
            .unwrap();
        let g = formal_inverse(&[f], 5).unwrap();
        // frozen from the Lagrange inversion oracle: signed Catalan numbers
        let oracle = lagrange_inverse_oracle(&[0, 1, 1], 5);
        assert_eq!(oracle[1], Scalar::from_int(1, q()));
        assert_eq!(oracle[2], Scalar::from_int(-1, q()));
        assert_eq!(oracle[3], Scalar::from_int(2, q()));
        assert_eq!(oracle[4], Scalar::from_int(-5, q()));
        assert_eq!(oracle[5], Scalar::from_int(14, q()));
        for d in 1..=5i64 {
            assert_eq!(
                g[0].coeff(&MultiIndex::new(vec![d])),
                oracle[d as usize],
                "degree {d}"
            );
        }
    }

    #[test]
    fn formal_inverse_trivial_cases() {
        let x = TruncSeries::variable(1, 0, q(), 6);
        let g = formal_inverse(std::slice::from_ref(&x), 6).unwrap();
        assert_eq!(g[0], x);

        let swap = vec![
            TruncSeries::variable(2, 1, q(), 4),
            TruncSeries::variable(2, 0, q(), 4),
        ];
        let g = formal_inverse(&swap, 4).unwrap();
        assert_eq!(g, swap);
    }

    #[test]
    fn formal_inverse_rejects_singular_linear_part() {
        let f = TruncSeries::variable(1, 0, q(), 4).pow(2);
        assert!(matches!(
            formal_inverse(&[f], 4),
            Err(Error::SingularLinearPart)
        ));
    }

    #[test]
    fn tracked_product_order_is_sharp_and_sound() {
        // exact polynomial products vs truncated products: every
        // coefficient within the tracked order must agree with the exact
        // one, across asymmetric truncations
        let mk = |terms: &[(i64, i64, i64)], order: i64| {
            TruncSeries::from_terms(
                2,
                q(),
                order,
                terms
                    .iter()
                    .map(|&(a, b, c)| (MultiIndex::new(vec![a, b]), Scalar::from_int(c, q()))),
            )
            .unwrap()
        };
        let f_terms: &[(i64, i64, i64)] = &[(1, 0, 2), (0, 2, -1), (3, 1, 5)];
        let g_terms: &[(i64, i64, i64)] = &[(2, 0, 1), (1, 1, 3), (0, 4, -2)];
        let exact = mk(f_terms, 20).mul_tracked(&mk(g_terms, 20));
        for (kf, kg) in [(4, 7), (6, 3), (5, 5), (2, 9)] {
            let tracked = mk(f_terms, kf).mul_tracked(&mk(g_terms, kg));
            // soundness: all kept coefficients agree with the exact product
            for (idx, c) in tracked.terms() {
                assert!(idx.total_degree() <= tracked.order());
                assert_eq!(c, &exact.coeff(idx), "({kf},{kg}) at {idx}");
            }
            // sharpness: order = min(kf + val g, kg + val f)
            let expected_order =
                (kf + mk(g_terms, kg).valuation()).min(kg + mk(f_terms, kf).valuation());
            assert_eq!(tracked.order(), expected_order);
            // and the exact product truncated there matches entirely
            assert_eq!(tracked, exact.truncate(expected_order));
        }
    }

    #[test]
    fn truncation_coherence_for_inverse_and_substitution() {
        let f = TruncSeries::from_terms(
            1,
            q(),
            10,
            vec![
                (MultiIndex::new(vec![0]), Scalar::from_int(2, q())),
                (MultiIndex::new(vec![1]), Scalar::from_int(-3, q())),
                (MultiIndex::new(vec![3]), Scalar::rational(1, 2)),
            ],
        )
        .unwrap();
        assert_eq!(f.inverse().unwrap().truncate(6), f.truncate(6).inverse().unwrap());

        let img = TruncSeries::from_terms(
            1,
            q(),
            10,
            vec![
                (MultiIndex::new(vec![1]), Scalar::from_int(1, q())),
                (MultiIndex::new(vec![2]), Scalar::from_int(4, q())),
            ],
        )
        .unwrap();
        assert_eq!(
            f.substitute(std::slice::from_ref(&img)).unwrap().truncate(6),
            f.truncate(6).substitute(&[img.truncate(6)]).unwrap()
        );
    }
}
