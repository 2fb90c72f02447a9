//! The eventual kernel ideal of a periodic endomorphism and the radical
//! comparison r(M) = r(I) for M = im(1 - phi).
//!
//! Both computations run on the finite-dimensional truncation of the
//! polynomial ring by total degree (a TruncSeries ring), after a
//! periodicity certificate phi^i = phi^j has been obtained: the kernels
//! of phi^r then stabilize at r = i, and I = ker(phi^i) is an ideal of
//! the truncation.

use crate::error::{Error, Result};
use crate::linalg::{Mat, SpanBasis};
use crate::locfin::{detect_periodicity, PeriodicityCertificate};
use crate::operators::Endomorphism;
use crate::rings::{Carrier, MultiIndex, Scalar, TruncSeries};

/// Monomial basis of the total-degree-<= order truncation, in graded-lex
/// order, constant monomial included.
fn truncation_monomials(nvars: usize, order: i64) -> Vec<MultiIndex> {
    fn rec(nvars: usize, order: i64, prefix: &mut Vec<i64>, out: &mut Vec<MultiIndex>) {
        if prefix.len() == nvars {
            out.push(MultiIndex::new(prefix.clone()));
            return;
        }
        let used: i64 = prefix.iter().sum();
        for e in 0..=(order - used) {
            prefix.push(e);
            rec(nvars, order, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(nvars, order, &mut Vec::new(), &mut out);
    out.sort();
    out
}

#[derive(Clone, Debug)]
pub struct KernelIdeal {
    pub certificate: PeriodicityCertificate,
    pub order: i64,
    /// Echelonized basis of I = ker(phi^i) on the truncation.
    pub basis: Vec<TruncSeries>,
}

/// I = the stabilized kernel ker(phi^i) on the degree-<= order
/// truncation, echelonized. Requires a periodicity certificate within
/// i_max; refuses otherwise.
pub fn eventual_kernel_ideal(
    phi: &Endomorphism<TruncSeries>,
    order: i64,
    i_max: u64,
) -> Result<KernelIdeal> {
    for im in phi.images() {
        if im.order() < order {
            return Err(Error::InvalidInput(format!(
                "generator image truncated at order {}, below the truncation                  order {order} of the quotient",
                im.order()
            )));
        }
    }
    let certificate = detect_periodicity(phi, i_max)?.ok_or_else(|| {
        Error::Inconclusive(format!(
            "no periodicity certificate within i_max = {i_max}; \
             the eventual kernel is not certified"
        ))
    })?;
    let nvars = phi.nvars();
    let ch = phi.characteristic();
    let monomials = truncation_monomials(nvars, order);
    let dim = monomials.len();
    let index_of: std::collections::BTreeMap<&MultiIndex, usize> =
        monomials.iter().enumerate().map(|(i, m)| (m, i)).collect();

    // matrix of phi^i on the monomial basis
    let phi_i = Endomorphism::new(phi.power_images(certificate.i)?)?;
    let mut mat = Mat::zero(dim, dim, ch);
    for (j, m) in monomials.iter().enumerate() {
        let image = phi_i.apply(&monomial_elem(m, nvars, ch, order))?;
        for (idx, c) in image.terms() {
            mat.set(index_of[idx], j, c.clone());
        }
    }
    let basis = mat
        .kernel_basis()
        .into_iter()
        .map(|coords| {
            let mut acc = TruncSeries::zero(nvars, ch, order);
            for (j, c) in coords.into_iter().enumerate() {
                if !c.is_zero() {
                    acc = acc
                        .add(&monomial_elem(&monomials[j], nvars, ch, order).scalar_mul(&c))
                        .expect("same ring");
                }
            }
            acc
        })
        .collect();
    Ok(KernelIdeal {
        certificate,
        order,
        basis,
    })
}

fn monomial_elem(
    m: &MultiIndex,
    nvars: usize,
    ch: crate::rings::FieldChar,
    order: i64,
) -> TruncSeries {
    TruncSeries::from_terms(nvars, ch, order, vec![(m.clone(), Scalar::one(ch))])
        .expect("monomial within the truncation")
}

#[derive(Clone, Debug)]
pub struct RadicalComparisonReport {
    pub order: i64,
    pub bound: u64,
    pub ideal_dim: usize,
    pub image_dim: usize,
    /// (element, in r(M) within bound with least N, in r(I) within bound
    /// with least N, verdicts agree)
    pub per_element: Vec<(TruncSeries, Option<u64>, Option<u64>, bool)>,
    pub all_agree: bool,
}

/// Compares, element by element, radical membership with respect to
/// M = (1 - phi)(truncation) against radical membership with respect to
/// the eventual kernel ideal I. Membership is bounded: a is in r(M)
/// within the bound when a^m lies in M for all m from some N on, and in
/// r(I) when some power lands in I (powers then stay in I because I is
/// an ideal).
pub fn compare_image_and_kernel_radicals(
    phi: &Endomorphism<TruncSeries>,
    order: i64,
    test_elements: &[TruncSeries],
    bound: u64,
    i_max: u64,
) -> Result<RadicalComparisonReport> {
    let ideal = eventual_kernel_ideal(phi, order, i_max)?;
    let nvars = phi.nvars();
    let ch = phi.characteristic();
    let monomials = truncation_monomials(nvars, order);

    // M = im(1 - phi) on the truncation, echelonized
    let mut image_span = SpanBasis::new(ch);
    for m in &monomials {
        let elem = monomial_elem(m, nvars, ch, order);
        let delta = elem.sub(&phi.apply(&elem)?)?;
        if !delta.is_zero() {
            image_span.insert(&delta.term_map());
        }
    }
    let mut ideal_span = SpanBasis::new(ch);
    for b in &ideal.basis {
        ideal_span.insert(&b.term_map());
    }

    let mut per_element = Vec::new();
    let mut all_agree = true;
    for a in test_elements {
        let a = a.truncate(order);
        // powers a^1 .. a^bound in the truncated quotient
        let mut powers = Vec::with_capacity(bound as usize);
        let mut p = a.clone();
        for _ in 1..=bound {
            powers.push(p.clone());
            p = p.mul_tracked(&a).truncate(order);
        }
        let in_m: Vec<bool> = powers
            .iter()
            .map(|p| p.is_zero() || image_span.contains(&p.term_map()))
            .collect();
        // least N with a^m in M for all m in [N, bound]
        let r_m = {
            let mut n_val = None;
            for start in (1..=bound).rev() {
                if in_m[start as usize - 1] {
                    n_val = Some(start);
                } else {
                    break;
                }
            }
            n_val
        };
        // least N with a^N in I (an ideal: later powers stay inside)
        let r_i = powers
            .iter()
            .position(|p| p.is_zero() || ideal_span.contains(&p.term_map()))
            .map(|idx| idx as u64 + 1);
        let agree = r_m.is_some() == r_i.is_some();
        all_agree &= agree;
        per_element.push((a, r_m, r_i, agree));
    }
    Ok(RadicalComparisonReport {
        order,
        bound,
        ideal_dim: ideal.basis.len(),
        image_dim: image_span.dim(),
        per_element,
        all_agree,
    })
}
