//! Graded decomposition of a Laurent derivation under a weight vector.
//!
//! A strictly positive d in Z^n grades the Laurent ring by the weight
//! w(x^b) = <d, b>. A derivation splits as a finite sum D = sum_i D_i
//! with D_i raising weight by exactly i: the term c x^b d/dx_j of a
//! coefficient contributes to the piece i = <d, b> - d_j.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::SparseVec;
use crate::rings::{LaurentPoly, MultiIndex};

use super::Derivation;

#[derive(Clone, Debug)]
pub struct GradedPieces {
    pub weights: MultiIndex,
    /// Piece index -> homogeneous derivation of that weight shift.
    pub components: BTreeMap<i64, Derivation<LaurentPoly>>,
    /// Minimal occurring index, None for the zero derivation.
    pub min_index: Option<i64>,
}

impl GradedPieces {
    /// Recombines the pieces; equals the original derivation.
    pub fn sum(&self) -> Result<Derivation<LaurentPoly>> {
        let n = self.weights.len();
        let ch = self
            .components
            .values()
            .next()
            .map(|d| d.characteristic())
            .unwrap_or(crate::rings::FieldChar::Zero);
        let mut coeffs = vec![LaurentPoly::zero(n, ch); n];
        for d in self.components.values() {
            for (i, c) in d.coeffs().iter().enumerate() {
                coeffs[i] = coeffs[i].add(c)?;
            }
        }
        Derivation::new(coeffs)
    }
}

pub fn graded_decompose(
    derivation: &Derivation<LaurentPoly>,
    weights: &MultiIndex,
) -> Result<GradedPieces> {
    let n = derivation.nvars();
    if weights.len() != n {
        return Err(Error::NvarsMismatch(weights.len(), n));
    }
    if weights.exponents().iter().any(|&w| w <= 0) {
        return Err(Error::InvalidInput(
            "weight vector entries must be strictly positive".into(),
        ));
    }
    let ch = derivation.characteristic();
    // piece index -> per-variable sparse coefficient
    let mut buckets: BTreeMap<i64, Vec<SparseVec>> = BTreeMap::new();
    for (j, coeff) in derivation.coeffs().iter().enumerate() {
        for (b, c) in coeff.terms() {
            let piece = b.weight(weights)? - weights.get(j);
            let bucket = buckets
                .entry(piece)
                .or_insert_with(|| vec![SparseVec::new(); n]);
            bucket[j].insert(b.clone(), c.clone());
        }
    }
    let mut components = BTreeMap::new();
    for (piece, bucket) in buckets {
        let coeffs = bucket
            .into_iter()
            .map(|terms| {
                LaurentPoly::from_terms(n, ch, terms).expect("terms from the same ring")
            })
            .collect();
        components.insert(piece, Derivation::new(coeffs)?);
    }
    let min_index = components.keys().next().copied();
    Ok(GradedPieces {
        weights: weights.clone(),
        components,
        min_index,
    })
}
