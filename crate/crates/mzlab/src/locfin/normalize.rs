//! Eigen-coordinate normalization of a locally finite endomorphism of
//! k\[\[x\]\].
//!
//! The invariant space V generated by the variables splits over Q into
//! honest eigenvectors (eigenvalues +-1, the rational roots of unity) and
//! a part on which phi is nilpotent. Elements of V whose linear parts
//! span the degree-1 slice give coordinates y_1..y_n with
//! phi(y_i) = c_i y_i for i <= d and phi^N(y_i) = 0 for i > d, certified
//! as coordinates by the formal inverse of the system. Eigenvalues that
//! are irrational roots of unity (any cyclotomic factor of degree > 1)
//! would need an extension field and are reported as unsupported over Q
//! rather than silently approximated.

use crate::error::{Error, Result};
use crate::jordan::{
    jc_decompose, jordan_block_check, nilpotence_index, roots_of_unity_orders, FactorClass,
};
use crate::linalg::Mat;
use crate::operators::{series_endomorphism, Endomorphism};
use crate::rings::{formal_inverse, FieldChar, Scalar, TruncSeries, UniPoly};

use super::{build_invariant_space, ClosureStatus};

#[derive(Clone, Debug)]
pub struct NormalizedCoordinates {
    /// Count of eigen-coordinates; the rest are nilpotent coordinates.
    pub d: usize,
    /// Eigenvalues c_1..c_d, each +1 or -1.
    pub eigenvalues: Vec<Scalar>,
    /// y_1..y_n at the working order: eigen first, nilpotent after.
    pub coordinates: Vec<TruncSeries>,
    /// phi^N kills every nilpotent coordinate at the working order.
    pub nilpotent_index: u64,
    pub order: i64,
    /// Formal inverse of the coordinate system, certifying it is one.
    pub inverse: Vec<TruncSeries>,
}

#[derive(Clone, Debug)]
pub enum NormalizeOutcome {
    Normalized(NormalizedCoordinates),
    /// The action matrix rules out local finiteness: a non-root-of-unity
    /// eigenvalue or a nontrivial Jordan block at a nonzero eigenvalue.
    NotLocallyFinite { reason: String },
    /// Locally finite, but the eigen-data needs an extension of Q.
    UnsupportedOverQ { reason: String },
}

pub fn normalize_endomorphism(
    phi: &Endomorphism<TruncSeries>,
    order: i64,
    cap: usize,
) -> Result<NormalizeOutcome> {
    let n = phi.nvars();
    if phi.characteristic() != FieldChar::Zero {
        return Err(Error::InvalidInput(
            "normalization runs over characteristic zero".into(),
        ));
    }
    let images: Vec<TruncSeries> = phi.images().iter().map(|im| im.truncate(order)).collect();
    let phi = series_endomorphism(images)?;
    let generators = TruncSeries::identity_tuple(n, FieldChar::Zero, order);
    let space = build_invariant_space(&phi, &generators, cap)?;
    if space.status == ClosureStatus::ExceededCap {
        return Err(Error::Inconclusive(format!(
            "invariant space did not close within cap {cap}; local finiteness not certified"
        )));
    }
    let action = space.action.as_ref().expect("closed space has an action");

    let cyclo = roots_of_unity_orders(action)?;
    if cyclo.has_non_cyclotomic() {
        let f = cyclo
            .factors
            .iter()
            .find(|(_, _, c)| matches!(c, FactorClass::Other))
            .map(|(f, _, _)| f.clone())
            .unwrap();
        return Ok(NormalizeOutcome::NotLocallyFinite {
            reason: format!(
                "characteristic factor {f} of the action on the invariant space \
                 is not cyclotomic, so the endomorphism is not locally finite"
            ),
        });
    }
    let blocks = jordan_block_check(action)?;
    if !blocks.all_clean {
        let f = blocks
            .entries
            .iter()
            .find(|(_, _, clean)| !clean)
            .map(|(f, _, _)| f.clone())
            .unwrap();
        return Ok(NormalizeOutcome::NotLocallyFinite {
            reason: format!(
                "nontrivial Jordan block at the nonzero eigenvalue factor {f} \
                 cannot occur for a locally finite endomorphism of k[[x]]"
            ),
        });
    }
    if let Some((f, _, _)) = cyclo.factors.iter().find(|(_, _, c)| {
        matches!(c, FactorClass::Cyclotomic { order } if *order > 2)
    }) {
        return Ok(NormalizeOutcome::UnsupportedOverQ {
            reason: format!(
                "eigenvalue factor {f} is a root of unity of order > 2; its \
                 eigenvectors need an extension of Q"
            ),
        });
    }

    let ch = FieldChar::Zero;
    let k = space.dim();
    let element_from_coords = |coords: &[Scalar]| -> TruncSeries {
        let mut acc = TruncSeries::zero(n, ch, order);
        for (i, c) in coords.iter().enumerate() {
            acc = acc
                .add(&space.basis[i].scalar_mul(c))
                .expect("same ring");
        }
        acc
    };

    // eigen elements for c = 1 and c = -1, in that order
    let mut eigen: Vec<(Scalar, TruncSeries)> = Vec::new();
    for c in [Scalar::one(ch), Scalar::from_int(-1, ch)] {
        let lin = UniPoly::from_coeffs(ch, vec![c.neg(), Scalar::one(ch)]);
        if !lin.divides(&cyclo.char_poly) {
            continue;
        }
        let mut shifted = action.clone();
        for i in 0..k {
            shifted.set(i, i, shifted.get(i, i).sub(&c));
        }
        for v in shifted.kernel_basis() {
            eigen.push((c.clone(), element_from_coords(&v)));
        }
    }

    // nilpotent part: kernel of the semisimple factor
    let jc = jc_decompose(action)?;
    let v0_coords = jc.semisimple.kernel_basis();
    let nilpotent_elems: Vec<TruncSeries> = v0_coords
        .iter()
        .map(|v| element_from_coords(v))
        .collect();
    let nilpotent_index = if v0_coords.is_empty() {
        1
    } else {
        let s = v0_coords.len();
        let mut k_mat = Mat::zero(k, s, ch);
        for (j, v) in v0_coords.iter().enumerate() {
            for (i, entry) in v.iter().enumerate() {
                k_mat.set(i, j, entry.clone());
            }
        }
        let mut restricted = Mat::zero(s, s, ch);
        for (j, v) in v0_coords.iter().enumerate() {
            let image = action.mul_vec(v);
            let coords = k_mat
                .solve(&image)
                .expect("the action preserves the generalized 0-eigenspace");
            for (i, c) in coords.into_iter().enumerate() {
                restricted.set(i, j, c);
            }
        }
        nilpotence_index(&restricted)?
    };

    // pick n candidates with independent linear parts, eigen first
    let mut lin_span = crate::linalg::SpanBasis::new(ch);
    let mut coordinates = Vec::new();
    let mut eigenvalues = Vec::new();
    let mut nilpotent_coords = Vec::new();
    for (c, y) in &eigen {
        let lin = linear_part_vector(y);
        if lin_span.insert(&lin) {
            coordinates.push(y.clone());
            eigenvalues.push(c.clone());
        }
    }
    let d = coordinates.len();
    for u in &nilpotent_elems {
        let lin = linear_part_vector(u);
        if lin_span.insert(&lin) {
            nilpotent_coords.push(u.clone());
        }
    }
    coordinates.extend(nilpotent_coords);
    assert_eq!(
        coordinates.len(),
        n,
        "linear parts of the eigen and nilpotent bases span the degree-1 slice"
    );

    // exactness checks at the working order
    for (i, y) in coordinates.iter().enumerate().take(d) {
        let lhs = phi.apply(y)?;
        let rhs = y.scalar_mul(&eigenvalues[i]);
        assert_eq!(lhs, rhs, "phi(y_{}) = c y_{} must hold exactly", i + 1, i + 1);
    }
    for y in coordinates.iter().skip(d) {
        let mut img = y.clone();
        for _ in 0..nilpotent_index {
            img = phi.apply(&img)?;
        }
        assert!(img.is_zero(), "phi^N must kill the nilpotent coordinates");
    }

    let inverse = formal_inverse(&coordinates, order)?;
    Ok(NormalizeOutcome::Normalized(NormalizedCoordinates {
        d,
        eigenvalues,
        coordinates,
        nilpotent_index,
        order,
        inverse,
    }))
}

fn linear_part_vector(f: &TruncSeries) -> crate::linalg::SparseVec {
    let mut v = crate::linalg::SparseVec::new();
    for (j, c) in f.linear_coeffs().into_iter().enumerate() {
        if !c.is_zero() {
            v.insert(crate::rings::MultiIndex::new(vec![j as i64]), c);
        }
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldChar {
        FieldChar::Zero
    }

    fn normalized(outcome: NormalizeOutcome) -> NormalizedCoordinates {
        match outcome {
            NormalizeOutcome::Normalized(n) => n,
            other => panic!("expected normalization, got {other:?}"),
        }
    }

    #[test]
    fn pure_sign_flip() {
        let k = 8;
        let phi = series_endomorphism(vec![
            TruncSeries::variable(1, 0, q(), k).neg(),
        ])
        .unwrap();
        let result = normalized(normalize_endomorphism(&phi, k, 16).unwrap());
        assert_eq!(result.d, 1);
        assert_eq!(result.eigenvalues, vec![Scalar::from_int(-1, q())]);
        assert_eq!(result.coordinates[0], TruncSeries::variable(1, 0, q(), k));
    }

    #[test]
    fn swap_normalizes_to_sum_and_difference() {
        let k = 16;
        let phi = series_endomorphism(vec![
            TruncSeries::variable(2, 1, q(), k),
            TruncSeries::variable(2, 0, q(), k),
        ])
        .unwrap();
        let result = normalized(normalize_endomorphism(&phi, k, 16).unwrap());
        assert_eq!(result.d, 2);
        assert_eq!(
            result.eigenvalues,
            vec![Scalar::one(q()), Scalar::from_int(-1, q())]
        );
        let x1 = TruncSeries::variable(2, 0, q(), k);
        let x2 = TruncSeries::variable(2, 1, q(), k);
        let sum = x1.add(&x2).unwrap();
        let diff = x1.sub(&x2).unwrap();
        // up to scalar
        let y1 = &result.coordinates[0];
        let y2 = &result.coordinates[1];
        assert!(is_scalar_multiple(y1, &sum));
        assert!(is_scalar_multiple(y2, &diff));
        assert_eq!(
            phi.apply(y1).unwrap(),
            y1.clone()
        );
        assert_eq!(phi.apply(y2).unwrap(), y2.neg());
    }

    fn is_scalar_multiple(a: &TruncSeries, b: &TruncSeries) -> bool {
        // both nonzero; find the ratio on b's first term
        let (idx, cb) = b.terms().next().expect("nonzero");
        let ca = a.coeff(idx);
        if ca.is_zero() {
            return false;
        }
        let ratio = ca.div(cb).unwrap();
        a == &b.scalar_mul(&ratio)
    }

    #[test]
    fn projection_with_nilpotent_coordinate() {
        let k = 8;
        let phi = series_endomorphism(vec![
            TruncSeries::zero(2, q(), k),
            TruncSeries::variable(2, 1, q(), k),
        ])
        .unwrap();
        let result = normalized(normalize_endomorphism(&phi, k, 16).unwrap());
        assert_eq!(result.d, 1);
        assert_eq!(result.eigenvalues, vec![Scalar::one(q())]);
        assert_eq!(result.coordinates[0], TruncSeries::variable(2, 1, q(), k));
        assert_eq!(result.coordinates[1], TruncSeries::variable(2, 0, q(), k));
        assert_eq!(result.nilpotent_index, 1);
    }

    #[test]
    fn doubling_is_not_locally_finite() {
        let k = 8;
        let phi = series_endomorphism(vec![
            TruncSeries::variable(1, 0, q(), k).scalar_mul(&Scalar::from_int(2, q())),
        ])
        .unwrap();
        match normalize_endomorphism(&phi, k, 16).unwrap() {
            NormalizeOutcome::NotLocallyFinite { reason } => {
                assert!(reason.contains("not cyclotomic"));
            }
            other => panic!("expected NotLocallyFinite, got {other:?}"),
        }
    }

    #[test]
    fn quarter_rotation_needs_an_extension() {
        // phi(x1) = x2, phi(x2) = -x1: eigenvalues +-i
        let k = 8;
        let phi = series_endomorphism(vec![
            TruncSeries::variable(2, 1, q(), k),
            TruncSeries::variable(2, 0, q(), k).neg(),
        ])
        .unwrap();
        match normalize_endomorphism(&phi, k, 16).unwrap() {
            NormalizeOutcome::UnsupportedOverQ { reason } => {
                assert!(reason.contains("order > 2"));
            }
            other => panic!("expected UnsupportedOverQ, got {other:?}"),
        }
    }

    #[test]
    fn perturbed_sign_flip_is_not_locally_finite() {
        // phi(x1) = -x1 + x1^2: phi^2 is tangent to the identity but not
        // the identity, so no power pair can coincide; the action matrix
        // detects this through a nontrivial Jordan block
        let k = 10;
        let x = TruncSeries::variable(1, 0, q(), k);
        let phi = series_endomorphism(vec![x.neg().add(&x.pow(2)).unwrap()]).unwrap();
        match normalize_endomorphism(&phi, k, 32).unwrap() {
            NormalizeOutcome::NotLocallyFinite { reason } => {
                assert!(reason.contains("Jordan block"));
            }
            other => panic!("expected NotLocallyFinite, got {other:?}"),
        }
    }

    #[test]
    fn nonlinear_eigen_coordinates() {
        // conjugate the sign flip by the coordinate change y = x + x^2:
        // phi(x) = u^(-1)(-u(x)) for u = x + x^2 is locally finite of
        // order 2, with eigen coordinate proportional to x + x^2
        let k = 10;
        let x = TruncSeries::variable(1, 0, q(), k);
        let u = x.add(&x.pow(2)).unwrap();
        let u_inv = formal_inverse(std::slice::from_ref(&u), k).unwrap().remove(0);
        let image = u_inv.substitute(&[u.neg()]).unwrap();
        let phi = series_endomorphism(vec![image]).unwrap();
        let result = normalized(normalize_endomorphism(&phi, k, 32).unwrap());
        assert_eq!(result.d, 1);
        assert_eq!(result.eigenvalues, vec![Scalar::from_int(-1, q())]);
        let y = &result.coordinates[0];
        // y is a genuinely nonlinear eigen coordinate (an odd series in u)
        assert_eq!(phi.apply(y).unwrap(), y.neg());
        assert!(y.terms().count() > 1);
        assert!(!y.coeff(&crate::rings::MultiIndex::new(vec![1])).is_zero());
        assert_eq!(result.inverse.len(), 1);
    }
}
