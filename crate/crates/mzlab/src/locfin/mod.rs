//! Local finiteness machinery: cyclic subspaces, local nilpotence and the
//! D-degree, invariant spaces V = sum_j phi^j(W) with their exact action
//! matrices, and eventual-periodicity certificates phi^i = phi^j.
//!
//! Everything here is a bounded semidecision: closure is certified only
//! up to a dimension cap, and series comparisons only up to the
//! truncation order. Reports always carry the bound that was used;
//! `ExceededCap` is evidence of non-finiteness, not a proof.

mod normalize;

pub use normalize::{normalize_endomorphism, NormalizeOutcome, NormalizedCoordinates};

use crate::error::{Error, Result};
use crate::linalg::{Mat, SpanBasis};
use crate::operators::{Derivation, Endomorphism, Operator};
use crate::rings::Carrier;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClosureStatus {
    Closed,
    ExceededCap,
}

impl ClosureStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            ClosureStatus::Closed => "closed",
            ClosureStatus::ExceededCap => "exceeded_cap",
        }
    }
}

/// The span of the iterates L^m(a), echelonized as it grows.
#[derive(Clone, Debug)]
pub struct CyclicSpace<C: Carrier> {
    pub element: C,
    pub basis: Vec<C>,
    /// Action of L on the span in the iterate basis; present iff closed.
    pub action: Option<Mat>,
    pub status: ClosureStatus,
    pub cap: usize,
}

impl<C: Carrier> CyclicSpace<C> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Iterates L on a, echelonizing, until an iterate falls into the span of
/// the previous ones (closed) or the dimension exceeds the cap.
pub fn cyclic_space<C: Carrier>(op: &Operator<C>, a: &C, cap: usize) -> Result<CyclicSpace<C>> {
    if cap < 1 {
        return Err(Error::InvalidInput("cap must be at least 1".into()));
    }
    let ch = a.characteristic();
    let mut span = SpanBasis::new(ch);
    let mut basis: Vec<C> = Vec::new();
    let mut current = a.clone();
    loop {
        if !span.insert(&current.term_map()) {
            // dependent: the span is L-invariant
            let k = basis.len();
            let mut action = Mat::zero(k, k, ch);
            for (j, b) in basis.iter().enumerate() {
                let image = op.apply(b)?;
                let coords = span
                    .express(&image.term_map())
                    .expect("closed span contains images of basis elements");
                for (i, c) in coords.into_iter().enumerate() {
                    action.set(i, j, c);
                }
            }
            return Ok(CyclicSpace {
                element: a.clone(),
                basis,
                action: Some(action),
                status: ClosureStatus::Closed,
                cap,
            });
        }
        basis.push(current.clone());
        if basis.len() > cap {
            return Ok(CyclicSpace {
                element: a.clone(),
                basis,
                action: None,
                status: ClosureStatus::ExceededCap,
                cap,
            });
        }
        current = op.apply(&current)?;
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LocalNilpotency {
    /// L^m(a) = 0 with m minimal.
    Yes { m: u64 },
    /// The cyclic space closed with a nontrivial linear relation, so no
    /// power of L annihilates a.
    NoEvidence,
    ExceededCap,
}

/// Decides whether some power of L kills a, within the dimension cap.
pub fn is_locally_nilpotent_on<C: Carrier>(
    op: &Operator<C>,
    a: &C,
    cap: usize,
) -> Result<LocalNilpotency> {
    if cap < 1 {
        return Err(Error::InvalidInput("cap must be at least 1".into()));
    }
    let ch = a.characteristic();
    let mut span = SpanBasis::new(ch);
    let mut current = a.clone();
    let mut m = 0u64;
    loop {
        if current.is_zero() {
            return Ok(LocalNilpotency::Yes { m });
        }
        if !span.insert(&current.term_map()) {
            // nontrivial relation: on the cyclic span the minimal
            // polynomial of L has a nonzero lower coefficient, so no
            // iterate of a ever reaches 0
            return Ok(LocalNilpotency::NoEvidence);
        }
        if span.dim() > cap {
            return Ok(LocalNilpotency::ExceededCap);
        }
        current = op.apply(&current)?;
        m += 1;
    }
}

/// The D-degree of a nonzero locally nilpotent element:
/// min { n >= 0 : D^(n+1)(a) = 0 }. Constants have degree 0.
pub fn d_degree<C: Carrier>(d: &Derivation<C>, a: &C, cap: usize) -> Result<u64> {
    if a.is_zero() {
        return Err(Error::InvalidInput(
            "the D-degree of the zero element is undefined".into(),
        ));
    }
    match is_locally_nilpotent_on(&Operator::Derivation(d.clone()), a, cap)? {
        LocalNilpotency::Yes { m } => Ok(m - 1),
        LocalNilpotency::NoEvidence => Err(Error::InvalidInput(
            "D is not locally nilpotent on the element".into(),
        )),
        LocalNilpotency::ExceededCap => Err(Error::Inconclusive(format!(
            "local nilpotence not certified within cap {cap}"
        ))),
    }
}

/// deg_D(ab) = deg_D(a) + deg_D(b) on integral-domain carriers.
pub fn degree_additivity_check<C: Carrier>(
    d: &Derivation<C>,
    a: &C,
    b: &C,
    cap: usize,
) -> Result<bool> {
    let da = d_degree(d, a, cap)?;
    let db = d_degree(d, b, cap)?;
    let dab = d_degree(d, &a.try_mul(b)?, cap)?;
    Ok(dab == da + db)
}

/// If u is a unit and D locally nilpotent on it, then D(u) must vanish.
pub fn unit_kill_check<C: Carrier>(d: &Derivation<C>, u: &C, cap: usize) -> Result<bool> {
    if !u.is_unit() {
        return Err(Error::InvalidInput(format!(
            "{u} is not a unit of the carrier ring"
        )));
    }
    match is_locally_nilpotent_on(&Operator::Derivation(d.clone()), u, cap)? {
        LocalNilpotency::Yes { .. } => Ok(d.apply(u)?.is_zero()),
        LocalNilpotency::NoEvidence => Err(Error::InvalidInput(
            "D is not locally nilpotent on the unit".into(),
        )),
        LocalNilpotency::ExceededCap => Err(Error::Inconclusive(format!(
            "local nilpotence on the unit not certified within cap {cap}"
        ))),
    }
}

/// The closure V = sum_{j>=0} phi^j(W) of a generator list under phi,
/// with the exact action matrix of phi on V.
#[derive(Clone, Debug)]
pub struct InvariantSpace<C: Carrier> {
    pub generators: Vec<C>,
    pub basis: Vec<C>,
    /// Column j holds the coordinates of phi(basis\[j\]); present iff closed.
    pub action: Option<Mat>,
    pub status: ClosureStatus,
    pub cap: usize,
}

impl<C: Carrier> InvariantSpace<C> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

pub fn build_invariant_space<C: Carrier>(
    phi: &Endomorphism<C>,
    generators: &[C],
    cap: usize,
) -> Result<InvariantSpace<C>> {
    if cap < generators.len() {
        return Err(Error::InvalidInput(format!(
            "cap {cap} is smaller than the generator count {}",
            generators.len()
        )));
    }
    let ch = generators
        .first()
        .map(|g| g.characteristic())
        .unwrap_or(crate::rings::FieldChar::Zero);
    let mut span = SpanBasis::new(ch);
    let mut basis: Vec<C> = Vec::new();
    for g in generators {
        if span.insert(&g.term_map()) {
            basis.push(g.clone());
        }
    }
    let mut i = 0;
    while i < basis.len() {
        let image = phi.apply(&basis[i])?;
        if span.insert(&image.term_map()) {
            basis.push(image);
            if basis.len() > cap {
                return Ok(InvariantSpace {
                    generators: generators.to_vec(),
                    basis,
                    action: None,
                    status: ClosureStatus::ExceededCap,
                    cap,
                });
            }
        }
        i += 1;
    }
    let k = basis.len();
    let mut action = Mat::zero(k, k, ch);
    for (j, b) in basis.iter().enumerate() {
        let coords = span
            .express(&phi.apply(b)?.term_map())
            .expect("closed span contains images");
        for (r, c) in coords.into_iter().enumerate() {
            action.set(r, j, c);
        }
    }
    Ok(InvariantSpace {
        generators: generators.to_vec(),
        basis,
        action: Some(action),
        status: ClosureStatus::Closed,
        cap,
    })
}

/// What a periodicity certificate was checked against.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scope {
    /// Matrix powers on an invariant-space basis.
    OnBasis,
    /// Generator images compared exactly (polynomial carriers).
    OnGeneratorsExact,
    /// Generator images compared at the given truncation order.
    OnGeneratorsAtOrder(i64),
}

impl Scope {
    pub fn as_str(&self) -> &'static str {
        match self {
            Scope::OnBasis => "on_basis",
            Scope::OnGeneratorsExact => "on_generators_exact",
            Scope::OnGeneratorsAtOrder(_) => "on_generators_at_order_K",
        }
    }
}

/// phi^i = phi^j with 1 <= i < j on the declared scope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicityCertificate {
    pub i: u64,
    pub j: u64,
    pub scope: Scope,
}

/// Finds the lexicographically minimal pair (i, j) with phi^i = phi^j on
/// generator images, storing all iterates up to i_max and comparing every
/// pair exactly. None is a valid outcome: raise i_max (or the truncation
/// order) and retry.
pub fn detect_periodicity<C: Carrier>(
    phi: &Endomorphism<C>,
    i_max: u64,
) -> Result<Option<PeriodicityCertificate>> {
    if i_max < 2 {
        return Err(Error::InvalidInput("i_max must be at least 2".into()));
    }
    let scope = match phi.images().first().and_then(|im| im.truncation_order()) {
        Some(k) => Scope::OnGeneratorsAtOrder(k),
        None => Scope::OnGeneratorsExact,
    };
    let mut iterates: Vec<Vec<C>> = Vec::with_capacity(i_max as usize);
    iterates.push(phi.images().to_vec());
    for _ in 1..i_max {
        let prev = iterates.last().unwrap();
        let next: Vec<C> = prev.iter().map(|im| phi.apply(im)).collect::<Result<_>>()?;
        iterates.push(next);
    }
    for i in 0..iterates.len() {
        for j in (i + 1)..iterates.len() {
            if iterates[i] == iterates[j] {
                return Ok(Some(PeriodicityCertificate {
                    i: i as u64 + 1,
                    j: j as u64 + 1,
                    scope: scope.clone(),
                }));
            }
        }
    }
    Ok(None)
}

/// Same search on a matrix: A^i = A^j by exact comparison of powers.
pub fn detect_periodicity_matrix(a: &Mat, i_max: u64) -> Result<Option<PeriodicityCertificate>> {
    if i_max < 2 {
        return Err(Error::InvalidInput("i_max must be at least 2".into()));
    }
    let mut powers = Vec::with_capacity(i_max as usize);
    powers.push(a.clone());
    for _ in 1..i_max {
        powers.push(powers.last().unwrap().mul(a));
    }
    for i in 0..powers.len() {
        for j in (i + 1)..powers.len() {
            if powers[i] == powers[j] {
                return Ok(Some(PeriodicityCertificate {
                    i: i as u64 + 1,
                    j: j as u64 + 1,
                    scope: Scope::OnBasis,
                }));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::{scaling_derivation, series_endomorphism};
    use crate::rings::{FieldChar, LaurentPoly, MultiIndex, Scalar, TruncSeries};

    fn q() -> FieldChar {
        FieldChar::Zero
    }

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n, q())
    }

    fn ddx() -> Operator<LaurentPoly> {
        Operator::Derivation(Derivation::new(vec![LaurentPoly::one(1, q())]).unwrap())
    }

    #[test]
    fn cyclic_space_of_cubic_under_d_dx() {
        let x3 = LaurentPoly::monomial(MultiIndex::new(vec![3]), s(1));
        let space = cyclic_space(&ddx(), &x3, 16).unwrap();
        assert_eq!(space.status, ClosureStatus::Closed);
        assert_eq!(space.dim(), 4);
        // nilpotent action: the matrix to the 4th power vanishes
        let a = space.action.unwrap();
        assert!(a.pow(4).is_zero());
    }

    #[test]
    fn cyclic_space_action_reproduces_operator() {
        let f = LaurentPoly::from_terms(
            1,
            q(),
            vec![
                (MultiIndex::new(vec![2]), s(1)),
                (MultiIndex::new(vec![0]), s(-3)),
            ],
        )
        .unwrap();
        let space = cyclic_space(&ddx(), &f, 16).unwrap();
        let action = space.action.clone().unwrap();
        // column j of the action = coordinates of L(basis[j]) in the basis,
        // verified by re-expanding
        for (j, b) in space.basis.iter().enumerate() {
            let image = ddx().apply(b).unwrap();
            let mut recombined = b.zero_like();
            for (i, bi) in space.basis.iter().enumerate() {
                recombined = recombined
                    .try_add(&bi.scalar_mul(action.get(i, j)))
                    .unwrap();
            }
            assert_eq!(recombined, image);
        }
    }

    #[test]
    fn eigenvector_has_one_dimensional_cyclic_space() {
        let d = scaling_derivation(
            &LaurentPoly::variable(2, 0, q()),
            &[s(2), s(3)],
        )
        .unwrap();
        let m = LaurentPoly::monomial(MultiIndex::new(vec![1, -2]), s(1));
        let space = cyclic_space(&Operator::Derivation(d), &m, 8).unwrap();
        assert_eq!(space.status, ClosureStatus::Closed);
        assert_eq!(space.dim(), 1);
    }

    #[test]
    fn unipotent_series_endomorphism_exceeds_cap() {
        // phi(x1) = x1 + x2, phi(x2) = x2 on k[[x1,x2]] at order 14:
        // the iterates of 1/(1-x1) are 1/(1-x1-m x2), which stay
        // independent, so a cap of 10 is exceeded
        let k = 14;
        let phi = series_endomorphism(vec![
            TruncSeries::variable(2, 0, q(), k)
                .add(&TruncSeries::variable(2, 1, q(), k))
                .unwrap(),
            TruncSeries::variable(2, 1, q(), k),
        ])
        .unwrap();
        let a = TruncSeries::one(2, q(), k)
            .sub(&TruncSeries::variable(2, 0, q(), k))
            .unwrap()
            .inverse()
            .unwrap();
        let space = cyclic_space(&Operator::Endomorphism(phi), &a, 10).unwrap();
        assert_eq!(space.status, ClosureStatus::ExceededCap);
    }

    #[test]
    fn scaling_derivation_on_series_exceeds_caps() {
        // v d/dv is locally finite on monomials but not on 1/(1-v); on
        // k[[v]] a nonzero derivation can never be locally finite, and
        // the cyclic space of the geometric series witnesses the growth
        let k = 20;
        let v = TruncSeries::variable(1, 0, q(), k);
        let d = scaling_derivation(&v, &[s(1)]).unwrap();
        let geometric = TruncSeries::one(1, q(), k)
            .sub(&v)
            .unwrap()
            .inverse()
            .unwrap();
        let space =
            cyclic_space(&Operator::Derivation(d), &geometric, 12).unwrap();
        assert_eq!(space.status, ClosureStatus::ExceededCap);
    }

    #[test]
    fn local_nilpotency_answers() {
        let x5 = LaurentPoly::monomial(MultiIndex::new(vec![5]), s(1));
        assert_eq!(
            is_locally_nilpotent_on(&ddx(), &x5, 16).unwrap(),
            LocalNilpotency::Yes { m: 6 }
        );

        // D = x d/dx fixes x, never kills it
        let euler = scaling_derivation(&LaurentPoly::variable(1, 0, q()), &[s(1)]).unwrap();
        let x = LaurentPoly::variable(1, 0, q());
        assert_eq!(
            is_locally_nilpotent_on(&Operator::Derivation(euler), &x, 16).unwrap(),
            LocalNilpotency::NoEvidence
        );

        // d/dx on x^-1 escalates forever: cap exceeded
        let xinv = LaurentPoly::monomial(MultiIndex::new(vec![-1]), s(1));
        assert_eq!(
            is_locally_nilpotent_on(&ddx(), &xinv, 12).unwrap(),
            LocalNilpotency::ExceededCap
        );
    }

    #[test]
    fn shift_ederivation_kills_t_squared_in_three_steps() {
        // delta = 1 - phi, phi(t) = t + 1 over Q:
        // delta(t^2) = -2t - 1, delta^2(t^2) = 2, delta^3(t^2) = 0
        let t = LaurentPoly::variable(1, 0, q());
        let phi = Endomorphism::new(vec![t.add(&LaurentPoly::one(1, q())).unwrap()]).unwrap();
        let delta = Operator::EDerivation(crate::operators::EDerivation::new(phi));
        let t2 = t.mul(&t).unwrap();
        assert_eq!(
            is_locally_nilpotent_on(&delta, &t2, 16).unwrap(),
            LocalNilpotency::Yes { m: 3 }
        );
    }

    #[test]
    fn d_degree_values() {
        let d = Derivation::new(vec![LaurentPoly::one(1, q())]).unwrap();
        let x3 = LaurentPoly::monomial(MultiIndex::new(vec![3]), s(1));
        assert_eq!(d_degree(&d, &x3, 16).unwrap(), 3);
        let seven = LaurentPoly::constant(s(7), 1);
        assert_eq!(d_degree(&d, &seven, 16).unwrap(), 0);

        let d1 = Derivation::new(vec![
            LaurentPoly::one(2, q()),
            LaurentPoly::zero(2, q()),
        ])
        .unwrap();
        let m = LaurentPoly::monomial(MultiIndex::new(vec![2, 5]), s(1));
        assert_eq!(d_degree(&d1, &m, 16).unwrap(), 2);
    }

    #[test]
    fn degree_additivity_examples() {
        let d = Derivation::new(vec![LaurentPoly::one(1, q())]).unwrap();
        let x2 = LaurentPoly::monomial(MultiIndex::new(vec![2]), s(1));
        let x3 = LaurentPoly::monomial(MultiIndex::new(vec![3]), s(1));
        assert!(degree_additivity_check(&d, &x2, &x3, 16).unwrap());
        let c = LaurentPoly::constant(s(-4), 1);
        assert!(degree_additivity_check(&d, &x2, &c, 16).unwrap());
    }

    #[test]
    fn unit_kill_check_cases() {
        // the zero derivation is locally nilpotent and kills every unit
        let zero_d = Derivation::new(vec![LaurentPoly::zero(1, q())]).unwrap();
        let u = LaurentPoly::monomial(MultiIndex::new(vec![-3]), s(2));
        assert!(unit_kill_check(&zero_d, &u, 8).unwrap());

        // d/dx is not locally nilpotent on x^-1: inconclusive
        let d = Derivation::new(vec![LaurentPoly::one(1, q())]).unwrap();
        let xinv = LaurentPoly::monomial(MultiIndex::new(vec![-1]), s(1));
        assert!(matches!(
            unit_kill_check(&d, &xinv, 8),
            Err(Error::Inconclusive(_))
        ));

        // non-units are rejected
        let f = LaurentPoly::one(1, q())
            .add(&LaurentPoly::variable(1, 0, q()))
            .unwrap();
        assert!(matches!(
            unit_kill_check(&zero_d, &f, 8),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn invariant_space_examples() {
        // phi(x1) = 2 x1: V = span{x1}, action [2]
        let phi = crate::operators::diagonal_endomorphism(
            &LaurentPoly::variable(1, 0, q()),
            &[s(2)],
        )
        .unwrap();
        let w = vec![LaurentPoly::variable(1, 0, q())];
        let v = build_invariant_space(&phi, &w, 8).unwrap();
        assert_eq!(v.status, ClosureStatus::Closed);
        assert_eq!(v.dim(), 1);
        assert_eq!(v.action.as_ref().unwrap().get(0, 0), &s(2));

        // swap: dim 2, permutation action
        let swap = Endomorphism::new(vec![
            LaurentPoly::variable(2, 1, q()),
            LaurentPoly::variable(2, 0, q()),
        ])
        .unwrap();
        let w = vec![
            LaurentPoly::variable(2, 0, q()),
            LaurentPoly::variable(2, 1, q()),
        ];
        let v = build_invariant_space(&swap, &w, 8).unwrap();
        assert_eq!(v.dim(), 2);
        let a = v.action.unwrap();
        assert_eq!(a.get(0, 0), &s(0));
        assert_eq!(a.get(1, 0), &s(1));
        assert_eq!(a.get(0, 1), &s(1));
        assert_eq!(a.get(1, 1), &s(0));

        // unipotent: phi(x1) = x1 + x2, phi(x2) = x2
        let uni = Endomorphism::new(vec![
            LaurentPoly::variable(2, 0, q())
                .add(&LaurentPoly::variable(2, 1, q()))
                .unwrap(),
            LaurentPoly::variable(2, 1, q()),
        ])
        .unwrap();
        let v = build_invariant_space(&uni, &w, 8).unwrap();
        assert_eq!(v.dim(), 2);
        let a = v.action.unwrap();
        // phi(x1) = 1*x1 + 1*x2, phi(x2) = x2
        assert_eq!(a.get(0, 0), &s(1));
        assert_eq!(a.get(1, 0), &s(1));
        assert_eq!(a.get(0, 1), &s(0));
        assert_eq!(a.get(1, 1), &s(1));
    }

    #[test]
    fn periodicity_swap_is_1_3() {
        let swap = Endomorphism::new(vec![
            LaurentPoly::variable(2, 1, q()),
            LaurentPoly::variable(2, 0, q()),
        ])
        .unwrap();
        let cert = detect_periodicity(&swap, 10).unwrap().unwrap();
        assert_eq!((cert.i, cert.j), (1, 3));
        assert_eq!(cert.scope, Scope::OnGeneratorsExact);
    }

    #[test]
    fn periodicity_projection_is_1_2() {
        // phi(x1) = x1, phi(x2) = x1: phi^2 = phi
        let phi = Endomorphism::new(vec![
            LaurentPoly::variable(2, 0, q()),
            LaurentPoly::variable(2, 0, q()),
        ])
        .unwrap();
        let cert = detect_periodicity(&phi, 10).unwrap().unwrap();
        assert_eq!((cert.i, cert.j), (1, 2));
    }

    #[test]
    fn unipotent_series_map_has_no_period() {
        // phi(x1) = x1 + x1^2 at order 6: no pair up to 10
        let k = 6;
        let phi = series_endomorphism(vec![
            TruncSeries::variable(1, 0, q(), k)
                .add(&TruncSeries::variable(1, 0, q(), k).pow(2))
                .unwrap(),
        ])
        .unwrap();
        assert!(detect_periodicity(&phi, 10).unwrap().is_none());
    }

    #[test]
    fn periodicity_certificate_reverifies_on_random_elements() {
        let swap = Endomorphism::new(vec![
            LaurentPoly::variable(2, 1, q()),
            LaurentPoly::variable(2, 0, q()),
        ])
        .unwrap();
        let cert = detect_periodicity(&swap, 8).unwrap().unwrap();
        let op = Operator::Endomorphism(swap);
        // soundness on generators and on assorted non-generator elements
        let mut probes = vec![
            LaurentPoly::variable(2, 0, q()),
            LaurentPoly::variable(2, 1, q()),
        ];
        for a in -2i64..3 {
            for b in -1i64..2 {
                probes.push(
                    LaurentPoly::monomial(MultiIndex::new(vec![a, b]), s(2 * a + 7 * b + 1))
                        .add(&LaurentPoly::one(2, q()))
                        .unwrap(),
                );
            }
        }
        for f in probes {
            assert_eq!(
                crate::operators::iterate_operator(&op, cert.i, &f).unwrap(),
                crate::operators::iterate_operator(&op, cert.j, &f).unwrap()
            );
        }
        // minimality: every lexicographically smaller pair disagrees
        for i in 1..cert.j {
            for j in (i + 1)..=if i == cert.i { cert.j - 1 } else { cert.j } {
                if (i, j) == (cert.i, cert.j) {
                    continue;
                }
                if (i, j) < (cert.i, cert.j) {
                    let x1 = LaurentPoly::variable(2, 0, q());
                    let x2 = LaurentPoly::variable(2, 1, q());
                    let differs = crate::operators::iterate_operator(&op, i, &x1).unwrap()
                        != crate::operators::iterate_operator(&op, j, &x1).unwrap()
                        || crate::operators::iterate_operator(&op, i, &x2).unwrap()
                            != crate::operators::iterate_operator(&op, j, &x2).unwrap();
                    assert!(differs, "pair ({i},{j}) should differ");
                }
            }
        }
    }

    #[test]
    fn matrix_periodicity_on_swap() {
        let a = Mat::from_rows(vec![vec![s(0), s(1)], vec![s(1), s(0)]], q());
        let cert = detect_periodicity_matrix(&a, 8).unwrap().unwrap();
        assert_eq!((cert.i, cert.j), (1, 3));
        assert_eq!(cert.scope, Scope::OnBasis);
    }
}
