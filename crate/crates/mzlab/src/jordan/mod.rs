//! Exact spectral analysis over Q: characteristic and minimal
//! polynomials, the rational Jordan-Chevalley decomposition A = S + N,
//! cyclotomic certification of eigenvalue factors, and the (N, d) data
//! with A^(N+d) = A^N.
//!
//! No numeric eigenvalue ever appears: all spectral reasoning happens at
//! the level of irreducible factors of the characteristic polynomial
//! over Q, so every verdict is exact.

mod cyclo;
mod factor;

pub use cyclo::{cyclotomic_order_of, cyclotomic_polynomial, totient};
pub use factor::{factor_rational, yun_squarefree};

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::rings::{FieldChar, MultiIndex, Scalar, UniPoly};

/// Square matrix over Q. All jordan entry points validate the
/// characteristic; the alias documents intent.
pub type MatrixQ = Mat;

fn check_rational_square(a: &Mat) -> Result<()> {
    if !a.is_square() {
        return Err(Error::InvalidInput("matrix must be square".into()));
    }
    if a.characteristic() != FieldChar::Zero {
        return Err(Error::InvalidInput(
            "spectral analysis runs over Q; use a characteristic-zero matrix".into(),
        ));
    }
    Ok(())
}

/// Exact characteristic polynomial det(T I - A) by the Faddeev-LeVerrier
/// recurrence.
pub fn char_poly(a: &MatrixQ) -> Result<UniPoly> {
    check_rational_square(a)?;
    let n = a.n_rows();
    let ch = FieldChar::Zero;
    let mut coeffs = vec![Scalar::zero(ch); n + 1];
    coeffs[n] = Scalar::one(ch);
    let mut m = Mat::identity(n, ch);
    for k in 1..=n {
        m = a.mul(&m);
        let c = m
            .trace()
            .mul(&Scalar::rational(-1, k as i64));
        coeffs[n - k] = c.clone();
        for i in 0..n {
            m.set(i, i, m.get(i, i).add(&c));
        }
    }
    Ok(UniPoly::from_coeffs(ch, coeffs))
}

/// Exact minimal polynomial: the first power of A that is linearly
/// dependent on the lower powers yields the least-degree monic
/// annihilator.
pub fn min_poly(a: &MatrixQ) -> Result<UniPoly> {
    check_rational_square(a)?;
    let n = a.n_rows();
    let ch = FieldChar::Zero;
    if n == 0 {
        return Ok(UniPoly::one(ch));
    }
    let flatten = |m: &Mat| -> crate::linalg::SparseVec {
        let mut v = crate::linalg::SparseVec::new();
        for i in 0..n {
            for j in 0..n {
                let c = m.get(i, j);
                if !c.is_zero() {
                    v.insert(MultiIndex::new(vec![(i * n + j) as i64]), c.clone());
                }
            }
        }
        v
    };
    let mut span = crate::linalg::SpanBasis::new(ch);
    let mut power = Mat::identity(n, ch);
    loop {
        let v = flatten(&power);
        if !span.insert(&v) {
            let coords = span.express(&v).expect("dependent power lies in the span");
            let mut coeffs: Vec<Scalar> = coords.into_iter().map(|c| c.neg()).collect();
            coeffs.push(Scalar::one(ch));
            return Ok(UniPoly::from_coeffs(ch, coeffs));
        }
        power = power.mul(a);
    }
}

/// The rational Jordan-Chevalley decomposition A = S + N.
#[derive(Clone, Debug)]
pub struct RationalJC {
    pub semisimple: MatrixQ,
    pub nilpotent: MatrixQ,
}

/// Newton iteration toward a root of the squarefree part g of the
/// characteristic polynomial: S <- S - g(S) g'(S)^(-1), starting at A.
/// Every eigenvalue of g'(S) is g' evaluated at a root of g, nonzero
/// because g is squarefree, so the inverse exists at every step.
pub fn jc_decompose(a: &MatrixQ) -> Result<RationalJC> {
    check_rational_square(a)?;
    let n = a.n_rows();
    if n == 0 {
        return Ok(RationalJC {
            semisimple: a.clone(),
            nilpotent: a.clone(),
        });
    }
    let g = char_poly(a)?.squarefree_part();
    let g_prime = g.derivative();
    let steps = (usize::BITS - (n - 1).leading_zeros()) as usize + 1; // ceil(log2 n) + 1
    let mut s = a.clone();
    for _ in 0..steps {
        let gs = g.eval_mat(&s);
        if gs.is_zero() {
            break;
        }
        let gp_inv = g_prime
            .eval_mat(&s)
            .invert()
            .expect("g'(S) is invertible for squarefree g");
        s = s.sub(&gs.mul(&gp_inv));
    }
    assert!(
        g.eval_mat(&s).is_zero(),
        "Newton iteration converges within ceil(log2 dim) + 1 steps"
    );
    let nilpotent = a.sub(&s);
    Ok(RationalJC {
        semisimple: s,
        nilpotent,
    })
}

/// Smallest N >= 1 with A^N = 0; an error if A is not nilpotent. The
/// zero matrix (and the empty matrix) give 1.
pub fn nilpotence_index(a: &MatrixQ) -> Result<u64> {
    check_rational_square(a)?;
    let n = a.n_rows();
    if a.is_zero() {
        return Ok(1);
    }
    let mut power = a.clone();
    for k in 1..=n as u64 {
        if power.is_zero() {
            return Ok(k);
        }
        power = power.mul(a);
    }
    if power.is_zero() {
        Ok(n as u64)
    } else {
        Err(Error::NotNilpotent)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FactorClass {
    ZeroRoot,
    Cyclotomic { order: u64 },
    Other,
}

impl FactorClass {
    pub fn as_str(&self) -> String {
        match self {
            FactorClass::ZeroRoot => "zero-root".into(),
            FactorClass::Cyclotomic { order } => format!("cyclotomic of order {order}"),
            FactorClass::Other => "other".into(),
        }
    }
}

/// Factorization of the characteristic polynomial with every factor
/// classified against the cyclotomic family.
#[derive(Clone, Debug)]
pub struct CycloReport {
    pub char_poly: UniPoly,
    /// (monic irreducible factor, multiplicity, classification)
    pub factors: Vec<(UniPoly, usize, FactorClass)>,
    /// lcm of the cyclotomic orders; None when a non-root-of-unity
    /// eigenvalue is present. 1 when the matrix is nilpotent.
    pub order_lcm: Option<u64>,
}

impl CycloReport {
    pub fn has_non_cyclotomic(&self) -> bool {
        self.factors
            .iter()
            .any(|(_, _, c)| matches!(c, FactorClass::Other))
    }
}

/// Factors char_poly over Q and classifies each irreducible factor as a
/// zero root, a cyclotomic of determined order, or other. A factor of
/// class `other` certifies that the matrix cannot represent a locally
/// finite endomorphism of a local domain on an invariant subspace.
pub fn roots_of_unity_orders(a: &MatrixQ) -> Result<CycloReport> {
    let p = char_poly(a)?;
    let factors_raw = factor_rational(&p)?;
    let mut factors = Vec::new();
    let mut lcm: u64 = 1;
    let mut all_cyclo = true;
    for (f, mult) in factors_raw {
        let class = if f == UniPoly::from_ints(FieldChar::Zero, &[0, 1]) {
            FactorClass::ZeroRoot
        } else {
            match cyclotomic_order_of(&f) {
                Some(order) => {
                    lcm = lcm.lcm(&order);
                    FactorClass::Cyclotomic { order }
                }
                None => {
                    all_cyclo = false;
                    FactorClass::Other
                }
            }
        };
        factors.push((f, mult, class));
    }
    Ok(CycloReport {
        char_poly: p,
        factors,
        order_lcm: if all_cyclo { Some(lcm) } else { None },
    })
}

/// Per-factor Jordan structure at the nonzero eigenvalues.
#[derive(Clone, Debug)]
pub struct JordanBlockReport {
    pub min_poly: UniPoly,
    /// (irreducible factor of char_poly other than T, multiplicity in
    /// min_poly, clean = multiplicity 1)
    pub entries: Vec<(UniPoly, usize, bool)>,
    pub all_clean: bool,
}

/// Checks that every irreducible factor at a nonzero eigenvalue divides
/// the minimal polynomial exactly once, i.e. the Jordan structure there
/// is trivial. A violation certifies that the matrix cannot arise from a
/// locally finite endomorphism of a local domain: an eigenpair
/// phi(v) = c v admits no w with phi(w) = c w + v in that setting.
pub fn jordan_block_check(a: &MatrixQ) -> Result<JordanBlockReport> {
    let cyclo = roots_of_unity_orders(a)?;
    let m = min_poly(a)?;
    let t = UniPoly::from_ints(FieldChar::Zero, &[0, 1]);
    let mut entries = Vec::new();
    let mut all_clean = true;
    for (f, _, _) in &cyclo.factors {
        if f == &t {
            continue; // the zero eigenvalue is exempt
        }
        let mut mult = 0usize;
        let mut rest = m.clone();
        while f.divides(&rest) {
            mult += 1;
            rest = rest.divrem(f).expect("divides").0;
        }
        let clean = mult <= 1;
        all_clean &= clean;
        entries.push((f.clone(), mult, clean));
    }
    Ok(JordanBlockReport {
        min_poly: m,
        entries,
        all_clean,
    })
}

/// Outcome of the eventual-periodicity certificate A^(N+d) = A^N.
#[derive(Clone, Debug)]
pub enum PeriodOutcome {
    Certificate {
        n_index: u64,
        d: u64,
    },
    Refusal {
        reason: String,
    },
}

/// Returns (N, d) with A^(N+d) = A^N verified by exact matrix powers:
/// d is the lcm of the cyclotomic orders of the nonzero eigenvalue
/// factors, N the nilpotence index of A restricted to the generalized
/// 0-eigenspace. Refuses when a non-root-of-unity eigenvalue exists or a
/// nonzero eigenvalue carries a nontrivial Jordan block.
pub fn eventual_period_certificate(a: &MatrixQ) -> Result<PeriodOutcome> {
    let cyclo = roots_of_unity_orders(a)?;
    if cyclo.has_non_cyclotomic() {
        let offending = cyclo
            .factors
            .iter()
            .find(|(_, _, c)| matches!(c, FactorClass::Other))
            .map(|(f, _, _)| f.clone())
            .unwrap();
        let reason = describe_non_cyclotomic(&offending);
        return Ok(PeriodOutcome::Refusal { reason });
    }
    let blocks = jordan_block_check(a)?;
    if !blocks.all_clean {
        let offending = blocks
            .entries
            .iter()
            .find(|(_, _, clean)| !clean)
            .map(|(f, _, _)| f.clone())
            .unwrap();
        return Ok(PeriodOutcome::Refusal {
            reason: format!(
                "nontrivial Jordan block at the nonzero eigenvalue factor {offending}"
            ),
        });
    }
    let d = cyclo.order_lcm.expect("all factors cyclotomic");
    let jc = jc_decompose(a)?;
    // generalized 0-eigenspace = ker(S); A restricted to it is nilpotent
    let kernel = jc.semisimple.kernel_basis();
    let n_index = if kernel.is_empty() {
        1
    } else {
        let n = a.n_rows();
        let s = kernel.len();
        let mut k_mat = Mat::zero(n, s, FieldChar::Zero);
        for (j, v) in kernel.iter().enumerate() {
            for (i, entry) in v.iter().enumerate() {
                k_mat.set(i, j, entry.clone());
            }
        }
        let mut restricted = Mat::zero(s, s, FieldChar::Zero);
        for (j, v) in kernel.iter().enumerate() {
            let image = a.mul_vec(v);
            let coords = k_mat
                .solve(&image)
                .expect("A preserves the generalized 0-eigenspace");
            for (i, c) in coords.into_iter().enumerate() {
                restricted.set(i, j, c);
            }
        }
        nilpotence_index(&restricted)?
    };
    let lhs = a.pow(n_index + d);
    let rhs = a.pow(n_index);
    assert_eq!(lhs, rhs, "certificate must verify by exact matrix powers");
    Ok(PeriodOutcome::Certificate { n_index, d })
}

fn describe_non_cyclotomic(f: &UniPoly) -> String {
    if f.degree() == Some(1) {
        let root = f.coeff(0).neg();
        format!("eigenvalue {root} is not a root of unity")
    } else {
        format!("factor {f} has roots that are not roots of unity")
    }
}

/// Parses a matrix file: first line n, then n lines of n entries, each
/// an integer or `p/q`.
pub fn parse_matrix(text: &str, ch: FieldChar) -> Result<Mat> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let n: usize = lines
        .next()
        .ok_or_else(|| Error::InvalidInput("empty matrix input".into()))?
        .trim()
        .parse()
        .map_err(|_| Error::InvalidInput("first line must be the dimension".into()))?;
    let mut rows = Vec::with_capacity(n);
    for _ in 0..n {
        let line = lines
            .next()
            .ok_or_else(|| Error::InvalidInput(format!("expected {n} matrix rows")))?;
        let entries: Vec<Scalar> = line
            .split_whitespace()
            .map(|tok| Scalar::parse(tok, ch))
            .collect::<Result<_>>()?;
        if entries.len() != n {
            return Err(Error::InvalidInput(format!(
                "expected {n} entries per row, found {}",
                entries.len()
            )));
        }
        rows.push(entries);
    }
    Ok(Mat::from_rows(rows, ch))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldChar {
        FieldChar::Zero
    }

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n, q())
    }

    fn mat(rows: &[&[i64]]) -> Mat {
        Mat::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| s(x)).collect())
                .collect(),
            q(),
        )
    }

    #[test]
    fn char_poly_examples() {
        // rotation-like matrix: T^2 + 1
        assert_eq!(
            char_poly(&mat(&[&[0, 1], &[-1, 0]])).unwrap(),
            UniPoly::from_ints(q(), &[1, 0, 1])
        );
        assert_eq!(
            char_poly(&Mat::identity(2, q())).unwrap(),
            UniPoly::from_ints(q(), &[1, -2, 1])
        );
        assert_eq!(
            char_poly(&mat(&[&[2]])).unwrap(),
            UniPoly::from_ints(q(), &[-2, 1])
        );
    }

    #[test]
    fn min_poly_examples() {
        assert_eq!(
            min_poly(&Mat::identity(2, q())).unwrap(),
            UniPoly::from_ints(q(), &[-1, 1])
        );
        assert_eq!(
            min_poly(&mat(&[&[1, 1], &[0, 1]])).unwrap(),
            UniPoly::from_ints(q(), &[1, -2, 1])
        );
        // swap: A^2 = I, A != +-I
        assert_eq!(
            min_poly(&mat(&[&[0, 1], &[1, 0]])).unwrap(),
            UniPoly::from_ints(q(), &[-1, 0, 1])
        );
    }

    #[test]
    fn jc_on_jordan_block() {
        let a = mat(&[&[1, 1], &[0, 1]]);
        let jc = jc_decompose(&a).unwrap();
        assert_eq!(jc.semisimple, Mat::identity(2, q()));
        assert_eq!(jc.nilpotent, mat(&[&[0, 1], &[0, 0]]));
    }

    #[test]
    fn jc_on_diagonal_is_trivial() {
        let a = mat(&[&[3, 0], &[0, -7]]);
        let jc = jc_decompose(&a).unwrap();
        assert_eq!(jc.semisimple, a);
        assert!(jc.nilpotent.is_zero());
    }

    #[test]
    fn jc_on_companion_of_mixed_multiplicity() {
        // companion of (T-1)^2 (T+1) = T^3 - T^2 - T + 1
        let a = mat(&[&[0, 0, -1], &[1, 0, 1], &[0, 1, 1]]);
        let jc = jc_decompose(&a).unwrap();
        let s_part = &jc.semisimple;
        let n_part = &jc.nilpotent;
        assert_eq!(s_part.add(n_part), a);
        assert_eq!(s_part.mul(n_part), n_part.mul(s_part));
        assert!(!n_part.is_zero());
        assert!(n_part.mul(n_part).is_zero());
        // S has eigenvalues {1, 1, -1}: char (T-1)^2 (T+1), min (T-1)(T+1)
        assert_eq!(
            char_poly(s_part).unwrap(),
            UniPoly::from_ints(q(), &[1, -1, -1, 1])
        );
        assert_eq!(
            min_poly(s_part).unwrap(),
            UniPoly::from_ints(q(), &[-1, 0, 1])
        );
        assert!(min_poly(s_part).unwrap().is_squarefree());
    }

    #[test]
    fn nilpotence_indices() {
        assert_eq!(nilpotence_index(&Mat::zero(3, 3, q())).unwrap(), 1);
        assert_eq!(nilpotence_index(&mat(&[&[0, 1], &[0, 0]])).unwrap(), 2);
        assert_eq!(
            nilpotence_index(&mat(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]])).unwrap(),
            3
        );
        assert!(matches!(
            nilpotence_index(&Mat::identity(2, q())),
            Err(Error::NotNilpotent)
        ));
    }

    #[test]
    fn cyclo_report_on_rotation() {
        let report = roots_of_unity_orders(&mat(&[&[0, 1], &[-1, 0]])).unwrap();
        assert_eq!(report.factors.len(), 1);
        assert_eq!(
            report.factors[0].2,
            FactorClass::Cyclotomic { order: 4 }
        );
        assert_eq!(report.order_lcm, Some(4));
        // product of factors reproduces char_poly
        let mut prod = UniPoly::one(q());
        for (f, m, _) in &report.factors {
            prod = prod.mul(&f.pow(*m as u64));
        }
        assert_eq!(prod, report.char_poly);
    }

    #[test]
    fn cyclo_report_flags_doubling() {
        let report = roots_of_unity_orders(&mat(&[&[2]])).unwrap();
        assert_eq!(report.factors[0].2, FactorClass::Other);
        assert!(report.has_non_cyclotomic());
        assert_eq!(report.order_lcm, None);
    }

    #[test]
    fn cyclo_report_on_swap() {
        let report = roots_of_unity_orders(&mat(&[&[0, 1], &[1, 0]])).unwrap();
        let orders: Vec<_> = report
            .factors
            .iter()
            .map(|(_, _, c)| c.clone())
            .collect();
        assert_eq!(
            orders,
            vec![
                FactorClass::Cyclotomic { order: 1 },
                FactorClass::Cyclotomic { order: 2 }
            ]
        );
        assert_eq!(report.order_lcm, Some(2));
    }

    #[test]
    fn block_check_flags_unipotent() {
        let report = jordan_block_check(&mat(&[&[1, 1], &[0, 1]])).unwrap();
        assert!(!report.all_clean);
        assert_eq!(report.entries.len(), 1);
        assert_eq!(report.entries[0].1, 2);
    }

    #[test]
    fn block_check_clean_cases() {
        assert!(jordan_block_check(&mat(&[&[1, 0], &[0, -1]]))
            .unwrap()
            .all_clean);
        // nilpotent: only the zero eigenvalue, exempt
        assert!(jordan_block_check(&mat(&[&[0, 1], &[0, 0]]))
            .unwrap()
            .all_clean);
    }

    #[test]
    fn period_certificate_for_minus_one() {
        match eventual_period_certificate(&mat(&[&[-1]])).unwrap() {
            PeriodOutcome::Certificate { n_index, d } => {
                assert_eq!((n_index, d), (1, 2));
            }
            PeriodOutcome::Refusal { reason } => panic!("unexpected refusal: {reason}"),
        }
    }

    #[test]
    fn period_certificate_for_nilpotent() {
        match eventual_period_certificate(&mat(&[&[0, 1], &[0, 0]])).unwrap() {
            PeriodOutcome::Certificate { n_index, d } => {
                assert_eq!((n_index, d), (2, 1));
            }
            PeriodOutcome::Refusal { reason } => panic!("unexpected refusal: {reason}"),
        }
    }

    #[test]
    fn period_refusal_for_two() {
        match eventual_period_certificate(&mat(&[&[2]])).unwrap() {
            PeriodOutcome::Refusal { reason } => {
                assert!(reason.contains("eigenvalue 2 is not a root of unity"));
            }
            _ => panic!("expected refusal"),
        }
    }

    #[test]
    fn period_refusal_for_unipotent_block() {
        match eventual_period_certificate(&mat(&[&[1, 1], &[0, 1]])).unwrap() {
            PeriodOutcome::Refusal { reason } => {
                assert!(reason.contains("Jordan block"));
            }
            _ => panic!("expected refusal"),
        }
    }

    #[test]
    fn period_d_is_minimal_among_divisors() {
        // diag(-1, rotation by i): orders {2, 4}, d = 4; divisors 1, 2 fail
        let a = mat(&[&[-1, 0, 0], &[0, 0, 1], &[0, -1, 0]]);
        match eventual_period_certificate(&a).unwrap() {
            PeriodOutcome::Certificate { n_index, d } => {
                assert_eq!(d, 4);
                for div in [1u64, 2] {
                    assert_ne!(a.pow(n_index + div), a.pow(n_index), "divisor {div}");
                }
            }
            _ => panic!("expected certificate"),
        }
    }

    #[test]
    fn parse_matrix_roundtrip() {
        let m = parse_matrix("2\n1 1/2\n-3 4\n", q()).unwrap();
        assert_eq!(m.get(0, 1), &Scalar::rational(1, 2));
        assert_eq!(m.get(1, 0), &s(-3));
        assert!(parse_matrix("2\n1 2\n", q()).is_err());
    }
}
