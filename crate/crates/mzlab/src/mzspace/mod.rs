//! Mathieu-Zhao space experiments on coefficient-kernel subspaces.
//!
//! A subspace is specified by a support set S: f belongs to the subspace
//! iff every coefficient of f on S vanishes. The constant-term subspace
//! S = {0} is the one behind the Duistermaat-van der Kallen theorem.
//! Radical membership (a^m in M for all large m) and the MZ property
//! (b a^m in M for m >= N_b) are bounded semidecisions: every report
//! carries its scan range, and a witness of failure is an unconditional
//! proof while a clean scan is evidence up to the bound.

mod charp;
mod ideal;
mod image;
mod power_sum;

pub use charp::charp_telescope;
pub use ideal::{
    compare_image_and_kernel_radicals, eventual_kernel_ideal, KernelIdeal,
    RadicalComparisonReport,
};
pub use image::{
    image_membership_bounded, image_membership_diagonal,
    image_membership_diagonal_derivation, image_membership_diagonal_endo,
    BoundedImageOutcome, DerivImageOutcome, DerivPreimage, DiagImageOutcome, DiagMembership,
    ImageSpec,
};
pub use power_sum::{power_sum_nilpotency_check, PowerSumReport};

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::rings::{FieldChar, LaurentPoly, LocalizedSeries, MultiIndex, Scalar, TruncSeries};

/// Carriers on which constant-term experiments run: multiplication plus
/// exact coefficient extraction. For truncated carriers a coefficient
/// query beyond the valid window is an inconclusive error, never a guess.
pub trait MzCarrier: Clone + PartialEq + fmt::Display + fmt::Debug {
    fn nvars(&self) -> usize;
    fn characteristic(&self) -> FieldChar;
    fn mul_elem(&self, other: &Self) -> Result<Self>;
    fn coeff_at(&self, a: &MultiIndex) -> Result<Scalar>;
    fn known_support(&self) -> Vec<MultiIndex>;
    fn is_zero_elem(&self) -> bool;
}

impl MzCarrier for LaurentPoly {
    fn nvars(&self) -> usize {
        LaurentPoly::nvars(self)
    }
    fn characteristic(&self) -> FieldChar {
        LaurentPoly::characteristic(self)
    }
    fn mul_elem(&self, other: &Self) -> Result<Self> {
        self.mul(other)
    }
    fn coeff_at(&self, a: &MultiIndex) -> Result<Scalar> {
        Ok(self.coeff(a))
    }
    fn known_support(&self) -> Vec<MultiIndex> {
        self.support().cloned().collect()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
}

impl MzCarrier for TruncSeries {
    fn nvars(&self) -> usize {
        TruncSeries::nvars(self)
    }
    fn characteristic(&self) -> FieldChar {
        TruncSeries::characteristic(self)
    }
    fn mul_elem(&self, other: &Self) -> Result<Self> {
        self.mul(other)
    }
    fn coeff_at(&self, a: &MultiIndex) -> Result<Scalar> {
        if !a.is_nonnegative() {
            return Ok(Scalar::zero(self.characteristic()));
        }
        if a.total_degree() > self.order() {
            return Err(Error::Inconclusive(format!(
                "coefficient at {a} lies beyond the truncation order {}",
                self.order()
            )));
        }
        Ok(self.coeff(a))
    }
    fn known_support(&self) -> Vec<MultiIndex> {
        self.terms().map(|(i, _)| i.clone()).collect()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
}

impl MzCarrier for LocalizedSeries {
    fn nvars(&self) -> usize {
        LocalizedSeries::nvars(self)
    }
    fn characteristic(&self) -> FieldChar {
        LocalizedSeries::characteristic(self)
    }
    fn mul_elem(&self, other: &Self) -> Result<Self> {
        self.mul(other)
    }
    fn coeff_at(&self, a: &MultiIndex) -> Result<Scalar> {
        LocalizedSeries::coeff_at(self, a)
    }
    fn known_support(&self) -> Vec<MultiIndex> {
        self.known_terms().into_iter().map(|(i, _)| i).collect()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
}

/// f is in the subspace iff f_a = 0 for every a in the vanishing set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SupportSet {
    /// Finite vanishing set.
    Finite(BTreeSet<MultiIndex>),
    /// Vanishing set is the complement of the listed finite set: f lies
    /// in the subspace iff its support is contained in the listed set.
    Cofinite(BTreeSet<MultiIndex>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceSpec {
    pub nvars: usize,
    pub support: SupportSet,
}

impl SubspaceSpec {
    /// The constant-term kernel {f : f_0 = 0}.
    pub fn constant_term_kernel(nvars: usize) -> Self {
        let mut s = BTreeSet::new();
        s.insert(MultiIndex::zero(nvars));
        SubspaceSpec {
            nvars,
            support: SupportSet::Finite(s),
        }
    }

    /// Parses `kernel-support: {(0,0), (1,2)}` or
    /// `kernel-support-cofinite: {...}`.
    pub fn parse(text: &str, nvars: usize) -> Result<Self> {
        let text = text.trim();
        let (cofinite, rest) = if let Some(r) = text.strip_prefix("kernel-support-cofinite:") {
            (true, r)
        } else if let Some(r) = text.strip_prefix("kernel-support:") {
            (false, r)
        } else {
            // bare set form defaults to a finite vanishing set
            (false, text)
        };
        let rest = rest.trim();
        let inner = rest
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(|| Error::InvalidInput(format!("expected {{...}} in `{text}`")))?;
        let mut set = BTreeSet::new();
        let mut depth = 0usize;
        let mut current = String::new();
        for c in inner.chars().chain(std::iter::once(',')) {
            match c {
                '(' => {
                    depth += 1;
                    current.push(c);
                }
                ')' => {
                    depth -= 1;
                    current.push(c);
                }
                ',' if depth == 0 => {
                    let tok = current.trim();
                    if !tok.is_empty() {
                        set.insert(parse_multiindex(tok, nvars)?);
                    }
                    current.clear();
                }
                _ => current.push(c),
            }
        }
        Ok(SubspaceSpec {
            nvars,
            support: if cofinite {
                SupportSet::Cofinite(set)
            } else {
                SupportSet::Finite(set)
            },
        })
    }
}

pub fn parse_multiindex(tok: &str, nvars: usize) -> Result<MultiIndex> {
    let inner = tok
        .trim()
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| Error::InvalidInput(format!("expected (a1,...,an), got `{tok}`")))?;
    let exps: Vec<i64> = inner
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<i64>()
                .map_err(|_| Error::InvalidInput(format!("bad exponent `{p}`")))
        })
        .collect::<Result<_>>()?;
    if exps.len() != nvars {
        return Err(Error::NvarsMismatch(exps.len(), nvars));
    }
    Ok(MultiIndex::new(exps))
}

impl fmt::Display for SubspaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (prefix, set) = match &self.support {
            SupportSet::Finite(s) => ("kernel-support", s),
            SupportSet::Cofinite(s) => ("kernel-support-cofinite", s),
        };
        write!(f, "{prefix}: {{")?;
        for (i, idx) in set.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{idx}")?;
        }
        write!(f, "}}")
    }
}

/// Exact membership test: all coefficients on the vanishing set are zero.
pub fn in_subspace<C: MzCarrier>(f: &C, spec: &SubspaceSpec) -> Result<bool> {
    if f.nvars() != spec.nvars {
        return Err(Error::NvarsMismatch(f.nvars(), spec.nvars));
    }
    match &spec.support {
        SupportSet::Finite(set) => {
            for a in set {
                if !f.coeff_at(a)?.is_zero() {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        SupportSet::Cofinite(allowed) => {
            for a in f.known_support() {
                if !allowed.contains(&a) {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RadicalVerdict {
    InRadicalUpToBound,
    NotInRadical { witness_m: u64 },
}

#[derive(Clone, Debug)]
pub struct RadicalReport {
    pub m0: u64,
    pub m1: u64,
    pub verdict: RadicalVerdict,
}

/// Scans a^m for m in \[m0, m1\] incrementally. The first power outside the
/// subspace is an unconditional witness; a clean scan certifies
/// membership only up to the bound.
pub fn radical_membership<C: MzCarrier>(
    a: &C,
    spec: &SubspaceSpec,
    m0: u64,
    m1: u64,
) -> Result<RadicalReport> {
    if m0 < 1 || m1 < m0 {
        return Err(Error::InvalidInput(format!(
            "need 1 <= m0 <= m1, got [{m0}, {m1}]"
        )));
    }
    let mut power = a.clone();
    for _ in 1..m0 {
        power = power.mul_elem(a)?;
    }
    for m in m0..=m1 {
        if !in_subspace(&power, spec)? {
            return Ok(RadicalReport {
                m0,
                m1,
                verdict: RadicalVerdict::NotInRadical { witness_m: m },
            });
        }
        if m < m1 {
            power = power.mul_elem(a)?;
        }
    }
    Ok(RadicalReport {
        m0,
        m1,
        verdict: RadicalVerdict::InRadicalUpToBound,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MzVerdict {
    /// b a^m lies in M for every m in \[N_b, m_max\], with N_b least.
    TailInM { n_b: u64 },
    /// Violations persist to the end of the scan; each listed m is an
    /// unconditional witness that b a^m is outside M.
    Violated { witnesses: Vec<u64> },
}

#[derive(Clone, Debug)]
pub struct MzReport<C: MzCarrier> {
    pub m_max: u64,
    pub per_b: Vec<(C, MzVerdict)>,
}

/// Tests the MZ property for the multipliers b against the radical
/// element a: requires a in r(M) up to m_max first, then scans b a^m.
pub fn mz_falsify<C: MzCarrier>(
    a: &C,
    spec: &SubspaceSpec,
    multipliers: &[C],
    m_max: u64,
) -> Result<MzReport<C>> {
    let radical = radical_membership(a, spec, 1, m_max)?;
    if let RadicalVerdict::NotInRadical { witness_m } = radical.verdict {
        return Err(Error::InvalidInput(format!(
            "a is not in the radical up to {m_max} (witness m = {witness_m}); \
             the MZ test is vacuous for it"
        )));
    }
    let mut per_b = Vec::new();
    for b in multipliers {
        let mut violations = Vec::new();
        let mut power = a.clone();
        for m in 1..=m_max {
            let product = b.mul_elem(&power)?;
            if !in_subspace(&product, spec)? {
                violations.push(m);
            }
            if m < m_max {
                power = power.mul_elem(a)?;
            }
        }
        let verdict = match violations.last() {
            None => MzVerdict::TailInM { n_b: 1 },
            Some(&last) if last < m_max => MzVerdict::TailInM { n_b: last + 1 },
            Some(_) => MzVerdict::Violated {
                witnesses: violations,
            },
        };
        per_b.push((b.clone(), verdict));
    }
    Ok(MzReport { m_max, per_b })
}
