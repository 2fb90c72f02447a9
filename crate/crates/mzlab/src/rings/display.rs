//! Canonical text form shared by polynomials and series.
//!
//! Terms are emitted in graded-lex ascending order, coefficients as `p/q`,
//! variables as `x1..xn`, exponents via `^` (omitted when 1). The same
//! form is parsed back by the expression parser, and parse-print-parse is
//! a fixed point.

use std::fmt;

use num_traits::Signed;

use super::multiindex::MultiIndex;
use super::scalar::Scalar;

fn monomial_string(idx: &MultiIndex) -> String {
    let mut parts = Vec::new();
    for (i, &e) in idx.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if e == 1 {
            parts.push(format!("x{}", i + 1));
        } else {
            parts.push(format!("x{}^{}", i + 1, e));
        }
    }
    parts.join("*")
}

/// Writes `terms` (already in canonical order) in the canonical text form.
pub fn write_terms<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (&'a MultiIndex, &'a Scalar)>,
) -> fmt::Result {
    let mut first = true;
    let mut any = false;
    for (idx, coeff) in terms {
        any = true;
        let (neg, mag) = match coeff {
            Scalar::Rat(r) if r.is_negative() => (true, coeff.neg()),
            _ => (false, coeff.clone()),
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
        let mono = monomial_string(idx);
        if mono.is_empty() {
            write!(f, "{mag}")?;
        } else if mag.is_one() {
            write!(f, "{mono}")?;
        } else {
            write!(f, "{mag}*{mono}")?;
        }
    }
    if !any {
        write!(f, "0")?;
    }
    Ok(())
}
