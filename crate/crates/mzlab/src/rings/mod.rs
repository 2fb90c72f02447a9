//! Exact scalars and the carrier rings: sparse multivariate Laurent
//! polynomials, truncated multivariate power series, their localization
//! k\[\[x\]\]\[x^-1\], and dense univariate polynomials.

mod carrier;
mod display;
mod laurent;
mod localized;
mod multiindex;
mod scalar;
mod series;
mod unipoly;

pub use carrier::Carrier;
pub use laurent::LaurentPoly;
pub use localized::LocalizedSeries;
pub use multiindex::MultiIndex;
pub use scalar::{FieldChar, Scalar};
pub use series::{formal_inverse, TruncSeries};
pub use unipoly::UniPoly;

/// The weight <d, b> of the monomial x^b under the weight vector d.
pub fn weight(b: &MultiIndex, d: &MultiIndex) -> crate::error::Result<i64> {
    b.weight(d)
}
