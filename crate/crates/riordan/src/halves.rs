//! Vertical and horizontal halves of a Riordan array.
//!
//! For a triangle `T` expanded from `(g, f)`, the vertical half takes
//! entries `V[n][k] = T[2n-k][n]` and the horizontal half
//! `H[n][k] = T[2n][n+k]`. Both are again Riordan arrays, built on
//! `phi = rev(x^2/f)`:
//!
//! - `V = (x phi' g(phi)/phi, phi) = (phi phi' g(phi)/f(phi), phi)`
//! - `H = (same first component, f(phi))`, where `f(phi) = phi^2/x`
//!
//! The index-extraction forms are kept as oracles; the closed forms are the
//! production constructors and must match them. Both closed forms of the
//! shared first component are evaluated and compared on every call.
//!
//! Precision: a pair of precision `N` yields halves of precision `N - 2`
//! (one order lost reverting `x^2/f`, one differentiating `phi`), so `N`
//! must be at least 4 and emitting `n` rows of a half needs `N >= n + 2`.

use std::fmt;

use num::One;

use crate::array::{RiordanArray, RiordanError, TriangleMatrix};
use crate::rational::{int, Rat};
use crate::series::{Series, SeriesError};

/// Errors from half-construction and factorization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HalvesError {
    /// The source triangle has too few rows for the requested half.
    InsufficientRows { needed: usize, available: usize },
    /// The pair's precision is too low to build a half at all.
    InsufficientPrecision { needed: usize, available: usize },
    /// Two forms that are provably equal disagreed, or a factorization
    /// identity failed; usually means the working precision is too low.
    Consistency(String),
    /// An underlying group operation failed.
    Riordan(RiordanError),
    /// An underlying series operation failed.
    Series(SeriesError),
}

impl fmt::Display for HalvesError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HalvesError::InsufficientRows { needed, available } => {
                write!(f, "needs a triangle with {needed} rows, only {available} available")
            }
            HalvesError::InsufficientPrecision { needed, available } => {
                write!(f, "needs precision {needed}, only {available} available")
            }
            HalvesError::Consistency(detail) => {
                write!(f, "consistency check failed (precision too low?): {detail}")
            }
            HalvesError::Riordan(e) => write!(f, "{e}"),
            HalvesError::Series(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for HalvesError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            HalvesError::Riordan(e) => Some(e),
            HalvesError::Series(e) => Some(e),
            _ => None,
        }
    }
}

impl From<RiordanError> for HalvesError {
    fn from(e: RiordanError) -> Self {
        HalvesError::Riordan(e)
    }
}

impl From<SeriesError> for HalvesError {
    fn from(e: SeriesError) -> Self {
        HalvesError::Series(e)
    }
}

/// A Riordan array together with its halves and their factorization.
///
/// The factors satisfy (modulo truncation):
/// - `vertical = left_factor * hitting_factor`
/// - `horizontal = vertical * (1, f)`
/// - `vertical^-1 * horizontal = (1, f)`
/// - `vertical * source = left_factor * horizontal`
#[derive(Debug, Clone)]
pub struct HalfDecomposition {
    pub source: RiordanArray,
    /// `phi = rev(x^2/f)`, the second component of the vertical half.
    pub phi: Series,
    pub vertical: RiordanArray,
    pub horizontal: RiordanArray,
    /// `(x phi'/phi, phi)`, always in the hitting-time subgroup.
    pub hitting_factor: RiordanArray,
    /// `(g(phi), x)`.
    pub left_factor: RiordanArray,
}

/// `phi = rev(x^2/f)`: the unique series with `(x^2/f)(phi) = x`,
/// `phi(0) = 0`, `phi'(0) = f'(0)`. Loses one order of precision.
pub fn phi_of(f: &Series) -> Result<Series, HalvesError> {
    let n = f.precision();
    let x2 = Series::monomial(Rat::one(), 2, n);
    Ok(x2.div(f)?.revert()?)
}

/// Shared first component of both halves, computed by the two closed forms
/// `x phi' g(phi) / phi` and `phi phi' g(phi) / f(phi)`; they must agree.
fn half_first_component(r: &RiordanArray, phi: &Series) -> Result<Series, HalvesError> {
    let g_of_phi = r.g().compose(phi)?;
    let phi_d = phi.derive()?;
    let direct = phi_d.shift_up(1).div(phi)?.mul(&g_of_phi);
    let f_of_phi = r.f().compose(phi)?;
    let via_f = phi.mul(&phi_d).mul(&g_of_phi).div(&f_of_phi)?;
    if !direct.agrees_with(&via_f) {
        return Err(HalvesError::Consistency(
            "the two closed forms of the half's first component disagree".into(),
        ));
    }
    Ok(direct)
}

fn ensure_precision(r: &RiordanArray) -> Result<(), HalvesError> {
    if r.precision() < 4 {
        return Err(HalvesError::InsufficientPrecision { needed: 4, available: r.precision() });
    }
    Ok(())
}

/// The vertical half as a Riordan array: `(x phi' g(phi)/phi, phi)`.
pub fn vertical_half(r: &RiordanArray) -> Result<RiordanArray, HalvesError> {
    ensure_precision(r)?;
    let phi = phi_of(r.f())?;
    let g = half_first_component(r, &phi)?;
    Ok(RiordanArray::new(g, phi)?)
}

/// The horizontal half as a Riordan array: same first component as the
/// vertical half, second component `f(phi) = phi^2/x` (both forms checked).
pub fn horizontal_half(r: &RiordanArray) -> Result<RiordanArray, HalvesError> {
    ensure_precision(r)?;
    let phi = phi_of(r.f())?;
    let g = half_first_component(r, &phi)?;
    let f_of_phi = r.f().compose(&phi)?;
    let via_square = phi.mul(&phi).div(&Series::x(phi.precision()))?;
    if !f_of_phi.agrees_with(&via_square) {
        return Err(HalvesError::Consistency("f(phi) does not equal phi^2/x".into()));
    }
    Ok(RiordanArray::new(g, f_of_phi)?)
}

/// Ground-truth vertical half by index extraction: `V[n][k] = T[2n-k][n]`.
pub fn vertical_half_oracle(
    t: &TriangleMatrix,
    nrows: usize,
) -> Result<TriangleMatrix, HalvesError> {
    ensure_rows(t, nrows)?;
    let rows = (0..nrows)
        .map(|n| (0..=n).map(|k| t.entry(2 * n - k, n)).collect())
        .collect();
    Ok(TriangleMatrix::from_rows(rows))
}

/// Ground-truth horizontal half by index extraction: `H[n][k] = T[2n][n+k]`.
pub fn horizontal_half_oracle(
    t: &TriangleMatrix,
    nrows: usize,
) -> Result<TriangleMatrix, HalvesError> {
    ensure_rows(t, nrows)?;
    let rows = (0..nrows)
        .map(|n| (0..=n).map(|k| t.entry(2 * n, n + k)).collect())
        .collect();
    Ok(TriangleMatrix::from_rows(rows))
}

fn ensure_rows(t: &TriangleMatrix, nrows: usize) -> Result<(), HalvesError> {
    let needed = if nrows == 0 { 0 } else { 2 * (nrows - 1) + 1 };
    if t.nrows() < needed {
        return Err(HalvesError::InsufficientRows { needed, available: t.nrows() });
    }
    Ok(())
}

/// True when the two pairs agree on their common known prefix, componentwise.
pub fn pairs_agree(a: &RiordanArray, b: &RiordanArray) -> bool {
    a.g().agrees_with(b.g()) && a.f().agrees_with(b.f())
}

/// Build both halves and the factorization `V = (g(phi), x)(x phi'/phi, phi)`,
/// verifying every identity listed on [`HalfDecomposition`].
pub fn decompose(r: &RiordanArray) -> Result<HalfDecomposition, HalvesError> {
    ensure_precision(r)?;
    let phi = phi_of(r.f())?;
    let vertical = vertical_half(r)?;
    let horizontal = horizontal_half(r)?;
    let hitting_g = phi.derive()?.shift_up(1).div(&phi)?;
    let hitting_factor = RiordanArray::new(hitting_g, phi.clone())?;
    let left_factor =
        RiordanArray::new(r.g().compose(&phi)?, Series::x(phi.precision()))?;
    let decomposition = HalfDecomposition {
        source: r.clone(),
        phi,
        vertical,
        horizontal,
        hitting_factor,
        left_factor,
    };
    for (name, holds) in decomposition.identities()? {
        if !holds {
            return Err(HalvesError::Consistency(format!("identity failed: {name}")));
        }
    }
    Ok(decomposition)
}

impl HalfDecomposition {
    /// The factorization identities, each evaluated modulo truncation.
    /// `decompose` refuses to return a value for which any of these is false.
    pub fn identities(&self) -> Result<Vec<(&'static str, bool)>, HalvesError> {
        let n = self.source.precision();
        let assoc = RiordanArray::new(Series::one(n), self.source.f().clone())?;
        Ok(vec![
            (
                "V = (g(phi), x) * (x*phi'/phi, phi)",
                pairs_agree(&self.vertical, &self.left_factor.multiply(&self.hitting_factor)?),
            ),
            (
                "H = V * (1, f)",
                pairs_agree(&self.horizontal, &self.vertical.multiply(&assoc)?),
            ),
            (
                "V^-1 * H = (1, f)",
                pairs_agree(&self.vertical.inverse()?.multiply(&self.horizontal)?, &assoc),
            ),
            (
                "V * (g, f) = (g(phi), x) * H",
                pairs_agree(
                    &self.vertical.multiply(&self.source)?,
                    &self.left_factor.multiply(&self.horizontal)?,
                ),
            ),
            (
                "x*phi'/phi factor is in the hitting-time subgroup",
                self.hitting_factor.subgroup_flags().hitting_time,
            ),
            (
                "V and H share their first component",
                self.vertical.g().agrees_with(self.horizontal.g()),
            ),
        ])
    }
}

/// Closed form for the inverse of the vertical half of `(1, f)`:
/// `V^-1 = (2 - x f'/f, x^2/f)`.
pub fn vertical_inverse_closed(f: &Series) -> Result<RiordanArray, HalvesError> {
    let n = f.precision();
    let ratio = f.derive()?.shift_up(1).div(f)?;
    let g = Series::constant(int(2), n - 1).sub(&ratio);
    let x2 = Series::monomial(Rat::one(), 2, n);
    Ok(RiordanArray::new(g, x2.div(f)?)?)
}

/// Is the vertical half of `(1, f)` a pseudo-involution? Decided by the
/// series identity `x^2/f = rev(x^2 / (-f(-x)))` and independently by the
/// pseudo-involution test on the constructed half; the verdicts must agree.
pub fn vertical_pseudo_involution_test(f: &Series) -> Result<bool, HalvesError> {
    let n = f.precision();
    let x2 = Series::monomial(Rat::one(), 2, n);
    let q = x2.div(f)?;
    let mirrored = x2.div(&f.reflect().neg())?;
    let series_verdict = q == mirrored.revert()?;

    let v = vertical_half(&RiordanArray::new(Series::one(n), f.clone())?)?;
    let matrix_verdict = v.is_pseudo_involution()?;

    if series_verdict != matrix_verdict {
        return Err(HalvesError::Consistency(format!(
            "series identity x^2/f = rev(x^2/(-f(-x))) gives {series_verdict}, \
             pseudo-involution test on V gives {matrix_verdict}"
        )));
    }
    Ok(series_verdict)
}
