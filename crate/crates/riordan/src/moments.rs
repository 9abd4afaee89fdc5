//! Hankel transforms and Jacobi continued fractions.
//!
//! The Hankel transform of a sequence `a` is `h_n = det(a_{i+j})` over
//! `0 <= i, j <= n`, computed exactly (fraction-free Bareiss elimination
//! when every term is an integer, exact Gaussian elimination otherwise).
//!
//! A Jacobi fraction follows the minus-sign convention
//!
//! ```text
//! g(x) = 1 / (1 - b0 x - lam1 x^2 / (1 - b1 x - lam2 x^2 / (1 - ...)))
//! ```
//!
//! `depth` counts the lambda levels: peeling to depth `d` yields the
//! pairs `(b0, lam1) .. (b_{d-1}, lam_d)`. Extraction needs `2d + 1`
//! known coefficients, and peeling and reconstruction are mutually
//! inverse through order `2d` (i.e. mod `x^(2d+1)`). A fraction built by
//! hand may instead end on a `b` level without a lambda below it. The
//! lambdas determine the Hankel transform of `g`'s expansion:
//! `h_n = prod_{i<=n} lam_i^(n+1-i)`.

use std::fmt;

use num::bigint::BigInt;
use num::{One, Zero};

use crate::rational::{self, Rat};
use crate::series::{Series, SeriesError};

/// Errors from Hankel and continued-fraction computations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MomentsError {
    /// `hankel_transform` needs `2 * nmax + 1` sequence terms.
    InsufficientTerms { needed: usize, available: usize },
    /// `jfraction` needs `2 * depth + 1` series coefficients.
    InsufficientPrecision { needed: usize, available: usize },
    /// The continued fraction of `g` terminates: the lambda at this level
    /// is zero, so no deeper parameters exist.
    TerminatedFraction { level: usize },
    /// `jfraction` requires `g(0) = 1`.
    UnitConstantRequired(Rat),
    /// A stored lambda is zero, or the parameter lists have mismatched
    /// lengths.
    InvalidParameters(String),
    /// An underlying series operation failed.
    Series(SeriesError),
}

impl fmt::Display for MomentsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MomentsError::InsufficientTerms { needed, available } => {
                write!(f, "needs {needed} sequence terms, only {available} available")
            }
            MomentsError::InsufficientPrecision { needed, available } => {
                write!(f, "needs precision {needed}, only {available} available")
            }
            MomentsError::TerminatedFraction { level } => {
                write!(f, "continued fraction terminates at level {level} (lambda is zero)")
            }
            MomentsError::UnitConstantRequired(c) => {
                write!(
                    f,
                    "continued-fraction expansion requires constant term 1, found {}",
                    rational::render(c)
                )
            }
            MomentsError::InvalidParameters(detail) => write!(f, "invalid Jacobi parameters: {detail}"),
            MomentsError::Series(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for MomentsError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            MomentsError::Series(e) => Some(e),
            _ => None,
        }
    }
}

impl From<SeriesError> for MomentsError {
    fn from(e: SeriesError) -> Self {
        MomentsError::Series(e)
    }
}

/// Jacobi continued-fraction parameters under the minus-sign convention.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobiFraction {
    b: Vec<Rat>,
    lam: Vec<Rat>,
}

impl JacobiFraction {
    /// Build a fraction from explicit parameters. Level `k` pairs `b_k`
    /// with the coupling `lam_{k+1}` below it; the innermost level may
    /// omit its lambda (closing the fraction on a plain `1 - b x`), so
    /// `b` is as long as `lam` or one longer. Stored lambdas must be
    /// nonzero.
    pub fn new(b: Vec<Rat>, lam: Vec<Rat>) -> Result<Self, MomentsError> {
        if b.len() != lam.len() && b.len() != lam.len() + 1 {
            return Err(MomentsError::InvalidParameters(format!(
                "{} lambda values need {} or {} b values, found {}",
                lam.len(),
                lam.len(),
                lam.len() + 1,
                b.len()
            )));
        }
        if let Some(i) = lam.iter().position(|l| l.is_zero()) {
            return Err(MomentsError::InvalidParameters(format!(
                "lambda at level {} is zero",
                i + 1
            )));
        }
        Ok(JacobiFraction { b, lam })
    }

    /// `b0, b1, ...` — the linear parameters, one per fraction level.
    pub fn b(&self) -> &[Rat] {
        &self.b
    }

    /// `lam1, lam2, ...` — the quadratic coupling parameters.
    pub fn lam(&self) -> &[Rat] {
        &self.lam
    }

    /// Number of lambda levels; a fraction holding only `b0` has depth 0.
    pub fn depth(&self) -> usize {
        self.lam.len()
    }
}

/// A Hankel transform: `h[n] = det(a_{i+j})` for `0 <= i, j <= n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HankelSequence {
    h: Vec<Rat>,
}

impl HankelSequence {
    pub fn h(&self) -> &[Rat] {
        &self.h
    }
}

/// Exact determinant by fraction-free Bareiss elimination (integer input).
fn det_bareiss(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = num / &prev; // exact by the Bareiss identity
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

/// Exact determinant by Gaussian elimination over the rationals.
// Index loops: the update reads row `k` while writing row `i`.
#[allow(clippy::needless_range_loop)]
fn det_gauss(mut m: Vec<Vec<Rat>>) -> Rat {
    let n = m.len();
    let mut det = Rat::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    det = -det;
                }
                None => return Rat::zero(),
            }
        }
        let pivot = m[k][k].clone();
        det *= &pivot;
        for i in k + 1..n {
            if m[i][k].is_zero() {
                continue;
            }
            let factor = &m[i][k] / &pivot;
            for j in k..n {
                let sub = &factor * &m[k][j];
                m[i][j] -= sub;
            }
        }
    }
    det
}

fn hankel_det(a: &[Rat], n: usize) -> Rat {
    let size = n + 1;
    let all_integer = a[..2 * n + 1].iter().all(|r| r.denom().is_one());
    if all_integer {
        let m: Vec<Vec<BigInt>> = (0..size)
            .map(|i| (0..size).map(|j| a[i + j].numer().clone()).collect())
            .collect();
        Rat::from_integer(det_bareiss(m))
    } else {
        let m: Vec<Vec<Rat>> =
            (0..size).map(|i| (0..size).map(|j| a[i + j].clone()).collect()).collect();
        det_gauss(m)
    }
}

/// The Hankel transform `h_0..h_nmax` of the sequence `a`, computed as
/// exact determinants.
pub fn hankel_transform(a: &[Rat], nmax: usize) -> Result<HankelSequence, MomentsError> {
    let needed = 2 * nmax + 1;
    if a.len() < needed {
        return Err(MomentsError::InsufficientTerms { needed, available: a.len() });
    }
    let h = (0..=nmax).map(|n| hankel_det(a, n)).collect();
    Ok(HankelSequence { h })
}

/// Peel the Jacobi continued fraction of `g` down to `depth` levels,
/// yielding `b0..b_{depth-1}` and `lam1..lam_depth`.
pub fn jfraction(g: &Series, depth: usize) -> Result<JacobiFraction, MomentsError> {
    let needed = 2 * depth + 1;
    if g.precision() < needed {
        return Err(MomentsError::InsufficientPrecision { needed, available: g.precision() });
    }
    let constant = &g.coeffs()[0];
    if !constant.is_one() {
        return Err(MomentsError::UnitConstantRequired(constant.clone()));
    }

    let mut b = Vec::with_capacity(depth);
    let mut lam = Vec::with_capacity(depth);
    let mut level = g.clone();
    for k in 0..depth {
        // s = 1 - 1/g_k carries g_k's full precision
        let s = Series::one(level.precision()).sub(&level.recip()?);
        b.push(s.coeffs()[1].clone());
        let t = s.sub(&Series::monomial(b[k].clone(), 1, s.precision()));
        let lambda = t.coeffs()[2].clone();
        if lambda.is_zero() {
            return Err(MomentsError::TerminatedFraction { level: k + 1 });
        }
        // g_{k+1} = t / (lambda x^2); t's low orders vanish by construction
        level = t.shift_down(2)?.scale(&lambda.recip());
        lam.push(lambda);
    }
    Ok(JacobiFraction { b, lam })
}

/// Evaluate the nested fraction bottom-up as a series with `precision`
/// coefficients. Total: any stored parameters produce a series, but the
/// result pins down the source of a peeled fraction only mod
/// `x^(2 * depth + 1)`.
pub fn jfraction_reconstruct(jf: &JacobiFraction, precision: usize) -> Series {
    let mut acc = Series::one(precision);
    for k in (0..jf.b.len()).rev() {
        let mut denom = Series::one(precision)
            .sub(&Series::monomial(jf.b[k].clone(), 1, precision));
        if k < jf.lam.len() {
            let coupling = acc.mul(&Series::monomial(jf.lam[k].clone(), 2, precision));
            denom = denom.sub(&coupling);
        }
        acc = denom
            .recip()
            .expect("denominator has constant term 1");
    }
    acc
}
