//! The Riordan group: validated pairs `(g, f)`, lower-triangular expansion,
//! the group law, subgroup membership, and pseudo-involution testing.
//!
//! A pair of series `(g, f)` with `g(0) != 0`, `f(0) = 0`, `f'(0) != 0`
//! represents the infinite lower-triangular matrix with entries
//! `a[n][k] = [x^n] g * f^k`. The product `(g, f)(u, v) = (g * u(f), v(f))`
//! matches matrix multiplication, and the action on a series is
//! `(g, f) h = g * h(f)` (the fundamental theorem of Riordan arrays).
//!
//! Invariants:
//! - both members of a pair share one precision `N`
//! - all matrix entries are exact rationals

use std::fmt;

use num::{One, Zero};

use crate::rational::Rat;
use crate::series::{Series, SeriesError};

/// Errors from Riordan-group operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RiordanError {
    /// `g(0) = 0`: the pair does not represent an invertible triangle.
    ZeroConstantG,
    /// `f(0) != 0`: the columns would not be supported on the diagonal.
    NonzeroConstantF,
    /// `f'(0) = 0`: the diagonal would vanish.
    ZeroLinearF,
    /// The request needs more known coefficients than are available.
    InsufficientPrecision { needed: usize, available: usize },
    /// Two supposedly equivalent computations disagree; usually means the
    /// working precision is too low to decide the question.
    Consistency(String),
    /// A triangular matrix with a zero diagonal entry cannot be inverted.
    SingularMatrix { row: usize },
    /// An underlying series operation failed.
    Series(SeriesError),
}

impl fmt::Display for RiordanError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RiordanError::ZeroConstantG => write!(f, "g must satisfy g(0) != 0"),
            RiordanError::NonzeroConstantF => write!(f, "f must satisfy f(0) = 0"),
            RiordanError::ZeroLinearF => write!(f, "f must satisfy f'(0) != 0"),
            RiordanError::InsufficientPrecision { needed, available } => {
                write!(f, "needs {needed} known coefficients, only {available} available")
            }
            RiordanError::Consistency(detail) => {
                write!(f, "consistency check failed (precision too low?): {detail}")
            }
            RiordanError::SingularMatrix { row } => {
                write!(f, "matrix has a zero diagonal entry at row {row}")
            }
            RiordanError::Series(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for RiordanError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            RiordanError::Series(e) => Some(e),
            _ => None,
        }
    }
}

impl From<SeriesError> for RiordanError {
    fn from(e: SeriesError) -> Self {
        RiordanError::Series(e)
    }
}

/// A proper Riordan array `(g, f)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RiordanArray {
    g: Series,
    f: Series,
}

/// Membership in the three named subgroups, each decided modulo `x^(N-1)`
/// (one order below the pair precision, absorbing the derivative loss in
/// the hitting-time identity).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SubgroupFlags {
    /// `f = x g`
    pub bell: bool,
    /// `g = x f' / f`
    pub hitting_time: bool,
    /// `g = 1`
    pub associated: bool,
}

impl SubgroupFlags {
    /// Names of the subgroups the array belongs to, in a fixed order.
    pub fn names(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.bell {
            out.push("bell");
        }
        if self.hitting_time {
            out.push("hitting_time");
        }
        if self.associated {
            out.push("associated");
        }
        out
    }
}

impl RiordanArray {
    /// Validate and build a pair; both series are cut to the shared precision.
    pub fn new(g: Series, f: Series) -> Result<RiordanArray, RiordanError> {
        let n = g.precision().min(f.precision());
        let g = g.truncate(n);
        let f = f.truncate(n);
        if g.coeffs()[0].is_zero() {
            return Err(RiordanError::ZeroConstantG);
        }
        if !f.coeffs()[0].is_zero() {
            return Err(RiordanError::NonzeroConstantF);
        }
        if n < 2 || f.coeffs()[1].is_zero() {
            return Err(RiordanError::ZeroLinearF);
        }
        Ok(RiordanArray { g, f })
    }

    /// The group identity `(1, x)`.
    pub fn identity(precision: usize) -> RiordanArray {
        RiordanArray { g: Series::one(precision), f: Series::x(precision) }
    }

    pub fn g(&self) -> &Series {
        &self.g
    }

    pub fn f(&self) -> &Series {
        &self.f
    }

    /// Shared precision of the pair.
    pub fn precision(&self) -> usize {
        self.g.precision()
    }

    /// The first `nrows` rows of the triangle `a[n][k] = [x^n] g * f^k`.
    pub fn expand(&self, nrows: usize) -> Result<TriangleMatrix, RiordanError> {
        let n = self.precision();
        if nrows > n {
            return Err(RiordanError::InsufficientPrecision { needed: nrows, available: n });
        }
        // column k has generating function g * f^k
        let mut column = self.g.clone();
        let mut columns = Vec::with_capacity(nrows);
        for _ in 0..nrows {
            columns.push(column.clone());
            column = column.mul(&self.f);
        }
        let rows = (0..nrows)
            .map(|r| (0..=r).map(|k| columns[k].coeffs()[r].clone()).collect())
            .collect();
        Ok(TriangleMatrix { rows })
    }

    /// Group law: `(g, f)(u, v) = (g * u(f), v(f))`.
    pub fn multiply(&self, other: &RiordanArray) -> Result<RiordanArray, RiordanError> {
        let g = self.g.mul(&other.g.compose(&self.f)?);
        let f = other.f.compose(&self.f)?;
        RiordanArray::new(g, f)
    }

    /// Group inverse `(1/g(rev f), rev f)`.
    pub fn inverse(&self) -> Result<RiordanArray, RiordanError> {
        let fbar = self.f.revert()?;
        let g = self.g.compose(&fbar)?.recip()?;
        RiordanArray::new(g, fbar)
    }

    /// Action on a series: `(g, f) h = g * h(f)`; in matrix terms, the
    /// triangle times the column vector of `h`-coefficients.
    pub fn apply(&self, h: &Series) -> Result<Series, RiordanError> {
        let n = self.precision();
        if h.precision() < n {
            return Err(RiordanError::InsufficientPrecision {
                needed: n,
                available: h.precision(),
            });
        }
        Ok(self.g.mul(&h.compose(&self.f)?))
    }

    /// Which of the bell, hitting-time, and associated subgroups the array
    /// belongs to. Identities are compared modulo `x^(N-1)`.
    pub fn subgroup_flags(&self) -> SubgroupFlags {
        let n = self.precision();
        let cut = n - 1;
        let associated = self.g.truncate(cut) == Series::one(cut);
        let bell = self.f.truncate(cut) == self.g.shift_up(1).truncate(cut);
        // x f'/f: numerator known mod x^N, division by order-1 f loses one
        let hitting_time = match self.f.derive() {
            Ok(fp) => match fp.shift_up(1).div(&self.f) {
                Ok(ratio) => ratio.truncate(cut) == self.g.truncate(cut),
                Err(_) => false,
            },
            Err(_) => false,
        };
        SubgroupFlags { bell, hitting_time, associated }
    }

    /// Pseudo-involution test, decided by two independent routes that must
    /// agree: the series condition `rev(f)(x) = -f(-x)` modulo `x^N`, and
    /// the matrix condition `(M D)^2 = I` on the expanded `N`-row truncation
    /// with `D = diag((-1)^n)`.
    pub fn is_pseudo_involution(&self) -> Result<bool, RiordanError> {
        let fbar = self.f.revert()?;
        let series_verdict = fbar == self.f.reflect().neg();

        let m = self.expand(self.precision())?;
        let md = m.scale_columns_alternating();
        let matrix_verdict = md.mul(&md).is_identity();

        if series_verdict != matrix_verdict {
            return Err(RiordanError::Consistency(format!(
                "series condition rev(f) = -f(-x) gives {series_verdict}, \
                 matrix condition (MD)^2 = I gives {matrix_verdict}"
            )));
        }
        Ok(series_verdict)
    }
}

impl fmt::Display for RiordanArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.g, self.f)
    }
}

/// A lower-triangular matrix of exact rationals; row `n` has `n + 1` entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangleMatrix {
    rows: Vec<Vec<Rat>>,
}

impl TriangleMatrix {
    /// Build from explicit rows; row `n` must have exactly `n + 1` entries.
    pub fn from_rows(rows: Vec<Vec<Rat>>) -> TriangleMatrix {
        for (n, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n + 1, "row {n} of a triangle must have {} entries", n + 1);
        }
        TriangleMatrix { rows }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Rat>] {
        &self.rows
    }

    /// Entry `[n][k]`; zero above the diagonal.
    pub fn entry(&self, n: usize, k: usize) -> Rat {
        assert!(n < self.nrows(), "row {n} out of range");
        if k > n {
            Rat::zero()
        } else {
            self.rows[n][k].clone()
        }
    }

    /// Truncated matrix product over the common leading rows.
    pub fn mul(&self, other: &TriangleMatrix) -> TriangleMatrix {
        let n = self.nrows().min(other.nrows());
        let rows = (0..n)
            .map(|r| {
                (0..=r)
                    .map(|c| (c..=r).map(|j| &self.rows[r][j] * &other.rows[j][c]).sum())
                    .collect()
            })
            .collect();
        TriangleMatrix { rows }
    }

    /// True when the triangle is the identity on all stored rows.
    pub fn is_identity(&self) -> bool {
        self.rows.iter().enumerate().all(|(r, row)| {
            row.iter().enumerate().all(|(c, v)| if c == r { v.is_one() } else { v.is_zero() })
        })
    }

    /// Exact inverse by forward substitution; requires a nonzero diagonal.
    // Index loops: each entry mixes reads of `self` and earlier `inv` rows.
    #[allow(clippy::needless_range_loop)]
    pub fn inverse(&self) -> Result<TriangleMatrix, RiordanError> {
        let n = self.nrows();
        for (r, row) in self.rows.iter().enumerate() {
            if row[r].is_zero() {
                return Err(RiordanError::SingularMatrix { row: r });
            }
        }
        let mut inv: Vec<Vec<Rat>> = (0..n).map(|r| vec![Rat::zero(); r + 1]).collect();
        for c in 0..n {
            inv[c][c] = self.rows[c][c].recip();
            for r in c + 1..n {
                let mut acc = Rat::zero();
                for j in c..r {
                    if !inv[j][c].is_zero() {
                        acc += &self.rows[r][j] * &inv[j][c];
                    }
                }
                inv[r][c] = -(acc / &self.rows[r][r]);
            }
        }
        Ok(TriangleMatrix { rows: inv })
    }

    /// `M * D` with `D = diag((-1)^n)`: negate the odd-index columns.
    pub fn scale_columns_alternating(&self) -> TriangleMatrix {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .map(|(c, v)| if c % 2 == 1 { -v } else { v.clone() })
                    .collect()
            })
            .collect();
        TriangleMatrix { rows }
    }
}
