//! Exact truncated formal power series over the rationals.
//!
//! A `Series` stores the coefficients of `[x^0] .. [x^(N-1)]` where `N` is
//! its precision: the series is known modulo `x^N`. Every operation is a
//! pure function and propagates precision as `min` over its inputs; the two
//! documented exceptions are `derive` (loses one order) and the
//! cancellation steps inside `div` and `sqrt` (lose the cancelled order).
//!
//! Invariants:
//! - `coeffs.len() == precision >= 1`
//! - arithmetic is exact rational; no rounding anywhere

use std::fmt;

use num::{One, Zero};

use crate::rational::{self, Rat};

/// Errors raised by series kernel operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeriesError {
    /// Reciprocal (or negative power) of a series with zero constant term.
    ZeroConstantTerm,
    /// Composition where the inner series has a nonzero constant term.
    NonzeroInnerConstant,
    /// Reversion requires `f(0) = 0` and `f'(0) != 0`.
    BadOrder,
    /// The operation needs more known coefficients than are available.
    InsufficientPrecision { needed: usize, available: usize },
    /// Square root of a series whose leading coefficient is not a rational square.
    NonSquareConstant(Rat),
    /// Square root of a series of odd order has no power-series solution.
    OddOrder(usize),
    /// Coefficient index at or beyond the known precision.
    OutOfPrecision { index: usize, precision: usize },
    /// Division by a series that is zero to working precision.
    DivisionByZero,
    /// Exact-cancellation division needs numerator order >= denominator order.
    OrderMismatch { numerator: usize, denominator: usize },
}

impl fmt::Display for SeriesError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesError::ZeroConstantTerm => {
                write!(f, "series has zero constant term and no reciprocal")
            }
            SeriesError::NonzeroInnerConstant => {
                write!(f, "inner series of a composition must have zero constant term")
            }
            SeriesError::BadOrder => {
                write!(f, "reversion requires f(0) = 0 and f'(0) != 0")
            }
            SeriesError::InsufficientPrecision { needed, available } => {
                write!(f, "needs {needed} known coefficients, only {available} available")
            }
            SeriesError::NonSquareConstant(c) => {
                write!(f, "leading coefficient {} is not the square of a rational", c)
            }
            SeriesError::OddOrder(ord) => {
                write!(f, "series of odd order {ord} has no power-series square root")
            }
            SeriesError::OutOfPrecision { index, precision } => {
                write!(f, "coefficient {index} requested but series is only known mod x^{precision}")
            }
            SeriesError::DivisionByZero => {
                write!(f, "division by a series that is zero to working precision")
            }
            SeriesError::OrderMismatch { numerator, denominator } => {
                write!(
                    f,
                    "cannot divide: numerator has order {numerator} < denominator order {denominator}"
                )
            }
        }
    }
}

impl std::error::Error for SeriesError {}

/// A truncated formal power series with exact rational coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<Rat>,
}

impl Series {
    /// Build a series from its first `coeffs.len()` coefficients.
    /// The precision is the length; must be at least 1.
    pub fn from_coeffs(coeffs: Vec<Rat>) -> Series {
        assert!(!coeffs.is_empty(), "a series needs at least one known coefficient");
        Series { coeffs }
    }

    /// Convenience constructor from integer coefficients, padded with zeros
    /// up to `precision`.
    pub fn from_ints(coeffs: &[i64], precision: usize) -> Series {
        assert!(precision >= 1);
        let mut v: Vec<Rat> = coeffs.iter().take(precision).map(|&c| rational::int(c)).collect();
        v.resize(precision, Rat::zero());
        Series { coeffs: v }
    }

    /// The zero series at the given precision.
    pub fn zero(precision: usize) -> Series {
        assert!(precision >= 1);
        Series { coeffs: vec![Rat::zero(); precision] }
    }

    /// The constant series 1.
    pub fn one(precision: usize) -> Series {
        Series::constant(Rat::one(), precision)
    }

    /// A constant series.
    pub fn constant(value: Rat, precision: usize) -> Series {
        assert!(precision >= 1);
        let mut coeffs = vec![Rat::zero(); precision];
        coeffs[0] = value;
        Series { coeffs }
    }

    /// The monomial `c * x^k`, exact at any precision.
    pub fn monomial(value: Rat, power: usize, precision: usize) -> Series {
        assert!(precision >= 1);
        let mut coeffs = vec![Rat::zero(); precision];
        if power < precision {
            coeffs[power] = value;
        }
        Series { coeffs }
    }

    /// The identity series `x`.
    pub fn x(precision: usize) -> Series {
        Series::monomial(Rat::one(), 1, precision)
    }

    /// Number of known coefficients: the series is known modulo `x^precision`.
    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    /// All known coefficients, lowest order first.
    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// The coefficient extraction functional: `[x^n]`.
    pub fn coeff(&self, n: usize) -> Result<&Rat, SeriesError> {
        self.coeffs.get(n).ok_or(SeriesError::OutOfPrecision {
            index: n,
            precision: self.coeffs.len(),
        })
    }

    /// Index of the lowest-order nonzero coefficient, `None` if the series
    /// is zero to working precision.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// True when every known coefficient is zero.
    pub fn is_zero(&self) -> bool {
        self.order().is_none()
    }

    /// Drop knowledge beyond `x^precision`.
    pub fn truncate(&self, precision: usize) -> Series {
        assert!(precision >= 1);
        let n = precision.min(self.coeffs.len());
        Series { coeffs: self.coeffs[..n].to_vec() }
    }

    /// True when the two series agree on their common known prefix.
    pub fn agrees_with(&self, other: &Series) -> bool {
        let n = self.coeffs.len().min(other.coeffs.len());
        self.coeffs[..n] == other.coeffs[..n]
    }

    /// Coefficientwise sum at the minimum of the two precisions.
    pub fn add(&self, other: &Series) -> Series {
        let n = self.coeffs.len().min(other.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect();
        Series { coeffs }
    }

    /// Coefficientwise difference at the minimum of the two precisions.
    pub fn sub(&self, other: &Series) -> Series {
        let n = self.coeffs.len().min(other.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeffs[i] - &other.coeffs[i]).collect();
        Series { coeffs }
    }

    /// Negation.
    pub fn neg(&self) -> Series {
        Series { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    /// Multiply every coefficient by a rational scalar.
    pub fn scale(&self, factor: &Rat) -> Series {
        Series { coeffs: self.coeffs.iter().map(|c| c * factor).collect() }
    }

    /// Cauchy product truncated to the minimum precision.
    pub fn mul(&self, other: &Series) -> Series {
        let n = self.coeffs.len().min(other.coeffs.len());
        let mut coeffs = vec![Rat::zero(); n];
        for (i, a) in self.coeffs.iter().take(n).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(n - i).enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Series { coeffs }
    }

    /// Multiplicative inverse: `self * recip(self) = 1` modulo `x^N`.
    pub fn recip(&self) -> Result<Series, SeriesError> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(SeriesError::ZeroConstantTerm);
        }
        let n = self.coeffs.len();
        let inv0 = a0.recip();
        let mut r = vec![Rat::zero(); n];
        r[0] = inv0.clone();
        for m in 1..n {
            let mut acc = Rat::zero();
            for k in 1..=m {
                if !self.coeffs[k].is_zero() && !r[m - k].is_zero() {
                    acc += &self.coeffs[k] * &r[m - k];
                }
            }
            r[m] = -(acc * &inv0);
        }
        Ok(Series { coeffs: r })
    }

    /// Composition `self(inner)`; the inner series must vanish at 0.
    pub fn compose(&self, inner: &Series) -> Result<Series, SeriesError> {
        if !inner.coeffs[0].is_zero() {
            return Err(SeriesError::NonzeroInnerConstant);
        }
        let n = self.coeffs.len().min(inner.coeffs.len());
        let inner = inner.truncate(n);
        // Horner evaluation from the highest known coefficient down.
        let mut acc = Series::constant(self.coeffs[n - 1].clone(), n);
        for i in (0..n - 1).rev() {
            acc = acc.mul(&inner);
            acc.coeffs[0] += &self.coeffs[i];
        }
        Ok(acc)
    }

    /// Compositional inverse: `revert(f)(f(x)) = x = f(revert(f)(x))` mod `x^N`.
    ///
    /// Coefficientwise triangular solve on `sum_k g_k f^k = x`: the order-n
    /// equation is linear in `g_n` with pivot `f_1^n != 0`.
    pub fn revert(&self) -> Result<Series, SeriesError> {
        let n = self.coeffs.len();
        if n < 2 || !self.coeffs[0].is_zero() || self.coeffs[1].is_zero() {
            return Err(SeriesError::BadOrder);
        }
        // powers[k] = f^(k+1) truncated to precision n, for k+1 = 1..n-1
        let mut powers: Vec<Series> = Vec::with_capacity(n - 1);
        powers.push(self.clone());
        for _ in 1..n - 1 {
            let next = powers.last().unwrap().mul(self);
            powers.push(next);
        }
        let mut g = vec![Rat::zero(); n];
        for m in 1..n {
            let mut acc = if m == 1 { Rat::one() } else { Rat::zero() };
            for k in 1..m {
                if !g[k].is_zero() {
                    acc -= &g[k] * &powers[k - 1].coeffs[m];
                }
            }
            // pivot f^m has leading coefficient f_1^m at order m
            g[m] = acc / &powers[m - 1].coeffs[m];
        }
        Ok(Series { coeffs: g })
    }

    /// Termwise derivative; loses one order of precision.
    pub fn derive(&self) -> Result<Series, SeriesError> {
        let n = self.coeffs.len();
        if n < 2 {
            return Err(SeriesError::InsufficientPrecision { needed: 2, available: n });
        }
        let coeffs = (1..n).map(|i| &self.coeffs[i] * rational::int(i as i64)).collect();
        Ok(Series { coeffs })
    }

    /// Square root with positive leading coefficient: `sqrt(a)^2 = a`.
    ///
    /// A series of even order `2m` is handled by cancelling `x^(2m)` first;
    /// the result then carries precision `N - m`. An exact zero stays zero.
    pub fn sqrt(&self) -> Result<Series, SeriesError> {
        let ord = match self.order() {
            None => return Ok(Series::zero(self.coeffs.len())),
            Some(o) => o,
        };
        if ord % 2 != 0 {
            return Err(SeriesError::OddOrder(ord));
        }
        let u = self.shift_down(ord)?;
        let root0 = rational::sqrt_exact(&u.coeffs[0])
            .ok_or_else(|| SeriesError::NonSquareConstant(u.coeffs[0].clone()))?;
        let n = u.coeffs.len();
        let mut s = vec![Rat::zero(); n];
        s[0] = root0.clone();
        let denom = rational::int(2) * &root0;
        for m in 1..n {
            let mut acc = u.coeffs[m].clone();
            for i in 1..m {
                if !s[i].is_zero() && !s[m - i].is_zero() {
                    acc -= &s[i] * &s[m - i];
                }
            }
            s[m] = acc / &denom;
        }
        Ok(Series { coeffs: s }.shift_up(ord / 2))
    }

    /// Integer power by binary exponentiation; negative powers go through
    /// `recip` and so require a nonzero constant term.
    pub fn powi(&self, exponent: i64) -> Result<Series, SeriesError> {
        if exponent < 0 {
            return self.recip()?.powi(-exponent);
        }
        let mut result = Series::one(self.coeffs.len());
        let mut base = self.clone();
        let mut e = exponent as u64;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        Ok(result)
    }

    /// Exact division with order cancellation: `a / b` is permitted whenever
    /// `order(a) >= order(b)`; both are shifted down by `order(b)` and the
    /// quotient is formed by reciprocal-and-multiply. Loses `order(b)`
    /// coefficients of precision.
    pub fn div(&self, other: &Series) -> Result<Series, SeriesError> {
        let bord = other.order().ok_or(SeriesError::DivisionByZero)?;
        if let Some(aord) = self.order() {
            if aord < bord {
                return Err(SeriesError::OrderMismatch { numerator: aord, denominator: bord });
            }
        }
        let num = self.shift_down_min(bord)?;
        let den = other.shift_down(bord)?;
        Ok(num.mul(&den.recip()?))
    }

    /// Multiply by `x^k`; the new low-order coefficients are exactly known,
    /// so precision grows by `k`.
    pub fn shift_up(&self, k: usize) -> Series {
        if k == 0 {
            return self.clone();
        }
        let mut coeffs = vec![Rat::zero(); k];
        coeffs.extend_from_slice(&self.coeffs);
        Series { coeffs }
    }

    /// Divide by `x^k`; the first `k` coefficients must be zero.
    pub fn shift_down(&self, k: usize) -> Result<Series, SeriesError> {
        if k == 0 {
            return Ok(self.clone());
        }
        let n = self.coeffs.len();
        if n <= k {
            return Err(SeriesError::InsufficientPrecision { needed: k + 1, available: n });
        }
        if let Some(ord) = self.order() {
            if ord < k {
                return Err(SeriesError::OrderMismatch { numerator: ord, denominator: k });
            }
        }
        Ok(Series { coeffs: self.coeffs[k..].to_vec() })
    }

    /// Like `shift_down`, but tolerates a series that is zero to working
    /// precision (the quotient is then the zero series).
    fn shift_down_min(&self, k: usize) -> Result<Series, SeriesError> {
        if self.is_zero() && self.coeffs.len() > k {
            return Ok(Series::zero(self.coeffs.len() - k));
        }
        self.shift_down(k)
    }

    /// The substitution `x -> -x`: negate the odd coefficients. Exact.
    pub fn reflect(&self) -> Series {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
            .collect();
        Series { coeffs }
    }
}

impl fmt::Display for Series {
    /// `a0 + a1*x + ... + O(x^N)`, skipping zero terms.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if wrote {
                write!(f, " + ")?;
            }
            match i {
                0 => write!(f, "{}", rational::render(c))?,
                1 => write!(f, "{}*x", rational::render(c))?,
                _ => write!(f, "{}*x^{}", rational::render(c), i)?,
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        write!(f, " + O(x^{})", self.coeffs.len())
    }
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
