//! Riordan antecedents: arrays whose vertical or horizontal half is a
//! given target array.
//!
//! Every target `(Psi, Phi)` has a vertical antecedent `(g, f)` with
//! `f = x^2/rev(Phi)` and `g = (f/x) * phibar' * Psi(phibar)` where
//! `phibar = rev(Phi)`. A horizontal antecedent of `(Psi, Gamma)` needs the
//! implicit equation `u * Gamma(u) = x^2` solved for `u = phibar`; writing
//! `u = x v`, the order-`n` coefficient equation is linear in `v_n` with
//! pivot `2 gamma_1 v_0 != 0`, so an exact coefficientwise triangular
//! solve works. The solve exists over the rationals only when `1/gamma_1`
//! is a rational square; `v_0` takes the positive root, matching targets
//! with `f'(0) > 0`.
//!
//! `g` is always computed by two independent routes (the constructive
//! substitution and the closed form) and the routes must agree; each
//! constructor finishes by taking the half of its result and comparing it
//! against the target.

use std::fmt;

use num::{One, Zero};

use crate::array::{RiordanArray, RiordanError};
use crate::halves::{self, HalvesError};
use crate::rational::{self, Rat};
use crate::series::{Series, SeriesError};

/// Errors from antecedent construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AntecedentError {
    /// `1/gamma_1` has no rational square root; the antecedent would need a
    /// quadratic extension of the coefficient field.
    NonSquareLeadingCoefficient(Rat),
    /// `gamma_1 = 0`: the implicit equation has no series solution.
    DegenerateGamma,
    /// Construction needs more precision than the inputs carry.
    InsufficientPrecision { needed: usize, available: usize },
    /// Two provably equal computations disagreed, or the constructed
    /// antecedent's half failed to reproduce the target.
    Consistency(String),
    /// An underlying group operation failed.
    Riordan(RiordanError),
    /// An underlying series operation failed.
    Series(SeriesError),
    /// Taking the verification half failed.
    Halves(HalvesError),
}

impl fmt::Display for AntecedentError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AntecedentError::NonSquareLeadingCoefficient(c) => write!(
                f,
                "the reciprocal of the leading coefficient {} is not a rational square",
                rational::render(c)
            ),
            AntecedentError::DegenerateGamma => {
                write!(f, "the target's second component must have a nonzero linear coefficient")
            }
            AntecedentError::InsufficientPrecision { needed, available } => {
                write!(f, "needs precision {needed}, only {available} available")
            }
            AntecedentError::Consistency(detail) => {
                write!(f, "consistency check failed (precision too low?): {detail}")
            }
            AntecedentError::Riordan(e) => write!(f, "{e}"),
            AntecedentError::Series(e) => write!(f, "{e}"),
            AntecedentError::Halves(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for AntecedentError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            AntecedentError::Riordan(e) => Some(e),
            AntecedentError::Series(e) => Some(e),
            AntecedentError::Halves(e) => Some(e),
            _ => None,
        }
    }
}

impl From<RiordanError> for AntecedentError {
    fn from(e: RiordanError) -> Self {
        AntecedentError::Riordan(e)
    }
}

impl From<SeriesError> for AntecedentError {
    fn from(e: SeriesError) -> Self {
        AntecedentError::Series(e)
    }
}

impl From<HalvesError> for AntecedentError {
    fn from(e: HalvesError) -> Self {
        AntecedentError::Halves(e)
    }
}

/// Which half of the antecedent reproduces the target.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HalfKind {
    Vertical,
    Horizontal,
}

/// A constructed antecedent, verified against its target before return.
#[derive(Debug, Clone)]
pub struct AntecedentResult {
    pub antecedent: RiordanArray,
    /// `phibar = x^2 / f` for the antecedent's `f`; the series in which the
    /// target's first component is re-expanded.
    pub phi_bar: Series,
    pub kind: HalfKind,
}

fn ensure_precision(available: usize) -> Result<(), AntecedentError> {
    if available < 6 {
        return Err(AntecedentError::InsufficientPrecision { needed: 6, available });
    }
    Ok(())
}

/// `g` by two routes: (a) `u(x) = Psi * f(phi) / (phi phi')` re-expanded in
/// `phibar`, and (b) the closed form `(f/x) * phibar' * Psi(phibar)`.
/// Returns the closed form after checking the routes agree.
fn antecedent_first_component(
    psi: &Series,
    f_of_phi: &Series,
    f: &Series,
    phi: &Series,
    phibar: &Series,
) -> Result<Series, AntecedentError> {
    let numerator = psi.mul(f_of_phi);
    let denominator = phi.mul(&phi.derive()?);
    let substituted = numerator.div(&denominator)?.compose(phibar)?;

    let closed = f
        .div(&Series::x(f.precision()))?
        .mul(&phibar.derive()?)
        .mul(&psi.compose(phibar)?);

    if !substituted.agrees_with(&closed) {
        return Err(AntecedentError::Consistency(
            "the two routes to the antecedent's first component disagree".into(),
        ));
    }
    Ok(closed)
}

/// The vertical antecedent of the target `(psi, phi)`: the pair whose
/// vertical half is the target.
pub fn vertical_antecedent(psi: &Series, phi: &Series) -> Result<AntecedentResult, AntecedentError> {
    let target = RiordanArray::new(psi.clone(), phi.clone())?;
    ensure_precision(target.precision())?;
    let psi = target.g();
    let phi = target.f();

    let phibar = phi.revert()?;
    let n = phibar.precision();
    let f = Series::monomial(Rat::one(), 2, n).div(&phibar)?;
    let f_of_phi = f.compose(phi)?;
    let g = antecedent_first_component(psi, &f_of_phi, &f, phi, &phibar)?;
    let antecedent = RiordanArray::new(g, f)?;

    let roundtrip = halves::vertical_half(&antecedent)?;
    if !halves::pairs_agree(&roundtrip, &target) {
        return Err(AntecedentError::Consistency(
            "vertical half of the constructed antecedent does not reproduce the target".into(),
        ));
    }
    Ok(AntecedentResult { antecedent, phi_bar: phibar, kind: HalfKind::Vertical })
}

/// Solve `u * gamma(u) = x^2` for `u = x v` by the coefficientwise
/// triangular solve; `v0` is the positive square root of `1/gamma_1`.
fn solve_implicit(gamma: &Series, v0: Rat) -> Result<Series, AntecedentError> {
    let n = gamma.precision();
    let gamma1 = gamma.coeffs()[1].clone();
    let pivot = rational::int(2) * &gamma1 * &v0;
    // v gets one padding slot so every needed residual coefficient of
    // u * gamma(u) is inside the working precision; slots beyond index
    // n - 3 stay zero and never influence the determined ones.
    let mut v = vec![Rat::zero(); n - 1];
    v[0] = v0;
    for k in 1..=n - 3 {
        let u = Series::from_coeffs(v.clone()).shift_up(1);
        let residual = u.mul(&gamma.compose(&u)?);
        v[k] = -(residual.coeffs()[k + 2].clone() / &pivot);
    }
    let u = Series::from_coeffs(v[..n - 2].to_vec()).shift_up(1);
    // the solved prefix must satisfy the equation exactly
    let residual = u.mul(&gamma.compose(&u)?).sub(&Series::monomial(Rat::one(), 2, n - 1));
    if !residual.is_zero() {
        return Err(AntecedentError::Consistency(
            "implicit-equation residual is nonzero after the solve".into(),
        ));
    }
    Ok(u)
}

/// The horizontal antecedent of the target `(psi, gamma)`: the pair whose
/// horizontal half is the target. Exists over the rationals only when
/// `1/gamma_1` is a rational square.
pub fn horizontal_antecedent(
    psi: &Series,
    gamma: &Series,
) -> Result<AntecedentResult, AntecedentError> {
    if gamma.precision() < 2 || gamma.coeffs()[1].is_zero() {
        return Err(AntecedentError::DegenerateGamma);
    }
    let gamma1 = &gamma.coeffs()[1];
    let v0 = rational::sqrt_exact(&gamma1.recip())
        .ok_or_else(|| AntecedentError::NonSquareLeadingCoefficient(gamma1.clone()))?;
    let target = RiordanArray::new(psi.clone(), gamma.clone())?;
    ensure_precision(target.precision())?;
    let psi = target.g();
    let gamma = target.f();

    let phibar = solve_implicit(gamma, v0)?;
    let f = gamma.compose(&phibar)?;
    let phi = phibar.revert()?;
    // f(phi) is the target's gamma itself: phi reverts phibar
    let g = antecedent_first_component(psi, gamma, &f, &phi, &phibar)?;
    let antecedent = RiordanArray::new(g, f)?;

    let roundtrip = halves::horizontal_half(&antecedent)?;
    if !halves::pairs_agree(&roundtrip, &target) {
        return Err(AntecedentError::Consistency(
            "horizontal half of the constructed antecedent does not reproduce the target".into(),
        ));
    }
    Ok(AntecedentResult { antecedent, phi_bar: phibar, kind: HalfKind::Horizontal })
}

/// For two vertical targets `(psi1, phi)` and `(psi2, phi)` sharing their
/// second component: do the antecedents' first components satisfy
/// `g1/g2 = psi1(phibar)/psi2(phibar)`?
pub fn antecedent_ratio_check(
    target1: (&Series, &Series),
    target2: (&Series, &Series),
) -> Result<bool, AntecedentError> {
    let (psi1, phi1) = target1;
    let (psi2, phi2) = target2;
    if !phi1.agrees_with(phi2) {
        return Err(AntecedentError::Consistency(
            "ratio check requires targets sharing one second component".into(),
        ));
    }
    let a1 = vertical_antecedent(psi1, phi1)?;
    let a2 = vertical_antecedent(psi2, phi2)?;
    let phibar = &a1.phi_bar;
    let lhs = a1.antecedent.g().div(a2.antecedent.g())?;
    let rhs = psi1.compose(phibar)?.div(&psi2.compose(phibar)?)?;
    Ok(lhs.agrees_with(&rhs))
}
