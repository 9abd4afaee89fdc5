//! Exact computation engine for Riordan arrays: truncated rational power
//! series, the Riordan group, vertical and horizontal halves with their
//! antecedents, Hankel transforms, Jacobi continued fractions, and an
//! offline OEIS lookup.

pub mod antecedent;
pub mod cli;
pub mod array;
pub mod expr;
pub mod halves;
pub mod identify;
pub mod moments;
pub mod render;
pub mod rational;
pub mod series;
pub mod verify;
