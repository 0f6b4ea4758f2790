//! Differential forms in `u` and its mixed partial derivatives along two
//! symbolic axes, with exact differentiation.

mod form;
mod monomial;
mod text;

pub use form::DiffForm;
pub use monomial::{
    degree4_monomials, monomial_key, Axis, DerivSymbol, DiffMonomial, OrderKey, QuadMonomial, UPower, MAX_ORDER,
};

/// Derivative of a form along an axis.
pub fn differentiate(f: &DiffForm, axis: Axis) -> crate::Result<DiffForm> {
    f.differentiate(axis)
}
