//! Exact multivariate polynomials over the rationals.

mod monomial;
mod order;
mod polynomial;
mod text;

pub use monomial::{Monomial, MonomialDisplay, VariableSet};
pub use order::{compare, MonomialOrder};
pub use polynomial::{
    divide, normal_form, s_polynomial, Coeff, Division, PolyDisplay, Polynomial, Term,
};
pub(crate) use polynomial::{reduce_sorted, s_poly_sorted};
pub use text::parse_polynomial;
