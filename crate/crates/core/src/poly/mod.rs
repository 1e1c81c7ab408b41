//! Exact rational scalars and sparse multivariate polynomials.

mod dense;
pub mod gcd;
pub mod json;
mod monomial;
mod multipoly;
mod order;
pub mod resultant;
mod text;

pub use gcd::{content_primitive, gcd, squarefree_part};
pub use monomial::{Exponent, Monomial};
pub use multipoly::{arith, rat, ratio, ArithOp, Binding, MultiPoly, Rational, Term, VarList};
pub use order::MonomialOrder;
pub use resultant::{
    determinant_bareiss, discriminant, resultant, resultant_at, sylvester_matrix, sylvester_resultant,
};
