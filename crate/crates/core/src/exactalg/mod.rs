//! Exact arithmetic: rationals, sparse Laurent polynomials, determinants,
//! Sylvester resultants, and discriminants.

pub mod det;
pub mod json;
pub mod linalg;
pub mod monomial;
pub mod packed;
pub mod poly;
pub mod rational;
pub mod univariate;

pub use monomial::Monomial;
pub use poly::SparsePoly;
pub use rational::{format_rational, parse_rational, rat, Rational};
pub use univariate::{
    discriminant_t, sylvester_resultant, sylvester_resultant_cofactor, UniPolyOverRing,
};

/// Terms of `p` in canonical graded-lex order, largest first.
pub fn poly_terms(p: &SparsePoly) -> Vec<(Rational, Monomial)> {
    p.terms().map(|(m, c)| (c.clone(), m.clone())).collect()
}

/// Exact evaluation; see [`SparsePoly::eval`].
pub fn poly_eval(p: &SparsePoly, point: &[Rational]) -> crate::Result<Rational> {
    p.eval(point)
}
