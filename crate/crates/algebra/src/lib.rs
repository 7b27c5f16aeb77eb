//! Exact arithmetic for the hexagram computations: prime fields, univariate
//! and multivariate polynomials over them, finite extensions and Gröbner bases.

pub mod ext;
pub mod fields;
pub mod groebner;
pub mod points;
pub mod poly;
pub mod univariate;

pub use ext::{ExtElement, ExtField};
pub use fields::{FieldElement, FieldError, Prime, Rational};
pub use groebner::{eliminate, radical_zero_dim, saturate, GbStats, GroebnerBasis, GroebnerError, Ideal, Selection};
pub use points::{linear_text, rational_points, Family, PointError, PointSet, Primitive};
pub use poly::{Monomial, MonomialOrder, PolyError, Polynomial, Ring, Term};
pub use univariate::{UniError, UniPoly};
