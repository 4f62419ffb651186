//! Exact linear algebra over Q and over Q[t]/(m(t)).

mod matrix;
mod poly;
mod quotient;
mod rational;

pub use matrix::RatMatrix;
pub use poly::RatPoly;
pub use quotient::{det_poly, factor_squarefree, rank_at_root, QuotientRingMatrix};
pub(crate) use quotient::inverse_mod;
pub use rational::{format_rational, int, one, parse_rational, rat, zero, Rational};
