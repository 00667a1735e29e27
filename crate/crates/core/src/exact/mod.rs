//! Exact arithmetic substrate: rationals, factorization, factored numbers,
//! Eisenstein numbers and 3x3 matrices.

pub mod eisenstein;
pub mod factor;
pub mod factored;
pub mod matrix3;
pub mod rational;

pub use eisenstein::Eisenstein;
pub use factor::{factor_positive, factorize, is_probable_prime};
pub use factored::{parse_factored, parse_factored_expr, FactoredNumber};
pub use matrix3::{EisensteinMatrix, Matrix3};
pub use rational::{fmt_q, padic_valuation, parse_q, q, qf, qz, Q, Z};
