//! Exact arithmetic: rationals, polynomials, rational functions, factoring.

pub mod factor;
pub mod multipoly;
pub mod rat;
pub mod ratfunc;
pub mod upoly;

pub use factor::{factor_integer, is_probable_prime, FactorBudget, Factorization};
pub use multipoly::MultiPoly;
pub use rat::{is_perfect_power, Rat};
pub use ratfunc::RatFunc;
pub use upoly::UniPoly;
