//! Constructions of arithmetic progressions of rational points on y^2 = x^n + k.

pub mod arith;
pub mod ec;
pub mod errata;
pub mod family_cubic;
pub mod family_power;
pub mod heights;
pub mod identities;
pub mod sextic;
pub mod transforms;
pub mod witness;
