//! Short Weierstrass curves over exact fields.

pub mod certify;
pub mod curve;
pub mod field;
pub mod recipe;
pub mod serial;

pub use certify::{certify_order, certify_order_upto, Evidence, OrderCertificate, Verdict};
pub use curve::{Curve, Point};
pub use field::ExactField;
pub use recipe::Recipe;
