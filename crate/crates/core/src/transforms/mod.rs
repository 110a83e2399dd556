//! Model changes: AP-preserving cubic maps and quartic <-> Weierstrass pairs.

pub mod cubic;
pub mod fibrations;
pub mod quartic;

pub use cubic::{cubic_to_weierstrass, long_cubic_to_weierstrass, CubicModel, CubicReduction, LongCubicModel};
pub use fibrations::{quartic_maps, BirMapPair, Fibration};
pub use quartic::{generic_quartic_reduce, MarkedPoint, QuarticModel, QuarticReduction};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TransformError {
    #[error("leading cubic coefficient vanishes; not a cubic")]
    NotCubic,
    #[error("marked point does not lie on the quartic")]
    BadMarkedPoint,
    #[error("quartic has a repeated root; reduction is singular")]
    SingularQuartic,
    #[error("point lies in the exceptional locus: {0}")]
    Exceptional(&'static str),
    #[error("point is not on the source model")]
    NotOnSource,
    #[error("invalid parameter: {0}")]
    BadParameter(String),
}
