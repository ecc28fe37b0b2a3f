//! Polynomial arithmetic: binary forms, univariate and multivariate
//! polynomials, and the ring abstraction used for generic determinants.

pub mod binary;
pub mod multi;
pub mod ring;
pub mod uni;

pub use binary::{resultant, sylvester_matrix, BinaryForm};
pub use multi::MultiPoly;
pub use ring::{bareiss_det, discriminant_quadratic, ExactDivision, Ring};
pub use uni::UniPoly;
