pub mod conic;
pub mod counts;
pub mod error;
pub mod fields;
pub mod gw;
pub mod io;
pub mod line_index;
pub mod matrix;
pub mod poly;

pub use error::{Error, Result};
pub use fields::{Field, FieldElement};
pub use gw::GwClass;
pub use matrix::ExactMatrix;
pub use poly::{BinaryForm, MultiPoly, UniPoly};
