//! Refined middle-perversity intersection cohomology of stratified simplicial
//! pseudomanifolds, computed with cellular sheaf complexes over the rationals.

pub mod complex;
pub mod deligne;
pub mod error;
pub mod linalg;
pub mod sheaf;
pub mod verify;

pub use error::{Error, Result};
