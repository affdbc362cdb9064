#[cfg(doctest)]
mod book;
pub mod bounds;
pub mod error;
pub mod functionals;
pub mod harness;
pub mod mat;
pub mod qrange;
pub mod search;

pub use error::{Error, Result};
pub use mat::{Matrix, QValue, C64};
pub use qrange::omega_q_2x2_exact;
