//! Exact computation of the intersection pairing of normal functions on
//! Lefschetz-type pencils, modelled combinatorially by a monodromy
//! representation of the punctured sphere.

pub mod cli;
pub mod cohomology;
pub mod error;
pub mod io;
pub mod linalg;
pub mod normal_function;
pub mod pencil;
pub mod poincare_degree;
pub mod polygon;
pub mod random;
pub mod suite;
pub mod symplectic;

pub use error::{Error, Result};
