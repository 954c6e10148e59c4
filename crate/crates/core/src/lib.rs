//! Mock Alexander polynomials of knotoids, linkoids and generalized knotoids.

pub mod canonical;
pub mod closures;
pub mod codec;
pub mod corpus;
pub mod diagram;
pub mod error;
pub mod moves;
pub mod polynomial;
pub mod sketch;
pub mod statesum;
mod surgery;

pub use diagram::{Diagram, Surface};
pub use error::{Error, Result};
pub use polynomial::{LaurentPoly1, LaurentPoly2, Rational};
