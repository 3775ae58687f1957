//! Exact evaluation of ribbon diagrams over `rep(H)` for a ribbon Hopf algebra
//! `H`, and over its category of bounded cochain complexes.
//!
//! Everything is generic over an exact [`Scalar`]; the aliases at the bottom
//! fix the cyclotomic field used by the bundled datasets and the CLI.

pub mod cochain;
pub mod corpus;
pub mod cyclotomic;
pub mod datasets;
pub mod diagram;
pub mod error;
pub mod hopf;
pub mod io;
pub mod linalg;
pub mod rep;
pub mod ribbon;
pub mod scalar;
pub mod skein;
pub mod strings;
pub mod tqft;
pub mod words;

pub use cyclotomic::Cyclo;
pub use error::{Error, Result};
pub use scalar::Scalar;

pub type HopfAlgebra = hopf::HopfAlgebraData<Cyclo>;
pub type Rep = rep::RepCategory<Cyclo>;
pub type Module = rep::RepObject<Cyclo>;
pub type Mat = linalg::Matrix<Cyclo>;
