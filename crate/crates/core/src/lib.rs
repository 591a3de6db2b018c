//! Root multiplicities of the Borcherds algebras attached to non-Fricke
//! classes of the Monster, computed exactly and cross-checked.
//!
//! The modules build on each other:
//!
//! * [`series`]: exact truncated series in `q^{1/N}` and in `p, q^{1/N}`
//! * [`eta`]: eta quotients, their Fricke transforms and the sequences
//!   `c(m,0)`, `c(1,n/N)`
//! * [`cartan`]: the Cartan matrix, entry by entry, with axiom checks
//! * [`freelie`]: free Lie algebras, Witt dimensions, quotients by
//!   isotropic relations
//! * [`roots`]: multiplicities from the product formula and from the
//!   algebra structure
//! * [`lambda`]: traces of a symmetry and the twisted identity
//! * [`plot`], [`cli`]: figures and the command line

pub mod cartan;
pub mod cli;
pub mod error;
pub mod eta;
pub mod freelie;
pub mod lambda;
mod linalg;
pub mod plot;
pub mod roots;
pub mod series;

pub use error::{Error, Result};
