//! Sign patterns of real-rooted polynomials and the orders of their root moduli.

pub mod certify;
pub mod error;
pub mod patterns;
pub mod poly;
pub mod results;
pub mod search;
pub mod store;
pub mod symmetry;

pub use certify::{Decider, Evidence, Status, Verdict};
pub use error::{Error, Result};
pub use patterns::{Couple, Letter, ModuliOrder, Sign, SignPattern, UVector};
pub use poly::{Polynomial, Provenance, Rational, RootConfiguration, Witness};
pub use store::WitnessStore;
pub use symmetry::{GroupElement, Involutions};
