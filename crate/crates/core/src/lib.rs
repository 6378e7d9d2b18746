pub mod clifford_family;
pub mod engine;
pub mod dunkl;
pub mod error;
pub mod expr;
pub mod morphisms;
pub mod parallel;
pub mod report;
pub mod scalar;
pub mod spin_family;
pub mod structure;

pub use engine::{Algebra, Element, Kind, Letter, Monomial, Parity, Signature, UParam};
pub use error::{Error, Result};
pub use report::{CheckResult, Report};
pub use scalar::{QOmega, Scalar};
