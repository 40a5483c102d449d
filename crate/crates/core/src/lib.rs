//! Multigraded local cohomology of monomial modules.

pub mod cohomology;
pub mod error;
pub mod grading;
pub mod instance_io;
pub mod invariants;
pub mod linalg;
pub mod module;
pub mod monomial;
pub mod oracle;
pub mod render;
pub mod suite;

pub use error::{Error, Result};
