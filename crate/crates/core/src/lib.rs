//! Exact homological algebra for bound quiver algebras.

pub mod algebra;
pub mod catalog;
pub mod dot;
pub mod error;
pub mod family;
pub mod field;
pub mod format;
pub mod lattice;
pub mod lemmas;
pub mod linalg;
pub mod module;
pub mod monomial;
pub mod oracle;
pub mod quiver;
pub mod stacking;
pub mod verify;

pub use error::{Error, Result};
