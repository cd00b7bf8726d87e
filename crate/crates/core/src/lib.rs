//! Holonomy Lie algebras of hyperplane arrangements.
//!
//! Everything is exact: ranks and torsion come from integer presentations,
//! series have integer coefficients, and the oracle works over the rationals.

pub mod builtins;
pub mod decomp;
pub mod dense;
pub mod document;
pub mod error;
pub mod freelie;
pub mod graphic;
pub mod holonomy;
pub mod lattice;
pub mod oracle;
pub mod par;
pub mod series;
pub mod smith;
pub mod sparse;

pub use error::{Error, Result};
pub use holonomy::{Holonomy, Options};
pub use lattice::{Arrangement, Hyperplane, Rank2Flat};
pub use par::Exec;
