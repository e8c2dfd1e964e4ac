//! Forbidden configurations in (0,1)-matrices and their connection to t-designs.
//!
//! * [`matrix`]: column-multiset matrices and configuration containment
//! * [`constructions`]: the explicit extremal constructions
//! * [`designs`]: t-design verification and Steiner triple systems
//! * [`bounds`]: exact closed-form bounds
//! * [`analysis`]: per-matrix counting quantities and inequality audits
//! * [`search`]: exact extremal values by branch-and-bound, with a brute-force oracle

pub mod analysis;
pub mod bounds;
pub mod combinatorics;
pub mod constructions;
pub mod designs;
pub mod error;
pub mod matrix;
pub mod par;
pub mod search;

pub use error::{Error, Result};
pub use matrix::{BinMatrix, Column, Configuration, RowSplit};
