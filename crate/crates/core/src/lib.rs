//! Spaces of fully-grown labelled trees, the partition-lattice nerve, and
//! their integral homology as symmetric-group representations.

pub mod character;
pub mod complex;
pub mod cycle;
pub mod error;
pub mod perm;
pub mod report;
pub mod snf;
pub mod homology;
pub mod lie;
pub mod matrix;
pub mod tree;
pub mod whitehouse;

pub use error::{Error, Result};
