//! Exact computations around symmetric-power decompositions for GL(3) and
//! GL(4): Schur-polynomial identities, summand-count bounds, and finite-group
//! character theory standing in for automorphic representations.

pub mod bounds;
pub mod cyclotomic;
pub mod group;
pub mod partition;
pub mod plethysm;
pub mod poly;
pub mod schur;

pub use cyclotomic::{Cyclotomic, Rational};
pub use partition::Partition;
pub use poly::SparsePoly;
