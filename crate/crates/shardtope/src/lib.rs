//! Exact shard polytopes and quotientopes for lattice congruences of the
//! weak order of types A and B.

pub mod basis;
pub mod bits;
pub mod error;
pub mod linalg;
pub mod matroid;
pub mod polytope;
pub mod quotientope;
pub mod rat;
pub mod shards;
pub mod type_b;
pub mod volume;
pub mod weak_order;

pub use error::{Error, Result};
pub use rat::Rat;
