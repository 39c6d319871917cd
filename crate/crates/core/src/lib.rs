//! Exact free-fermion Fock-space calculus over partitions, charged and
//! neutral vertex operators, and plane-partition enumeration.
//!
//! Everything is computed in exact arithmetic: coefficients live in Q(√2)
//! and series are truncated formal series in q on a half-integer exponent
//! grid. The crate provides three independent implementations of each
//! vertex operator family (combinatorial, fermionic product, exponential of
//! Heisenberg generators) together with brute-force enumeration oracles, so
//! that every identity can be verified rather than assumed.

pub mod charged_fock;
pub mod charged_vertex;
pub mod error;
pub mod exactnum;
pub mod partitions;
pub mod planepart;

pub use charged_fock::{FockVector, MayaState, MayaVector};
pub use error::{Error, Result};
pub use exactnum::{CoefScalar, QSeries};
pub use partitions::{Partition, StrictPartition};
pub use planepart::{PlanePartition, SliceChain};
