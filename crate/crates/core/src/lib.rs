//! Exact computations with non-crossing partitions of types A and B: the
//! matrices of chromatic joins, the Temperley-Lieb Gram matrices, the
//! diagonal similarity between them, and closed-form determinants.

pub mod cli;
pub mod error;
pub mod grammat;
pub mod ncpart;
pub mod polyalg;
pub mod tldiag;

pub use error::{Error, Result};
pub use ncpart::{Kind, NcPartition, Partition};
pub use polyalg::{Monomial, Poly};
pub use tldiag::{AnnularDiagram, Matching};
