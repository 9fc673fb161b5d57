//! Exact construction of irreducible representations of the three-strand
//! braid group B₃.
//!
//! Pipeline: modular-group representations are encoded as representations of
//! a five-vertex bipartite quiver ([`gamma0`]); stable summands are glued along
//! a chain in their local quiver ([`quiver`], [`family`]); each result is
//! certified irreducible by a Burnside span computation and lifted to B₃ with
//! a central parameter ([`braid`]). All arithmetic is exact over Q(ω)
//! ([`exact`]).

pub mod braid;
pub mod cli;
pub mod error;
pub mod exact;
pub mod family;
pub mod gamma0;
pub mod quiver;

pub use error::{Error, Result};
