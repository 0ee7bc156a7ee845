//! Gadget synthesis and exact verification for the hard-core model at
//! negative activities.
//!
//! The crate builds bipartite bounded-degree gadgets whose terminal ratio
//! `Z^in / Z^out` realizes a requested activity, compiles antiferromagnetic
//! 2-spin instances into hard-core instances, and certifies every
//! construction against independent exact evaluators.

pub mod error;
pub mod numerics;

pub use error::{Error, Result};
pub mod graphs;
pub mod partition;
pub mod gadgets;
pub mod reduction;
pub mod selftest;
