//! From an antiferromagnetic 2-spin system on a 3-regular graph to the
//! hard-core model at a single negative activity.
//!
//! Every edge of `H` becomes a five-vertex path whose inner vertices carry
//! the auxiliary activities `lambda1'`, `lambda2'`; those are then traded for
//! attached gadgets, leaving a bipartite graph with uniform activity.

mod compile;
mod edge;
mod spin;
mod targets;
mod verify;

pub use crate::gadgets::lambda_star;
pub use compile::{check_three_regular, reduce, ReductionOutput};
pub use edge::{edge_gadget, EdgeGadget};
pub use spin::{beta_gamma, in_unit_window, nonuniqueness_witness, witness_tolerance, NonUniquenessWitness};
pub use targets::{
    choose_activity_targets, cube_root_abs, interval_i1, interval_i2, ActivityTargets, Interval, TargetOptions,
};
pub use verify::{verify_reduction, CheckEntry, CheckStatus, VerificationReport, DEFAULT_VERIFY_BRUTE_CAP};
