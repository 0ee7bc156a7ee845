//! Activity implementation: every construction that turns the uniform
//! activity `lambda` into a gadget with a prescribed terminal ratio.

mod attach;
mod bad_set;
mod boost;
mod implement;
mod pingpong;
mod search;
mod unit;

pub use attach::{attach_activities, Attached};
pub use bad_set::{bad_set_member, minimalize_zero_tree, path_polynomial, zero_path, ZeroTree};
pub use boost::{boost, decorated_path, lambda_star, pendant_ratio, BoostResult, DecoratedPath, BOOST_ITERATION_CAP};
pub use implement::{implement_activity, implement_activity_with, ImplementOptions, Implementation, Trace};
pub use pingpong::{
    caterpillar, caterpillar_size, f_minus, f_plus, implement_rational_multiple, pingpong_certificate,
    PingPongCertificate, Step,
};
pub use search::{
    find_path_activity, find_path_activity_from, first_ratio_at_most_minus_one, PathHit, DEFAULT_N_MAX,
};
pub use unit::{implement_minus_one, implement_plus_one, plus_one_template};

use crate::error::{Error, Result};
use crate::graphs::Gadget;

/// Re-checks a freshly built gadget from scratch before handing it out.
pub(crate) fn certified(g: Gadget, delta: usize) -> Result<Gadget> {
    let c = g.check()?;
    if !c.passes_with_degree(delta) {
        return Err(Error::VerificationFailed(format!("gadget check failed: {c:?}")));
    }
    Ok(g)
}
