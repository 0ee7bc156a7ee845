//! The dispatcher: one gadget for any target, whatever the regime of lambda.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::graphs::{path, Gadget};
use crate::numerics::rational::{self, rat, simplest_between, BigRational};

use super::bad_set::{bad_set_member, bad_set_period, zero_path, ZeroTree};
use super::boost::{boost, decorated_path, lambda_star};
use super::pingpong::{implement_rational_multiple, PingPongCertificate};
use super::search::{scan, DEFAULT_N_MAX, View};
use super::unit::{implement_minus_one, implement_plus_one};

#[derive(Clone, Debug)]
pub struct ImplementOptions {
    /// Largest path length tried by the scans.
    pub n_max: u64,
}

impl Default for ImplementOptions {
    fn default() -> Self {
        ImplementOptions { n_max: DEFAULT_N_MAX }
    }
}

/// How a gadget was built; enough to rebuild it without this library.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "route", rename_all = "snake_case")]
pub enum Trace {
    /// `P_n` from an endpoint.
    Path { n: u64 },
    /// Caterpillar realizing `lambda * z`.
    Pingpong {
        #[serde(with = "rational::serde_str")]
        z: BigRational,
        certificate: PingPongCertificate,
        minus_one_size: usize,
        plus_one_size: usize,
        /// Present when the minus-one gadget came from a zero tree.
        zero_tree_size: Option<usize>,
    },
    /// Pendant on a path decorated with `T_h` copies.
    BoostedPath {
        height: usize,
        #[serde(with = "rational::serde_str")]
        lambda_hat: BigRational,
        n: u64,
    },
    /// Decorated path with `Z = 0` used as the zero tree, then ping-pong.
    BoostedPingpong {
        height: usize,
        #[serde(with = "rational::serde_str")]
        lambda_hat: BigRational,
        n: u64,
        #[serde(with = "rational::serde_str")]
        z: BigRational,
        certificate: PingPongCertificate,
        minus_one_size: usize,
        plus_one_size: usize,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Implementation {
    pub gadget: Gadget,
    pub trace: Trace,
}

pub fn implement_activity(
    delta: usize,
    lambda: &BigRational,
    target: &BigRational,
    eps: &BigRational,
) -> Result<Implementation> {
    implement_activity_with(delta, lambda, target, eps, &ImplementOptions::default())
}

pub fn implement_activity_with(
    delta: usize,
    lambda: &BigRational,
    target: &BigRational,
    eps: &BigRational,
    opts: &ImplementOptions,
) -> Result<Implementation> {
    if delta < 3 {
        return domain(format!("maximum degree must be at least 3, got {delta}"));
    }
    if eps.is_negative() {
        return domain(format!("accuracy must be non-negative, got {eps}"));
    }
    let ls = lambda_star(delta)?;
    if lambda >= &-&ls {
        return domain(format!("lambda = {lambda} is not below -lambda*({delta}) = -{ls}"));
    }
    let out = if lambda < &rat(-1, 4) {
        if bad_set_member(lambda)? {
            let zt = zero_path(lambda)?;
            pingpong_route(delta, lambda, target, eps, Some(&zt))?
        } else {
            require_positive(eps, "the path scan")?;
            let hit = scan(lambda, View::Path, target, eps, 1, opts.n_max)?;
            let g = Gadget { graph: path(hit.n as usize)?, terminal: 0, claimed_ratio: hit.ratio, lambda: lambda.clone() };
            Implementation { gadget: g, trace: Trace::Path { n: hit.n } }
        }
    } else {
        let br = boost(delta, lambda)?;
        let lh = br.lambda_hat.clone();
        match bad_set_period(&lh) {
            None => {
                require_positive(eps, "the decorated-path scan")?;
                let hit = scan(&lh, View::Pendant(lambda), target, eps, 1, opts.n_max)?;
                let dp = decorated_path(&br, hit.n as usize)?;
                let g = Gadget { graph: dp.g_prime, terminal: dp.pendant, claimed_ratio: hit.ratio, lambda: lambda.clone() };
                Implementation { gadget: g, trace: Trace::BoostedPath { height: br.height, lambda_hat: lh, n: hit.n } }
            }
            Some(q) => {
                // Z_{P_n}(lambda_hat) = 0 makes the decorated path a zero tree at lambda.
                let n = q - 2;
                let dp = decorated_path(&br, n as usize)?;
                let zt = ZeroTree::certify(dp.g, lambda)?;
                let imp = pingpong_route(delta, lambda, target, eps, Some(&zt))?;
                match imp.trace {
                    Trace::Pingpong { z, certificate, minus_one_size, plus_one_size, .. } => Implementation {
                        gadget: imp.gadget,
                        trace: Trace::BoostedPingpong {
                            height: br.height,
                            lambda_hat: lh,
                            n,
                            z,
                            certificate,
                            minus_one_size,
                            plus_one_size,
                        },
                    },
                    _ => unreachable!("pingpong_route returns a ping-pong trace"),
                }
            }
        }
    };
    let check = out.gadget.check()?;
    if !check.passes_with_degree(delta) || !rational::within(&out.gadget.claimed_ratio, target, eps) {
        return Err(Error::VerificationFailed(format!("synthesized gadget failed its check: {check:?}")));
    }
    Ok(out)
}

fn require_positive(eps: &BigRational, what: &str) -> Result<()> {
    if eps.is_zero() {
        return domain(format!("exact targets (eps = 0) are only honoured by the ping-pong route, not {what}"));
    }
    Ok(())
}

/// Ratio `lambda * z` with the simplest `z` that lands within `eps`.
fn pingpong_route(
    delta: usize,
    lambda: &BigRational,
    target: &BigRational,
    eps: &BigRational,
    zt: Option<&ZeroTree>,
) -> Result<Implementation> {
    let minus = implement_minus_one(delta, lambda, zt)?;
    let plus = implement_plus_one(delta, lambda, &minus)?;
    let z = simplest_between(&((target - eps) / lambda), &((target + eps) / lambda));
    let (g, cert) = implement_rational_multiple(delta, lambda, &z, &minus, &plus)?;
    let zero_tree_size = (lambda != &rat(-1, 1)).then(|| minus.vertex_count());
    Ok(Implementation {
        trace: Trace::Pingpong {
            z,
            certificate: cert,
            minus_one_size: minus.vertex_count(),
            plus_one_size: plus.vertex_count(),
            zero_tree_size,
        },
        gadget: g,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rational::int;

    #[test]
    fn exact_pingpong_target() {
        let imp = implement_activity(3, &int(-1), &int(-2), &int(0)).unwrap();
        assert_eq!(imp.gadget.claimed_ratio, int(-2));
        match imp.trace {
            Trace::Pingpong { z, certificate, .. } => {
                assert_eq!(z, int(2));
                assert_eq!(certificate.steps.len(), 3);
            }
            t => panic!("unexpected route {t:?}"),
        }
    }

    #[test]
    fn path_route() {
        let eps = rat(1, 1000);
        let imp = implement_activity(3, &rat(-3, 10), &rat(-13, 6), &eps).unwrap();
        assert!(matches!(imp.trace, Trace::Path { .. }));
        assert!(rational::within(&imp.gadget.claimed_ratio, &rat(-13, 6), &eps));
        assert!(matches!(
            implement_activity(3, &rat(-3, 10), &rat(-13, 6), &int(0)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn boosted_route() {
        let eps = rat(1, 1000);
        let imp = implement_activity(3, &rat(-1, 5), &rat(-9, 10), &eps).unwrap();
        match &imp.trace {
            Trace::BoostedPath { height, n, .. } => {
                assert_eq!(*height, 3);
                assert_eq!(*n, 5317);
            }
            t => panic!("unexpected route {t:?}"),
        }
        assert!(imp.gadget.check().unwrap().passes_with_degree(3));
    }

    #[test]
    fn regime_guard() {
        assert!(matches!(implement_activity(3, &rat(-1, 8), &int(-2), &rat(1, 10)), Err(Error::Domain(_))));
        assert!(matches!(implement_activity(3, &rat(-4, 27), &int(-2), &rat(1, 10)), Err(Error::Domain(_))));
        assert!(implement_activity(2, &int(-1), &int(-2), &rat(1, 10)).is_err());
    }
}
