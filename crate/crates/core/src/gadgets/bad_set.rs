use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::graphs::{delete_vertex, path, Graph};
use crate::numerics::rational::{self, rat, BigRational};
use crate::partition::z_tree_uniform;

/// Membership in the bad set for rational `lambda < -1/4`.
///
/// `(2 cos theta)^2 = -1/lambda` is rational, and doubling the angle keeps
/// `2 cos` an algebraic integer that is rational here, so `2 cos 2theta` lies
/// in {0, ±1, ±2}. That leaves `-1/lambda` in {1, 2, 3}.
pub fn bad_set_member(lambda: &BigRational) -> Result<bool> {
    if lambda >= &rat(-1, 4) {
        return domain(format!("bad-set membership is defined for lambda < -1/4, got {lambda}"));
    }
    Ok(bad_set_period(lambda).is_some())
}

/// The `q` with `theta = pi / q` for the three rational members.
pub(crate) fn bad_set_period(lambda: &BigRational) -> Option<u64> {
    [(rat(-1, 1), 3), (rat(-1, 2), 4), (rat(-1, 3), 6)]
        .into_iter()
        .find(|(x, _)| x == lambda)
        .map(|(_, q)| q)
}

/// A tree whose partition function vanishes at `lambda`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZeroTree {
    pub tree: Graph,
    #[serde(with = "rational::serde_str")]
    pub lambda: BigRational,
    pub max_degree: usize,
}

impl ZeroTree {
    /// Checks `Z_T(lambda) = 0` exactly before wrapping.
    pub fn certify(tree: Graph, lambda: &BigRational) -> Result<Self> {
        let z = z_tree_uniform(&tree, 0, lambda)?.total();
        if !z.is_zero() {
            return Err(Error::VerificationFailed(format!("Z_T({lambda}) = {z}, not zero")));
        }
        let max_degree = tree.max_degree();
        Ok(ZeroTree { tree, lambda: lambda.clone(), max_degree })
    }
}

/// The path `P_{q-2}`, which is a zero tree when `theta = pi / q`.
pub fn zero_path(lambda: &BigRational) -> Result<ZeroTree> {
    if lambda >= &rat(-1, 4) || lambda.is_zero() {
        return Err(Error::Precondition(format!("{lambda} is not in the bad set")));
    }
    match bad_set_period(lambda) {
        Some(q) => ZeroTree::certify(path(q as usize - 2)?, lambda),
        None => Err(Error::Precondition(format!("{lambda} is not in the bad set"))),
    }
}

/// Greedy leaf deletion: drops any leaf whose removal keeps `Z = 0`, until
/// every remaining leaf `u` has `Z_{T - u} != 0`.
pub fn minimalize_zero_tree(t: &ZeroTree) -> Result<ZeroTree> {
    let lambda = &t.lambda;
    let mut tree = t.tree.clone();
    'outer: loop {
        if tree.vertex_count() <= 1 {
            break;
        }
        for u in 0..tree.vertex_count() {
            if tree.degree(u) != 1 {
                continue;
            }
            let smaller = delete_vertex(&tree, u)?;
            if z_tree_uniform(&smaller, 0, lambda)?.total().is_zero() {
                tree = smaller;
                continue 'outer;
            }
        }
        break;
    }
    ZeroTree::certify(tree, lambda)
}

/// Every leaf of a minimal zero tree, i.e. the admissible terminals.
pub(crate) fn leaves(tree: &Graph) -> Vec<usize> {
    (0..tree.vertex_count()).filter(|&v| tree.degree(v) == 1).collect()
}

/// `Z_{P_n}` as an integer polynomial in `lambda`, lowest degree first.
/// Written against the independent-set count, not the rational recurrence.
pub fn path_polynomial(n: usize) -> Vec<num_bigint::BigInt> {
    use num_bigint::BigInt;
    // Independent k-subsets of P_n: binomial(n - k + 1, k).
    let mut coeffs = Vec::new();
    let mut k = 0usize;
    while 2 * k <= n + 1 {
        let top = n + 1 - k;
        let mut c = BigInt::one();
        for i in 0..k {
            c = c * BigInt::from(top - i) / BigInt::from(i + 1);
        }
        coeffs.push(c);
        k += 1;
    }
    coeffs
}
