//! Lowering the effective activity below -1/4 with d-ary trees.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::graphs::{dary_tree, Graph, GraphBuilder};
use crate::numerics::rational::{self, int, rat, BigRational};

pub const BOOST_ITERATION_CAP: u64 = 1_000_000;

/// `(D-1)^(D-1) / D^D`.
pub fn lambda_star(delta: usize) -> Result<BigRational> {
    if delta < 2 {
        return domain(format!("lambda_star needs delta >= 2, got {delta}"));
    }
    let d = BigInt::from(delta);
    let num = num_traits::pow(&d - 1, delta - 1);
    Ok(BigRational::new(num, num_traits::pow(d, delta)))
}

#[derive(Clone, Debug, Serialize)]
pub struct BoostResult {
    pub delta: usize,
    #[serde(with = "rational::serde_str")]
    pub lambda: BigRational,
    pub height: usize,
    /// `x_0, ..., x_h`; `x_j = Z^out / Z` at the root of `T_j`.
    #[serde(with = "rational::serde_vec")]
    pub iterates: Vec<BigRational>,
    #[serde(with = "rational::serde_str")]
    pub lambda_hat: BigRational,
    #[serde(skip)]
    pub tree: Graph,
    #[serde(skip)]
    pub root: usize,
}

impl BoostResult {
    pub fn x_h(&self) -> &BigRational {
        self.iterates.last().expect("at least x_0")
    }
}

/// Iterates `x_{j+1} = 1 / (1 - A x_j^d)` from `x_0 = 1 / (1 - A)`, with
/// `A = -lambda` and `d = delta - 1`, until `A x_h^d >= 1`. The tree `T_h`
/// is the complete d-ary tree of height `h`.
pub fn boost(delta: usize, lambda: &BigRational) -> Result<BoostResult> {
    let ls = lambda_star(delta)?;
    if lambda < &rat(-1, 4) || lambda >= &-&ls {
        return domain(format!("boost needs -1/4 <= lambda < -{ls}, got {lambda}"));
    }
    let a = -lambda;
    let d = delta - 1;
    let one = BigRational::one();
    let mut xs = vec![(&one - &a).recip()];
    loop {
        let x = xs.last().expect("non-empty");
        let ax = &a * num_traits::pow(x.clone(), d);
        if ax >= one {
            break;
        }
        if xs.len() as u64 > BOOST_ITERATION_CAP {
            return Err(Error::Internal(format!("boost did not reach the threshold in {BOOST_ITERATION_CAP} steps")));
        }
        let next = (&one - ax).recip();
        if &next <= x {
            return Err(Error::Internal(format!("boost iterate failed to increase at step {}", xs.len())));
        }
        xs.push(next);
    }
    let height = xs.len() - 1;
    let x_h = xs.last().expect("non-empty");
    let lambda_hat = lambda * num_traits::pow(x_h.clone(), d - 1);
    if lambda_hat >= rat(-1, 4) {
        return Err(Error::Internal(format!("boosted activity {lambda_hat} is not below -1/4")));
    }
    let (tree, root) = dary_tree(d, height);
    Ok(BoostResult { delta, lambda: lambda.clone(), height, iterates: xs, lambda_hat, tree, root })
}

/// `P_n` with `d - 1` copies of `T_h` hanging off every path vertex, and
/// the same graph with a pendant on the endpoint.
#[derive(Clone, Debug)]
pub struct DecoratedPath {
    pub n: usize,
    pub g: Graph,
    /// Path vertices in order; `path[0]` is the endpoint `v`.
    pub path: Vec<usize>,
    pub g_prime: Graph,
    pub pendant: usize,
}

pub fn decorated_path(br: &BoostResult, n: usize) -> Result<DecoratedPath> {
    if n == 0 {
        return domain("decorated path needs n >= 1");
    }
    let copies = br.delta - 2;
    let mut b = GraphBuilder::new();
    let first = b.add_vertices(n);
    for i in 1..n {
        b.add_edge(first + i - 1, first + i);
    }
    for i in 0..n {
        for _ in 0..copies {
            let off = b.append(&br.tree);
            b.add_edge(first + i, off + br.root);
        }
    }
    let mut bp = b.clone();
    let g = b.build()?;
    let pendant = bp.add_vertex();
    bp.add_edge(first, pendant);
    let g_prime = bp.build()?;
    Ok(DecoratedPath { n, g, path: (first..first + n).collect(), g_prime, pendant })
}

/// Ratio at the pendant of `G_n'` given the path ratio `r` at `lambda_hat`.
pub fn pendant_ratio(lambda: &BigRational, r: &BigRational) -> Result<BigRational> {
    let d = int(1) + r;
    if d.is_zero() {
        return Err(Error::UndefinedRatio("1 + r vanishes".into()));
    }
    Ok(lambda / d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::{path_ratio, z_path_recurrence, z_tree_uniform};

    #[test]
    fn thresholds() {
        assert_eq!(lambda_star(2).unwrap(), rat(1, 4));
        assert_eq!(lambda_star(3).unwrap(), rat(4, 27));
        assert_eq!(lambda_star(4).unwrap(), rat(27, 256));
        assert!(lambda_star(1).is_err());
    }

    #[test]
    fn boost_minus_one_fifth() {
        let br = boost(3, &rat(-1, 5)).unwrap();
        assert_eq!(br.height, 3);
        assert_eq!(br.iterates, vec![rat(5, 4), rat(16, 11), rat(605, 349), rat(121801, 48596)]);
        assert_eq!(br.lambda_hat, rat(-121801, 242980));
        assert_eq!(br.tree.vertex_count(), 15);
    }

    #[test]
    fn boost_edges_of_the_regime() {
        let br = boost(3, &rat(-1, 4)).unwrap();
        assert!(br.lambda_hat <= rat(-1, 2));
        let br = boost(4, &rat(-1, 5)).unwrap();
        assert!(br.lambda_hat < rat(-1, 4));
        assert!(boost(3, &rat(-1, 8)).is_err());
        assert!(boost(3, &rat(-1, 3)).is_err());
        assert!(boost(3, &rat(-4, 27)).is_err());
    }

    #[test]
    fn scaling_identities() {
        let l = rat(-1, 5);
        let br = boost(3, &l).unwrap();
        let zt = z_tree_uniform(&br.tree, br.root, &l).unwrap().total();
        for n in 1..=4 {
            let dp = decorated_path(&br, n).unwrap();
            let s = z_tree_uniform(&dp.g, dp.path[0], &l).unwrap();
            let scale = num_traits::pow(zt.clone(), n);
            assert_eq!(s.total(), z_path_recurrence(n as u64, &br.lambda_hat).unwrap() * &scale);
            assert_eq!(s.ratio().unwrap(), path_ratio(n as u64, &br.lambda_hat).unwrap());
            assert_eq!(dp.g_prime.degree(dp.pendant), 1);
            assert!(dp.g_prime.max_degree() <= 3);
            if n >= 3 {
                assert_eq!(dp.g.degree(dp.path[1]), 3);
            }
            assert_eq!(dp.g.degree(dp.path[0]), if n == 1 { 1 } else { 2 });
            let sp = z_tree_uniform(&dp.g_prime, dp.pendant, &l).unwrap();
            let r = path_ratio(n as u64, &br.lambda_hat).unwrap();
            assert_eq!(sp.ratio().unwrap(), pendant_ratio(&l, &r).unwrap());
        }
    }
}
