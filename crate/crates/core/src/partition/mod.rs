//! Exact evaluators for the hard-core partition function and friends.
//!
//! All evaluators work over integers internally: activities are brought to a
//! common denominator `D`, every vertex contributes weight `lambda_v * D`
//! when occupied and `D` when not, and the result carries the implicit
//! denominator `D^n`. Reduction to lowest terms happens once, at the end.

mod blocks;
mod brute;
mod cutset;
mod path;
mod tree;
mod twospin;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graphs::{ActivityVector, Graph};
use crate::numerics::rational::{self, BigRational};

pub use blocks::{z_blocks, z_blocks_capped};
pub use cutset::{z_cutset, DEFAULT_CUTSET_CAP};
pub use brute::{for_each_independent_set, z_bruteforce, z_bruteforce_capped, DEFAULT_BRUTE_CAP};
pub use path::{
    path_ratio, path_ratio_parts, z_path_closed, z_path_closed_at, z_path_recurrence, PathSequence,
};
pub use tree::{z_tree, z_tree_uniform};
pub use twospin::{z_twospin, z_twospin_capped, TwoSpinParams, DEFAULT_TWOSPIN_CAP};

/// `Z^in` and `Z^out` at a marked vertex. Without a marked vertex, `z_out`
/// holds the whole partition function and `z_in` is zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitValue {
    #[serde(with = "rational::serde_str")]
    pub z_in: BigRational,
    #[serde(with = "rational::serde_str")]
    pub z_out: BigRational,
}

impl SplitValue {
    pub fn total(&self) -> BigRational {
        &self.z_in + &self.z_out
    }

    /// `Z^in / Z^out`.
    pub fn ratio(&self) -> Result<BigRational> {
        if self.z_out.is_zero() {
            return Err(Error::UndefinedRatio("Z^out is zero".into()));
        }
        Ok(&self.z_in / &self.z_out)
    }
}

/// Activity source: one shared value or a per-vertex vector.
#[derive(Clone, Copy, Debug)]
pub enum Activities<'a> {
    Uniform(&'a BigRational),
    Vector(&'a ActivityVector),
}

impl<'a> From<&'a ActivityVector> for Activities<'a> {
    fn from(v: &'a ActivityVector) -> Self {
        Activities::Vector(v)
    }
}

impl<'a> From<&'a BigRational> for Activities<'a> {
    fn from(x: &'a BigRational) -> Self {
        Activities::Uniform(x)
    }
}

/// Integer weights over a common denominator.
pub(crate) struct Weights {
    pub d: BigInt,
    uniform: Option<BigInt>,
    per_vertex: Vec<BigInt>,
}

impl Weights {
    pub fn new(g: &Graph, acts: Activities<'_>) -> Result<Self> {
        match acts {
            Activities::Uniform(x) => Ok(Weights {
                d: x.denom().clone(),
                uniform: Some(x.numer().clone()),
                per_vertex: Vec::new(),
            }),
            Activities::Vector(v) => {
                v.check_len(g)?;
                let d = v.as_slice().iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                let per_vertex = v
                    .as_slice()
                    .iter()
                    .map(|x| x.numer() * (&d / x.denom()))
                    .collect();
                Ok(Weights { d, uniform: None, per_vertex })
            }
        }
    }

    /// Occupied weight `lambda_v * D`.
    pub fn w_in(&self, v: usize) -> &BigInt {
        match &self.uniform {
            Some(w) => w,
            None => &self.per_vertex[v],
        }
    }
}

/// Unreduced split: `z_in / denom` and `z_out / denom`, where every prime
/// shared with `denom` divides `hint`.
#[derive(Clone, Debug)]
pub struct ScaledSplit {
    pub z_in: BigInt,
    pub z_out: BigInt,
    pub denom: BigInt,
    pub hint: BigInt,
}

impl ScaledSplit {
    pub fn z_out_is_zero(&self) -> bool {
        self.z_out.is_zero()
    }

    pub fn total_is_zero(&self) -> bool {
        (&self.z_in + &self.z_out).is_zero()
    }

    /// `z_in / z_out == x`, by cross-multiplication.
    pub fn ratio_equals(&self, x: &BigRational) -> bool {
        !self.z_out.is_zero() && &self.z_in * x.denom() == &self.z_out * x.numer()
    }

    pub fn into_split(self) -> SplitValue {
        SplitValue {
            z_in: rational::reduce_with_hint(self.z_in, self.denom.clone(), &self.hint),
            z_out: rational::reduce_with_hint(self.z_out, self.denom, &self.hint),
        }
    }

    fn unmarked(total: BigInt, denom: BigInt, hint: BigInt) -> Self {
        ScaledSplit { z_in: BigInt::zero(), z_out: total, denom, hint }
    }
}

/// Exact split by the cheapest applicable evaluator: tree DP for trees,
/// block decomposition otherwise.
pub fn z_exact_scaled<'a>(
    g: &Graph,
    acts: impl Into<Activities<'a>>,
    marked: Option<usize>,
) -> Result<ScaledSplit> {
    let acts = acts.into();
    if let Some(v) = marked {
        g.check_vertex(v)?;
    }
    if g.is_tree() {
        let root = marked.unwrap_or(0);
        let s = tree::z_tree_scaled(g, root, acts)?;
        return Ok(match marked {
            Some(_) => s,
            None => ScaledSplit::unmarked(&s.z_in + &s.z_out, s.denom, s.hint),
        });
    }
    blocks::z_blocks_scaled(g, acts, marked, DEFAULT_BRUTE_CAP)
}

pub fn z_exact<'a>(
    g: &Graph,
    acts: impl Into<Activities<'a>>,
    marked: Option<usize>,
) -> Result<SplitValue> {
    z_exact_scaled(g, acts, marked).map(ScaledSplit::into_split)
}

/// `R(G, v) = Z^out / Z`. Trees use the tree DP; anything else goes through
/// brute-force enumeration.
#[allow(non_snake_case)]
pub fn ratio_R(g: &Graph, v: usize, acts: &ActivityVector) -> Result<BigRational> {
    g.check_vertex(v)?;
    let s = if g.is_tree() { z_tree(g, v, acts)? } else { z_bruteforce(g, acts, Some(v))? };
    let z = s.total();
    if z.is_zero() {
        return Err(Error::UndefinedRatio("Z_G is zero".into()));
    }
    Ok(s.z_out / z)
}
