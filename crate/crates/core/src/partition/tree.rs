use num_bigint::BigInt;

use super::{Activities, ScaledSplit, SplitValue, Weights};
use crate::error::{domain, Result};
use crate::graphs::{ActivityVector, Graph};
use crate::numerics::rational::BigRational;

/// Leaf-to-root in/out dynamic program on a tree:
/// `in(v) = lambda_v * prod out(c)`, `out(v) = prod (in(c) + out(c))`.
pub fn z_tree(t: &Graph, root: usize, acts: &ActivityVector) -> Result<SplitValue> {
    z_tree_scaled(t, root, acts.into()).map(ScaledSplit::into_split)
}

pub fn z_tree_uniform(t: &Graph, root: usize, lambda: &BigRational) -> Result<SplitValue> {
    z_tree_scaled(t, root, Activities::Uniform(lambda)).map(ScaledSplit::into_split)
}

struct Frame {
    v: usize,
    parent: usize,
    next: usize,
    acc_in: BigInt,
    acc_out: BigInt,
}

pub(crate) fn z_tree_scaled(t: &Graph, root: usize, acts: Activities<'_>) -> Result<ScaledSplit> {
    t.check_vertex(root)?;
    if !t.is_tree() {
        return domain("z_tree needs a connected acyclic graph");
    }
    let w = Weights::new(t, acts)?;
    // Explicit post-order stack: a finished subtree is folded into its
    // parent at once, so memory stays proportional to the depth.
    let mut stack = vec![Frame {
        v: root,
        parent: usize::MAX,
        next: 0,
        acc_in: w.w_in(root).clone(),
        acc_out: w.d.clone(),
    }];
    loop {
        let top = stack.last_mut().expect("non-empty stack");
        let nbrs = t.neighbors(top.v);
        if top.next < nbrs.len() {
            let c = nbrs[top.next];
            top.next += 1;
            if c != top.parent {
                let v = top.v;
                stack.push(Frame { v: c, parent: v, next: 0, acc_in: w.w_in(c).clone(), acc_out: w.d.clone() });
            }
            continue;
        }
        let done = stack.pop().expect("non-empty stack");
        match stack.last_mut() {
            Some(p) => {
                p.acc_in *= &done.acc_out;
                p.acc_out *= done.acc_in + done.acc_out;
            }
            None => {
                let denom = num_traits::pow(w.d.clone(), t.vertex_count());
                return Ok(ScaledSplit { z_in: done.acc_in, z_out: done.acc_out, denom, hint: w.d });
            }
        }
    }
}
