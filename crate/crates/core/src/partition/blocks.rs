//! Exact evaluation over the block-cut tree. Each biconnected block is
//! enumerated by brute force with its vertices carrying the already-folded
//! weights of everything hanging below them; on a tree every block is an
//! edge and this collapses to the usual tree recursion.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Activities, ScaledSplit, SplitValue, Weights, DEFAULT_BRUTE_CAP};
use crate::error::{Error, Result};
use crate::graphs::{ActivityVector, Graph};

pub fn z_blocks(g: &Graph, acts: &ActivityVector, marked: Option<usize>) -> Result<SplitValue> {
    z_blocks_scaled(g, acts.into(), marked, DEFAULT_BRUTE_CAP).map(ScaledSplit::into_split)
}

/// As [`z_blocks`], with an explicit cap on the size of any single block.
pub fn z_blocks_capped(
    g: &Graph,
    acts: Activities<'_>,
    marked: Option<usize>,
    block_cap: usize,
) -> Result<SplitValue> {
    z_blocks_scaled(g, acts, marked, block_cap).map(ScaledSplit::into_split)
}

const UNSEEN: usize = usize::MAX;

pub(crate) fn z_blocks_scaled(
    g: &Graph,
    acts: Activities<'_>,
    marked: Option<usize>,
    block_cap: usize,
) -> Result<ScaledSplit> {
    let n = g.vertex_count();
    let w = Weights::new(g, acts)?;
    if n == 0 {
        return Ok(ScaledSplit {
            z_in: BigInt::zero(),
            z_out: BigInt::one(),
            denom: BigInt::one(),
            hint: BigInt::one(),
        });
    }
    if let Some(v) = marked {
        g.check_vertex(v)?;
    }
    let cap = block_cap.min(64);
    let mut pair: Vec<(BigInt, BigInt)> = (0..n).map(|v| (w.w_in(v).clone(), w.d.clone())).collect();
    let mut disc = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut time = 0usize;
    let mut pos = vec![UNSEEN; n];
    let mut others_total = BigInt::one();
    let mut marked_pair = None;

    let roots = marked.into_iter().chain(0..n);
    for s in roots {
        if disc[s] != UNSEEN {
            continue;
        }
        disc[s] = time;
        low[s] = time;
        time += 1;
        let mut vstack = vec![s];
        let mut frames: Vec<(usize, usize, usize)> = vec![(s, UNSEEN, 0)];
        while let Some(&(v, p, idx)) = frames.last() {
            let nbrs = g.neighbors(v);
            if idx < nbrs.len() {
                frames.last_mut().unwrap().2 += 1;
                let x = nbrs[idx];
                if disc[x] == UNSEEN {
                    disc[x] = time;
                    low[x] = time;
                    time += 1;
                    vstack.push(x);
                    frames.push((x, v, 0));
                } else if x != p {
                    low[v] = low[v].min(disc[x]);
                }
                continue;
            }
            frames.pop();
            if let Some(&(u, _, _)) = frames.last() {
                low[u] = low[u].min(low[v]);
                if low[v] >= disc[u] {
                    let mut members = Vec::new();
                    loop {
                        let x = vstack.pop().expect("vertex stack underflow");
                        members.push(x);
                        if x == v {
                            break;
                        }
                    }
                    members.push(u);
                    if members.len() > cap {
                        return Err(Error::Capacity {
                            what: "biconnected block".into(),
                            size: members.len(),
                            cap,
                        });
                    }
                    fold_block(g, &members, &mut pair, &mut pos);
                }
            }
        }
        let (i, o) = std::mem::take(&mut pair[s]);
        if Some(s) == marked {
            marked_pair = Some((i, o));
        } else {
            others_total *= i + o;
        }
    }

    let denom = num_traits::pow(w.d.clone(), n);
    Ok(match marked_pair {
        Some((i, o)) => ScaledSplit {
            z_in: i * &others_total,
            z_out: o * others_total,
            denom,
            hint: w.d,
        },
        None => ScaledSplit { z_in: BigInt::zero(), z_out: others_total, denom, hint: w.d },
    })
}

/// Folds block `members` (top vertex last) into the top vertex's pair.
fn fold_block(g: &Graph, members: &[usize], pair: &mut [(BigInt, BigInt)], pos: &mut [usize]) {
    let s = members.len();
    // Local order: top first, then the rest.
    let top = members[s - 1];
    let local: Vec<usize> = std::iter::once(top).chain(members[..s - 1].iter().copied()).collect();
    for (i, &v) in local.iter().enumerate() {
        pos[v] = i;
    }
    let nb: Vec<u64> = local
        .iter()
        .map(|&v| {
            g.neighbors(v)
                .iter()
                .filter(|&&x| pos[x] != UNSEEN)
                .fold(0u64, |m, &x| m | (1 << pos[x]))
        })
        .collect();
    for &v in &local {
        pos[v] = UNSEEN;
    }
    let weights: Vec<(BigInt, BigInt)> = local[1..].iter().map(|&v| std::mem::take(&mut pair[v])).collect();

    fn sum(i: usize, forbidden: u64, nb: &[u64], weights: &[(BigInt, BigInt)]) -> BigInt {
        let s = nb.len();
        let mut i = i;
        let mut skipped = BigInt::one();
        while i < s && forbidden >> i & 1 == 1 {
            skipped *= &weights[i - 1].1;
            i += 1;
        }
        if i == s {
            return skipped;
        }
        let (w_in, w_out) = &weights[i - 1];
        let out = w_out * sum(i + 1, forbidden, nb, weights);
        let inside = w_in * sum(i + 1, forbidden | nb[i], nb, weights);
        skipped * (out + inside)
    }

    let z_in = sum(1, nb[0], &nb, &weights);
    let z_out = sum(1, 0, &nb, &weights);
    let p = &mut pair[top];
    p.0 *= z_in;
    p.1 *= z_out;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{complete, path, Graph};
    use crate::numerics::rational::{int, rat};
    use crate::partition::{z_bruteforce, z_tree};

    fn acts(g: &Graph) -> ActivityVector {
        ActivityVector::from_vec((0..g.vertex_count()).map(|i| rat(2 * i as i64 - 9, 5 + i as i64)).collect())
    }

    #[test]
    fn agrees_on_trees() {
        let g = path(7).unwrap();
        let a = acts(&g);
        assert_eq!(z_blocks(&g, &a, Some(3)).unwrap(), z_tree(&g, 3, &a).unwrap());
    }

    #[test]
    fn agrees_on_cyclic_graphs() {
        // Two triangles sharing a vertex, a 4-cycle hanging off, and a
        // separate component.
        let g = Graph::new(
            11,
            [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4), (4, 5), (5, 6), (6, 7), (7, 4), (9, 10)],
        )
        .unwrap();
        let a = acts(&g);
        for v in 0..11 {
            assert_eq!(z_blocks(&g, &a, Some(v)).unwrap(), z_bruteforce(&g, &a, Some(v)).unwrap());
        }
        assert_eq!(z_blocks(&g, &a, None).unwrap(), z_bruteforce(&g, &a, None).unwrap());
    }

    #[test]
    fn block_cap() {
        let k = complete(6);
        let u = ActivityVector::uniform(6, &int(-1));
        assert!(matches!(
            z_blocks_capped(&k, (&u).into(), None, 5),
            Err(Error::Capacity { .. })
        ));
        // K6: 1 + 6 * lambda.
        assert_eq!(z_blocks(&k, &u, None).unwrap().total(), int(-5));
    }
}
