use num_traits::Zero;

use super::{z_exact, Activities};
use crate::error::{Error, Result};
use crate::graphs::{ActivityVector, Graph, GraphBuilder};
use crate::numerics::BigRational;

pub const DEFAULT_CUTSET_CAP: usize = 24;

/// `Z_G` by conditioning on the occupation of `cut`.
///
/// Each independent pattern on the cut deletes the occupied vertices and
/// their neighbours; the rest of the graph is evaluated exactly. Useful when
/// a small set of vertices breaks every large block.
pub fn z_cutset<'a>(g: &Graph, acts: impl Into<Activities<'a>>, cut: &[usize]) -> Result<BigRational> {
    let acts = acts.into();
    let n = g.vertex_count();
    if let Activities::Vector(v) = acts {
        v.check_len(g)?;
    }
    if cut.len() > DEFAULT_CUTSET_CAP {
        return Err(Error::Capacity { what: "cut set".into(), size: cut.len(), cap: DEFAULT_CUTSET_CAP });
    }
    for &c in cut {
        g.check_vertex(c)?;
    }
    let act = |v: usize| match acts {
        Activities::Uniform(x) => x.clone(),
        Activities::Vector(a) => a.get(v).clone(),
    };
    let mut in_cut = vec![false; n];
    for &c in cut {
        in_cut[c] = true;
    }

    let mut total = BigRational::zero();
    'patterns: for mask in 0u64..(1u64 << cut.len()) {
        let occupied: Vec<usize> = (0..cut.len()).filter(|i| mask >> i & 1 == 1).map(|i| cut[i]).collect();
        let mut removed = in_cut.clone();
        let mut weight = BigRational::from_integer(1.into());
        for &u in &occupied {
            for &w in g.neighbors(u) {
                if in_cut[w] && occupied.contains(&w) {
                    continue 'patterns;
                }
                removed[w] = true;
            }
            weight *= act(u);
        }
        let mut map = vec![usize::MAX; n];
        let mut b = GraphBuilder::new();
        let mut sub_acts = Vec::new();
        for v in (0..n).filter(|&v| !removed[v]) {
            map[v] = b.add_vertex();
            sub_acts.push(act(v));
        }
        for &(u, v) in g.edges() {
            if !removed[u] && !removed[v] {
                b.add_edge(map[u], map[v]);
            }
        }
        let sub = b.build()?;
        let rest = z_exact(&sub, &ActivityVector::from_vec(sub_acts), None)?.total();
        total += weight * rest;
    }
    Ok(total)
}
