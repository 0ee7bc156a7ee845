//! Compiling a 3-regular 2-spin instance into a uniform hard-core instance.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::gadgets::attach_activities;
use crate::graphs::{is_bipartite, ActivityVector, Graph, GraphBuilder};
use crate::numerics::rational::{self, BigRational};
use crate::numerics::CubicNumber;
use crate::partition::z_exact;

use super::edge::edge_gadget;
use super::spin::beta_gamma;
use super::targets::{choose_activity_targets, ActivityTargets, TargetOptions};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReductionOutput {
    pub delta: usize,
    #[serde(with = "rational::serde_str")]
    pub lambda: BigRational,
    pub h: Graph,
    pub targets: ActivityTargets,
    /// `H` with every edge replaced by a copy of the edge gadget.
    pub g: Graph,
    pub g_activities: ActivityVector,
    pub g_prime: Graph,
    /// Vertex `v` of `H` is vertex `core_vertices[v]` of `G` and `G'`.
    pub core_vertices: Vec<usize>,
    /// `(x, z, y)` for every edge of `H`, in edge order.
    pub edge_paths: Vec<[usize; 3]>,
    pub c: CubicNumber,
    #[serde(with = "rational::serde_str")]
    pub c1: BigRational,
    #[serde(with = "rational::serde_str")]
    pub c2: BigRational,
    pub n1: usize,
    pub n2: usize,
    pub beta: CubicNumber,
    pub gamma: CubicNumber,
}

pub fn check_three_regular(h: &Graph) -> Result<()> {
    if h.vertex_count() == 0 {
        return domain("H has no vertices");
    }
    if let Some(v) = (0..h.vertex_count()).find(|&v| h.degree(v) != 3) {
        return domain(format!("H is not 3-regular: vertex {v} has degree {}", h.degree(v)));
    }
    Ok(())
}

/// Core vertices keep `H`'s ids; edge `i` adds `x, z, y` at `n + 3i ..`.
pub(crate) fn edge_replacement(
    h: &Graph,
    lambda: &BigRational,
    l1: &BigRational,
    l2: &BigRational,
) -> Result<(Graph, ActivityVector, Vec<[usize; 3]>)> {
    let n = h.vertex_count();
    let mut b = GraphBuilder::new();
    b.add_vertices(n);
    let mut acts = vec![lambda.clone(); n];
    let mut paths = Vec::with_capacity(h.edge_count());
    for &(u, v) in h.edges() {
        let x = b.add_vertices(3);
        let (z, y) = (x + 1, x + 2);
        b.add_edge(u, x);
        b.add_edge(x, z);
        b.add_edge(z, y);
        b.add_edge(y, v);
        acts.extend([l1.clone(), l2.clone(), l1.clone()]);
        paths.push([x, z, y]);
    }
    Ok((b.build()?, ActivityVector::from_vec(acts), paths))
}

pub fn reduce(h: &Graph, delta: usize, lambda: &BigRational, opts: &TargetOptions) -> Result<ReductionOutput> {
    check_three_regular(h)?;
    if delta < 3 {
        return domain(format!("maximum degree must be at least 3, got {delta}"));
    }
    let targets = choose_activity_targets(delta, lambda, opts)?;
    let (l1, l2) = (&targets.lambda1, &targets.lambda2);
    let params = beta_gamma(lambda, l1, l2)?;
    let eg = edge_gadget(lambda, l1, l2)?;

    let (g, g_activities, edge_paths) = edge_replacement(h, lambda, l1, l2)?;
    let g1 = &targets.gadget1.gadget;
    let g2 = &targets.gadget2.gadget;
    let att = attach_activities(&g, &g_activities, lambda, &[g1, g2])?;
    let c1 = z_exact(&g1.graph, lambda, Some(g1.terminal))?.z_out;
    let c2 = z_exact(&g2.graph, lambda, Some(g2.terminal))?.z_out;

    if is_bipartite(&att.graph).is_none() || att.graph.max_degree() > delta {
        return Err(Error::Internal("compiled instance is not bipartite of bounded degree".into()));
    }
    Ok(ReductionOutput {
        delta,
        lambda: lambda.clone(),
        h: h.clone(),
        core_vertices: (0..h.vertex_count()).collect(),
        edge_paths,
        c: eg.z01,
        c1,
        c2,
        n1: att.counts[0],
        n2: att.counts[1],
        beta: params.beta,
        gamma: params.gamma,
        g,
        g_activities,
        g_prime: att.graph,
        targets,
    })
}

impl ReductionOutput {
    /// `|V(G')| / |V(H)|` as an exact ratio.
    pub fn blowup(&self) -> BigRational {
        BigRational::new(self.g_prime.vertex_count().into(), self.h.vertex_count().into())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::complete;
    use crate::numerics::rational::{int, rat};

    #[test]
    fn k4_structure() {
        let h = complete(4);
        let opts = TargetOptions {
            lambda1: Some(rat(-13, 6)),
            lambda2: Some(rat(-9, 10)),
            eps: Some(int(0)),
            ..Default::default()
        };
        let out = reduce(&h, 3, &int(-1), &opts).unwrap();
        assert_eq!(out.g.vertex_count(), 22);
        assert_eq!((out.n1, out.n2), (12, 6));
        for v in 0..4 {
            assert_eq!(out.g_prime.degree(v), 3);
        }
        for p in &out.edge_paths {
            for &s in p {
                assert_eq!(out.g.degree(s), 2);
                assert_eq!(out.g_prime.degree(s), 3);
            }
        }
        assert!(is_bipartite(&out.g_prime).is_some());
        assert_eq!(out.c.as_rational(), Some(&rat(31, 15)));
    }

    #[test]
    fn rejects_non_cubic_graphs() {
        let h = Graph::new(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert!(matches!(reduce(&h, 3, &int(-1), &TargetOptions::default()), Err(Error::Domain(_))));
        assert!(Graph::new(2, [(0, 1), (0, 1), (0, 1)]).is_err());
    }
}
