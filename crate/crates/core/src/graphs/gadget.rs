use serde::{Deserialize, Serialize};

use super::graph::{is_bipartite, Graph};
use crate::error::{domain, Result};
use crate::numerics::rational::{self, BigRational};
use crate::partition;

/// Per-vertex activities for the non-uniform model.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ActivityVector(#[serde(with = "rational::serde_vec")] Vec<BigRational>);

impl ActivityVector {
    pub fn uniform(n: usize, lambda: &BigRational) -> Self {
        ActivityVector(vec![lambda.clone(); n])
    }

    pub fn from_vec(values: Vec<BigRational>) -> Self {
        ActivityVector(values)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, v: usize) -> &BigRational {
        &self.0[v]
    }

    pub fn set(&mut self, v: usize, x: BigRational) {
        self.0[v] = x;
    }

    pub fn as_slice(&self) -> &[BigRational] {
        &self.0
    }

    pub fn check_len(&self, g: &Graph) -> Result<()> {
        if self.0.len() != g.vertex_count() {
            return domain(format!(
                "activity vector has {} entries for {} vertices",
                self.0.len(),
                g.vertex_count()
            ));
        }
        Ok(())
    }
}

/// A graph with a degree-1 terminal and a claimed exact terminal ratio
/// `Z^in / Z^out` at ambient activity `lambda`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Gadget {
    #[serde(flatten)]
    pub graph: Graph,
    pub terminal: usize,
    #[serde(rename = "ratio", with = "rational::serde_str")]
    pub claimed_ratio: BigRational,
    #[serde(with = "rational::serde_str")]
    pub lambda: BigRational,
}

/// Outcome of re-checking a gadget from scratch.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GadgetCheck {
    pub terminal_degree: usize,
    /// Degree 1, or the one-vertex graph (the trivial gadget for `lambda`).
    pub terminal_ok: bool,
    pub bipartite: bool,
    pub max_degree: usize,
    pub z_out_nonzero: bool,
    pub ratio_matches: bool,
}

impl GadgetCheck {
    pub fn passes(&self) -> bool {
        self.terminal_ok && self.bipartite && self.z_out_nonzero && self.ratio_matches
    }

    pub fn passes_with_degree(&self, max_degree: usize) -> bool {
        self.passes() && self.max_degree <= max_degree
    }
}

impl Gadget {
    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    /// Recomputes everything the gadget claims, using the exact evaluators.
    pub fn check(&self) -> Result<GadgetCheck> {
        self.graph.check_vertex(self.terminal)?;
        let acts = ActivityVector::uniform(self.graph.vertex_count(), &self.lambda);
        let split = partition::z_exact_scaled(&self.graph, &acts, Some(self.terminal))?;
        let z_out_nonzero = !split.z_out_is_zero();
        Ok(GadgetCheck {
            terminal_degree: self.graph.degree(self.terminal),
            terminal_ok: self.graph.degree(self.terminal) == 1 || self.graph.vertex_count() == 1,
            bipartite: is_bipartite(&self.graph).is_some(),
            max_degree: self.graph.max_degree(),
            z_out_nonzero,
            ratio_matches: z_out_nonzero && split.ratio_equals(&self.claimed_ratio),
        })
    }
}

/// True iff the terminal has degree 1 (or the graph is a single vertex), the
/// graph is bipartite, `Z^out != 0`
/// and the recomputed ratio equals the claimed one exactly.
pub fn validate_gadget(g: &Gadget) -> Result<bool> {
    Ok(g.check()?.passes())
}
