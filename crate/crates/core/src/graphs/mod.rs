//! Undirected graphs, gadgets and the composition primitives used by every
//! construction.

mod gadget;
mod graph;

pub use gadget::{validate_gadget, ActivityVector, Gadget, GadgetCheck};
pub use graph::{
    add_pendant, attach_at, attach_at_mapped, complete, dary_tree, delete_vertex, disjoint_union, is_bipartite, path,
    Graph, GraphBuilder,
};
