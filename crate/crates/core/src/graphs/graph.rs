use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

/// Simple undirected graph on vertices `0..n`.
///
/// Edges are stored once as `(u, v)` with `u < v`, sorted. Adjacency is kept
/// in compressed form because some constructions reach millions of vertices.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GraphRepr", into = "GraphRepr")]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    labels: BTreeMap<usize, String>,
    offsets: Vec<usize>,
    targets: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    n: usize,
    edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    labels: BTreeMap<usize, String>,
}

impl TryFrom<GraphRepr> for Graph {
    type Error = Error;
    fn try_from(r: GraphRepr) -> Result<Self> {
        let mut g = Graph::new(r.n, r.edges.into_iter().map(|[u, v]| (u, v)))?;
        for (v, l) in r.labels {
            if v >= g.n {
                return domain(format!("label on vertex {v} out of range"));
            }
            g.labels.insert(v, l);
        }
        Ok(g)
    }
}

impl From<Graph> for GraphRepr {
    fn from(g: Graph) -> Self {
        GraphRepr {
            n: g.n,
            edges: g.edges.iter().map(|&(u, v)| [u, v]).collect(),
            labels: g.labels,
        }
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.n <= 64 {
            write!(f, "Graph(n={}, edges={:?})", self.n, self.edges)
        } else {
            write!(f, "Graph(n={}, m={})", self.n, self.edges.len())
        }
    }
}

impl Graph {
    /// Validates and builds. Rejects self-loops, parallel edges and
    /// out-of-range endpoints.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut list = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return domain(format!("edge ({u}, {v}) out of range for {n} vertices"));
            }
            if u == v {
                return domain(format!("self-loop at vertex {u}"));
            }
            list.push((u.min(v), u.max(v)));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return domain(format!("parallel edge ({}, {})", w[0].0, w[0].1));
        }
        Ok(Self::from_sorted(n, list, BTreeMap::new()))
    }

    fn from_sorted(n: usize, edges: Vec<(usize, usize)>, labels: BTreeMap<usize, String>) -> Self {
        let mut deg = vec![0usize; n + 1];
        for &(u, v) in &edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        let mut acc = 0;
        for d in deg.iter().take(n) {
            offsets.push(acc);
            acc += d;
        }
        offsets.push(acc);
        let mut fill = offsets.clone();
        let mut targets = vec![0usize; acc];
        for &(u, v) in &edges {
            targets[fill[u]] = v;
            fill[u] += 1;
            targets[fill[v]] = u;
            fill[v] += 1;
        }
        for v in 0..n {
            targets[offsets[v]..offsets[v + 1]].sort_unstable();
        }
        Graph { n, edges, labels, offsets, targets }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_sorted(n, Vec::new(), BTreeMap::new())
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.neighbors(u).binary_search(&v).is_ok()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn labels(&self) -> &BTreeMap<usize, String> {
        &self.labels
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels.get(&v).map(String::as_str)
    }

    pub fn with_label(mut self, v: usize, label: impl Into<String>) -> Self {
        assert!(v < self.n);
        self.labels.insert(v, label.into());
        self
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            return domain(format!("vertex {v} out of range for {} vertices", self.n));
        }
        Ok(())
    }

    /// Connected-component index for every vertex, and the component count.
    pub fn components(&self) -> (Vec<usize>, usize) {
        let mut comp = vec![usize::MAX; self.n];
        let mut count = 0;
        let mut queue = VecDeque::new();
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = count;
            queue.push_back(s);
            while let Some(v) = queue.pop_front() {
                for &w in self.neighbors(v) {
                    if comp[w] == usize::MAX {
                        comp[w] = count;
                        queue.push_back(w);
                    }
                }
            }
            count += 1;
        }
        (comp, count)
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.components().1 == 1
    }

    /// Connected and acyclic.
    pub fn is_tree(&self) -> bool {
        self.n > 0 && self.edges.len() == self.n - 1 && self.is_connected()
    }

    /// Acyclic (a forest).
    pub fn is_forest(&self) -> bool {
        self.edges.len() + self.components().1 == self.n
    }
}

/// Proper 2-coloring if one exists.
pub fn is_bipartite(g: &Graph) -> Option<Vec<u8>> {
    let mut color = vec![u8::MAX; g.n];
    let mut queue = VecDeque::new();
    for s in 0..g.n {
        if color[s] != u8::MAX {
            continue;
        }
        color[s] = 0;
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            for &w in g.neighbors(v) {
                if color[w] == u8::MAX {
                    color[w] = 1 - color[v];
                    queue.push_back(w);
                } else if color[w] == color[v] {
                    return None;
                }
            }
        }
    }
    Some(color)
}

/// Incremental construction with deferred validation.
#[derive(Debug, Default, Clone)]
pub struct GraphBuilder {
    n: usize,
    edges: Vec<(usize, usize)>,
    labels: BTreeMap<usize, String>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_graph(g: &Graph) -> Self {
        GraphBuilder { n: g.n, edges: g.edges.clone(), labels: g.labels.clone() }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn add_vertex(&mut self) -> usize {
        self.n += 1;
        self.n - 1
    }

    pub fn add_vertices(&mut self, k: usize) -> usize {
        let first = self.n;
        self.n += k;
        first
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        self.edges.push((u.min(v), u.max(v)));
    }

    pub fn label(&mut self, v: usize, label: impl Into<String>) {
        self.labels.insert(v, label.into());
    }

    /// Appends a copy of `g`, returning the id offset of its vertices.
    pub fn append(&mut self, g: &Graph) -> usize {
        let off = self.add_vertices(g.n);
        self.edges.extend(g.edges.iter().map(|&(u, v)| (u + off, v + off)));
        off
    }

    /// Appends a copy of `g` with its vertex `v` identified with the existing
    /// vertex `at`. Returns the new id of every vertex of `g`.
    pub fn attach(&mut self, at: usize, g: &Graph, v: usize) -> Vec<usize> {
        let mut map = Vec::with_capacity(g.n);
        for w in 0..g.n {
            map.push(if w == v { at } else { usize::MAX });
        }
        for (w, slot) in map.iter_mut().enumerate() {
            if w != v {
                *slot = self.add_vertex();
            }
        }
        self.edges.extend(g.edges.iter().map(|&(a, b)| {
            let (x, y) = (map[a], map[b]);
            (x.min(y), x.max(y))
        }));
        map
    }

    pub fn build(self) -> Result<Graph> {
        let GraphBuilder { n, mut edges, labels } = self;
        for &(u, v) in &edges {
            if v >= n {
                return domain(format!("edge ({u}, {v}) out of range for {n} vertices"));
            }
            if u == v {
                return domain(format!("self-loop at vertex {u}"));
            }
        }
        edges.sort_unstable();
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Composition(format!("parallel edge ({}, {})", w[0].0, w[0].1)));
        }
        Ok(Graph::from_sorted(n, edges, labels))
    }
}

/// The path P_n on vertices 0..n, endpoints 0 and n-1.
pub fn path(n: usize) -> Result<Graph> {
    if n == 0 {
        return domain("path needs at least one vertex");
    }
    Graph::new(n, (1..n).map(|i| (i - 1, i)))
}

/// Complete d-ary tree of height h in breadth-first order; the root is 0.
pub fn dary_tree(d: usize, h: usize) -> (Graph, usize) {
    let mut b = GraphBuilder::new();
    let root = b.add_vertex();
    let mut level = vec![root];
    for _ in 0..h {
        let mut next = Vec::with_capacity(level.len() * d);
        for &p in &level {
            for _ in 0..d {
                let c = b.add_vertex();
                b.add_edge(p, c);
                next.push(c);
            }
        }
        level = next;
    }
    (b.build().expect("tree construction is simple"), root)
}

/// Disjoint union with `u` (in g1) and `v` (in g2) identified.
///
/// Vertices of g1 keep their ids; the returned map gives the new id of each
/// vertex of g2.
pub fn attach_at_mapped(g1: &Graph, u: usize, g2: &Graph, v: usize) -> Result<(Graph, Vec<usize>)> {
    g1.check_vertex(u)?;
    g2.check_vertex(v)?;
    let mut b = GraphBuilder::from_graph(g1);
    let map = b.attach(u, g2, v);
    Ok((b.build()?, map))
}

pub fn attach_at(g1: &Graph, u: usize, g2: &Graph, v: usize) -> Result<Graph> {
    attach_at_mapped(g1, u, g2, v).map(|(g, _)| g)
}

/// Adds a new degree-1 vertex adjacent to `u`.
pub fn add_pendant(g: &Graph, u: usize) -> Result<(Graph, usize)> {
    g.check_vertex(u)?;
    let mut b = GraphBuilder::from_graph(g);
    let v = b.add_vertex();
    b.add_edge(u, v);
    Ok((b.build()?, v))
}

/// Disjoint union; returns the offset of g2's vertices.
pub fn disjoint_union(g1: &Graph, g2: &Graph) -> (Graph, usize) {
    let mut b = GraphBuilder::from_graph(g1);
    let off = b.append(g2);
    (b.build().expect("disjoint union of simple graphs is simple"), off)
}

/// `g` with vertex `v` removed; vertices above `v` shift down by one.
pub fn delete_vertex(g: &Graph, v: usize) -> Result<Graph> {
    g.check_vertex(v)?;
    let shift = |w: usize| if w > v { w - 1 } else { w };
    let edges = g
        .edges
        .iter()
        .filter(|&&(a, b)| a != v && b != v)
        .map(|&(a, b)| (shift(a), shift(b)))
        .collect();
    Ok(Graph::from_sorted(g.n - 1, edges, BTreeMap::new()))
}

/// The complete graph K_n.
pub fn complete(n: usize) -> Graph {
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    Graph::new(n, edges).expect("complete graph is simple")
}
