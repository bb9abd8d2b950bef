//! Plane-skeleton machinery: components of the crossing-free subgraph,
//! face walks, convex traces, abstract planarity and 4-colouring.

mod coloring;
mod faces;

use std::collections::BTreeMap;

use petgraph::graph::UnGraph;
use petgraph::unionfind::UnionFind;
use thiserror::Error;

use crate::drawing::{Drawing, EdgePartition};
pub use coloring::{four_color, Coloring};
pub use faces::{assign_to_faces, face_walks, trace_crossings, ConvexTrace, FaceAssignment, FaceWalk, Instance};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlanarError {
    #[error("abstract graph has a loop at vertex {0}")]
    Loop(usize),
    #[error("abstract graph has parallel edges between {0} and {1}")]
    Parallel(usize, usize),
    #[error("abstract graph edge ({0}, {1}) refers to a missing vertex")]
    MissingVertex(usize, usize),
    #[error("edge {edge} cannot be placed in a face of component {component}")]
    AssignmentImpossible { component: usize, edge: usize },
    #[error("no proper 4-colouring found; the graph is not planar")]
    SearchFailed,
}

/// One connected component of the crossing-free subgraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub vertices: Vec<usize>,
    pub planar_edges: Vec<usize>,
}

/// Components of the crossing-free subgraph with the crossed edges sorted by
/// the components of their endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub components: Vec<Component>,
    /// component index per vertex
    pub component_of: Vec<usize>,
    /// crossed edges with both endpoints in component `i`
    pub intra: Vec<Vec<usize>>,
    /// crossed edges between components `i < j`
    pub inter: BTreeMap<(usize, usize), Vec<usize>>,
    /// for every ordered pair `(i, j)` with crossed edges between them: the
    /// vertices of component `i` incident to such an edge
    pub boundary: BTreeMap<(usize, usize), Vec<usize>>,
}

impl Decomposition {
    pub fn boundary(&self, i: usize, j: usize) -> &[usize] {
        self.boundary.get(&(i, j)).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Components `j` with crossed edges to `i`, ascending.
    pub fn neighbours(&self, i: usize) -> Vec<usize> {
        self.boundary.keys().filter(|&&(a, _)| a == i).map(|&(_, b)| b).collect()
    }
}

/// Components are numbered by their smallest vertex index.
pub fn decompose(d: &Drawing, p: &EdgePartition) -> Decomposition {
    let n = d.vertex_count();
    let mut uf = UnionFind::<usize>::new(n);
    for &e in &p.planar {
        let (a, b) = d.endpoints(e);
        uf.union(a, b);
    }
    let mut index_of_root = BTreeMap::new();
    let mut component_of = vec![0; n];
    let mut components: Vec<Component> = Vec::new();
    for (v, slot) in component_of.iter_mut().enumerate() {
        let root = uf.find(v);
        let c = *index_of_root.entry(root).or_insert_with(|| {
            components.push(Component { vertices: Vec::new(), planar_edges: Vec::new() });
            components.len() - 1
        });
        *slot = c;
        components[c].vertices.push(v);
    }
    for &e in &p.planar {
        components[component_of[d.endpoints(e).0]].planar_edges.push(e);
    }

    let mut intra = vec![Vec::new(); components.len()];
    let mut inter: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    let mut boundary: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for &e in &p.crossed {
        let (a, b) = d.endpoints(e);
        let (ca, cb) = (component_of[a], component_of[b]);
        if ca == cb {
            intra[ca].push(e);
            continue;
        }
        inter.entry((ca.min(cb), ca.max(cb))).or_default().push(e);
        boundary.entry((ca, cb)).or_default().push(a);
        boundary.entry((cb, ca)).or_default().push(b);
    }
    for vs in boundary.values_mut() {
        vs.sort_unstable();
        vs.dedup();
    }
    Decomposition { components, component_of, intra, inter, boundary }
}

/// A simple undirected graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbstractGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl AbstractGraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, PlanarError> {
        let mut seen = std::collections::HashSet::new();
        let mut list = Vec::new();
        for (a, b) in edges {
            if a >= n || b >= n {
                return Err(PlanarError::MissingVertex(a, b));
            }
            if a == b {
                return Err(PlanarError::Loop(a));
            }
            if !seen.insert((a.min(b), a.max(b))) {
                return Err(PlanarError::Parallel(a, b));
            }
            list.push((a, b));
        }
        Ok(AbstractGraph { n, edges: list })
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        AbstractGraph { n, edges }
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let edges = (0..a).flat_map(|x| (0..b).map(move |y| (x, a + y))).collect();
        AbstractGraph { n: a + b, edges }
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

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }
}

/// Left-right planarity test.
pub fn is_planar(g: &AbstractGraph) -> bool {
    let mut pg = UnGraph::<(), ()>::with_capacity(g.n, g.edges.len());
    for _ in 0..g.n {
        pg.add_node(());
    }
    for &(a, b) in &g.edges {
        pg.add_edge((a as u32).into(), (b as u32).into(), ());
    }
    rustworkx_core::planar::is_planar(&pg)
}
