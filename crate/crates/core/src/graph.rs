//! Simple undirected graphs with stable edge indices, the constrained edge
//! subset `F`, independent edge pairs and the bridges of `(V, F)` in `G`.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

pub type VertexId = usize;
pub type EdgeId = usize;

/// Validation failures for [`build_graph`]. Edge positions refer to the input
/// edge list.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge {edge} is a self-loop at vertex {vertex}")]
    SelfLoop { edge: EdgeId, vertex: VertexId },
    #[error("edge {edge} duplicates edge {first} ({u}, {v})")]
    DuplicateEdge {
        edge: EdgeId,
        first: EdgeId,
        u: VertexId,
        v: VertexId,
    },
    #[error("edge {edge} has endpoint {vertex} outside 0..{vertex_count}")]
    EndpointOutOfRange {
        edge: EdgeId,
        vertex: VertexId,
        vertex_count: usize,
    },
    #[error("{flags} membership flags given for {edges} edges")]
    FlagLengthMismatch { edges: usize, flags: usize },
}

impl GraphError {
    /// Input edge position the error is attached to, if any.
    pub fn edge(&self) -> Option<EdgeId> {
        match *self {
            GraphError::SelfLoop { edge, .. }
            | GraphError::DuplicateEdge { edge, .. }
            | GraphError::EndpointOutOfRange { edge, .. } => Some(edge),
            GraphError::FlagLengthMismatch { .. } => None,
        }
    }
}

/// An undirected edge, stored with `lo < hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub lo: VertexId,
    pub hi: VertexId,
}

impl Edge {
    pub fn new(a: VertexId, b: VertexId) -> Self {
        Edge {
            lo: a.min(b),
            hi: a.max(b),
        }
    }

    #[inline]
    pub fn has(&self, v: VertexId) -> bool {
        self.lo == v || self.hi == v
    }

    #[inline]
    pub fn is_independent_of(&self, other: &Edge) -> bool {
        !self.has(other.lo) && !self.has(other.hi)
    }

    /// The endpoint that is not `v`. `v` must be an endpoint.
    #[inline]
    pub fn other(&self, v: VertexId) -> VertexId {
        if self.lo == v {
            self.hi
        } else {
            self.lo
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.lo, self.hi)
    }
}

/// A simple undirected graph. Edge indices are the positions in the input
/// list and never change after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<Edge>,
    incident: Vec<Vec<EdgeId>>,
}

impl Graph {
    /// Validates and builds a graph from an edge list.
    pub fn new(vertex_count: usize, edge_list: &[(VertexId, VertexId)]) -> Result<Self, GraphError> {
        let mut edges = Vec::with_capacity(edge_list.len());
        let mut incident = vec![Vec::new(); vertex_count];
        let mut seen = std::collections::HashMap::with_capacity(edge_list.len());
        for (idx, &(a, b)) in edge_list.iter().enumerate() {
            for vertex in [a, b] {
                if vertex >= vertex_count {
                    return Err(GraphError::EndpointOutOfRange {
                        edge: idx,
                        vertex,
                        vertex_count,
                    });
                }
            }
            if a == b {
                return Err(GraphError::SelfLoop {
                    edge: idx,
                    vertex: a,
                });
            }
            let edge = Edge::new(a, b);
            if let Some(&first) = seen.get(&edge) {
                return Err(GraphError::DuplicateEdge {
                    edge: idx,
                    first,
                    u: edge.lo,
                    v: edge.hi,
                });
            }
            seen.insert(edge, idx);
            incident[edge.lo].push(idx);
            incident[edge.hi].push(idx);
            edges.push(edge);
        }
        Ok(Graph {
            vertex_count,
            edges,
            incident,
        })
    }

    pub fn complete(n: usize) -> Self {
        let mut list = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for a in 0..n {
            for b in a + 1..n {
                list.push((a, b));
            }
        }
        Graph::new(n, &list).expect("complete graph is simple")
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut list = Vec::with_capacity(a * b);
        for i in 0..a {
            for j in 0..b {
                list.push((i, a + j));
            }
        }
        Graph::new(a + b, &list).expect("complete bipartite graph is simple")
    }

    pub fn cycle(n: usize) -> Self {
        let list: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(n, &list).expect("cycle on at least 3 vertices is simple")
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn edge(&self, e: EdgeId) -> Edge {
        self.edges[e]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Incident edge indices of `v`, ascending.
    pub fn incident(&self, v: VertexId) -> &[EdgeId] {
        &self.incident[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.incident[v].len()
    }

    pub fn find_edge(&self, a: VertexId, b: VertexId) -> Option<EdgeId> {
        if a >= self.vertex_count || b >= self.vertex_count {
            return None;
        }
        let target = Edge::new(a, b);
        self.incident[a]
            .iter()
            .copied()
            .find(|&e| self.edges[e] == target)
    }

    pub fn edge_list(&self) -> Vec<(VertexId, VertexId)> {
        self.edges.iter().map(|e| (e.lo, e.hi)).collect()
    }

    /// Applies a vertex relabeling `v -> perm[v]`, keeping edge indices.
    pub fn relabel(&self, perm: &[VertexId]) -> Graph {
        assert_eq!(perm.len(), self.vertex_count, "relabeling must cover every vertex");
        let list: Vec<_> = self.edges.iter().map(|e| (perm[e.lo], perm[e.hi])).collect();
        Graph::new(self.vertex_count, &list).expect("relabeling by a permutation keeps the graph simple")
    }
}

/// Membership of every edge in the constrained set `F`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EdgeSubset {
    flags: Vec<bool>,
}

impl EdgeSubset {
    pub fn from_flags(flags: Vec<bool>) -> Self {
        EdgeSubset { flags }
    }

    pub fn full(m: usize) -> Self {
        EdgeSubset { flags: vec![true; m] }
    }

    pub fn empty(m: usize) -> Self {
        EdgeSubset {
            flags: vec![false; m],
        }
    }

    pub fn from_indices(m: usize, members: impl IntoIterator<Item = EdgeId>) -> Self {
        let mut flags = vec![false; m];
        for e in members {
            flags[e] = true;
        }
        EdgeSubset { flags }
    }

    #[inline]
    pub fn contains(&self, e: EdgeId) -> bool {
        self.flags[e]
    }

    pub fn len(&self) -> usize {
        self.flags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flags.is_empty()
    }

    pub fn count(&self) -> usize {
        self.flags.iter().filter(|&&b| b).count()
    }

    pub fn flags(&self) -> &[bool] {
        &self.flags
    }

    pub fn members(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.flags
            .iter()
            .enumerate()
            .filter_map(|(e, &b)| b.then_some(e))
    }

    pub fn complement(&self) -> EdgeSubset {
        EdgeSubset {
            flags: self.flags.iter().map(|b| !b).collect(),
        }
    }

    pub fn is_subset_of(&self, other: &EdgeSubset) -> bool {
        self.flags.len() == other.flags.len()
            && self.flags.iter().zip(&other.flags).all(|(&a, &b)| !a || b)
    }
}

/// Validates an instance: the graph plus one `F` flag per edge.
pub fn build_graph(
    vertex_count: usize,
    edge_list: &[(VertexId, VertexId)],
    f_flags: &[bool],
) -> Result<(Graph, EdgeSubset), GraphError> {
    if edge_list.len() != f_flags.len() {
        return Err(GraphError::FlagLengthMismatch {
            edges: edge_list.len(),
            flags: f_flags.len(),
        });
    }
    let graph = Graph::new(vertex_count, edge_list)?;
    Ok((graph, EdgeSubset::from_flags(f_flags.to_vec())))
}

/// All unordered pairs `(a, b)`, `a < b`, of vertex-disjoint edges where at
/// least one of the two is in `restrict_first_to`. Output is sorted.
pub fn independent_pairs(g: &Graph, restrict_first_to: &EdgeSubset) -> Vec<(EdgeId, EdgeId)> {
    assert_eq!(restrict_first_to.len(), g.edge_count());
    let edges = g.edges();
    let mut pairs = Vec::new();
    for (a, ea) in edges.iter().enumerate() {
        let a_in = restrict_first_to.contains(a);
        for (b, eb) in edges.iter().enumerate().skip(a + 1) {
            if (a_in || restrict_first_to.contains(b)) && ea.is_independent_of(eb) {
                pairs.push((a, b));
            }
        }
    }
    pairs
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BridgeKind {
    /// A single edge outside `F` joining two skeleton vertices.
    Trivial,
    /// A connected component of the non-skeleton vertices with its edges.
    Component,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bridge {
    pub kind: BridgeKind,
    /// Sorted; empty for trivial bridges.
    pub internal_vertices: Vec<VertexId>,
    /// Sorted skeleton vertices the bridge touches.
    pub attachment_vertices: Vec<VertexId>,
    /// Sorted edge indices carried by the bridge.
    pub edges: Vec<EdgeId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BridgeDecomposition {
    /// Sorted vertices incident to at least one edge of `F`.
    pub skeleton_vertices: Vec<VertexId>,
    /// Trivial bridges in edge order, then component bridges ordered by
    /// smallest internal vertex.
    pub bridges: Vec<Bridge>,
}

/// Bridges of `S = (V, F)` in `G`, with the skeleton taken to be the vertices
/// incident to `F`.
pub fn bridge_decomposition(g: &Graph, f: &EdgeSubset) -> BridgeDecomposition {
    assert_eq!(f.len(), g.edge_count());
    let n = g.vertex_count();
    let mut on_skeleton = vec![false; n];
    for e in f.members() {
        let edge = g.edge(e);
        on_skeleton[edge.lo] = true;
        on_skeleton[edge.hi] = true;
    }
    let skeleton_vertices: Vec<VertexId> = (0..n).filter(|&v| on_skeleton[v]).collect();

    let mut bridges = Vec::new();
    for (e, edge) in g.edges().iter().enumerate() {
        if !f.contains(e) && on_skeleton[edge.lo] && on_skeleton[edge.hi] {
            bridges.push(Bridge {
                kind: BridgeKind::Trivial,
                internal_vertices: Vec::new(),
                attachment_vertices: vec![edge.lo, edge.hi],
                edges: vec![e],
            });
        }
    }

    let mut visited = vec![false; n];
    let mut queue = VecDeque::new();
    for start in 0..n {
        if on_skeleton[start] || visited[start] || g.degree(start) == 0 {
            continue;
        }
        let mut internal = Vec::new();
        let mut attachments = Vec::new();
        let mut edges = Vec::new();
        visited[start] = true;
        queue.push_back(start);
        while let Some(v) = queue.pop_front() {
            internal.push(v);
            for &e in g.incident(v) {
                edges.push(e);
                let w = g.edge(e).other(v);
                if on_skeleton[w] {
                    attachments.push(w);
                } else if !visited[w] {
                    visited[w] = true;
                    queue.push_back(w);
                }
            }
        }
        internal.sort_unstable();
        attachments.sort_unstable();
        attachments.dedup();
        edges.sort_unstable();
        edges.dedup();
        bridges.push(Bridge {
            kind: BridgeKind::Component,
            internal_vertices: internal,
            attachment_vertices: attachments,
            edges,
        });
    }

    BridgeDecomposition {
        skeleton_vertices,
        bridges,
    }
}

/// Connected components of the subgraph formed by the edges in `subset`,
/// restricted to vertices incident to at least one such edge. Each component
/// is `(sorted vertices, sorted edges)`; components are ordered by smallest
/// vertex.
pub fn subset_components(g: &Graph, subset: &EdgeSubset) -> Vec<(Vec<VertexId>, Vec<EdgeId>)> {
    let n = g.vertex_count();
    let mut visited = vec![false; n];
    let mut components = Vec::new();
    let mut stack = Vec::new();
    for start in 0..n {
        if visited[start] || !g.incident(start).iter().any(|&e| subset.contains(e)) {
            continue;
        }
        let mut vertices = Vec::new();
        let mut edges = Vec::new();
        visited[start] = true;
        stack.push(start);
        while let Some(v) = stack.pop() {
            vertices.push(v);
            for &e in g.incident(v) {
                if !subset.contains(e) {
                    continue;
                }
                edges.push(e);
                let w = g.edge(e).other(v);
                if !visited[w] {
                    visited[w] = true;
                    stack.push(w);
                }
            }
        }
        vertices.sort_unstable();
        edges.sort_unstable();
        edges.dedup();
        components.push((vertices, edges));
    }
    components
}
