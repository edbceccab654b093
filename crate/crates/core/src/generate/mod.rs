//! Seeded instance generators.

pub mod arrangement;
pub mod wiring;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{build_graph, EdgeSubset, Graph, VertexId};

pub use arrangement::{build_arrangement_instance, ArrangementInstance, EdgeRole, VertexRole};
pub use wiring::{cells, CellComplex, WiringDiagram, WiringViolation};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum K5Variant {
    /// Every edge constrained.
    Full,
    /// All but the edge `{0, 1}`.
    MinusOneEdge,
    /// All but the disjoint edges `{0, 1}` and `{2, 3}`.
    MinusTwoDisjoint,
    /// Only the star at vertex 0.
    SpanningStar,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kuratowski {
    K5,
    K33,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeneratorKind {
    /// `m` distinct random edges on `n` vertices, `f` of them constrained.
    Random { n: usize, m: usize, f: usize },
    K5Family(K5Variant),
    Kuratowski(Kuratowski),
    /// A random connected graph with `n - 1 + extra` edges; the constrained
    /// edges form a uniformly random spanning tree of it.
    SpanningTree { n: usize, extra: usize },
    Arrangement(WiringDiagram),
}

impl GeneratorKind {
    pub fn name(&self) -> &'static str {
        match self {
            GeneratorKind::Random { .. } => "random",
            GeneratorKind::K5Family(_) => "k5",
            GeneratorKind::Kuratowski(_) => "kuratowski",
            GeneratorKind::SpanningTree { .. } => "spanning-tree",
            GeneratorKind::Arrangement(_) => "arrangement",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error("infeasible parameters: {0}")]
    Infeasible(String),
    #[error("invalid wiring diagram: {0:?}")]
    Wiring(Vec<WiringViolation>),
}

pub fn generate(kind: &GeneratorKind, seed: u64) -> Result<(Graph, EdgeSubset), GenerateError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match *kind {
        GeneratorKind::Random { n, m, f } => random_instance(n, m, f, &mut rng),
        GeneratorKind::K5Family(variant) => Ok(k5_family(variant)),
        GeneratorKind::Kuratowski(which) => {
            let g = match which {
                Kuratowski::K5 => Graph::complete(5),
                Kuratowski::K33 => Graph::complete_bipartite(3, 3),
            };
            let m = g.edge_count();
            Ok((g, EdgeSubset::full(m)))
        }
        GeneratorKind::SpanningTree { n, extra } => spanning_tree_instance(n, extra, &mut rng),
        GeneratorKind::Arrangement(ref w) => {
            let inst = build_arrangement_instance(w).map_err(GenerateError::Wiring)?;
            Ok((inst.graph, inst.f))
        }
    }
}

pub fn k5_family(variant: K5Variant) -> (Graph, EdgeSubset) {
    let g = Graph::complete(5);
    let e01 = g.find_edge(0, 1).unwrap();
    let e23 = g.find_edge(2, 3).unwrap();
    let f = match variant {
        K5Variant::Full => EdgeSubset::full(10),
        K5Variant::MinusOneEdge => EdgeSubset::from_indices(10, (0..10).filter(|&e| e != e01)),
        K5Variant::MinusTwoDisjoint => EdgeSubset::from_indices(10, (0..10).filter(|&e| e != e01 && e != e23)),
        K5Variant::SpanningStar => EdgeSubset::from_indices(10, g.incident(0).to_vec()),
    };
    (g, f)
}

fn all_pairs(n: usize) -> Vec<(VertexId, VertexId)> {
    (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect()
}

pub fn random_instance<R: Rng + ?Sized>(
    n: usize,
    m: usize,
    f: usize,
    rng: &mut R,
) -> Result<(Graph, EdgeSubset), GenerateError> {
    let max = n * n.saturating_sub(1) / 2;
    if m > max {
        return Err(GenerateError::Infeasible(format!("{m} edges exceed C({n},2) = {max}")));
    }
    if f > m {
        return Err(GenerateError::Infeasible(format!("{f} constrained edges exceed {m} edges")));
    }
    let mut pairs = all_pairs(n);
    let (chosen, _) = pairs.partial_shuffle(rng, m);
    let mut edges = chosen.to_vec();
    edges.sort_unstable();
    let mut flags = vec![false; m];
    for i in rand::seq::index::sample(rng, m, f) {
        flags[i] = true;
    }
    Ok(build_graph(n, &edges, &flags).expect("distinct pairs form a simple graph"))
}

/// A random subset where each edge is constrained with probability 1/2.
pub fn random_subset<R: Rng + ?Sized>(m: usize, rng: &mut R) -> EdgeSubset {
    EdgeSubset::from_flags((0..m).map(|_| rng.gen_bool(0.5)).collect())
}

pub fn spanning_tree_instance<R: Rng + ?Sized>(
    n: usize,
    extra: usize,
    rng: &mut R,
) -> Result<(Graph, EdgeSubset), GenerateError> {
    if n == 0 {
        return Err(GenerateError::Infeasible("a spanning tree needs at least one vertex".into()));
    }
    let max = n * (n - 1) / 2;
    if n - 1 + extra > max {
        return Err(GenerateError::Infeasible(format!(
            "{} edges exceed C({n},2) = {max}",
            n - 1 + extra
        )));
    }
    // random tree: each vertex in a shuffled order hangs off an earlier one
    let mut perm: Vec<VertexId> = (0..n).collect();
    perm.shuffle(rng);
    let mut present = std::collections::HashSet::new();
    let mut edges = Vec::with_capacity(n - 1 + extra);
    for i in 1..n {
        let parent = perm[rng.gen_range(0..i)];
        let e = (parent.min(perm[i]), parent.max(perm[i]));
        present.insert(e);
        edges.push(e);
    }
    let mut rest: Vec<_> = all_pairs(n).into_iter().filter(|p| !present.contains(p)).collect();
    let (more, _) = rest.partial_shuffle(rng, extra);
    edges.extend_from_slice(more);
    edges.sort_unstable();
    let g = Graph::new(n, &edges).expect("distinct pairs form a simple graph");
    let tree = uniform_spanning_tree(&g, rng);
    let m = g.edge_count();
    Ok((g, EdgeSubset::from_indices(m, tree)))
}

/// Wilson's algorithm: loop-erased random walks give a uniformly random
/// spanning tree of a connected graph. Returns its edge indices.
pub fn uniform_spanning_tree<R: Rng + ?Sized>(g: &Graph, rng: &mut R) -> Vec<usize> {
    let n = g.vertex_count();
    if n == 0 {
        return Vec::new();
    }
    let mut in_tree = vec![false; n];
    let mut next_edge = vec![usize::MAX; n];
    in_tree[rng.gen_range(0..n)] = true;
    for start in 0..n {
        let mut v = start;
        while !in_tree[v] {
            let inc = g.incident(v);
            assert!(!inc.is_empty(), "graph must be connected");
            let e = inc[rng.gen_range(0..inc.len())];
            next_edge[v] = e;
            v = g.edge(e).other(v);
        }
        let mut v = start;
        while !in_tree[v] {
            in_tree[v] = true;
            v = g.edge(next_edge[v]).other(v);
        }
    }
    let mut tree: Vec<usize> = (0..n).filter(|&v| next_edge[v] != usize::MAX).map(|v| next_edge[v]).collect();
    tree.sort_unstable();
    tree
}
