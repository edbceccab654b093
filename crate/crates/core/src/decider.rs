//! The partial planarity decision procedure.
//!
//! For a drawing `D` and every independent pair `uv`, `st` with `uv ∈ F`, the
//! parity of crossings after a set of `(e, v)`-moves is
//!
//! ```text
//! i_D(uv, st) + x[uv, s] + x[uv, t] + x[st, u] + x[st, v]   (mod 2)
//! ```
//!
//! `G` can be drawn with `F` crossing-free iff some choice of moves makes all
//! of these even. The moves are the unknowns of a GF(2) system; a solution
//! doubles as a certificate.

use std::collections::BTreeSet;
use std::fmt;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::drawing::{parity_table, ConvexDrawing, DrawingError};
use crate::gf2::{eliminate, Gf2System};
use crate::graph::{EdgeId, EdgeSubset, Graph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecideError {
    #[error("subset has {flags} flags for {edges} edges")]
    SubsetMismatch { edges: usize, flags: usize },
    #[error(transparent)]
    Drawing(#[from] DrawingError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error("move ({edge}, {vertex}) names an edge that does not exist")]
    UnknownEdge { edge: EdgeId, vertex: VertexId },
    #[error("move ({edge}, {vertex}) names a vertex that does not exist")]
    UnknownVertex { edge: EdgeId, vertex: VertexId },
    #[error("move ({edge}, {vertex}) pushes an edge over its own endpoint")]
    OwnEndpoint { edge: EdgeId, vertex: VertexId },
}

/// Numbering of the move variables `x[e, v]` for `v` not an endpoint of `e`,
/// ordered by `(e, v)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MoveVariableIndex {
    vertex_count: usize,
    edge_count: usize,
}

impl MoveVariableIndex {
    pub fn new(g: &Graph) -> Self {
        MoveVariableIndex {
            vertex_count: g.vertex_count(),
            edge_count: g.edge_count(),
        }
    }

    pub fn len(&self) -> usize {
        self.edge_count * self.vertex_count.saturating_sub(2)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `None` when `v` is an endpoint of `e` or either is out of range.
    pub fn index(&self, g: &Graph, e: EdgeId, v: VertexId) -> Option<usize> {
        if e >= self.edge_count || v >= self.vertex_count {
            return None;
        }
        let edge = g.edge(e);
        if edge.has(v) {
            return None;
        }
        let skipped = usize::from(edge.lo < v) + usize::from(edge.hi < v);
        Some(e * (self.vertex_count - 2) + v - skipped)
    }

    pub fn pair(&self, g: &Graph, index: usize) -> (EdgeId, VertexId) {
        assert!(index < self.len(), "move variable {index} out of range");
        let per_edge = self.vertex_count - 2;
        let e = index / per_edge;
        let mut v = index % per_edge;
        let edge = g.edge(e);
        // shift past the two endpoints, in increasing order
        if v >= edge.lo {
            v += 1;
        }
        if v >= edge.hi {
            v += 1;
        }
        (e, v)
    }
}

/// Performed `(e, v)`-moves.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MoveSet {
    moves: BTreeSet<(EdgeId, VertexId)>,
}

impl MoveSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, e: EdgeId, v: VertexId) -> bool {
        self.moves.insert((e, v))
    }

    pub fn contains(&self, e: EdgeId, v: VertexId) -> bool {
        self.moves.contains(&(e, v))
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (EdgeId, VertexId)> + '_ {
        self.moves.iter().copied()
    }
}

impl FromIterator<(EdgeId, VertexId)> for MoveSet {
    fn from_iter<I: IntoIterator<Item = (EdgeId, VertexId)>>(iter: I) -> Self {
        MoveSet {
            moves: iter.into_iter().collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Answer {
    Yes,
    No,
}

impl Answer {
    pub fn is_yes(self) -> bool {
        self == Answer::Yes
    }
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Answer::Yes => "YES",
            Answer::No => "NO",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecisionStats {
    pub num_equations: usize,
    /// Variables occurring in at least one equation.
    pub num_variables_used: usize,
    /// Size of the move variable index, `m * (n - 2)`.
    pub num_variables_nominal: usize,
    pub rank: usize,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decision {
    pub answer: Answer,
    /// Present iff the answer is YES; relative to `drawing`.
    pub certificate: Option<MoveSet>,
    pub drawing: ConvexDrawing,
    pub stats: DecisionStats,
}

/// Builds the move system for `(G, F)` over the convex drawing `d`, one row
/// per independent pair in sorted pair order.
pub fn build_system(g: &Graph, f: &EdgeSubset, d: &ConvexDrawing) -> Gf2System {
    let index = MoveVariableIndex::new(g);
    let table = parity_table(g, f, d);
    let mut sys = Gf2System::new(index.len());
    for &((a, b), odd) in table.entries() {
        let (ea, eb) = (g.edge(a), g.edge(b));
        let var = |e, v| index.index(g, e, v).expect("independent edges give valid move variables");
        let support = [var(a, eb.lo), var(a, eb.hi), var(b, ea.lo), var(b, ea.hi)];
        sys.push_row(support, odd).expect("indices come from the move index");
    }
    sys
}

/// Decides whether `G` has a drawing with every edge of `F` crossing-free.
/// `order` fixes the convex starting drawing (identity if `None`).
pub fn decide(g: &Graph, f: &EdgeSubset, order: Option<&ConvexDrawing>) -> Result<Decision, DecideError> {
    if f.len() != g.edge_count() {
        return Err(DecideError::SubsetMismatch {
            edges: g.edge_count(),
            flags: f.len(),
        });
    }
    let drawing = match order {
        Some(d) if d.vertex_count() != g.vertex_count() => {
            return Err(DrawingError::WrongLength {
                expected: g.vertex_count(),
                got: d.vertex_count(),
            }
            .into())
        }
        Some(d) => d.clone(),
        None => ConvexDrawing::identity(g.vertex_count()),
    };

    let start = Instant::now();
    let sys = build_system(g, f, &drawing);
    let result = eliminate(&sys);
    let index = MoveVariableIndex::new(g);
    let certificate = result.solution.as_ref().map(|x| {
        x.iter()
            .enumerate()
            .filter(|(_, &bit)| bit)
            .map(|(i, _)| index.pair(g, i))
            .collect::<MoveSet>()
    });
    let stats = DecisionStats {
        num_equations: sys.num_rows(),
        num_variables_used: sys.occurring_variables().len(),
        num_variables_nominal: index.len(),
        rank: result.rank,
        elapsed: start.elapsed(),
    };
    Ok(Decision {
        answer: if result.consistent { Answer::Yes } else { Answer::No },
        certificate,
        drawing,
        stats,
    })
}

/// Checks that after performing `moves` on `d`, every edge of `F` crosses
/// every edge independent of it an even number of times.
pub fn verify_certificate(
    g: &Graph,
    f: &EdgeSubset,
    d: &ConvexDrawing,
    moves: &MoveSet,
) -> Result<bool, CertificateError> {
    for (edge, vertex) in moves.iter() {
        if edge >= g.edge_count() {
            return Err(CertificateError::UnknownEdge { edge, vertex });
        }
        if vertex >= g.vertex_count() {
            return Err(CertificateError::UnknownVertex { edge, vertex });
        }
        if g.edge(edge).has(vertex) {
            return Err(CertificateError::OwnEndpoint { edge, vertex });
        }
    }
    let hit = |e: EdgeId, v: VertexId| u8::from(moves.contains(e, v));
    let table = parity_table(g, f, d);
    Ok(table.entries().iter().all(|&((a, b), odd)| {
        let (ea, eb) = (g.edge(a), g.edge(b));
        let sum = u8::from(odd) + hit(a, eb.lo) + hit(a, eb.hi) + hit(b, ea.lo) + hit(b, ea.hi);
        sum % 2 == 0
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;

    fn k5_minus(removed: &[(usize, usize)]) -> (Graph, EdgeSubset) {
        let g = Graph::complete(5);
        let out: Vec<_> = removed.iter().map(|&(a, b)| g.find_edge(a, b).unwrap()).collect();
        let f = EdgeSubset::from_indices(10, (0..10).filter(|e| !out.contains(e)));
        (g, f)
    }

    #[test]
    fn move_index_is_a_bijection() {
        let g = Graph::complete(6);
        let idx = MoveVariableIndex::new(&g);
        assert_eq!(idx.len(), 15 * 4);
        let mut count = 0;
        for e in 0..g.edge_count() {
            for v in 0..6 {
                match idx.index(&g, e, v) {
                    Some(i) => {
                        assert_eq!(i, count, "lexicographic by (e, v)");
                        assert_eq!(idx.pair(&g, i), (e, v));
                        count += 1;
                    }
                    None => assert!(g.edge(e).has(v)),
                }
            }
        }
        assert_eq!(count, idx.len());
    }

    #[test]
    fn k5_system_shape() {
        let g = Graph::complete(5);
        let sys = build_system(&g, &EdgeSubset::full(10), &ConvexDrawing::identity(5));
        assert_eq!(sys.num_rows(), 15);
        assert_eq!(sys.num_variables(), 30);
        assert_eq!(sys.occurring_variables().len(), 30);
        assert!(sys.rows().iter().all(|r| r.support().len() == 4));
    }

    #[test]
    fn c4_system_is_even() {
        let g = Graph::cycle(4);
        let sys = build_system(&g, &EdgeSubset::full(4), &ConvexDrawing::identity(4));
        assert_eq!(sys.num_rows(), 2);
        assert!(sys.rows().iter().all(|r| !r.rhs()));
        assert_eq!(build_system(&g, &EdgeSubset::empty(4), &ConvexDrawing::identity(4)).num_rows(), 0);
    }

    #[test]
    fn k5_answers() {
        let (g, f) = k5_minus(&[]);
        assert_eq!(decide(&g, &f, None).unwrap().answer, Answer::No);

        let (g, f) = k5_minus(&[(0, 2), (1, 3)]);
        let d = decide(&g, &f, None).unwrap();
        assert_eq!(d.answer, Answer::Yes);
        assert_eq!(verify_certificate(&g, &f, &d.drawing, d.certificate.as_ref().unwrap()), Ok(true));

        let (g, f) = k5_minus(&[(0, 1)]);
        assert_eq!(decide(&g, &f, None).unwrap().answer, Answer::No);
    }

    #[test]
    fn c4_certificate_is_empty() {
        let g = Graph::cycle(4);
        let f = EdgeSubset::full(4);
        let d = decide(&g, &f, None).unwrap();
        assert_eq!(d.answer, Answer::Yes);
        assert!(d.certificate.unwrap().is_empty());
        assert_eq!(
            verify_certificate(&g, &f, &ConvexDrawing::identity(4), &MoveSet::new()),
            Ok(true)
        );
    }

    #[test]
    fn convex_k5_fails_with_no_moves() {
        let g = Graph::complete(5);
        assert_eq!(
            verify_certificate(&g, &EdgeSubset::full(10), &ConvexDrawing::identity(5), &MoveSet::new()),
            Ok(false)
        );
    }

    #[test]
    fn malformed_moves_are_rejected() {
        let g = Graph::cycle(4);
        let f = EdgeSubset::full(4);
        let d = ConvexDrawing::identity(4);
        let own: MoveSet = [(0, 1)].into_iter().collect();
        assert!(matches!(
            verify_certificate(&g, &f, &d, &own),
            Err(CertificateError::OwnEndpoint { .. })
        ));
        let far: MoveSet = [(9, 1)].into_iter().collect();
        assert!(matches!(
            verify_certificate(&g, &f, &d, &far),
            Err(CertificateError::UnknownEdge { .. })
        ));
        let ghost: MoveSet = [(0, 7)].into_iter().collect();
        assert!(matches!(
            verify_certificate(&g, &f, &d, &ghost),
            Err(CertificateError::UnknownVertex { .. })
        ));
    }

    #[test]
    fn empty_subset_is_yes_with_no_moves() {
        let g = Graph::complete(6);
        let d = decide(&g, &EdgeSubset::empty(15), None).unwrap();
        assert_eq!(d.answer, Answer::Yes);
        assert!(d.certificate.unwrap().is_empty());
        assert_eq!(d.stats.num_equations, 0);
    }

    #[test]
    fn k33_is_no() {
        let g = Graph::complete_bipartite(3, 3);
        assert_eq!(decide(&g, &EdgeSubset::full(9), None).unwrap().answer, Answer::No);
    }

    #[test]
    fn rejects_mismatched_inputs() {
        let (g, _) = build_graph(3, &[(0, 1)], &[true]).unwrap();
        assert!(matches!(
            decide(&g, &EdgeSubset::full(2), None),
            Err(DecideError::SubsetMismatch { .. })
        ));
        let d = ConvexDrawing::identity(4);
        assert!(matches!(decide(&g, &EdgeSubset::full(1), Some(&d)), Err(DecideError::Drawing(_))));
    }
}
