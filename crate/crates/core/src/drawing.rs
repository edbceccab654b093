//! The initial drawing: vertices in convex position, edges as straight chords.
//! Only crossing parities of independent edge pairs are ever derived from it.

use thiserror::Error;

use crate::graph::{independent_pairs, Edge, EdgeId, EdgeSubset, Graph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DrawingError {
    #[error("vertex order has {got} entries, expected {expected}")]
    WrongLength { expected: usize, got: usize },
    #[error("vertex order is not a permutation: {vertex} is {reason}")]
    NotPermutation { vertex: VertexId, reason: &'static str },
    #[error("edges {e} and {f} share a vertex")]
    SharedVertex { e: Edge, f: Edge },
}

/// Vertices placed around a circle in `cyclic_order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvexDrawing {
    order: Vec<VertexId>,
    position: Vec<usize>,
}

impl ConvexDrawing {
    pub fn identity(n: usize) -> Self {
        ConvexDrawing {
            order: (0..n).collect(),
            position: (0..n).collect(),
        }
    }

    /// `order[i]` is the vertex at position `i`; must be a permutation of `0..n`.
    pub fn new(n: usize, order: Vec<VertexId>) -> Result<Self, DrawingError> {
        if order.len() != n {
            return Err(DrawingError::WrongLength {
                expected: n,
                got: order.len(),
            });
        }
        let mut position = vec![usize::MAX; n];
        for (pos, &v) in order.iter().enumerate() {
            if v >= n {
                return Err(DrawingError::NotPermutation {
                    vertex: v,
                    reason: "out of range",
                });
            }
            if position[v] != usize::MAX {
                return Err(DrawingError::NotPermutation {
                    vertex: v,
                    reason: "repeated",
                });
            }
            position[v] = pos;
        }
        Ok(ConvexDrawing { order, position })
    }

    pub fn vertex_count(&self) -> usize {
        self.order.len()
    }

    pub fn cyclic_order(&self) -> &[VertexId] {
        &self.order
    }

    #[inline]
    pub fn position(&self, v: VertexId) -> usize {
        self.position[v]
    }

    /// Parity of the crossings between two chords. Callers must guarantee
    /// the edges are vertex-disjoint.
    #[inline]
    pub(crate) fn chords_cross(&self, e: Edge, f: Edge) -> bool {
        let (a, b) = {
            let (pa, pb) = (self.position[e.lo], self.position[e.hi]);
            (pa.min(pb), pa.max(pb))
        };
        let inside = |v: VertexId| {
            let p = self.position[v];
            a < p && p < b
        };
        inside(f.lo) != inside(f.hi)
    }
}

/// Crossing parity of two independent chords: `true` iff their endpoints
/// alternate around the circle.
pub fn convex_parity(d: &ConvexDrawing, e: Edge, f: Edge) -> Result<bool, DrawingError> {
    if !e.is_independent_of(&f) {
        return Err(DrawingError::SharedVertex { e, f });
    }
    Ok(d.chords_cross(e, f))
}

/// Parities for every independent pair with at least one edge in `F`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossingParityTable {
    entries: Vec<((EdgeId, EdgeId), bool)>,
}

impl CrossingParityTable {
    /// Entries sorted by edge-index pair.
    pub fn entries(&self) -> &[((EdgeId, EdgeId), bool)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Parity for the unordered pair, or `None` if the pair is not in the table.
    pub fn get(&self, e: EdgeId, f: EdgeId) -> Option<bool> {
        let key = (e.min(f), e.max(f));
        self.entries
            .binary_search_by_key(&key, |&(k, _)| k)
            .ok()
            .map(|i| self.entries[i].1)
    }

    pub fn odd_count(&self) -> usize {
        self.entries.iter().filter(|(_, p)| *p).count()
    }
}

pub fn parity_table(g: &Graph, f: &EdgeSubset, d: &ConvexDrawing) -> CrossingParityTable {
    assert_eq!(d.vertex_count(), g.vertex_count(), "drawing must place every vertex");
    let entries = independent_pairs(g, f)
        .into_iter()
        .map(|(a, b)| ((a, b), d.chords_cross(g.edge(a), g.edge(b))))
        .collect();
    CrossingParityTable { entries }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadrilateral_diagonals_cross() {
        let d = ConvexDrawing::identity(4);
        assert_eq!(convex_parity(&d, Edge::new(0, 2), Edge::new(1, 3)), Ok(true));
        assert_eq!(convex_parity(&d, Edge::new(0, 1), Edge::new(2, 3)), Ok(false));
    }

    #[test]
    fn pentagon_alternating_chords() {
        let d = ConvexDrawing::identity(5);
        assert_eq!(convex_parity(&d, Edge::new(0, 3), Edge::new(1, 4)), Ok(true));
    }

    #[test]
    fn adjacent_edges_are_rejected() {
        let d = ConvexDrawing::identity(4);
        assert!(matches!(
            convex_parity(&d, Edge::new(0, 1), Edge::new(1, 2)),
            Err(DrawingError::SharedVertex { .. })
        ));
    }

    #[test]
    fn order_must_be_a_permutation() {
        assert!(ConvexDrawing::new(3, vec![0, 1, 1]).is_err());
        assert!(ConvexDrawing::new(3, vec![0, 1]).is_err());
        assert!(ConvexDrawing::new(3, vec![0, 1, 3]).is_err());
        assert!(ConvexDrawing::new(3, vec![2, 0, 1]).is_ok());
    }

    #[test]
    fn k5_table() {
        let g = Graph::complete(5);
        let t = parity_table(&g, &EdgeSubset::full(10), &ConvexDrawing::identity(5));
        assert_eq!(t.len(), 15);
        let e02 = g.find_edge(0, 2).unwrap();
        let e13 = g.find_edge(1, 3).unwrap();
        assert_eq!(t.get(e02, e13), Some(true));
        assert_eq!(t.get(e13, e02), Some(true));
        // the convex K5 has exactly C(5,4) = 5 crossings
        assert_eq!(t.odd_count(), 5);
    }

    #[test]
    fn c4_table_is_even() {
        let g = Graph::cycle(4);
        let t = parity_table(&g, &EdgeSubset::full(4), &ConvexDrawing::identity(4));
        assert_eq!(t.len(), 2);
        assert_eq!(t.odd_count(), 0);
        assert!(parity_table(&g, &EdgeSubset::empty(4), &ConvexDrawing::identity(4)).is_empty());
    }
}
