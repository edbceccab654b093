//! The framed arrangement graph: pseudoline chords inside a frame cycle, an
//! apex joined to the frame, the dual graph of the cells, and a K6 glued onto
//! every frame edge. Every edge except the pseudoline chords is constrained.

use crate::graph::{build_graph, EdgeId, EdgeSubset, Graph, VertexId};

use super::wiring::{cells, ArcSide, BoundaryEntity, CellComplex, Side, WiringDiagram, WiringViolation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VertexRole {
    /// Where a pseudoline meets the region boundary.
    PseudolineEnd { line: usize, side: Side },
    /// Representative of a cell touching the boundary, placed on its arc.
    Boundary { cell: usize },
    /// Representative of a bounded cell.
    Inner { cell: usize },
    Apex,
    Gadget { frame_edge: EdgeId },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeRole {
    Pseudoline { line: usize },
    FrameCycle,
    Spoke,
    /// Crosses the segment of `line` between two adjacent cells.
    Dual { line: usize },
    Gadget { frame_edge: EdgeId },
}

#[derive(Debug, Clone)]
pub struct ArrangementInstance {
    pub graph: Graph,
    pub f: EdgeSubset,
    pub vertex_roles: Vec<VertexRole>,
    pub edge_roles: Vec<EdgeRole>,
    pub complex: CellComplex,
}

impl ArrangementInstance {
    pub fn frame_edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.edge_roles
            .iter()
            .enumerate()
            .filter(|(_, r)| matches!(r, EdgeRole::FrameCycle | EdgeRole::Spoke))
            .map(|(e, _)| e)
    }

    pub fn count_vertices(&self, pred: impl Fn(&VertexRole) -> bool) -> usize {
        self.vertex_roles.iter().filter(|r| pred(r)).count()
    }

    pub fn count_edges(&self, pred: impl Fn(&EdgeRole) -> bool) -> usize {
        self.edge_roles.iter().filter(|r| pred(r)).count()
    }
}

pub fn build_arrangement_instance(w: &WiringDiagram) -> Result<ArrangementInstance, Vec<WiringViolation>> {
    let complex = cells(w)?;
    let k = complex.k;
    let mut vertex_roles = Vec::new();
    let mut representative = vec![usize::MAX; complex.cells.len()];
    let mut line_ends = vec![[usize::MAX; 2]; k];

    // frame vertices in boundary order; the top cell keeps only its left arc
    let mut frame = Vec::new();
    for entity in &complex.boundary_order {
        let role = match *entity {
            BoundaryEntity::Endpoint { line, side } => {
                line_ends[line][side as usize] = vertex_roles.len();
                VertexRole::PseudolineEnd { line, side }
            }
            BoundaryEntity::Arc { cell, side } => {
                if complex.cells[cell].boundary_arc_count == 2 && side != ArcSide::Left {
                    continue;
                }
                representative[cell] = vertex_roles.len();
                VertexRole::Boundary { cell }
            }
        };
        frame.push(vertex_roles.len());
        vertex_roles.push(role);
    }
    for cell in complex.cells.iter().filter(|c| c.bounded) {
        representative[cell.id] = vertex_roles.len();
        vertex_roles.push(VertexRole::Inner { cell: cell.id });
    }
    let apex = vertex_roles.len();
    vertex_roles.push(VertexRole::Apex);

    let mut edges: Vec<(VertexId, VertexId)> = Vec::new();
    let mut edge_roles = Vec::new();
    for (line, ends) in line_ends.iter().enumerate() {
        edges.push((ends[0], ends[1]));
        edge_roles.push(EdgeRole::Pseudoline { line });
    }
    for i in 0..frame.len() {
        edges.push((frame[i], frame[(i + 1) % frame.len()]));
        edge_roles.push(EdgeRole::FrameCycle);
    }
    for &v in &frame {
        edges.push((apex, v));
        edge_roles.push(EdgeRole::Spoke);
    }
    for adj in &complex.segment_adjacencies {
        edges.push((representative[adj.below], representative[adj.above]));
        edge_roles.push(EdgeRole::Dual { line: adj.line });
    }

    let frame_edges: Vec<EdgeId> = edge_roles
        .iter()
        .enumerate()
        .filter(|(_, r)| matches!(r, EdgeRole::FrameCycle | EdgeRole::Spoke))
        .map(|(e, _)| e)
        .collect();
    for frame_edge in frame_edges {
        let (a, b) = edges[frame_edge];
        let fresh: Vec<VertexId> = (0..4).map(|i| vertex_roles.len() + i).collect();
        vertex_roles.extend(std::iter::repeat_n(VertexRole::Gadget { frame_edge }, 4));
        // complete {a, b} + fresh to a K6; the frame edge itself is shared
        let mut gadget = Vec::with_capacity(14);
        for &g in &fresh {
            gadget.push((a, g));
            gadget.push((b, g));
        }
        for i in 0..4 {
            for j in i + 1..4 {
                gadget.push((fresh[i], fresh[j]));
            }
        }
        edge_roles.extend(std::iter::repeat_n(EdgeRole::Gadget { frame_edge }, gadget.len()));
        edges.extend(gadget);
    }

    let flags: Vec<bool> = edge_roles
        .iter()
        .map(|r| !matches!(r, EdgeRole::Pseudoline { .. }))
        .collect();
    let (graph, f) = build_graph(vertex_roles.len(), &edges, &flags)
        .expect("arrangement construction yields a simple graph");
    Ok(ArrangementInstance {
        graph,
        f,
        vertex_roles,
        edge_roles,
        complex,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_frame(r: &EdgeRole) -> bool {
        matches!(r, EdgeRole::FrameCycle | EdgeRole::Spoke)
    }

    #[test]
    fn one_line_instance() {
        let inst = build_arrangement_instance(&WiringDiagram::new(1, vec![])).unwrap();
        let count = |p: fn(&VertexRole) -> bool| inst.count_vertices(p);
        assert_eq!(count(|r| matches!(r, VertexRole::PseudolineEnd { .. })), 2);
        assert_eq!(count(|r| matches!(r, VertexRole::Boundary { .. })), 2);
        assert_eq!(count(|r| matches!(r, VertexRole::Inner { .. })), 0);
        assert_eq!(count(|r| matches!(r, VertexRole::Apex)), 1);
        assert_eq!(inst.count_edges(|r| matches!(r, EdgeRole::FrameCycle)), 4);
        assert_eq!(inst.count_edges(|r| matches!(r, EdgeRole::Pseudoline { .. })), 1);
        assert_eq!(inst.count_edges(|r| matches!(r, EdgeRole::Dual { .. })), 1);
    }

    #[test]
    fn three_line_census() {
        let inst = build_arrangement_instance(&WiringDiagram::new(3, vec![0, 1, 0])).unwrap();
        let core = inst.count_vertices(|r| !matches!(r, VertexRole::Gadget { .. }));
        assert_eq!(core, 14);
        assert_eq!(inst.count_edges(is_frame), 24);
        assert_eq!(inst.count_vertices(|r| matches!(r, VertexRole::Gadget { .. })), 96);
        assert_eq!(inst.count_edges(|r| matches!(r, EdgeRole::Pseudoline { .. })), 3);
        assert_eq!(inst.count_edges(|r| matches!(r, EdgeRole::Dual { .. })), 9);
        assert_eq!(inst.count_edges(|r| matches!(r, EdgeRole::Gadget { .. })), 24 * 14);
    }

    #[test]
    fn constrained_edges_are_everything_but_pseudolines() {
        for k in 1..=4 {
            let w = WiringDiagram::enumerate_all(k).remove(0);
            let inst = build_arrangement_instance(&w).unwrap();
            assert_eq!(inst.f.count(), inst.graph.edge_count() - k);
            for (e, role) in inst.edge_roles.iter().enumerate() {
                assert_eq!(inst.f.contains(e), !matches!(role, EdgeRole::Pseudoline { .. }));
            }
        }
    }

    #[test]
    fn gadgets_complete_their_frame_edge_to_k6() {
        let inst = build_arrangement_instance(&WiringDiagram::new(2, vec![0])).unwrap();
        let g = &inst.graph;
        for frame_edge in inst.frame_edges() {
            let edge = g.edge(frame_edge);
            let mut members = vec![edge.lo, edge.hi];
            members.extend(
                inst.vertex_roles
                    .iter()
                    .enumerate()
                    .filter(|(_, r)| **r == VertexRole::Gadget { frame_edge })
                    .map(|(v, _)| v),
            );
            assert_eq!(members.len(), 6);
            for i in 0..6 {
                for j in i + 1..6 {
                    assert!(g.find_edge(members[i], members[j]).is_some());
                }
            }
            // gadget-private vertices touch nothing outside the gadget
            for &v in &members[2..] {
                assert_eq!(g.degree(v), 5);
            }
        }
    }

    #[test]
    fn rejects_invalid_diagram() {
        assert!(build_arrangement_instance(&WiringDiagram::new(2, vec![0, 0])).is_err());
    }
}
