//! Exhaustive ground truth for small instances.
//!
//! `G` can be drawn with `F` crossing-free iff `S = (V, F)` has an embedding
//! on the sphere in which the attachment vertices of every bridge lie on a
//! common face. Edges outside `F` may cross each other freely, so a bridge
//! only needs one face that sees all of its attachments.
//!
//! A disconnected `S` is embedded by nesting: component 0 is the root, and
//! every other component sits inside a face of another one, merging its own
//! chosen outer face into that region.

pub mod rotation;

use thiserror::Error;

use crate::decider::Answer;
use crate::graph::{bridge_decomposition, subset_components, EdgeId, EdgeSubset, Graph, VertexId};

pub use rotation::{
    enumerate_planar_rotations, enumerate_planar_rotations_with, face_trace, Dart, Face, FaceSet, RotationLimits,
    RotationSystem,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error(
        "instance too large for exhaustive search: {skeleton_vertices} skeleton vertices, \
         {constrained_edges} constrained edges (limits {max_skeleton_vertices}, {max_constrained_edges})"
    )]
    SizeGuard {
        skeleton_vertices: usize,
        constrained_edges: usize,
        max_skeleton_vertices: usize,
        max_constrained_edges: usize,
    },
    #[error("component too large: {vertices} vertices, {edges} edges, {candidates} candidate rotations")]
    ComponentTooLarge {
        vertices: usize,
        edges: usize,
        candidates: u64,
    },
    #[error("rotation search needs a connected graph")]
    Disconnected,
    #[error("subset has {flags} flags for {edges} edges")]
    SubsetMismatch { edges: usize, flags: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleLimits {
    pub max_skeleton_vertices: usize,
    pub max_constrained_edges: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            max_skeleton_vertices: 8,
            max_constrained_edges: 12,
        }
    }
}

/// Why a NO was returned.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rejection {
    /// A component of `S` has more than `3v - 6` edges.
    EulerBound { component: usize },
    /// A component of `S` has no planar rotation system.
    NonplanarComponent { component: usize },
    /// `S` is planar but no embedding lets every bridge see its attachments.
    NoCompatibleEmbedding,
}

/// A face of a component, used as a host region.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Slot {
    pub component: usize,
    pub face: usize,
}

/// How the components of `S` nest on the sphere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Placement {
    pub root: usize,
    /// Host slot of each component; `None` only for the root.
    pub parent: Vec<Option<Slot>>,
    /// Face of each component merged into its host region; `None` only for
    /// the root.
    pub outer_face: Vec<Option<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentEmbedding {
    /// Sorted vertices of the component.
    pub vertices: Vec<VertexId>,
    /// Sorted indices (in `G`) of its edges.
    pub edges: Vec<EdgeId>,
    /// Cyclic order of incident edges (indices in `G`), per vertex of
    /// `vertices`.
    pub rotation: Vec<Vec<EdgeId>>,
    /// Sorted vertex set of every face, in face-trace order.
    pub faces: Vec<Vec<VertexId>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub components: Vec<ComponentEmbedding>,
    pub placement: Placement,
    /// Region chosen for each bridge, in bridge decomposition order; `None`
    /// for bridges with at most one attachment vertex.
    pub bridge_slots: Vec<Option<Slot>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleOutcome {
    pub answer: Answer,
    pub witness: Option<Witness>,
    pub rejection: Option<Rejection>,
}

impl OracleOutcome {
    fn no(rejection: Rejection) -> Self {
        OracleOutcome {
            answer: Answer::No,
            witness: None,
            rejection: Some(rejection),
        }
    }
}

/// Component subgraph with local vertex and edge numbering.
struct LocalComponent {
    vertices: Vec<VertexId>,
    edges: Vec<EdgeId>,
    graph: Graph,
}

impl LocalComponent {
    fn new(g: &Graph, vertices: Vec<VertexId>, edges: Vec<EdgeId>) -> Self {
        let local = |v: VertexId| vertices.binary_search(&v).expect("edge endpoint inside its component");
        let list: Vec<_> = edges
            .iter()
            .map(|&e| {
                let edge = g.edge(e);
                (local(edge.lo), local(edge.hi))
            })
            .collect();
        let graph = Graph::new(vertices.len(), &list).expect("subgraph of a simple graph");
        LocalComponent { vertices, edges, graph }
    }
}

/// One planar embedding of a component, faces as bit masks over skeleton
/// positions.
struct Embedding {
    rotation: RotationSystem,
    faces: FaceSet,
    masks: Vec<u64>,
}

pub fn oracle_decide(g: &Graph, f: &EdgeSubset) -> Result<OracleOutcome, OracleError> {
    oracle_decide_with_limits(g, f, OracleLimits::default())
}

pub fn oracle_decide_with_limits(
    g: &Graph,
    f: &EdgeSubset,
    limits: OracleLimits,
) -> Result<OracleOutcome, OracleError> {
    if f.len() != g.edge_count() {
        return Err(OracleError::SubsetMismatch {
            edges: g.edge_count(),
            flags: f.len(),
        });
    }
    let components = subset_components(g, f);
    if components.is_empty() {
        return Ok(OracleOutcome {
            answer: Answer::Yes,
            witness: Some(Witness {
                components: Vec::new(),
                placement: Placement {
                    root: 0,
                    parent: Vec::new(),
                    outer_face: Vec::new(),
                },
                bridge_slots: vec![None; bridge_decomposition(g, f).bridges.len()],
            }),
            rejection: None,
        });
    }

    // exact necessary condition, cheap enough to run before the size guard
    for (i, (vs, es)) in components.iter().enumerate() {
        if vs.len() >= 3 && es.len() > 3 * vs.len() - 6 {
            return Ok(OracleOutcome::no(Rejection::EulerBound { component: i }));
        }
    }

    let decomposition = bridge_decomposition(g, f);
    let skeleton = &decomposition.skeleton_vertices;
    let constrained = f.count();
    if skeleton.len() > limits.max_skeleton_vertices.min(64) || constrained > limits.max_constrained_edges {
        return Err(OracleError::SizeGuard {
            skeleton_vertices: skeleton.len(),
            constrained_edges: constrained,
            max_skeleton_vertices: limits.max_skeleton_vertices,
            max_constrained_edges: limits.max_constrained_edges,
        });
    }
    let bit = |v: VertexId| 1u64 << skeleton.binary_search(&v).expect("attachments lie on the skeleton");

    let locals: Vec<LocalComponent> = components
        .into_iter()
        .map(|(vs, es)| LocalComponent::new(g, vs, es))
        .collect();
    let rotation_limits = RotationLimits {
        max_vertices: limits.max_skeleton_vertices,
        max_edges: limits.max_constrained_edges,
        ..RotationLimits::default()
    };
    let mut embeddings: Vec<Vec<Embedding>> = Vec::with_capacity(locals.len());
    for (i, comp) in locals.iter().enumerate() {
        let rotations = enumerate_planar_rotations_with(&comp.graph, rotation_limits)?;
        if rotations.is_empty() {
            return Ok(OracleOutcome::no(Rejection::NonplanarComponent { component: i }));
        }
        embeddings.push(
            rotations
                .into_iter()
                .map(|rotation| {
                    let faces = face_trace(&comp.graph, &rotation);
                    let masks = faces
                        .faces
                        .iter()
                        .map(|face| face.vertices.iter().fold(0, |m, &v| m | bit(comp.vertices[v])))
                        .collect();
                    Embedding { rotation, faces, masks }
                })
                .collect(),
        );
    }

    let bridge_masks: Vec<Option<u64>> = decomposition
        .bridges
        .iter()
        .map(|b| (b.attachment_vertices.len() >= 2).then(|| b.attachment_vertices.iter().fold(0, |m, &v| m | bit(v))))
        .collect();

    let mut pick = vec![0usize; locals.len()];
    loop {
        let chosen: Vec<&Embedding> = pick.iter().enumerate().map(|(c, &i)| &embeddings[c][i]).collect();
        if let Some((placement, bridge_slots)) = search_placements(&chosen, &bridge_masks) {
            let components = locals
                .iter()
                .zip(&chosen)
                .map(|(comp, emb)| ComponentEmbedding {
                    vertices: comp.vertices.clone(),
                    edges: comp.edges.clone(),
                    rotation: emb
                        .rotation
                        .rotations()
                        .iter()
                        .map(|rot| rot.iter().map(|&e| comp.edges[e]).collect())
                        .collect(),
                    faces: emb
                        .faces
                        .faces
                        .iter()
                        .map(|face| face.vertices.iter().map(|&v| comp.vertices[v]).collect())
                        .collect(),
                })
                .collect();
            return Ok(OracleOutcome {
                answer: Answer::Yes,
                witness: Some(Witness {
                    components,
                    placement,
                    bridge_slots,
                }),
                rejection: None,
            });
        }
        // odometer over embeddings, component 0 slowest
        let mut c = pick.len();
        loop {
            if c == 0 {
                return Ok(OracleOutcome::no(Rejection::NoCompatibleEmbedding));
            }
            c -= 1;
            pick[c] += 1;
            if pick[c] < embeddings[c].len() {
                break;
            }
            pick[c] = 0;
        }
    }
}

/// Vertex masks of every host region under `placement`, keyed by slot.
fn region_masks(face_masks: &[&[u64]], placement: &Placement) -> Vec<(Slot, u64)> {
    let mut regions = Vec::new();
    for (c, masks) in face_masks.iter().enumerate() {
        for (face, &mask) in masks.iter().enumerate() {
            if placement.outer_face[c] == Some(face) {
                continue;
            }
            let slot = Slot { component: c, face };
            let merged = (0..face_masks.len())
                .filter(|&d| placement.parent[d] == Some(slot))
                .fold(mask, |m, d| m | face_masks[d][placement.outer_face[d].expect("placed component")]);
            regions.push((slot, merged));
        }
    }
    regions
}

fn is_acyclic(placement: &Placement) -> bool {
    let n = placement.parent.len();
    (0..n).all(|start| {
        let mut c = start;
        for _ in 0..n {
            match placement.parent[c] {
                None => return c == placement.root,
                Some(slot) => c = slot.component,
            }
        }
        false
    })
}

/// First placement (in odometer order over components 1.., each choosing
/// host component, host face, then own outer face) under which every bridge
/// finds a region.
fn search_placements(chosen: &[&Embedding], bridge_masks: &[Option<u64>]) -> Option<(Placement, Vec<Option<Slot>>)> {
    let count = chosen.len();
    let face_masks: Vec<&[u64]> = chosen.iter().map(|e| e.masks.as_slice()).collect();
    let options: Vec<Vec<(Slot, usize)>> = (0..count)
        .map(|c| {
            if c == 0 {
                return Vec::new();
            }
            let mut opts = Vec::new();
            for host in (0..count).filter(|&h| h != c) {
                for face in 0..face_masks[host].len() {
                    for outer in 0..face_masks[c].len() {
                        opts.push((Slot { component: host, face }, outer));
                    }
                }
            }
            opts
        })
        .collect();

    let mut pick = vec![0usize; count];
    loop {
        let mut placement = Placement {
            root: 0,
            parent: vec![None; count],
            outer_face: vec![None; count],
        };
        for c in 1..count {
            let (slot, outer) = options[c][pick[c]];
            placement.parent[c] = Some(slot);
            placement.outer_face[c] = Some(outer);
        }
        // a component's own outer face is not a separate host region
        let hosts_valid = (1..count).all(|c| {
            let slot = placement.parent[c].expect("non-root placed");
            placement.outer_face[slot.component] != Some(slot.face)
        });
        if hosts_valid && is_acyclic(&placement) {
            let regions = region_masks(&face_masks, &placement);
            let assignment: Option<Vec<Option<Slot>>> = bridge_masks
                .iter()
                .map(|bm| match bm {
                    None => Some(None),
                    Some(b) => regions
                        .iter()
                        .find(|(_, r)| r & b == *b)
                        .map(|(slot, _)| Some(*slot)),
                })
                .collect();
            if let Some(slots) = assignment {
                return Some((placement, slots));
            }
        }
        let mut c = count;
        loop {
            if c <= 1 {
                return None;
            }
            c -= 1;
            pick[c] += 1;
            if pick[c] < options[c].len() {
                break;
            }
            pick[c] = 0;
        }
    }
}

/// Re-derives everything a YES witness claims: rotations are valid and
/// planar, the components partition `F`, the placement nests properly, and
/// every bridge's attachments lie in its assigned region.
pub fn check_witness(g: &Graph, f: &EdgeSubset, w: &Witness) -> bool {
    let decomposition = bridge_decomposition(g, f);
    if w.bridge_slots.len() != decomposition.bridges.len() {
        return false;
    }
    let mut covered: Vec<EdgeId> = w.components.iter().flat_map(|c| c.edges.iter().copied()).collect();
    covered.sort_unstable();
    if covered != f.members().collect::<Vec<_>>() {
        return false;
    }

    let mut faces_per_component: Vec<Vec<Vec<VertexId>>> = Vec::with_capacity(w.components.len());
    for comp in &w.components {
        if comp.edges.iter().any(|&e| !comp.vertices.contains(&g.edge(e).lo) || !comp.vertices.contains(&g.edge(e).hi)) {
            return false;
        }
        let local = LocalComponent::new(g, comp.vertices.clone(), comp.edges.clone());
        let Ok(local_rot) = comp
            .rotation
            .iter()
            .map(|rot| {
                rot.iter()
                    .map(|e| comp.edges.binary_search(e).map_err(|_| ()))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()
        else {
            return false;
        };
        let Some(rot) = RotationSystem::new(&local.graph, local_rot) else {
            return false;
        };
        let faces = face_trace(&local.graph, &rot);
        let (n, m) = (local.graph.vertex_count() as isize, local.graph.edge_count() as isize);
        if n - m + faces.len() as isize != 2 {
            return false;
        }
        let traced: Vec<Vec<VertexId>> = faces
            .faces
            .iter()
            .map(|face| face.vertices.iter().map(|&v| comp.vertices[v]).collect())
            .collect();
        if traced != comp.faces {
            return false;
        }
        faces_per_component.push(traced);
    }

    let p = &w.placement;
    let count = w.components.len();
    if count == 0 {
        return w.bridge_slots.iter().all(Option::is_none)
            && decomposition.bridges.iter().all(|b| b.attachment_vertices.len() <= 1);
    }
    if p.parent.len() != count || p.outer_face.len() != count || p.root >= count {
        return false;
    }
    for c in 0..count {
        let placed_ok = if c == p.root {
            p.parent[c].is_none() && p.outer_face[c].is_none()
        } else {
            match (p.parent[c], p.outer_face[c]) {
                (Some(slot), Some(outer)) => {
                    slot.component < count
                        && slot.component != c
                        && slot.face < faces_per_component[slot.component].len()
                        && p.outer_face[slot.component] != Some(slot.face)
                        && outer < faces_per_component[c].len()
                }
                _ => false,
            }
        };
        if !placed_ok {
            return false;
        }
    }
    if !is_acyclic(p) {
        return false;
    }

    let region = |slot: Slot| -> Vec<VertexId> {
        let mut vs = faces_per_component[slot.component][slot.face].clone();
        for d in 0..count {
            if p.parent[d] == Some(slot) {
                vs.extend(&faces_per_component[d][p.outer_face[d].expect("checked above")]);
            }
        }
        vs
    };
    decomposition.bridges.iter().zip(&w.bridge_slots).all(|(bridge, slot)| {
        match slot {
            None => bridge.attachment_vertices.len() <= 1,
            Some(slot) => {
                if slot.component >= count
                    || slot.face >= faces_per_component[slot.component].len()
                    || p.outer_face[slot.component] == Some(slot.face)
                {
                    return false;
                }
                let vs = region(*slot);
                bridge.attachment_vertices.iter().all(|v| vs.contains(v))
            }
        }
    })
}
