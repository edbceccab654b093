//! Rotation systems, face tracing and exhaustive search for planar rotations
//! of a small connected graph.

use crate::graph::{EdgeId, Graph, VertexId};

use super::OracleError;

/// For each vertex, the cyclic order of its incident edges. The first entry
/// is always the smallest incident edge index, so each cyclic order has one
/// representation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RotationSystem {
    rotations: Vec<Vec<EdgeId>>,
}

impl RotationSystem {
    /// Checks that each list is a permutation of the vertex's incident edges
    /// and rotates it into normal form.
    pub fn new(g: &Graph, mut rotations: Vec<Vec<EdgeId>>) -> Option<Self> {
        if rotations.len() != g.vertex_count() {
            return None;
        }
        for (v, rot) in rotations.iter_mut().enumerate() {
            let mut sorted = rot.clone();
            sorted.sort_unstable();
            if sorted != g.incident(v) {
                return None;
            }
            if let Some(min_pos) = rot.iter().enumerate().min_by_key(|(_, &e)| e).map(|(i, _)| i) {
                rot.rotate_left(min_pos);
            }
        }
        Some(RotationSystem { rotations })
    }

    pub fn at(&self, v: VertexId) -> &[EdgeId] {
        &self.rotations[v]
    }

    pub fn rotations(&self) -> &[Vec<EdgeId>] {
        &self.rotations
    }
}

/// A directed edge-end: `edge` traversed away from `tail`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dart {
    pub edge: EdgeId,
    pub tail: VertexId,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    /// Boundary walk, starting from its smallest dart.
    pub darts: Vec<Dart>,
    /// Sorted vertex set of the boundary.
    pub vertices: Vec<VertexId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceSet {
    pub faces: Vec<Face>,
}

impl FaceSet {
    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }
}

#[inline]
fn dart_index(g: &Graph, d: Dart) -> usize {
    2 * d.edge + usize::from(g.edge(d.edge).lo != d.tail)
}

#[inline]
fn dart_at(g: &Graph, index: usize) -> Dart {
    let edge = g.edge(index / 2);
    Dart {
        edge: index / 2,
        tail: if index.is_multiple_of(2) { edge.lo } else { edge.hi },
    }
}

/// Traces the faces: arriving at `v` along edge `x`, leave along the
/// successor of `x` in the rotation at `v`. Faces are listed in order of
/// their smallest dart; an isolated vertex forms one face with no darts.
pub fn face_trace(g: &Graph, rot: &RotationSystem) -> FaceSet {
    let succ = successor_table(g, |v| rot.at(v));
    let mut used = vec![false; succ.len()];
    let mut faces = Vec::new();
    for start in 0..succ.len() {
        if used[start] {
            continue;
        }
        let mut darts = Vec::new();
        let mut d = start;
        while !used[d] {
            used[d] = true;
            darts.push(dart_at(g, d));
            d = succ[d ^ 1];
        }
        let mut vertices: Vec<VertexId> = darts.iter().map(|d| d.tail).collect();
        vertices.sort_unstable();
        vertices.dedup();
        faces.push(Face { darts, vertices });
    }
    for v in 0..g.vertex_count() {
        if g.degree(v) == 0 {
            faces.push(Face {
                darts: Vec::new(),
                vertices: vec![v],
            });
        }
    }
    FaceSet { faces }
}

/// `succ[d]` is the dart following outgoing dart `d` around its tail.
fn successor_table<'a>(g: &Graph, order: impl Fn(VertexId) -> &'a [EdgeId]) -> Vec<usize> {
    let mut succ = vec![0; 2 * g.edge_count()];
    for v in 0..g.vertex_count() {
        let rot = order(v);
        for (i, &e) in rot.iter().enumerate() {
            let next = rot[(i + 1) % rot.len()];
            succ[dart_index(g, Dart { edge: e, tail: v })] = dart_index(g, Dart { edge: next, tail: v });
        }
    }
    succ
}

fn count_faces(succ: &[usize], used: &mut [bool]) -> usize {
    used.iter_mut().for_each(|u| *u = false);
    let mut faces = 0;
    for start in 0..succ.len() {
        if used[start] {
            continue;
        }
        faces += 1;
        let mut d = start;
        while !used[d] {
            used[d] = true;
            d = succ[d ^ 1];
        }
    }
    faces
}

/// All permutations of `items` in lexicographic order of positions.
fn permutations<T: Copy>(items: &[T]) -> Vec<Vec<T>> {
    fn go<T: Copy>(rest: &mut Vec<T>, acc: &mut Vec<T>, out: &mut Vec<Vec<T>>) {
        if rest.is_empty() {
            out.push(acc.clone());
            return;
        }
        for i in 0..rest.len() {
            let x = rest.remove(i);
            acc.push(x);
            go(rest, acc, out);
            acc.pop();
            rest.insert(i, x);
        }
    }
    let mut out = Vec::new();
    go(&mut items.to_vec(), &mut Vec::new(), &mut out);
    out
}

fn is_connected(g: &Graph) -> bool {
    let n = g.vertex_count();
    if n == 0 {
        return true;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &e in g.incident(v) {
            let w = g.edge(e).other(v);
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Limits for exhaustive rotation search on one component.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RotationLimits {
    pub max_vertices: usize,
    pub max_edges: usize,
    /// Bound on the number of candidate rotation systems examined.
    pub max_candidates: u64,
}

impl Default for RotationLimits {
    fn default() -> Self {
        RotationLimits {
            max_vertices: 8,
            max_edges: 12,
            max_candidates: 5_000_000,
        }
    }
}

/// Every rotation system of a connected graph whose faces satisfy Euler's
/// formula `V - E + F = 2`, i.e. every planar embedding on the sphere.
/// Vertex 0's choice varies slowest.
pub fn enumerate_planar_rotations(component: &Graph) -> Result<Vec<RotationSystem>, OracleError> {
    enumerate_planar_rotations_with(component, RotationLimits::default())
}

pub fn enumerate_planar_rotations_with(
    component: &Graph,
    limits: RotationLimits,
) -> Result<Vec<RotationSystem>, OracleError> {
    let (n, m) = (component.vertex_count(), component.edge_count());
    let candidates: u64 = (0..n)
        .map(|v| (1..component.degree(v).max(1) as u64).product::<u64>())
        .try_fold(1u64, |acc, x| acc.checked_mul(x))
        .unwrap_or(u64::MAX);
    if n > limits.max_vertices || m > limits.max_edges || candidates > limits.max_candidates {
        return Err(OracleError::ComponentTooLarge {
            vertices: n,
            edges: m,
            candidates,
        });
    }
    if !is_connected(component) {
        return Err(OracleError::Disconnected);
    }

    // per vertex: first incident edge fixed, the rest permuted
    let choices: Vec<Vec<Vec<EdgeId>>> = (0..n)
        .map(|v| {
            let inc = component.incident(v);
            match inc.split_first() {
                None => vec![Vec::new()],
                Some((&first, rest)) => permutations(rest)
                    .into_iter()
                    .map(|p| std::iter::once(first).chain(p).collect())
                    .collect(),
            }
        })
        .collect();

    let target_faces = 2 + m as isize - n as isize;
    let mut found = Vec::new();
    let mut pick = vec![0usize; n];
    let mut used = vec![false; 2 * m];
    loop {
        let succ = successor_table(component, |v| &choices[v][pick[v]]);
        let faces = if m == 0 { 1 } else { count_faces(&succ, &mut used) };
        if faces as isize == target_faces {
            found.push(RotationSystem {
                rotations: (0..n).map(|v| choices[v][pick[v]].clone()).collect(),
            });
        }
        // odometer, last vertex fastest
        let mut v = n;
        loop {
            if v == 0 {
                return Ok(found);
            }
            v -= 1;
            pick[v] += 1;
            if pick[v] < choices[v].len() {
                break;
            }
            pick[v] = 0;
        }
    }
}
