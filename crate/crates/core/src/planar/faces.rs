//! Face walks of a plane component and the convex traces of its faces.
//!
//! The rotation at each vertex is the counterclockwise order of the exact
//! departure directions of its crossing-free edges. A dart `x -> u` is
//! followed by the counterclockwise successor of `u -> x` around `u`, which
//! keeps the face on the right: bounded faces are walked clockwise.

use std::collections::HashMap;

use super::{Decomposition, PlanarError};
use crate::drawing::Drawing;
use crate::geom::angle_cmp;

/// Position of a vertex occurrence on a face walk.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Instance {
    pub vertex: usize,
    pub index: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceWalk {
    pub face: usize,
    pub component: usize,
    /// vertex at each position of the closed walk
    pub walk: Vec<usize>,
    /// crossing-free edge leaving each position
    pub darts: Vec<usize>,
}

impl FaceWalk {
    pub fn size(&self) -> usize {
        self.walk.len()
    }

    pub fn instances(&self) -> impl Iterator<Item = Instance> + '_ {
        self.walk.iter().enumerate().map(|(index, &vertex)| Instance { vertex, index })
    }
}

/// Rotation system of one component: for each vertex, its crossing-free
/// edges in counterclockwise order of departure.
struct Rotation {
    around: HashMap<usize, Vec<usize>>,
}

impl Rotation {
    fn new(d: &Drawing, edges: &[usize]) -> Self {
        let mut around: HashMap<usize, Vec<usize>> = HashMap::new();
        for &e in edges {
            let (a, b) = d.endpoints(e);
            around.entry(a).or_default().push(e);
            around.entry(b).or_default().push(e);
        }
        for (&v, list) in around.iter_mut() {
            list.sort_by(|&e, &f| angle_cmp(d.edge(e).departure(v), d.edge(f).departure(v)));
        }
        Rotation { around }
    }

    fn successor(&self, v: usize, e: usize) -> usize {
        let list = &self.around[&v];
        let i = list.iter().position(|&x| x == e).expect("edge at vertex");
        list[(i + 1) % list.len()]
    }

    /// The first edge counterclockwise after `dir`; `dir` must not coincide
    /// with any edge direction at `v`.
    fn after_direction(&self, d: &Drawing, v: usize, dir: (i64, i64)) -> Option<usize> {
        let list = self.around.get(&v)?;
        if list.iter().any(|&e| angle_cmp(d.edge(e).departure(v), dir).is_eq()) {
            return None;
        }
        Some(
            list.iter()
                .copied()
                .find(|&e| angle_cmp(d.edge(e).departure(v), dir).is_gt())
                .unwrap_or(list[0]),
        )
    }
}

/// All faces of component `comp`. A single-vertex component has one face of
/// size 0.
pub fn face_walks(d: &Drawing, dec: &Decomposition, comp: usize) -> Vec<FaceWalk> {
    let component = &dec.components[comp];
    if component.planar_edges.is_empty() {
        return vec![FaceWalk { face: 0, component: comp, walk: Vec::new(), darts: Vec::new() }];
    }
    let rotation = Rotation::new(d, &component.planar_edges);
    let mut visited: HashMap<(usize, usize), bool> = HashMap::new();
    let mut faces = Vec::new();
    for &e in &component.planar_edges {
        let (a, b) = d.endpoints(e);
        for tail in [a, b] {
            if visited.contains_key(&(e, tail)) {
                continue;
            }
            let mut walk = Vec::new();
            let mut darts = Vec::new();
            let (mut edge, mut from) = (e, tail);
            while visited.insert((edge, from), true).is_none() {
                walk.push(from);
                darts.push(edge);
                let head = d.edge(edge).other(from);
                edge = rotation.successor(head, edge);
                from = head;
            }
            faces.push(FaceWalk { face: faces.len(), component: comp, walk, darts });
        }
    }
    faces
}

/// A face's crossed edges as chords between positions of its walk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvexTrace {
    pub face: usize,
    /// vertex at each boundary position
    pub boundary: Vec<usize>,
    /// `(i, j)` with `i < j`, one per edge in `edges`
    pub chords: Vec<(usize, usize)>,
    pub edges: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceAssignment {
    /// crossed edges per face index
    pub per_face: Vec<Vec<usize>>,
    /// traces of the faces that received at least one edge
    pub traces: Vec<ConvexTrace>,
}

/// Places every intra-component crossed edge in the face of `comp` holding
/// its interior. Each end is anchored at the walk position whose corner
/// contains the edge's departure direction.
pub fn assign_to_faces(
    d: &Drawing,
    dec: &Decomposition,
    comp: usize,
    faces: &[FaceWalk],
) -> Result<FaceAssignment, PlanarError> {
    let component = &dec.components[comp];
    let rotation = Rotation::new(d, &component.planar_edges);
    // corner owner, keyed by (vertex, outgoing crossing-free edge)
    let mut corner: HashMap<(usize, usize), (usize, usize)> = HashMap::new();
    for f in faces {
        for (pos, (&v, &e)) in f.walk.iter().zip(&f.darts).enumerate() {
            corner.insert((v, e), (f.face, pos));
        }
    }
    let mut per_face = vec![Vec::new(); faces.len()];
    let mut chords: Vec<Vec<(usize, usize)>> = vec![Vec::new(); faces.len()];
    for &e in &dec.intra[comp] {
        let impossible = PlanarError::AssignmentImpossible { component: comp, edge: e };
        let (a, b) = d.endpoints(e);
        let anchor = |v: usize| {
            rotation
                .after_direction(d, v, d.edge(e).departure(v))
                .and_then(|out| corner.get(&(v, out)).copied())
        };
        let (Some((fa, ia)), Some((fb, ib))) = (anchor(a), anchor(b)) else {
            return Err(impossible);
        };
        if fa != fb || ia == ib {
            return Err(impossible);
        }
        per_face[fa].push(e);
        chords[fa].push((ia.min(ib), ia.max(ib)));
    }
    let traces = faces
        .iter()
        .zip(chords)
        .zip(&per_face)
        .filter(|((_, c), _)| !c.is_empty())
        .map(|((f, c), edges)| ConvexTrace {
            face: f.face,
            boundary: f.walk.clone(),
            chords: c,
            edges: edges.clone(),
        })
        .collect();
    Ok(FaceAssignment { per_face, traces })
}

/// Chord index pairs whose endpoints strictly interleave around the trace.
pub fn trace_crossings(t: &ConvexTrace) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (x, &(a, b)) in t.chords.iter().enumerate() {
        for (y, &(c, dd)) in t.chords.iter().enumerate().skip(x + 1) {
            if (a < c && c < b && b < dd) || (c < a && a < dd && dd < b) {
                out.push((x, y));
            }
        }
    }
    out
}
