//! The topological drawing model.
//!
//! A [`RawDrawing`] is whatever a parser or generator produced. Passing it
//! through [`validate_drawing`] yields a [`Drawing`]: vertices at distinct
//! points, edges as non-self-intersecting polylines that avoid other vertices,
//! and every intersection between two edges either a shared endpoint or a
//! transversal crossing in the interior of two segments.
//!
//! Inside a `Drawing` vertices and edges are addressed by their position
//! (`usize` index); the [`VertexId`]/[`EdgeId`] values are the external
//! labels used in files and reports.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use rayon::prelude::*;

use crate::geom::{self, IntersectionKind, Point, RationalPoint, Segment};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeId(pub u32);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawVertex {
    pub id: VertexId,
    pub point: Point,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawEdge {
    pub id: EdgeId,
    pub source: VertexId,
    pub target: VertexId,
    /// Full polyline, both endpoints included.
    pub polyline: Vec<Point>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RawDrawing {
    pub vertices: Vec<RawVertex>,
    pub edges: Vec<RawEdge>,
}

impl RawDrawing {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, id: u32, x: i64, y: i64) -> &mut Self {
        self.vertices.push(RawVertex { id: VertexId(id), point: Point::new(x, y) });
        self
    }

    /// Adds a straight edge between two existing vertices.
    pub fn add_straight(&mut self, id: u32, source: u32, target: u32) -> &mut Self {
        let p = self.point_of(source);
        let q = self.point_of(target);
        self.add_polyline(id, source, target, &[p, q])
    }

    /// Adds an edge through the given bend points.
    pub fn add_bent(&mut self, id: u32, source: u32, target: u32, bends: &[Point]) -> &mut Self {
        let mut poly = vec![self.point_of(source)];
        poly.extend_from_slice(bends);
        poly.push(self.point_of(target));
        self.add_polyline(id, source, target, &poly)
    }

    pub fn add_polyline(&mut self, id: u32, source: u32, target: u32, poly: &[Point]) -> &mut Self {
        self.edges.push(RawEdge {
            id: EdgeId(id),
            source: VertexId(source),
            target: VertexId(target),
            polyline: poly.to_vec(),
        });
        self
    }

    fn point_of(&self, id: u32) -> Point {
        self.vertices
            .iter()
            .find(|v| v.id == VertexId(id))
            .map(|v| v.point)
            .unwrap_or_else(|| panic!("no vertex with id {id}"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub id: VertexId,
    pub point: Point,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub id: EdgeId,
    pub source: usize,
    pub target: usize,
    pub polyline: Vec<Point>,
}

impl Edge {
    pub fn segments(&self) -> impl Iterator<Item = Segment> + '_ {
        self.polyline.windows(2).map(|w| Segment::raw(w[0], w[1]))
    }

    /// Direction in which the edge leaves vertex `v` (one of its endpoints).
    pub fn departure(&self, v: usize) -> (i64, i64) {
        let (from, to) = if v == self.source {
            (self.polyline[0], self.polyline[1])
        } else {
            debug_assert_eq!(v, self.target);
            let k = self.polyline.len();
            (self.polyline[k - 1], self.polyline[k - 2])
        };
        (to.x - from.x, to.y - from.y)
    }

    pub fn other(&self, v: usize) -> usize {
        if v == self.source {
            self.target
        } else {
            self.source
        }
    }

    pub fn is_straight(&self) -> bool {
        self.polyline.len() == 2
    }
}

/// All crossing pairs of a drawing, keyed by edge index pairs `(a, b)` with
/// `a < b`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CrossingSet {
    pairs: BTreeMap<(usize, usize), Vec<RationalPoint>>,
    neighbors: Vec<Vec<usize>>,
}

impl CrossingSet {
    fn from_pairs(n_edges: usize, pairs: BTreeMap<(usize, usize), Vec<RationalPoint>>) -> Self {
        let mut neighbors = vec![Vec::new(); n_edges];
        for &(a, b) in pairs.keys() {
            neighbors[a].push(b);
            neighbors[b].push(a);
        }
        for list in &mut neighbors {
            list.sort_unstable();
        }
        CrossingSet { pairs, neighbors }
    }

    pub fn pair_count(&self) -> usize {
        self.pairs.len()
    }

    pub fn crossing_count(&self) -> usize {
        self.pairs.values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Crossing pairs in increasing index order with their crossing points.
    pub fn pairs(&self) -> impl Iterator<Item = ((usize, usize), &[RationalPoint])> + '_ {
        self.pairs.iter().map(|(&k, v)| (k, v.as_slice()))
    }

    pub fn cross(&self, a: usize, b: usize) -> bool {
        let key = if a < b { (a, b) } else { (b, a) };
        self.pairs.contains_key(&key)
    }

    pub fn points(&self, a: usize, b: usize) -> &[RationalPoint] {
        let key = if a < b { (a, b) } else { (b, a) };
        self.pairs.get(&key).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Edges crossed by `e`, sorted.
    pub fn neighbors(&self, e: usize) -> &[usize] {
        &self.neighbors[e]
    }

    /// Number of distinct edges crossing `e`.
    pub fn degree(&self, e: usize) -> usize {
        self.neighbors[e].len()
    }

    pub fn all_points(&self) -> impl Iterator<Item = &RationalPoint> + '_ {
        self.pairs.values().flatten()
    }
}

/// A validated topological drawing. Immutable; its crossings are computed
/// once during validation.
#[derive(Debug, Clone)]
pub struct Drawing {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    vertex_index: HashMap<VertexId, usize>,
    edge_index: HashMap<EdgeId, usize>,
    crossings: CrossingSet,
}

impl Drawing {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex(&self, v: usize) -> &Vertex {
        &self.vertices[v]
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    pub fn vertex_by_id(&self, id: VertexId) -> Option<usize> {
        self.vertex_index.get(&id).copied()
    }

    pub fn edge_by_id(&self, id: EdgeId) -> Option<usize> {
        self.edge_index.get(&id).copied()
    }

    pub fn crossings(&self) -> &CrossingSet {
        &self.crossings
    }

    pub fn endpoints(&self, e: usize) -> (usize, usize) {
        (self.edges[e].source, self.edges[e].target)
    }

    pub fn shares_vertex(&self, e: usize, f: usize) -> bool {
        let (a, b) = self.endpoints(e);
        let (c, d) = self.endpoints(f);
        a == c || a == d || b == c || b == d
    }

    /// Back to the raw form, preserving ids and order.
    pub fn to_raw(&self) -> RawDrawing {
        RawDrawing {
            vertices: self
                .vertices
                .iter()
                .map(|v| RawVertex { id: v.id, point: v.point })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|e| RawEdge {
                    id: e.id,
                    source: self.vertices[e.source].id,
                    target: self.vertices[e.target].id,
                    polyline: e.polyline.clone(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValidationIssue {
    DuplicateVertexId(VertexId),
    DuplicateEdgeId(EdgeId),
    UnknownVertex { edge: EdgeId, vertex: VertexId },
    CoordinateOutOfRange { point: Point },
    DuplicateVertexPoint { first: VertexId, second: VertexId, point: Point },
    LoopOrParallelEdge { edge: EdgeId, other: Option<EdgeId> },
    MalformedPolyline { edge: EdgeId, reason: &'static str },
    VertexOnEdgeInterior { vertex: VertexId, edge: EdgeId },
    OverlapBetweenEdges { first: EdgeId, second: EdgeId },
    CrossingAtBend { first: EdgeId, second: EdgeId, point: Point },
    CoincidentCrossings { point: RationalPoint, pairs: Vec<(EdgeId, EdgeId)> },
}

impl fmt::Display for ValidationIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use ValidationIssue::*;
        match self {
            DuplicateVertexId(v) => write!(f, "DuplicateVertexId vertex {v}"),
            DuplicateEdgeId(e) => write!(f, "DuplicateEdgeId edge {e}"),
            UnknownVertex { edge, vertex } => write!(f, "UnknownVertex edge {edge} vertex {vertex}"),
            CoordinateOutOfRange { point } => write!(f, "CoordinateOutOfRange point {point}"),
            DuplicateVertexPoint { first, second, point } => {
                write!(f, "DuplicateVertexPoint vertices {first} {second} at {point}")
            }
            LoopOrParallelEdge { edge, other: Some(o) } => {
                write!(f, "LoopOrParallelEdge edges {o} {edge}")
            }
            LoopOrParallelEdge { edge, other: None } => write!(f, "LoopOrParallelEdge edge {edge}"),
            MalformedPolyline { edge, reason } => write!(f, "MalformedPolyline edge {edge}: {reason}"),
            VertexOnEdgeInterior { vertex, edge } => {
                write!(f, "VertexOnEdgeInterior vertex {vertex} edge {edge}")
            }
            OverlapBetweenEdges { first, second } => {
                write!(f, "OverlapBetweenEdges edges {first} {second}")
            }
            CrossingAtBend { first, second, point } => {
                write!(f, "CrossingAtBend edges {first} {second} at {point}")
            }
            CoincidentCrossings { point, pairs } => {
                write!(f, "CoincidentCrossings at {point}:")?;
                for (a, b) in pairs {
                    write!(f, " ({a},{b})")?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid drawing: {} issue(s)", issues.len())]
pub struct ValidationReport {
    pub issues: Vec<ValidationIssue>,
}

pub fn validate_drawing(raw: &RawDrawing) -> Result<Drawing, ValidationReport> {
    let mut issues = Vec::new();

    let mut vertex_index = HashMap::new();
    let mut point_owner: HashMap<Point, VertexId> = HashMap::new();
    for (i, v) in raw.vertices.iter().enumerate() {
        if vertex_index.insert(v.id, i).is_some() {
            issues.push(ValidationIssue::DuplicateVertexId(v.id));
        }
        if !v.point.in_range() {
            issues.push(ValidationIssue::CoordinateOutOfRange { point: v.point });
        }
        if let Some(&first) = point_owner.get(&v.point) {
            issues.push(ValidationIssue::DuplicateVertexPoint { first, second: v.id, point: v.point });
        } else {
            point_owner.insert(v.point, v.id);
        }
    }

    let mut edge_index = HashMap::new();
    let mut endpoint_pairs: HashMap<(usize, usize), EdgeId> = HashMap::new();
    let mut edges = Vec::with_capacity(raw.edges.len());
    let mut structurally_ok = issues.is_empty();
    for (i, e) in raw.edges.iter().enumerate() {
        if edge_index.insert(e.id, i).is_some() {
            issues.push(ValidationIssue::DuplicateEdgeId(e.id));
            structurally_ok = false;
        }
        let (Some(&s), Some(&t)) = (vertex_index.get(&e.source), vertex_index.get(&e.target)) else {
            for v in [e.source, e.target] {
                if !vertex_index.contains_key(&v) {
                    issues.push(ValidationIssue::UnknownVertex { edge: e.id, vertex: v });
                }
            }
            structurally_ok = false;
            continue;
        };
        if s == t {
            issues.push(ValidationIssue::LoopOrParallelEdge { edge: e.id, other: None });
            structurally_ok = false;
            continue;
        }
        let key = (s.min(t), s.max(t));
        if let Some(&other) = endpoint_pairs.get(&key) {
            issues.push(ValidationIssue::LoopOrParallelEdge { edge: e.id, other: Some(other) });
            structurally_ok = false;
        } else {
            endpoint_pairs.insert(key, e.id);
        }
        if let Some(reason) = polyline_shape_problem(e, raw.vertices[s].point, raw.vertices[t].point) {
            issues.push(ValidationIssue::MalformedPolyline { edge: e.id, reason });
            structurally_ok = false;
            continue;
        }
        edges.push(Edge { id: e.id, source: s, target: t, polyline: e.polyline.clone() });
    }

    if !structurally_ok {
        return Err(ValidationReport { issues });
    }

    let vertices: Vec<Vertex> =
        raw.vertices.iter().map(|v| Vertex { id: v.id, point: v.point }).collect();

    for e in &edges {
        if let Some(reason) = self_intersection(e) {
            issues.push(ValidationIssue::MalformedPolyline { edge: e.id, reason });
        }
    }
    issues.extend(vertex_on_interior(&vertices, &edges));

    let vertex_points: HashSet<Point> = vertices.iter().map(|v| v.point).collect();
    let scan = scan_pairs(&vertices, &edges);
    for (e, f, finding) in &scan.problems {
        let (first, second) = (edges[*e].id, edges[*f].id);
        match *finding {
            PairProblem::Overlap => issues.push(ValidationIssue::OverlapBetweenEdges { first, second }),
            // touches at vertex points are reported by the vertex scan
            PairProblem::Touch(p) if vertex_points.contains(&p) => {}
            PairProblem::Touch(point) => {
                issues.push(ValidationIssue::CrossingAtBend { first, second, point })
            }
        }
    }

    let mut by_point: BTreeMap<RationalPoint, Vec<(EdgeId, EdgeId)>> = BTreeMap::new();
    for (&(a, b), pts) in &scan.crossings {
        for p in pts {
            by_point.entry(*p).or_default().push((edges[a].id, edges[b].id));
        }
    }
    for (point, pairs) in by_point {
        if pairs.len() > 1 {
            issues.push(ValidationIssue::CoincidentCrossings { point, pairs });
        }
    }

    if !issues.is_empty() {
        return Err(ValidationReport { issues });
    }
    let crossings = CrossingSet::from_pairs(edges.len(), scan.crossings);
    Ok(Drawing { vertices, edges, vertex_index, edge_index, crossings })
}

fn polyline_shape_problem(e: &RawEdge, src: Point, dst: Point) -> Option<&'static str> {
    let poly = &e.polyline;
    if poly.len() < 2 {
        return Some("fewer than two points");
    }
    if poly[0] != src {
        return Some("does not start at the source vertex");
    }
    if poly[poly.len() - 1] != dst {
        return Some("does not end at the target vertex");
    }
    if poly.iter().any(|p| !p.in_range()) {
        return Some("coordinate out of range");
    }
    if poly.windows(2).any(|w| w[0] == w[1]) {
        return Some("repeated consecutive point");
    }
    None
}

fn self_intersection(e: &Edge) -> Option<&'static str> {
    let segs: Vec<Segment> = e.segments().collect();
    for i in 0..segs.len() {
        for j in i + 1..segs.len() {
            let kind = geom::classify_raw(&segs[i], &segs[j]);
            let ok = if j == i + 1 {
                kind == IntersectionKind::EndpointTouch(segs[i].b)
            } else {
                kind == IntersectionKind::Disjoint
            };
            if !ok {
                return Some("self-intersecting");
            }
        }
    }
    None
}

fn vertex_on_interior(vertices: &[Vertex], edges: &[Edge]) -> Vec<ValidationIssue> {
    edges
        .par_iter()
        .flat_map_iter(|e| {
            let last = e.polyline.len() - 2;
            let mut found = Vec::new();
            for (w, v) in vertices.iter().enumerate() {
                let hit = e.segments().enumerate().any(|(k, seg)| {
                    if !geom::on_segment(&seg, v.point) {
                        return false;
                    }
                    let at_source = w == e.source && k == 0 && v.point == seg.a;
                    let at_target = w == e.target && k == last && v.point == seg.b;
                    !(at_source || at_target)
                });
                if hit {
                    found.push(ValidationIssue::VertexOnEdgeInterior { vertex: v.id, edge: e.id });
                }
            }
            found
        })
        .collect()
}

enum PairProblem {
    Overlap,
    Touch(Point),
}

struct PairScan {
    crossings: BTreeMap<(usize, usize), Vec<RationalPoint>>,
    problems: Vec<(usize, usize, PairProblem)>,
}

struct Bbox {
    lo: Point,
    hi: Point,
}

fn bbox(poly: &[Point]) -> Bbox {
    let mut lo = poly[0];
    let mut hi = poly[0];
    for p in poly {
        lo.x = lo.x.min(p.x);
        lo.y = lo.y.min(p.y);
        hi.x = hi.x.max(p.x);
        hi.y = hi.y.max(p.y);
    }
    Bbox { lo, hi }
}

fn common_endpoint_point(vertices: &[Vertex], e: &Edge, f: &Edge) -> [Option<Point>; 2] {
    let mut out = [None, None];
    let mut k = 0;
    for a in [e.source, e.target] {
        if a == f.source || a == f.target {
            out[k] = Some(vertices[a].point);
            k += 1;
        }
    }
    out
}

type EdgeScan = (Vec<((usize, usize), Vec<RationalPoint>)>, Vec<(usize, usize, PairProblem)>);

/// Classifies every segment pair of every edge pair. Work is split by the
/// first edge; results are merged in index order so the output does not
/// depend on scheduling.
fn scan_pairs(vertices: &[Vertex], edges: &[Edge]) -> PairScan {
    let boxes: Vec<Bbox> = edges.iter().map(|e| bbox(&e.polyline)).collect();
    let per_edge: Vec<EdgeScan> =
        (0..edges.len())
            .into_par_iter()
            .map(|a| {
                let mut crossings = Vec::new();
                let mut problems = Vec::new();
                let ea = &edges[a];
                for b in a + 1..edges.len() {
                    let (ba, bb) = (&boxes[a], &boxes[b]);
                    if ba.hi.x < bb.lo.x || bb.hi.x < ba.lo.x || ba.hi.y < bb.lo.y || bb.hi.y < ba.lo.y {
                        continue;
                    }
                    let eb = &edges[b];
                    let shared = common_endpoint_point(vertices, ea, eb);
                    let mut pts = Vec::new();
                    for s in ea.segments() {
                        for t in eb.segments() {
                            match geom::classify_raw(&s, &t) {
                                IntersectionKind::Disjoint => {}
                                IntersectionKind::ProperCrossing(p) => pts.push(p),
                                IntersectionKind::Overlap => problems.push((a, b, PairProblem::Overlap)),
                                IntersectionKind::EndpointTouch(p) => {
                                    if !shared.contains(&Some(p)) {
                                        problems.push((a, b, PairProblem::Touch(p)));
                                    }
                                }
                                IntersectionKind::EndpointOnInterior(p) => {
                                    problems.push((a, b, PairProblem::Touch(p)))
                                }
                            }
                        }
                    }
                    if !pts.is_empty() {
                        pts.sort_unstable();
                        crossings.push(((a, b), pts));
                    }
                }
                (crossings, problems)
            })
            .collect();
    let mut scan = PairScan { crossings: BTreeMap::new(), problems: Vec::new() };
    for (c, p) in per_edge {
        scan.crossings.extend(c);
        scan.problems.extend(p);
    }
    scan
}

/// Recomputes all proper crossings of a validated drawing.
pub fn compute_crossings(d: &Drawing) -> CrossingSet {
    let scan = scan_pairs(&d.vertices, &d.edges);
    CrossingSet::from_pairs(d.edges.len(), scan.crossings)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicityReport {
    pub simple: bool,
    /// First pair (in index order) that meets more than once.
    pub witness: Option<(EdgeId, EdgeId)>,
}

/// Every pair of edges may meet at most once, counting a shared endpoint.
pub fn is_simple(d: &Drawing) -> SimplicityReport {
    let witness = d
        .crossings
        .pairs()
        .find(|&((a, b), pts)| pts.len() + usize::from(d.shares_vertex(a, b)) > 1)
        .map(|((a, b), _)| (d.edges[a].id, d.edges[b].id));
    SimplicityReport { simple: witness.is_none(), witness }
}

/// The split into crossing-free edges and crossed edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgePartition {
    pub planar: Vec<usize>,
    pub crossed: Vec<usize>,
    is_planar: Vec<bool>,
}

impl EdgePartition {
    pub fn is_planar(&self, e: usize) -> bool {
        self.is_planar[e]
    }
}

pub fn partition_edges(d: &Drawing, c: &CrossingSet) -> EdgePartition {
    let is_planar: Vec<bool> = (0..d.edge_count()).map(|e| c.degree(e) == 0).collect();
    let (planar, crossed) = (0..d.edge_count()).partition(|&e| is_planar[e]);
    EdgePartition { planar, crossed, is_planar }
}
