//! Mechanical sparsity certificate for drawings whose crossing pairs are
//! independent and planarly connected.
//!
//! Every inequality of the bound chain is stored as a record that can be
//! re-audited on its own, so a forged or corrupted record is caught by
//! [`Certificate::audit`].

use std::collections::BTreeSet;

use rayon::prelude::*;
use thiserror::Error;

use crate::checkers::{check_pcc, BitGraph};
use crate::drawing::{partition_edges, Drawing};
use crate::planar::{
    assign_to_faces, decompose, face_walks, four_color, is_planar, trace_crossings, AbstractGraph,
    Decomposition, FaceAssignment, FaceWalk, PlanarError,
};

/// Size of a pairwise crossing family that can never occur inside a face.
pub const FACE_FAMILY: usize = 9;
/// Crossing-family parameter used with [`capoyleas_pach_bound`].
pub const CP_K: u64 = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LemmaViolation {
    #[error("{check} fails at {place}: {lhs} > {rhs}")]
    Exceeds { check: &'static str, place: String, lhs: u64, rhs: u64 },
    #[error("{check} fails at {place}: {left} != {right}")]
    Mismatch { check: &'static str, place: String, left: i64, right: i64 },
    #[error("{check} fails at {place}")]
    Flag { check: &'static str, place: String },
    #[error(transparent)]
    Planar(#[from] PlanarError),
}

fn le(check: &'static str, place: impl Fn() -> String, lhs: u64, rhs: u64) -> Result<(), LemmaViolation> {
    if lhs <= rhs {
        Ok(())
    } else {
        Err(LemmaViolation::Exceeds { check, place: place(), lhs, rhs })
    }
}

fn same(check: &'static str, place: impl Fn() -> String, left: i64, right: i64) -> Result<(), LemmaViolation> {
    if left == right {
        Ok(())
    } else {
        Err(LemmaViolation::Mismatch { check, place: place(), left, right })
    }
}

fn flag(check: &'static str, place: impl Fn() -> String, value: bool) -> Result<(), LemmaViolation> {
    if value {
        Ok(())
    } else {
        Err(LemmaViolation::Flag { check, place: place() })
    }
}

fn binom2(n: u64) -> u64 {
    n * n.saturating_sub(1) / 2
}

/// Maximum number of edges of a geometric graph on `n` points in convex
/// position with no `k + 1` pairwise crossing edges.
pub fn capoyleas_pach_bound(n: u64, k: u64) -> u64 {
    if n <= 2 * k + 1 {
        binom2(n)
    } else {
        2 * k * n - binom2(2 * k + 1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceRecord {
    pub component: usize,
    pub face: usize,
    pub size: u64,
    pub chords: u64,
    /// largest pairwise interleaving chord set, searched up to [`FACE_FAMILY`]
    pub max_family: u64,
    pub cp_bound: u64,
    pub coarse_bound: u64,
    /// chord interleaving agrees with the drawing's crossings on this face
    pub traces_consistent: bool,
}

impl FaceRecord {
    pub fn audit(&self) -> Result<(), LemmaViolation> {
        let place = || format!("component {} face {}", self.component, self.face);
        le("pairwise crossing chords", place, self.max_family, FACE_FAMILY as u64 - 1)?;
        flag("trace consistency", place, self.traces_consistent)?;
        same("cp value", place, self.cp_bound as i64, capoyleas_pach_bound(self.size, CP_K) as i64)?;
        same("coarse value", place, self.coarse_bound as i64, 16 * self.size as i64)?;
        le("face chords vs cp bound", place, self.chords, self.cp_bound)?;
        le("cp bound vs coarse bound", place, self.cp_bound, self.coarse_bound)?;
        le("face chords vs 16|f|", place, self.chords, self.coarse_bound)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentRecord {
    pub component: usize,
    pub vertices: u64,
    pub planar_edges: u64,
    pub faces: u64,
    pub face_size_sum: u64,
    pub intra: u64,
    pub chord_sum: u64,
    pub cp_sum: u64,
    pub coarse_sum: u64,
    pub bound: u64,
}

impl ComponentRecord {
    pub fn audit(&self) -> Result<(), LemmaViolation> {
        let place = || format!("component {}", self.component);
        same("face sizes vs 2|E'_i|", place, self.face_size_sum as i64, 2 * self.planar_edges as i64)?;
        same(
            "euler formula",
            place,
            self.vertices as i64 - self.planar_edges as i64 + self.faces as i64,
            2,
        )?;
        same("intra edges placed in faces", place, self.intra as i64, self.chord_sum as i64)?;
        same("bound value", place, self.bound as i64, 96 * self.vertices as i64)?;
        le("intra vs sum of cp bounds", place, self.intra, self.cp_sum)?;
        le("cp sum vs coarse sum", place, self.cp_sum, self.coarse_sum)?;
        same("coarse sum vs 32|E'_i|", place, self.coarse_sum as i64, 32 * self.planar_edges as i64)?;
        le("32|E'_i| vs 96|V_i|", place, 32 * self.planar_edges, self.bound)?;
        le("intra vs 96|V_i|", place, self.intra, self.bound)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HRecord {
    pub vertices: u64,
    pub edges: u64,
    pub planar: bool,
}

impl HRecord {
    pub fn audit(&self) -> Result<(), LemmaViolation> {
        flag("H planar", || "H".to_string(), self.planar)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GStarAudit {
    pub colors: (u8, u8),
    pub edges: u64,
    pub left: u64,
    pub right: u64,
    pub crossing_free: bool,
    pub bipartite: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairRecord {
    pub i: usize,
    pub j: usize,
    pub edges: u64,
    pub vij: u64,
    pub vji: u64,
    pub bound: u64,
    pub gstar: Vec<GStarAudit>,
}

impl PairRecord {
    pub fn audit(&self) -> Result<(), LemmaViolation> {
        let place = || format!("pair ({}, {})", self.i, self.j);
        for g in &self.gstar {
            let gplace = || format!("pair ({}, {}) colours {}/{}", self.i, self.j, g.colors.0, g.colors.1);
            flag("G* crossing-free", gplace, g.crossing_free)?;
            flag("G* bipartite", gplace, g.bipartite)?;
            le("G* edges vs 2(|V^c_ij| + |V^c'_ji|)", gplace, g.edges, 2 * (g.left + g.right))?;
        }
        same("G* edge partition", place, self.gstar.iter().map(|g| g.edges).sum::<u64>() as i64, self.edges as i64)?;
        let lefts: u64 = self.gstar.iter().map(|g| g.left).sum();
        let rights: u64 = self.gstar.iter().map(|g| g.right).sum();
        same("G* left classes", place, lefts as i64, 4 * self.vij as i64)?;
        same("G* right classes", place, rights as i64, 4 * self.vji as i64)?;
        same("bound value", place, self.bound as i64, 8 * (self.vij + self.vji) as i64)?;
        le("|E''_ij| vs 8(|V_ij| + |V_ji|)", place, self.edges, self.bound)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HcAudit {
    pub component: usize,
    pub color: u8,
    pub vertices: u64,
    pub edges: u64,
    pub planar: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumRecord {
    pub component: usize,
    pub vertices: u64,
    pub boundary_sum: u64,
    pub deg_h: u64,
    pub bound: u64,
    pub hc: Vec<HcAudit>,
}

impl SumRecord {
    pub fn audit(&self) -> Result<(), LemmaViolation> {
        let place = || format!("component {}", self.component);
        for h in &self.hc {
            let hplace = || format!("component {} colour {}", h.component, h.color);
            flag("H^c planar", hplace, h.planar)?;
            le("H^c edges vs 3|V(H^c)|", hplace, h.edges, 3 * h.vertices)?;
        }
        same("H^c edge total", place, self.hc.iter().map(|h| h.edges).sum::<u64>() as i64, self.boundary_sum as i64)?;
        let hc_vertices: u64 = self.hc.iter().map(|h| h.vertices).sum();
        same("H^c vertex total", place, hc_vertices as i64, (self.vertices + 4 * self.deg_h) as i64)?;
        same("bound value", place, self.bound as i64, (3 * self.vertices + 12 * self.deg_h) as i64)?;
        le("sum |V_ij| vs 3|V_i| + 12 deg_H", place, self.boundary_sum, self.bound)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Totals {
    pub n: u64,
    pub planar_edges: u64,
    pub crossed_edges: u64,
    pub total_edges: u64,
    pub intra_sum: u64,
    pub inter_sum: u64,
    pub boundary_total: u64,
    pub h_edges: u64,
    pub planar_bound: u64,
    pub crossed_bound: u64,
    pub bound: u64,
    /// edges per vertex
    pub density: f64,
}

impl Totals {
    fn new(d: &Drawing, planar_edges: u64) -> Self {
        let n = d.vertex_count() as u64;
        let total_edges = d.edge_count() as u64;
        Totals {
            n,
            planar_edges,
            crossed_edges: total_edges - planar_edges,
            total_edges,
            intra_sum: 0,
            inter_sum: 0,
            boundary_total: 0,
            h_edges: 0,
            planar_bound: 3 * n,
            crossed_bound: 696 * n,
            bound: 699 * n,
            density: if n == 0 { 0.0 } else { total_edges as f64 / n as f64 },
        }
    }

    pub fn audit(&self) -> Result<(), LemmaViolation> {
        let place = || "totals".to_string();
        let n = self.n;
        same("|E| = |E'| + |E''|", place, self.total_edges as i64, (self.planar_edges + self.crossed_edges) as i64)?;
        same("|E''| accounting", place, self.crossed_edges as i64, (self.intra_sum + self.inter_sum) as i64)?;
        le("|E'| vs 3n", place, self.planar_edges, 3 * n)?;
        le("intra total vs 96n", place, self.intra_sum, 96 * n)?;
        le("inter total vs 8 sum |V_ij|", place, self.inter_sum, 8 * self.boundary_total)?;
        le("sum |V_ij| vs 3n + 24|E(H)|", place, self.boundary_total, 3 * n + 24 * self.h_edges)?;
        le("|E''| vs 120n + 192|E(H)|", place, self.crossed_edges, 120 * n + 192 * self.h_edges)?;
        le("|E(H)| vs 3n", place, self.h_edges, 3 * n)?;
        same("crossed bound value", place, self.crossed_bound as i64, 696 * n as i64)?;
        same("bound value", place, self.bound as i64, 699 * n as i64)?;
        le("|E''| vs 696n", place, self.crossed_edges, self.crossed_bound)?;
        le("|E| vs 699n", place, self.total_edges, self.bound)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub hypothesis_ok: bool,
    pub faces: Vec<FaceRecord>,
    pub components: Vec<ComponentRecord>,
    pub h: Option<HRecord>,
    pub pairs: Vec<PairRecord>,
    pub sums: Vec<SumRecord>,
    pub totals: Totals,
}

impl Certificate {
    /// Re-checks every record. A certificate whose hypothesis failed has no
    /// records and audits trivially.
    pub fn audit(&self) -> Result<(), LemmaViolation> {
        if !self.hypothesis_ok {
            return Ok(());
        }
        for f in &self.faces {
            f.audit()?;
        }
        for c in &self.components {
            c.audit()?;
        }
        if let Some(h) = &self.h {
            h.audit()?;
        }
        for p in &self.pairs {
            p.audit()?;
        }
        for s in &self.sums {
            s.audit()?;
        }
        self.totals.audit()
    }

    pub fn is_valid(&self) -> bool {
        self.hypothesis_ok && self.audit().is_ok()
    }
}

/// Face walks and face assignments of every component.
pub struct FaceData {
    pub faces: Vec<Vec<FaceWalk>>,
    pub assignments: Vec<FaceAssignment>,
}

pub fn face_data(d: &Drawing, dec: &Decomposition) -> Result<FaceData, PlanarError> {
    let per: Vec<(Vec<FaceWalk>, FaceAssignment)> = (0..dec.components.len())
        .into_par_iter()
        .map(|c| {
            let f = face_walks(d, dec, c);
            let a = assign_to_faces(d, dec, c, &f)?;
            Ok((f, a))
        })
        .collect::<Result<_, PlanarError>>()?;
    let (faces, assignments) = per.into_iter().unzip();
    Ok(FaceData { faces, assignments })
}

fn face_record(d: &Drawing, comp: usize, f: &FaceWalk, a: &FaceAssignment) -> FaceRecord {
    let size = f.size() as u64;
    let edges = &a.per_face[f.face];
    let trace = a.traces.iter().find(|t| t.face == f.face);
    let (max_family, traces_consistent) = match trace {
        None => (0, true),
        Some(t) => {
            let pairs = trace_crossings(t);
            let g = BitGraph::from_edges(t.chords.len(), pairs.iter().copied());
            let interleaved: BTreeSet<(usize, usize)> = pairs.into_iter().collect();
            let mut consistent = true;
            for x in 0..t.edges.len() {
                for y in x + 1..t.edges.len() {
                    let crosses = d.crossings().cross(t.edges[x], t.edges[y]);
                    consistent &= crosses == interleaved.contains(&(x, y));
                }
            }
            (g.max_clique(FACE_FAMILY).len() as u64, consistent)
        }
    };
    FaceRecord {
        component: comp,
        face: f.face,
        size,
        chords: edges.len() as u64,
        max_family,
        cp_bound: capoyleas_pach_bound(size, CP_K),
        coarse_bound: 16 * size,
        traces_consistent,
    }
}

/// Per-face and per-component records for crossed edges inside one
/// component.
pub fn verify_intra(
    d: &Drawing,
    dec: &Decomposition,
    data: &FaceData,
) -> Result<(Vec<ComponentRecord>, Vec<FaceRecord>), LemmaViolation> {
    let per: Vec<(ComponentRecord, Vec<FaceRecord>)> = (0..dec.components.len())
        .into_par_iter()
        .map(|c| {
            let faces: Vec<FaceRecord> =
                data.faces[c].iter().map(|f| face_record(d, c, f, &data.assignments[c])).collect();
            let comp = &dec.components[c];
            let record = ComponentRecord {
                component: c,
                vertices: comp.vertices.len() as u64,
                planar_edges: comp.planar_edges.len() as u64,
                faces: faces.len() as u64,
                face_size_sum: faces.iter().map(|f| f.size).sum(),
                intra: dec.intra[c].len() as u64,
                chord_sum: faces.iter().map(|f| f.chords).sum(),
                cp_sum: faces.iter().map(|f| f.cp_bound).sum(),
                coarse_sum: faces.iter().map(|f| f.coarse_bound).sum(),
                bound: 96 * comp.vertices.len() as u64,
            };
            (record, faces)
        })
        .collect();
    let mut components = Vec::new();
    let mut faces = Vec::new();
    for (c, f) in per {
        for r in &f {
            r.audit()?;
        }
        c.audit()?;
        components.push(c);
        faces.extend(f);
    }
    Ok((components, faces))
}

/// One vertex per component, joined when crossed edges run between them.
pub fn build_h(dec: &Decomposition) -> AbstractGraph {
    AbstractGraph::new(dec.components.len(), dec.inter.keys().copied())
        .expect("component pairs are distinct and ordered")
}

/// A proper colouring of every component's crossing-free graph, indexed by
/// vertex.
pub fn component_colorings(d: &Drawing, dec: &Decomposition) -> Result<Vec<u8>, PlanarError> {
    let mut colors = vec![0u8; d.vertex_count()];
    let per: Vec<Vec<u8>> = dec
        .components
        .par_iter()
        .map(|comp| {
            let local = |v: usize| comp.vertices.binary_search(&v).expect("vertex in component");
            let g = AbstractGraph::new(
                comp.vertices.len(),
                comp.planar_edges.iter().map(|&e| {
                    let (a, b) = d.endpoints(e);
                    (local(a), local(b))
                }),
            )?;
            Ok(four_color(&g)?.colors)
        })
        .collect::<Result<_, PlanarError>>()?;
    for (comp, c) in dec.components.iter().zip(per) {
        for (&v, col) in comp.vertices.iter().zip(c) {
            colors[v] = col;
        }
    }
    Ok(colors)
}

/// Per-pair records with one G* audit per colour pair.
pub fn verify_inter(d: &Drawing, dec: &Decomposition, colors: &[u8]) -> Result<Vec<PairRecord>, LemmaViolation> {
    let mut out = Vec::new();
    for (&(i, j), edges) in &dec.inter {
        let vij = dec.boundary(i, j);
        let vji = dec.boundary(j, i);
        let mut gstar = Vec::with_capacity(16);
        for c in 1..=4u8 {
            for c2 in 1..=4u8 {
                let left: Vec<usize> = vij.iter().copied().filter(|&v| colors[v] == c).collect();
                let right: Vec<usize> = vji.iter().copied().filter(|&v| colors[v] == c2).collect();
                let members: Vec<usize> = edges
                    .iter()
                    .copied()
                    .filter(|&e| {
                        let (a, b) = d.endpoints(e);
                        let (x, y) = if dec.component_of[a] == i { (a, b) } else { (b, a) };
                        colors[x] == c && colors[y] == c2
                    })
                    .collect();
                let bipartite = members.iter().all(|&e| {
                    let (a, b) = d.endpoints(e);
                    (left.binary_search(&a).is_ok() && right.binary_search(&b).is_ok())
                        || (left.binary_search(&b).is_ok() && right.binary_search(&a).is_ok())
                });
                let crossing_free = members
                    .iter()
                    .enumerate()
                    .all(|(x, &e)| members[x + 1..].iter().all(|&f| !d.crossings().cross(e, f)));
                gstar.push(GStarAudit {
                    colors: (c, c2),
                    edges: members.len() as u64,
                    left: left.len() as u64,
                    right: right.len() as u64,
                    crossing_free,
                    bipartite,
                });
            }
        }
        let record = PairRecord {
            i,
            j,
            edges: edges.len() as u64,
            vij: vij.len() as u64,
            vji: vji.len() as u64,
            bound: 8 * (vij.len() + vji.len()) as u64,
            gstar,
        };
        record.audit()?;
        out.push(record);
    }
    Ok(out)
}

/// Per-component records bounding how many of its vertices see other
/// components, one H^c audit per colour.
pub fn verify_sum(dec: &Decomposition, h: &AbstractGraph, colors: &[u8]) -> Result<Vec<SumRecord>, LemmaViolation> {
    let adj = h.adjacency();
    let per: Vec<SumRecord> = (0..dec.components.len())
        .into_par_iter()
        .map(|i| {
            let comp = &dec.components[i];
            let nbrs = &adj[i];
            let hc = (1..=4u8)
                .map(|c| {
                    let mine: Vec<usize> = comp.vertices.iter().copied().filter(|&v| colors[v] == c).collect();
                    let mut edges = Vec::new();
                    for (slot, &j) in nbrs.iter().enumerate() {
                        for &v in dec.boundary(i, j) {
                            if colors[v] == c {
                                let local = mine.binary_search(&v).expect("coloured vertex");
                                edges.push((local, mine.len() + slot));
                            }
                        }
                    }
                    let vertices = mine.len() + nbrs.len();
                    let edge_count = edges.len() as u64;
                    let g = AbstractGraph::new(vertices, edges).expect("H^c is simple");
                    HcAudit { component: i, color: c, vertices: vertices as u64, edges: edge_count, planar: is_planar(&g) }
                })
                .collect();
            let boundary_sum: usize = nbrs.iter().map(|&j| dec.boundary(i, j).len()).sum();
            SumRecord {
                component: i,
                vertices: comp.vertices.len() as u64,
                boundary_sum: boundary_sum as u64,
                deg_h: nbrs.len() as u64,
                bound: 3 * comp.vertices.len() as u64 + 12 * nbrs.len() as u64,
                hc,
            }
        })
        .collect();
    for s in &per {
        s.audit()?;
    }
    Ok(per)
}

/// Runs the whole chain. A drawing with a non-independent or not planarly
/// connected crossing pair gets `hypothesis_ok = false` and no records.
pub fn certify(d: &Drawing) -> Result<Certificate, LemmaViolation> {
    let partition = partition_edges(d, d.crossings());
    let mut totals = Totals::new(d, partition.planar.len() as u64);
    if !check_pcc(d, true).holds {
        return Ok(Certificate {
            hypothesis_ok: false,
            faces: Vec::new(),
            components: Vec::new(),
            h: None,
            pairs: Vec::new(),
            sums: Vec::new(),
            totals,
        });
    }
    let dec = decompose(d, &partition);
    let data = face_data(d, &dec)?;
    let (components, faces) = verify_intra(d, &dec, &data)?;
    let h = build_h(&dec);
    let h_record = HRecord { vertices: h.vertex_count() as u64, edges: h.edge_count() as u64, planar: is_planar(&h) };
    h_record.audit()?;
    let colors = component_colorings(d, &dec)?;
    let pairs = verify_inter(d, &dec, &colors)?;
    let sums = verify_sum(&dec, &h, &colors)?;
    totals.intra_sum = components.iter().map(|c| c.intra).sum();
    totals.inter_sum = pairs.iter().map(|p| p.edges).sum();
    totals.boundary_total = sums.iter().map(|s| s.boundary_sum).sum();
    totals.h_edges = h_record.edges;
    totals.audit()?;
    Ok(Certificate { hypothesis_ok: true, faces, components, h: Some(h_record), pairs, sums, totals })
}
