//! Property checkers: planarly connected crossings, k-PCC, pairwise
//! crossing families and grids.

pub mod clique;
mod grid;

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::drawing::{partition_edges, Drawing, EdgeId, EdgePartition};
pub use clique::BitGraph;
pub use grid::{find_grid, GridOutcome, GridWitness};

/// Largest family size accepted by [`find_pairwise_crossing`].
pub const PAIRWISE_CAP: usize = 12;
/// Largest grid size accepted by [`find_grid`].
pub const GRID_CAP: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error("requested size {requested} exceeds the search cap {cap}")]
    CapExceeded { requested: usize, cap: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ViolationReason {
    AdjacentCrossing,
    NotPlanarlyConnected,
}

impl fmt::Display for ViolationReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ViolationReason::AdjacentCrossing => f.write_str("AdjacentCrossing"),
            ViolationReason::NotPlanarlyConnected => f.write_str("NotPlanarlyConnected"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PccViolation {
    pub pair: (EdgeId, EdgeId),
    pub reason: ViolationReason,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PccReport {
    pub holds: bool,
    pub violations: Vec<PccViolation>,
}

impl PccReport {
    fn from_violations(violations: Vec<PccViolation>) -> Self {
        PccReport { holds: violations.is_empty(), violations }
    }
}

/// Unordered vertex pairs joined by a crossing-free edge.
fn planar_pairs(d: &Drawing, p: &EdgePartition) -> HashSet<(usize, usize)> {
    p.planar
        .iter()
        .map(|&e| {
            let (a, b) = d.endpoints(e);
            (a.min(b), a.max(b))
        })
        .collect()
}

/// Checks that every crossing pair is planarly connected. Pairs sharing a
/// vertex are reported as [`ViolationReason::AdjacentCrossing`] when
/// `require_independent` is set and skipped otherwise.
pub fn check_pcc(d: &Drawing, require_independent: bool) -> PccReport {
    let partition = partition_edges(d, d.crossings());
    let joined = planar_pairs(d, &partition);
    let linked = |x: usize, y: usize| joined.contains(&(x.min(y), x.max(y)));
    let mut violations = Vec::new();
    for ((e, f), _) in d.crossings().pairs() {
        let pair = (d.edge(e).id, d.edge(f).id);
        if d.shares_vertex(e, f) {
            if require_independent {
                violations.push(PccViolation { pair, reason: ViolationReason::AdjacentCrossing });
            }
            continue;
        }
        let (a, b) = d.endpoints(e);
        let (c, dd) = d.endpoints(f);
        if !(linked(a, c) || linked(a, dd) || linked(b, c) || linked(b, dd)) {
            violations.push(PccViolation { pair, reason: ViolationReason::NotPlanarlyConnected });
        }
    }
    PccReport::from_violations(violations)
}

/// Every crossing pair must either share a vertex or be joined by a path of
/// at most `k` crossing-free edges. `k = 1` coincides with
/// `check_pcc(d, false)`.
pub fn check_k_pcc(d: &Drawing, k: usize) -> PccReport {
    let partition = partition_edges(d, d.crossings());
    let mut skeleton = vec![Vec::new(); d.vertex_count()];
    for &e in &partition.planar {
        let (a, b) = d.endpoints(e);
        skeleton[a].push(b);
        skeleton[b].push(a);
    }
    let mut cache: HashMap<usize, Vec<usize>> = HashMap::new();
    let mut violations = Vec::new();
    for ((e, f), _) in d.crossings().pairs() {
        if d.shares_vertex(e, f) {
            continue;
        }
        let (a, b) = d.endpoints(e);
        let (c, dd) = d.endpoints(f);
        let mut best = usize::MAX;
        for s in [a, b] {
            let dist = cache.entry(s).or_insert_with(|| bounded_bfs(&skeleton, s, k));
            best = best.min(dist[c]).min(dist[dd]);
        }
        if best > k {
            violations.push(PccViolation {
                pair: (d.edge(e).id, d.edge(f).id),
                reason: ViolationReason::NotPlanarlyConnected,
            });
        }
    }
    PccReport::from_violations(violations)
}

fn bounded_bfs(adj: &[Vec<usize>], source: usize, limit: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; adj.len()];
    dist[source] = 0;
    let mut queue = VecDeque::from([source]);
    while let Some(v) = queue.pop_front() {
        if dist[v] == limit {
            continue;
        }
        for &w in &adj[v] {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// The crossing graph: one vertex per edge of the drawing, adjacent when the
/// edges cross.
pub fn crossing_graph(d: &Drawing) -> BitGraph {
    BitGraph::from_edges(d.edge_count(), d.crossings().pairs().map(|(p, _)| p))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossingFamilyWitness {
    pub edges: Vec<EdgeId>,
}

/// Searches for `k` pairwise crossing edges. The witness is the first such
/// family in edge order.
pub fn find_pairwise_crossing(
    d: &Drawing,
    k: usize,
) -> Result<Option<CrossingFamilyWitness>, CheckError> {
    if k > PAIRWISE_CAP {
        return Err(CheckError::CapExceeded { requested: k, cap: PAIRWISE_CAP });
    }
    let g = crossing_graph(d);
    Ok(g.find_clique(k).map(|family| CrossingFamilyWitness {
        edges: family.into_iter().map(|e| d.edge(e).id).collect(),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drawing::{validate_drawing, RawDrawing};

    fn cross_only() -> Drawing {
        let mut r = RawDrawing::new();
        r.add_vertex(0, 0, 0).add_vertex(1, 4, 4).add_vertex(2, 0, 4).add_vertex(3, 4, 0);
        r.add_straight(0, 0, 1).add_straight(1, 2, 3);
        validate_drawing(&r).unwrap()
    }

    #[test]
    fn cross_only_is_not_pcc() {
        let d = cross_only();
        let r = check_pcc(&d, true);
        assert!(!r.holds);
        assert_eq!(
            r.violations,
            vec![PccViolation {
                pair: (EdgeId(0), EdgeId(1)),
                reason: ViolationReason::NotPlanarlyConnected
            }]
        );
        assert!(!check_k_pcc(&d, 5).holds);
        assert!(!check_k_pcc(&d, 0).holds);
    }

    #[test]
    fn adjacent_crossing_handling() {
        let mut r = RawDrawing::new();
        r.add_vertex(0, 0, 0).add_vertex(1, 10, 0).add_vertex(2, 10, 2);
        r.add_straight(0, 0, 1);
        r.add_bent(1, 0, 2, &[crate::geom::Point::new(5, -2)]);
        let d = validate_drawing(&r).unwrap();
        let strict = check_pcc(&d, true);
        assert_eq!(strict.violations.len(), 1);
        assert_eq!(strict.violations[0].reason, ViolationReason::AdjacentCrossing);
        assert!(check_pcc(&d, false).holds);
        assert!(check_k_pcc(&d, 0).holds);
    }

    #[test]
    fn plane_drawing_is_vacuously_pcc() {
        let mut r = RawDrawing::new();
        r.add_vertex(0, 0, 0).add_vertex(1, 3, 0).add_vertex(2, 3, 3);
        r.add_straight(0, 0, 1).add_straight(1, 1, 2).add_straight(2, 2, 0);
        let d = validate_drawing(&r).unwrap();
        assert!(check_pcc(&d, true).holds);
        assert!(check_k_pcc(&d, 0).holds);
        assert_eq!(find_pairwise_crossing(&d, 2).unwrap(), None);
    }

    #[test]
    fn pairwise_cap() {
        let d = cross_only();
        assert_eq!(
            find_pairwise_crossing(&d, 13),
            Err(CheckError::CapExceeded { requested: 13, cap: PAIRWISE_CAP })
        );
        assert_eq!(
            find_pairwise_crossing(&d, 2).unwrap().unwrap().edges,
            vec![EdgeId(0), EdgeId(1)]
        );
    }

    #[test]
    fn path_connection_needs_enough_hops() {
        // two crossing diagonals whose endpoints are linked only through a
        // three-edge path a - x - y - c
        let mut r = RawDrawing::new();
        r.add_vertex(0, 0, 0).add_vertex(1, 4, 4).add_vertex(2, 0, 4).add_vertex(3, 4, 0);
        r.add_vertex(4, -4, -4).add_vertex(5, -4, 8);
        r.add_straight(0, 0, 1).add_straight(1, 2, 3);
        r.add_straight(2, 0, 4).add_straight(3, 4, 5).add_straight(4, 5, 2);
        let d = validate_drawing(&r).unwrap();
        assert!(!check_k_pcc(&d, 1).holds);
        assert!(!check_k_pcc(&d, 2).holds);
        assert!(check_k_pcc(&d, 3).holds);
        assert!(check_k_pcc(&d, 4).holds);
        assert_eq!(check_k_pcc(&d, 1), check_pcc(&d, false));
    }
}
