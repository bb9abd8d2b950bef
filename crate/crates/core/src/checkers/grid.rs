//! k-grid search: two edge sets of size k where every edge of one crosses
//! every edge of the other and all 4k endpoints are distinct.
//!
//! The first side is grown one edge at a time in increasing order while the
//! set of edges crossing all of it (and avoiding its endpoints) is kept as a
//! bitset. A greedy vertex cover of that set bounds how many vertex-disjoint
//! edges it can still supply, which prunes most branches immediately.

use super::clique::{count, ones, set, BitGraph, Bits};
use super::{crossing_graph, CheckError, GRID_CAP};
use crate::drawing::{Drawing, EdgeId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridWitness {
    pub first: Vec<EdgeId>,
    pub second: Vec<EdgeId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GridOutcome {
    Found(GridWitness),
    NotFound,
    BudgetExhausted { expanded: u64 },
}

struct Search<'a> {
    g: BitGraph,
    ends: Vec<(usize, usize)>,
    /// edges incident to each vertex
    incident: Vec<Bits>,
    k: usize,
    budget: u64,
    expanded: u64,
    scratch: Vec<u32>,
    d: &'a Drawing,
}

enum Step {
    Found(Vec<usize>, Vec<usize>),
    Exhausted,
    Continue,
}

pub fn find_grid(d: &Drawing, k: usize, budget: u64) -> Result<GridOutcome, CheckError> {
    if k > GRID_CAP {
        return Err(CheckError::CapExceeded { requested: k, cap: GRID_CAP });
    }
    if k == 0 {
        return Ok(GridOutcome::Found(GridWitness { first: vec![], second: vec![] }));
    }
    let g = crossing_graph(d);
    let ends: Vec<(usize, usize)> = (0..d.edge_count()).map(|e| d.endpoints(e)).collect();
    let mut incident = vec![g.empty_set(); d.vertex_count()];
    for (e, &(a, b)) in ends.iter().enumerate() {
        set(&mut incident[a], e);
        set(&mut incident[b], e);
    }
    let mut s = Search {
        g,
        ends,
        incident,
        k,
        budget,
        expanded: 0,
        scratch: vec![0; d.vertex_count()],
        d,
    };
    Ok(s.run())
}

impl Search<'_> {
    fn run(&mut self) -> GridOutcome {
        let n = self.g.len();
        let candidates: Vec<usize> = (0..n).filter(|&e| self.g.degree(e) >= self.k).collect();
        for &first in &candidates {
            let (a, b) = self.ends[first];
            let common: Bits = self
                .g
                .row(first)
                .iter()
                .zip(self.g.above(first))
                .zip(self.incident[a].iter().zip(&self.incident[b]))
                .map(|((r, up), (ia, ib))| r & up & !ia & !ib)
                .collect();
            let mut side = vec![first];
            let mut used = vec![a, b];
            match self.grow(&mut side, &mut used, common) {
                Step::Found(x, y) => {
                    return GridOutcome::Found(GridWitness {
                        first: x.into_iter().map(|e| self.d.edge(e).id).collect(),
                        second: y.into_iter().map(|e| self.d.edge(e).id).collect(),
                    })
                }
                Step::Exhausted => return GridOutcome::BudgetExhausted { expanded: self.expanded },
                Step::Continue => {}
            }
        }
        GridOutcome::NotFound
    }

    fn tick(&mut self) -> bool {
        self.expanded += 1;
        self.expanded > self.budget
    }

    /// `common`: edges crossing every edge of `side`, vertex-disjoint from it.
    fn grow(&mut self, side: &mut Vec<usize>, used: &mut Vec<usize>, common: Bits) -> Step {
        if self.tick() {
            return Step::Exhausted;
        }
        if count(&common) < self.k || self.matching_bound(ones(&common), self.k) < self.k {
            return Step::Continue;
        }
        if side.len() == self.k {
            let mut chosen = Vec::new();
            let pool: Vec<usize> = ones(&common).collect();
            return match self.pick_disjoint(&pool, 0, used, &mut chosen) {
                Some(true) => Step::Found(side.clone(), chosen),
                Some(false) => Step::Continue,
                None => Step::Exhausted,
            };
        }
        let last = *side.last().expect("side is never empty");
        let mut next = Vec::new();
        for f in last + 1..self.g.len() {
            let (a, b) = self.ends[f];
            if used.contains(&a) || used.contains(&b) {
                continue;
            }
            let narrowed: Bits = common
                .iter()
                .zip(self.g.row(f))
                .zip(self.incident[a].iter().zip(&self.incident[b]))
                .map(|((c, r), (ia, ib))| c & r & !ia & !ib)
                .collect();
            if count(&narrowed) >= self.k {
                next.push((f, narrowed));
            }
        }
        let need = self.k - side.len();
        if self.matching_bound(next.iter().map(|(f, _)| *f), need) < need {
            return Step::Continue;
        }
        for (f, narrowed) in next {
            let (a, b) = self.ends[f];
            side.push(f);
            used.extend([a, b]);
            let step = self.grow(side, used, narrowed);
            side.pop();
            used.truncate(used.len() - 2);
            if !matches!(step, Step::Continue) {
                return step;
            }
        }
        Step::Continue
    }

    /// Upper bound on the number of pairwise vertex-disjoint edges among
    /// `edges`: size of a greedy vertex cover, cut off once it reaches `want`.
    fn matching_bound(&mut self, edges: impl Iterator<Item = usize>, want: usize) -> usize {
        let mut remaining: Vec<(usize, usize)> = edges.map(|e| self.ends[e]).collect();
        let mut cover = 0;
        while !remaining.is_empty() {
            if cover >= want {
                return cover;
            }
            for &(a, b) in &remaining {
                self.scratch[a] += 1;
                self.scratch[b] += 1;
            }
            let mut pick = remaining[0].0;
            for &(a, b) in &remaining {
                for v in [a, b] {
                    if self.scratch[v] > self.scratch[pick] || (self.scratch[v] == self.scratch[pick] && v < pick) {
                        pick = v;
                    }
                }
            }
            for &(a, b) in &remaining {
                self.scratch[a] = 0;
                self.scratch[b] = 0;
            }
            remaining.retain(|&(a, b)| a != pick && b != pick);
            cover += 1;
        }
        cover
    }

    /// Chooses `k` vertex-disjoint edges from `pool[from..]`. `None` when the
    /// budget runs out.
    fn pick_disjoint(
        &mut self,
        pool: &[usize],
        from: usize,
        used: &mut Vec<usize>,
        chosen: &mut Vec<usize>,
    ) -> Option<bool> {
        if chosen.len() == self.k {
            return Some(true);
        }
        if self.tick() {
            return None;
        }
        if pool.len() - from < self.k - chosen.len() {
            return Some(false);
        }
        for i in from..pool.len() {
            let e = pool[i];
            let (a, b) = self.ends[e];
            if used.contains(&a) || used.contains(&b) {
                continue;
            }
            chosen.push(e);
            used.extend([a, b]);
            let r = self.pick_disjoint(pool, i + 1, used, chosen);
            used.truncate(used.len() - 2);
            match r {
                Some(true) => return Some(true),
                None => {
                    chosen.pop();
                    return None;
                }
                Some(false) => {
                    chosen.pop();
                }
            }
        }
        Some(false)
    }
}

#[cfg(test)]
fn is_grid(d: &Drawing, first: &[usize], second: &[usize]) -> bool {
    let mut verts = std::collections::HashSet::new();
    for &e in first.iter().chain(second) {
        let (a, b) = d.endpoints(e);
        verts.insert(a);
        verts.insert(b);
    }
    verts.len() == 2 * (first.len() + second.len())
        && first.iter().all(|&e| second.iter().all(|&f| d.crossings().cross(e, f)))
}
