//! Proper 4-colouring of planar abstract graphs.
//!
//! Vertices are coloured greedily in reverse smallest-last order. A vertex
//! that sees all four colours triggers Kempe-chain swaps; if no swap frees a
//! colour the whole graph is handed to an exact backtracking search.

use super::{AbstractGraph, PlanarError};

/// Colours in `1..=4`, one per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    pub colors: Vec<u8>,
}

impl Coloring {
    pub fn is_proper(&self, g: &AbstractGraph) -> bool {
        self.colors.len() == g.vertex_count()
            && self.colors.iter().all(|&c| (1..=4).contains(&c))
            && g.edges().iter().all(|&(a, b)| self.colors[a] != self.colors[b])
    }

    pub fn class(&self, c: u8) -> Vec<usize> {
        (0..self.colors.len()).filter(|&v| self.colors[v] == c).collect()
    }
}

const BACKTRACK_LIMIT: u64 = 20_000_000;

pub fn four_color(g: &AbstractGraph) -> Result<Coloring, PlanarError> {
    let adj = g.adjacency();
    let n = adj.len();
    let mut colors = vec![0u8; n];
    let mut greedy_ok = true;
    for &v in smallest_last(&adj).iter().rev() {
        if let Some(c) = free_color(&adj, &colors, v) {
            colors[v] = c;
        } else if let Some(c) = kempe_repair(&adj, &mut colors, v) {
            colors[v] = c;
        } else {
            greedy_ok = false;
            break;
        }
    }
    if !greedy_ok {
        colors = backtrack(&adj).ok_or(PlanarError::SearchFailed)?;
    }
    let out = Coloring { colors };
    debug_assert!(out.is_proper(g));
    Ok(out)
}

fn smallest_last(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    let mut degree: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n).filter(|&v| !removed[v]).min_by_key(|&v| (degree[v], v)).expect("vertex left");
        removed[v] = true;
        order.push(v);
        for &w in &adj[v] {
            if !removed[w] {
                degree[w] -= 1;
            }
        }
    }
    order
}

fn free_color(adj: &[Vec<usize>], colors: &[u8], v: usize) -> Option<u8> {
    let mut seen = [false; 5];
    for &w in &adj[v] {
        seen[colors[w] as usize] = true;
    }
    (1..=4).find(|&c| !seen[c as usize])
}

/// Component of `start` in the subgraph induced by colours `a` and `b`.
fn kempe_chain(adj: &[Vec<usize>], colors: &[u8], start: usize, a: u8, b: u8) -> Vec<usize> {
    let mut chain = vec![start];
    let mut seen = vec![false; adj.len()];
    seen[start] = true;
    let mut i = 0;
    while i < chain.len() {
        for &w in &adj[chain[i]] {
            if !seen[w] && (colors[w] == a || colors[w] == b) {
                seen[w] = true;
                chain.push(w);
            }
        }
        i += 1;
    }
    chain
}

fn swap(colors: &mut [u8], chain: &[usize], a: u8, b: u8) {
    for &u in chain {
        colors[u] = if colors[u] == a { b } else { a };
    }
}

fn kempe_repair(adj: &[Vec<usize>], colors: &mut [u8], v: usize) -> Option<u8> {
    for a in 1..=4u8 {
        for b in 1..=4u8 {
            if a == b {
                continue;
            }
            for &u in &adj[v] {
                if colors[u] != a {
                    continue;
                }
                let chain = kempe_chain(adj, colors, u, a, b);
                swap(colors, &chain, a, b);
                if let Some(c) = free_color(adj, colors, v) {
                    return Some(c);
                }
                swap(colors, &chain, a, b);
            }
        }
    }
    None
}

fn backtrack(adj: &[Vec<usize>]) -> Option<Vec<u8>> {
    let n = adj.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(adj[v].len()), v));
    let mut colors = vec![0u8; n];
    let mut nodes = 0u64;
    fn go(adj: &[Vec<usize>], order: &[usize], i: usize, colors: &mut [u8], nodes: &mut u64) -> Option<bool> {
        if i == order.len() {
            return Some(true);
        }
        *nodes += 1;
        if *nodes > BACKTRACK_LIMIT {
            return None;
        }
        let v = order[i];
        for c in 1..=4u8 {
            if adj[v].iter().all(|&w| colors[w] != c) {
                colors[v] = c;
                if go(adj, order, i + 1, colors, nodes)? {
                    return Some(true);
                }
                colors[v] = 0;
            }
        }
        Some(false)
    }
    match go(adj, &order, 0, &mut colors, &mut nodes) {
        Some(true) => Some(colors),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn colours_k4_and_wheel() {
        let g = AbstractGraph::complete(4);
        let c = four_color(&g).unwrap();
        assert!(c.is_proper(&g));
        let mut wheel: Vec<(usize, usize)> = (1..=7).map(|i| (0, i)).collect();
        wheel.extend((1..=7).map(|i| (i, i % 7 + 1)));
        let g = AbstractGraph::new(8, wheel).unwrap();
        assert!(four_color(&g).unwrap().is_proper(&g));
    }

    #[test]
    fn k5_has_no_four_colouring() {
        assert_eq!(four_color(&AbstractGraph::complete(5)), Err(PlanarError::SearchFailed));
    }

    #[test]
    fn empty_graph() {
        let g = AbstractGraph::new(0, []).unwrap();
        assert_eq!(four_color(&g).unwrap().colors, Vec::<u8>::new());
    }

    #[test]
    fn kempe_chain_swap_is_an_involution() {
        let g = AbstractGraph::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let adj = g.adjacency();
        let mut colors = vec![1, 2, 1, 3];
        let chain = kempe_chain(&adj, &colors, 0, 1, 2);
        assert_eq!(chain, vec![0, 1, 2]);
        swap(&mut colors, &chain, 1, 2);
        assert_eq!(colors, vec![2, 1, 2, 3]);
        swap(&mut colors, &chain, 1, 2);
        assert_eq!(colors, vec![1, 2, 1, 3]);
    }
}
