//! Dense bitset graphs with branch-and-bound clique search.
//!
//! Vertices are visited in increasing index order and every branch only
//! extends with larger indices, so the first clique found is the
//! lexicographically smallest one.

#[derive(Debug, Clone)]
pub struct BitGraph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
}

pub(crate) type Bits = Vec<u64>;

pub(crate) fn count(bits: &[u64]) -> usize {
    bits.iter().map(|w| w.count_ones() as usize).sum()
}

pub(crate) fn ones(bits: &[u64]) -> impl Iterator<Item = usize> + '_ {
    bits.iter().enumerate().flat_map(|(i, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                return None;
            }
            let b = w.trailing_zeros() as usize;
            w &= w - 1;
            Some(i * 64 + b)
        })
    })
}

pub(crate) fn first(bits: &[u64]) -> Option<usize> {
    bits.iter().position(|&w| w != 0).map(|i| i * 64 + bits[i].trailing_zeros() as usize)
}

pub(crate) fn set(bits: &mut [u64], i: usize) {
    bits[i / 64] |= 1 << (i % 64);
}

pub(crate) fn clear(bits: &mut [u64], i: usize) {
    bits[i / 64] &= !(1 << (i % 64));
}

pub(crate) fn test(bits: &[u64], i: usize) -> bool {
    bits[i / 64] >> (i % 64) & 1 == 1
}

pub(crate) fn is_empty(bits: &[u64]) -> bool {
    bits.iter().all(|&w| w == 0)
}

impl BitGraph {
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        BitGraph { n, words, rows: vec![0; n * words] }
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut g = BitGraph::new(n);
        for (a, b) in edges {
            g.add_edge(a, b);
        }
        g
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        assert!(a != b, "self loop");
        let w = self.words;
        set(&mut self.rows[a * w..(a + 1) * w], b);
        set(&mut self.rows[b * w..(b + 1) * w], a);
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        test(self.row(a), b)
    }

    pub(crate) fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    pub fn degree(&self, v: usize) -> usize {
        count(self.row(v))
    }

    pub(crate) fn empty_set(&self) -> Bits {
        vec![0; self.words]
    }

    pub(crate) fn full_set(&self) -> Bits {
        let mut s = self.empty_set();
        for v in 0..self.n {
            set(&mut s, v);
        }
        s
    }

    /// Vertices strictly greater than `v`.
    pub(crate) fn above(&self, v: usize) -> Bits {
        let mut s = self.empty_set();
        for i in v + 1..self.n {
            set(&mut s, i);
        }
        s
    }

    /// Vertices surviving repeated removal of vertices with fewer than
    /// `min_degree` surviving neighbours.
    pub(crate) fn core(&self, min_degree: usize) -> Bits {
        let mut alive = self.full_set();
        let mut deg: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        let mut stack: Vec<usize> = (0..self.n).filter(|&v| deg[v] < min_degree).collect();
        for &v in &stack {
            clear(&mut alive, v);
        }
        while let Some(v) = stack.pop() {
            for u in ones(self.row(v)).collect::<Vec<_>>() {
                if test(&alive, u) {
                    deg[u] -= 1;
                    if deg[u] < min_degree {
                        clear(&mut alive, u);
                        stack.push(u);
                    }
                }
            }
        }
        alive
    }

    /// Greedy sequential colouring of `p`; returns the number of colour
    /// classes, an upper bound on the clique number of `p`.
    fn colour_bound(&self, p: &[u64], stop_at: usize) -> usize {
        let mut rest = p.to_vec();
        let mut colours = 0;
        while !is_empty(&rest) {
            colours += 1;
            if colours >= stop_at {
                return colours;
            }
            let mut cand = rest.clone();
            while let Some(v) = first(&cand) {
                clear(&mut rest, v);
                clear(&mut cand, v);
                for (c, r) in cand.iter_mut().zip(self.row(v)) {
                    *c &= !r;
                }
            }
        }
        colours
    }

    /// Lexicographically first clique of size `k`, if any.
    pub fn find_clique(&self, k: usize) -> Option<Vec<usize>> {
        if k == 0 {
            return Some(Vec::new());
        }
        let alive = self.core(k - 1);
        let mut r = Vec::with_capacity(k);
        for v in ones(&alive).collect::<Vec<_>>() {
            let p: Bits = self
                .row(v)
                .iter()
                .zip(&alive)
                .zip(self.above(v))
                .map(|((a, b), c)| a & b & c)
                .collect();
            r.push(v);
            if self.extend(&mut r, p, k) {
                return Some(r);
            }
            r.pop();
        }
        None
    }

    fn extend(&self, r: &mut Vec<usize>, mut p: Bits, k: usize) -> bool {
        if r.len() == k {
            return true;
        }
        let need = k - r.len();
        if count(&p) < need || self.colour_bound(&p, need) < need {
            return false;
        }
        while let Some(u) = first(&p) {
            clear(&mut p, u);
            let next: Bits = p.iter().zip(self.row(u)).map(|(a, b)| a & b).collect();
            r.push(u);
            if self.extend(r, next, k) {
                return true;
            }
            r.pop();
            if count(&p) < need {
                break;
            }
        }
        false
    }

    /// A maximum clique, or the first clique of size `cap` once one exists.
    pub fn max_clique(&self, cap: usize) -> Vec<usize> {
        let mut best = Vec::new();
        if self.n == 0 || cap == 0 {
            return best;
        }
        let mut r = Vec::new();
        self.expand_max(&mut r, self.full_set(), &mut best, cap);
        best.sort_unstable();
        best
    }

    fn expand_max(&self, r: &mut Vec<usize>, mut p: Bits, best: &mut Vec<usize>, cap: usize) {
        if is_empty(&p) || r.len() >= cap {
            if r.len() > best.len() {
                *best = r.clone();
            }
            return;
        }
        // colour classes; vertices taken in reverse colour order
        let mut order = Vec::new();
        let mut rest = p.clone();
        let mut colour = 0;
        while !is_empty(&rest) {
            colour += 1;
            let mut cand = rest.clone();
            while let Some(v) = first(&cand) {
                clear(&mut rest, v);
                clear(&mut cand, v);
                for (c, row) in cand.iter_mut().zip(self.row(v)) {
                    *c &= !row;
                }
                order.push((v, colour));
            }
        }
        for &(v, c) in order.iter().rev() {
            if r.len() + c <= best.len() || best.len() >= cap {
                return;
            }
            let next: Bits = p.iter().zip(self.row(v)).map(|(a, b)| a & b).collect();
            r.push(v);
            self.expand_max(r, next, best, cap);
            r.pop();
            clear(&mut p, v);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_max(g: &BitGraph) -> usize {
        let n = g.len();
        let mut best = 0;
        for mask in 0u32..(1 << n) {
            let vs: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            let ok = vs.iter().enumerate().all(|(i, &a)| vs[i + 1..].iter().all(|&b| g.has_edge(a, b)));
            if ok {
                best = best.max(vs.len());
            }
        }
        best
    }

    #[test]
    fn complete_graph() {
        let n = 6;
        let g = BitGraph::from_edges(n, (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))));
        assert_eq!(g.find_clique(6), Some(vec![0, 1, 2, 3, 4, 5]));
        assert_eq!(g.find_clique(7), None);
        assert_eq!(g.max_clique(10).len(), 6);
        assert_eq!(g.max_clique(3).len(), 3);
    }

    #[test]
    fn lexicographic_first() {
        // two triangles: {1,2,3} and {0,4,5}
        let g = BitGraph::from_edges(6, [(1, 2), (2, 3), (1, 3), (0, 4), (4, 5), (0, 5)]);
        assert_eq!(g.find_clique(3), Some(vec![0, 4, 5]));
    }

    #[test]
    fn matches_brute_force_on_pseudorandom_graphs() {
        let mut state = 0x9e3779b97f4a7c15u64;
        for _ in 0..60 {
            let n = 12;
            let mut g = BitGraph::new(n);
            for a in 0..n {
                for b in a + 1..n {
                    state ^= state << 13;
                    state ^= state >> 7;
                    state ^= state << 17;
                    if state % 100 < 55 {
                        g.add_edge(a, b);
                    }
                }
            }
            let omega = brute_max(&g);
            assert_eq!(g.max_clique(usize::MAX).len(), omega);
            assert!(g.find_clique(omega).is_some());
            assert!(g.find_clique(omega + 1).is_none());
        }
    }

    #[test]
    fn bitset_helpers() {
        let mut b = vec![0u64; 2];
        set(&mut b, 3);
        set(&mut b, 70);
        assert_eq!(ones(&b).collect::<Vec<_>>(), vec![3, 70]);
        assert_eq!(count(&b), 2);
        clear(&mut b, 3);
        assert!(!test(&b, 3));
    }
}
