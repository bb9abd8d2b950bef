//! Drawing generators: the 9n - 54 lower-bound construction, a 2-PCC drawing
//! of K_n, and a greedy random PCC generator.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::drawing::{validate_drawing, Drawing, RawDrawing};
use crate::geom::{classify_segments, orient, IntersectionKind, Orientation, Point, RationalPoint, Segment};
use crate::planar::AbstractGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("n = {n} is below the minimum {min}")]
    TooSmall { n: usize, min: usize },
    #[error("n = {n} is above the maximum {max}")]
    TooLarge { n: usize, max: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct GeneratorSeed(pub u64);

impl GeneratorSeed {
    fn rng(self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.0)
    }
}

pub const TOTH_MIN: usize = 10;
pub const STAR_MIN: usize = 3;
pub const STAR_MAX: usize = 12;

/// Raw form of [`toth_construction`].
///
/// Vertices `0..n-6` sit on the y-axis at `(0, 4i)`, followed by three points
/// far to the left and three far to the right. Edges in id order: axis edges,
/// skip-one arcs bending left, skip-two arcs bending right, the six stars,
/// and the two side triangles.
pub fn toth_raw(n: usize) -> Result<RawDrawing, ConstructError> {
    if n < TOTH_MIN {
        return Err(ConstructError::TooSmall { n, min: TOTH_MIN });
    }
    let m = (n - 6) as i64;
    let x = 8 * m + 16;
    let mut r = RawDrawing::new();
    for i in 0..m {
        r.add_vertex(i as u32, 0, 4 * i);
    }
    let side_y = [2, 6, 4 * m + 10];
    let left: Vec<u32> = (0..3).map(|k| m as u32 + k).collect();
    let right: Vec<u32> = (3..6).map(|k| m as u32 + k).collect();
    for (k, &y) in side_y.iter().enumerate() {
        r.add_vertex(left[k], -x, y);
    }
    for (k, &y) in side_y.iter().enumerate() {
        r.add_vertex(right[k], x, y);
    }

    let mut id = 0u32;
    let mut next = || {
        id += 1;
        id - 1
    };
    for i in 0..m - 1 {
        r.add_straight(next(), i as u32, i as u32 + 1);
    }
    for i in 0..m - 2 {
        r.add_bent(next(), i as u32, i as u32 + 2, &[Point::new(-2, 4 * i + 4)]);
    }
    for i in 0..m - 3 {
        r.add_bent(next(), i as u32, i as u32 + 3, &[Point::new(2, 4 * i + 6)]);
    }
    for &s in left.iter().chain(&right) {
        for i in 0..m {
            r.add_straight(next(), s, i as u32);
        }
    }
    for (side, dx) in [(&left, -4i64), (&right, 4)] {
        r.add_straight(next(), side[0], side[1]);
        r.add_straight(next(), side[1], side[2]);
        r.add_bent(next(), side[0], side[2], &[Point::new(dx.signum() * x + dx, 2 * m + 6)]);
    }
    Ok(r)
}

/// Simple PCC drawing with `n` vertices and `9n - 54` edges.
pub fn toth_construction(n: usize) -> Result<Drawing, ConstructError> {
    let raw = toth_raw(n)?;
    Ok(validate_drawing(&raw).expect("construction coordinates are valid"))
}

/// K_n drawn with vertex 0 far below a parabola carrying the other vertices,
/// so the star at vertex 0 is crossing-free and every crossing pair is joined
/// through it.
pub fn star_complete(n: usize, seed: GeneratorSeed) -> Result<Drawing, ConstructError> {
    if n < STAR_MIN {
        return Err(ConstructError::TooSmall { n, min: STAR_MIN });
    }
    if n > STAR_MAX {
        return Err(ConstructError::TooLarge { n, max: STAR_MAX });
    }
    const SPAN: i64 = 100;
    let mut rng = seed.rng();
    loop {
        let mut xs: Vec<i64> = Vec::new();
        while xs.len() < n - 1 {
            let x = rng.gen_range(-SPAN..=SPAN);
            if !xs.contains(&x) {
                xs.push(x);
            }
        }
        xs.sort_unstable();
        let mut r = RawDrawing::new();
        r.add_vertex(0, 0, -(SPAN * SPAN * SPAN + SPAN * SPAN + 1));
        for (i, &x) in xs.iter().enumerate() {
            r.add_vertex(i as u32 + 1, x, x * x);
        }
        let mut id = 0;
        for a in 0..n as u32 {
            for b in a + 1..n as u32 {
                r.add_straight(id, a, b);
                id += 1;
            }
        }
        if let Ok(d) = validate_drawing(&r) {
            return Ok(d);
        }
    }
}

/// Straight-line drawing grown greedily from random points in general
/// position. Candidate edges are tried shortest first (ties by endpoint
/// pair); one is kept iff the drawing stays valid and PCC with independent
/// crossing pairs. Stops after `m_target` edges when given.
pub fn random_pcc_greedy(n: usize, m_target: Option<usize>, seed: GeneratorSeed) -> Result<Drawing, ConstructError> {
    if n < 3 {
        return Err(ConstructError::TooSmall { n, min: 3 });
    }
    let mut rng = seed.rng();
    let grid = 64 * n as i64;
    let mut pts: Vec<Point> = Vec::with_capacity(n);
    while pts.len() < n {
        let p = Point::new(rng.gen_range(0..grid), rng.gen_range(0..grid));
        let collinear = pts.contains(&p)
            || (0..pts.len()).any(|i| {
                (i + 1..pts.len()).any(|j| orient(pts[i], pts[j], p) == Ok(Orientation::Collinear))
            });
        if !collinear {
            pts.push(p);
        }
    }

    let mut candidates: Vec<(i64, usize, usize)> = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let (dx, dy) = (pts[a].x - pts[b].x, pts[a].y - pts[b].y);
            candidates.push((dx * dx + dy * dy, a, b));
        }
    }
    candidates.sort_unstable();

    let mut g = Greedy { pts: &pts, edges: Vec::new(), pairs: Vec::new(), points: HashSet::new() };
    let limit = m_target.unwrap_or(usize::MAX);
    for &(_, a, b) in &candidates {
        if g.edges.len() >= limit {
            break;
        }
        g.try_add(a, b);
    }

    let mut r = RawDrawing::new();
    for (i, p) in pts.iter().enumerate() {
        r.add_vertex(i as u32, p.x, p.y);
    }
    for (i, &(a, b)) in g.edges.iter().enumerate() {
        r.add_straight(i as u32, a as u32, b as u32);
    }
    Ok(validate_drawing(&r).expect("greedy drawing is valid"))
}

struct Greedy<'a> {
    pts: &'a [Point],
    edges: Vec<(usize, usize)>,
    pairs: Vec<(usize, usize)>,
    points: HashSet<RationalPoint>,
}

impl Greedy<'_> {
    fn try_add(&mut self, a: usize, b: usize) {
        let s = Segment::new(self.pts[a], self.pts[b]).expect("distinct points");
        let e = self.edges.len();
        let mut new_pairs = Vec::new();
        let mut new_points = Vec::new();
        for (f, &(c, d)) in self.edges.iter().enumerate() {
            let t = Segment::new(self.pts[c], self.pts[d]).expect("distinct points");
            match classify_segments(&s, &t).expect("coordinates in range") {
                IntersectionKind::Disjoint | IntersectionKind::EndpointTouch(_) => {}
                IntersectionKind::ProperCrossing(p) => {
                    if a == c || a == d || b == c || b == d {
                        return;
                    }
                    if self.points.contains(&p) || new_points.contains(&p) {
                        return;
                    }
                    new_pairs.push((f, e));
                    new_points.push(p);
                }
                IntersectionKind::EndpointOnInterior(_) | IntersectionKind::Overlap => return,
            }
        }
        self.edges.push((a, b));
        let mut crossed = vec![false; self.edges.len()];
        for &(x, y) in self.pairs.iter().chain(&new_pairs) {
            crossed[x] = true;
            crossed[y] = true;
        }
        let joined: HashSet<(usize, usize)> = self
            .edges
            .iter()
            .enumerate()
            .filter(|&(i, _)| !crossed[i])
            .map(|(_, &(p, q))| (p.min(q), p.max(q)))
            .collect();
        let linked = |x: usize, y: usize| joined.contains(&(x.min(y), x.max(y)));
        let ok = self.pairs.iter().chain(&new_pairs).all(|&(x, y)| {
            let (p, q) = self.edges[x];
            let (u, v) = self.edges[y];
            linked(p, u) || linked(p, v) || linked(q, u) || linked(q, v)
        });
        if !ok {
            self.edges.pop();
            return;
        }
        self.pairs.extend(new_pairs);
        self.points.extend(new_points);
    }
}

/// Random maximal planar graph on `n >= 3` vertices: start from a triangle
/// and repeatedly split a random face with a new vertex. Always `3n - 6`
/// edges.
pub fn random_triangulation(n: usize, seed: GeneratorSeed) -> Result<AbstractGraph, ConstructError> {
    if n < 3 {
        return Err(ConstructError::TooSmall { n, min: 3 });
    }
    let mut rng = seed.rng();
    let mut faces = vec![[0, 1, 2], [0, 2, 1]];
    let mut edges = vec![(0, 1), (1, 2), (0, 2)];
    for v in 3..n {
        let i = rng.gen_range(0..faces.len());
        let [a, b, c] = faces.swap_remove(i);
        faces.extend([[a, b, v], [b, c, v], [c, a, v]]);
        edges.extend([(a, v), (b, v), (c, v)]);
    }
    Ok(AbstractGraph::new(n, edges).expect("triangulation is simple"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::checkers::{check_k_pcc, check_pcc};
    use crate::drawing::is_simple;

    #[test]
    fn toth_counts() {
        assert_eq!(toth_construction(10).unwrap().edge_count(), 36);
        assert_eq!(toth_construction(16).unwrap().edge_count(), 90);
        assert_eq!(toth_raw(9).unwrap_err(), ConstructError::TooSmall { n: 9, min: 10 });
    }

    #[test]
    fn toth_is_simple_pcc() {
        for n in [10, 11, 12, 13, 20, 37] {
            let d = toth_construction(n).unwrap();
            assert_eq!(d.vertex_count(), n);
            assert!(is_simple(&d).simple, "n = {n}");
            let r = check_pcc(&d, true);
            assert!(r.holds, "n = {n}: {:?}", r.violations.first());
        }
    }

    #[test]
    fn star_is_two_pcc() {
        for n in 3..=8 {
            let d = star_complete(n, GeneratorSeed(n as u64)).unwrap();
            assert_eq!(d.edge_count(), n * (n - 1) / 2);
            assert!(check_k_pcc(&d, 2).holds);
            assert!(is_simple(&d).simple);
        }
        assert!(star_complete(13, GeneratorSeed(0)).is_err());
    }

    #[test]
    fn greedy_is_deterministic_pcc() {
        let a = random_pcc_greedy(20, None, GeneratorSeed(7)).unwrap();
        let b = random_pcc_greedy(20, None, GeneratorSeed(7)).unwrap();
        assert_eq!(a.to_raw(), b.to_raw());
        assert!(check_pcc(&a, true).holds);
        let t = random_pcc_greedy(3, None, GeneratorSeed(1)).unwrap();
        assert_eq!(t.edge_count(), 3);
        let capped = random_pcc_greedy(20, Some(10), GeneratorSeed(7)).unwrap();
        assert_eq!(capped.edge_count(), 10);
    }
}
