use proptest::prelude::*;

use pcc_core::checkers::{check_k_pcc, check_pcc};
use pcc_core::construct::{random_pcc_greedy, random_triangulation, star_complete, GeneratorSeed};
use pcc_core::drawing::{validate_drawing, EdgeId, RawDrawing, VertexId};
use pcc_core::format::{parse_drawing, serialize_drawing};
use pcc_core::geom::{classify_segments, orient, IntersectionKind, Orientation, Point, Segment};
use pcc_core::planar::{four_color, is_planar, AbstractGraph};

const SMALL: i64 = 1 << 20;

fn point() -> impl Strategy<Value = Point> {
    (-SMALL..SMALL, -SMALL..SMALL).prop_map(|(x, y)| Point::new(x, y))
}

fn flip(o: Orientation) -> Orientation {
    match o {
        Orientation::Left => Orientation::Right,
        Orientation::Right => Orientation::Left,
        Orientation::Collinear => Orientation::Collinear,
    }
}

fn same_kind(a: &IntersectionKind, b: &IntersectionKind) -> bool {
    std::mem::discriminant(a) == std::mem::discriminant(b)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn orient_symmetries(p in point(), q in point(), r in point()) {
        let o = orient(p, q, r).unwrap();
        prop_assert_eq!(orient(q, p, r).unwrap(), flip(o));
        prop_assert_eq!(orient(q, r, p).unwrap(), o);
    }

    #[test]
    fn orient_agrees_with_floats(p in point(), q in point(), r in point()) {
        // |coordinates| < 2^20 keeps the float determinant exact
        let det = (q.x - p.x) as f64 * (r.y - p.y) as f64 - (q.y - p.y) as f64 * (r.x - p.x) as f64;
        let want = if det > 0.0 {
            Orientation::Left
        } else if det < 0.0 {
            Orientation::Right
        } else {
            Orientation::Collinear
        };
        prop_assert_eq!(orient(p, q, r).unwrap(), want);
    }

    #[test]
    fn classification_is_symmetric(a in point(), b in point(), c in point(), d in point()) {
        prop_assume!(a != b && c != d);
        let s = Segment::new(a, b).unwrap();
        let t = Segment::new(c, d).unwrap();
        let st = classify_segments(&s, &t).unwrap();
        let ts = classify_segments(&t, &s).unwrap();
        prop_assert!(same_kind(&st, &ts));
        if let (IntersectionKind::ProperCrossing(x), IntersectionKind::ProperCrossing(y)) = (&st, &ts) {
            prop_assert_eq!(x, y);
            // the rational point lies on both supporting lines
            for (p, q) in [(a, b), (c, d)] {
                let lhs = (q.x - p.x) as i128 * (x.y - p.y as i128 * x.den) - (q.y - p.y) as i128 * (x.x - p.x as i128 * x.den);
                prop_assert_eq!(lhs, 0);
            }
        }
    }

    #[test]
    fn convex_chords_cross_iff_interleaved(
        xs in proptest::collection::btree_set(-200i64..200, 4..10),
        picks in proptest::collection::vec((0usize..100, 0usize..100), 2..8),
    ) {
        let xs: Vec<i64> = xs.into_iter().collect();
        let n = xs.len();
        let pts: Vec<Point> = xs.iter().map(|&x| Point::new(x, x * x)).collect();
        let chords: Vec<(usize, usize)> = picks
            .into_iter()
            .map(|(a, b)| (a % n, b % n))
            .filter(|(a, b)| a != b)
            .map(|(a, b)| (a.min(b), a.max(b)))
            .collect();
        for (i, &(a, b)) in chords.iter().enumerate() {
            for &(c, d) in &chords[i + 1..] {
                if a == c || a == d || b == c || b == d {
                    continue;
                }
                let s = Segment::new(pts[a], pts[b]).unwrap();
                let t = Segment::new(pts[c], pts[d]).unwrap();
                let geometric = matches!(classify_segments(&s, &t).unwrap(), IntersectionKind::ProperCrossing(_));
                let interleaved = (a < c && c < b && b < d) || (c < a && a < d && d < b);
                prop_assert_eq!(geometric, interleaved);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn pcc_is_invariant_under_relabeling(n in 4usize..14, seed in 0u64..1000, shift in 1u32..50) {
        let d = random_pcc_greedy(n, None, GeneratorSeed(seed)).unwrap();
        let raw = d.to_raw();
        let nv = raw.vertices.len() as u32;
        let ne = raw.edges.len() as u32;
        // reverse storage order and permute ids
        let mut relabeled = RawDrawing::new();
        let vid = |v: VertexId| VertexId((v.0 * 7 + shift) % (nv * 7 + 50));
        for v in raw.vertices.iter().rev() {
            relabeled.vertices.push(pcc_core::drawing::RawVertex { id: vid(v.id), point: v.point });
        }
        for e in raw.edges.iter().rev() {
            relabeled.edges.push(pcc_core::drawing::RawEdge {
                id: EdgeId(ne - 1 - e.id.0 + shift),
                source: vid(e.target),
                target: vid(e.source),
                polyline: e.polyline.iter().rev().copied().collect(),
            });
        }
        let r = validate_drawing(&relabeled).unwrap();
        prop_assert_eq!(r.crossings().pair_count(), d.crossings().pair_count());
        prop_assert_eq!(r.crossings().crossing_count(), d.crossings().crossing_count());
        prop_assert_eq!(check_pcc(&r, true).holds, check_pcc(&d, true).holds);
        for k in 0..3 {
            prop_assert_eq!(check_k_pcc(&r, k).holds, check_k_pcc(&d, k).holds);
        }
    }

    #[test]
    fn k_pcc_is_monotone(n in 3usize..9, seed in 0u64..1000) {
        let d = star_complete(n, GeneratorSeed(seed)).unwrap();
        let mut prev = false;
        for k in 0..5 {
            let now = check_k_pcc(&d, k).holds;
            prop_assert!(!prev || now);
            prev = now;
        }
        prop_assert!(check_k_pcc(&d, 2).holds);
    }

    #[test]
    fn generated_drawings_round_trip(n in 3usize..16, seed in 0u64..1000) {
        let raw = random_pcc_greedy(n, None, GeneratorSeed(seed)).unwrap().to_raw();
        let text = serialize_drawing(&raw);
        prop_assert_eq!(parse_drawing(&text).unwrap(), raw);
    }

    #[test]
    fn triangulations_are_planar_and_four_coloured(n in 3usize..60, seed in 0u64..10_000) {
        let g = random_triangulation(n, GeneratorSeed(seed)).unwrap();
        prop_assert_eq!(g.edge_count(), 3 * n - 6);
        prop_assert!(is_planar(&g));
        prop_assert!(four_color(&g).unwrap().is_proper(&g));
    }
}

#[test]
fn dense_graphs_are_not_planar() {
    // any graph with more than 3n - 6 edges
    for n in 5..12 {
        let g = random_triangulation(n, GeneratorSeed(n as u64)).unwrap();
        let adj = g.adjacency();
        let (a, b) = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .find(|&(a, b)| !adj[a].contains(&b))
            .unwrap();
        let mut edges = g.edges().to_vec();
        edges.push((a, b));
        assert!(!is_planar(&AbstractGraph::new(n, edges).unwrap()));
    }
}
