//! Acceptance suite: one PASS/FAIL line per criterion. All tolerances are
//! exact; the 8-grid search budget is 10^7 expanded nodes.

use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::Instant;

use pcc_core::certificate::{capoyleas_pach_bound, certify, Certificate};
use pcc_core::checkers::{check_k_pcc, check_pcc, find_grid, find_pairwise_crossing, GridOutcome};
use pcc_core::construct::{random_pcc_greedy, random_triangulation, star_complete, toth_construction, GeneratorSeed};
use pcc_core::drawing::{is_simple, partition_edges, Drawing};
use pcc_core::format::load_drawing;
use pcc_core::planar::{decompose, face_walks, four_color, is_planar, AbstractGraph};

const GRID_BUDGET: u64 = 10_000_000;
const TOTH_RANGE: std::ops::RangeInclusive<usize> = 10..=120;

fn fixture(name: &str) -> Drawing {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/tests/fixtures").join(format!("{name}.pcc"));
    load_drawing(&std::fs::read_to_string(p).unwrap()).unwrap()
}

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

/// Drawings that must certify: the whole construction range, the PCC
/// fixtures, and 200 greedy random drawings.
fn corpus() -> Vec<(String, Drawing)> {
    let mut out = Vec::new();
    for n in TOTH_RANGE {
        out.push((format!("toth({n})"), toth_construction(n).unwrap()));
    }
    for name in ["convex_k4", "convex_k5", "two_comp_cross", "three_components", "cut_vertex"] {
        out.push((name.to_string(), fixture(name)));
    }
    for i in 0..200u64 {
        let n = 3 + (i as usize * 7) % 38;
        out.push((format!("greedy(n={n},seed={i})"), random_pcc_greedy(n, None, GeneratorSeed(1000 + i)).unwrap()));
    }
    out
}

fn construction_exactness() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let mut bad = Vec::new();
    for n in TOTH_RANGE {
        let file = dir.path().join(format!("toth{n}.pcc"));
        let status = Command::new(env!("CARGO_BIN_EXE_pcc"))
            .args(["construct", "--n", &n.to_string(), "-o", file.to_str().unwrap()])
            .output()
            .unwrap()
            .status;
        let text = std::fs::read_to_string(&file).unwrap_or_default();
        let good = status.success()
            && match load_drawing(&text) {
                Ok(d) => d.edge_count() == 9 * n - 54 && is_simple(&d).simple && check_pcc(&d, true).holds,
                Err(_) => false,
            };
        if !good {
            bad.push(n);
        }
    }
    let total = TOTH_RANGE.count();
    outcome(bad.is_empty(), format!("{}/{total} constructions exact, simple and PCC; failing n: {bad:?}", total - bad.len()))
}

fn certificate_soundness(certs: &[(String, Result<Certificate, String>)]) -> Outcome {
    let bad: Vec<&str> = certs
        .iter()
        .filter(|(_, c)| !matches!(c, Ok(c) if c.is_valid()))
        .map(|(n, _)| n.as_str())
        .collect();
    outcome(bad.is_empty(), format!("{}/{} valid certificates; failing: {bad:?}", certs.len() - bad.len(), certs.len()))
}

fn chain_constants(certs: &[(String, Result<Certificate, String>)]) -> Outcome {
    let mut bad = Vec::new();
    let mut checks = 0u64;
    for (name, c) in certs {
        let Ok(c) = c else {
            bad.push(name.clone());
            continue;
        };
        let t = &c.totals;
        let mut ok = c.audit().is_ok();
        for f in &c.faces {
            ok &= f.coarse_bound == 16 * f.size && f.chords <= f.coarse_bound;
            checks += 1;
        }
        for k in &c.components {
            ok &= k.bound == 96 * k.vertices && k.intra <= k.bound;
            checks += 1;
        }
        for p in &c.pairs {
            ok &= p.bound == 8 * (p.vij + p.vji) && p.edges <= p.bound;
            checks += 1;
        }
        for s in &c.sums {
            ok &= s.bound == 3 * s.vertices + 12 * s.deg_h && s.boundary_sum <= s.bound;
            checks += 1;
        }
        ok &= t.crossed_bound == 696 * t.n && t.crossed_edges <= t.crossed_bound;
        ok &= t.bound == 699 * t.n && t.total_edges <= t.bound;
        checks += 2;
        if !ok {
            bad.push(name.clone());
        }
    }
    outcome(bad.is_empty(), format!("{checks} recorded inequalities with constants 16, 96, 8, 3+12, 696, 699; failing: {bad:?}"))
}

fn quasi_planarity(corpus: &[(String, Drawing)]) -> Outcome {
    let found: Vec<&str> = corpus
        .iter()
        .filter(|(_, d)| find_pairwise_crossing(d, 9).unwrap().is_some())
        .map(|(n, _)| n.as_str())
        .collect();
    let k18 = fixture("convex_k18");
    let verified = match find_pairwise_crossing(&k18, 9).unwrap() {
        Some(w) => {
            let idx: Vec<usize> = w.edges.iter().map(|&e| k18.edge_by_id(e).unwrap()).collect();
            idx.len() == 9
                && idx.iter().enumerate().all(|(i, &a)| idx[i + 1..].iter().all(|&b| k18.crossings().cross(a, b)))
        }
        None => false,
    };
    outcome(
        found.is_empty() && verified,
        format!("no 9-family in {} drawings (found in {found:?}); convex K18 9-family verified: {verified}", corpus.len()),
    )
}

fn grid_consequence() -> Outcome {
    let mut found = Vec::new();
    let mut exhausted = Vec::new();
    let mut expanded_max = 0;
    for n in 10..=40 {
        match find_grid(&toth_construction(n).unwrap(), 8, GRID_BUDGET).unwrap() {
            GridOutcome::NotFound => {}
            GridOutcome::Found(_) => found.push(n),
            GridOutcome::BudgetExhausted { expanded } => {
                exhausted.push(n);
                expanded_max = expanded_max.max(expanded);
            }
        }
    }
    let small = matches!(find_grid(&fixture("grid_2x2"), 2, GRID_BUDGET).unwrap(), GridOutcome::Found(_));
    outcome(
        found.is_empty() && exhausted.is_empty() && small,
        format!(
            "8-grid absent on toth(10..=40); found at {found:?}, budget exhausted at {exhausted:?}; grid_2x2 k=2 found: {small}"
        ),
    )
}

/// Largest set of chords of a convex n-gon with no three pairwise crossing,
/// by exhaustive branch and bound.
fn max_convex_chords(n: usize) -> u64 {
    let chords: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let m = chords.len();
    let cross: Vec<u64> = chords
        .iter()
        .map(|&(a, b)| {
            chords.iter().enumerate().fold(0u64, |acc, (j, &(c, d))| {
                if (a < c && c < b && b < d) || (c < a && a < d && d < b) {
                    acc | 1 << j
                } else {
                    acc
                }
            })
        })
        .collect();
    fn go(i: usize, m: usize, cross: &[u64], chosen: u64, forbidden: u64, best: &mut u64) {
        let have = chosen.count_ones() as u64;
        *best = (*best).max(have);
        if i == m {
            return;
        }
        let rest = !forbidden & !chosen & (u64::MAX << i) & ((1u64 << m) - 1);
        if have + rest.count_ones() as u64 <= *best {
            return;
        }
        if forbidden >> i & 1 == 0 {
            let mut f = forbidden;
            let mut partners = cross[i] & chosen;
            while partners != 0 {
                let j = partners.trailing_zeros() as usize;
                partners &= partners - 1;
                f |= cross[i] & cross[j];
            }
            go(i + 1, m, cross, chosen | 1 << i, f, best);
        }
        go(i + 1, m, cross, chosen, forbidden, best);
    }
    let mut best = 0;
    go(0, m, &cross, 0, 0, &mut best);
    best
}

fn capoyleas_pach_oracle() -> Outcome {
    let mut rows = Vec::new();
    let mut ok = true;
    for n in 0..=9usize {
        let got = max_convex_chords(n);
        let want = capoyleas_pach_bound(n as u64, 2);
        ok &= got == want;
        rows.push(format!("{n}:{got}/{want}"));
    }
    outcome(ok, format!("k=2 exhaustive/formula per n: {}", rows.join(" ")))
}

fn face_accounting(corpus: &[(String, Drawing)]) -> Outcome {
    let mut bad = Vec::new();
    let mut components = 0;
    for (name, d) in corpus {
        let p = partition_edges(d, d.crossings());
        let dec = decompose(d, &p);
        for c in 0..dec.components.len() {
            let faces = face_walks(d, &dec, c);
            let comp = &dec.components[c];
            let sizes: usize = faces.iter().map(|f| f.size()).sum();
            let euler = comp.vertices.len() as i64 - comp.planar_edges.len() as i64 + faces.len() as i64;
            if sizes != 2 * comp.planar_edges.len() || euler != 2 {
                bad.push(format!("{name}/{c}"));
            }
            components += 1;
        }
    }
    outcome(bad.is_empty(), format!("{components} components with face sizes = 2|E'_i| and V-E+F = 2; failing: {bad:?}"))
}

fn planarity_and_colouring() -> Outcome {
    let mut ok = !is_planar(&AbstractGraph::complete(5)) && !is_planar(&AbstractGraph::complete_bipartite(3, 3));
    let mut dense_rejected = 0;
    let mut accepted = 0;
    let mut coloured = 0;
    for i in 0..500u64 {
        let n = 3 + (i as usize % 120);
        let g = random_triangulation(n, GeneratorSeed(i)).unwrap();
        if is_planar(&g) {
            accepted += 1;
        }
        if four_color(&g).map(|c| c.is_proper(&g)).unwrap_or(false) {
            coloured += 1;
        }
        if n >= 5 {
            let adj = g.adjacency();
            let extra = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).find(|&(a, b)| !adj[a].contains(&b));
            if let Some((a, b)) = extra {
                let mut edges = g.edges().to_vec();
                edges.push((a, b));
                if !is_planar(&AbstractGraph::new(n, edges).unwrap()) {
                    dense_rejected += 1;
                }
            }
        }
    }
    let dense_total = (0..500usize).filter(|i| 3 + i % 120 >= 5).count();
    for n in 5..=12 {
        ok &= !is_planar(&AbstractGraph::complete(n));
    }
    ok &= accepted == 500 && coloured == 500 && dense_rejected == dense_total;
    outcome(
        ok,
        format!(
            "K5, K3,3 rejected; {accepted}/500 triangulations accepted, {coloured}/500 properly 4-coloured, {dense_rejected}/{dense_total} graphs above 3n-6 rejected"
        ),
    )
}

fn star_witness() -> Outcome {
    let bad: Vec<usize> = (3..=10).filter(|&n| !check_k_pcc(&star_complete(n, GeneratorSeed(n as u64)).unwrap(), 2).holds).collect();
    outcome(bad.is_empty(), format!("2-PCC holds for K_n, n = 3..=10; failing n: {bad:?}"))
}

fn density_report(corpus: &[(String, Drawing)]) -> Outcome {
    let mut worst = (0.0f64, String::new());
    let mut ok = true;
    for (name, d) in corpus {
        let n = d.vertex_count();
        let m = d.edge_count();
        ok &= m <= 699 * n;
        if name.starts_with("toth") {
            ok &= m == 9 * n - 54;
        }
        let density = m as f64 / n as f64;
        if density > worst.0 {
            worst = (density, name.clone());
        }
    }
    let greedy_max = corpus
        .iter()
        .filter(|(n, _)| n.starts_with("greedy"))
        .map(|(_, d)| d.edge_count() as f64 / d.vertex_count() as f64)
        .fold(0.0, f64::max);
    outcome(
        ok,
        format!(
            "max |E|/n = {:.3} at {}; greedy max {:.3}; 9n-54 line reached by the construction, 699n never exceeded",
            worst.0, worst.1, greedy_max
        ),
    )
}

fn main() -> ExitCode {
    let start = Instant::now();
    let corpus = corpus();
    let certs: Vec<(String, Result<Certificate, String>)> =
        corpus.iter().map(|(n, d)| (n.clone(), certify(d).map_err(|e| e.to_string()))).collect();
    let results = [
        ("construction exactness", construction_exactness()),
        ("certificate soundness", certificate_soundness(&certs)),
        ("bound-chain constants", chain_constants(&certs)),
        ("quasi-planarity", quasi_planarity(&corpus)),
        ("grid consequence", grid_consequence()),
        ("convex chord oracle", capoyleas_pach_oracle()),
        ("face accounting", face_accounting(&corpus)),
        ("planarity and colouring oracles", planarity_and_colouring()),
        ("2-PCC star witness", star_witness()),
        ("empirical density", density_report(&corpus)),
    ];
    let mut all = true;
    for (i, (name, o)) in results.iter().enumerate() {
        all &= o.ok;
        println!("{} {:>2} {name}: {}", if o.ok { "PASS" } else { "FAIL" }, i + 1, o.detail);
    }
    println!("acceptance finished in {:.1}s", start.elapsed().as_secs_f64());
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
