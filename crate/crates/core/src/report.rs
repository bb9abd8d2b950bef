//! Key-value text reports with a fixed field order and a final status line.

use std::fmt::{self, Display};

use crate::certificate::Certificate;
use crate::checkers::{CrossingFamilyWitness, GridOutcome, PccReport};
use crate::drawing::{is_simple, partition_edges, Drawing, EdgeId};
use crate::planar::decompose;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Holds,
    Fails,
}

impl Status {
    pub fn from_bool(holds: bool) -> Self {
        if holds {
            Status::Holds
        } else {
            Status::Fails
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Status::Holds => 0,
            Status::Fails => 1,
        }
    }
}

impl Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Holds => "holds",
            Status::Fails => "fails",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub command: String,
    pub fields: Vec<(String, String)>,
    pub status: Status,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report { command: command.to_string(), fields: Vec::new(), status: Status::Holds }
    }

    pub fn field(&mut self, key: &str, value: impl Display) -> &mut Self {
        self.fields.push((key.to_string(), value.to_string()));
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn render(&self) -> String {
        let mut out = format!("command {}\n", self.command);
        for (k, v) in &self.fields {
            out.push_str(k);
            if !v.is_empty() {
                out.push(' ');
                out.push_str(v);
            }
            out.push('\n');
        }
        out.push_str(&format!("status {}\n", self.status));
        out
    }
}

fn ids(edges: &[EdgeId]) -> String {
    edges.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn basic(r: &mut Report, d: &Drawing) {
    r.field("vertices", d.vertex_count())
        .field("edges", d.edge_count())
        .field("crossing_pairs", d.crossings().pair_count())
        .field("crossings", d.crossings().crossing_count());
}

fn violations(r: &mut Report, p: &PccReport) {
    r.field("violations", p.violations.len());
    for v in &p.violations {
        r.field("violation", format!("{} {} {}", v.pair.0, v.pair.1, v.reason));
    }
}

/// PCC with adjacent crossings tolerated, simplicity, and the strict
/// hypothesis that also forbids adjacent crossings.
pub fn check_report(d: &Drawing, pcc: &PccReport, strict: &PccReport) -> Report {
    let mut r = Report::new("check");
    basic(&mut r, d);
    let simple = is_simple(d);
    r.field("simple", simple.simple);
    if let Some((a, b)) = simple.witness {
        r.field("simple_witness", format!("{a} {b}"));
    }
    r.field("pcc", pcc.holds).field("hypothesis", strict.holds);
    violations(&mut r, strict);
    r.status = Status::from_bool(pcc.holds && simple.simple);
    r
}

pub fn kpcc_report(d: &Drawing, k: usize, p: &PccReport) -> Report {
    let mut r = Report::new("kpcc");
    basic(&mut r, d);
    r.field("k", k).field("k_pcc", p.holds);
    violations(&mut r, p);
    r.status = Status::from_bool(p.holds);
    r
}

/// Holds when no `k` pairwise crossing edges exist.
pub fn quasi_report(d: &Drawing, k: usize, w: &Option<CrossingFamilyWitness>) -> Report {
    let mut r = Report::new("quasi");
    basic(&mut r, d);
    r.field("k", k).field("family_found", w.is_some());
    if let Some(w) = w {
        r.field("witness", ids(&w.edges));
    }
    r.status = Status::from_bool(w.is_none());
    r
}

/// Holds only when the search proves there is no grid.
pub fn grid_report(d: &Drawing, k: usize, budget: u64, out: &GridOutcome) -> Report {
    let mut r = Report::new("grid");
    basic(&mut r, d);
    r.field("k", k).field("budget", budget);
    match out {
        GridOutcome::Found(w) => {
            r.field("outcome", "found").field("first", ids(&w.first)).field("second", ids(&w.second));
        }
        GridOutcome::NotFound => {
            r.field("outcome", "not_found");
        }
        GridOutcome::BudgetExhausted { expanded } => {
            r.field("outcome", "budget_exhausted").field("expanded", expanded);
        }
    }
    r.status = Status::from_bool(matches!(out, GridOutcome::NotFound));
    r
}

pub fn certificate_report(c: &Certificate) -> Report {
    let mut r = Report::new("certify");
    let t = &c.totals;
    r.field("hypothesis_ok", c.hypothesis_ok)
        .field("n", t.n)
        .field("planar_edges", t.planar_edges)
        .field("crossed_edges", t.crossed_edges)
        .field("total_edges", t.total_edges);
    if c.hypothesis_ok {
        r.field("intra_edges", t.intra_sum)
            .field("inter_edges", t.inter_sum)
            .field("boundary_total", t.boundary_total)
            .field("components", c.components.len())
            .field("faces", c.faces.len());
        if let Some(h) = &c.h {
            r.field("h_vertices", h.vertices).field("h_edges", h.edges).field("h_planar", h.planar);
        }
        let max_family = c.faces.iter().map(|f| f.max_family).max().unwrap_or(0);
        r.field("max_face_family", max_family)
            .field("planar_bound", t.planar_bound)
            .field("crossed_bound", t.crossed_bound)
            .field("bound", t.bound)
            .field("density", format!("{:.4}", t.density));
        for f in c.faces.iter().filter(|f| f.chords > 0) {
            r.field(
                "face",
                format!(
                    "{} {} size {} chords {} family {} cp {} coarse {}",
                    f.component, f.face, f.size, f.chords, f.max_family, f.cp_bound, f.coarse_bound
                ),
            );
        }
        for cr in &c.components {
            r.field(
                "component",
                format!(
                    "{} vertices {} planar {} faces {} intra {} cp_sum {} bound {}",
                    cr.component, cr.vertices, cr.planar_edges, cr.faces, cr.intra, cr.cp_sum, cr.bound
                ),
            );
        }
        for p in &c.pairs {
            r.field("pair", format!("{} {} edges {} vij {} vji {} bound {}", p.i, p.j, p.edges, p.vij, p.vji, p.bound));
        }
        for s in &c.sums {
            if s.deg_h > 0 {
                r.field(
                    "sum",
                    format!("{} boundary {} deg_h {} bound {}", s.component, s.boundary_sum, s.deg_h, s.bound),
                );
            }
        }
    }
    match c.audit() {
        Ok(()) => r.field("audit", "ok"),
        Err(e) => r.field("audit", e),
    };
    r.status = Status::from_bool(c.is_valid());
    r
}

pub fn stats_report(d: &Drawing) -> Report {
    let mut r = Report::new("stats");
    basic(&mut r, d);
    let p = partition_edges(d, d.crossings());
    let dec = decompose(d, &p);
    let max_degree = (0..d.edge_count()).map(|e| d.crossings().degree(e)).max().unwrap_or(0);
    let bends: usize = d.edges().iter().map(|e| e.polyline.len() - 2).sum();
    r.field("planar_edges", p.planar.len())
        .field("crossed_edges", p.crossed.len())
        .field("components", dec.components.len())
        .field("max_crossing_degree", max_degree)
        .field("bends", bends);
    let density = if d.vertex_count() == 0 { 0.0 } else { d.edge_count() as f64 / d.vertex_count() as f64 };
    r.field("density", format!("{density:.4}"));
    if d.vertex_count() >= 10 {
        r.field("lower_bound_line", 9 * d.vertex_count() - 54);
    }
    r.field("upper_bound_line", 699 * d.vertex_count());
    r
}
