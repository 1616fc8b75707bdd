//! Deterministic serialization of coset diagrams: DOT, JSON, and CSV
//! census rows.  Every emitter sorts its output, so identical inputs
//! produce identical bytes on every platform.

use crate::construct::{solve_generators, GeneratorPair};
use crate::diagram::{build_diagram, CosetDiagram, GenusBreakdown};
use crate::error::Result;
use crate::field::PrimeModulus;
use crate::gk::januarial_thetas;
use serde::{Deserialize, Serialize};

fn node_name(idx: usize, p: u64) -> String {
    if idx == p as usize {
        "vinf".to_string()
    } else {
        format!("v{idx}")
    }
}

/// Render a diagram as a DOT digraph named `D_<theta>_<p>_<l>`.
///
/// Nodes are `v0`..`v<p-1>` plus `vinf` (label "inf"), ascending with
/// infinity last.  When the diagram is a januarial each node carries
/// `orbit="0"` or `orbit="1"` (orbit 0 contains the smallest point
/// index), otherwise `orbit="-1"`.  Fixed points of x and y carry
/// `xfix="1"` / `yfix="1"`.  Edges are the y-cycle successor arcs
/// (`rel="y"`) and the undirected x-edges (`rel="x", dir="none"`, smaller
/// endpoint first), sorted lexicographically as lines.
pub fn export_dot(d: &CosetDiagram) -> String {
    let p = d.p;
    let n = d.point_count();
    let name = format!("D_{}_{}_{}", d.theta, d.p, d.l);

    let mut orbit_label = vec!["-1".to_string(); n];
    if d.is_januarial() {
        // Cycles are sorted by smallest member, so orbit 0 is first.
        for (which, orbit) in d.xy_orbits.iter().enumerate() {
            for &v in orbit {
                orbit_label[v] = which.to_string();
            }
        }
    }
    let mut y_fixed = vec![false; n];
    for cycle in &d.y_cycles {
        if cycle.len() == 1 {
            y_fixed[cycle[0]] = true;
        }
    }
    let mut x_fixed = vec![false; n];
    for &v in &d.x_fixed {
        x_fixed[v] = true;
    }

    let mut out = format!("digraph {name} {{\n");
    for idx in 0..n {
        let mut attrs = Vec::new();
        if idx == p as usize {
            attrs.push("label=\"inf\"".to_string());
        }
        attrs.push(format!("orbit=\"{}\"", orbit_label[idx]));
        if x_fixed[idx] {
            attrs.push("xfix=\"1\"".to_string());
        }
        if y_fixed[idx] {
            attrs.push("yfix=\"1\"".to_string());
        }
        out.push_str(&format!(
            "  {} [{}];\n",
            node_name(idx, p),
            attrs.join(", ")
        ));
    }

    let mut edges = Vec::new();
    for cycle in &d.y_cycles {
        if cycle.len() < 2 {
            continue;
        }
        for (i, &u) in cycle.iter().enumerate() {
            let v = cycle[(i + 1) % cycle.len()];
            edges.push(format!(
                "  {} -> {} [rel=\"y\"];\n",
                node_name(u, p),
                node_name(v, p)
            ));
        }
    }
    for &(u, v) in &d.x_edges {
        edges.push(format!(
            "  {} -> {} [rel=\"x\", dir=\"none\"];\n",
            node_name(u, p),
            node_name(v, p)
        ));
    }
    edges.sort_unstable();
    for e in &edges {
        out.push_str(e);
    }
    out.push_str("}\n");
    out
}

/// The JSON document describing a built diagram.  Field order is the
/// serialization order; all numbers are integers except that `genus` is
/// null for a disconnected diagram.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramDocument {
    pub p: u64,
    pub l: u64,
    pub k: u64,
    pub theta: u64,
    pub delta: u64,
    pub r: u64,
    #[serde(rename = "X")]
    pub x: [[u64; 2]; 2],
    #[serde(rename = "Y")]
    pub y: [[u64; 2]; 2],
    pub eta_x: u64,
    pub eta_y: u64,
    pub eta_xy: u64,
    pub xy_orbits: Vec<Vec<u64>>,
    pub genus: Option<i64>,
    pub is_januarial: bool,
}

impl DiagramDocument {
    pub fn new(d: &CosetDiagram, pair: &GeneratorPair) -> Self {
        DiagramDocument {
            p: d.p,
            l: d.l,
            k: d.k,
            theta: d.theta.value(),
            delta: pair.params.delta.value(),
            r: pair.params.r.value(),
            x: pair.params.x_shape(),
            y: pair.params.y_shape(),
            eta_x: d.eta_x,
            eta_y: d.eta_y,
            eta_xy: d.eta_xy,
            xy_orbits: d
                .xy_orbits
                .iter()
                .map(|c| c.iter().map(|&v| v as u64).collect())
                .collect(),
            genus: GenusBreakdown::for_diagram(d).ok().map(|g| g.genus()),
            is_januarial: d.is_januarial(),
        }
    }
}

/// Serialize a diagram and its pair as pretty-printed JSON (trailing
/// newline included).  The generator matrices are the construction-shape
/// representatives [[a, ci], [c, -a]] and [[e, fi], [f, b-e]].
pub fn export_json(d: &CosetDiagram, pair: &GeneratorPair) -> String {
    let doc = DiagramDocument::new(d, pair);
    let mut s = serde_json::to_string_pretty(&doc).expect("document serializes");
    s.push('\n');
    s
}

/// One row of the januarial census.  `genus` is `None` for the rare
/// disconnected diagrams, where no genus is defined; the CSV field is
/// then empty.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CensusRow {
    pub p: u64,
    pub l: u64,
    pub theta: u64,
    pub eta_x: u64,
    pub eta_y: u64,
    pub genus: Option<i64>,
}

pub const CSV_HEADER: &str = "p,l,theta,eta_x,eta_y,genus";

impl CensusRow {
    pub fn csv(&self) -> String {
        let genus = self.genus.map(|g| g.to_string()).unwrap_or_default();
        format!(
            "{},{},{},{},{},{}",
            self.p, self.l, self.theta, self.eta_x, self.eta_y, genus
        )
    }
}

/// Build every januarial for (p, l) and return census rows sorted by
/// theta (p and l are fixed within one call).
pub fn census_rows(p: PrimeModulus, l: u64) -> Result<Vec<CensusRow>> {
    let thetas = januarial_thetas(p)?;
    let mut rows = Vec::with_capacity(thetas.len());
    for &theta in thetas.values() {
        let pair = solve_generators(p, l, p.element(theta))?;
        let d = build_diagram(&pair);
        let genus = GenusBreakdown::for_diagram(&d).ok().map(|g| g.genus());
        debug_assert!(d.is_januarial());
        rows.push(CensusRow {
            p: p.value(),
            l,
            theta,
            eta_x: d.eta_x,
            eta_y: d.eta_y,
            genus,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::solve_generators;
    use crate::diagram::build_diagram;

    fn published_pair() -> GeneratorPair {
        let p = PrimeModulus::new(31).unwrap();
        solve_generators(p, 4, p.element(7)).unwrap()
    }

    #[test]
    fn dot_structure() {
        let pair = published_pair();
        let d = build_diagram(&pair);
        let dot = export_dot(&d);
        assert!(dot.starts_with("digraph D_7_31_4 {\n"));
        assert!(dot.ends_with("}\n"));
        let node_lines = dot.lines().filter(|l| l.contains("orbit=")).count();
        assert_eq!(node_lines, 32);
        let y_arcs = dot.lines().filter(|l| l.contains("rel=\"y\"")).count();
        assert_eq!(y_arcs, 32);
        let x_edges = dot.lines().filter(|l| l.contains("rel=\"x\"")).count();
        assert_eq!(x_edges, 16);
        let orbit0 = dot.lines().filter(|l| l.contains("orbit=\"0\"")).count();
        let orbit1 = dot.lines().filter(|l| l.contains("orbit=\"1\"")).count();
        assert_eq!((orbit0, orbit1), (16, 16));
        assert!(dot.contains("vinf [label=\"inf\", orbit=\"1\"];"));
        // Byte stability across repeated exports.
        assert_eq!(dot, export_dot(&d));
    }

    #[test]
    fn dot_small_prime() {
        let p = PrimeModulus::new(5).unwrap();
        let pair = solve_generators(p, 3, p.element(1)).unwrap();
        let d = build_diagram(&pair);
        let dot = export_dot(&d);
        let nodes = dot.lines().filter(|l| l.contains("orbit=")).count();
        assert_eq!(nodes, 6);
        // eta_x = 2 for this diagram, so two xfix markers appear.
        assert_eq!(dot.matches("xfix=\"1\"").count(), 2);
    }

    #[test]
    fn json_roundtrip() {
        let pair = published_pair();
        let d = build_diagram(&pair);
        let text = export_json(&d, &pair);
        let doc: DiagramDocument = serde_json::from_str(&text).unwrap();
        assert_eq!(doc.p, 31);
        assert_eq!(doc.theta, 7);
        assert_eq!(doc.genus, Some(4));
        assert!(doc.is_januarial);
        assert_eq!((doc.eta_x, doc.eta_y, doc.eta_xy), (0, 0, 0));
        assert_eq!(doc.x, [[3, 30], [10, 28]]);
        assert_eq!(doc.y, [[0, 11], [14, 8]]);
        // Key order is fixed by the struct declaration.
        let p_pos = text.find("\"p\"").unwrap();
        let genus_pos = text.find("\"genus\"").unwrap();
        let janu_pos = text.find("\"is_januarial\"").unwrap();
        assert!(p_pos < genus_pos && genus_pos < janu_pos);
    }

    #[test]
    fn non_januarial_document() {
        let p = PrimeModulus::new(31).unwrap();
        let pair = solve_generators(p, 4, p.element(2)).unwrap();
        let d = build_diagram(&pair);
        let doc: DiagramDocument = serde_json::from_str(&export_json(&d, &pair)).unwrap();
        assert!(!doc.is_januarial);
        assert_eq!(doc.k, 4);
    }

    #[test]
    fn census_fixture() {
        let p = PrimeModulus::new(31).unwrap();
        let rows = census_rows(p, 4).unwrap();
        assert_eq!(rows.len(), 4);
        assert_eq!(
            rows.iter().map(|r| r.theta).collect::<Vec<_>>(),
            vec![7, 16, 19, 28]
        );
        assert!(rows.iter().all(|r| r.genus == Some(4)));
        assert_eq!(rows[0].csv(), "31,4,7,0,0,4");
    }
}
