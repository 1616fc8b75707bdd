//! Coset diagrams and their genus.
//!
//! A coset diagram for a pair (x, y) acting on PL(F_p) has one l-gon per
//! cycle of y and one edge per transposition of x; fixed points are
//! trivial cycles.  A diagram is a januarial when the product xy has
//! exactly two orbits, both of length k = (p+1)/2.
//!
//! Genus comes from Higman's formula g = (2 - (v - e + f))/2 where v
//! counts all cycles of y, e the nontrivial cycles of x, and f all cycles
//! of xy.  Substituting the cycle counts expressed through fixed points
//! gives the closed form
//!
//! ```text
//! g = 1 - (1/4kl) [ (2(k+l) - kl)(p+1) + kl(2(eta_y + eta_xy) + eta_x)
//!                   - 2(k eta_y + l eta_xy) ]
//! ```
//!
//! and, for januarials (k = (p+1)/2, eta_xy = 0),
//! g = -(p+1-eta_y)/2l + (p+1-2 eta_y - eta_x)/4.  All three routes are
//! computed in exact integer arithmetic and must agree.

use crate::construct::GeneratorPair;
use crate::error::{Error, Result};
use crate::field::FieldElement;

/// Orbit decomposition of a generator pair acting on PL(F_p).
///
/// Point indices run 0..=p with p denoting infinity.  Cycles are in
/// canonical form (each starts at its smallest member; lists sorted by
/// that member), so the whole structure is deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetDiagram {
    pub p: u64,
    pub l: u64,
    pub k: u64,
    pub theta: FieldElement,
    pub y_cycles: Vec<Vec<usize>>,
    pub x_edges: Vec<(usize, usize)>,
    pub x_fixed: Vec<usize>,
    pub xy_orbits: Vec<Vec<usize>>,
    pub eta_x: u64,
    pub eta_y: u64,
    pub eta_xy: u64,
    pub connected: bool,
    /// Connected components of the underlying graph, each sorted, listed
    /// by smallest member.  A single component means connected.
    pub components: Vec<Vec<usize>>,
}

/// Decompose the permutations of a pair into the diagram structure.
pub fn build_diagram(pair: &GeneratorPair) -> CosetDiagram {
    let n = pair.p.point_count();
    let y_cycles = pair.y_perm.cycles();
    let mut x_edges = Vec::new();
    let mut x_fixed = Vec::new();
    for cycle in pair.x_perm.cycles() {
        match cycle.len() {
            1 => x_fixed.push(cycle[0]),
            2 => x_edges.push((cycle[0], cycle[1])),
            other => panic!("x permutation is not an involution: {other}-cycle"),
        }
    }
    let xy_orbits = pair.xy_perm.cycles();

    let eta_y = y_cycles.iter().filter(|c| c.len() == 1).count() as u64;
    let eta_x = x_fixed.len() as u64;
    let eta_xy = xy_orbits.iter().filter(|c| c.len() == 1).count() as u64;

    // Connectivity of the graph whose edges are the x-edges plus the
    // successor arcs of the y-cycles.
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in &x_edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    for cycle in &y_cycles {
        for (idx, &u) in cycle.iter().enumerate() {
            let v = cycle[(idx + 1) % cycle.len()];
            if u != v {
                adj[u].push(v);
                adj[v].push(u);
            }
        }
    }
    let mut seen = vec![false; n];
    let mut components = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    comp.push(v);
                    stack.push(v);
                }
            }
        }
        comp.sort_unstable();
        components.push(comp);
    }
    let connected = components.len() == 1;

    let d = CosetDiagram {
        p: pair.p.value(),
        l: pair.l,
        k: pair.k,
        theta: pair.theta,
        y_cycles,
        x_edges,
        x_fixed,
        xy_orbits,
        eta_x,
        eta_y,
        eta_xy,
        connected,
        components,
    };
    debug_assert!(d.partitions_hold());
    d
}

impl CosetDiagram {
    /// Number of points p + 1.
    pub fn point_count(&self) -> usize {
        self.p as usize + 1
    }

    /// v, e, f of Higman's formula: all y-cycles, nontrivial x-cycles,
    /// all xy-cycles.
    pub fn vef(&self) -> (u64, u64, u64) {
        (
            self.y_cycles.len() as u64,
            self.x_edges.len() as u64,
            self.xy_orbits.len() as u64,
        )
    }

    /// True when xy has exactly two orbits, both of length (p+1)/2.
    pub fn is_januarial(&self) -> bool {
        let k = ((self.p + 1) / 2) as usize;
        self.xy_orbits.len() == 2 && self.xy_orbits.iter().all(|c| c.len() == k)
    }

    /// Per-component (v, e, f) counts.  Every cycle of every permutation
    /// stays inside one component, so the counts partition cleanly;
    /// used for reporting when the diagram is disconnected.
    pub fn component_counts(&self) -> Vec<(u64, u64, u64)> {
        let mut comp_of = vec![0usize; self.point_count()];
        for (id, comp) in self.components.iter().enumerate() {
            for &v in comp {
                comp_of[v] = id;
            }
        }
        let mut counts = vec![(0u64, 0u64, 0u64); self.components.len()];
        for c in &self.y_cycles {
            counts[comp_of[c[0]]].0 += 1;
        }
        for &(u, _) in &self.x_edges {
            counts[comp_of[u]].1 += 1;
        }
        for c in &self.xy_orbits {
            counts[comp_of[c[0]]].2 += 1;
        }
        counts
    }

    /// The partition laws every well-formed diagram satisfies.
    pub fn partitions_hold(&self) -> bool {
        let n = self.point_count();
        let y_total: usize = self.y_cycles.iter().map(|c| c.len()).sum();
        let xy_total: usize = self.xy_orbits.iter().map(|c| c.len()).sum();
        y_total == n
            && xy_total == n
            && 2 * self.x_edges.len() + self.x_fixed.len() == n
            && self
                .y_cycles
                .iter()
                .all(|c| c.len() == 1 || c.len() as u64 == self.l)
            && self
                .xy_orbits
                .iter()
                .all(|c| c.len() == 1 || self.k % c.len() as u64 == 0)
    }
}

/// Higman's formula g = (2 - (v - e + f))/2.
pub fn genus_higman(v: u64, e: u64, f: u64) -> Result<i64> {
    let chi = v as i128 - e as i128 + f as i128;
    if (2 - chi) % 2 != 0 {
        return Err(Error::ParityError { chi: chi as i64 });
    }
    Ok(((2 - chi) / 2) as i64)
}

/// Fixed-point form of the genus.  Exact integer arithmetic; a
/// non-integral value means the inputs are inconsistent.
pub fn genus_fixedpoint(
    p: u64,
    k: u64,
    l: u64,
    eta_x: u64,
    eta_y: u64,
    eta_xy: u64,
) -> Result<i64> {
    let (p, k, l) = (p as i128, k as i128, l as i128);
    let (ex, ey, exy) = (eta_x as i128, eta_y as i128, eta_xy as i128);
    let numer = (2 * (k + l) - k * l) * (p + 1) + k * l * (2 * (ey + exy) + ex)
        - 2 * (k * ey + l * exy);
    let denom = 4 * k * l;
    if numer % denom != 0 {
        return Err(Error::NonIntegralGenus { numer, denom });
    }
    Ok((1 - numer / denom) as i64)
}

/// Januarial specialization: g = -(p+1-eta_y)/2l + (p+1-2 eta_y - eta_x)/4.
pub fn genus_januarial(p: u64, l: u64, eta_x: u64, eta_y: u64) -> Result<i64> {
    let (p, l) = (p as i128, l as i128);
    let (ex, ey) = (eta_x as i128, eta_y as i128);
    // Common denominator 4l.
    let numer = -2 * (p + 1 - ey) + l * (p + 1 - 2 * ey - ex);
    let denom = 4 * l;
    if numer % denom != 0 {
        return Err(Error::NonIntegralGenus { numer, denom });
    }
    Ok((numer / denom) as i64)
}

/// The v, e, f counts of a diagram together with every applicable genus
/// value.  All values must agree; disagreement is a bug.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenusBreakdown {
    pub v: u64,
    pub e: u64,
    pub f: u64,
    pub genus_higman: i64,
    pub genus_fixedpoint: i64,
    pub genus_januarial: Option<i64>,
}

impl GenusBreakdown {
    /// Compute every genus route for a connected diagram.
    pub fn for_diagram(d: &CosetDiagram) -> Result<GenusBreakdown> {
        if !d.connected {
            return Err(Error::Disconnected);
        }
        let (v, e, f) = d.vef();
        let gh = genus_higman(v, e, f)?;
        let gf = genus_fixedpoint(d.p, d.k, d.l, d.eta_x, d.eta_y, d.eta_xy)?;
        let gj = if d.is_januarial() {
            Some(genus_januarial(d.p, d.l, d.eta_x, d.eta_y)?)
        } else {
            None
        };
        debug_assert_eq!(gh, gf, "genus routes disagree");
        Ok(GenusBreakdown {
            v,
            e,
            f,
            genus_higman: gh,
            genus_fixedpoint: gf,
            genus_januarial: gj,
        })
    }

    /// The agreed genus value.
    pub fn genus(&self) -> i64 {
        self.genus_higman
    }
}
