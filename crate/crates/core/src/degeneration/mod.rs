//! Vertical tangents of curves degenerating to a union of lines.
//!
//! The family is a pencil `(1 - s)·∏ l_j + s·g` toward the line union. It
//! stands in for a variation constrained to a bitangency locus, which is not
//! constructed here; the pencil already exhibits the clustering of the
//! `n(n-1)` vertical tangents, two at each intersection of two lines.

mod family;
mod homotopy;
mod poly;
mod resultant;
mod solver;
mod univariate;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use family::{CurveFamily, Node};
pub use poly::{product_of_lines, BivariatePoly};
pub use resultant::{resultant_y, resultant_y_at};
pub use solver::{vertical_tangents, Backend, SolverOptions, TangentPoint};
pub use univariate::{roots_aberth, roots_companion};

pub const DEFAULT_S_VALUES: [f64; 3] = [1e-2, 1e-3, 1e-4];
pub const DEFAULT_RADIUS_FACTOR: f64 = 0.25;

pub const FAMILY_DESCRIPTION: &str = "pencil (1-s)*prod(l_j) + s*g toward the union of lines, \
g random with coefficients uniform in [-1, 1]; substitutes for a variation constrained to the bitangency locus";

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DegenerationError {
    #[error("solver failure: {0}")]
    SolverFailure(String),
    #[error("singular curve: {0}")]
    SingularCurve(String),
    #[error("tangent point {tangent} lies within the cluster radius of nodes {nodes:?}")]
    ClusterAmbiguity { tangent: usize, nodes: Vec<(usize, usize)> },
    #[error("cluster radius {radius} must be positive and below half the node separation {separation}")]
    InvalidClusterRadius { radius: f64, separation: f64 },
    #[error("invalid lines: {0}")]
    InvalidLines(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusterCount {
    pub lines: (usize, usize),
    pub x: f64,
    pub y: f64,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TangentReport {
    pub s: f64,
    pub tangents: Vec<TangentPoint>,
    /// One entry per node, in node order.
    pub clusters: Vec<ClusterCount>,
    /// Indices into `tangents`.
    pub unclustered: Vec<usize>,
    pub expected_count: usize,
    pub two_per_node: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DegenerationReport {
    pub n: usize,
    pub genus: usize,
    pub family: String,
    pub seed: u64,
    pub cluster_radius: f64,
    pub reports: Vec<TangentReport>,
    /// Largest sampled `s` from which every smaller sample has two tangents
    /// per node and none unclustered.
    pub settled_from: Option<f64>,
    pub pass: bool,
}

fn distance(p: &TangentPoint, node: &Node) -> f64 {
    let dx = p.x - Complex64::new(node.x, 0.0);
    let dy = p.y - Complex64::new(node.y, 0.0);
    dx.norm().hypot(dy.norm())
}

/// Assigns each tangent to the node within `radius`, if any.
pub fn cluster(
    tangents: &[TangentPoint],
    nodes: &[Node],
    radius: f64,
) -> Result<(Vec<ClusterCount>, Vec<usize>), DegenerationError> {
    let mut clusters: Vec<ClusterCount> = nodes
        .iter()
        .map(|n| ClusterCount { lines: n.lines, x: n.x, y: n.y, count: 0 })
        .collect();
    let mut unclustered = Vec::new();
    for (t, p) in tangents.iter().enumerate() {
        let near: Vec<usize> = (0..nodes.len())
            .filter(|&k| distance(p, &nodes[k]) <= radius)
            .collect();
        match near.as_slice() {
            [] => unclustered.push(t),
            [k] => clusters[*k].count += 1,
            _ => {
                return Err(DegenerationError::ClusterAmbiguity {
                    tangent: t,
                    nodes: near.iter().map(|&k| nodes[k].lines).collect(),
                })
            }
        }
    }
    Ok((clusters, unclustered))
}

/// Solves for the vertical tangents of `family.member(s)` at each `s` and
/// clusters them to the line intersections.
pub fn run_degeneration(
    family: &CurveFamily,
    s_values: &[f64],
    cluster_radius: Option<f64>,
    opts: &SolverOptions,
) -> Result<DegenerationReport, DegenerationError> {
    if s_values.is_empty() {
        return Err(DegenerationError::InvalidParameter("no s values".into()));
    }
    if let Some(s) = s_values.iter().find(|s| !(0.0..=1.0).contains(*s)) {
        return Err(DegenerationError::InvalidParameter(format!("s = {s} outside [0, 1]")));
    }
    if s_values.windows(2).any(|w| w[1] >= w[0]) {
        return Err(DegenerationError::InvalidParameter(
            "s values must be strictly decreasing".into(),
        ));
    }
    let separation = family.min_node_separation();
    let radius = cluster_radius.unwrap_or(DEFAULT_RADIUS_FACTOR * separation);
    if !(radius > 0.0 && radius < 0.5 * separation) {
        return Err(DegenerationError::InvalidClusterRadius { radius, separation });
    }

    let n = family.n();
    let nodes = family.nodes();
    let mut reports = Vec::with_capacity(s_values.len());
    for &s in s_values {
        let tangents = vertical_tangents(&family.member(s), opts)?;
        let (clusters, unclustered) = cluster(&tangents, &nodes, radius)?;
        let expected_count = n * (n - 1);
        let two_per_node = tangents.len() == expected_count
            && unclustered.is_empty()
            && clusters.iter().all(|c| c.count == 2);
        reports.push(TangentReport { s, tangents, clusters, unclustered, expected_count, two_per_node });
    }

    let settled_from = reports
        .iter()
        .rev()
        .take_while(|r| r.two_per_node)
        .last()
        .map(|r| r.s);
    Ok(DegenerationReport {
        n,
        genus: crate::genus(n),
        family: FAMILY_DESCRIPTION.to_string(),
        seed: family.seed(),
        cluster_radius: radius,
        reports,
        settled_from,
        pass: settled_from.is_some(),
    })
}
