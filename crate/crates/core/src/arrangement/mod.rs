//! Planar subdivision of a finite set of lines in bounded general position.
//!
//! Vertices are the pairwise intersections, edges the maximal vertex-free
//! bounded segments, and alcoves the bounded faces. Faces are traced on a
//! half-edge structure whose next-pointers come from exact angular order at
//! each vertex, so every decision is made in integer arithmetic.

mod build;
mod insert;
mod position;
mod query;

use std::collections::{BTreeMap, HashMap};

use crate::geom::{ExactScalar, GeomError, ProjLine, ProjPoint};

pub use build::build;
pub use insert::{insert_line, trace_insertion, InsertionTrace, SegmentFate};
pub use position::{check_position, Position, Witness};
pub use query::{alcove_intersection, vertex_number, AlcoveMeet};

pub type VertexId = usize;
pub type HalfEdgeId = usize;
pub type EdgeId = usize;
pub type AlcoveId = usize;

#[derive(Debug, thiserror::Error)]
pub enum ArrangementError {
    #[error("need at least 2 lines, got {0}")]
    TooFewLines(usize),
    #[error("lines are not in bounded general position: {0:?}")]
    NotBoundedGeneralPosition(Position),
    #[error("invalid polygon: {0}")]
    InvalidPolygon(String),
    #[error("arrangement invariant violated: {0}")]
    InvariantViolation(String),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

#[derive(Debug, Clone)]
pub struct Vertex {
    pub point: ProjPoint,
    /// The two lines meeting here, `lines.0 < lines.1`.
    pub lines: (usize, usize),
    pub x: ExactScalar,
    pub y: ExactScalar,
}

/// Which face lies to the left of a half-edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FaceRef {
    Alcove(AlcoveId),
    Unbounded,
}

#[derive(Debug, Clone)]
pub struct HalfEdge {
    pub origin: VertexId,
    pub target: VertexId,
    pub twin: HalfEdgeId,
    /// `None` when the face boundary leaves along an unbounded ray.
    pub next: Option<HalfEdgeId>,
    pub line: usize,
    pub face: FaceRef,
}

#[derive(Debug, Clone)]
pub struct Edge {
    pub line: usize,
    pub ends: [VertexId; 2],
    /// `half_edges[0]` runs `ends[0] -> ends[1]`.
    pub half_edges: [HalfEdgeId; 2],
}

/// A bounded face, traced counterclockwise.
#[derive(Debug, Clone)]
pub struct Alcove {
    pub boundary: Vec<HalfEdgeId>,
    /// Carrying line of each boundary half-edge, in boundary order.
    pub boundary_lines: Vec<usize>,
    /// Distinct boundary lines, ascending.
    pub line_indices: Vec<usize>,
    /// Polygon corners; corner `k` is the origin of `boundary[k]`.
    pub vertex_cycle: Vec<VertexId>,
    pub(crate) bbox: [ExactScalar; 4],
}

#[derive(Debug, Clone)]
pub struct Arrangement {
    pub(crate) lines: Vec<ProjLine>,
    pub(crate) vertices: Vec<Vertex>,
    pub(crate) half_edges: Vec<HalfEdge>,
    pub(crate) edges: Vec<Edge>,
    pub(crate) alcoves: Vec<Alcove>,
    /// Vertex ids along each line, in the order of the line's direction `(-b, a)`.
    pub(crate) line_vertices: Vec<Vec<VertexId>>,
    pub(crate) vertex_index: HashMap<ProjPoint, VertexId>,
}

impl Arrangement {
    pub fn lines(&self) -> &[ProjLine] {
        &self.lines
    }

    pub fn n(&self) -> usize {
        self.lines.len()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn half_edges(&self) -> &[HalfEdge] {
        &self.half_edges
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn alcoves(&self) -> &[Alcove] {
        &self.alcoves
    }

    pub fn line_vertices(&self, line: usize) -> &[VertexId] {
        &self.line_vertices[line]
    }

    /// Id of the vertex where lines `i` and `j` cross.
    pub fn vertex_of(&self, i: usize, j: usize) -> Option<VertexId> {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        let n = self.n();
        if i == j || j >= n {
            return None;
        }
        // Vertices are created in lexicographic (i, j) order.
        Some(i * (2 * n - i - 1) / 2 + (j - i - 1))
    }

    pub fn find_vertex(&self, p: &ProjPoint) -> Option<VertexId> {
        self.vertex_index.get(p).copied()
    }

    /// Edge joining two adjacent vertices on a common line.
    pub fn edge_between(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        let (a, b) = (&self.vertices[u], &self.vertices[v]);
        let line = [a.lines.0, a.lines.1]
            .into_iter()
            .find(|l| *l == b.lines.0 || *l == b.lines.1)?;
        let order = &self.line_vertices[line];
        let pu = order.iter().position(|&x| x == u)?;
        let pv = order.iter().position(|&x| x == v)?;
        if pu.abs_diff(pv) != 1 {
            return None;
        }
        let lo = pu.min(pv);
        let first_edge: usize = self.line_vertices[..line]
            .iter()
            .map(|vs| vs.len().saturating_sub(1))
            .sum();
        Some(first_edge + lo)
    }

    /// Number of alcoves (0, 1 or 2) bordering an edge.
    pub fn edge_alcove_degree(&self, e: EdgeId) -> usize {
        self.edges[e]
            .half_edges
            .iter()
            .filter(|&&h| matches!(self.half_edges[h].face, FaceRef::Alcove(_)))
            .count()
    }

    /// Histogram: alcove degree -> number of edges with that degree.
    pub fn edge_alcove_degrees(&self) -> BTreeMap<usize, usize> {
        let mut hist = BTreeMap::new();
        for e in 0..self.edges.len() {
            *hist.entry(self.edge_alcove_degree(e)).or_insert(0) += 1;
        }
        hist
    }

    pub fn alcove_points(&self, a: AlcoveId) -> Vec<ProjPoint> {
        self.alcoves[a]
            .vertex_cycle
            .iter()
            .map(|&v| self.vertices[v].point.clone())
            .collect()
    }

    /// Alcove polygon as exact affine coordinates.
    pub fn alcove_polygon(&self, a: AlcoveId) -> Vec<(ExactScalar, ExactScalar)> {
        self.alcoves[a]
            .vertex_cycle
            .iter()
            .map(|&v| (self.vertices[v].x.clone(), self.vertices[v].y.clone()))
            .collect()
    }

    /// Every alcove as a counterclockwise point cycle rotated to start at its
    /// smallest point, for order-independent comparisons.
    pub fn canonical_alcoves(&self) -> Vec<Vec<ProjPoint>> {
        let mut out: Vec<_> = (0..self.alcoves.len())
            .map(|a| canonical_cycle(self.alcove_points(a)))
            .collect();
        out.sort();
        out
    }
}

pub(crate) fn canonical_cycle(mut pts: Vec<ProjPoint>) -> Vec<ProjPoint> {
    if let Some(min) = (0..pts.len()).min_by(|&a, &b| pts[a].cmp(&pts[b])) {
        pts.rotate_left(min);
    }
    pts
}

/// `(n-1)(n-2)/2`, the number of bounded faces of `n >= 2` lines in bounded
/// general position.
pub fn expected_alcove_count(n: usize) -> usize {
    if n < 2 {
        0
    } else {
        (n - 1) * (n - 2) / 2
    }
}

/// Enumerates the alcoves of a built arrangement, re-checking the count
/// and the shape of each one.
pub fn enumerate_alcoves(arr: &Arrangement) -> Result<&[Alcove], ArrangementError> {
    let expected = expected_alcove_count(arr.n());
    if arr.alcoves.len() != expected {
        return Err(ArrangementError::InvariantViolation(format!(
            "{} alcoves for {} lines, expected {expected}",
            arr.alcoves.len(),
            arr.n()
        )));
    }
    for a in 0..arr.alcoves.len() {
        build::check_alcove_shape(arr, a)?;
    }
    Ok(&arr.alcoves)
}
