//! Exact plane line arrangements and their bounded faces ("alcoves"),
//! regular n-gon edge-line arrangements with their concentric intersection
//! rings, and a numeric check of how the vertical tangents of a smooth curve
//! gather at the nodes when the curve degenerates to a union of lines.

pub mod arrangement;
pub mod degeneration;
pub mod geom;
pub mod harmonic;
pub mod random;
pub mod report;
pub mod svg;

pub use arrangement::{
    alcove_intersection, build, check_position, enumerate_alcoves, insert_line, trace_insertion,
    vertex_number, Alcove, AlcoveMeet, Arrangement, ArrangementError, Position, Witness,
};
pub use geom::{
    intersect, line_through, orientation, point_in_convex_polygon, ExactScalar, GeomError,
    Location, Orientation, ProjLine, ProjPoint,
};

/// Genus `(n-1)(n-2)/2` of a nonsingular plane curve of degree `n`.
pub fn genus(n: usize) -> usize {
    arrangement::expected_alcove_count(n)
}
