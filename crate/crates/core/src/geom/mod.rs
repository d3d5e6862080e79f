//! Exact projective primitives: rationals, points, lines and the
//! orientation / point-location predicates built on them.

mod parse;
mod predicates;
mod projective;
mod scalar;

pub use parse::{format_lines, parse_lines};
pub use predicates::{orientation, point_in_convex_polygon, Location, Orientation};
pub use projective::{intersect, line_through, ProjLine, ProjPoint};
pub use scalar::ExactScalar;

pub(crate) use predicates::{orientation_sign, polygon_turn};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeomError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("homogeneous coordinates are all zero")]
    ZeroVector,
    #[error("points are projectively identical")]
    IdenticalPoints,
    #[error("lines are projectively identical")]
    IdenticalLines,
    #[error("point lies at infinity")]
    PointAtInfinity,
    #[error("polygon needs at least 3 vertices and must be strictly convex")]
    DegeneratePolygon,
    #[error("invalid rational `{0}`")]
    InvalidRational(String),
    #[error("non-finite value {0}")]
    NonFinite(String),
    #[error("line file row {row}: {message}")]
    Parse { row: usize, message: String },
}
