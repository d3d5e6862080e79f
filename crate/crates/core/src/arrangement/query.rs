use serde::{Deserialize, Serialize};

use super::{AlcoveId, Arrangement, ArrangementError, EdgeId, VertexId};
use crate::geom::{
    intersect, line_through, orientation_sign, point_in_convex_polygon, polygon_turn, Location,
    ProjPoint,
};

/// Closed intersection of two distinct alcoves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum AlcoveMeet {
    Empty,
    Vertex(VertexId),
    Edge(EdgeId),
}

/// Clips the convex polygon `subject` to the closed convex polygon `clip`
/// (both counterclockwise). The result may contain repeated points when the
/// polygons only touch.
fn clip_convex(subject: &[ProjPoint], clip: &[ProjPoint]) -> Result<Vec<ProjPoint>, ArrangementError> {
    let mut out = subject.to_vec();
    for (k, c0) in clip.iter().enumerate() {
        if out.is_empty() {
            break;
        }
        let c1 = &clip[(k + 1) % clip.len()];
        let input = std::mem::take(&mut out);
        let signs: Vec<i8> = input
            .iter()
            .map(|p| orientation_sign(c0, c1, p))
            .collect::<Result<_, _>>()?;
        for i in 0..input.len() {
            let j = (i + 1) % input.len();
            if signs[i] >= 0 {
                out.push(input[i].clone());
            }
            if signs[i] * signs[j] < 0 {
                let seg = line_through(&input[i], &input[j])?;
                let cut = line_through(c0, c1)?;
                out.push(intersect(&seg, &cut)?);
            }
        }
    }
    Ok(out)
}

fn bboxes_overlap(arr: &Arrangement, a: AlcoveId, b: AlcoveId) -> bool {
    let (p, q) = (&arr.alcoves[a].bbox, &arr.alcoves[b].bbox);
    p[0] <= q[2] && q[0] <= p[2] && p[1] <= q[3] && q[1] <= p[3]
}

/// Classifies the closed intersection of alcoves `a` and `b` by exact convex
/// clipping. A two-dimensional overlap, or a contact that is not an
/// arrangement vertex or edge, is reported as an invariant violation.
pub fn alcove_intersection(
    arr: &Arrangement,
    a: AlcoveId,
    b: AlcoveId,
) -> Result<AlcoveMeet, ArrangementError> {
    if a == b || a >= arr.alcoves.len() || b >= arr.alcoves.len() {
        return Err(ArrangementError::InvalidPolygon(format!(
            "alcove pair ({a}, {b}) is not two distinct alcoves"
        )));
    }
    if !bboxes_overlap(arr, a, b) {
        return Ok(AlcoveMeet::Empty);
    }
    let mut pts = clip_convex(&arr.alcove_points(a), &arr.alcove_points(b))?;
    pts.sort();
    pts.dedup();
    let violation = |msg: String| Err(ArrangementError::InvariantViolation(msg));
    match pts.len() {
        0 => Ok(AlcoveMeet::Empty),
        1 => match arr.find_vertex(&pts[0]) {
            Some(v) => Ok(AlcoveMeet::Vertex(v)),
            None => violation(format!("alcoves {a} and {b} touch at a non-vertex {}", pts[0])),
        },
        _ => {
            for p in &pts[2..] {
                if orientation_sign(&pts[0], &pts[1], p)? != 0 {
                    return violation(format!("alcoves {a} and {b} overlap in an open set"));
                }
            }
            // Collinear: the extreme points are the lexicographic min and max.
            let (lo, hi) = (&pts[0], &pts[pts.len() - 1]);
            let ends = (arr.find_vertex(lo), arr.find_vertex(hi));
            match ends {
                (Some(u), Some(v)) => match arr.edge_between(u, v) {
                    Some(e) => Ok(AlcoveMeet::Edge(e)),
                    None => violation(format!("alcoves {a} and {b} share a segment that is not an edge")),
                },
                _ => violation(format!("alcoves {a} and {b} share a segment off the vertex set")),
            }
        }
    }
}

/// Counts arrangement vertices strictly inside the convex polygon with the
/// given corners, or strictly inside one of its sides.
///
/// The corners must be arrangement vertices, consecutive corners must share
/// a line, and the sides must lie on distinct lines.
pub fn vertex_number(arr: &Arrangement, corners: &[VertexId]) -> Result<usize, ArrangementError> {
    let invalid = |msg: String| Err(ArrangementError::InvalidPolygon(msg));
    let m = corners.len();
    if m < 3 {
        return invalid(format!("{m} corners"));
    }
    if let Some(&v) = corners.iter().find(|&&v| v >= arr.vertices.len()) {
        return invalid(format!("unknown vertex {v}"));
    }
    let mut sorted = corners.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != m {
        return invalid("repeated corner".into());
    }

    let mut side_lines = Vec::with_capacity(m);
    for k in 0..m {
        let (u, v) = (&arr.vertices[corners[k]], &arr.vertices[corners[(k + 1) % m]]);
        let shared = [u.lines.0, u.lines.1]
            .into_iter()
            .find(|l| *l == v.lines.0 || *l == v.lines.1);
        match shared {
            Some(l) => side_lines.push(l),
            None => return invalid(format!("side {k} does not lie on an arrangement line")),
        }
    }
    let mut distinct = side_lines.clone();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() != m {
        return invalid("two sides lie on the same line".into());
    }

    let pts: Vec<ProjPoint> = corners.iter().map(|&v| arr.vertices[v].point.clone()).collect();
    if polygon_turn(&pts).is_err() {
        return invalid("polygon is not strictly convex".into());
    }

    let mut count = 0;
    for (id, v) in arr.vertices.iter().enumerate() {
        if corners.contains(&id) {
            continue;
        }
        if point_in_convex_polygon(&v.point, &pts)? != Location::Exterior {
            count += 1;
        }
    }
    Ok(count)
}
