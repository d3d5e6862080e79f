use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::projective::{cross, dot, sign};
use super::{GeomError, ProjPoint};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Orientation {
    Left,
    Right,
    Collinear,
}

impl Orientation {
    fn from_sign(s: i8) -> Self {
        match s {
            1 => Orientation::Left,
            -1 => Orientation::Right,
            _ => Orientation::Collinear,
        }
    }

    pub fn reversed(self) -> Self {
        match self {
            Orientation::Left => Orientation::Right,
            Orientation::Right => Orientation::Left,
            Orientation::Collinear => Orientation::Collinear,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Location {
    Interior,
    OnBoundary,
    Exterior,
}

/// Turn direction of `p -> q -> r`: `Left` is counterclockwise.
///
/// The homogeneous determinant equals the affine one times `Zp·Zq·Zr`, so
/// its sign is corrected by the signs of the `Z` coordinates.
pub fn orientation(p: &ProjPoint, q: &ProjPoint, r: &ProjPoint) -> Result<Orientation, GeomError> {
    Ok(Orientation::from_sign(orientation_sign(p, q, r)?))
}

pub(crate) fn orientation_sign(p: &ProjPoint, q: &ProjPoint, r: &ProjPoint) -> Result<i8, GeomError> {
    let zs = [p, q, r].map(|v| sign(&v.ints()[2]));
    if zs.contains(&0) {
        return Err(GeomError::PointAtInfinity);
    }
    let det: BigInt = dot(p.ints(), &cross(q.ints(), r.ints()));
    Ok(sign(&det) * zs[0] * zs[1] * zs[2])
}

/// Locates `p` relative to a strictly convex polygon given by its vertices
/// in order. Clockwise input is accepted and treated as its reversal.
pub fn point_in_convex_polygon(p: &ProjPoint, poly: &[ProjPoint]) -> Result<Location, GeomError> {
    let turn = polygon_turn(poly)?;
    if p.is_at_infinity() {
        return Err(GeomError::PointAtInfinity);
    }
    let mut on_edge = false;
    for (i, a) in poly.iter().enumerate() {
        let b = &poly[(i + 1) % poly.len()];
        match orientation_sign(a, b, p)? * turn {
            -1 => return Ok(Location::Exterior),
            0 => on_edge = true,
            _ => {}
        }
    }
    Ok(if on_edge {
        Location::OnBoundary
    } else {
        Location::Interior
    })
}

/// Common turn sign (+1 counterclockwise, -1 clockwise) of every consecutive
/// vertex triple; errors if the polygon is not strictly convex.
pub(crate) fn polygon_turn(poly: &[ProjPoint]) -> Result<i8, GeomError> {
    if poly.len() < 3 {
        return Err(GeomError::DegeneratePolygon);
    }
    let m = poly.len();
    let mut turn = 0;
    for i in 0..m {
        let s = orientation_sign(&poly[i], &poly[(i + 1) % m], &poly[(i + 2) % m])?;
        if s == 0 || (turn != 0 && s != turn) {
            return Err(GeomError::DegeneratePolygon);
        }
        turn = s;
    }
    Ok(turn)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::ExactScalar;

    fn p(x: i64, y: i64) -> ProjPoint {
        ProjPoint::affine_int(x, y)
    }

    #[test]
    fn orientation_cases() {
        assert_eq!(orientation(&p(0, 0), &p(1, 0), &p(0, 1)).unwrap(), Orientation::Left);
        assert_eq!(orientation(&p(0, 0), &p(1, 0), &p(2, 0)).unwrap(), Orientation::Collinear);
        assert_eq!(orientation(&p(0, 0), &p(0, 1), &p(1, 0)).unwrap(), Orientation::Right);
    }

    #[test]
    fn orientation_ignores_representative_sign() {
        let neg = ProjPoint::from_ints([0.into(), (-1).into(), (-1).into()]).unwrap();
        assert_eq!(orientation(&p(0, 0), &p(1, 0), &neg).unwrap(), Orientation::Left);
    }

    #[test]
    fn orientation_rejects_infinity() {
        let inf = ProjPoint::from_ints([1.into(), 0.into(), 0.into()]).unwrap();
        assert_eq!(
            orientation(&p(0, 0), &p(1, 0), &inf).unwrap_err(),
            GeomError::PointAtInfinity
        );
    }

    #[test]
    fn triangle_locations() {
        let tri = [p(0, 0), p(3, 0), p(0, 3)];
        assert_eq!(point_in_convex_polygon(&p(1, 1), &tri).unwrap(), Location::Interior);
        let mid = ProjPoint::affine(ExactScalar::new(3, 2).unwrap(), ExactScalar::zero());
        assert_eq!(point_in_convex_polygon(&mid, &tri).unwrap(), Location::OnBoundary);
        // centroid (1,1) reflected across the x axis
        assert_eq!(point_in_convex_polygon(&p(1, -1), &tri).unwrap(), Location::Exterior);
        assert_eq!(point_in_convex_polygon(&p(0, 0), &tri).unwrap(), Location::OnBoundary);
    }

    #[test]
    fn clockwise_input_is_accepted() {
        let tri = [p(0, 0), p(0, 3), p(3, 0)];
        assert_eq!(point_in_convex_polygon(&p(1, 1), &tri).unwrap(), Location::Interior);
        assert_eq!(point_in_convex_polygon(&p(5, 5), &tri).unwrap(), Location::Exterior);
    }

    #[test]
    fn degenerate_polygons() {
        assert_eq!(
            point_in_convex_polygon(&p(0, 0), &[p(0, 0), p(1, 1)]).unwrap_err(),
            GeomError::DegeneratePolygon
        );
        let flat = [p(0, 0), p(1, 0), p(2, 0), p(1, 1)];
        assert_eq!(
            point_in_convex_polygon(&p(1, 0), &flat).unwrap_err(),
            GeomError::DegeneratePolygon
        );
        let reflex = [p(0, 0), p(4, 0), p(1, 1), p(0, 4)];
        assert!(point_in_convex_polygon(&p(1, 0), &reflex).is_err());
    }
}
