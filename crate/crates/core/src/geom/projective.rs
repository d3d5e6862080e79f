use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{ExactScalar, GeomError};

/// Homogeneous integer triple with content removed and the leading nonzero
/// coordinate positive. Two triples that differ by a nonzero scalar
/// normalize to the same value, so projective equality is `==`.
type Triple = [BigInt; 3];

fn normalize(mut v: Triple) -> Option<Triple> {
    let lead = v.iter().position(|c| !c.is_zero())?;
    let g = v.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if !g.is_one() {
        for c in v.iter_mut() {
            *c /= &g;
        }
    }
    if v[lead].is_negative() {
        for c in v.iter_mut() {
            *c = -&*c;
        }
    }
    Some(v)
}

/// Clears denominators: returns integers proportional to the inputs.
fn integerize(coords: [&ExactScalar; 3]) -> Triple {
    let lcm = coords
        .iter()
        .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    coords.map(|c| c.numer() * (&lcm / c.denom()))
}

pub(crate) fn cross(u: &Triple, v: &Triple) -> Triple {
    [
        &u[1] * &v[2] - &u[2] * &v[1],
        &u[2] * &v[0] - &u[0] * &v[2],
        &u[0] * &v[1] - &u[1] * &v[0],
    ]
}

pub(crate) fn dot(u: &Triple, v: &Triple) -> BigInt {
    &u[0] * &v[0] + &u[1] * &v[1] + &u[2] * &v[2]
}

/// Point `[X:Y:Z]` of the real projective plane. `Z = 0` is a point at
/// infinity; otherwise the affine point is `(X/Z, Y/Z)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    coords: Triple,
}

/// Line `aX + bY + cZ = 0`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjLine {
    coords: Triple,
}

impl ProjPoint {
    pub fn new(x: ExactScalar, y: ExactScalar, z: ExactScalar) -> Result<Self, GeomError> {
        Self::from_ints(integerize([&x, &y, &z]))
    }

    pub fn affine(x: ExactScalar, y: ExactScalar) -> Self {
        Self::new(x, y, ExactScalar::one()).expect("affine point has Z = 1")
    }

    /// Affine point from integer coordinates.
    pub fn affine_int(x: i64, y: i64) -> Self {
        Self::from_ints([x.into(), y.into(), BigInt::one()]).expect("Z = 1")
    }

    pub fn from_ints(coords: Triple) -> Result<Self, GeomError> {
        normalize(coords)
            .map(|coords| Self { coords })
            .ok_or(GeomError::ZeroVector)
    }

    pub fn ints(&self) -> &Triple {
        &self.coords
    }

    /// Representative with `Z > 0`; `None` for points at infinity.
    pub(crate) fn affine_ints(&self) -> Option<Triple> {
        match self.coords[2].sign() {
            num_bigint::Sign::NoSign => None,
            num_bigint::Sign::Plus => Some(self.coords.clone()),
            num_bigint::Sign::Minus => Some(self.coords.clone().map(|c| -c)),
        }
    }

    pub fn x(&self) -> ExactScalar {
        ExactScalar::from_integer(self.coords[0].clone())
    }

    pub fn y(&self) -> ExactScalar {
        ExactScalar::from_integer(self.coords[1].clone())
    }

    pub fn z(&self) -> ExactScalar {
        ExactScalar::from_integer(self.coords[2].clone())
    }

    pub fn is_at_infinity(&self) -> bool {
        self.coords[2].is_zero()
    }

    pub fn to_affine(&self) -> Result<(ExactScalar, ExactScalar), GeomError> {
        if self.is_at_infinity() {
            return Err(GeomError::PointAtInfinity);
        }
        let z = self.z();
        Ok((self.x().checked_div(&z)?, self.y().checked_div(&z)?))
    }

    pub fn to_f64(&self) -> Option<(f64, f64)> {
        self.to_affine().ok().map(|(x, y)| (x.to_f64(), y.to_f64()))
    }
}

impl ProjLine {
    pub fn new(a: ExactScalar, b: ExactScalar, c: ExactScalar) -> Result<Self, GeomError> {
        Self::from_ints(integerize([&a, &b, &c]))
    }

    pub fn from_ints(coords: Triple) -> Result<Self, GeomError> {
        normalize(coords)
            .map(|coords| Self { coords })
            .ok_or(GeomError::ZeroVector)
    }

    pub fn from_i64(a: i64, b: i64, c: i64) -> Result<Self, GeomError> {
        Self::from_ints([a.into(), b.into(), c.into()])
    }

    pub fn ints(&self) -> &Triple {
        &self.coords
    }

    pub fn a(&self) -> ExactScalar {
        ExactScalar::from_integer(self.coords[0].clone())
    }

    pub fn b(&self) -> ExactScalar {
        ExactScalar::from_integer(self.coords[1].clone())
    }

    pub fn c(&self) -> ExactScalar {
        ExactScalar::from_integer(self.coords[2].clone())
    }

    /// `aX + bY + cZ` on the stored representatives; zero iff incident.
    pub fn residual(&self, p: &ProjPoint) -> BigInt {
        dot(&self.coords, &p.coords)
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        self.residual(p).is_zero()
    }

    /// The line at infinity `Z = 0` is the only line with no affine part.
    pub fn is_line_at_infinity(&self) -> bool {
        self.coords[0].is_zero() && self.coords[1].is_zero()
    }

    /// Direction vector `(-b, a)` of the affine line.
    pub(crate) fn direction(&self) -> [BigInt; 2] {
        [-&self.coords[1], self.coords[0].clone()]
    }

    /// Sign of `ax + by + c` at an affine point: which side of the line it is on.
    pub fn side(&self, p: &ProjPoint) -> Result<i8, GeomError> {
        let q = p.affine_ints().ok_or(GeomError::PointAtInfinity)?;
        Ok(sign(&dot(&self.coords, &q)))
    }

    /// The point at infinity of the affine line.
    pub fn point_at_infinity(&self) -> ProjPoint {
        let [dx, dy] = self.direction();
        ProjPoint::from_ints([dx, dy, BigInt::zero()]).expect("line has an affine part")
    }

    /// `(a, b, c)` as doubles, for numeric consumers.
    pub fn to_f64(&self) -> [f64; 3] {
        [self.a().to_f64(), self.b().to_f64(), self.c().to_f64()]
    }
}

pub(crate) fn sign(v: &BigInt) -> i8 {
    match v.sign() {
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
        num_bigint::Sign::Plus => 1,
    }
}

/// The line incident to two distinct points.
pub fn line_through(p: &ProjPoint, q: &ProjPoint) -> Result<ProjLine, GeomError> {
    ProjLine::from_ints(cross(&p.coords, &q.coords)).map_err(|_| GeomError::IdenticalPoints)
}

/// The common point of two distinct lines. Parallel affine lines meet at
/// infinity (`Z = 0`).
pub fn intersect(l1: &ProjLine, l2: &ProjLine) -> Result<ProjPoint, GeomError> {
    ProjPoint::from_ints(cross(&l1.coords, &l2.coords)).map_err(|_| GeomError::IdenticalLines)
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [x, y, z] = &self.coords;
        write!(f, "[{x}:{y}:{z}]")
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_affine() {
            Ok((x, y)) => write!(f, "({x}, {y})"),
            Err(_) => fmt::Debug::fmt(self, f),
        }
    }
}

impl fmt::Debug for ProjLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = &self.coords;
        write!(f, "[{a}:{b}:{c}]")
    }
}

impl fmt::Display for ProjLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = &self.coords;
        write!(f, "{a} {b} {c}")
    }
}

/// Lines serialize as `["a", "b", "c"]` exact strings.
impl Serialize for ProjLine {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        [self.a(), self.b(), self.c()].serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ProjLine {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let [a, b, c] = <[ExactScalar; 3]>::deserialize(deserializer)?;
        ProjLine::new(a, b, c).map_err(serde::de::Error::custom)
    }
}

/// Points serialize as homogeneous `["X", "Y", "Z"]` exact strings.
impl Serialize for ProjPoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        [self.x(), self.y(), self.z()].serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ProjPoint {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let [x, y, z] = <[ExactScalar; 3]>::deserialize(deserializer)?;
        ProjPoint::new(x, y, z).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(x: i64, y: i64, z: i64) -> ProjPoint {
        ProjPoint::from_ints([x.into(), y.into(), z.into()]).unwrap()
    }

    fn line(a: i64, b: i64, c: i64) -> ProjLine {
        ProjLine::from_i64(a, b, c).unwrap()
    }

    #[test]
    fn line_through_axis() {
        let l = line_through(&pt(0, 0, 1), &pt(1, 0, 1)).unwrap();
        assert_eq!(l, line(0, -1, 0));
        assert_eq!(l, line(0, 1, 0));
    }

    #[test]
    fn line_through_diagonal_and_vertical() {
        assert_eq!(line_through(&pt(1, 0, 1), &pt(0, 1, 1)).unwrap(), line(1, 1, -1));
        assert_eq!(line_through(&pt(1, 0, 1), &pt(1, 1, 1)).unwrap(), line(1, 0, -1));
    }

    #[test]
    fn line_through_identical_points() {
        let err = line_through(&pt(1, 2, 1), &pt(2, 4, 2)).unwrap_err();
        assert_eq!(err, GeomError::IdenticalPoints);
    }

    #[test]
    fn intersections() {
        assert_eq!(intersect(&line(1, 0, 0), &line(0, 1, 0)).unwrap(), pt(0, 0, 1));
        // x = 0 and x = 1 are parallel: they meet at [0:1:0].
        let p = intersect(&line(1, 0, 0), &line(1, 0, -1)).unwrap();
        assert_eq!(p, pt(0, 1, 0));
        assert!(p.is_at_infinity());
        let half = ExactScalar::new(1, 2).unwrap();
        let q = intersect(&line(1, 1, -1), &line(1, -1, 0)).unwrap();
        assert_eq!(q.to_affine().unwrap(), (half.clone(), half));
        assert_eq!(
            intersect(&line(1, 1, 1), &line(2, 2, 2)).unwrap_err(),
            GeomError::IdenticalLines
        );
    }

    #[test]
    fn projective_equality_and_sign() {
        assert_eq!(pt(2, 4, 6), pt(-1, -2, -3));
        assert_eq!(pt(-1, 0, 1).ints(), &[1.into(), 0.into(), (-1).into()]);
        assert_eq!(pt(-1, 0, 1).to_affine().unwrap().0, ExactScalar::from(-1));
        assert!(ProjPoint::from_ints([0.into(), 0.into(), 0.into()]).is_err());
    }

    #[test]
    fn rational_constructor_clears_denominators() {
        let l = ProjLine::new(
            ExactScalar::new(1, 2).unwrap(),
            ExactScalar::new(1, 3).unwrap(),
            ExactScalar::from(-1),
        )
        .unwrap();
        assert_eq!(l, line(3, 2, -6));
    }

    #[test]
    fn side_of_line() {
        let l = line(1, 0, 0);
        assert_eq!(l.side(&pt(1, 5, 1)).unwrap(), 1);
        assert_eq!(l.side(&pt(-1, 5, 1)).unwrap(), -1);
        // Same affine point, negative representative.
        assert_eq!(l.side(&pt(-1, -5, -1)).unwrap(), 1);
        assert_eq!(l.side(&pt(0, 3, 1)).unwrap(), 0);
    }
}
