use std::collections::BTreeSet;

use num_bigint::BigInt;

use super::{build, canonical_cycle, AlcoveId, Arrangement, ArrangementError};
use crate::geom::{intersect, point_in_convex_polygon, Location, ProjLine, ProjPoint};

/// What one bounded segment of an inserted line does to the old subdivision.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SegmentFate {
    /// The segment runs through this old alcove and cuts it in two.
    Splits(AlcoveId),
    /// The segment runs through an unbounded face and closes off a new alcove.
    Creates,
}

/// Incremental account of inserting a line into an arrangement, computed
/// from the old subdivision alone.
#[derive(Debug, Clone)]
pub struct InsertionTrace {
    /// Crossings of the new line with the old lines, in order along it.
    pub crossings: Vec<ProjPoint>,
    /// Fate of each segment between consecutive crossings.
    pub segments: Vec<SegmentFate>,
    /// Predicted alcoves: untouched old alcoves plus both halves of every
    /// split one, as canonical point cycles.
    pub predicted: Vec<Vec<ProjPoint>>,
    old_count: usize,
}

impl InsertionTrace {
    pub fn created(&self) -> usize {
        self.segments.iter().filter(|s| **s == SegmentFate::Creates).count()
    }

    pub fn split(&self) -> usize {
        self.segments.len() - self.created()
    }

    /// Old count, plus one for each split alcove and one for each new one.
    pub fn predicted_count(&self) -> usize {
        self.old_count + self.segments.len()
    }

    /// Checks the prediction against an arrangement rebuilt from scratch:
    /// every predicted polygon appears there, and the remaining alcoves are
    /// exactly the created ones, each bounded by one of the `Creates`
    /// segments.
    pub fn verify_against(&self, rebuilt: &Arrangement) -> Result<(), ArrangementError> {
        let fail = |msg: String| Err(ArrangementError::InvariantViolation(msg));
        if rebuilt.alcoves().len() != self.predicted_count() {
            return fail(format!(
                "rebuilt arrangement has {} alcoves, incremental count is {}",
                rebuilt.alcoves().len(),
                self.predicted_count()
            ));
        }
        let mut remaining: BTreeSet<Vec<ProjPoint>> = rebuilt.canonical_alcoves().into_iter().collect();
        for poly in &self.predicted {
            if !remaining.remove(poly) {
                return fail(format!("predicted alcove {poly:?} missing after rebuild"));
            }
        }
        let mut fresh: Vec<(ProjPoint, ProjPoint)> = self
            .segments
            .iter()
            .enumerate()
            .filter(|(_, s)| **s == SegmentFate::Creates)
            .map(|(k, _)| (self.crossings[k].clone(), self.crossings[k + 1].clone()))
            .collect();
        if remaining.len() != fresh.len() {
            return fail(format!(
                "{} unexplained alcoves for {} created segments",
                remaining.len(),
                fresh.len()
            ));
        }
        for poly in remaining {
            let m = poly.len();
            let pos = fresh.iter().position(|(p, q)| {
                (0..m).any(|k| {
                    let (a, b) = (&poly[k], &poly[(k + 1) % m]);
                    (a == p && b == q) || (a == q && b == p)
                })
            });
            match pos {
                Some(i) => {
                    fresh.swap_remove(i);
                }
                None => return fail(format!("new alcove {poly:?} has no created segment as a side")),
            }
        }
        Ok(())
    }
}

/// Inserts `line` by rebuilding the subdivision, and checks that the
/// alcove count grew by exactly `n - 1` and the vertex count by `n`.
pub fn insert_line(arr: &Arrangement, line: ProjLine) -> Result<Arrangement, ArrangementError> {
    let mut lines = arr.lines().to_vec();
    lines.push(line);
    let next = build(&lines)?;
    let n = arr.n();
    if next.vertices().len() != arr.vertices().len() + n {
        return Err(ArrangementError::InvariantViolation(format!(
            "inserting into {n} lines added {} vertices",
            next.vertices().len() - arr.vertices().len()
        )));
    }
    if next.alcoves().len() != arr.alcoves().len() + (n - 1) {
        return Err(ArrangementError::InvariantViolation(format!(
            "inserting into {n} lines changed the alcove count {} -> {}",
            arr.alcoves().len(),
            next.alcoves().len()
        )));
    }
    Ok(next)
}

/// Walks `line` through the existing subdivision: locates each segment
/// between consecutive crossings and cuts every alcove it passes through.
pub fn trace_insertion(arr: &Arrangement, line: &ProjLine) -> Result<InsertionTrace, ArrangementError> {
    let mut lines = arr.lines().to_vec();
    lines.push(line.clone());
    let position = super::check_position(&lines)?;
    if !position.is_bounded_general() {
        return Err(ArrangementError::NotBoundedGeneralPosition(position));
    }

    let d = line.direction();
    let mut crossings: Vec<(ProjPoint, [BigInt; 3])> = arr
        .lines()
        .iter()
        .map(|old| {
            let p = intersect(old, line)?;
            let rep = p.affine_ints().expect("bounded position");
            Ok((p, rep))
        })
        .collect::<Result<_, ArrangementError>>()?;
    crossings.sort_by(|(_, u), (_, v)| {
        let tu = &u[0] * &d[0] + &u[1] * &d[1];
        let tv = &v[0] * &d[0] + &v[1] * &d[1];
        (tu * &v[2]).cmp(&(tv * &u[2]))
    });

    let polys: Vec<Vec<ProjPoint>> = (0..arr.alcoves().len()).map(|a| arr.alcove_points(a)).collect();
    let mut segments = Vec::with_capacity(crossings.len().saturating_sub(1));
    for w in crossings.windows(2) {
        let (p, q) = (&w[0].1, &w[1].1);
        // Midpoint (p/zp + q/zq) / 2 in homogeneous form.
        let mid = ProjPoint::from_ints([
            &p[0] * &q[2] + &q[0] * &p[2],
            &p[1] * &q[2] + &q[1] * &p[2],
            BigInt::from(2) * &p[2] * &q[2],
        ])?;
        let mut fate = SegmentFate::Creates;
        for (a, poly) in polys.iter().enumerate() {
            if point_in_convex_polygon(&mid, poly)? == Location::Interior {
                fate = SegmentFate::Splits(a);
                break;
            }
        }
        segments.push(fate);
    }

    let mut predicted = Vec::new();
    for (a, poly) in polys.iter().enumerate() {
        if !segments.contains(&SegmentFate::Splits(a)) {
            predicted.push(canonical_cycle(poly.clone()));
            continue;
        }
        let sides: Vec<i8> = poly.iter().map(|p| line.side(p)).collect::<Result<_, _>>()?;
        let carriers = &arr.alcoves()[a].boundary_lines;
        for keep in [1i8, -1] {
            let mut piece = Vec::new();
            for k in 0..poly.len() {
                let next = (k + 1) % poly.len();
                if sides[k] == keep {
                    piece.push(poly[k].clone());
                }
                if sides[k] != sides[next] {
                    piece.push(intersect(&arr.lines()[carriers[k]], line)?);
                }
            }
            predicted.push(canonical_cycle(piece));
        }
    }

    Ok(InsertionTrace {
        crossings: crossings.into_iter().map(|(p, _)| p).collect(),
        segments,
        predicted,
        old_count: arr.alcoves().len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(a: i64, b: i64, c: i64) -> ProjLine {
        ProjLine::from_i64(a, b, c).unwrap()
    }

    #[test]
    fn triangle_plus_fourth_line() {
        let arr = build(&[l(1, 0, 0), l(0, 1, 0), l(1, 1, -4)]).unwrap();
        let fourth = l(1, -1, -1);
        let trace = trace_insertion(&arr, &fourth).unwrap();
        assert_eq!(trace.crossings.len(), 3);
        assert_eq!(trace.split(), 1);
        assert_eq!(trace.created(), 1);
        let next = insert_line(&arr, fourth).unwrap();
        assert_eq!(next.alcoves().len(), 3);
        trace.verify_against(&next).unwrap();
    }

    #[test]
    fn line_missing_the_triangle_creates_only() {
        let arr = build(&[l(1, 0, 0), l(0, 1, 0), l(1, 1, -1)]).unwrap();
        // x + 2y = 10 stays clear of the unit triangle
        let far = l(1, 2, -10);
        let trace = trace_insertion(&arr, &far).unwrap();
        assert_eq!(trace.split(), 0);
        assert_eq!(trace.created(), 2);
        let next = insert_line(&arr, far).unwrap();
        trace.verify_against(&next).unwrap();
    }

    #[test]
    fn insertion_must_stay_in_general_position() {
        let arr = build(&[l(1, 0, 0), l(0, 1, 0), l(1, 1, -1)]).unwrap();
        assert!(insert_line(&arr, l(1, -1, 0)).is_err());
        assert!(trace_insertion(&arr, &l(1, 0, -3)).is_err());
    }
}
