use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::ArrangementError;
use crate::geom::{intersect, ProjLine, ProjPoint};

/// How a set of lines sits in the projective plane.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Position {
    /// No three lines concurrent and no two parallel.
    BoundedGeneral,
    /// No three lines concurrent, but these pairs meet at infinity.
    GeneralWithInfinity { parallel_pairs: Vec<(usize, usize)> },
    Degenerate { witness: Witness },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// Three lines through one point (possibly a point at infinity, i.e.
    /// three mutually parallel lines).
    Concurrent { lines: [usize; 3], point: ProjPoint },
    Duplicate { lines: [usize; 2] },
}

impl Position {
    pub fn is_bounded_general(&self) -> bool {
        matches!(self, Position::BoundedGeneral)
    }
}

/// Classifies `lines` exactly. The first witness in lexicographic pair
/// order is reported for degenerate input.
pub fn check_position(lines: &[ProjLine]) -> Result<Position, ArrangementError> {
    let n = lines.len();
    if n < 2 {
        return Err(ArrangementError::TooFewLines(n));
    }
    for i in 0..n {
        for j in i + 1..n {
            if lines[i] == lines[j] {
                return Ok(Position::Degenerate {
                    witness: Witness::Duplicate { lines: [i, j] },
                });
            }
        }
    }

    let mut seen: HashMap<ProjPoint, (usize, usize)> = HashMap::with_capacity(n * (n - 1) / 2);
    let mut parallel_pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let p = intersect(&lines[i], &lines[j])?;
            if let Some(&(a, b)) = seen.get(&p) {
                let third = if i != a && i != b { i } else { j };
                let mut trio = [a, b, third];
                trio.sort_unstable();
                return Ok(Position::Degenerate {
                    witness: Witness::Concurrent { lines: trio, point: p },
                });
            }
            if p.is_at_infinity() {
                parallel_pairs.push((i, j));
            }
            seen.insert(p, (i, j));
        }
    }

    Ok(if parallel_pairs.is_empty() {
        Position::BoundedGeneral
    } else {
        Position::GeneralWithInfinity { parallel_pairs }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(a: i64, b: i64, c: i64) -> ProjLine {
        ProjLine::from_i64(a, b, c).unwrap()
    }

    #[test]
    fn triangle_is_bounded_general() {
        let lines = [l(1, 0, 0), l(0, 1, 0), l(1, 1, -1)];
        assert_eq!(check_position(&lines).unwrap(), Position::BoundedGeneral);
    }

    #[test]
    fn concurrent_at_origin() {
        let lines = [l(1, 0, 0), l(0, 1, 0), l(1, 1, 0)];
        match check_position(&lines).unwrap() {
            Position::Degenerate {
                witness: Witness::Concurrent { lines, point },
            } => {
                assert_eq!(lines, [0, 1, 2]);
                assert_eq!(point, ProjPoint::affine_int(0, 0));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn parallel_pairs_are_listed() {
        let lines = [l(1, 0, 0), l(0, 1, 0), l(1, 0, -1), l(1, 1, -5)];
        assert_eq!(
            check_position(&lines).unwrap(),
            Position::GeneralWithInfinity { parallel_pairs: vec![(0, 2)] }
        );
    }

    #[test]
    fn three_parallel_lines_are_concurrent_at_infinity() {
        let lines = [l(1, 0, 0), l(1, 0, -1), l(1, 0, -2)];
        match check_position(&lines).unwrap() {
            Position::Degenerate {
                witness: Witness::Concurrent { point, .. },
            } => assert!(point.is_at_infinity()),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn duplicates_and_too_few() {
        let lines = [l(1, 2, 3), l(0, 1, 0), l(-2, -4, -6)];
        assert_eq!(
            check_position(&lines).unwrap(),
            Position::Degenerate { witness: Witness::Duplicate { lines: [0, 2] } }
        );
        assert!(matches!(
            check_position(&lines[..1]),
            Err(ArrangementError::TooFewLines(1))
        ));
    }
}
