use std::cmp::Ordering;
use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Signed;

use super::{
    check_position, expected_alcove_count, Alcove, AlcoveId, Arrangement, ArrangementError, Edge,
    FaceRef, HalfEdge, HalfEdgeId, Vertex,
};
use crate::geom::{intersect, polygon_turn, ProjLine, ProjPoint};

/// Outgoing direction at a vertex: a bounded half-edge or an unbounded ray.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Spoke {
    Half(HalfEdgeId),
    Ray,
}

#[derive(Debug, Clone)]
struct Outgoing {
    line: usize,
    forward: bool,
    dir: [BigInt; 2],
    spoke: Spoke,
}

fn half_plane(d: &[BigInt; 2]) -> u8 {
    if d[1].is_positive() || (d[1].sign() == num_bigint::Sign::NoSign && d[0].is_positive()) {
        0
    } else {
        1
    }
}

/// Counterclockwise angular order starting from the positive x axis.
fn angle_cmp(a: &[BigInt; 2], b: &[BigInt; 2]) -> Ordering {
    half_plane(a).cmp(&half_plane(b)).then_with(|| {
        let cross = &a[0] * &b[1] - &a[1] * &b[0];
        // positive cross: b is counterclockwise of a, so a comes first
        BigInt::from(0).cmp(&cross)
    })
}

/// Builds the subdivision. Fails unless the lines are in bounded general
/// position.
pub fn build(lines: &[ProjLine]) -> Result<Arrangement, ArrangementError> {
    let position = check_position(lines)?;
    if !position.is_bounded_general() {
        return Err(ArrangementError::NotBoundedGeneralPosition(position));
    }
    let n = lines.len();

    // Vertices in lexicographic pair order; `affine` keeps a Z > 0 representative.
    let mut vertices = Vec::with_capacity(n * (n - 1) / 2);
    let mut affine = Vec::with_capacity(n * (n - 1) / 2);
    let mut on_line: Vec<Vec<usize>> = vec![Vec::with_capacity(n - 1); n];
    for i in 0..n {
        for j in i + 1..n {
            let point = intersect(&lines[i], &lines[j])?;
            let rep = point.affine_ints().expect("bounded position");
            let (x, y) = point.to_affine()?;
            let id = vertices.len();
            vertices.push(Vertex { point, lines: (i, j), x, y });
            affine.push(rep);
            on_line[i].push(id);
            on_line[j].push(id);
        }
    }

    // Order the vertices of each line by the parameter (P . d) / Z.
    let dirs: Vec<[BigInt; 2]> = lines.iter().map(ProjLine::direction).collect();
    for (l, ids) in on_line.iter_mut().enumerate() {
        let d = &dirs[l];
        let param: HashMap<usize, BigInt> = ids
            .iter()
            .map(|&v| {
                let p = &affine[v];
                (v, &p[0] * &d[0] + &p[1] * &d[1])
            })
            .collect();
        ids.sort_by(|&u, &v| (&param[&u] * &affine[v][2]).cmp(&(&param[&v] * &affine[u][2])));
    }

    // Edges and half-edges: edge e owns half-edges 2e (forward) and 2e + 1.
    let mut edges = Vec::new();
    let mut half_edges = Vec::new();
    let mut spokes: Vec<Vec<Outgoing>> = vec![Vec::with_capacity(4); vertices.len()];
    for (l, ids) in on_line.iter().enumerate() {
        let d = &dirs[l];
        let back = [-&d[0], -&d[1]];
        for (k, &v) in ids.iter().enumerate() {
            let forward = if k + 1 < ids.len() {
                Spoke::Half(2 * edges.len())
            } else {
                Spoke::Ray
            };
            let backward = if k > 0 {
                // the previous edge on this line was pushed last
                Spoke::Half(2 * (edges.len() - 1) + 1)
            } else {
                Spoke::Ray
            };
            spokes[v].push(Outgoing { line: l, forward: true, dir: d.clone(), spoke: forward });
            spokes[v].push(Outgoing { line: l, forward: false, dir: back.clone(), spoke: backward });
            if let Some(&w) = ids.get(k + 1) {
                let e = edges.len();
                edges.push(Edge { line: l, ends: [v, w], half_edges: [2 * e, 2 * e + 1] });
                half_edges.push(HalfEdge {
                    origin: v,
                    target: w,
                    twin: 2 * e + 1,
                    next: None,
                    line: l,
                    face: FaceRef::Unbounded,
                });
                half_edges.push(HalfEdge {
                    origin: w,
                    target: v,
                    twin: 2 * e,
                    next: None,
                    line: l,
                    face: FaceRef::Unbounded,
                });
            }
        }
    }

    for s in spokes.iter_mut() {
        s.sort_by(|a, b| angle_cmp(&a.dir, &b.dir));
    }

    // next(h): at the target, the spoke immediately clockwise of the
    // direction pointing back along h.
    for h in 0..half_edges.len() {
        let he = &half_edges[h];
        let forward = h % 2 == 0;
        let at = &spokes[he.target];
        let back_pos = at
            .iter()
            .position(|o| o.line == he.line && o.forward != forward)
            .expect("every vertex carries both directions of its lines");
        let cw = &at[(back_pos + at.len() - 1) % at.len()];
        half_edges[h].next = match cw.spoke {
            Spoke::Half(nx) => Some(nx),
            Spoke::Ray => None,
        };
    }

    // Trace faces; a walk that reaches a ray or an already-traced half-edge
    // belongs to an unbounded face.
    let mut visited = vec![false; half_edges.len()];
    let mut alcoves = Vec::new();
    for start in 0..half_edges.len() {
        if visited[start] {
            continue;
        }
        let mut cycle = vec![start];
        visited[start] = true;
        let mut cur = start;
        let closed = loop {
            match half_edges[cur].next {
                Some(nx) if nx == start => break true,
                Some(nx) if !visited[nx] => {
                    visited[nx] = true;
                    cycle.push(nx);
                    cur = nx;
                }
                _ => break false,
            }
        };
        if closed {
            let id: AlcoveId = alcoves.len();
            for &h in &cycle {
                half_edges[h].face = FaceRef::Alcove(id);
            }
            let vertex_cycle: Vec<usize> = cycle.iter().map(|&h| half_edges[h].origin).collect();
            let boundary_lines: Vec<usize> = cycle.iter().map(|&h| half_edges[h].line).collect();
            let mut line_indices = boundary_lines.clone();
            line_indices.sort_unstable();
            line_indices.dedup();
            let xs = vertex_cycle.iter().map(|&v| &vertices[v].x);
            let ys = vertex_cycle.iter().map(|&v| &vertices[v].y);
            let bbox = [
                xs.clone().min().expect("nonempty").clone(),
                ys.clone().min().expect("nonempty").clone(),
                xs.max().expect("nonempty").clone(),
                ys.max().expect("nonempty").clone(),
            ];
            alcoves.push(Alcove {
                boundary: cycle,
                boundary_lines,
                line_indices,
                vertex_cycle,
                bbox,
            });
        }
    }

    let vertex_index = vertices
        .iter()
        .enumerate()
        .map(|(i, v)| (v.point.clone(), i))
        .collect();

    let arr = Arrangement {
        lines: lines.to_vec(),
        vertices,
        half_edges,
        edges,
        alcoves,
        line_vertices: on_line,
        vertex_index,
    };
    validate(&arr)?;
    Ok(arr)
}

/// Alcove `a` is a strictly convex counterclockwise polygon whose sides lie
/// on pairwise distinct lines.
pub(crate) fn check_alcove_shape(arr: &Arrangement, a: AlcoveId) -> Result<(), ArrangementError> {
    let alcove = &arr.alcoves[a];
    let fail = |msg: String| Err(ArrangementError::InvariantViolation(msg));
    if alcove.vertex_cycle.len() < 3 {
        return fail(format!("alcove {a} has {} corners", alcove.vertex_cycle.len()));
    }
    if alcove.line_indices.len() != alcove.boundary_lines.len() {
        return fail(format!("alcove {a} repeats a boundary line"));
    }
    let pts: Vec<ProjPoint> = arr.alcove_points(a);
    match polygon_turn(&pts) {
        Ok(1) => Ok(()),
        Ok(_) => fail(format!("alcove {a} is traced clockwise")),
        Err(_) => fail(format!("alcove {a} is not strictly convex")),
    }
}

fn validate(arr: &Arrangement) -> Result<(), ArrangementError> {
    let n = arr.n();
    let fail = |msg: String| Err(ArrangementError::InvariantViolation(msg));
    if arr.vertices.len() != n * (n - 1) / 2 {
        return fail(format!("{} vertices for {n} lines", arr.vertices.len()));
    }
    if arr.edges.len() != n * n.saturating_sub(2) {
        return fail(format!("{} bounded edges for {n} lines", arr.edges.len()));
    }
    for e in 0..arr.edges.len() {
        let d = arr.edge_alcove_degree(e);
        if !(1..=2).contains(&d) {
            return fail(format!("edge {e} borders {d} alcoves"));
        }
    }
    if arr.alcoves.len() != expected_alcove_count(n) {
        return fail(format!("{} alcoves for {n} lines", arr.alcoves.len()));
    }
    for a in 0..arr.alcoves.len() {
        check_alcove_shape(arr, a)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::Position;

    fn l(a: i64, b: i64, c: i64) -> ProjLine {
        ProjLine::from_i64(a, b, c).unwrap()
    }

    #[test]
    fn triangle() {
        let arr = build(&[l(1, 0, 0), l(0, 1, 0), l(1, 1, -1)]).unwrap();
        assert_eq!(arr.vertices().len(), 3);
        assert_eq!(arr.edges().len(), 3);
        assert_eq!(arr.alcoves().len(), 1);
        assert_eq!(arr.alcoves()[0].line_indices, vec![0, 1, 2]);
        assert_eq!(arr.edge_alcove_degrees().get(&1), Some(&3));
    }

    #[test]
    fn two_lines_have_no_alcoves() {
        let arr = build(&[l(1, 0, 0), l(0, 1, 0)]).unwrap();
        assert_eq!(arr.vertices().len(), 1);
        assert!(arr.edges().is_empty());
        assert!(arr.alcoves().is_empty());
    }

    #[test]
    fn four_lines() {
        // x = 0, y = 0, x + y = 4, x - y = 1
        let arr = build(&[l(1, 0, 0), l(0, 1, 0), l(1, 1, -4), l(1, -1, -1)]).unwrap();
        assert_eq!(arr.vertices().len(), 6);
        assert_eq!(arr.edges().len(), 8);
        assert_eq!(arr.alcoves().len(), 3);
    }

    #[test]
    fn vertex_ids_follow_pair_order() {
        let arr = build(&[l(1, 0, 0), l(0, 1, 0), l(1, 1, -4), l(1, -1, -1)]).unwrap();
        for (id, v) in arr.vertices().iter().enumerate() {
            assert_eq!(arr.vertex_of(v.lines.0, v.lines.1), Some(id));
            assert_eq!(arr.vertex_of(v.lines.1, v.lines.0), Some(id));
        }
        assert_eq!(arr.vertex_of(2, 2), None);
    }

    #[test]
    fn edge_lookup() {
        let arr = build(&[l(1, 0, 0), l(0, 1, 0), l(1, 1, -4), l(1, -1, -1)]).unwrap();
        for (e, edge) in arr.edges().iter().enumerate() {
            assert_eq!(arr.edge_between(edge.ends[0], edge.ends[1]), Some(e));
            assert_eq!(arr.edge_between(edge.ends[1], edge.ends[0]), Some(e));
        }
    }

    #[test]
    fn rejects_parallel_and_concurrent() {
        let err = build(&[l(1, 0, 0), l(1, 0, -1), l(0, 1, 0)]).unwrap_err();
        assert!(matches!(
            err,
            ArrangementError::NotBoundedGeneralPosition(Position::GeneralWithInfinity { .. })
        ));
        let err = build(&[l(1, 0, 0), l(0, 1, 0), l(1, 1, 0)]).unwrap_err();
        assert!(matches!(
            err,
            ArrangementError::NotBoundedGeneralPosition(Position::Degenerate { .. })
        ));
    }

    #[test]
    fn angular_order() {
        let dirs: Vec<[BigInt; 2]> = [(1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1)]
            .iter()
            .map(|&(x, y)| [BigInt::from(x), BigInt::from(y)])
            .collect();
        for i in 0..dirs.len() {
            for j in 0..dirs.len() {
                assert_eq!(angle_cmp(&dirs[i], &dirs[j]), i.cmp(&j), "{i} vs {j}");
            }
        }
    }
}
