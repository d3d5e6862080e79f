//! Bounded-face count of a line arrangement from sign vectors alone.
//!
//! Every face of an arrangement of `n >= 2` pairwise non-parallel lines has
//! a vertex on its boundary, so sampling the four quadrants around each
//! vertex reaches every face. A face is unbounded exactly when its sign
//! vector also shows up far out in some direction.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

pub type Q = BigRational;
pub type Line = [Q; 3];

fn q(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

pub fn eval(l: &Line, x: &Q, y: &Q) -> Q {
    &l[0] * x + &l[1] * y + &l[2]
}

fn sign(v: &Q) -> i8 {
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}

pub fn sign_vector(lines: &[Line], x: &Q, y: &Q) -> Vec<i8> {
    lines.iter().map(|l| sign(&eval(l, x, y))).collect()
}

fn meet(l: &Line, m: &Line) -> (Q, Q) {
    let det = &l[0] * &m[1] - &l[1] * &m[0];
    let x = (&l[1] * &m[2] - &l[2] * &m[1]) / &det;
    let y = (&l[2] * &m[0] - &l[0] * &m[2]) / &det;
    (x, y)
}

/// Sign vectors of the faces around every vertex.
pub fn faces_near_vertices(lines: &[Line]) -> BTreeSet<Vec<i8>> {
    let mut out = BTreeSet::new();
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            let (x, y) = meet(&lines[i], &lines[j]);
            let here = sign_vector(lines, &x, &y);
            // direction vectors (-b, a) of both lines
            let di = (-lines[i][1].clone(), lines[i][0].clone());
            let dj = (-lines[j][1].clone(), lines[j][0].clone());
            let mut eps = q(1);
            'shrink: loop {
                let mut found = Vec::new();
                for (si, sj) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                    let px = &x + &eps * (q(si) * &di.0 + q(sj) * &dj.0);
                    let py = &y + &eps * (q(si) * &di.1 + q(sj) * &dj.1);
                    let v = sign_vector(lines, &px, &py);
                    let agrees = (0..lines.len()).all(|k| k == i || k == j || v[k] == here[k]);
                    if !agrees || v[i] == 0 || v[j] == 0 {
                        eps /= q(2);
                        continue 'shrink;
                    }
                    found.push(v);
                }
                out.extend(found);
                break;
            }
        }
    }
    out
}

/// Sign vectors of the unbounded faces: far out along a direction strictly
/// between two consecutive line directions, the sign of `a x + b y + c` is
/// the sign of `a u + b v`.
pub fn faces_at_infinity(lines: &[Line]) -> BTreeSet<Vec<i8>> {
    let to_f = |v: &Q| -> f64 {
        let n: f64 = v.numer().to_string().parse().unwrap();
        let d: f64 = v.denom().to_string().parse().unwrap();
        n / d
    };
    // Exact directions ±(-b, a), sorted by angle in floating point, then
    // bisected exactly (sum of two normalized-by-max-norm vectors is enough
    // for a strictly interior direction when the two are not opposite).
    let mut dirs: Vec<(Q, Q)> = Vec::new();
    for l in lines {
        dirs.push((-l[1].clone(), l[0].clone()));
        dirs.push((l[1].clone(), -l[0].clone()));
    }
    dirs.sort_by(|a, b| {
        let ta = to_f(&a.1).atan2(to_f(&a.0));
        let tb = to_f(&b.1).atan2(to_f(&b.0));
        ta.partial_cmp(&tb).unwrap()
    });
    let mut out = BTreeSet::new();
    for k in 0..dirs.len() {
        let a = &dirs[k];
        let b = &dirs[(k + 1) % dirs.len()];
        // scale each direction to unit max-norm so the sum bisects the
        // wedge closely enough to stay strictly inside it
        let na = a.0.abs().max(a.1.abs());
        let nb = b.0.abs().max(b.1.abs());
        let u = &a.0 / &na + &b.0 / &nb;
        let v = &a.1 / &na + &b.1 / &nb;
        let sv: Vec<i8> = lines.iter().map(|l| sign(&(&l[0] * &u + &l[1] * &v))).collect();
        assert!(sv.iter().all(|s| *s != 0), "bisector parallel to a line");
        out.insert(sv);
    }
    out
}

pub fn bounded_face_count(lines: &[Line]) -> usize {
    let near = faces_near_vertices(lines);
    let far = faces_at_infinity(lines);
    assert!(far.is_subset(&near));
    near.len() - far.len()
}

pub fn bounded_faces(lines: &[Line]) -> BTreeSet<Vec<i8>> {
    let far = faces_at_infinity(lines);
    faces_near_vertices(lines)
        .into_iter()
        .filter(|v| !far.contains(v))
        .collect()
}

pub fn is_zero(v: &Q) -> bool {
    v.is_zero()
}
