//! Seeded generators for random line sets.

use rand::Rng;

use crate::arrangement::check_position;
use crate::geom::{intersect, ExactScalar, ProjLine};

/// Random rational coefficient `p/q` with `|p| <= 50`, `1 <= q <= 9`.
fn coefficient<R: Rng + ?Sized>(rng: &mut R) -> ExactScalar {
    let p: i64 = rng.gen_range(-50..=50);
    let q: i64 = rng.gen_range(1..=9);
    ExactScalar::new(p, q).expect("q >= 1")
}

pub fn random_line<R: Rng + ?Sized>(rng: &mut R) -> ProjLine {
    loop {
        let (a, b, c) = (coefficient(rng), coefficient(rng), coefficient(rng));
        if a.is_zero() && b.is_zero() {
            continue;
        }
        return ProjLine::new(a, b, c).expect("not all zero");
    }
}

/// `n >= 2` random lines in bounded general position (rejection sampled,
/// one line at a time).
pub fn random_bounded_general_lines<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<ProjLine> {
    let mut lines: Vec<ProjLine> = Vec::with_capacity(n);
    while lines.len() < n {
        let candidate = random_line(rng);
        lines.push(candidate);
        let ok = lines.len() < 2
            || check_position(&lines).map(|p| p.is_bounded_general()).unwrap_or(false);
        if !ok {
            lines.pop();
        }
    }
    lines
}

/// One more line keeping `lines` in bounded general position.
pub fn random_extra_line<R: Rng + ?Sized>(lines: &[ProjLine], rng: &mut R) -> ProjLine {
    let mut all = lines.to_vec();
    loop {
        all.push(random_line(rng));
        if check_position(&all).map(|p| p.is_bounded_general()).unwrap_or(false) {
            return all.pop().expect("just pushed");
        }
        all.pop();
    }
}

/// `n >= 2` random tangent lines `a x + b y = 1` of the unit circle, a
/// randomized version of the regular n-gon lines. The unit normals
/// `(a, b) = ((1 - t²) / (1 + t²), 2t / (1 + t²))` are exact rational points
/// of the circle with `t = p/100`, `|p| <= 400`. Directions are at least
/// 1/2 radian apart modulo π and no normal is within `|b| > 0.97` of
/// vertical, so no line is horizontal or nearly parallel to another.
/// Every intersection point is at distance at least `margin` from each line
/// not through it.
pub fn random_tangent_lines<R: Rng + ?Sized>(n: usize, margin: f64, rng: &mut R) -> Vec<ProjLine> {
    let one = ExactScalar::one();
    loop {
        let ts: Vec<i64> = (0..n).map(|_| rng.gen_range(-400..=400)).collect();
        let angles: Vec<f64> = ts.iter().map(|&p| 2.0 * (p as f64 / 100.0).atan()).collect();
        let spread = angles.iter().enumerate().all(|(i, u)| {
            u.sin().abs() <= 0.97
                && angles[i + 1..].iter().all(|v| {
                    let d = (u - v).rem_euclid(std::f64::consts::PI);
                    (0.5..=std::f64::consts::PI - 0.5).contains(&d)
                })
        });
        if !spread {
            continue;
        }
        let lines: Vec<ProjLine> = ts
            .iter()
            .map(|&p| {
                let t = ExactScalar::new(p, 100).expect("nonzero");
                let t2 = &t * &t;
                let d = &one + &t2;
                let a = (&one - &t2).checked_div(&d).expect("1 + t² > 0");
                let b = (&t + &t).checked_div(&d).expect("1 + t² > 0");
                ProjLine::new(a, b, -one.clone()).expect("unit normal")
            })
            .collect();
        if !check_position(&lines).map(|p| p.is_bounded_general()).unwrap_or(false) {
            continue;
        }
        let floats: Vec<[f64; 3]> = lines.iter().map(ProjLine::to_f64).collect();
        let mut apart = true;
        for (i, l) in lines.iter().enumerate() {
            for (j, m) in lines.iter().enumerate().skip(i + 1) {
                let (x, y) = intersect(l, m)
                    .expect("distinct lines")
                    .to_f64()
                    .expect("bounded position");
                apart &= floats
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != i && k != j)
                    .all(|(_, f)| (f[0] * x + f[1] * y + f[2]).abs() >= margin * f[0].hypot(f[1]));
            }
        }
        if apart {
            return lines;
        }
    }
}
