//! Vertical tangents by eliminating `x` instead of `y`: the roots of
//! `Res_x(f, f_x)` give the `y` coordinates, then `x` is recovered from
//! `f(·, y)` and polished by plain Newton on `(f, f_x)`.

use std::f64::consts::PI;

use num_complex::Complex64 as C;

/// Dense coefficients `c[i][j]` of `x^i y^j`.
#[derive(Clone, Debug)]
pub struct Poly {
    pub c: Vec<Vec<f64>>,
}

impl Poly {
    pub fn new(degree: usize, terms: impl IntoIterator<Item = (usize, usize, f64)>) -> Self {
        let mut c = vec![vec![0.0; degree + 1]; degree + 1];
        for (i, j, v) in terms {
            c[i][j] += v;
        }
        Self { c }
    }

    pub fn degree(&self) -> usize {
        self.c.len() - 1
    }

    pub fn dx(&self) -> Self {
        let d = self.degree();
        let mut c = vec![vec![0.0; d + 1]; d + 1];
        for i in 1..=d {
            for j in 0..=d {
                c[i - 1][j] = i as f64 * self.c[i][j];
            }
        }
        Self { c }
    }

    pub fn dy(&self) -> Self {
        let d = self.degree();
        let mut c = vec![vec![0.0; d + 1]; d + 1];
        for i in 0..=d {
            for j in 1..=d {
                c[i][j - 1] = j as f64 * self.c[i][j];
            }
        }
        Self { c }
    }

    pub fn eval(&self, x: C, y: C) -> C {
        let mut total = C::new(0.0, 0.0);
        let mut xi = C::new(1.0, 0.0);
        for row in &self.c {
            let mut yj = C::new(1.0, 0.0);
            for v in row {
                total += xi * yj * v;
                yj *= y;
            }
            xi *= x;
        }
        total
    }

    /// Ascending coefficients in `x` at fixed `y`.
    pub fn in_x(&self, y: C) -> Vec<C> {
        self.c
            .iter()
            .map(|row| row.iter().rev().fold(C::new(0.0, 0.0), |acc, v| acc * y + v))
            .collect()
    }

    pub fn size(&self, x: C, y: C) -> f64 {
        let (ax, ay) = (x.norm().max(1.0), y.norm().max(1.0));
        let mut total = 0.0;
        for (i, row) in self.c.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                total += v.abs() * ax.powi(i as i32) * ay.powi(j as i32);
            }
        }
        total
    }
}

fn trim(mut p: Vec<C>, rel: f64) -> Vec<C> {
    let big = p.iter().map(|c| c.norm()).fold(0.0, f64::max);
    while p.len() > 1 && p.last().unwrap().norm() <= rel * big {
        p.pop();
    }
    p
}

/// Determinant by Gaussian elimination with partial pivoting.
pub fn det(mut m: Vec<Vec<C>>) -> C {
    let n = m.len();
    let mut d = C::new(1.0, 0.0);
    for k in 0..n {
        let p = (k..n).max_by(|&a, &b| m[a][k].norm().total_cmp(&m[b][k].norm())).unwrap();
        if m[p][k].norm() == 0.0 {
            return C::new(0.0, 0.0);
        }
        if p != k {
            m.swap(p, k);
            d = -d;
        }
        d *= m[k][k];
        for r in k + 1..n {
            let factor = m[r][k] / m[k][k];
            for c in k..n {
                let sub = factor * m[k][c];
                m[r][c] -= sub;
            }
        }
    }
    d
}

fn sylvester_det(f: &[C], g: &[C]) -> C {
    let (p, q) = (f.len() - 1, g.len() - 1);
    let n = p + q;
    if n == 0 {
        return C::new(1.0, 0.0);
    }
    let mut m = vec![vec![C::new(0.0, 0.0); n]; n];
    for r in 0..q {
        for (k, c) in f.iter().rev().enumerate() {
            m[r][r + k] = *c;
        }
    }
    for r in 0..p {
        for (k, c) in g.iter().rev().enumerate() {
            m[q + r][r + k] = *c;
        }
    }
    det(m)
}

/// Roots of an ascending polynomial by Durand–Kerner (Weierstrass).
pub fn durand_kerner(p: &[C]) -> Vec<C> {
    let p = trim(p.to_vec(), 0.0);
    let n = p.len() - 1;
    let lead = p[n];
    let monic: Vec<C> = p.iter().map(|c| c / lead).collect();
    let eval = |z: C| monic.iter().rev().fold(C::new(0.0, 0.0), |acc, c| acc * z + c);
    let bound = 1.0 + monic[..n].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut z: Vec<C> = (0..n)
        .map(|k| C::from_polar(0.5 * bound, 2.0 * PI * k as f64 / n as f64 + 0.4))
        .collect();
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let mut denom = C::new(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    denom *= z[i] - z[j];
                }
            }
            if denom.norm() == 0.0 {
                z[i] += C::new(1e-9, 1e-9);
                continue;
            }
            let step = eval(z[i]) / denom;
            z[i] -= step;
            moved = moved.max(step.norm() / (1.0 + z[i].norm()));
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

/// Coefficients of `Res_x(f, g)` in `y` by sampling on the unit circle.
pub fn resultant_x(f: &Poly, g: &Poly, fdeg: usize, gdeg: usize) -> Vec<C> {
    let samples = f.degree() * g.degree().max(1) + 1;
    let values: Vec<C> = (0..samples)
        .map(|k| {
            let y = C::from_polar(1.0, 2.0 * PI * k as f64 / samples as f64);
            sylvester_det(&f.in_x(y)[..=fdeg], &g.in_x(y)[..=gdeg])
        })
        .collect();
    (0..samples)
        .map(|m| {
            values
                .iter()
                .enumerate()
                .map(|(k, v)| v * C::from_polar(1.0, -2.0 * PI * (k * m) as f64 / samples as f64))
                .sum::<C>()
                / samples as f64
        })
        .collect()
}

fn newton(f: &Poly, fx: &Poly, fy: &Poly, fxx: &Poly, fxy: &Poly, mut x: C, mut y: C) -> (C, C) {
    for _ in 0..60 {
        let (a, b) = (f.eval(x, y), fx.eval(x, y));
        let (j11, j12, j21, j22) = (fx.eval(x, y), fy.eval(x, y), fxx.eval(x, y), fxy.eval(x, y));
        let d = j11 * j22 - j12 * j21;
        if d.norm() == 0.0 {
            break;
        }
        let dx = (a * j22 - j12 * b) / d;
        let dy = (j11 * b - a * j21) / d;
        x -= dx;
        y -= dy;
        if dx.norm() + dy.norm() < 1e-16 * (1.0 + x.norm() + y.norm()) {
            break;
        }
    }
    (x, y)
}

/// All points with `f = f_x = 0`, from terms `(i, j, c)` of `f`.
pub fn vertical_tangents(f: &Poly) -> Vec<(C, C)> {
    let fx = f.dx();
    let fy = f.dy();
    let (fxx, fxy) = (fx.dx(), fx.dy());
    let deg_x = |p: &Poly| {
        (0..=p.degree())
            .rev()
            .find(|&i| p.c[i].iter().any(|v| *v != 0.0))
            .unwrap_or(0)
    };
    let res = trim(resultant_x(f, &fx, deg_x(f), deg_x(&fx)), 1e-10);
    let ys = durand_kerner(&res);
    let rel = |x: C, y: C| (f.eval(x, y).norm() / f.size(x, y)).max(fx.eval(x, y).norm() / f.size(x, y));
    let mut found: Vec<(C, C)> = Vec::new();
    for y in ys {
        let mut xs = durand_kerner(&trim(f.in_x(y), 0.0));
        xs.sort_by(|a, b| fx.eval(*a, y).norm().total_cmp(&fx.eval(*b, y).norm()));
        for x0 in xs {
            let (x, yy) = newton(f, &fx, &fy, &fxx, &fxy, x0, y);
            let dup = found
                .iter()
                .any(|p| (p.0 - x).norm() + (p.1 - yy).norm() < 1e-7 * (1.0 + x.norm() + yy.norm()));
            if !dup && rel(x, yy) < 1e-10 {
                found.push((x, yy));
                break;
            }
        }
    }
    found
}
