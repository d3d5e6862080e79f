//! Total-degree homotopy `H(z, t) = (1 - t)·γ·G(z) + t·F(z)` from the start
//! system `G = (x^d1 - 1, y^d2 - 1)` to `F = (f, f_x)`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::solver::System;
use super::DegenerationError;

type Point = (Complex64, Complex64);

const MAX_STEP: f64 = 0.02;
const MIN_STEP: f64 = 1e-13;
const DIVERGED: f64 = 1e8;

struct Homotopy<'a> {
    sys: &'a System,
    gamma: Complex64,
    d1: i32,
    d2: i32,
}

impl Homotopy<'_> {
    fn start(&self, z: Point) -> (Complex64, Complex64) {
        (z.0.powi(self.d1) - 1.0, z.1.powi(self.d2) - 1.0)
    }

    fn target(&self, z: Point) -> (Complex64, Complex64) {
        (self.sys.f.eval_c(z.0, z.1), self.sys.fx.eval_c(z.0, z.1))
    }

    fn value(&self, z: Point, t: f64) -> (Complex64, Complex64) {
        let (g1, g2) = self.start(z);
        let (f1, f2) = self.target(z);
        let s = self.gamma * (1.0 - t);
        (s * g1 + f1 * t, s * g2 + f2 * t)
    }

    /// `∂H/∂z` as `[[a, b], [c, d]]`.
    fn jacobian(&self, z: Point, t: f64) -> [Complex64; 4] {
        let (x, y) = z;
        let s = self.gamma * (1.0 - t);
        let sys = self.sys;
        [
            s * x.powi(self.d1 - 1) * self.d1 as f64 + sys.fx.eval_c(x, y) * t,
            sys.fy.eval_c(x, y) * t,
            sys.fxx.eval_c(x, y) * t,
            s * y.powi(self.d2 - 1) * self.d2 as f64 + sys.fxy.eval_c(x, y) * t,
        ]
    }

    fn solve(j: [Complex64; 4], r: (Complex64, Complex64)) -> Option<Point> {
        let det = j[0] * j[3] - j[1] * j[2];
        let dx = (r.0 * j[3] - j[1] * r.1) / det;
        let dy = (j[0] * r.1 - r.0 * j[2]) / det;
        (dx.is_finite() && dy.is_finite()).then_some((dx, dy))
    }

    /// `dz/dt = -H_z⁻¹ · H_t`.
    fn velocity(&self, z: Point, t: f64) -> Option<Point> {
        let (g1, g2) = self.start(z);
        let (f1, f2) = self.target(z);
        let ht = (f1 - self.gamma * g1, f2 - self.gamma * g2);
        let (vx, vy) = Self::solve(self.jacobian(z, t), ht)?;
        Some((-vx, -vy))
    }

    fn rk4(&self, z: Point, t: f64, h: f64) -> Option<Point> {
        let add = |z: Point, k: Point, c: f64| (z.0 + k.0 * c, z.1 + k.1 * c);
        let k1 = self.velocity(z, t)?;
        let k2 = self.velocity(add(z, k1, h / 2.0), t + h / 2.0)?;
        let k3 = self.velocity(add(z, k2, h / 2.0), t + h / 2.0)?;
        let k4 = self.velocity(add(z, k3, h), t + h)?;
        Some((
            z.0 + (k1.0 + k2.0 * 2.0 + k3.0 * 2.0 + k4.0) * (h / 6.0),
            z.1 + (k1.1 + k2.1 * 2.0 + k3.1 * 2.0 + k4.1) * (h / 6.0),
        ))
    }

    /// Newton at fixed `t`; succeeds only with quick, contracting steps.
    fn correct(&self, mut z: Point, t: f64) -> Option<(Point, usize)> {
        let mut last = f64::INFINITY;
        for it in 1..=4 {
            let (dx, dy) = Self::solve(self.jacobian(z, t), self.value(z, t))?;
            z = (z.0 - dx, z.1 - dy);
            let size = dx.norm() + dy.norm();
            let scale = 1.0 + z.0.norm() + z.1.norm();
            if size > 0.5 * last {
                return None;
            }
            if size <= 1e-11 * scale {
                return Some((z, it));
            }
            last = size;
        }
        None
    }

    /// Tracks one path from `t = 0` to `t = 1`; `None` if it diverges.
    fn track(&self, mut z: Point) -> Result<Option<Point>, DegenerationError> {
        let mut t = 0.0;
        let mut h: f64 = MAX_STEP / 4.0;
        while t < 1.0 {
            h = h.min(1.0 - t);
            let next = self
                .rk4(z, t, h)
                .and_then(|p| self.correct(p, t + h));
            match next {
                Some((p, iterations)) => {
                    z = p;
                    t += h;
                    if iterations <= 2 {
                        h = (h * 1.5).min(MAX_STEP);
                    }
                    if z.0.norm() + z.1.norm() > DIVERGED {
                        return Ok(None);
                    }
                }
                None => {
                    h *= 0.5;
                    if h < MIN_STEP {
                        return Err(DegenerationError::SolverFailure(format!(
                            "homotopy path stalled at t = {t}"
                        )));
                    }
                }
            }
        }
        Ok(Some(z))
    }
}

/// Endpoints of all `deg f · deg f_x` paths that stay finite.
pub(crate) fn track_all(sys: &System, seed: u64) -> Result<Vec<Point>, DegenerationError> {
    let d1 = sys.f.degree() as i32;
    let d2 = sys.fx.degree() as i32;
    if d2 < 1 {
        return Err(DegenerationError::SolverFailure(
            "f_x has degree 0; no tangency system to track".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gamma = Complex64::from_polar(1.0, rng.gen_range(0.0..2.0 * PI));
    let hom = Homotopy { sys, gamma, d1, d2 };
    let mut ends = Vec::new();
    for a in 0..d1 {
        for b in 0..d2 {
            let x = Complex64::from_polar(1.0, 2.0 * PI * a as f64 / d1 as f64);
            let y = Complex64::from_polar(1.0, 2.0 * PI * b as f64 / d2 as f64);
            if let Some(end) = hom.track((x, y))? {
                ends.push(end);
            }
        }
    }
    Ok(ends)
}
