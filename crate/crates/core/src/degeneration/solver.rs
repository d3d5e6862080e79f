use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::homotopy;
use super::resultant::{common_root_y, resultant_y, resultant_y_at};
use super::univariate::{refine_roots, roots_aberth, roots_companion, trim_leading};
use super::{BivariatePoly, DegenerationError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Backend {
    /// Eliminate `y` with `Res_y(f, f_x)`, take companion eigenvalues,
    /// back-substitute and polish.
    Resultant,
    /// Total-degree homotopy continuation from `(x^n - 1, y^(n-1) - 1)`.
    Homotopy,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    /// Largest accepted relative size of `f` and `f_x` at a solution, each
    /// divided by its `magnitude_at` the point.
    pub residual_target: f64,
    /// A solution whose `f_y` has relative size below this is a singular
    /// point of the curve.
    pub singular_tol: f64,
    pub backend: Backend,
    /// Seeds the homotopy's random `γ`.
    pub seed: u64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            residual_target: 1e-10,
            singular_tol: 1e-7,
            backend: Backend::Resultant,
            seed: 0,
        }
    }
}

/// A solution of `f = 0, ∂f/∂x = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TangentPoint {
    pub x: Complex64,
    pub y: Complex64,
    pub residual: f64,
    pub real: bool,
}

/// The polynomial, scaled to unit largest coefficient, together with the
/// derivatives Newton's method needs.
pub(crate) struct System {
    pub f: BivariatePoly,
    pub fx: BivariatePoly,
    pub fy: BivariatePoly,
    pub fxx: BivariatePoly,
    pub fxy: BivariatePoly,
}

fn relative(p: &BivariatePoly, x: Complex64, y: Complex64) -> f64 {
    let size = p.magnitude_at(x, y);
    if size == 0.0 {
        0.0
    } else {
        p.eval_c(x, y).norm() / size
    }
}

impl System {
    pub fn new(f: &BivariatePoly) -> Self {
        let f = f.scaled(f.scale());
        let fx = f.dx();
        Self {
            fy: f.dy(),
            fxx: fx.dx(),
            fxy: fx.dy(),
            f,
            fx,
        }
    }

    pub fn residual(&self, x: Complex64, y: Complex64) -> f64 {
        relative(&self.f, x, y).max(relative(&self.fx, x, y))
    }

    fn merit(&self, x: Complex64, y: Complex64) -> f64 {
        self.f.eval_c(x, y).norm().max(self.fx.eval_c(x, y).norm())
    }

    /// Damped Newton on `(f, f_x)`.
    pub fn polish(&self, mut x: Complex64, mut y: Complex64) -> (Complex64, Complex64, f64) {
        let mut r = self.merit(x, y);
        for _ in 0..80 {
            if r == 0.0 {
                break;
            }
            let (a, b) = (self.f.eval_c(x, y), self.fx.eval_c(x, y));
            let (j11, j12) = (self.fx.eval_c(x, y), self.fy.eval_c(x, y));
            let (j21, j22) = (self.fxx.eval_c(x, y), self.fxy.eval_c(x, y));
            let det = j11 * j22 - j12 * j21;
            let dx = -(a * j22 - j12 * b) / det;
            let dy = -(j11 * b - a * j21) / det;
            if !(dx.is_finite() && dy.is_finite()) {
                break;
            }
            let mut t = 1.0;
            let mut accepted = false;
            while t > 1e-4 {
                let (nx, ny) = (x + dx * t, y + dy * t);
                let nr = self.merit(nx, ny);
                if nr < r {
                    x = nx;
                    y = ny;
                    r = nr;
                    accepted = true;
                    break;
                }
                t *= 0.5;
            }
            if !accepted || (dx.norm() + dy.norm()) * t <= 1e-16 * (1.0 + x.norm() + y.norm()) {
                break;
            }
        }
        (x, y, self.residual(x, y))
    }

    /// Relative size of `f_y`; near zero where the curve is singular, since
    /// `f` and `f_x` already vanish at a solution.
    pub fn singularity_measure(&self, x: Complex64, y: Complex64) -> f64 {
        let size = self.fy.magnitude_at(x, y);
        if size == 0.0 {
            0.0
        } else {
            self.fy.eval_c(x, y).norm() / size
        }
    }
}

fn is_real(z: Complex64) -> bool {
    z.im.abs() <= 1e-8 * (1.0 + z.re.abs())
}

fn same_point(a: &TangentPoint, x: Complex64, y: Complex64) -> bool {
    (a.x - x).norm() + (a.y - y).norm() <= 1e-8 * (1.0 + x.norm() + y.norm())
}

/// Projection directions tried in turn: eliminating `y` from the sheared
/// system `f(x - μy, y)` spreads out solutions that share an `x` value.
const SHEARS: [f64; 4] = [0.0, 0.381_966_011_250_105_1, -0.754_877_666_246_692_7, 1.324_717_957_244_745_8];

/// Starting points from the eliminant `Res_y(f, f_x)` of the sheared
/// system, mapped back to the original coordinates. For each `x` root the
/// Sylvester null-vector `y` comes first, then the roots of `f(x, ·)`
/// ordered by how small `f_x` is there.
fn eliminant_starts(f: &BivariatePoly, mu: f64) -> Result<Vec<Vec<(Complex64, Complex64)>>, DegenerationError> {
    let g = f.sheared(mu);
    let gx = g.dx();
    let res = resultant_y(&g, &gx, 1.0);
    let real: Vec<f64> = res.iter().map(|c| c.re).collect();
    let coeffs = trim_leading(&real, f64::abs, 1e-10);
    if coeffs.iter().all(|c| *c == 0.0) {
        // A common factor of f and f_x makes f reducible or non-reduced,
        // and such a curve is singular where its components meet.
        return Err(DegenerationError::SingularCurve(
            "Res_y(f, f_x) vanishes identically, so f and f_x share a component".into(),
        ));
    }
    // The monomial coefficients lose accuracy for clustered roots; refine
    // against the Sylvester determinant itself.
    let mut xs = roots_companion(&coeffs);
    refine_roots(|x| resultant_y_at(&g, &gx, x), &mut xs, 60);
    Ok(xs
        .into_iter()
        .map(|x| {
            let mut ys = roots_aberth(&g.coefficients_in_y_at(x));
            ys.sort_by(|a, b| {
                let fa = gx.eval_c(x, *a).norm();
                let fb = gx.eval_c(x, *b).norm();
                fa.total_cmp(&fb)
            });
            if let Some(y) = common_root_y(&g, &gx, x) {
                ys.insert(0, y);
            }
            ys.into_iter().map(|y| (x - y * mu, y)).collect()
        })
        .collect())
}

enum Attempt {
    Solved(Vec<TangentPoint>),
    Retry(String),
}

/// Polishes each start's candidates until one gives a new solution.
fn polish_starts(
    sys: &System,
    starts: Vec<Vec<(Complex64, Complex64)>>,
    opts: &SolverOptions,
) -> Result<Attempt, DegenerationError> {
    let mut points: Vec<TangentPoint> = Vec::with_capacity(starts.len());
    for candidates in starts {
        let mut found = None;
        let mut last = None;
        for &(x0, y0) in &candidates {
            let (x, y, residual) = sys.polish(x0, y0);
            if residual <= opts.residual_target && sys.singularity_measure(x, y) < opts.singular_tol {
                return Err(DegenerationError::SingularCurve(format!(
                    "f, f_x and f_y nearly vanish at ({x}, {y})"
                )));
            }
            last = Some((x, y, residual));
            if residual <= opts.residual_target && !points.iter().any(|p| same_point(p, x, y)) {
                found = Some((x, y, residual));
                break;
            }
        }
        let Some((x, y, residual)) = found else {
            let x0 = candidates.first().map_or(Complex64::new(f64::NAN, 0.0), |c| c.0);
            return Ok(Attempt::Retry(match last {
                Some((x, y, r)) if r <= opts.residual_target => {
                    format!("start near x = {x0} only reached the already found solution ({x}, {y})")
                }
                Some((x, y, r)) => format!(
                    "residual {r:e} at ({x}, {y}) above target {:e}",
                    opts.residual_target
                ),
                None => format!("no point of the curve over x = {x0}"),
            }));
        };
        points.push(TangentPoint {
            x,
            y,
            residual,
            real: is_real(x) && is_real(y),
        });
    }
    Ok(Attempt::Solved(points))
}

/// All affine solutions of `f = 0, ∂f/∂x = 0` over the complex numbers.
pub fn vertical_tangents(f: &BivariatePoly, opts: &SolverOptions) -> Result<Vec<TangentPoint>, DegenerationError> {
    if f.degree() < 2 {
        return Err(DegenerationError::InvalidParameter(format!(
            "curve degree {} < 2 has no tangency points",
            f.degree()
        )));
    }
    let sys = System::new(f);
    let mut points = match opts.backend {
        Backend::Resultant => {
            let mut outcome = Err(DegenerationError::SolverFailure("no projection tried".into()));
            for mu in SHEARS {
                match polish_starts(&sys, eliminant_starts(&sys.f, mu)?, opts)? {
                    Attempt::Solved(points) => {
                        outcome = Ok(points);
                        break;
                    }
                    Attempt::Retry(why) => outcome = Err(DegenerationError::SolverFailure(why)),
                }
            }
            outcome?
        }
        Backend::Homotopy => {
            let ends = homotopy::track_all(&sys, opts.seed)?;
            match polish_starts(&sys, ends.into_iter().map(|e| vec![e]).collect(), opts)? {
                Attempt::Solved(points) => points,
                Attempt::Retry(why) => return Err(DegenerationError::SolverFailure(why)),
            }
        }
    };
    points.sort_by(|a, b| {
        a.x.re
            .total_cmp(&b.x.re)
            .then(a.x.im.total_cmp(&b.x.im))
            .then(a.y.re.total_cmp(&b.y.re))
            .then(a.y.im.total_cmp(&b.y.im))
    });
    Ok(points)
}
