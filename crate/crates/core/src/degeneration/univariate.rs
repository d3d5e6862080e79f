//! Univariate root finders: companion-matrix eigenvalues for the eliminant,
//! Aberth–Ehrlich iteration for the small back-substitution polynomials.

use nalgebra::DMatrix;
use num_complex::Complex64;

/// Drops highest-order coefficients whose magnitude is below `rel` times the
/// largest one. Returns the remaining ascending coefficients.
pub fn trim_leading<T: Copy>(coeffs: &[T], norm: impl Fn(T) -> f64, rel: f64) -> Vec<T> {
    let max = coeffs.iter().map(|&c| norm(c)).fold(0.0, f64::max);
    let keep = coeffs
        .iter()
        .rposition(|&c| norm(c) > rel * max)
        .map_or(0, |p| p + 1);
    coeffs[..keep].to_vec()
}

/// Roots of `Σ c_k t^k` (ascending, real, nonzero leading coefficient) as
/// the eigenvalues of the companion matrix.
pub fn roots_companion(coeffs: &[f64]) -> Vec<Complex64> {
    let degree = coeffs.len().saturating_sub(1);
    if degree == 0 {
        return Vec::new();
    }
    let lead = coeffs[degree];
    let mut m = DMatrix::<f64>::zeros(degree, degree);
    for i in 1..degree {
        m[(i, i - 1)] = 1.0;
    }
    for i in 0..degree {
        m[(i, degree - 1)] = -coeffs[i] / lead;
    }
    m.complex_eigenvalues().iter().copied().collect()
}

fn horner_with_derivative(coeffs: &[Complex64], t: Complex64) -> (Complex64, Complex64) {
    let zero = Complex64::new(0.0, 0.0);
    coeffs
        .iter()
        .rev()
        .fold((zero, zero), |(p, dp), c| (p * t + c, dp * t + p))
}

/// All complex roots of `Σ c_k t^k` by simultaneous Aberth–Ehrlich
/// iteration. Leading coefficients that vanish exactly are dropped.
pub fn roots_aberth(coeffs: &[Complex64]) -> Vec<Complex64> {
    let coeffs = trim_leading(coeffs, |c| c.norm(), 0.0);
    let degree = coeffs.len().saturating_sub(1);
    if degree == 0 {
        return Vec::new();
    }
    let lead = coeffs[degree].norm();
    // Cauchy bound for the initial circle.
    let radius = 1.0
        + coeffs[..degree]
            .iter()
            .map(|c| c.norm() / lead)
            .fold(0.0, f64::max);
    let start = radius.min(1e6).max(1e-3) * 0.5;
    let mut z: Vec<Complex64> = (0..degree)
        .map(|k| Complex64::from_polar(start, 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / degree as f64))
        .collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for k in 0..degree {
            let (p, dp) = horner_with_derivative(&coeffs, z[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..degree)
                .filter(|&j| j != k)
                .map(|j| Complex64::new(1.0, 0.0) / (z[k] - z[j]))
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.is_finite() {
                z[k] -= step;
                moved = moved.max(step.norm() / (1.0 + z[k].norm()));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

/// Aberth–Ehrlich refinement of approximate roots of an analytic function
/// given only by evaluation, with derivatives from central differences.
/// Roots that stop improving are left where they are.
pub fn refine_roots(p: impl Fn(Complex64) -> Complex64, roots: &mut [Complex64], iterations: usize) {
    let one = Complex64::new(1.0, 0.0);
    for _ in 0..iterations {
        let mut moved = 0.0f64;
        for k in 0..roots.len() {
            let z = roots[k];
            let v = p(z);
            if v.norm() == 0.0 {
                continue;
            }
            let h = 1e-6 * (1.0 + z.norm());
            let dv = (p(z + h) - p(z - h)) / (2.0 * h);
            let ratio = v / dv;
            let repulsion: Complex64 = (0..roots.len())
                .filter(|&j| j != k)
                .map(|j| one / (z - roots[j]))
                .sum();
            let step = ratio / (one - ratio * repulsion);
            if !step.is_finite() || p(z - step).norm() >= v.norm() {
                continue;
            }
            roots[k] = z - step;
            moved = moved.max(step.norm() / (1.0 + z.norm()));
        }
        if moved < 1e-15 {
            break;
        }
    }
}
