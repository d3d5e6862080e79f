use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::BivariatePoly;

/// Sylvester matrix of two univariate polynomials with the given ascending
/// coefficients, formal degrees `p = f.len() - 1`, `q = g.len() - 1`.
fn sylvester(f: &[Complex64], g: &[Complex64]) -> DMatrix<Complex64> {
    let (p, q) = (f.len() - 1, g.len() - 1);
    let size = p + q;
    let mut m = DMatrix::from_element(size, size, Complex64::new(0.0, 0.0));
    for row in 0..q {
        for (k, c) in f.iter().rev().enumerate() {
            m[(row, row + k)] = *c;
        }
    }
    for row in 0..p {
        for (k, c) in g.iter().rev().enumerate() {
            m[(q + row, row + k)] = *c;
        }
    }
    m
}

/// `Res_y(f, g)` evaluated at `x`, using the y-degrees of `f` and `g` as
/// formal degrees.
pub fn resultant_y_at(f: &BivariatePoly, g: &BivariatePoly, x: Complex64) -> Complex64 {
    let fy: Vec<Complex64> = f.coefficients_in_y_at(x)[..=f.degree_in_y()].to_vec();
    let gy: Vec<Complex64> = g.coefficients_in_y_at(x)[..=g.degree_in_y()].to_vec();
    if fy.len() + gy.len() == 2 {
        return Complex64::new(1.0, 0.0);
    }
    sylvester(&fy, &gy).determinant()
}

/// The common root `y` of `f(x, ·)` and `g(x, ·)` read off the null vector
/// of the Sylvester matrix at a root `x` of the resultant. That vector is
/// `(y^(k-1), ..., y, 1)` when the common root is simple.
pub fn common_root_y(f: &BivariatePoly, g: &BivariatePoly, x: Complex64) -> Option<Complex64> {
    let fy: Vec<Complex64> = f.coefficients_in_y_at(x)[..=f.degree_in_y()].to_vec();
    let gy: Vec<Complex64> = g.coefficients_in_y_at(x)[..=g.degree_in_y()].to_vec();
    if fy.len() < 2 || gy.len() < 2 {
        return None;
    }
    let m = sylvester(&fy, &gy);
    let size = m.ncols();
    let svd = m.svd(false, true);
    let v_t = svd.v_t?;
    let k = svd
        .singular_values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))?
        .0;
    let v: Vec<Complex64> = v_t.row(k).iter().map(|c| c.conj()).collect();
    let y = v[size - 2] / v[size - 1];
    y.is_finite().then_some(y)
}

/// Coefficients (ascending in `x`) of `Res_y(f, g)`, recovered by sampling
/// on the circle `|x| = radius` and an inverse discrete Fourier transform.
/// The result has `deg f · deg g + 1` entries; callers trim it.
pub fn resultant_y(f: &BivariatePoly, g: &BivariatePoly, radius: f64) -> Vec<Complex64> {
    let samples = f.degree() * g.degree() + 1;
    let values: Vec<Complex64> = (0..samples)
        .map(|k| {
            let x = Complex64::from_polar(radius, 2.0 * PI * k as f64 / samples as f64);
            resultant_y_at(f, g, x)
        })
        .collect();
    (0..samples)
        .map(|m| {
            let sum: Complex64 = values
                .iter()
                .enumerate()
                .map(|(k, v)| v * Complex64::from_polar(1.0, -2.0 * PI * (k * m) as f64 / samples as f64))
                .sum();
            sum / samples as f64 / radius.powi(m as i32)
        })
        .collect()
}
