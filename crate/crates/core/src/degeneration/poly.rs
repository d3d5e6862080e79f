use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Dense bivariate polynomial `Σ c[i][j] x^i y^j`, `i + j <= degree`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BivariatePoly {
    degree: usize,
    /// `coeffs[i][j]`, rows of length `degree + 1 - i`.
    coeffs: Vec<Vec<f64>>,
}

impl BivariatePoly {
    pub fn zero() -> Self {
        Self { degree: 0, coeffs: vec![vec![0.0]] }
    }

    /// Builds from `(i, j, c)` terms; the degree is the largest `i + j`
    /// with a nonzero coefficient.
    pub fn from_terms(terms: &[(usize, usize, f64)]) -> Self {
        let bound = terms.iter().map(|t| t.0 + t.1).max().unwrap_or(0);
        let mut p = Self::with_bound(bound);
        for &(i, j, c) in terms {
            p.coeffs[i][j] += c;
        }
        p.trim()
    }

    fn with_bound(bound: usize) -> Self {
        Self {
            degree: bound,
            coeffs: (0..=bound).map(|i| vec![0.0; bound + 1 - i]).collect(),
        }
    }

    /// `a x + b y + c`.
    pub fn linear(a: f64, b: f64, c: f64) -> Self {
        Self::from_terms(&[(1, 0, a), (0, 1, b), (0, 0, c)])
    }

    fn trim(mut self) -> Self {
        let exact = (0..=self.degree)
            .rev()
            .find(|&d| (0..=d).any(|i| self.coeffs[i][d - i] != 0.0))
            .unwrap_or(0);
        if exact < self.degree {
            self.coeffs.truncate(exact + 1);
            for (i, row) in self.coeffs.iter_mut().enumerate() {
                row.truncate(exact + 1 - i);
            }
            self.degree = exact;
        }
        self
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().flatten().all(|c| *c == 0.0)
    }

    pub fn coeff(&self, i: usize, j: usize) -> f64 {
        self.coeffs
            .get(i)
            .and_then(|row| row.get(j))
            .copied()
            .unwrap_or(0.0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().enumerate().map(move |(j, &c)| (i, j, c)))
            .filter(|t| t.2 != 0.0)
    }

    /// Largest coefficient magnitude.
    pub fn scale(&self) -> f64 {
        self.coeffs.iter().flatten().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// Largest power of `y` with a nonzero coefficient.
    pub fn degree_in_y(&self) -> usize {
        self.terms().map(|t| t.1).max().unwrap_or(0)
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        self.eval_c(Complex64::new(x, 0.0), Complex64::new(y, 0.0)).re
    }

    /// Horner in `y` over Horner-in-`x` coefficients.
    pub fn eval_c(&self, x: Complex64, y: Complex64) -> Complex64 {
        let py = self.coefficients_in_y_at(x);
        py.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * y + c)
    }

    /// `Σ |c_ij| X^i Y^j` with `X = max(1, |x|)`, `Y = max(1, |y|)`: a
    /// bound on the terms summed by `eval_c` near `(x, y)`, used to make
    /// values relative. Nonzero for every nonzero polynomial.
    pub fn magnitude_at(&self, x: Complex64, y: Complex64) -> f64 {
        let (ax, ay) = (x.norm().max(1.0), y.norm().max(1.0));
        self.terms()
            .map(|(i, j, c)| c.abs() * ax.powi(i as i32) * ay.powi(j as i32))
            .sum()
    }

    /// `self / k`.
    pub fn scaled(&self, k: f64) -> Self {
        self.combine(1.0 / k, &Self::zero(), 0.0)
    }

    /// Coefficients of `y^0..=y^degree` after substituting `x`.
    pub fn coefficients_in_y_at(&self, x: Complex64) -> Vec<Complex64> {
        (0..=self.degree)
            .map(|j| {
                (0..=self.degree - j)
                    .rev()
                    .fold(Complex64::new(0.0, 0.0), |acc, i| acc * x + self.coeff(i, j))
            })
            .collect()
    }

    /// Coefficients of `x^0..=x^degree` after substituting `y`.
    pub fn coefficients_in_x_at(&self, y: Complex64) -> Vec<Complex64> {
        (0..=self.degree)
            .map(|i| {
                (0..=self.degree - i)
                    .rev()
                    .fold(Complex64::new(0.0, 0.0), |acc, j| acc * y + self.coeff(i, j))
            })
            .collect()
    }

    pub fn dx(&self) -> Self {
        let terms: Vec<_> = self
            .terms()
            .filter(|t| t.0 > 0)
            .map(|(i, j, c)| (i - 1, j, c * i as f64))
            .collect();
        Self::from_terms(&terms)
    }

    pub fn dy(&self) -> Self {
        let terms: Vec<_> = self
            .terms()
            .filter(|t| t.1 > 0)
            .map(|(i, j, c)| (i, j - 1, c * j as f64))
            .collect();
        Self::from_terms(&terms)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::with_bound(self.degree + other.degree);
        for (i, j, c) in self.terms() {
            for (k, l, d) in other.terms() {
                out.coeffs[i + k][j + l] += c * d;
            }
        }
        out.trim()
    }

    /// `f(x - μ y, y)`. The shear keeps `∂/∂x`, so the solutions of
    /// `f = f_x = 0` move by `x ↦ x + μ y` and nothing else.
    pub fn sheared(&self, mu: f64) -> Self {
        let mut out = Self::with_bound(self.degree);
        for (i, j, c) in self.terms() {
            // (x - μy)^i = Σ_k C(i, k) x^(i-k) (-μ y)^k
            let mut binom = 1.0;
            for k in 0..=i {
                out.coeffs[i - k][j + k] += c * binom * (-mu).powi(k as i32);
                binom = binom * (i - k) as f64 / (k + 1) as f64;
            }
        }
        out.trim()
    }

    /// `a·self + b·other`.
    pub fn combine(&self, a: f64, other: &Self, b: f64) -> Self {
        let mut out = Self::with_bound(self.degree.max(other.degree));
        for (i, j, c) in self.terms() {
            out.coeffs[i][j] += a * c;
        }
        for (i, j, c) in other.terms() {
            out.coeffs[i][j] += b * c;
        }
        out.trim()
    }
}

/// `∏ (a x + b y + c)` over the given lines.
pub fn product_of_lines(lines: &[[f64; 3]]) -> BivariatePoly {
    lines.iter().fold(BivariatePoly::from_terms(&[(0, 0, 1.0)]), |acc, l| {
        acc.mul(&BivariatePoly::linear(l[0], l[1], l[2]))
    })
}
