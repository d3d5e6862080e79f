use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::solver::{vertical_tangents, SolverOptions};
use super::{product_of_lines, BivariatePoly, DegenerationError};

/// Intersection of lines `i < j`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Node {
    pub lines: (usize, usize),
    pub x: f64,
    pub y: f64,
}

/// The pencil `member(s) = (1 - s)·∏ l_j + s·g` with a seeded random `g`.
/// Each line is scaled to a unit normal first, so the product measures
/// distances and does not depend on how the line equations are written.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveFamily {
    lines: Vec<[f64; 3]>,
    lines_poly: BivariatePoly,
    generic_poly: BivariatePoly,
    seed: u64,
}

const RESAMPLE_ATTEMPTS: u64 = 8;

fn random_poly(degree: usize, rng: &mut ChaCha8Rng) -> BivariatePoly {
    let mut terms = Vec::new();
    for i in 0..=degree {
        for j in 0..=degree - i {
            terms.push((i, j, rng.gen_range(-1.0..=1.0)));
        }
    }
    BivariatePoly::from_terms(&terms)
}

impl CurveFamily {
    /// Lines `a x + b y + c = 0`, pairwise non-parallel with no three
    /// concurrent (tolerance relative to the coefficient sizes).
    pub fn new(lines: Vec<[f64; 3]>, seed: u64) -> Result<Self, DegenerationError> {
        if lines.len() < 2 {
            return Err(DegenerationError::InvalidLines(format!("{} lines; need at least 2", lines.len())));
        }
        for (k, l) in lines.iter().enumerate() {
            if l.iter().any(|c| !c.is_finite()) || (l[0] == 0.0 && l[1] == 0.0) {
                return Err(DegenerationError::InvalidLines(format!("line {k} is not an affine line: {l:?}")));
            }
            // f_x vanishes along a horizontal component, so tangents near it
            // spread along the whole line instead of gathering at nodes.
            if l[0].abs() <= 1e-12 * l[1].abs() {
                return Err(DegenerationError::InvalidLines(format!("line {k} is horizontal")));
            }
        }
        check_nodes(&lines)?;
        let unit: Vec<[f64; 3]> = lines
            .iter()
            .map(|l| {
                let norm = l[0].hypot(l[1]);
                [l[0] / norm, l[1] / norm, l[2] / norm]
            })
            .collect();
        let lines_poly = product_of_lines(&unit);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let generic_poly = random_poly(lines.len(), &mut rng);
        Ok(Self { lines, lines_poly, generic_poly, seed })
    }

    /// Like [`CurveFamily::new`], but redraws `g` (up to a few times) while
    /// `member(s_max)` is singular.
    pub fn with_smooth_member(
        lines: Vec<[f64; 3]>,
        seed: u64,
        s_max: f64,
        opts: &SolverOptions,
    ) -> Result<Self, DegenerationError> {
        let mut family = Self::new(lines, seed)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let _ = random_poly(family.n(), &mut rng);
        for _ in 0..RESAMPLE_ATTEMPTS {
            match vertical_tangents(&family.member(s_max), opts) {
                Err(DegenerationError::SingularCurve(_)) => {
                    family.generic_poly = random_poly(family.n(), &mut rng);
                }
                _ => return Ok(family),
            }
        }
        Err(DegenerationError::SolverFailure(format!(
            "member({s_max}) stayed singular after {RESAMPLE_ATTEMPTS} draws of the generic polynomial"
        )))
    }

    pub fn n(&self) -> usize {
        self.lines.len()
    }

    pub fn lines(&self) -> &[[f64; 3]] {
        &self.lines
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn lines_poly(&self) -> &BivariatePoly {
        &self.lines_poly
    }

    pub fn generic_poly(&self) -> &BivariatePoly {
        &self.generic_poly
    }

    pub fn member(&self, s: f64) -> BivariatePoly {
        self.lines_poly.combine(1.0 - s, &self.generic_poly, s)
    }

    pub fn nodes(&self) -> Vec<Node> {
        line_nodes(&self.lines)
    }

    pub fn min_node_separation(&self) -> f64 {
        min_separation(&self.nodes())
    }
}

fn line_nodes(lines: &[[f64; 3]]) -> Vec<Node> {
    let mut out = Vec::new();
    for (i, p) in lines.iter().enumerate() {
        for (j, q) in lines.iter().enumerate().skip(i + 1) {
            let z = p[0] * q[1] - p[1] * q[0];
            out.push(Node {
                lines: (i, j),
                x: (p[1] * q[2] - p[2] * q[1]) / z,
                y: (p[2] * q[0] - p[0] * q[2]) / z,
            });
        }
    }
    out
}

fn min_separation(nodes: &[Node]) -> f64 {
    let mut best = f64::INFINITY;
    for (k, a) in nodes.iter().enumerate() {
        for b in &nodes[k + 1..] {
            best = best.min((a.x - b.x).hypot(a.y - b.y));
        }
    }
    best
}

fn check_nodes(lines: &[[f64; 3]]) -> Result<(), DegenerationError> {
    for (i, p) in lines.iter().enumerate() {
        for (j, q) in lines.iter().enumerate().skip(i + 1) {
            let z = p[0] * q[1] - p[1] * q[0];
            if z.abs() <= 1e-12 * p[0].hypot(p[1]) * q[0].hypot(q[1]) {
                return Err(DegenerationError::InvalidLines(format!("lines {i} and {j} are parallel")));
            }
        }
    }
    if lines.len() >= 3 && min_separation(&line_nodes(lines)) <= 1e-9 {
        return Err(DegenerationError::InvalidLines("three or more lines are concurrent".into()));
    }
    Ok(())
}
