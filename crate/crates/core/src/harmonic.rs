//! Edge lines of a regular n-gon inscribed in the unit circle.
//!
//! The intersections `l_j ∩ l_{j+k}` lie on concentric rings of radius
//! `sin(π/2·(1-2/n)) / sin(π/2·(1-2k/n))`, each ring carrying `n` points at
//! equal angular spacing `2π/n`. For even `n` the pairs `l_j, l_{j+n/2}` are
//! parallel and meet at infinity.
//!
//! Metric checks run in `f64`. Combinatorial checks run on an exact rational
//! copy of the lines obtained by rounding the polygon vertices to a fixed
//! denominator.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::arrangement::{check_position, AlcoveId, Arrangement, ArrangementError, Position};
use crate::geom::{line_through, point_in_convex_polygon, ExactScalar, Location, ProjLine, ProjPoint};

/// Denominator used when rounding polygon vertices to rationals.
pub const RATIONAL_DENOMINATOR: u64 = 1_000_000;

/// Default metric tolerance at double precision.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, thiserror::Error)]
pub enum HarmonicError {
    #[error("n = {0} is not supported here")]
    InvalidN(usize),
    #[error("ring index k = {k} out of range for n = {n}")]
    OutOfRangeK { n: usize, k: usize },
    #[error("ring {k}: {quantity} at index {index} is off by {error:e} (tolerance {tol:e})")]
    ToleranceExceeded {
        k: usize,
        index: usize,
        quantity: RingQuantity,
        error: f64,
        tol: f64,
    },
    #[error("rationalized lines lost general position: {0:?}")]
    RationalizationFailed(Position),
    #[error("alcove {alcove} with boundary lines {lines:?} matches no class")]
    ClassificationIncomplete { alcove: AlcoveId, lines: Vec<usize> },
    #[error("class {class} has {found} alcoves, expected {expected}")]
    ClassCountMismatch {
        class: String,
        found: usize,
        expected: usize,
    },
    #[error("arrangement has {found} lines, the n-gon has {expected}")]
    LineCountMismatch { found: usize, expected: usize },
    #[error(transparent)]
    Arrangement(#[from] ArrangementError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RingQuantity {
    Radius,
    Angle,
}

impl std::fmt::Display for RingQuantity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            RingQuantity::Radius => "radius",
            RingQuantity::Angle => "angle",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HarmonicSpec {
    pub n: usize,
    /// `p_j = (cos 2πj/n, sin 2πj/n)`.
    pub vertices: Vec<(f64, f64)>,
    /// `l_j` through `p_j, p_{j+1}` as `[a, b, c]` with `a² + b² = 1`.
    pub lines: Vec<[f64; 3]>,
    pub rationalized_lines: Option<Vec<ProjLine>>,
}

pub fn generate(n: usize) -> Result<HarmonicSpec, HarmonicError> {
    if n < 3 {
        return Err(HarmonicError::InvalidN(n));
    }
    let vertices: Vec<(f64, f64)> = (0..n)
        .map(|j| {
            let t = 2.0 * PI * j as f64 / n as f64;
            (t.cos(), t.sin())
        })
        .collect();
    let lines = (0..n)
        .map(|j| {
            let (x1, y1) = vertices[j];
            let (x2, y2) = vertices[(j + 1) % n];
            let (a, b) = (y1 - y2, x2 - x1);
            let c = x1 * y2 - x2 * y1;
            let s = a.hypot(b);
            [a / s, b / s, c / s]
        })
        .collect();
    Ok(HarmonicSpec {
        n,
        vertices,
        lines,
        rationalized_lines: None,
    })
}

/// [`generate`] plus exact lines through the vertices rounded to
/// denominator [`RATIONAL_DENOMINATOR`]. For odd `n` the exact lines must be
/// in bounded general position.
pub fn generate_rationalized(n: usize) -> Result<HarmonicSpec, HarmonicError> {
    let mut spec = generate(n)?;
    let points: Vec<ProjPoint> = spec
        .vertices
        .iter()
        .map(|&(x, y)| {
            Ok(ProjPoint::affine(
                ExactScalar::round_f64(x, RATIONAL_DENOMINATOR)?,
                ExactScalar::round_f64(y, RATIONAL_DENOMINATOR)?,
            ))
        })
        .collect::<Result<_, crate::geom::GeomError>>()
        .map_err(ArrangementError::from)?;
    let lines: Vec<ProjLine> = (0..n)
        .map(|j| line_through(&points[j], &points[(j + 1) % n]))
        .collect::<Result<_, _>>()
        .map_err(ArrangementError::from)?;
    if n % 2 == 1 {
        let position = check_position(&lines)?;
        if !position.is_bounded_general() {
            return Err(HarmonicError::RationalizationFailed(position));
        }
    }
    spec.rationalized_lines = Some(lines);
    Ok(spec)
}

/// Largest ring index with finite radius: `(n-1)/2` for odd `n`, `(n-2)/2`
/// for even `n`.
pub fn max_ring(n: usize) -> usize {
    if n % 2 == 1 {
        (n - 1) / 2
    } else {
        (n - 2) / 2
    }
}

pub fn ring_radius(n: usize, k: usize) -> Result<f64, HarmonicError> {
    if n < 3 {
        return Err(HarmonicError::InvalidN(n));
    }
    if k < 1 || k > max_ring(n) {
        return Err(HarmonicError::OutOfRangeK { n, k });
    }
    let nf = n as f64;
    let num = (PI / 2.0 * (1.0 - 2.0 / nf)).sin();
    let den = (PI / 2.0 * (1.0 - 2.0 * k as f64 / nf)).sin();
    Ok(num / den)
}

fn intersect_f64(l1: &[f64; 3], l2: &[f64; 3]) -> Option<(f64, f64)> {
    let det = l1[0] * l2[1] - l1[1] * l2[0];
    if det == 0.0 {
        return None;
    }
    let x = (l1[1] * l2[2] - l1[2] * l2[1]) / det;
    let y = (l1[2] * l2[0] - l1[0] * l2[2]) / det;
    Some((x, y))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RingReport {
    pub k: usize,
    pub predicted_radius: f64,
    /// `|l_j ∩ l_{j+k}|` for `j = 0..n`.
    pub measured_radii: Vec<f64>,
    /// Signed angle from intersection `j` to intersection `j + 1`.
    pub consecutive_angles: Vec<f64>,
    pub max_radius_error: f64,
    pub max_angle_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RingSurvey {
    pub n: usize,
    pub rings: Vec<RingReport>,
    /// For even `n`: ring `n/2` lies at infinity.
    pub ring_at_infinity: Option<usize>,
    /// Line pairs whose unit normals are parallel to within `tol`.
    pub parallel_pairs: Vec<(usize, usize)>,
}

impl RingSurvey {
    /// Worst offender above `tol`, if any.
    pub fn worst(&self, tol: f64) -> Option<HarmonicError> {
        let mut worst: Option<(usize, usize, RingQuantity, f64)> = None;
        for ring in &self.rings {
            let radius_errs = ring
                .measured_radii
                .iter()
                .map(|r| (r - ring.predicted_radius).abs())
                .map(|e| (e, RingQuantity::Radius));
            let target = 2.0 * PI / self.n as f64;
            let angle_errs = ring
                .consecutive_angles
                .iter()
                .map(|a| (a - target).abs())
                .map(|e| (e, RingQuantity::Angle));
            for (index, (err, quantity)) in radius_errs
                .enumerate()
                .chain(angle_errs.enumerate())
            {
                // NaN counts as a failure.
                let bad = !(err <= tol);
                if bad && worst.is_none_or(|w| !(err <= w.3)) {
                    worst = Some((ring.k, index, quantity, err));
                }
            }
        }
        worst.map(|(k, index, quantity, error)| HarmonicError::ToleranceExceeded {
            k,
            index,
            quantity,
            error,
            tol,
        })
    }
}

/// Measures every finite ring and lists near-parallel line pairs.
pub fn survey_rings(spec: &HarmonicSpec, tol: f64) -> Result<RingSurvey, HarmonicError> {
    let n = spec.n;
    let mut rings = Vec::new();
    for k in 1..=max_ring(n) {
        let predicted_radius = ring_radius(n, k)?;
        let points: Vec<(f64, f64)> = (0..n)
            .map(|j| {
                intersect_f64(&spec.lines[j], &spec.lines[(j + k) % n])
                    .unwrap_or((f64::NAN, f64::NAN))
            })
            .collect();
        let measured_radii: Vec<f64> = points.iter().map(|(x, y)| x.hypot(*y)).collect();
        let consecutive_angles: Vec<f64> = (0..n)
            .map(|j| {
                let (x1, y1) = points[j];
                let (x2, y2) = points[(j + 1) % n];
                (x1 * y2 - y1 * x2).atan2(x1 * x2 + y1 * y2)
            })
            .collect();
        let target = 2.0 * PI / n as f64;
        let max_radius_error = measured_radii
            .iter()
            .map(|r| (r - predicted_radius).abs())
            .fold(0.0, f64::max);
        let max_angle_error = consecutive_angles
            .iter()
            .map(|a| (a - target).abs())
            .fold(0.0, f64::max);
        rings.push(RingReport {
            k,
            predicted_radius,
            measured_radii,
            consecutive_angles,
            max_radius_error,
            max_angle_error,
        });
    }
    let mut parallel_pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (&spec.lines[i], &spec.lines[j]);
            if (a[0] * b[1] - a[1] * b[0]).abs() <= tol {
                parallel_pairs.push((i, j));
            }
        }
    }
    Ok(RingSurvey {
        n,
        rings,
        ring_at_infinity: n.is_multiple_of(2).then_some(n / 2),
        parallel_pairs,
    })
}

/// Like [`survey_rings`], but fails with the worst offender when any radius
/// or angle misses its prediction by more than `tol`.
pub fn verify_rings(spec: &HarmonicSpec, tol: f64) -> Result<RingSurvey, HarmonicError> {
    let survey = survey_rings(spec, tol)?;
    match survey.worst(tol) {
        Some(err) => Err(err),
        None => Ok(survey),
    }
}

/// Tolerance for a given float precision: `1e-9` at 53 bits, otherwise
/// `10 · 2^-bits · n`.
pub fn default_tolerance(precision_bits: u32, n: usize) -> f64 {
    if precision_bits >= 53 {
        DEFAULT_TOLERANCE
    } else {
        10.0 * 2f64.powi(-(precision_bits as i32)) * n as f64
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifiedAlcove {
    pub alcove: AlcoveId,
    pub lines: Vec<usize>,
    /// Ring index of each corner, in boundary order.
    pub ring_contacts: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlcoveClassification {
    pub n: usize,
    pub central: ClassifiedAlcove,
    /// Triangles on `{l_i, l_{i+1}, l_{i+2}}`.
    pub first_kind: Vec<ClassifiedAlcove>,
    /// For `1 <= j <= (n-5)/2`: quadrilaterals on
    /// `{l_i, l_{i+1}, l_{i+j+1}, l_{i+j+2}}`.
    pub second_kind: BTreeMap<usize, Vec<ClassifiedAlcove>>,
}

impl AlcoveClassification {
    pub fn second_kind_total(&self) -> usize {
        self.second_kind.values().map(Vec::len).sum()
    }

    pub fn total(&self) -> usize {
        1 + self.first_kind.len() + self.second_kind_total()
    }
}

fn index_set(n: usize, offsets: &[usize], start: usize) -> Vec<usize> {
    let mut s: Vec<usize> = offsets.iter().map(|o| (start + o) % n).collect();
    s.sort_unstable();
    s
}

/// `Some(i)` if `lines == {i + o : o in offsets} mod n` for some `i`.
fn match_pattern(n: usize, offsets: &[usize], lines: &[usize]) -> Option<usize> {
    (0..n).find(|&i| index_set(n, offsets, i) == lines)
}

/// Ring index of the intersection `l_i ∩ l_j`.
pub fn ring_of(n: usize, i: usize, j: usize) -> usize {
    let d = (j + n - i) % n;
    d.min(n - d)
}

/// Sorts the alcoves of `arr` (built from `spec.rationalized_lines`, odd
/// `n`) into the central alcove, the first kind and the second kind.
pub fn classify_alcoves(spec: &HarmonicSpec, arr: &Arrangement) -> Result<AlcoveClassification, HarmonicError> {
    let n = spec.n;
    if n.is_multiple_of(2) || n < 3 {
        return Err(HarmonicError::InvalidN(n));
    }
    if arr.n() != n {
        return Err(HarmonicError::LineCountMismatch {
            found: arr.n(),
            expected: n,
        });
    }
    let origin = ProjPoint::affine_int(0, 0);
    let all: Vec<usize> = (0..n).collect();

    let mut central = Vec::new();
    let mut first_kind = Vec::new();
    let mut second_kind: BTreeMap<usize, Vec<ClassifiedAlcove>> =
        (1..=(n.saturating_sub(5) / 2)).map(|j| (j, Vec::new())).collect();

    for (a, alcove) in arr.alcoves().iter().enumerate() {
        let lines = alcove.line_indices.clone();
        let ring_contacts = alcove
            .vertex_cycle
            .iter()
            .map(|&v| {
                let (i, j) = arr.vertices()[v].lines;
                ring_of(n, i, j)
            })
            .collect();
        let item = ClassifiedAlcove {
            alcove: a,
            lines: lines.clone(),
            ring_contacts,
        };
        let contains_origin =
            point_in_convex_polygon(&origin, &arr.alcove_points(a)).map_err(ArrangementError::from)?
                == Location::Interior;
        if contains_origin && lines == all {
            central.push(item);
        } else if n >= 5 && lines.len() == 3 && match_pattern(n, &[0, 1, 2], &lines).is_some() {
            first_kind.push(item);
        } else if let Some(j) = (lines.len() == 4)
            .then(|| (1..=(n.saturating_sub(5) / 2)).find(|&j| match_pattern(n, &[0, 1, j + 1, j + 2], &lines).is_some()))
            .flatten()
        {
            second_kind.get_mut(&j).expect("j in range").push(item);
        } else {
            return Err(HarmonicError::ClassificationIncomplete { alcove: a, lines });
        }
    }

    let expect = |class: String, found: usize, expected: usize| {
        if found == expected {
            Ok(())
        } else {
            Err(HarmonicError::ClassCountMismatch { class, found, expected })
        }
    };
    expect("central".into(), central.len(), 1)?;
    expect("first_kind".into(), first_kind.len(), if n >= 5 { n } else { 0 })?;
    for (j, v) in &second_kind {
        expect(format!("second_kind[{j}]"), v.len(), n)?;
    }
    Ok(AlcoveClassification {
        n,
        central: central.pop().expect("exactly one"),
        first_kind,
        second_kind,
    })
}

/// Class bookkeeping for odd `n >= 5`: `m = n(n-1) = 2n + 2n + n(n-5)`,
/// attributing two vertical tangents to each node on the central alcove,
/// the first-kind alcoves and the second-kind alcoves respectively.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassSplit {
    pub m: u64,
    pub central_share: u64,
    pub first_share: u64,
    pub second_share: u64,
}

impl ClassSplit {
    pub fn is_consistent(&self) -> bool {
        self.m == self.central_share + self.first_share + self.second_share
    }
}

pub fn class_split(n: usize) -> Result<ClassSplit, HarmonicError> {
    if n < 5 || n.is_multiple_of(2) {
        return Err(HarmonicError::InvalidN(n));
    }
    let n = n as u64;
    Ok(ClassSplit {
        m: n * (n - 1),
        central_share: 2 * n,
        first_share: 2 * n,
        second_share: n * (n - 5),
    })
}
