//! JSON-ready reports for the three computations, each carrying a list of
//! named checks. Exact coordinates serialize as `"p/q"` strings; maps are
//! ordered so the output is byte-stable.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::arrangement::{
    alcove_intersection, build, check_position, enumerate_alcoves, expected_alcove_count, vertex_number,
    ArrangementError, Position,
};
use crate::degeneration::{
    run_degeneration, Backend, CurveFamily, DegenerationError, DegenerationReport, SolverOptions,
};
use crate::geom::{ExactScalar, ProjLine};
use crate::harmonic::{
    class_split, classify_alcoves, generate, generate_rationalized, survey_rings, AlcoveClassification,
    ClassSplit, HarmonicError, RingReport,
};

/// Residual bound a tangent point must meet to count as found.
pub const TANGENT_RESIDUAL_BOUND: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: &str, pass: bool, detail: impl Into<String>) -> Self {
        Self { name: name.to_string(), pass, detail: detail.into() }
    }
}

fn all_pass(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.pass)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArrangeReport {
    pub n: usize,
    pub lines: Vec<ProjLine>,
    pub position: Position,
    /// The remaining fields are `None` when the lines cannot be built.
    pub vertices: Option<usize>,
    pub edges: Option<usize>,
    pub alcoves: Option<usize>,
    pub expected_alcoves: usize,
    /// Counterclockwise `[x, y]` corners of each alcove.
    pub alcove_polygons: Option<Vec<Vec<[ExactScalar; 2]>>>,
    /// Alcove degree -> number of edges.
    pub edge_alcove_degrees: Option<BTreeMap<usize, usize>>,
    /// `"empty"`, `"vertex"`, `"edge"` -> number of alcove pairs.
    pub alcove_meets: Option<BTreeMap<String, usize>>,
    pub checks: Vec<Check>,
    pub pass: bool,
}

/// Builds the arrangement and checks its alcove invariants. Input that is
/// not in bounded general position yields a failing report with the
/// position witness, not an error.
pub fn arrange_report(lines: &[ProjLine]) -> Result<ArrangeReport, ArrangementError> {
    let n = lines.len();
    let position = check_position(lines)?;
    let expected_alcoves = expected_alcove_count(n);
    let mut report = ArrangeReport {
        n,
        lines: lines.to_vec(),
        position: position.clone(),
        vertices: None,
        edges: None,
        alcoves: None,
        expected_alcoves,
        alcove_polygons: None,
        edge_alcove_degrees: None,
        alcove_meets: None,
        checks: vec![],
        pass: false,
    };
    if !position.is_bounded_general() {
        report.checks.push(Check::new("bounded_general_position", false, format!("{position:?}")));
        return Ok(report);
    }
    report.checks.push(Check::new("bounded_general_position", true, ""));

    let arr = build(lines)?;
    let count = arr.alcoves().len();
    report.checks.push(Check::new(
        "alcove_count",
        enumerate_alcoves(&arr).is_ok() && count == expected_alcoves,
        format!("{count} alcoves, (n-1)(n-2)/2 = {expected_alcoves}"),
    ));

    let degrees = arr.edge_alcove_degrees();
    let bad_edges: usize = degrees.iter().filter(|(d, _)| !(1..=2).contains(*d)).map(|(_, c)| c).sum();
    report.checks.push(Check::new(
        "edge_incidence",
        bad_edges == 0 || n < 3,
        format!("{bad_edges} edges border no alcove or more than two"),
    ));

    let mut meets: BTreeMap<String, usize> = BTreeMap::new();
    let mut meet_errors = Vec::new();
    for a in 0..count {
        for b in a + 1..count {
            let key = match alcove_intersection(&arr, a, b) {
                Ok(m) => format!("{m:?}").split('(').next().unwrap_or_default().to_lowercase(),
                Err(e) => {
                    meet_errors.push(format!("({a}, {b}): {e}"));
                    continue;
                }
            };
            *meets.entry(key).or_insert(0) += 1;
        }
    }
    report.checks.push(Check::new("alcove_meets", meet_errors.is_empty(), meet_errors.join("; ")));

    let nonzero: Vec<usize> = (0..count)
        .filter(|&a| vertex_number(&arr, &arr.alcoves()[a].vertex_cycle).map_or(true, |v| v != 0))
        .collect();
    report.checks.push(Check::new(
        "vertex_number_zero",
        nonzero.is_empty(),
        if nonzero.is_empty() { String::new() } else { format!("alcoves {nonzero:?}") },
    ));

    report.vertices = Some(arr.vertices().len());
    report.edges = Some(arr.edges().len());
    report.alcoves = Some(count);
    report.alcove_polygons = Some(
        (0..count)
            .map(|a| arr.alcove_polygon(a).into_iter().map(|(x, y)| [x, y]).collect())
            .collect(),
    );
    report.edge_alcove_degrees = Some(degrees);
    report.alcove_meets = Some(meets);
    report.pass = all_pass(&report.checks);
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassCounts {
    pub central: usize,
    pub first: usize,
    pub second: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub alcoves: usize,
    pub classes: ClassCounts,
    /// Second-kind count for each `j`.
    pub second_by_j: BTreeMap<usize, usize>,
    pub detail: AlcoveClassification,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HarmonicReport {
    pub n: usize,
    pub tolerance: f64,
    pub lines: Vec<[f64; 3]>,
    pub rings: Vec<RingReport>,
    pub ring_at_infinity: Option<usize>,
    pub parallel_pairs: Vec<(usize, usize)>,
    pub classification: Option<ClassificationReport>,
    pub class_split: Option<ClassSplit>,
    pub checks: Vec<Check>,
    pub pass: bool,
}

/// Ring survey for the regular `n`-gon lines, plus the alcove classes for
/// odd `n` when `classify` is set.
pub fn harmonic_report(n: usize, tolerance: f64, classify: bool) -> Result<HarmonicReport, HarmonicError> {
    let spec = generate(n)?;
    let survey = survey_rings(&spec, tolerance)?;
    let mut checks = Vec::new();
    checks.push(match survey.worst(tolerance) {
        None => Check::new("rings", true, format!("{} rings within {tolerance:e}", survey.rings.len())),
        Some(err) => Check::new("rings", false, err.to_string()),
    });
    let want_parallel = if n.is_multiple_of(2) { n / 2 } else { 0 };
    checks.push(Check::new(
        "parallel_pairs",
        survey.parallel_pairs.len() == want_parallel,
        format!("{} parallel pairs, expected {want_parallel}", survey.parallel_pairs.len()),
    ));

    let (mut classification, mut split) = (None, None);
    if classify {
        if n.is_multiple_of(2) {
            return Err(HarmonicError::InvalidN(n));
        }
        let spec = generate_rationalized(n)?;
        let arr = build(spec.rationalized_lines.as_deref().expect("rationalized"))?;
        let c = classify_alcoves(&spec, &arr)?;
        let counts = ClassCounts { central: 1, first: c.first_kind.len(), second: c.second_kind_total() };
        let total = c.total();
        checks.push(Check::new(
            "classification",
            total == arr.alcoves().len() && total == expected_alcove_count(n),
            format!("1 + {} + {} = {total}", counts.first, counts.second),
        ));
        classification = Some(ClassificationReport {
            alcoves: arr.alcoves().len(),
            classes: counts,
            second_by_j: c.second_kind.iter().map(|(j, v)| (*j, v.len())).collect(),
            detail: c,
        });
        if n >= 5 {
            let s = class_split(n)?;
            checks.push(Check::new(
                "class_split",
                s.is_consistent(),
                format!("{} = {} + {} + {}", s.m, s.central_share, s.first_share, s.second_share),
            ));
            split = Some(s);
        }
    }
    Ok(HarmonicReport {
        n,
        tolerance,
        lines: spec.lines.clone(),
        rings: survey.rings,
        ring_at_infinity: survey.ring_at_infinity,
        parallel_pairs: survey.parallel_pairs,
        classification,
        class_split: split,
        pass: all_pass(&checks),
        checks,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DegenerateReport {
    pub lines: Vec<[f64; 3]>,
    pub backend: Backend,
    pub residual_bound: f64,
    pub degeneration: DegenerationReport,
    pub checks: Vec<Check>,
    pub pass: bool,
}

pub fn degenerate_report(
    family: &CurveFamily,
    s_values: &[f64],
    cluster_radius: Option<f64>,
    opts: &SolverOptions,
) -> Result<DegenerateReport, DegenerationError> {
    let degeneration = run_degeneration(family, s_values, cluster_radius, opts)?;
    let expected = family.n() * (family.n() - 1);
    let mut checks = Vec::new();
    for r in &degeneration.reports {
        let worst = r.tangents.iter().map(|t| t.residual).fold(0.0, f64::max);
        checks.push(Check::new(
            &format!("tangent_count@{}", r.s),
            r.tangents.len() == expected && worst <= TANGENT_RESIDUAL_BOUND,
            format!("{} tangents (expected {expected}), worst residual {worst:e}", r.tangents.len()),
        ));
    }
    checks.push(Check::new(
        "two_per_node",
        degeneration.pass,
        match degeneration.settled_from {
            Some(s) => format!("settled from s = {s}"),
            None => "not settled at the smallest s".to_string(),
        },
    ));
    Ok(DegenerateReport {
        lines: family.lines().to_vec(),
        backend: opts.backend,
        residual_bound: TANGENT_RESIDUAL_BOUND,
        degeneration,
        pass: all_pass(&checks),
        checks,
    })
}

/// Any report, keyed by the command that produced it: `{"arrange": {...}}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Report {
    Arrange(ArrangeReport),
    Harmonic(HarmonicReport),
    Degenerate(DegenerateReport),
}

impl Report {
    pub fn checks(&self) -> &[Check] {
        match self {
            Report::Arrange(r) => &r.checks,
            Report::Harmonic(r) => &r.checks,
            Report::Degenerate(r) => &r.checks,
        }
    }

    pub fn pass(&self) -> bool {
        match self {
            Report::Arrange(r) => r.pass,
            Report::Harmonic(r) => r.pass,
            Report::Degenerate(r) => r.pass,
        }
    }
}
