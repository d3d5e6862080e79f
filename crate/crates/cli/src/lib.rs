//! Command dispatch for the `alcove` binary.
//!
//! Exit codes: 0 when every check in the report passes, 2 when the checks
//! ran and some failed, 1 for operational errors (bad input, I/O).

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use alcove_core::arrangement::build;
use alcove_core::degeneration::{Backend, CurveFamily, SolverOptions, DEFAULT_S_VALUES};
use alcove_core::geom::parse_lines;
use alcove_core::harmonic::{
    classify_alcoves, default_tolerance, generate, generate_rationalized, survey_rings,
};
use alcove_core::report::{arrange_report, degenerate_report, harmonic_report, Report};
use alcove_core::svg::{emit_svg, SvgScene};
use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

pub const PRECISION_ENV: &str = "ALCOVE_PRECISION_BITS";
pub const EXIT_PASS: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_CHECKS_FAILED: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "alcove", version, about = "Line arrangements, regular n-gon alcoves and degenerating curves")]
pub struct Cli {
    /// `key=value` file with defaults for the command's flags.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the arrangement of the lines in a file and check its alcoves.
    Arrange(ArrangeArgs),
    /// Regular n-gon lines: ring radii, angles and alcove classes.
    Harmonic(HarmonicArgs),
    /// Vertical tangents along a pencil degenerating to a union of lines.
    Degenerate(DegenerateArgs),
    /// Re-read a JSON report, verify it round-trips and print its checks.
    Report(ReportArgs),
}

#[derive(Debug, Args, Default)]
pub struct Outputs {
    /// Write the JSON report here (`-` for stdout).
    #[arg(long)]
    pub json: Option<PathBuf>,
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ArrangeArgs {
    /// Line file: one `a b c` row per line `a x + b y + c = 0`.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[command(flatten)]
    pub out: Outputs,
}

#[derive(Debug, Args)]
pub struct HarmonicArgs {
    #[arg(long)]
    pub n: Option<usize>,
    /// Metric tolerance for radii and angles.
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub classify: bool,
    #[arg(long)]
    pub precision_bits: Option<u32>,
    #[command(flatten)]
    pub out: Outputs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BackendArg {
    Resultant,
    Homotopy,
}

#[derive(Debug, Args)]
pub struct DegenerateArgs {
    #[arg(long, conflicts_with = "n_gon")]
    pub lines: Option<PathBuf>,
    /// Use the edge lines of the regular n-gon.
    #[arg(long)]
    pub n_gon: Option<usize>,
    /// Comma-separated, strictly decreasing.
    #[arg(long, value_delimiter = ',')]
    pub s: Option<Vec<f64>>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub radius: Option<f64>,
    #[arg(long, value_enum)]
    pub backend: Option<BackendArg>,
    #[command(flatten)]
    pub out: Outputs,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    #[arg(long)]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Task {
    Arrange { input: PathBuf },
    Harmonic { n: usize, tol: f64, classify: bool },
    Degenerate { lines: LineSource, s: Vec<f64>, seed: u64, radius: Option<f64>, backend: Backend },
    Report { input: PathBuf },
}

#[derive(Debug, Clone, PartialEq)]
pub enum LineSource {
    File(PathBuf),
    NGon(usize),
}

/// A fully resolved command: flags over config file over environment over
/// defaults.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub task: Task,
    pub precision_bits: u32,
    pub json: Option<PathBuf>,
    pub svg: Option<PathBuf>,
}

/// Parses `key=value` rows; `#` starts a comment. Keys use `_` or `-`.
pub fn parse_config(text: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (k, raw) in text.lines().enumerate() {
        let row = raw.split('#').next().unwrap_or("").trim();
        if row.is_empty() {
            continue;
        }
        let (key, value) = row
            .split_once('=')
            .ok_or_else(|| anyhow!("config row {}: expected key=value", k + 1))?;
        out.insert(key.trim().replace('-', "_"), value.trim().to_string());
    }
    Ok(out)
}

struct Layered {
    file: BTreeMap<String, String>,
}

impl Layered {
    fn get<T: std::str::FromStr>(&self, flag: Option<T>, key: &str) -> Result<Option<T>>
    where
        T::Err: std::fmt::Display,
    {
        if flag.is_some() {
            return Ok(flag);
        }
        match self.file.get(key) {
            None => Ok(None),
            Some(v) => v.parse().map(Some).map_err(|e| anyhow!("config key `{key}`: {e}")),
        }
    }

    fn path(&self, flag: Option<PathBuf>, key: &str) -> Option<PathBuf> {
        flag.or_else(|| self.file.get(key).map(PathBuf::from))
    }

    fn flag(&self, flag: bool, key: &str) -> Result<bool> {
        Ok(flag || self.get::<bool>(None, key)?.unwrap_or(false))
    }
}

fn env_precision() -> Result<Option<u32>> {
    match std::env::var(PRECISION_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|e| anyhow!("{PRECISION_ENV}={v}: {e}")),
        Err(_) => Ok(None),
    }
}

fn parse_s_list(text: &str) -> Result<Vec<f64>> {
    text.split(',')
        .map(|s| s.trim().parse::<f64>().map_err(|e| anyhow!("bad s value `{s}`: {e}")))
        .collect()
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self> {
        let file = match &cli.config {
            Some(p) => parse_config(&fs::read_to_string(p).with_context(|| format!("reading config {}", p.display()))?)?,
            None => BTreeMap::new(),
        };
        let cfg = Layered { file };
        let mut precision_bits = cfg.get::<u32>(None, "precision_bits")?.or(env_precision()?).unwrap_or(53);
        let (task, out) = match cli.command {
            Command::Arrange(a) => {
                let input = cfg.path(a.input, "input").ok_or_else(|| anyhow!("arrange needs --input"))?;
                (Task::Arrange { input }, a.out)
            }
            Command::Harmonic(h) => {
                let n = cfg.get(h.n, "n")?.ok_or_else(|| anyhow!("harmonic needs --n"))?;
                if let Some(bits) = h.precision_bits {
                    precision_bits = bits;
                }
                let tol = cfg.get(h.tol, "tol")?.unwrap_or_else(|| default_tolerance(precision_bits, n));
                let classify = cfg.flag(h.classify, "classify")?;
                (Task::Harmonic { n, tol, classify }, h.out)
            }
            Command::Degenerate(d) => {
                let lines = match (cfg.path(d.lines, "lines"), cfg.get(d.n_gon, "n_gon")?) {
                    (Some(p), None) => LineSource::File(p),
                    (None, Some(n)) => LineSource::NGon(n),
                    (Some(_), Some(_)) => bail!("give either --lines or --n-gon, not both"),
                    (None, None) => bail!("degenerate needs --lines or --n-gon"),
                };
                let s = match d.s {
                    Some(s) => s,
                    None => match cfg.file.get("s") {
                        Some(text) => parse_s_list(text)?,
                        None => DEFAULT_S_VALUES.to_vec(),
                    },
                };
                let backend = match cfg.get::<String>(d.backend.map(|b| format!("{b:?}").to_lowercase()), "backend")? {
                    None => Backend::Resultant,
                    Some(b) => match b.as_str() {
                        "resultant" => Backend::Resultant,
                        "homotopy" => Backend::Homotopy,
                        other => bail!("unknown backend `{other}`"),
                    },
                };
                let task = Task::Degenerate {
                    lines,
                    s,
                    seed: cfg.get(d.seed, "seed")?.unwrap_or(0),
                    radius: cfg.get(d.radius, "radius")?,
                    backend,
                };
                (task, d.out)
            }
            Command::Report(r) => {
                let input = cfg.path(r.input, "input").ok_or_else(|| anyhow!("report needs --input"))?;
                (Task::Report { input }, Outputs::default())
            }
        };
        if !(1..=53).contains(&precision_bits) {
            bail!("precision of {precision_bits} bits is not available; floats are IEEE double (at most 53 bits)");
        }
        let config = RunConfig {
            task,
            precision_bits,
            json: cfg.path(out.json, "json"),
            svg: cfg.path(out.svg, "svg"),
        };
        config.validate_paths()?;
        Ok(config)
    }

    /// Inputs must be readable files and outputs must have an existing
    /// parent directory, before any work starts.
    pub fn validate_paths(&self) -> Result<()> {
        let input = match &self.task {
            Task::Arrange { input } | Task::Report { input } => Some(input),
            Task::Degenerate { lines: LineSource::File(p), .. } => Some(p),
            _ => None,
        };
        if let Some(p) = input {
            if !p.is_file() {
                bail!("input file {} does not exist", p.display());
            }
        }
        for out in [&self.json, &self.svg].into_iter().flatten() {
            if out.as_os_str() == "-" {
                continue;
            }
            let parent = out.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
            if !parent.is_dir() {
                bail!("output directory {} does not exist", parent.display());
            }
        }
        Ok(())
    }
}

/// What a run produced: the report plus the scene to render, if any.
#[derive(Debug)]
pub struct Outcome {
    pub report: Report,
    pub scene: Option<SvgScene>,
}

fn read_lines(path: &Path) -> Result<Vec<alcove_core::ProjLine>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_lines(&text).with_context(|| format!("parsing {}", path.display()))
}

/// Runs the computation without writing anything.
pub fn run(config: &RunConfig) -> Result<Outcome> {
    let want_svg = config.svg.is_some();
    match &config.task {
        Task::Arrange { input } => {
            let lines = read_lines(input)?;
            let report = arrange_report(&lines)?;
            let scene = (want_svg && report.alcoves.is_some())
                .then(|| build(&lines).map(|arr| SvgScene::arrangement(&arr)))
                .transpose()?;
            Ok(Outcome { report: Report::Arrange(report), scene })
        }
        Task::Harmonic { n, tol, classify } => {
            let report = harmonic_report(*n, *tol, *classify)?;
            let scene = if want_svg {
                let spec = generate(*n)?;
                let rings = survey_rings(&spec, *tol)?.rings;
                let scene = if *classify {
                    let exact = generate_rationalized(*n)?;
                    let arr = build(exact.rationalized_lines.as_deref().expect("rationalized"))?;
                    let classes = classify_alcoves(&exact, &arr)?;
                    SvgScene::harmonic(&spec, &rings, Some((&arr, &classes)))
                } else {
                    SvgScene::harmonic(&spec, &rings, None)
                };
                Some(scene)
            } else {
                None
            };
            Ok(Outcome { report: Report::Harmonic(report), scene })
        }
        Task::Degenerate { lines, s, seed, radius, backend } => {
            let lines: Vec<[f64; 3]> = match lines {
                LineSource::File(p) => read_lines(p)?.iter().map(|l| l.to_f64()).collect(),
                LineSource::NGon(n) => generate(*n)?.lines,
            };
            let opts = SolverOptions { backend: *backend, seed: *seed, ..SolverOptions::default() };
            let s_max = *s.first().ok_or_else(|| anyhow!("no s values"))?;
            let family = CurveFamily::with_smooth_member(lines, *seed, s_max, &opts)?;
            let report = degenerate_report(&family, s, *radius, &opts)?;
            let scene = want_svg.then(|| SvgScene::degeneration(&family, &report.degeneration));
            Ok(Outcome { report: Report::Degenerate(report), scene })
        }
        Task::Report { input } => {
            let text = fs::read_to_string(input).with_context(|| format!("reading {}", input.display()))?;
            let report: Report = serde_json::from_str(&text).with_context(|| format!("parsing {}", input.display()))?;
            let again = to_json(&report)?;
            if again.trim_end() != text.trim_end() {
                bail!("{} does not round-trip: re-serialized report differs", input.display());
            }
            Ok(Outcome { report, scene: None })
        }
    }
}

pub fn to_json(report: &Report) -> Result<String> {
    let mut text = serde_json::to_string_pretty(report)?;
    text.push('\n');
    Ok(text)
}

fn summary(report: &Report) -> String {
    let mut out = String::new();
    for c in report.checks() {
        let mark = if c.pass { "pass" } else { "FAIL" };
        if c.detail.is_empty() {
            out.push_str(&format!("{mark}  {}\n", c.name));
        } else {
            out.push_str(&format!("{mark}  {}: {}\n", c.name, c.detail));
        }
    }
    out
}

/// Runs and writes the requested artifacts; returns the exit code.
pub fn execute(config: &RunConfig) -> Result<i32> {
    let outcome = run(config)?;
    let json = to_json(&outcome.report)?;
    let json_to_stdout = config.json.as_deref() == Some(Path::new("-"));
    if let Some(path) = &config.json {
        if json_to_stdout {
            print!("{json}");
        } else {
            fs::write(path, &json).with_context(|| format!("writing {}", path.display()))?;
        }
    }
    if let (Some(path), Some(scene)) = (&config.svg, &outcome.scene) {
        if path.as_os_str() == "-" {
            print!("{}", scene.to_svg());
        } else {
            emit_svg(scene, path).with_context(|| format!("writing {}", path.display()))?;
        }
    }
    let text = summary(&outcome.report);
    if json_to_stdout {
        eprint!("{text}");
    } else {
        print!("{text}");
    }
    let pass = outcome.report.pass() && outcome.report.checks().iter().all(|c| c.pass);
    Ok(if pass { EXIT_PASS } else { EXIT_CHECKS_FAILED })
}

/// Entry point shared by the binary and the tests.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_PASS };
            let _ = e.print();
            return code;
        }
    };
    match RunConfig::from_cli(cli).and_then(|c| execute(&c)) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            EXIT_ERROR
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(args: &[&str]) -> Result<RunConfig> {
        let mut full = vec!["alcove"];
        full.extend_from_slice(args);
        RunConfig::from_cli(Cli::try_parse_from(full)?)
    }

    #[test]
    fn config_rows() {
        let c = parse_config("# defaults\nn = 7\nclassify=true\nn-gon=3\n").unwrap();
        assert_eq!(c["n"], "7");
        assert_eq!(c["n_gon"], "3");
        assert!(parse_config("oops").is_err());
    }

    #[test]
    fn harmonic_defaults() {
        let c = config(&["harmonic", "--n", "9"]).unwrap();
        assert_eq!(c.task, Task::Harmonic { n: 9, tol: 1e-9, classify: false });
        assert_eq!(c.precision_bits, 53);
    }

    #[test]
    fn degenerate_needs_one_line_source() {
        assert!(config(&["degenerate"]).is_err());
        let c = config(&["degenerate", "--n-gon", "3", "--s", "1e-2,1e-3"]).unwrap();
        match c.task {
            Task::Degenerate { lines, s, seed, .. } => {
                assert_eq!(lines, LineSource::NGon(3));
                assert_eq!(s, vec![1e-2, 1e-3]);
                assert_eq!(seed, 0);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn missing_paths_are_rejected_up_front() {
        assert!(config(&["arrange", "--input", "/nonexistent/x.lines"]).is_err());
        assert!(config(&["harmonic", "--n", "5", "--json", "/nonexistent/dir/r.json"]).is_err());
    }

    #[test]
    fn precision_beyond_double_is_refused() {
        assert!(config(&["harmonic", "--n", "5", "--precision-bits", "64"]).is_err());
        let c = config(&["harmonic", "--n", "5", "--precision-bits", "24"]).unwrap();
        match c.task {
            Task::Harmonic { tol, .. } => assert!((tol - 10.0 * 2f64.powi(-24) * 5.0).abs() < 1e-18),
            other => panic!("{other:?}"),
        }
    }
}
