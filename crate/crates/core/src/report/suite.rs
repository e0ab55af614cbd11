use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::{timed, RelationReport, Status};
use crate::error::Error;
use crate::frame::{
    build_q, build_t, check_isomorphism, check_polynomial_lie_axioms, check_t_against_printed, shape_check,
    sufficiency_reduction, verify_frame_relations, FrameKind, HeatOperatorFamily,
};
use crate::jet::{
    build_cole_hopf_derived, closure_check, diff_against_paper_tables, homomorphism_check, verify_jet_tables, DiffEntry,
    SignConvention,
};
use crate::operator::decompose;
use crate::poly::Genus;
use crate::sigma::{kernel_basis, residual};

pub const SCHEMA_VERSION: u32 = 1;

/// Seed of the sampled axiom checks; fixed so reports are reproducible.
const AXIOM_SEED: u64 = 0x5eed;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Frame,
    Ops,
    Commute,
    ColeHopf,
    Jets,
    Sigma,
}

impl Suite {
    /// The suites run by `--suite all`.
    pub const ALL: [Suite; 6] = [Suite::Frame, Suite::Ops, Suite::Commute, Suite::ColeHopf, Suite::Jets, Suite::Sigma];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Frame => "frame",
            Suite::Ops => "ops",
            Suite::Commute => "commute",
            Suite::ColeHopf => "cole-hopf",
            Suite::Jets => "jets",
            Suite::Sigma => "sigma",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s || (s == "solve-sigma" && *x == Suite::Sigma))
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Json,
    Latex,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "latex" => Ok(Format::Latex),
            _ => Err(Error::InvalidArgument(format!("unknown format {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteConfig {
    pub genera: Vec<u8>,
    pub suites: Vec<Suite>,
    pub convention: SignConvention,
    pub jet_order: usize,
    pub max_weight: i32,
    /// Operators imposed by the series solver, by label.
    pub sigma_ops: Vec<u8>,
    /// Random samples per sampled axiom check.
    pub samples: usize,
    pub strict: bool,
    pub timestamps: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            genera: vec![1, 2, 3],
            suites: Suite::ALL.to_vec(),
            convention: SignConvention::Plus,
            jet_order: 6,
            max_weight: 10,
            sigma_ops: vec![0, 2, 4],
            samples: 40,
            strict: false,
            timestamps: true,
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<(), Error> {
        for &g in &self.genera {
            if !(1..=3).contains(&g) {
                return Err(Error::UnsupportedGenus(g));
            }
        }
        if self.jet_order < 2 {
            return Err(Error::InvalidArgument("jet order must be at least 2".into()));
        }
        if self.max_weight < 0 {
            return Err(Error::InvalidArgument("max weight must be non-negative".into()));
        }
        if !self.sigma_ops.contains(&0) {
            return Err(Error::InvalidArgument("the solver's operator set must contain 0".into()));
        }
        Ok(())
    }
}

/// A named table of values shown alongside the checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Artifact {
    pub title: String,
    pub rows: Vec<ArtifactRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArtifactRow {
    pub key: String,
    pub value: String,
    #[serde(skip)]
    pub latex: String,
}

impl Artifact {
    fn new(title: impl Into<String>) -> Self {
        Artifact { title: title.into(), rows: Vec::new() }
    }

    fn push(&mut self, key: impl Into<String>, value: impl fmt::Display, latex: impl Into<String>) {
        self.rows.push(ArtifactRow { key: key.into(), value: value.to_string(), latex: latex.into() });
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteResult {
    pub schema: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<u64>,
    pub config: SuiteConfig,
    pub overall: bool,
    pub checks: Vec<super::CheckRecord>,
    pub artifacts: Vec<Artifact>,
    pub diffs: Vec<DiffEntry>,
}

impl SuiteResult {
    pub fn failures(&self) -> impl Iterator<Item = &super::CheckRecord> {
        let strict = self.config.strict;
        self.checks.iter().filter(move |c| c.status == Status::Fail && (strict || !c.informational))
    }
}

/// Runs the configured suites for every configured genus.
pub fn run(cfg: &SuiteConfig) -> Result<SuiteResult, Error> {
    cfg.validate()?;
    let mut report = RelationReport::new();
    let mut artifacts = Vec::new();
    let mut diffs = Vec::new();
    let mut suites = cfg.suites.clone();
    suites.sort();
    suites.dedup();
    for &g in &cfg.genera {
        let g = Genus::new(g)?;
        let fam = build_q(g)?;
        for &suite in &suites {
            match suite {
                Suite::Frame => frame_suite(g, &fam, cfg, &mut report, &mut artifacts),
                Suite::Ops => ops_suite(g, &fam, cfg, &mut report, &mut artifacts)?,
                Suite::Commute => commute_suite(g, &fam, &mut report, &mut artifacts),
                Suite::ColeHopf => diffs.extend(cole_hopf_suite(g, cfg, &mut report, &mut artifacts)?),
                Suite::Jets => jets_suite(g, cfg, &mut report)?,
                Suite::Sigma => sigma_suite(g, cfg, &mut report, &mut artifacts)?,
            }
        }
    }
    let mut checks = report.checks;
    if !cfg.timestamps {
        for c in &mut checks {
            c.duration_us = None;
        }
    }
    let overall = checks.iter().all(|c| c.status == Status::Pass || (c.informational && !cfg.strict));
    let timestamp = cfg
        .timestamps
        .then(|| std::time::SystemTime::now().duration_since(std::time::UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0));
    Ok(SuiteResult { schema: SCHEMA_VERSION, timestamp, config: cfg.clone(), overall, checks, artifacts, diffs })
}

fn frame_suite(g: Genus, fam: &HeatOperatorFamily, cfg: &SuiteConfig, report: &mut RelationReport, artifacts: &mut Vec<Artifact>) {
    let t = build_t(g);
    let mut art = Artifact::new(format!("frame matrix T, genus {g}"));
    art.push("T", "", t.to_latex());
    for (r, row) in t.rows().iter().enumerate() {
        for (c, p) in row.iter().enumerate() {
            art.push(format!("T[{},{}]", 2 * r + 2, 2 * c + 2), p, p.to_latex());
        }
    }
    artifacts.push(art);
    let mut art = Artifact::new(format!("vector fields L, genus {g}"));
    for (k, l) in fam.l.iter().enumerate() {
        art.push(format!("L{}", 2 * k), l, l.to_latex());
    }
    artifacts.push(art);
    report.extend(check_t_against_printed(g));
    report.extend(verify_frame_relations(fam, FrameKind::L));
    report.extend(check_polynomial_lie_axioms(fam, FrameKind::L, cfg.samples, AXIOM_SEED));
}

fn ops_suite(
    g: Genus,
    fam: &HeatOperatorFamily,
    cfg: &SuiteConfig,
    report: &mut RelationReport,
    artifacts: &mut Vec<Artifact>,
) -> Result<(), Error> {
    let mut art = Artifact::new(format!("heat operators, genus {g}"));
    for (k, (h, q)) in fam.h.iter().zip(&fam.q).enumerate() {
        art.push(format!("H{}", 2 * k), h, h.to_latex());
        art.push(format!("Q{}", 2 * k), q, q.to_latex());
    }
    artifacts.push(art);
    match shape_check(fam) {
        Ok(shape) => {
            let mut art = Artifact::new(format!("constant terms of H, genus {g}"));
            for c in &shape.constants {
                art.push(format!("c{}", c.label / 2), &c.constant, c.constant.clone());
            }
            artifacts.push(art);
            report.extend(shape.report);
        }
        Err(e) => report.boolean("ops", format!("g{g}/shape"), format!("heat operator shape, genus {g}"), false, e.to_string(), Default::default()),
    }
    report.extend(verify_frame_relations(fam, FrameKind::Q));
    report.extend(check_polynomial_lie_axioms(fam, FrameKind::Q, cfg.samples, AXIOM_SEED + 1));
    let (red, elapsed) = timed(|| sufficiency_reduction(fam));
    match red {
        Ok(red) => {
            let mut art = Artifact::new(format!("higher operators from Q0, Q2, Q4, genus {g}"));
            for s in &red.steps {
                art.push(format!("Q{}", s.target), &s.formula, s.formula.clone());
            }
            artifacts.push(art);
            for (k, r) in red.residuals(fam).iter().enumerate().skip(3) {
                report.residual(
                    "ops",
                    format!("g{g}/sufficiency/Q{}", 2 * k),
                    format!("bracket expression for Q{}, genus {g}", 2 * k),
                    r.to_string(),
                    elapsed,
                );
            }
        }
        Err(e) => report.boolean("ops", format!("g{g}/sufficiency"), "bracket expressions", false, e.to_string(), elapsed),
    }
    Ok(())
}

fn commute_suite(g: Genus, fam: &HeatOperatorFamily, report: &mut RelationReport, artifacts: &mut Vec<Artifact>) {
    let mut art = Artifact::new(format!("structure polynomials of the Q frame, genus {g}"));
    let n = fam.len();
    for i in 0..n {
        for j in i + 1..n {
            let br = fam.q[i].commutator(&fam.q[j]);
            match decompose(&br, &fam.q, g) {
                Ok(d) => {
                    let parts: Vec<String> = d
                        .coefficients
                        .iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(k, c)| format!("({c})*Q{}", 2 * k))
                        .collect();
                    let latex: Vec<String> = d
                        .coefficients
                        .iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(k, c)| format!("\\left({}\\right) Q_{{{}}}", c.to_latex(), 2 * k))
                        .collect();
                    let value = if parts.is_empty() { "0".to_string() } else { parts.join(" + ") };
                    let latex = if latex.is_empty() { "0".to_string() } else { latex.join(" + ") };
                    art.push(format!("[Q{},Q{}]", 2 * i, 2 * j), value, latex);
                }
                Err(e) => art.push(format!("[Q{},Q{}]", 2 * i, 2 * j), e, "?"),
            }
        }
    }
    artifacts.push(art);
    report.extend(check_isomorphism(fam));
}

fn cole_hopf_suite(g: Genus, cfg: &SuiteConfig, report: &mut RelationReport, artifacts: &mut Vec<Artifact>) -> Result<Vec<DiffEntry>, Error> {
    let sys = build_cole_hopf_derived(g, cfg.convention)?;
    let mut art = Artifact::new(format!("nonlinear system, genus {g}, convention {}", cfg.convention));
    for (k, d) in sys.frame().iter().enumerate() {
        let op = d.z_operator();
        art.push(format!("cL{} - L{}", 2 * k, 2 * k), &op, op.to_latex());
        for j in g.z_labels() {
            if let Some(w) = sys.source(2 * k as u8, j) {
                art.push(format!("w[{},{j}]", 2 * k), w, w.to_latex());
            }
        }
    }
    artifacts.push(art);
    let diff = diff_against_paper_tables(&sys);
    report.extend(diff.report);
    Ok(diff.entries)
}

fn jets_suite(g: Genus, cfg: &SuiteConfig, report: &mut RelationReport) -> Result<(), Error> {
    let sys = build_cole_hopf_derived(g, cfg.convention)?;
    report.extend(verify_jet_tables(&sys, cfg.jet_order));
    report.extend(closure_check(&sys, cfg.jet_order.saturating_sub(1).max(2)));
    report.extend(homomorphism_check(&sys, cfg.jet_order));
    Ok(())
}

fn sigma_suite(g: Genus, cfg: &SuiteConfig, report: &mut RelationReport, artifacts: &mut Vec<Artifact>) -> Result<(), Error> {
    let all: Vec<u8> = (0..2 * g.get()).map(|k| 2 * k).collect();
    let ops: Vec<u8> = cfg.sigma_ops.iter().copied().filter(|k| all.contains(k)).collect();
    let (basis, elapsed) = timed(|| kernel_basis(g, &ops, cfg.max_weight));
    let basis = match basis {
        Ok(b) => b,
        Err(Error::EmptyKernel) => {
            report.boolean("sigma", format!("g{g}/kernel"), "heat system solutions", false, "no solution at the lambda-free stratum", elapsed);
            return Ok(());
        }
        Err(e) => return Err(e),
    };
    let ops_name = ops.iter().map(|k| format!("Q{k}")).collect::<Vec<_>>().join(",");
    for s in &basis.strata {
        report.info(
            "sigma",
            format!("g{g}/kernel-dimension/w{}", s.lambda_weight),
            format!("solutions of {ops_name}, genus {g}"),
            true,
            format!("{} unknowns, dimension {}", s.unknowns, s.kernel),
        );
    }
    for (b, series) in basis.series.iter().enumerate() {
        let mut art = Artifact::new(format!("series solution {b}, genus {g}, up to lambda-weight {}", cfg.max_weight));
        for w in 0..=cfg.max_weight {
            let p = series.stratum(w);
            if !p.is_zero() {
                art.push(format!("w{w}"), &p, p.to_latex());
            }
        }
        artifacts.push(art);
        for k in 0..all.len() {
            let (r, elapsed) = timed(|| residual(series, k));
            report.residual(
                "sigma",
                format!("g{g}/series{b}/Q{}", 2 * k),
                format!("heat equation Q{}, genus {g}", 2 * k),
                r?.to_string(),
                elapsed,
            );
        }
    }
    if ops.len() < all.len() {
        let (full, elapsed) = timed(|| kernel_basis(g, &all, cfg.max_weight));
        let full = full?;
        report.boolean(
            "sigma",
            format!("g{g}/sufficiency/kernel"),
            format!("solutions of {ops_name} solve every Q, genus {g}"),
            full.series == basis.series,
            format!("dimension {} against {}", basis.series.len(), full.series.len()),
            elapsed,
        );
    }
    if let Some(first) = basis.series.first() {
        let lead = first.stratum(0);
        report.info("sigma", format!("g{g}/normalisation"), "lambda-free leading part", !lead.is_zero(), lead.to_string());
    }
    Ok(())
}
