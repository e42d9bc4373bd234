//! Commands behind the `anc` binary.
//!
//! Everything here is plain data in, bytes out: [`run`] takes a [`RunConfig`] and returns
//! the text for stdout and stderr together with the exit code, so the binary only parses
//! arguments and prints.

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::{
    evaluate_factored, sum_evaluate, FactoredTerm, GenericSampler, Rational, Symbol,
};
use crate::closed_forms::{
    grassmann_bundle_coefficient, projective_space_coefficient, GrassmannBundlePoint,
};
use crate::error::{Error, Result};
use crate::git::{
    enumerate_lifts, fano_index, validate, CheckStatus, DegreeLift, EffectiveCone, GitInput,
    GitPresentation, SignConvention, Weight, WeylAction,
};
use crate::ifunction::{
    assemble_coefficient, box_classes, homogeneity_degree, mirror_hypothesis_report, summand,
    CoefficientRequest, IFunctionSeries, MirrorStatus,
};
use crate::localization::{
    integrate, localize, pole_free_check, restrict, FixedPointChart, LocalizedClass,
};
use crate::targets::{
    build, charts_from_fixed_points, descriptor_for, index_label, Family, TargetSpec,
};

/// Exit code for a successful run.
pub const EXIT_OK: i32 = 0;
/// Exit code when a verified property fails, or for errors not covered below.
pub const EXIT_FAILURE: i32 = 1;
/// Exit code for unreadable or invalid input.
pub const EXIT_INPUT: i32 = 2;
/// Exit code when a degree class has infinitely many lifts.
pub const EXIT_UNBOUNDED: i32 = 3;

/// Default cap on the number of summands in one coefficient.
pub const DEFAULT_SIZE_LIMIT: usize = 200_000;

/// Draws per chart when comparing against closed forms.
const ORACLE_DRAWS: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Compute,
    Verify,
    FixedLocus,
    Integrate,
    Targets,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum OutputFormat {
    #[default]
    Json,
    Text,
    Latex,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "text" => Ok(OutputFormat::Text),
            "latex" => Ok(OutputFormat::Latex),
            _ => Err(Error::InvalidRequest(format!(
                "unknown output format `{s}`"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InputSource {
    /// A built-in name such as `p3`, `gr:2,4` or `gb:1,4,1,2`.
    Target(String),
    /// A JSON presentation file.
    File(PathBuf),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub input: Option<InputSource>,
    /// One bound per class coordinate; a single value applies to all of them. Empty means 1.
    pub degree_bound: Vec<i64>,
    pub seed: Option<u64>,
    pub format: OutputFormat,
    pub convention_flip: bool,
    /// Only `anticanonical` is understood.
    pub twist: Option<String>,
    pub equivariant: bool,
    pub lift: Option<Vec<i64>>,
    /// `one`, `euler`, `char:ξ` or `char:ξ^p`, or `coeff:β`.
    pub integrand: Option<String>,
    pub size_limit: usize,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            input: None,
            degree_bound: Vec::new(),
            seed: None,
            format: OutputFormat::Json,
            convention_flip: false,
            twist: None,
            equivariant: true,
            lift: None,
            integrand: None,
            size_limit: DEFAULT_SIZE_LIMIT,
        }
    }

    pub fn target(command: Command, name: &str) -> Self {
        RunConfig {
            input: Some(InputSource::Target(name.to_string())),
            ..Self::new(command)
        }
    }

    fn convention(&self) -> SignConvention {
        if self.convention_flip {
            SignConvention::Flipped
        } else {
            SignConvention::Standard
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_)
        | Error::MalformedPresentation(_)
        | Error::InvalidFamilyParams(_)
        | Error::InvalidRequest(_)
        | Error::InvalidChart(_)
        | Error::NotFano(_)
        | Error::NonConvexTwist { .. } => EXIT_INPUT,
        Error::UnboundedFiber(_) => EXIT_UNBOUNDED,
        _ => EXIT_FAILURE,
    }
}

pub fn run(cfg: &RunConfig) -> Outcome {
    let result = match cfg.command {
        Command::Compute => cmd_compute(cfg),
        Command::Verify => cmd_verify(cfg),
        Command::FixedLocus => cmd_fixed_locus(cfg),
        Command::Integrate => cmd_integrate(cfg),
        Command::Targets => cmd_targets(cfg),
    };
    result.unwrap_or_else(|e| Outcome {
        stdout: String::new(),
        stderr: format!("error: {e}\n"),
        code: exit_code(&e),
    })
}

/// A presentation ready for the commands, from a built-in name or a file.
#[derive(Clone, Debug)]
pub struct Context {
    pub name: String,
    pub family: Option<Family>,
    pub presentation: GitPresentation,
    pub cone: EffectiveCone,
    pub charts: Vec<FixedPointChart>,
    pub fixed_points: Vec<Vec<usize>>,
    pub anticanonical: Option<Vec<i64>>,
}

impl Context {
    pub fn load(
        input: &InputSource,
        convention: SignConvention,
        twist: Option<&str>,
    ) -> Result<Context> {
        let anticanonical_twist = match twist {
            None => false,
            Some("anticanonical") => true,
            Some(other) => return Err(Error::InvalidRequest(format!("unknown twist `{other}`"))),
        };
        match input {
            InputSource::Target(name) => {
                let family: Family = name.parse()?;
                let spec = if anticanonical_twist {
                    TargetSpec::twisted(family.clone())
                } else {
                    TargetSpec::new(family.clone())
                };
                let t = build(&spec, convention)?;
                Ok(Context {
                    name: t.name(),
                    family: Some(family),
                    presentation: t.presentation,
                    cone: t.cone,
                    charts: t.charts,
                    fixed_points: t.fixed_points,
                    anticanonical: Some(t.anticanonical),
                })
            }
            InputSource::File(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
                let input = GitInput::parse(&text)?;
                Self::from_input(
                    &input,
                    convention,
                    anticanonical_twist,
                    &path.display().to_string(),
                )
            }
        }
    }

    pub fn from_input(
        input: &GitInput,
        convention: SignConvention,
        anticanonical_twist: bool,
        fallback_name: &str,
    ) -> Result<Context> {
        let mut presentation = input.presentation(convention)?;
        let cone = input.cone()?;
        if anticanonical_twist {
            let anti = input.anticanonical.as_ref().ok_or_else(|| {
                Error::InvalidRequest("the input has no anticanonical character".into())
            })?;
            if !presentation.twist().is_empty() {
                return Err(Error::InvalidRequest("the input is already twisted".into()));
            }
            if fano_index(anti, &cone.generators()?).is_none() {
                return Err(Error::NotFano(format!(
                    "anticanonical character {anti:?} is not positive on the effective cone"
                )));
            }
            let s_rank = presentation.s_rank();
            presentation =
                presentation.with_twist(vec![Weight::new(anti.clone(), vec![0; s_rank])])?;
        }
        let fixed_points = input.fixed_points.clone().unwrap_or_default();
        let labelled: Vec<(String, Vec<usize>)> = fixed_points
            .iter()
            .map(|f| (index_label(f), f.clone()))
            .collect();
        let charts = charts_from_fixed_points(&presentation, &labelled)?;
        Ok(Context {
            name: input
                .name
                .clone()
                .unwrap_or_else(|| fallback_name.to_string()),
            family: None,
            presentation,
            cone,
            charts,
            fixed_points,
            anticanonical: input.anticanonical.clone(),
        })
    }

    pub fn twisted(&self) -> bool {
        !self.presentation.twist().is_empty()
    }

    pub fn to_input(&self) -> GitInput {
        let mut input = GitInput::from_presentation(&self.presentation, &self.cone);
        input.name = Some(self.name.clone());
        if !self.fixed_points.is_empty() {
            input.fixed_points = Some(self.fixed_points.clone());
        }
        input.anticanonical = self.anticanonical.clone();
        input
    }

    fn bounds(&self, requested: &[i64]) -> Result<Vec<i64>> {
        let r = self.presentation.class_basis().len();
        let bounds = match requested {
            [] => vec![1; r],
            [b] => vec![*b; r],
            v if v.len() == r => v.to_vec(),
            v => {
                return Err(Error::InvalidRequest(format!(
                    "{} degree bounds given for {r} class coordinates",
                    v.len()
                )))
            }
        };
        if bounds.iter().any(|&b| b < 0) {
            return Err(Error::InvalidRequest(
                "degree bounds must be nonnegative".into(),
            ));
        }
        Ok(bounds)
    }

    fn equivariant(&self, wanted: bool) -> bool {
        wanted && self.presentation.s_rank() > 0
    }
}

fn convention_name(c: SignConvention) -> &'static str {
    match c {
        SignConvention::Standard => "standard",
        SignConvention::Flipped => "flipped",
    }
}

fn require_input(cfg: &RunConfig) -> Result<Context> {
    let input = cfg
        .input
        .as_ref()
        .ok_or_else(|| Error::InvalidRequest("a target name or input file is required".into()))?;
    Context::load(input, cfg.convention(), cfg.twist.as_deref())
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable output");
    s.push('\n');
    s
}

fn ok(stdout: String) -> Result<Outcome> {
    Ok(Outcome {
        stdout,
        stderr: String::new(),
        code: EXIT_OK,
    })
}

fn check_size(ctx: &Context, bounds: &[i64], limit: usize) -> Result<()> {
    for class in box_classes(bounds) {
        if enumerate_lifts(&ctx.presentation, &ctx.cone, &class)?.len() > limit {
            return Err(Error::SizeLimitExceeded(limit));
        }
    }
    Ok(())
}

/// JSON document written by `compute`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComputeOutput {
    pub target: String,
    pub convention: SignConvention,
    pub twisted: bool,
    pub equivariant: bool,
    pub series: IFunctionSeries,
}

pub fn cmd_compute(cfg: &RunConfig) -> Result<Outcome> {
    let ctx = require_input(cfg)?;
    let bounds = ctx.bounds(&cfg.degree_bound)?;
    check_size(&ctx, &bounds, cfg.size_limit)?;
    let equivariant = ctx.equivariant(cfg.equivariant);
    let series = IFunctionSeries::compute(
        &ctx.presentation,
        &ctx.cone,
        &bounds,
        ctx.twisted(),
        equivariant,
    )?;
    let out = match cfg.format {
        OutputFormat::Json => json(&ComputeOutput {
            target: ctx.name.clone(),
            convention: ctx.presentation.convention(),
            twisted: ctx.twisted(),
            equivariant,
            series,
        }),
        OutputFormat::Text => series.to_text(),
        OutputFormat::Latex => series.to_latex(),
    };
    ok(out)
}

/// A failing instance of a verified property.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub class: Vec<i64>,
    pub chart: Option<String>,
    pub lift: Option<DegreeLift>,
    /// Specialized parameters, as `(symbol, value)` pairs.
    pub values: Vec<(String, String)>,
    pub expected: String,
    pub found: String,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "class {:?}", self.class)?;
        if let Some(c) = &self.chart {
            write!(f, ", chart {c}")?;
        }
        if let Some(l) = &self.lift {
            write!(f, ", lift {l}")?;
        }
        if !self.values.is_empty() {
            let v: Vec<String> = self
                .values
                .iter()
                .map(|(s, x)| format!("{s}={x}"))
                .collect();
            write!(f, " at {}", v.join(", "))?;
        }
        write!(f, ": expected {}, found {}", self.expected, self.found)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyResult {
    pub name: String,
    pub status: CheckStatus,
    pub detail: String,
    pub counterexamples: Vec<Counterexample>,
}

impl PropertyResult {
    fn skipped(name: &str, detail: impl Into<String>) -> Self {
        PropertyResult {
            name: name.into(),
            status: CheckStatus::Skipped,
            detail: detail.into(),
            counterexamples: Vec::new(),
        }
    }

    fn from_counterexamples(
        name: &str,
        checked: usize,
        what: &str,
        counterexamples: Vec<Counterexample>,
    ) -> Self {
        let status = if counterexamples.is_empty() {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        };
        let detail = if counterexamples.is_empty() {
            format!("{checked} {what} checked")
        } else {
            format!("{} of {checked} {what} disagree", counterexamples.len())
        };
        PropertyResult {
            name: name.into(),
            status,
            detail,
            counterexamples,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub target: String,
    pub seed: u64,
    pub convention: SignConvention,
    pub bounds: Vec<i64>,
    pub properties: Vec<PropertyResult>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.properties
            .iter()
            .all(|p| p.status != CheckStatus::Fail)
    }

    pub fn property(&self, name: &str) -> Option<&PropertyResult> {
        self.properties.iter().find(|p| p.name == name)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "target: {}", self.target);
        let _ = writeln!(out, "seed: {}", self.seed);
        let _ = writeln!(out, "convention: {}", convention_name(self.convention));
        let _ = writeln!(out, "bounds: {:?}", self.bounds);
        for p in &self.properties {
            let tag = match p.status {
                CheckStatus::Pass => "PASS",
                CheckStatus::Fail => "FAIL",
                CheckStatus::Skipped => "SKIP",
            };
            let _ = writeln!(out, "[{tag}] {}: {}", p.name, p.detail);
            for c in &p.counterexamples {
                let _ = writeln!(out, "  {c}");
            }
        }
        out
    }
}

fn values_of(s: &crate::algebra::Specialization) -> Vec<(String, String)> {
    s.values()
        .iter()
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect()
}

fn verify_presentation(ctx: &Context) -> Result<PropertyResult> {
    let report = validate(&ctx.presentation, &ctx.cone, None)?;
    let structural: Vec<_> = report
        .checks
        .iter()
        .filter(|c| !matches!(c.name.as_str(), "fano index" | "det inequality"))
        .collect();
    let failed: Vec<String> = structural
        .iter()
        .filter(|c| c.status == CheckStatus::Fail)
        .map(|c| format!("{}: {}", c.name, c.detail))
        .collect();
    Ok(PropertyResult {
        name: "presentation".into(),
        status: if failed.is_empty() {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        },
        detail: if failed.is_empty() {
            format!("{} structural checks", structural.len())
        } else {
            failed.join("; ")
        },
        counterexamples: Vec::new(),
    })
}

fn nonzero_classes(bounds: &[i64]) -> Vec<Vec<i64>> {
    box_classes(bounds)
        .into_iter()
        .filter(|c| c.iter().any(|&x| x != 0))
        .collect()
}

fn verify_weyl(ctx: &Context, bounds: &[i64], equivariant: bool) -> Result<PropertyResult> {
    let p = &ctx.presentation;
    let chern = p.chern_symbols().to_vec();
    let mut checked = 0;
    let mut bad = Vec::new();
    for class in box_classes(bounds) {
        let req = CoefficientRequest::new(class.clone(), ctx.twisted(), equivariant);
        for lift in enumerate_lifts(p, &ctx.cone, &class)? {
            let base = summand(p, &lift, &req)?;
            for w in p.weyl().generators() {
                let image = DegreeLift(WeylAction::act_on_lift(w, &lift.0));
                if !ctx.cone.contains(&image.0) {
                    continue;
                }
                checked += 1;
                let expected = base.act(w, &chern);
                let found = summand(p, &image, &req)?;
                if expected != found {
                    bad.push(Counterexample {
                        class: class.clone(),
                        chart: None,
                        lift: Some(lift.clone()),
                        values: Vec::new(),
                        expected: expected.to_string(),
                        found: found.to_string(),
                    });
                }
            }
        }
    }
    Ok(PropertyResult::from_counterexamples(
        "weyl equivariance",
        checked,
        "generator images",
        bad,
    ))
}

fn verify_homogeneity(
    ctx: &Context,
    bounds: &[i64],
    equivariant: bool,
    sampler: &mut GenericSampler,
) -> Result<PropertyResult> {
    let p = &ctx.presentation;
    let two = Rational::from_int(2);
    let mut checked = 0;
    let mut bad = Vec::new();
    for class in box_classes(bounds) {
        let req = CoefficientRequest::new(class.clone(), ctx.twisted(), equivariant);
        for lift in enumerate_lifts(p, &ctx.cone, &class)? {
            let term = summand(p, &lift, &req)?;
            let d = homogeneity_degree(p, &lift, ctx.twisted());
            checked += 1;
            let symbols = term.symbols();
            let (s, (v, scaled)) = sampler.with_retries(&symbols, |s| {
                let v = evaluate_factored(&term, s)?;
                let scaled = evaluate_factored(&term, &s.scaled(&two))?.scale_variable(&two)?;
                Ok((v, scaled))
            })?;
            let expected = v.scale(&two.pow(d)?);
            if term.degree() != d || expected != scaled {
                bad.push(Counterexample {
                    class: class.clone(),
                    chart: None,
                    lift: Some(lift),
                    values: values_of(&s),
                    expected: format!("degree {d}, value {expected}"),
                    found: format!("degree {}, value {scaled}", term.degree()),
                });
            }
        }
    }
    Ok(PropertyResult::from_counterexamples(
        "homogeneity",
        checked,
        "summands",
        bad,
    ))
}

fn verify_poles(
    ctx: &Context,
    bounds: &[i64],
    equivariant: bool,
    sampler: &mut GenericSampler,
) -> Result<PropertyResult> {
    const NAME: &str = "pole cancellation";
    if ctx.charts.is_empty() {
        return Ok(PropertyResult::skipped(NAME, "no fixed-point charts"));
    }
    let mut checked = 0;
    let mut bad = Vec::new();
    for class in nonzero_classes(bounds) {
        let req = CoefficientRequest::new(class.clone(), ctx.twisted(), equivariant);
        let coeff = assemble_coefficient(&ctx.presentation, &ctx.cone, &req)?;
        for chart in &ctx.charts {
            checked += 1;
            let report = pole_free_check(&restrict(&coeff, chart)?, sampler, 2)?;
            if !report.is_pole_free() {
                bad.push(Counterexample {
                    class: class.clone(),
                    chart: Some(chart.label.clone()),
                    lift: None,
                    values: Vec::new(),
                    expected: "no pole".into(),
                    found: format!("poles along {}", report.poles.join(", ")),
                });
            }
        }
    }
    Ok(PropertyResult::from_counterexamples(
        NAME,
        checked,
        "chart restrictions",
        bad,
    ))
}

fn chart_symbols(chart: &FixedPointChart, terms: &[FactoredTerm]) -> BTreeSet<Symbol> {
    let mut s = chart.lambda_symbols();
    s.extend(terms.iter().flat_map(FactoredTerm::symbols));
    s
}

fn verify_projective(
    ctx: &Context,
    n: usize,
    bounds: &[i64],
    equivariant: bool,
    sampler: &mut GenericSampler,
) -> Result<PropertyResult> {
    let lambdas: Vec<Symbol> = (0..=n).map(|a| Symbol::lambda(0, a as u32)).collect();
    let mut checked = 0;
    let mut bad = Vec::new();
    for class in box_classes(bounds) {
        let d = class[0];
        let req = CoefficientRequest::new(class.clone(), false, equivariant);
        let coeff = assemble_coefficient(&ctx.presentation, &ctx.cone, &req)?;
        for (chart, fp) in ctx.charts.iter().zip(&ctx.fixed_points) {
            let a = fp[0];
            let terms = restrict(&coeff, chart)?;
            let symbols: BTreeSet<Symbol> = chart_symbols(chart, &terms)
                .into_iter()
                .chain(lambdas.clone())
                .collect();
            for _ in 0..ORACLE_DRAWS {
                checked += 1;
                let (s, (found, expected)) = sampler.with_retries(&symbols, |s| {
                    let lv: Vec<Rational> = lambdas
                        .iter()
                        .map(|l| s.get(l).cloned().unwrap_or_default())
                        .collect();
                    let h = -lv[a].clone();
                    let expected =
                        projective_space_coefficient(n + 1, d, &h, equivariant.then_some(&lv[..]))?;
                    Ok((sum_evaluate(&terms, s)?, expected))
                })?;
                if found != expected {
                    bad.push(Counterexample {
                        class: class.clone(),
                        chart: Some(chart.label.clone()),
                        lift: None,
                        values: values_of(&s),
                        expected: expected.to_string(),
                        found: found.to_string(),
                    });
                    break;
                }
            }
        }
    }
    Ok(PropertyResult::from_counterexamples(
        "abelian reduction",
        checked,
        "chart evaluations",
        bad,
    ))
}

/// The fixed point of a Grassmann bundle chart, read off its nonvanishing weights.
pub fn grassmann_bundle_point(
    (k, n, _l, m): (usize, usize, usize, usize),
    fixed_point: &[usize],
    lambda1: Vec<Rational>,
    lambda2: Vec<Rational>,
) -> GrassmannBundlePoint {
    GrassmannBundlePoint {
        i_set: fixed_point[..k]
            .iter()
            .enumerate()
            .map(|(i, &w)| w - i * n)
            .collect(),
        j_set: fixed_point[k..]
            .iter()
            .map(|&w| (w - k * n) % (k * m))
            .collect(),
        lambda1,
        lambda2,
    }
}

fn verify_grassmann_bundle(
    ctx: &Context,
    dims: (usize, usize, usize, usize),
    bounds: &[i64],
    sampler: &mut GenericSampler,
) -> Result<PropertyResult> {
    let (_, n, _, m) = dims;
    let l1: Vec<Symbol> = (0..n).map(|a| Symbol::lambda(0, a as u32)).collect();
    let l2: Vec<Symbol> = (0..m).map(|b| Symbol::lambda(1, b as u32)).collect();
    let twisted = ctx.twisted();
    let mut checked = 0;
    let mut bad = Vec::new();
    for class in box_classes(bounds) {
        let req = CoefficientRequest::new(class.clone(), twisted, true);
        let coeff = assemble_coefficient(&ctx.presentation, &ctx.cone, &req)?;
        for (chart, fp) in ctx.charts.iter().zip(&ctx.fixed_points) {
            let terms = restrict(&coeff, chart)?;
            let symbols: BTreeSet<Symbol> = chart_symbols(chart, &terms)
                .into_iter()
                .chain(l1.clone())
                .chain(l2.clone())
                .collect();
            for _ in 0..ORACLE_DRAWS {
                checked += 1;
                let (s, (found, expected)) = sampler.with_retries(&symbols, |s| {
                    let get = |v: &[Symbol]| {
                        v.iter()
                            .map(|x| s.get(x).cloned().unwrap_or_default())
                            .collect()
                    };
                    let point = grassmann_bundle_point(dims, fp, get(&l1), get(&l2));
                    let expected =
                        grassmann_bundle_coefficient(dims, class[0], class[1], twisted, &point)?;
                    Ok((sum_evaluate(&terms, s)?, expected))
                })?;
                if found != expected {
                    bad.push(Counterexample {
                        class: class.clone(),
                        chart: Some(chart.label.clone()),
                        lift: None,
                        values: values_of(&s),
                        expected: expected.to_string(),
                        found: found.to_string(),
                    });
                    break;
                }
            }
        }
    }
    Ok(PropertyResult::from_counterexamples(
        "grassmann bundle closed form",
        checked,
        "chart evaluations",
        bad,
    ))
}

/// Runs every property suite that applies to the context.
pub fn verify_context(
    ctx: &Context,
    bounds: &[i64],
    equivariant: bool,
    seed: u64,
) -> Result<VerifyReport> {
    let mut sampler = GenericSampler::new(seed);
    let mut properties = vec![
        verify_presentation(ctx)?,
        verify_weyl(ctx, bounds, equivariant)?,
        verify_homogeneity(ctx, bounds, equivariant, &mut sampler)?,
        verify_poles(ctx, bounds, equivariant, &mut sampler)?,
    ];
    properties.push(match &ctx.family {
        Some(Family::ProjectiveSpace(n)) if !ctx.twisted() => {
            verify_projective(ctx, *n, bounds, equivariant, &mut sampler)?
        }
        _ => PropertyResult::skipped("abelian reduction", "needs an untwisted projective space"),
    });
    properties.push(match ctx.family.as_ref() {
        Some(&Family::GrassmannBundle { k, n, l, m }) if equivariant => {
            verify_grassmann_bundle(ctx, (k, n, l, m), bounds, &mut sampler)?
        }
        _ => PropertyResult::skipped(
            "grassmann bundle closed form",
            "needs an equivariant Grassmann bundle",
        ),
    });
    Ok(VerifyReport {
        target: ctx.name.clone(),
        seed,
        convention: ctx.presentation.convention(),
        bounds: bounds.to_vec(),
        properties,
    })
}

pub fn cmd_verify(cfg: &RunConfig) -> Result<Outcome> {
    let seed = cfg.seed.ok_or_else(|| {
        Error::InvalidRequest(
            "verify needs --seed (or ANC_SEED) so failures can be replayed".into(),
        )
    })?;
    let ctx = require_input(cfg)?;
    let bounds = ctx.bounds(&cfg.degree_bound)?;
    check_size(&ctx, &bounds, cfg.size_limit)?;
    let report = verify_context(&ctx, &bounds, ctx.equivariant(cfg.equivariant), seed)?;
    let stdout = match cfg.format {
        OutputFormat::Json => json(&report),
        _ => report.to_text(),
    };
    let code = if report.all_passed() {
        EXIT_OK
    } else {
        EXIT_FAILURE
    };
    let stderr = format!(
        "seed {seed}, convention {}\n",
        convention_name(report.convention)
    );
    Ok(Outcome {
        stdout,
        stderr,
        code,
    })
}

fn pattern_latex(pattern: &[Vec<bool>]) -> String {
    let rows: Vec<String> = pattern
        .iter()
        .map(|r| {
            r.iter()
                .map(|&s| if s { "*" } else { "0" })
                .collect::<Vec<_>>()
                .join(" & ")
        })
        .collect();
    format!(
        "\\begin{{pmatrix}}\n{}\n\\end{{pmatrix}}\n",
        rows.join(" \\\\\n")
    )
}

pub fn cmd_fixed_locus(cfg: &RunConfig) -> Result<Outcome> {
    let ctx = require_input(cfg)?;
    let lift = DegreeLift(
        cfg.lift
            .clone()
            .ok_or_else(|| Error::InvalidRequest("fixed-locus needs --lift".into()))?,
    );
    let d = descriptor_for(&ctx.presentation, &ctx.cone, ctx.family.as_ref(), &lift)?;
    let k = match ctx.family {
        Some(Family::GrassmannBundle { k, .. }) => Some(k),
        _ => None,
    };
    let out = match cfg.format {
        OutputFormat::Json => json(&d),
        OutputFormat::Text => d.to_text(k),
        OutputFormat::Latex => match &d.pattern {
            Some(p) => pattern_latex(p),
            None => {
                return Err(Error::InvalidRequest(
                    "LaTeX output needs a Grassmann bundle pattern".into(),
                ))
            }
        },
    };
    ok(out)
}

fn parse_ints(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<i64>()
                .map_err(|_| Error::InvalidRequest(format!("cannot read `{s}` as integers")))
        })
        .collect()
}

fn integrand_class(ctx: &Context, spec: &str, equivariant: bool) -> Result<LocalizedClass> {
    let p = &ctx.presentation;
    if spec == "one" {
        return Ok(LocalizedClass::one(&ctx.charts));
    }
    if spec == "euler" {
        return Ok(LocalizedClass::tangent_euler(&ctx.charts));
    }
    if let Some(rest) = spec.strip_prefix("char:") {
        let (xi, power) = match rest.split_once('^') {
            Some((a, b)) => (
                a,
                b.parse::<i64>()
                    .map_err(|_| Error::InvalidRequest(format!("bad power in `{spec}`")))?,
            ),
            None => (rest, 1),
        };
        let xi = parse_ints(xi)?;
        if xi.len() != p.rank() || power < 0 {
            return Err(Error::InvalidRequest(format!(
                "`{spec}` needs {} entries and a nonnegative power",
                p.rank()
            )));
        }
        let form = p.lift_character(&xi);
        let term = if form.is_zero() {
            if power == 0 {
                FactoredTerm::one()
            } else {
                FactoredTerm::zero()
            }
        } else {
            FactoredTerm::power(form, power)?
        };
        return LocalizedClass::from_chern_term(&ctx.charts, &term);
    }
    if let Some(rest) = spec.strip_prefix("coeff:") {
        let req = CoefficientRequest::new(parse_ints(rest)?, ctx.twisted(), equivariant);
        let coeff = assemble_coefficient(p, &ctx.cone, &req)?;
        return localize(&coeff, &ctx.charts);
    }
    Err(Error::InvalidRequest(format!("unknown integrand `{spec}`")))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegralOutput {
    pub target: String,
    pub integrand: String,
    pub seed: u64,
    pub value: String,
}

pub fn cmd_integrate(cfg: &RunConfig) -> Result<Outcome> {
    let ctx = require_input(cfg)?;
    if ctx.charts.is_empty() {
        return Err(Error::InvalidRequest(
            "integration needs fixed-point charts".into(),
        ));
    }
    let spec = cfg.integrand.clone().unwrap_or_else(|| "one".into());
    let seed = cfg.seed.unwrap_or(0);
    let cls = integrand_class(&ctx, &spec, ctx.equivariant(cfg.equivariant))?;
    let value = integrate(&cls, &ctx.charts, &mut GenericSampler::new(seed))?;
    let out = match cfg.format {
        OutputFormat::Json => json(&IntegralOutput {
            target: ctx.name.clone(),
            integrand: spec,
            seed,
            value: value.to_string(),
        }),
        OutputFormat::Text => format!("{value}\n"),
        OutputFormat::Latex => format!("{}\n", value.render("z")),
    };
    ok(out)
}

/// Built-in family name patterns with a short description.
pub const FAMILIES: &[(&str, &str)] = &[
    ("p{n}", "projective space of dimension n"),
    ("pp:n1,n2,...", "product of projective spaces"),
    ("gr:k,n", "Grassmannian of k-planes in n-space"),
    (
        "gb:k,n,l,m",
        "Grassmann bundle Gr(l, S^* (x) C^m) over Gr(k,n)",
    ),
];

pub fn cmd_targets(cfg: &RunConfig) -> Result<Outcome> {
    let Some(input) = &cfg.input else {
        let out = match cfg.format {
            OutputFormat::Json => json(
                &FAMILIES
                    .iter()
                    .map(|(n, d)| serde_json::json!({ "name": n, "description": d }))
                    .collect::<Vec<_>>(),
            ),
            _ => FAMILIES
                .iter()
                .map(|(n, d)| format!("{n:<14} {d}\n"))
                .collect(),
        };
        return ok(out);
    };
    let ctx = Context::load(input, cfg.convention(), cfg.twist.as_deref())?;
    let out = match cfg.format {
        OutputFormat::Json => ctx.to_input().to_json() + "\n",
        OutputFormat::Text => target_summary(&ctx),
        OutputFormat::Latex => {
            return Err(Error::InvalidRequest("targets has no LaTeX output".into()))
        }
    };
    ok(out)
}

fn target_summary(ctx: &Context) -> String {
    let p = &ctx.presentation;
    let mut out = String::new();
    let _ = writeln!(out, "target: {}", ctx.name);
    let _ = writeln!(out, "torus rank: {}", p.rank());
    let _ = writeln!(out, "weights of V: {}", p.weights().len());
    let _ = writeln!(out, "roots: {}", p.roots().len());
    let _ = writeln!(out, "dimension: {}", p.quotient_dimension());
    let _ = writeln!(out, "fixed points: {}", ctx.charts.len());
    let _ = writeln!(out, "twisted: {}", ctx.twisted());
    let report = mirror_hypothesis_report(p, &ctx.cone, ctx.anticanonical.as_deref());
    if let Some(i) = report.fano_index {
        let _ = writeln!(out, "fano index: {i}");
    }
    let status = match report.status {
        MirrorStatus::Satisfied => "satisfied",
        MirrorStatus::NotSatisfied => "not satisfied",
        MirrorStatus::Unknown => "unknown",
    };
    let _ = writeln!(
        out,
        "mirror hypotheses: {status} ({})",
        report.reasons.join("; ")
    );
    out
}
