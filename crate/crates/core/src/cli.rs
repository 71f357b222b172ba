//! Command-line front end. `run` parses argv, dispatches, and writes JSON or
//! CSV to the data stream; diagnostics go to the error stream only.
//!
//! Exit status: 0 success, 2 usage error, 3 domain error, 4 when a theorem
//! check contradicts the encoded claim.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Once;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::baselines::{
    classify_monotone_aging, make_baseline, AgingNotion, BaselineDistribution, Family, Functional,
    Probe,
};
use crate::error::Error;
use crate::majorization::{
    chamber_of, compare_vectors, Chamber, MajorizationMode, MajorizationVerdict,
};
use crate::mixture::{build_mixture, ComponentGroup, MixtureModel};
use crate::monotone::{MonotoneVerdict, Slack};
use crate::orders::{check_order, probe_relation, Distribution, GridConfig, Relation};
use crate::theorems::{
    check_conclusion, check_hypotheses, reproduce_counterexample, sweep, verify, ChamberPick,
    Consistency, CounterexampleId, HypothesisResult, SamplerBounds, Scenario, TheoremId,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_CONTRADICTION: i32 = 4;

/// Significant digits in every emitted number.
const DIGITS: usize = 12;

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Domain(#[from] Error),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Domain(Error::Usage(_)) => EXIT_USAGE,
            CliError::Domain(_) => EXIT_DOMAIN,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Parser, Debug)]
#[command(
    name = "mixorder",
    version,
    about = "Stochastic orders for two-group location-scale mixtures"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct Common {
    /// Input JSON: a file path or an inline document.
    #[arg(long = "in", global = true, value_name = "FILE|JSON")]
    input: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the data stream to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true)]
    grid_points: Option<usize>,
    #[arg(long, global = true)]
    p_lo: Option<f64>,
    #[arg(long, global = true)]
    p_hi: Option<f64>,
    /// Absolute and relative tie tolerance.
    #[arg(long, global = true)]
    eps: Option<f64>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    count: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a baseline functional at one or more points.
    Eval {
        #[arg(long)]
        family: Option<String>,
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        params: Vec<f64>,
        #[arg(long)]
        functional: String,
        #[arg(
            long,
            value_delimiter = ',',
            allow_negative_numbers = true,
            required = true
        )]
        at: Vec<f64>,
    },
    /// Summarize a mixture model, evaluate it, or emit its curve as CSV.
    Mixture {
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        at: Vec<f64>,
        #[arg(long, value_delimiter = ',')]
        quantile: Vec<f64>,
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        integrated_sf: Vec<f64>,
        #[arg(long, value_delimiter = ',')]
        lorenz: Vec<f64>,
        /// Mass tolerance for the properness probe.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Decide a stochastic order between A and B.
    Order {
        #[arg(long)]
        relation: String,
        /// Model or baseline JSON for A (file path or inline).
        #[arg(long)]
        a: Option<String>,
        #[arg(long)]
        b: Option<String>,
    },
    /// Check (weak) majorization between two vectors.
    Majorize {
        #[arg(long)]
        mode: Option<String>,
        #[arg(long)]
        u: Option<String>,
        #[arg(long)]
        v: Option<String>,
    },
    /// Classify baseline aging notions on a probe interval.
    Aging {
        #[arg(long)]
        family: Option<String>,
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        params: Vec<f64>,
        /// Notions to check; all six when omitted.
        #[arg(long, value_delimiter = ',')]
        notion: Vec<String>,
        #[arg(long)]
        lo: Option<f64>,
        #[arg(long)]
        hi: Option<f64>,
        #[arg(long)]
        points: Option<usize>,
    },
    /// Audit one encoded result on a scenario.
    Theorem {
        #[command(subcommand)]
        action: TheoremAction,
    },
    /// Random hypothesis-respecting audit of one result.
    Sweep {
        #[arg(long)]
        id: String,
        #[arg(long)]
        chamber: Option<String>,
    },
    /// Reproduce a built-in counterexample.
    Counterexample {
        #[arg(long)]
        id: String,
    },
}

#[derive(Subcommand, Debug)]
enum TheoremAction {
    Verify {
        #[arg(long)]
        id: String,
    },
    Hypotheses {
        #[arg(long)]
        id: String,
    },
    Conclusion {
        #[arg(long)]
        id: String,
    },
}

#[derive(Deserialize)]
struct RawBaseline {
    family: String,
    #[serde(default)]
    params: Vec<f64>,
}

impl RawBaseline {
    fn build(self) -> CliResult<BaselineDistribution> {
        let family: Family = self.family.parse()?;
        Ok(make_baseline(family, &self.params)?)
    }
}

#[derive(Deserialize)]
struct RawModel {
    baseline: RawBaseline,
    groups: [ComponentGroup; 2],
}

impl RawModel {
    fn build(self) -> CliResult<MixtureModel> {
        Ok(build_mixture(self.baseline.build()?, self.groups)?)
    }
}

#[derive(Deserialize)]
struct RawScenario {
    baseline: RawBaseline,
    u_groups: [ComponentGroup; 2],
    v_groups: [ComponentGroup; 2],
    #[serde(default)]
    shared_weights: bool,
}

#[derive(Deserialize)]
struct RawVectors {
    u: Vec<f64>,
    v: Vec<f64>,
    #[serde(default)]
    mode: Option<String>,
}

#[derive(Deserialize)]
struct RawPair {
    a: Value,
    b: Value,
}

enum Side {
    Baseline(BaselineDistribution),
    Model(MixtureModel),
}

impl Side {
    fn from_value(v: Value) -> CliResult<Self> {
        if v.get("groups").is_some() {
            Ok(Side::Model(parse_value::<RawModel>(v, "model")?.build()?))
        } else {
            Ok(Side::Baseline(
                parse_value::<RawBaseline>(v, "baseline")?.build()?,
            ))
        }
    }

    fn as_dist(&self) -> &dyn Distribution {
        match self {
            Side::Baseline(b) => b,
            Side::Model(m) => m,
        }
    }
}

enum Payload {
    Json(Value),
    Csv(Vec<Vec<String>>),
}

struct Output {
    payload: Payload,
    code: i32,
}

impl Output {
    fn ok(payload: Payload) -> Self {
        Self {
            payload,
            code: EXIT_OK,
        }
    }
}

/// Parses `args` (without the program name), executes, and returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let argv = std::iter::once(OsString::from("mixorder")).chain(args.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind::*;
            if matches!(
                e.kind(),
                DisplayHelp | DisplayVersion | DisplayHelpOnMissingArgumentOrSubcommand
            ) {
                let _ = write!(out, "{e}");
                return if e.kind() == DisplayHelpOnMissingArgumentOrSubcommand {
                    EXIT_USAGE
                } else {
                    EXIT_OK
                };
            }
            let _ = write!(err, "{}", e.render());
            return EXIT_USAGE;
        }
    };
    if let Err(e) = configure_threads() {
        let _ = writeln!(err, "mixorder: {e}");
        return e.code();
    }
    let result = execute(&cli).and_then(|o| {
        let text = render(o.payload)?;
        emit(&text, cli.common.out.as_deref(), out)?;
        Ok(o.code)
    });
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "mixorder: {e}");
            e.code()
        }
    }
}

fn configure_threads() -> CliResult<()> {
    static INIT: Once = Once::new();
    let threads = match std::env::var("MIXORDER_THREADS") {
        Ok(v) => v.trim().parse::<usize>().map_err(|_| {
            CliError::Usage(format!(
                "MIXORDER_THREADS must be a nonnegative integer, got `{v}`"
            ))
        })?,
        Err(_) => return Ok(()),
    };
    INIT.call_once(|| {
        // a pool may already exist in embedding programs; keep it then
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    });
    Ok(())
}

fn emit(text: &str, path: Option<&Path>, out: &mut dyn Write) -> CliResult<()> {
    match path {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| CliError::Usage(format!("cannot write `{}`: {e}", p.display()))),
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Usage(format!("cannot write output: {e}"))),
    }
}

fn execute(cli: &Cli) -> CliResult<Output> {
    let c = &cli.common;
    match &cli.command {
        Command::Eval {
            family,
            params,
            functional,
            at,
        } => cmd_eval(c, family.as_deref(), params, functional, at),
        Command::Mixture {
            at,
            quantile,
            integrated_sf,
            lorenz,
            tol,
        } => cmd_mixture(c, at, quantile, integrated_sf, lorenz, *tol),
        Command::Order { relation, a, b } => cmd_order(c, relation, a.as_deref(), b.as_deref()),
        Command::Majorize { mode, u, v } => {
            cmd_majorize(c, mode.as_deref(), u.as_deref(), v.as_deref())
        }
        Command::Aging {
            family,
            params,
            notion,
            lo,
            hi,
            points,
        } => cmd_aging(c, family.as_deref(), params, notion, (*lo, *hi), *points),
        Command::Theorem { action } => cmd_theorem(c, action),
        Command::Sweep { id, chamber } => cmd_sweep(c, id, chamber.as_deref()),
        Command::Counterexample { id } => cmd_counterexample(c, id),
    }
}

fn grid(c: &Common) -> CliResult<GridConfig> {
    let mut cfg = GridConfig::default();
    if let Some(n) = c.grid_points {
        cfg.n_points = n;
    }
    if let Some(p) = c.p_lo {
        cfg.p_lo = p;
    }
    if let Some(p) = c.p_hi {
        cfg.p_hi = p;
    }
    if let Some(e) = c.eps {
        cfg.eps_abs = e;
        cfg.eps_rel = e;
    }
    cfg.validate()?;
    Ok(cfg)
}

/// Reads `spec` as a file when it names one, otherwise as inline JSON.
fn load(spec: &str) -> CliResult<String> {
    let path = Path::new(spec);
    if path.is_file() {
        return std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read `{spec}`: {e}")));
    }
    let trimmed = spec.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        Ok(spec.to_string())
    } else {
        Err(CliError::Usage(format!(
            "`{spec}` is neither a readable file nor inline JSON"
        )))
    }
}

fn parse<T: serde::de::DeserializeOwned>(spec: &str, what: &str) -> CliResult<T> {
    let text = load(spec)?;
    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("malformed {what} JSON: {e}")))
}

fn parse_value<T: serde::de::DeserializeOwned>(v: Value, what: &str) -> CliResult<T> {
    serde_json::from_value(v).map_err(|e| CliError::Usage(format!("malformed {what} JSON: {e}")))
}

fn required_input<'a>(c: &'a Common, what: &str) -> CliResult<&'a str> {
    c.input
        .as_deref()
        .ok_or_else(|| CliError::Usage(format!("--in with {what} JSON is required")))
}

fn baseline_arg(
    c: &Common,
    family: Option<&str>,
    params: &[f64],
) -> CliResult<BaselineDistribution> {
    match (family, c.input.as_deref()) {
        (Some(f), None) => Ok(make_baseline(f.parse()?, params)?),
        (None, Some(spec)) => parse::<RawBaseline>(spec, "baseline")?.build(),
        (Some(_), Some(_)) => Err(CliError::Usage(
            "give either --family or --in, not both".into(),
        )),
        (None, None) => Err(CliError::Usage(
            "a baseline is required: --family NAME [--params ...] or --in".into(),
        )),
    }
}

fn csv_only_rows(
    c: &Common,
    rows: impl FnOnce() -> CliResult<Vec<Vec<String>>>,
    json: impl FnOnce() -> CliResult<Value>,
) -> CliResult<Output> {
    Ok(Output::ok(match c.format {
        Format::Json => Payload::Json(json()?),
        Format::Csv => Payload::Csv(rows()?),
    }))
}

fn header(cols: &[&str]) -> Vec<String> {
    cols.iter().map(|s| s.to_string()).collect()
}

fn to_json<T: Serialize>(v: &T) -> CliResult<Value> {
    serde_json::to_value(v).map_err(|e| CliError::Usage(format!("cannot serialize output: {e}")))
}

fn cmd_eval(
    c: &Common,
    family: Option<&str>,
    params: &[f64],
    functional: &str,
    at: &[f64],
) -> CliResult<Output> {
    let b = baseline_arg(c, family, params)?;
    let functional: Functional = functional.parse()?;
    let values = at
        .iter()
        .map(|&x| Ok((x, b.eval(functional, x)?)))
        .collect::<CliResult<Vec<_>>>()?;
    csv_only_rows(
        c,
        || {
            let mut rows = vec![header(&["point", "value"])];
            rows.extend(values.iter().map(|&(x, v)| vec![num(x), num(v)]));
            Ok(rows)
        },
        || {
            let results: Vec<Value> = values
                .iter()
                .map(|&(x, v)| json!({"point": x, "value": v}))
                .collect();
            Ok(
                json!({"baseline": to_json(&b)?, "functional": to_json(&functional)?, "results": results}),
            )
        },
    )
}

#[derive(Serialize)]
struct CurvePoint {
    x: f64,
    pdf: f64,
    cdf: f64,
    sf: f64,
    hazard: Option<f64>,
    reversed_hazard: Option<f64>,
}

fn curve_point(m: &MixtureModel, x: f64) -> CurvePoint {
    CurvePoint {
        x,
        pdf: m.pdf(x),
        cdf: m.cdf(x),
        sf: m.sf(x),
        hazard: m.hazard(x).ok(),
        reversed_hazard: m.reversed_hazard(x).ok(),
    }
}

const CURVE_HEADER: [&str; 6] = ["x", "pdf", "cdf", "sf", "hazard", "reversed_hazard"];

fn curve_rows(points: &[CurvePoint]) -> Vec<Vec<String>> {
    let opt = |v: Option<f64>| v.map(num).unwrap_or_default();
    let mut rows = vec![header(&CURVE_HEADER)];
    rows.extend(points.iter().map(|p| {
        vec![
            num(p.x),
            num(p.pdf),
            num(p.cdf),
            num(p.sf),
            opt(p.hazard),
            opt(p.reversed_hazard),
        ]
    }));
    rows
}

/// Curve on the model's quantile grid.
fn quantile_curve(m: &MixtureModel, cfg: &GridConfig) -> CliResult<Vec<CurvePoint>> {
    let mut xs = cfg
        .p_grid()
        .into_iter()
        .map(|p| m.quantile(p))
        .collect::<Result<Vec<_>, _>>()?;
    xs.dedup();
    Ok(xs.into_iter().map(|x| curve_point(m, x)).collect())
}

fn cmd_mixture(
    c: &Common,
    at: &[f64],
    quantiles: &[f64],
    integrated: &[f64],
    lorenz: &[f64],
    tol: Option<f64>,
) -> CliResult<Output> {
    let m = parse::<RawModel>(required_input(c, "model")?, "model")?.build()?;
    let cfg = grid(c)?;
    if c.format == Format::Csv {
        let points = if at.is_empty() {
            quantile_curve(&m, &cfg)?
        } else {
            at.iter().map(|&x| curve_point(&m, x)).collect()
        };
        return Ok(Output::ok(Payload::Csv(curve_rows(&points))));
    }
    let properness = match tol {
        Some(t) if t > 0.0 => m.validate_properness(t),
        Some(t) => return Err(CliError::Usage(format!("--tol must be positive, got {t}"))),
        None => m.mass_check().clone(),
    };
    let mut doc = json!({
        "model": to_json(&m)?,
        "support_lo": m.support_lo(),
        "support_hi": m.support_hi(),
        "properness": to_json(&properness)?,
    });
    let obj = doc.as_object_mut().expect("object literal");
    if m.is_proper() {
        obj.insert("mean".into(), json!(m.mean()?));
    }
    if !at.is_empty() {
        let points: Vec<CurvePoint> = at.iter().map(|&x| curve_point(&m, x)).collect();
        obj.insert("evaluations".into(), to_json(&points)?);
    }
    if !quantiles.is_empty() {
        let rows = quantiles
            .iter()
            .map(|&p| Ok(json!({"p": p, "x": m.quantile(p)?})))
            .collect::<CliResult<Vec<_>>>()?;
        obj.insert("quantiles".into(), Value::Array(rows));
    }
    if !integrated.is_empty() {
        let rows = integrated
            .iter()
            .map(|&x| Ok(json!({"x": x, "value": m.integrated_sf(x)?})))
            .collect::<CliResult<Vec<_>>>()?;
        obj.insert("integrated_sf".into(), Value::Array(rows));
    }
    if !lorenz.is_empty() {
        let rows = lorenz
            .iter()
            .map(|&t| Ok(json!({"t": t, "value": m.upper_lorenz(t)?})))
            .collect::<CliResult<Vec<_>>>()?;
        obj.insert("lorenz".into(), Value::Array(rows));
    }
    Ok(Output::ok(Payload::Json(doc)))
}

fn cmd_order(c: &Common, relation: &str, a: Option<&str>, b: Option<&str>) -> CliResult<Output> {
    let relation: Relation = relation.parse()?;
    let (a, b) = match (a, b, c.input.as_deref()) {
        (Some(a), Some(b), None) => (parse::<Value>(a, "A")?, parse::<Value>(b, "B")?),
        (None, None, Some(spec)) => {
            let pair: RawPair = parse(spec, "order input")?;
            (pair.a, pair.b)
        }
        _ => {
            return Err(CliError::Usage(
                "give --a and --b, or --in with {\"a\": ..., \"b\": ...}".into(),
            ))
        }
    };
    let (a, b) = (Side::from_value(a)?, Side::from_value(b)?);
    let cfg = grid(c)?;
    if c.format == Format::Csv {
        let points = probe_relation(a.as_dist(), b.as_dist(), relation, &cfg)?;
        let mut rows = vec![header(&["x", "lhs", "rhs"])];
        rows.extend(
            points
                .iter()
                .map(|p| vec![num(p.x), num(p.lhs), num(p.rhs)]),
        );
        return Ok(Output::ok(Payload::Csv(rows)));
    }
    let verdict = check_order(a.as_dist(), b.as_dist(), relation, &cfg)?;
    Ok(Output::ok(Payload::Json(to_json(&verdict)?)))
}

#[derive(Serialize)]
struct MajorizeReport {
    #[serde(flatten)]
    verdict: MajorizationVerdict,
    chamber_u: Chamber,
    chamber_v: Chamber,
}

fn vector_arg(spec: &str, name: &str) -> CliResult<Vec<f64>> {
    let text = spec.trim();
    if text.starts_with('[') || Path::new(text).is_file() {
        return parse(text, name);
    }
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| CliError::Usage(format!("--{name}: `{s}` is not a number")))
        })
        .collect()
}

fn cmd_majorize(
    c: &Common,
    mode: Option<&str>,
    u: Option<&str>,
    v: Option<&str>,
) -> CliResult<Output> {
    let (u, v, file_mode) = match (u, v, c.input.as_deref()) {
        (Some(u), Some(v), None) => (vector_arg(u, "u")?, vector_arg(v, "v")?, None),
        (None, None, Some(spec)) => {
            let raw: RawVectors = parse(spec, "vectors")?;
            (raw.u, raw.v, raw.mode)
        }
        _ => {
            return Err(CliError::Usage(
                "give --u and --v, or --in with {\"u\", \"v\"}".into(),
            ))
        }
    };
    let mode: MajorizationMode = mode
        .map(str::to_string)
        .or(file_mode)
        .ok_or_else(|| CliError::Usage("--mode (m, wsuper, wsub) is required".into()))?
        .parse()?;
    let report = MajorizeReport {
        chamber_u: chamber_of(&u),
        chamber_v: chamber_of(&v),
        verdict: compare_vectors(&u, &v, mode)?,
    };
    csv_only_rows(
        c,
        || {
            let mut rows = vec![header(&["j", "partial_u", "partial_v"])];
            let vd = &report.verdict;
            rows.extend(
                vd.partial_sums_u
                    .iter()
                    .zip(&vd.partial_sums_v)
                    .enumerate()
                    .map(|(j, (a, b))| vec![(j + 1).to_string(), num(*a), num(*b)]),
            );
            Ok(rows)
        },
        || to_json(&report),
    )
}

#[derive(Serialize)]
struct AgingResult {
    notion: AgingNotion,
    #[serde(flatten)]
    verdict: MonotoneVerdict,
}

fn cmd_aging(
    c: &Common,
    family: Option<&str>,
    params: &[f64],
    notions: &[String],
    (lo, hi): (Option<f64>, Option<f64>),
    points: Option<usize>,
) -> CliResult<Output> {
    let b = baseline_arg(c, family, params)?;
    let notions: Vec<AgingNotion> = if notions.is_empty() {
        vec![
            AgingNotion::FR,
            AgingNotion::RFR,
            AgingNotion::PFR,
            AgingNotion::PRFR,
            AgingNotion::PLR,
            AgingNotion::LR,
        ]
    } else {
        notions
            .iter()
            .map(|n| n.parse())
            .collect::<Result<_, _>>()?
    };
    let mut probe = match (lo, hi) {
        (Some(lo), Some(hi)) => Probe::new(lo, hi),
        (None, None) => {
            Probe::quantile_range(&b, c.p_lo.unwrap_or(1e-6), c.p_hi.unwrap_or(1.0 - 1e-6))?
        }
        _ => return Err(CliError::Usage("--lo and --hi go together".into())),
    };
    if let Some(n) = points {
        probe.points = n;
    }
    if let Some(e) = c.eps {
        probe.slack = Slack::new(e, e);
    }
    let results = notions
        .into_iter()
        .map(|notion| {
            Ok(AgingResult {
                notion,
                verdict: classify_monotone_aging(&b, notion, &probe)?,
            })
        })
        .collect::<CliResult<Vec<_>>>()?;
    csv_only_rows(
        c,
        || {
            let mut rows = vec![header(&[
                "notion",
                "classification",
                "witness_lo",
                "witness_hi",
            ])];
            for r in &results {
                let (a, z) = r
                    .verdict
                    .witness
                    .map(|(a, z)| (num(a), num(z)))
                    .unwrap_or_default();
                let class = to_json(&r.verdict.classification)?;
                rows.push(vec![
                    format!("{:?}", r.notion),
                    class.as_str().unwrap_or_default().to_string(),
                    a,
                    z,
                ]);
            }
            Ok(rows)
        },
        || {
            Ok(
                json!({"baseline": to_json(&b)?, "probe": to_json(&probe)?, "results": to_json(&results)?}),
            )
        },
    )
}

fn scenario_input(c: &Common) -> CliResult<Scenario> {
    let raw: RawScenario = parse(required_input(c, "scenario")?, "scenario")?;
    Ok(Scenario {
        baseline: raw.baseline.build()?,
        u_groups: raw.u_groups,
        v_groups: raw.v_groups,
        shared_weights: raw.shared_weights,
    })
}

fn hypothesis_rows(hs: &[HypothesisResult]) -> CliResult<Vec<Vec<String>>> {
    let mut rows = vec![header(&["name", "verdict", "role", "detail"])];
    for h in hs {
        let word = |v: Value| v.as_str().unwrap_or_default().to_string();
        rows.push(vec![
            h.name.clone(),
            word(to_json(&h.verdict)?),
            word(to_json(&h.role)?),
            h.detail.clone(),
        ]);
    }
    Ok(rows)
}

fn cmd_theorem(c: &Common, action: &TheoremAction) -> CliResult<Output> {
    let id = match action {
        TheoremAction::Verify { id }
        | TheoremAction::Hypotheses { id }
        | TheoremAction::Conclusion { id } => id,
    };
    let id: TheoremId = id.parse()?;
    let scenario = scenario_input(c)?;
    let cfg = grid(c)?;
    match action {
        TheoremAction::Verify { .. } => {
            let report = verify(id, &scenario, &cfg)?;
            let code = if report.consistent == Consistency::ContradictsPaper {
                EXIT_CONTRADICTION
            } else {
                EXIT_OK
            };
            let payload = match c.format {
                Format::Json => Payload::Json(to_json(&report)?),
                Format::Csv => Payload::Csv(hypothesis_rows(&report.hypothesis_results)?),
            };
            Ok(Output { payload, code })
        }
        TheoremAction::Hypotheses { .. } => {
            let hs = check_hypotheses(id, &scenario)?;
            csv_only_rows(c, || hypothesis_rows(&hs), || to_json(&hs))
        }
        TheoremAction::Conclusion { .. } => {
            if c.format == Format::Csv {
                let (u, v) = scenario.models()?;
                let points = probe_relation(&u, &v, id.relation(), &cfg)?;
                let mut rows = vec![header(&["x", "lhs", "rhs"])];
                rows.extend(
                    points
                        .iter()
                        .map(|p| vec![num(p.x), num(p.lhs), num(p.rhs)]),
                );
                return Ok(Output::ok(Payload::Csv(rows)));
            }
            Ok(Output::ok(Payload::Json(to_json(&check_conclusion(
                id, &scenario, &cfg,
            )?)?)))
        }
    }
}

fn cmd_sweep(c: &Common, id: &str, chamber: Option<&str>) -> CliResult<Output> {
    let id: TheoremId = id.parse()?;
    if c.format == Format::Csv {
        return Err(CliError::Usage("sweep output is JSON only".into()));
    }
    let mut bounds = match c.input.as_deref() {
        Some(spec) => parse::<SamplerBounds>(spec, "sampler bounds")?,
        None => SamplerBounds::default(),
    };
    if let Some(ch) = chamber {
        bounds.chamber = Some(ch.parse::<ChamberPick>()?);
    }
    let cfg = grid(c)?;
    let summary = sweep(
        id,
        &bounds,
        c.seed.unwrap_or(42),
        c.count.unwrap_or(200),
        &cfg,
    )?;
    let code = if summary.contradiction_scenarios.is_empty() {
        EXIT_OK
    } else {
        EXIT_CONTRADICTION
    };
    Ok(Output {
        payload: Payload::Json(to_json(&summary)?),
        code,
    })
}

fn cmd_counterexample(c: &Common, id: &str) -> CliResult<Output> {
    let id: CounterexampleId = id.parse()?;
    let report = reproduce_counterexample(id)?;
    if c.format == Format::Json {
        return Ok(Output::ok(Payload::Json(to_json(&report)?)));
    }
    if id == CounterexampleId::ImproperPdf {
        let m = build_mixture(report.scenario.baseline.clone(), report.scenario.u_groups)?;
        return Ok(Output::ok(Payload::Csv(curve_rows(&quantile_curve(
            &m,
            &grid(c)?,
        )?))));
    }
    let mut rows = vec![header(&["x", "F_U", "F_V"])];
    rows.extend(
        report
            .curve
            .iter()
            .map(|r| vec![num(r.x), num(r.f_u), num(r.f_v)]),
    );
    Ok(Output::ok(Payload::Csv(rows)))
}

fn render(payload: Payload) -> CliResult<String> {
    match payload {
        Payload::Json(v) => {
            let mut s = serde_json::to_string_pretty(&round_json(v))
                .map_err(|e| CliError::Usage(format!("cannot serialize output: {e}")))?;
            s.push('\n');
            Ok(s)
        }
        Payload::Csv(rows) => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for row in rows {
                w.write_record(&row)
                    .map_err(|e| CliError::Usage(format!("cannot write CSV: {e}")))?;
            }
            let bytes = w
                .into_inner()
                .map_err(|e| CliError::Usage(format!("cannot write CSV: {e}")))?;
            String::from_utf8(bytes).map_err(|e| CliError::Usage(format!("cannot write CSV: {e}")))
        }
    }
}

/// Rounds to [`DIGITS`] significant digits.
pub fn round_sig(v: f64) -> f64 {
    if !v.is_finite() || v == 0.0 {
        return v;
    }
    format!("{:.*e}", DIGITS - 1, v).parse().unwrap_or(v)
}

/// CSV number: plain decimal for moderate magnitudes, scientific otherwise.
pub fn num(v: f64) -> String {
    if v.is_nan() {
        return "NaN".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return "0".into();
    }
    let r = round_sig(v);
    if (1e-5..1e15).contains(&r.abs()) {
        format!("{r}")
    } else {
        format!("{:.*e}", DIGITS - 1, r)
    }
}

fn round_json(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => n
            .as_f64()
            .and_then(|x| serde_json::Number::from_f64(round_sig(x)))
            .map(Value::Number)
            .unwrap_or(Value::Null),
        Value::Array(a) => Value::Array(a.into_iter().map(round_json).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, round_json(v))).collect()),
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_formatting() {
        assert_eq!(num(0.1128116006341234), "0.112811600634");
        assert_eq!(num(1.0), "1");
        assert_eq!(num(2.5e-7), "2.50000000000e-7");
        assert_eq!(num(f64::NAN), "NaN");
        assert_eq!(round_sig(9.1741384308031234), 9.1741384308);
    }

    #[test]
    fn json_rounding_keeps_integers() {
        let v = round_json(json!({"n": 3, "x": [0.1234567890123456]}));
        assert_eq!(v, json!({"n": 3, "x": [0.123456789012]}));
    }
}
