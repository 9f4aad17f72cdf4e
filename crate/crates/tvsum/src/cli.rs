//! Command-line front end. [`run`] does everything except touching the real
//! stdout/stderr, so tests can drive it directly.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use num_traits::{One, Signed};
use serde_json::{json, Map, Value};
use tvsum_core::qalgebra::exact::ExactQ;
use tvsum_core::qalgebra::{
    sixj_bound, sixj_detail, sixj_infinity, tet, theta, LimitVariant, QContext, QError, TetLabels,
};
use tvsum_core::spine::{edge_classes, AbstractSpine};
use tvsum_core::statesum::{
    contribution, e_infinity, enumerate_with, tail_report, theorem_sum, Executor, SixjCache,
    StateSumError, SumCase, SumOptions,
};
use tvsum_core::surfaces::{invariants, Coloring, SurfaceError};
use tvsum_core::Real;

use crate::formats::{load_input, parse_coloring, FormatError, Input};
use crate::parallel::Parallel;
use crate::report::{error_record, Digits, Format, Report, Table};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;
pub const EXIT_CASE_MISMATCH: i32 = 4;
pub const EXIT_NOT_CONVERGED: i32 = 5;

/// Labels above this get no exact rational value in reports.
const EXACT_LABEL_LIMIT: u32 = 60;

#[derive(Parser, Debug)]
#[command(name = "tvsum", version, about = "Turaev-Viro state sums at a real parameter 0 < t < 1")]
pub struct Cli {
    /// Parameter t, as "p/q" or a decimal; both are read exactly.
    #[arg(long, global = true, default_value = "1/2")]
    pub t: String,
    /// Working precision in bits (at least 64).
    #[arg(long, global = true, env = "TVSUM_PRECISION", default_value_t = 128)]
    pub precision: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Worker threads; 0 picks one per core. Reports do not depend on it.
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Unitary 6j symbol with its universal bound.
    Sixj {
        /// a,b,e,c,d,f
        #[arg(long, value_delimiter = ',', required = true)]
        labels: Vec<u32>,
    },
    /// Theta coefficient of an admissible triple.
    Theta {
        /// a,b,c
        #[arg(long, value_delimiter = ',', required = true)]
        labels: Vec<u32>,
    },
    /// Tet coefficient with the bound it inherits from the 6j bound.
    Tet {
        /// a,b,e,c,d,f
        #[arg(long, value_delimiter = ',', required = true)]
        labels: Vec<u32>,
    },
    /// The three large-color limits of a 6j symbol.
    Limits {
        #[arg(long, value_delimiter = ',', required = true)]
        labels: Vec<u32>,
        #[arg(long, default_value_t = 1e-20)]
        tol: f64,
    },
    /// Dual spine structure and Euler characteristic.
    Spine {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Admissible colorings with max color at most N and their invariants.
    Enumerate {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        max_color: u32,
    },
    /// Full invariant record and contribution of one coloring.
    Analyze {
        #[arg(long = "in")]
        input: PathBuf,
        /// JSON array or comma list, indexed by face.
        #[arg(long)]
        coloring: String,
        #[arg(long, default_value_t = 1e-20)]
        tol: f64,
    },
    /// Renormalized partial sums against the limit series.
    Sum {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 40)]
        max_color: u32,
        /// Defaults to the case matching the spine's Euler characteristic.
        #[arg(long, value_parser = parse_case)]
        case: Option<SumCase>,
        #[arg(long, default_value_t = 1e-3)]
        tol: f64,
        #[arg(long, default_value_t = 60)]
        ceiling: u32,
    },
    /// Enumerated tail bound beyond max color N for k-peelable colorings.
    Tail {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        max_color: u32,
        #[arg(long, default_value_t = 0)]
        k: u32,
        #[arg(long, default_value_t = 60)]
        ceiling: u32,
    },
}

fn parse_case(s: &str) -> Result<SumCase, String> {
    SumCase::from_name(s).ok_or_else(|| format!("expected one of chi_negative, chi_zero, chi_one; got {s:?}"))
}

/// Result of one invocation: exit status and the two output streams.
#[derive(Clone, Debug, Default)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Algebra(QError),
    #[error(transparent)]
    Surface(SurfaceError),
    #[error(transparent)]
    StateSum(StateSumError),
}

impl From<QError> for CliError {
    fn from(e: QError) -> Self {
        match e {
            QError::InadmissibleTriple(..) | QError::InadmissibleLabels(_) => CliError::Input(e.to_string()),
            other => CliError::Algebra(other),
        }
    }
}

impl From<SurfaceError> for CliError {
    fn from(e: SurfaceError) -> Self {
        CliError::Surface(e)
    }
}

impl From<StateSumError> for CliError {
    fn from(e: StateSumError) -> Self {
        match e {
            StateSumError::Surface(s) => CliError::Surface(s),
            StateSumError::Algebra(q) => q.into(),
            other => CliError::StateSum(other),
        }
    }
}

impl CliError {
    fn kind(&self) -> (&'static str, i32) {
        match self {
            CliError::Usage(_) => ("usage", EXIT_USAGE),
            CliError::Format(_) | CliError::Input(_) | CliError::Surface(_) => ("input", EXIT_INPUT),
            CliError::StateSum(StateSumError::CaseMismatch { .. }) => ("case_mismatch", EXIT_CASE_MISMATCH),
            CliError::Algebra(QError::NonConvergence { .. }) => ("not_converged", EXIT_NOT_CONVERGED),
            CliError::Algebra(QError::InvalidParameter(_)) | CliError::StateSum(StateSumError::InvalidParameter(_)) => {
                ("usage", EXIT_USAGE)
            }
            CliError::Algebra(_) | CliError::StateSum(_) => ("computation", EXIT_FAILURE),
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let rendered = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome { code: EXIT_OK, stdout: rendered, stderr: String::new() }
                }
                _ => Outcome {
                    code: EXIT_USAGE,
                    stdout: error_record("usage", rendered.lines().next().unwrap_or("invalid arguments")),
                    stderr: rendered,
                },
            };
        }
    };
    run_cli(&cli)
}

pub fn run_cli(cli: &Cli) -> Outcome {
    match execute(cli) {
        Ok((report, code)) => Outcome { code, stdout: report.render(cli.format), stderr: String::new() },
        Err(e) => {
            let (kind, code) = e.kind();
            let msg = e.to_string();
            Outcome { code, stdout: error_record(kind, &msg), stderr: format!("error: {msg}\n") }
        }
    }
}

struct Env {
    ctx: QContext,
    digits: Digits,
    exec: Parallel,
    cache: SixjCache,
}

fn execute(cli: &Cli) -> Result<(Report, i32), CliError> {
    if cli.precision < 64 {
        return Err(CliError::Usage(format!("precision must be at least 64 bits, got {}", cli.precision)));
    }
    let ctx = QContext::parse(&cli.t, cli.precision).map_err(|e| CliError::Usage(e.to_string()))?;
    let exec = Parallel::new(cli.threads).map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
    let env = Env { digits: Digits::for_precision(cli.precision), ctx, exec, cache: SixjCache::new() };
    let (command, mut body, table, code) = match &cli.command {
        Command::Sixj { labels } => with_code("sixj", cmd_sixj(&env, labels)?),
        Command::Theta { labels } => with_code("theta", cmd_theta(&env, labels)?),
        Command::Tet { labels } => with_code("tet", cmd_tet(&env, labels)?),
        Command::Limits { labels, tol } => {
            let (b, t, code) = cmd_limits(&env, labels, *tol)?;
            ("limits", b, t, code)
        }
        Command::Spine { input } => with_code("spine", cmd_spine(&load_input(input)?)?),
        Command::Enumerate { input, max_color } => {
            with_code("enumerate", cmd_enumerate(&env, &load_input(input)?.spine(), *max_color)?)
        }
        Command::Analyze { input, coloring, tol } => {
            with_code("analyze", cmd_analyze(&env, &load_input(input)?.spine(), coloring, *tol)?)
        }
        Command::Sum { input, max_color, case, tol, ceiling } => {
            let spine = load_input(input)?.spine();
            let (b, t, code) = cmd_sum(&env, &spine, *max_color, *case, *tol, *ceiling)?;
            ("sum", b, t, code)
        }
        Command::Tail { input, max_color, k, ceiling } => {
            with_code("tail", cmd_tail(&env, &load_input(input)?.spine(), *max_color, *k, *ceiling)?)
        }
    };
    body.insert("t".into(), json!(env.ctx.t_exact().to_string()));
    body.insert("precision_bits".into(), json!(cli.precision));
    Ok((Report { command, body, table }, code))
}

type Body = Map<String, Value>;

fn with_code(command: &'static str, (b, t): (Body, Table)) -> (&'static str, Body, Table, i32) {
    (command, b, t, EXIT_OK)
}

fn obj(v: Value) -> Body {
    match v {
        Value::Object(m) => m,
        _ => unreachable!("json! object literal"),
    }
}

fn tet_labels(labels: &[u32]) -> Result<TetLabels, CliError> {
    let arr: [u32; 6] = labels
        .try_into()
        .map_err(|_| CliError::Usage(format!("expected 6 labels a,b,e,c,d,f, got {}", labels.len())))?;
    let l = TetLabels::from_array(arr);
    if !l.is_admissible() {
        return Err(QError::InadmissibleLabels(l).into());
    }
    Ok(l)
}

/// `2^(16 - precision)`: the relative accuracy the numeric paths are checked
/// against the exact evaluation at.
fn rel_tolerance(env: &Env) -> Real {
    Real::one(64).mul_pow2(16 - env.ctx.precision_bits() as i32)
}

fn exact_ok(labels: &[u32]) -> bool {
    labels.iter().all(|&x| x <= EXACT_LABEL_LIMIT)
}

/// Signed exact 6j: a rational when the square root comes out rational, the
/// signed square otherwise.
fn exact_sixj(env: &Env, l: &TetLabels) -> Result<(Option<String>, String), CliError> {
    let mut ex = ExactQ::from_context(&env.ctx);
    let tv = ex.tet(l)?;
    let mut rad = ex.theta(l.a, l.d, l.e)?;
    for (x, y, z) in [(l.b, l.c, l.e), (l.a, l.b, l.f), (l.c, l.d, l.f)] {
        rad = rad * ex.theta(x, y, z)?;
    }
    if l.total() % 2 == 1 {
        rad = -rad;
    }
    let sq = &tv * &tv / rad;
    let sign = if tv.is_negative() { "-" } else { "" };
    let (n, d) = (sq.numer(), sq.denom());
    let (rn, rd) = (n.sqrt(), d.sqrt());
    let root = if &(&rn * &rn) == n && &(&rd * &rd) == d {
        Some(if rd.is_one() { format!("{sign}{rn}") } else { format!("{sign}{rn}/{rd}") })
    } else {
        None
    };
    Ok((root, format!("{sign}{sq}")))
}

fn cmd_sixj(env: &Env, labels: &[u32]) -> Result<(Body, Table), CliError> {
    let l = tet_labels(labels)?;
    let d = env.digits;
    let s = sixj_detail(&env.ctx, &l)?;
    let b = sixj_bound(&env.ctx, &l)?;
    let (exact, exact_signed_square) = if exact_ok(labels) { exact_sixj(env, &l)? } else { (None, String::new()) };
    let body = obj(json!({
        "labels": l.to_array(),
        "value": d.real(&s.value),
        "rel_tolerance": d.real(&rel_tolerance(env)),
        "bound": d.real(&b.bound),
        "bound_k": d.real(&b.k),
        "bound_exponent": b.exponent,
        "within_bound": s.value.abs() <= b.bound,
        "exact": exact,
        "exact_signed_square": if exact_signed_square.is_empty() { Value::Null } else { json!(exact_signed_square) },
    }));
    let table = Table::from_fields(&body, &["value", "rel_tolerance", "bound", "bound_exponent", "within_bound", "exact"]);
    Ok((body, table))
}

fn cmd_theta(env: &Env, labels: &[u32]) -> Result<(Body, Table), CliError> {
    let &[a, b, c] = labels else {
        return Err(CliError::Usage(format!("expected 3 labels a,b,c, got {}", labels.len())));
    };
    let d = env.digits;
    let v = theta(&env.ctx, a, b, c)?;
    let exact = if exact_ok(labels) { Some(ExactQ::from_context(&env.ctx).theta(a, b, c)?.to_string()) } else { None };
    let body = obj(json!({
        "labels": [a, b, c],
        "value": d.real(&v.to_real(&env.ctx)),
        "rel_tolerance": d.real(&rel_tolerance(env)),
        "exact": exact,
    }));
    let table = Table::from_fields(&body, &["value", "rel_tolerance", "exact"]);
    Ok((body, table))
}

fn cmd_tet(env: &Env, labels: &[u32]) -> Result<(Body, Table), CliError> {
    let l = tet_labels(labels)?;
    let d = env.digits;
    let v = tet(&env.ctx, &l)?;
    // |Tet| = |6j| sqrt|prod theta| <= K t^exponent sqrt|prod theta|
    let mut rad = tvsum_core::qalgebra::SignedMagnitude::one(env.ctx.work_bits());
    for (x, y, z) in l.vertex_triples() {
        rad = rad.mul(&theta(&env.ctx, x, y, z)?);
    }
    let b = sixj_bound(&env.ctx, &l)?;
    let bound = b.bound.mul(&rad.sqrt_abs(&env.ctx).to_real(&env.ctx));
    let value = v.to_real(&env.ctx);
    let exact = if exact_ok(labels) { Some(ExactQ::from_context(&env.ctx).tet(&l)?.to_string()) } else { None };
    let body = obj(json!({
        "labels": l.to_array(),
        "value": d.real(&value),
        "rel_tolerance": d.real(&rel_tolerance(env)),
        "bound": d.real(&bound),
        "within_bound": value.abs() <= bound,
        "exact": exact,
    }));
    let table = Table::from_fields(&body, &["value", "rel_tolerance", "bound", "within_bound", "exact"]);
    Ok((body, table))
}

fn cmd_limits(env: &Env, labels: &[u32], tol: f64) -> Result<(Body, Table, i32), CliError> {
    let l = tet_labels(labels)?;
    if !(tol > 0.0) {
        return Err(CliError::Usage("tol must be positive".into()));
    }
    let d = env.digits;
    let mut code = EXIT_OK;
    let mut out = Map::new();
    let mut table = Table::new(&["variant", "value", "abs_error", "steps", "failure"]);
    for v in LimitVariant::ALL {
        let rec = match sixj_infinity(&env.ctx, &l, v, tol) {
            Ok(lim) => json!({ "value": d.real(&lim.value), "abs_error": d.real(&lim.error), "steps": lim.steps }),
            Err(e @ QError::NonConvergence { .. }) => {
                code = EXIT_NOT_CONVERGED;
                json!({ "failure": e.to_string() })
            }
            Err(e) => return Err(e.into()),
        };
        let cell = |k: &str| rec.get(k).map_or(String::new(), |x| x.as_str().map_or(x.to_string(), str::to_owned));
        table.push(vec![v.name().into(), cell("value"), cell("abs_error"), cell("steps"), cell("failure")]);
        out.insert(v.name().into(), rec);
    }
    let body = obj(json!({ "labels": l.to_array(), "tol": tol, "limits": out }));
    Ok((body, table, code))
}

fn spine_structure(s: &AbstractSpine) -> Value {
    json!({
        "vertices": s.vertices().iter().map(|v| v.faces).collect::<Vec<_>>(),
        "edges": s.edges().iter().map(|e| json!({ "faces": e.faces, "chi": e.chi })).collect::<Vec<_>>(),
        "faces": s.faces().iter().map(|f| json!({ "chi": f.chi, "forced": f.forced })).collect::<Vec<_>>(),
    })
}

fn cmd_spine(input: &Input) -> Result<(Body, Table), CliError> {
    let s = input.spine();
    let mut body = obj(json!({
        "vertices": s.vertices().len(),
        "edges": s.edges().len(),
        "faces": s.faces().len(),
        "chi": s.euler_characteristic(),
        "augmented": s.is_augmented(),
        "case": SumCase::for_chi(s.euler_characteristic()).map(SumCase::name),
        "structure": spine_structure(&s),
    }));
    if let Some(tri) = input.triangulation() {
        body.insert("tetrahedra".into(), json!(tri.tet_count()));
        body.insert("edge_classes".into(), json!(edge_classes(tri).len()));
        body.insert("cusps".into(), json!(tri.vertex_classes().len()));
    }
    let table = Table::from_fields(&body, &["vertices", "edges", "faces", "chi", "augmented", "case"]);
    Ok((body, table))
}

fn colors_text(c: &Coloring) -> String {
    c.colors().iter().map(u32::to_string).collect::<Vec<_>>().join(" ")
}

fn cmd_enumerate(env: &Env, spine: &AbstractSpine, n: u32) -> Result<(Body, Table), CliError> {
    let colorings = enumerate_with(&env.exec, spine, n);
    let records = env.exec.map(&colorings, |c| invariants(spine, c).map(|inv| (c.clone(), inv)));
    let mut out = Vec::with_capacity(records.len());
    let mut table = Table::new(&["coloring", "max_color", "q_value", "euler_char", "peel_index", "is_normal"]);
    for r in records {
        let (c, inv) = r?;
        table.push(vec![
            colors_text(&c),
            c.max_color().to_string(),
            inv.q_value.to_string(),
            inv.euler_char.map_or(String::new(), |x| x.to_string()),
            inv.peel_index.to_string(),
            inv.is_normal.to_string(),
        ]);
        out.push(json!({
            "coloring": c.colors(),
            "max_color": c.max_color(),
            "q_value": inv.q_value,
            "euler_char": inv.euler_char,
            "peel_index": inv.peel_index,
            "is_normal": inv.is_normal,
            "sectors": inv.sector.count().to_string(),
        }));
    }
    let body = obj(json!({ "max_color": n, "count": out.len(), "records": out }));
    Ok((body, table))
}

fn read_coloring(s: &str) -> Result<Coloring, CliError> {
    let s = s.trim();
    if s.starts_with('[') {
        return Ok(parse_coloring(s)?);
    }
    s.split(',')
        .map(|x| x.trim().parse::<u32>().map_err(|_| CliError::Usage(format!("bad color {x:?}"))))
        .collect::<Result<Vec<_>, _>>()
        .map(Coloring::new)
}

fn cmd_analyze(env: &Env, spine: &AbstractSpine, coloring: &str, tol: f64) -> Result<(Body, Table), CliError> {
    let c = read_coloring(coloring)?;
    let inv = invariants(spine, &c)?;
    let d = env.digits;
    let e = contribution(&env.ctx, &env.cache, spine, &c)?;
    let limit = if inv.peel_index == 0 {
        match e_infinity(&env.ctx, &env.cache, spine, &c, tol) {
            Ok(l) => json!({ "value": d.real(&l.value), "abs_error": d.real(&l.error) }),
            Err(err @ (StateSumError::SignOscillation | StateSumError::UnsupportedVertex(_))) => {
                json!({ "failure": err.to_string() })
            }
            Err(err) => return Err(err.into()),
        }
    } else {
        Value::Null
    };
    let vertices: Vec<Value> = inv
        .vertices
        .iter()
        .zip(&inv.sector.compatible)
        .map(|(v, orders)| {
            json!({
                "labels": v.labels.to_array(),
                "column_sums": [v.column_sums.0, v.column_sums.1, v.column_sums.2],
                "circles": v.circles,
                "curve_type": v.curve_type.map(|ct| json!({
                    "a": ct.a, "b": ct.b, "multiplicity": ct.multiplicity,
                    "quad": ct.is_quad(), "octagon": ct.is_octagon(),
                })),
                "sector_orders": orders,
            })
        })
        .collect();
    let body = obj(json!({
        "coloring": c.colors(),
        "max_color": c.max_color(),
        "q_value": inv.q_value,
        "euler_char": inv.euler_char,
        "peel_index": inv.peel_index,
        "is_normal": inv.is_normal,
        "sectors": inv.sector.count().to_string(),
        "contribution": d.real(&e.value),
        "contribution_bound": d.real(&e.bound),
        "limit": limit,
        "vertices": vertices,
    }));
    let table = Table::from_fields(
        &body,
        &["max_color", "q_value", "euler_char", "peel_index", "is_normal", "contribution", "contribution_bound"],
    );
    Ok((body, table))
}

fn cmd_sum(
    env: &Env,
    spine: &AbstractSpine,
    n: u32,
    case: Option<SumCase>,
    tol: f64,
    ceiling: u32,
) -> Result<(Body, Table, i32), CliError> {
    let chi = spine.euler_characteristic();
    let case = match case.or_else(|| SumCase::for_chi(chi)) {
        Some(c) => c,
        None => return Err(CliError::Usage(format!("no sum case for Euler characteristic {chi}"))),
    };
    if !(tol > 0.0) {
        return Err(CliError::Usage("tol must be positive".into()));
    }
    let opts = SumOptions { tol, ceiling };
    let r = theorem_sum(&env.ctx, &env.cache, spine, case, n, &opts, &env.exec)?;
    let d = env.digits;
    let seq = |s: &[(u32, Real)]| s.iter().map(|(i, v)| json!([i, d.text(v)])).collect::<Vec<_>>();
    let agreement = |a: &Option<tvsum_core::statesum::Agreement>| {
        a.as_ref().map(|a| {
            json!({ "difference": d.real(&a.difference), "band_sum": d.real(&a.band_sum), "agrees": a.agrees })
        })
    };
    let body = obj(json!({
        "case": case.name(),
        "chi": chi,
        "n": r.n,
        "tol": tol,
        "color_bound": r.color_bound,
        "colorings": r.colorings,
        "partial_sum": d.real(&r.partial_sum),
        "abs_partial_sum": d.real(&r.abs_partial_sum),
        "renormalized": d.real(&r.renormalized),
        "renormalized_band": d.real(&r.renormalized_band),
        "literal_renormalized": d.real(&r.literal_renormalized),
        "literal_band": d.real(&r.literal_band),
        "sequence": seq(&r.sequence),
        "literal_sequence": seq(&r.literal_sequence),
        "cauchy_deltas": r.cauchy_deltas.iter().map(|x| d.text(x)).collect::<Vec<_>>(),
        "n0": r.n0,
        "series_value": d.opt(r.series_value.as_ref()),
        "series_band": d.opt(r.series_band.as_ref()),
        "literal_series": d.opt(r.literal_series.as_ref()),
        "literal_series_band": d.opt(r.literal_series_band.as_ref()),
        "series_color_bound": r.series_color_bound,
        "series_terms": r.series_terms,
        "tail_bound": d.real(&r.tail_bound),
        "majorant": d.opt(r.majorant.as_ref()),
        "ceiling": r.ceiling,
        "agreement": agreement(&r.agreement),
        "literal_agreement": agreement(&r.literal_agreement),
        "converged": r.converged,
    }));
    let mut table = Table::new(&["n", "renormalized", "literal", "delta"]);
    for (i, ((idx, v), (_, lit))) in r.sequence.iter().zip(&r.literal_sequence).enumerate() {
        let delta = if i == 0 { String::new() } else { d.text(&r.cauchy_deltas[i - 1]) };
        table.push(vec![idx.to_string(), d.text(v), d.text(lit), delta]);
    }
    let code = if r.converged { EXIT_OK } else { EXIT_NOT_CONVERGED };
    Ok((body, table, code))
}

fn cmd_tail(env: &Env, spine: &AbstractSpine, n: u32, k: u32, ceiling: u32) -> Result<(Body, Table), CliError> {
    let r = tail_report(&env.ctx, spine, n, k, ceiling, &env.exec)?;
    let body = obj(json!({
        "n": r.n,
        "k": r.k,
        "ceiling": r.ceiling,
        "colorings": r.colorings,
        "value": env.digits.real(&r.value),
    }));
    let table = Table::from_fields(&body, &["n", "k", "ceiling", "colorings", "value"]);
    Ok((body, table))
}
