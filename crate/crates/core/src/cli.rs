//! Command-line front end. `run` is the whole program minus process setup so
//! that it can be driven from tests.
//!
//! Exit codes: 0 all checks pass, 1 other failure, 2 cone violation,
//! 3 certificate or check not verified, 64 usage error.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::One;
use serde_json::{json, Value as Json};

use crate::certify::{numeric_spotcheck_b, scalar_positivity_certificate, b_bound_certificate, Certificate};
use crate::cohomology::{
    cal_t, class_from_params, degeneration_path, enumerate_negative_classes, integer_coefficients, params_from_class,
    pullback, CohClass,
};
use crate::error::Error;
use crate::exact::{fmt_float, int, parse_rat, to_f64, Graded, PiScalar, Rat, RatFnFixture};
use crate::invariants::{invariant_set_symbolic, SymbolicInvariants};
use crate::optimize::{default_base, evaluate, grid_sweep, minimize_cal_a_dp2, Quantity, SweepAxis, SweepRow, Value};
use crate::polytope::{build_polygon, BuildOptions, KahlerParams, SurfaceKind};
use crate::regression::{compare, fixture_regression, RegressionRow};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_CONE: i32 = 2;
pub const EXIT_NOT_VERIFIED: i32 = 3;
pub const EXIT_USAGE: i32 = 64;

const GRAMMAR: &str = "\
usage: toric-kahler [--surface dp2|dp3] [--format json|csv|text] [--seed N] [--out PATH] <command>
  verify   --lemma up1|up2|pos2|pos3|fixtures|all [--emit-certificate PATH] [--fixtures DIR] [--samples N]
  derive   --what V|s0|F1|F2|A|B|C|a|b|calB|smin [--unit-delta] [--fixture PATH]
  eval     --class α,β,γ,δ (dp2: β,γ[,δ]) --what LIST [--dump-polygon]
  minimize [--tol RAT]
  sweep    --range VAR[=VAR]=lo:hi:step ... --what LIST
  classes  --k INT
  path     --omega β,γ --steps INT";

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Surface {
    Dp2,
    Dp3,
}

impl From<Surface> for SurfaceKind {
    fn from(s: Surface) -> Self {
        match s {
            Surface::Dp2 => SurfaceKind::Dp2,
            Surface::Dp3 => SurfaceKind::Dp3,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Lemma {
    Up1,
    Up2,
    Pos2,
    Pos3,
    Fixtures,
    All,
}

#[derive(Debug, Parser)]
#[command(name = "toric-kahler", version, about = "Exact Kähler-class invariants of toric del Pezzo surfaces")]
pub struct Cli {
    #[arg(long, global = true)]
    pub surface: Option<Surface>,
    #[arg(long, global = true)]
    pub format: Option<Format>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build and check the positivity certificates.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        lemma: Lemma,
        /// Write the certificate (claims, residuals, witnesses) as JSON.
        #[arg(long)]
        emit_certificate: Option<PathBuf>,
        /// Fixture directory laid out as <dir>/{dp2,dp3}/<name>.json.
        #[arg(long)]
        fixtures: Option<PathBuf>,
        /// Random points for the exact 𝓑 < 1/4 spot check.
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// Print a derived invariant as a rational function.
    Derive {
        #[arg(long)]
        what: String,
        #[arg(long)]
        unit_delta: bool,
        /// Compare with a stored fixture instead of printing.
        #[arg(long)]
        fixture: Option<PathBuf>,
    },
    /// Evaluate invariants at one Kähler class.
    Eval {
        #[arg(long, allow_hyphen_values = true)]
        class: String,
        #[arg(long, default_value = "calT,calB,calA")]
        what: String,
        #[arg(long)]
        dump_polygon: bool,
    },
    /// Locate the minimizer of 𝓐 on the two-point blow-up.
    Minimize {
        #[arg(long, default_value = "1/100000000")]
        tol: String,
    },
    /// Evaluate invariants on a parameter grid.
    Sweep {
        #[arg(long = "range", required = true, allow_hyphen_values = true)]
        ranges: Vec<String>,
        #[arg(long, default_value = "calT,calB,calA")]
        what: String,
    },
    /// Integral classes with A² = −k and c₁·A = 2 − k.
    Classes {
        #[arg(long)]
        k: i64,
    },
    /// Diagnostics along (1 − t)c₁ + t·p*Ω on the three-point blow-up.
    Path {
        #[arg(long)]
        omega: String,
        #[arg(long, default_value_t = 10)]
        steps: u32,
    },
}

/// Outcome of a command: rendered output and exit code.
struct Outcome {
    text: String,
    code: i32,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, code: EXIT_OK }
    }
}

enum Failure {
    Usage(String),
    Run(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Run(e)
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn usage<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(Failure::Usage(msg.into()))
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::ConeViolation(_) | Error::DegeneratePolygon(_) => EXIT_CONE,
        Error::NotVerified { .. } | Error::AssertionFailure { .. } => EXIT_NOT_VERIFIED,
        Error::Parse(_) => EXIT_USAGE,
        _ => EXIT_FAILURE,
    }
}

/// Color for pass/fail markers: stdout is a terminal and `NO_COLOR` unset.
pub fn color_enabled() -> bool {
    use std::io::IsTerminal;
    std::env::var_os("NO_COLOR").is_none() && std::io::stdout().is_terminal()
}

/// Runs the program on `args` (including argv[0]).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write, color: bool) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return EXIT_OK;
            }
            let _ = writeln!(err, "{}\n{GRAMMAR}", e.render().to_string().trim_end());
            return EXIT_USAGE;
        }
    };
    let result = dispatch(&cli, color);
    match result {
        Ok(outcome) => {
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(path, &outcome.text) {
                    let _ = writeln!(err, "error: {}: {e}", path.display());
                    return EXIT_FAILURE;
                }
            } else if out.write_all(outcome.text.as_bytes()).is_err() {
                return EXIT_FAILURE;
            }
            outcome.code
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}\n{GRAMMAR}");
            EXIT_USAGE
        }
        Err(Failure::Run(e)) => {
            let code = exit_code(&e);
            let _ = writeln!(err, "error: {e}");
            if code == EXIT_USAGE {
                let _ = writeln!(err, "{GRAMMAR}");
            }
            code
        }
    }
}

fn dispatch(cli: &Cli, color: bool) -> CliResult<Outcome> {
    let surface = cli.surface.map(SurfaceKind::from);
    match &cli.command {
        Command::Verify { lemma, emit_certificate, fixtures, samples } => verify(
            surface,
            *lemma,
            emit_certificate.as_deref(),
            fixtures.as_deref(),
            *samples,
            cli.seed,
            cli.format.unwrap_or(Format::Text),
            color,
        ),
        Command::Derive { what, unit_delta, fixture } => derive(
            surface.unwrap_or(SurfaceKind::Dp2),
            what,
            *unit_delta,
            fixture.as_deref(),
            cli.format.unwrap_or(Format::Text),
        ),
        Command::Eval { class, what, dump_polygon } => eval(
            surface.unwrap_or(SurfaceKind::Dp2),
            class,
            what,
            *dump_polygon,
            cli.format.unwrap_or(Format::Text),
        ),
        Command::Minimize { tol } => {
            if surface == Some(SurfaceKind::Dp3) {
                return usage("minimize is defined on dp2 only");
            }
            minimize(tol, cli.format.unwrap_or(Format::Json))
        }
        Command::Sweep { ranges, what } => {
            sweep(surface.unwrap_or(SurfaceKind::Dp2), ranges, what, cli.format.unwrap_or(Format::Csv))
        }
        Command::Classes { k } => classes(surface.unwrap_or(SurfaceKind::Dp3), *k, cli.format.unwrap_or(Format::Text)),
        Command::Path { omega, steps } => {
            if surface == Some(SurfaceKind::Dp3) {
                return usage("path takes a dp2 class");
            }
            path(omega, *steps, cli.format.unwrap_or(Format::Csv))
        }
    }
}

fn parse_list(s: &str) -> CliResult<Vec<Rat>> {
    s.split(',').map(|x| parse_rat(x).map_err(Failure::Run)).collect()
}

/// `α,β,γ,δ` on dp3, `β,γ[,δ]` on dp2 (δ defaults to 1).
pub fn parse_class(kind: SurfaceKind, s: &str) -> crate::Result<KahlerParams> {
    let v: Vec<Rat> = s.split(',').map(parse_rat).collect::<crate::Result<_>>()?;
    match (kind, v.len()) {
        (SurfaceKind::Dp2, 2) => Ok(KahlerParams::dp2(v[0].clone(), v[1].clone(), Rat::one())),
        (SurfaceKind::Dp2, 3) => Ok(KahlerParams::dp2(v[0].clone(), v[1].clone(), v[2].clone())),
        (SurfaceKind::Dp3, 4) => Ok(KahlerParams::new(v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone())),
        (k, n) => Err(Error::Parse(format!("{n} class entries given for {k}"))),
    }
}

fn paint(s: &str, pass: bool, color: bool) -> String {
    if color {
        format!("\x1b[{}m{s}\x1b[0m", if pass { 32 } else { 31 })
    } else {
        s.to_string()
    }
}

fn params_json(p: &KahlerParams) -> Json {
    json!({
        "alpha": p.alpha.to_string(),
        "beta": p.beta.to_string(),
        "gamma": p.gamma.to_string(),
        "delta": p.delta.to_string(),
    })
}

fn value_json(v: &Value) -> Json {
    json!({ "exact": v.exact, "float": v.float_str() })
}

fn pretty(v: &Json) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value serializes");
    s.push('\n');
    s
}

fn csv_line(fields: &[String]) -> String {
    let quoted: Vec<String> = fields
        .iter()
        .map(|f| if f.contains([',', '"', '\n']) { format!("\"{}\"", f.replace('"', "\"\"")) } else { f.clone() })
        .collect();
    quoted.join(",") + "\n"
}

// verify

fn detail_of(cert: &Certificate) -> String {
    let summary = cert.summary();
    summary.strip_prefix(&format!("{}: ", cert.statement)).unwrap_or(&summary).to_string()
}

struct Check {
    name: String,
    pass: bool,
    detail: String,
    certificate: Option<Certificate>,
}

fn lemmas(surface: Option<SurfaceKind>, lemma: Lemma) -> CliResult<Vec<Lemma>> {
    let all = [Lemma::Up1, Lemma::Pos2, Lemma::Up2, Lemma::Pos3, Lemma::Fixtures];
    let of = |l: Lemma| match l {
        Lemma::Up1 | Lemma::Pos2 => Some(SurfaceKind::Dp2),
        Lemma::Up2 | Lemma::Pos3 => Some(SurfaceKind::Dp3),
        _ => None,
    };
    match lemma {
        Lemma::All => Ok(all.into_iter().filter(|&l| surface.is_none() || of(l).is_none() || of(l) == surface).collect()),
        l => match (surface, of(l)) {
            (Some(s), Some(k)) if s != k => usage(format!("lemma {l:?} concerns {k}, not {s}").to_lowercase()),
            _ => Ok(vec![l]),
        },
    }
}

#[allow(clippy::too_many_arguments)]
fn verify(
    surface: Option<SurfaceKind>,
    lemma: Lemma,
    emit: Option<&Path>,
    fixtures: Option<&Path>,
    samples: usize,
    seed: u64,
    format: Format,
    color: bool,
) -> CliResult<Outcome> {
    let selected = lemmas(surface, lemma)?;
    let certificates: Vec<&Lemma> = selected.iter().filter(|l| !matches!(l, Lemma::Fixtures)).collect();
    if emit.is_some() && certificates.len() != 1 {
        return usage("--emit-certificate needs a single certificate lemma");
    }
    let mut checks = Vec::new();
    for l in &selected {
        match l {
            Lemma::Up1 | Lemma::Up2 => {
                let kind = if *l == Lemma::Up1 { SurfaceKind::Dp2 } else { SurfaceKind::Dp3 };
                let cert = b_bound_certificate(kind);
                checks.push(Check {
                    name: cert.statement.clone(),
                    pass: cert.verified,
                    detail: detail_of(&cert),
                    certificate: Some(cert),
                });
                if samples > 0 {
                    let (pass, detail) = match numeric_spotcheck_b(kind, samples, seed) {
                        Ok(r) => (true, format!("{} points, max calB = {} ≈ {}", r.samples, r.max_cal_b, fmt_float(to_f64(&r.max_cal_b)))),
                        Err(e) => (false, e.to_string()),
                    };
                    checks.push(Check { name: format!("{kind} spot check"), pass, detail, certificate: None });
                }
            }
            Lemma::Pos2 | Lemma::Pos3 => {
                let kind = if *l == Lemma::Pos2 { SurfaceKind::Dp2 } else { SurfaceKind::Dp3 };
                let cert = scalar_positivity_certificate(kind);
                checks.push(Check {
                    name: cert.statement.clone(),
                    pass: cert.verified,
                    detail: detail_of(&cert),
                    certificate: Some(cert),
                });
            }
            Lemma::Fixtures => {
                for RegressionRow { kind, name, pass, detail } in fixture_regression(fixtures)? {
                    checks.push(Check { name: format!("fixture {kind}/{name}"), pass, detail, certificate: None });
                }
            }
            Lemma::All => unreachable!("expanded above"),
        }
    }
    if let Some(path) = emit {
        let cert = checks.iter().find_map(|c| c.certificate.as_ref()).expect("one certificate selected");
        let text = serde_json::to_string_pretty(cert).expect("certificate serializes");
        std::fs::write(path, text + "\n").map_err(Error::from)?;
    }
    let all_pass = checks.iter().all(|c| c.pass);
    let text = match format {
        Format::Json => pretty(&Json::Array(
            checks.iter().map(|c| json!({ "check": c.name, "pass": c.pass, "detail": c.detail })).collect(),
        )),
        Format::Csv => {
            let mut s = csv_line(&["check".into(), "pass".into(), "detail".into()]);
            for c in &checks {
                s += &csv_line(&[c.name.clone(), c.pass.to_string(), c.detail.clone()]);
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for c in &checks {
                let mark = paint(if c.pass { "PASS" } else { "FAIL" }, c.pass, color);
                let _ = writeln!(s, "{mark} {}: {}", c.name, c.detail);
            }
            s
        }
    };
    Ok(Outcome { text, code: if all_pass { EXIT_OK } else { EXIT_NOT_VERIFIED } })
}

// derive

fn derive(kind: SurfaceKind, what: &str, unit_delta: bool, fixture: Option<&Path>, format: Format) -> CliResult<Outcome> {
    let sym = invariant_set_symbolic(kind);
    let Some(f) = sym.get(what) else {
        return usage(format!("unknown quantity `{what}`; expected one of {}", SymbolicInvariants::NAMES.join(", ")));
    };
    if let Some(path) = fixture {
        let mut stored = RatFnFixture::load(path)?;
        stored.name = what.to_string();
        let row = compare(kind, &stored)?;
        let text = match format {
            Format::Json => pretty(&json!({ "surface": kind.name(), "name": what, "pass": row.pass, "detail": row.detail })),
            _ => format!("{} {kind}/{what}: {}\n", if row.pass { "PASS" } else { "FAIL" }, row.detail),
        };
        return Ok(Outcome { text, code: if row.pass { EXIT_OK } else { EXIT_NOT_VERIFIED } });
    }
    let f = if unit_delta { SymbolicInvariants::at_unit_delta(&f) } else { f };
    let text = match format {
        Format::Json => RatFnFixture::from_ratfn(what, &f).to_json() + "\n",
        _ => {
            let pi = match f.pi_power() {
                0 => String::new(),
                1 => "π · ".into(),
                k => format!("π^{k} · "),
            };
            format!("{what} = {pi}({}) / ({})\n", f.coeff().num(), f.coeff().den())
        }
    };
    Ok(Outcome::ok(text))
}

// eval

fn eval(kind: SurfaceKind, class: &str, what: &str, dump: bool, format: Format) -> CliResult<Outcome> {
    let params = parse_class(kind, class)?;
    let quantities = Quantity::parse_list(what)?;
    let polygon = if dump { Some(build_polygon(kind, &params, BuildOptions::default())?) } else { None };
    let values = evaluate(kind, &params, &quantities)?;
    let text = match format {
        Format::Json => {
            let mut map = serde_json::Map::new();
            for (q, v) in quantities.iter().zip(&values) {
                map.insert(q.name().into(), value_json(v));
            }
            let mut doc = json!({ "surface": kind.name(), "params": params_json(&params), "values": map });
            if let Some(p) = &polygon {
                doc["polygon"] = json!({
                    "vertices": p.vertices().iter().map(|(x, y)| vec![x.to_string(), y.to_string()]).collect::<Vec<_>>(),
                    "edges": p.edges().iter().map(|e| json!({ "normal": [e.normal.0, e.normal.1], "length": e.length.to_string() })).collect::<Vec<_>>(),
                });
            }
            pretty(&doc)
        }
        Format::Csv => {
            let mut header = vec!["quantity".to_string(), "exact".into(), "float".into()];
            let mut s = csv_line(&header);
            for (q, v) in quantities.iter().zip(&values) {
                header = vec![q.name().into(), v.exact.clone(), v.float_str()];
                s += &csv_line(&header);
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            if let Some(p) = &polygon {
                s += &p.to_string();
            }
            for (q, v) in quantities.iter().zip(&values) {
                let _ = writeln!(s, "{q} = {} ≈ {}", v.exact, v.float_str());
            }
            s
        }
    };
    Ok(Outcome::ok(text))
}

// minimize

fn minimize(tol: &str, format: Format) -> CliResult<Outcome> {
    let tol = parse_rat(tol)?;
    let r = minimize_cal_a_dp2(&tol)?;
    let pass = r.certified_below.is_some() && r.inside_y && r.symmetric && r.partials_change_sign && r.grid_clear;
    let text = match format {
        Format::Json | Format::Csv => pretty(&json!({
            "params": params_json(&r.params_star),
            "calA": r.cal_a_star.to_string(),
            "calA_float": fmt_float(to_f64(&r.cal_a_star)),
            "calT": r.cal_t_star.to_string(),
            "calB": r.cal_b_star.to_string(),
            "certified_below": r.certified_below.as_ref().map(ToString::to_string),
            "inside_Y": r.inside_y,
            "eta_square": r.eta_square.to_string(),
            "bracket": [r.bracket.0.to_string(), r.bracket.1.to_string()],
            "bracket_float": [fmt_float(to_f64(&r.bracket.0)), fmt_float(to_f64(&r.bracket.1))],
            "bisection_steps": r.bisection_steps,
            "gradient_norm": fmt_float(r.gradient_norm),
            "symmetric": r.symmetric,
            "partials_change_sign": r.partials_change_sign,
            "grid_points": r.grid_points,
            "grid_min": r.grid_min.to_string(),
            "grid_argmin": [r.grid_argmin.0.to_string(), r.grid_argmin.1.to_string()],
            "grid_clear": r.grid_clear,
            "grid_local_minima": r.local_minima.iter().map(|(b, g)| vec![b.to_string(), g.to_string()]).collect::<Vec<_>>(),
        })),
        Format::Text => {
            let mut s = String::new();
            let b = &r.params_star.beta;
            let _ = writeln!(s, "minimizer  β = γ ≈ {} (δ = 1), bracket width ≤ {tol}", fmt_float(to_f64(b)));
            let _ = writeln!(s, "calA       {} ≈ {}", r.cal_a_star, fmt_float(to_f64(&r.cal_a_star)));
            let _ = writeln!(s, "calT       ≈ {}", fmt_float(to_f64(&r.cal_t_star)));
            let _ = writeln!(s, "calB       ≈ {}", fmt_float(to_f64(&r.cal_b_star)));
            let below = r.certified_below.as_ref().map_or("no".to_string(), |c| format!("yes, < {c}"));
            let _ = writeln!(s, "certified  {below}; inside Y: {}", r.inside_y);
            let _ = writeln!(s, "checks     symmetric={} partials_change_sign={} grid_clear={} ({} points)", r.symmetric, r.partials_change_sign, r.grid_clear, r.grid_points);
            s
        }
    };
    Ok(Outcome { text, code: if pass { EXIT_OK } else { EXIT_NOT_VERIFIED } })
}

// sweep

fn rows_output(quantities: &[Quantity], rows: &[SweepRow], format: Format) -> String {
    match format {
        Format::Json => pretty(&Json::Array(
            rows.iter()
                .map(|r| {
                    let mut map = serde_json::Map::new();
                    for (q, v) in quantities.iter().zip(&r.values) {
                        map.insert(q.name().into(), value_json(v));
                    }
                    json!({ "params": params_json(&r.params), "status": r.status.clone().unwrap_or_else(|| "ok".into()), "values": map })
                })
                .collect(),
        )),
        Format::Csv | Format::Text => {
            let mut header: Vec<String> = ["alpha", "beta", "gamma", "delta", "status"].map(String::from).to_vec();
            for q in quantities {
                header.push(q.name().into());
                header.push(format!("{q}_float"));
            }
            let mut s = csv_line(&header);
            for r in rows {
                let p = &r.params;
                let mut f = vec![p.alpha.to_string(), p.beta.to_string(), p.gamma.to_string(), p.delta.to_string()];
                f.push(r.status.clone().unwrap_or_else(|| "ok".into()));
                if r.values.is_empty() {
                    f.extend(std::iter::repeat(String::new()).take(2 * quantities.len()));
                }
                for v in &r.values {
                    f.push(v.exact.clone());
                    f.push(v.float_str());
                }
                s += &csv_line(&f);
            }
            s
        }
    }
}

fn sweep(kind: SurfaceKind, ranges: &[String], what: &str, format: Format) -> CliResult<Outcome> {
    let axes = ranges.iter().map(|r| SweepAxis::parse(r)).collect::<crate::Result<Vec<_>>>()?;
    let quantities = Quantity::parse_list(what)?;
    let rows = grid_sweep(kind, &default_base(kind), &axes, &quantities)?;
    let flagged = rows.iter().any(|r| r.status.is_some());
    Ok(Outcome { text: rows_output(&quantities, &rows, format), code: if flagged { EXIT_CONE } else { EXIT_OK } })
}

// classes

fn classes(kind: SurfaceKind, k: i64, format: Format) -> CliResult<Outcome> {
    if k < 1 {
        return usage("--k must be a positive integer");
    }
    let list = enumerate_negative_classes(kind, k)?;
    let text = match format {
        Format::Json => pretty(&Json::Array(
            list.iter()
                .map(|c| {
                    let coeffs = integer_coefficients(c).expect("enumerated classes are integral");
                    json!({ "n": coeffs[0], "a": coeffs[1..].to_vec(), "square": c.square().to_string(), "c1_degree": c.c1_degree().to_string() })
                })
                .collect(),
        )),
        Format::Csv => {
            let mut header = vec!["n".to_string()];
            header.extend((1..=kind.blowups()).map(|i| format!("a{i}")));
            let mut s = csv_line(&header);
            for c in &list {
                let coeffs = integer_coefficients(c).expect("integral");
                s += &csv_line(&coeffs.iter().map(ToString::to_string).collect::<Vec<_>>());
            }
            s
        }
        Format::Text => list.iter().map(|c| format!("{c}\n")).collect(),
    };
    Ok(Outcome::ok(text))
}

// path

/// One step of the degeneration path.
#[derive(Clone, Debug, PartialEq)]
pub struct PathRow {
    pub t: Rat,
    pub class: CohClass,
    pub e1_area: Rat,
    pub cal_t: Rat,
    pub cal_b: Rat,
    pub s_min: PiScalar,
    pub s_max: PiScalar,
    /// 𝓣 along the path does not exceed 𝓣(p*Ω).
    pub below_endpoint: bool,
}

/// Rows at t = i/steps; the endpoint t = 1 is evaluated on the two-point
/// blow-up, where the three-point polygon degenerates.
pub fn path_rows(omega2: &KahlerParams, steps: u32) -> crate::Result<Vec<PathRow>> {
    if steps == 0 {
        return Err(Error::OutOfRange { name: "steps", value: int(0) });
    }
    let omega = class_from_params(SurfaceKind::Dp2, omega2);
    let t_end = cal_t(&pullback(&omega)?)?;
    (0..=steps)
        .map(|i| {
            let t = Rat::new(i.into(), steps.into());
            let class = degeneration_path(&omega, &t)?;
            let (_, p) = params_from_class(&class)?;
            let (kind, params) = if p.alpha == Rat::from_integer(0.into()) {
                (SurfaceKind::Dp2, KahlerParams::dp2(p.beta.clone(), p.gamma.clone(), p.delta.clone()))
            } else {
                (SurfaceKind::Dp3, p.clone())
            };
            let fv = crate::invariants::functional(kind, &params)?;
            let (s_min, s_max) = crate::invariants::scalar_bounds(kind, &params)?;
            Ok(PathRow {
                below_endpoint: fv.cal_t <= t_end,
                e1_area: p.alpha,
                t,
                class,
                cal_t: fv.cal_t,
                cal_b: fv.cal_b,
                s_min,
                s_max,
            })
        })
        .collect()
}

fn path(omega: &str, steps: u32, format: Format) -> CliResult<Outcome> {
    let v = parse_list(omega)?;
    if v.len() != 2 {
        return usage("--omega takes β,γ");
    }
    let params = KahlerParams::dp2(v[0].clone(), v[1].clone(), Rat::one());
    if !params.in_cone(SurfaceKind::Dp2) {
        return Err(Error::ConeViolation(format!("{params} on dp2")).into());
    }
    let rows = path_rows(&params, steps)?;
    let pass = rows.iter().all(|r| r.below_endpoint);
    let graded = |s: &PiScalar| Value::graded(s);
    let text = match format {
        Format::Json => pretty(&Json::Array(
            rows.iter()
                .map(|r| {
                    json!({
                        "t": r.t.to_string(),
                        "class": r.class.to_string(),
                        "e1_area": r.e1_area.to_string(),
                        "calT": value_json(&Value::rational(&r.cal_t)),
                        "calB": value_json(&Value::rational(&r.cal_b)),
                        "smin": value_json(&graded(&r.s_min)),
                        "smax": value_json(&graded(&r.s_max)),
                        "calT_below_endpoint": r.below_endpoint,
                    })
                })
                .collect(),
        )),
        Format::Csv | Format::Text => {
            let header = ["t", "class", "e1_area", "calT", "calT_float", "calB", "calB_float", "smin", "smin_float", "smax", "smax_float", "calT_below_endpoint"];
            let mut s = csv_line(&header.map(String::from));
            for r in &rows {
                let (ct, cb, lo, hi) = (Value::rational(&r.cal_t), Value::rational(&r.cal_b), graded(&r.s_min), graded(&r.s_max));
                s += &csv_line(&[
                    r.t.to_string(),
                    r.class.to_string(),
                    r.e1_area.to_string(),
                    ct.exact.clone(),
                    ct.float_str(),
                    cb.exact.clone(),
                    cb.float_str(),
                    lo.exact.clone(),
                    lo.float_str(),
                    hi.exact.clone(),
                    hi.float_str(),
                    r.below_endpoint.to_string(),
                ]);
            }
            s
        }
    };
    Ok(Outcome { text, code: if pass { EXIT_OK } else { EXIT_NOT_VERIFIED } })
}

/// Parses `c`, `c*pi` or `c*pi^k` as printed in JSON and CSV output.
pub fn parse_graded(s: &str) -> crate::Result<PiScalar> {
    let s = s.trim();
    let (coeff, power) = match s.split_once("*pi") {
        None => (s, 0),
        Some((c, "")) => (c, 1),
        Some((c, rest)) => {
            let k = rest
                .strip_prefix('^')
                .and_then(|k| k.parse::<i32>().ok())
                .ok_or_else(|| Error::Parse(format!("bad pi power in `{s}`")))?;
            (c, k)
        }
    };
    Ok(Graded::new(parse_rat(coeff)?, power))
}
