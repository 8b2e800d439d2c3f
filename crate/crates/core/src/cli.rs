//! The `polyharm` command-line front end.
//!
//! ```text
//! polyharm tau --geometry nil "y*t"                 # 2*x
//! polyharm degree --geometry nil "x^5*y^2*t^4"      # degree 8
//! polyharm family sol-poly -m 4 -n 4 --certify
//! polyharm verify-paper --only sol --output json
//! polyharm crosscheck --geometry sol "t^2"
//! ```
//!
//! Exit codes: 0 ok, 1 verification failure, 2 parse error, 3 size cap,
//! 4 degree cap, 5 constructor error, 6 numeric tolerance.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::algebra::{Expression, DEFAULT_TERM_CAP};
use crate::analysis::{harmonicity_degree, Degree, DEFAULT_MAX_R};
use crate::catalog::{
    load_catalog, select, verify, AxisName, FamilyCall, VerifyConfig, BUILTIN_CATALOG,
    CATALOG_SAMPLE_RADIUS,
};
use crate::error::Error;
use crate::geometry::{tau_iter, GeometryId};
use crate::numeric::{
    cross_check_within, DEFAULT_FD_STEP, DEFAULT_FD_TOL, DEFAULT_SAMPLE_RADIUS, DEFAULT_SEED,
};
use crate::textio::{parse_with, render_with, Format, JsonExpression, ParseError};

/// Version of every JSON document printed by the CLI.
pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_SIZE_CAP: i32 = 3;
pub const EXIT_DEGREE_CAP: i32 = 4;
pub const EXIT_CONSTRUCTOR: i32 = 5;
pub const EXIT_NUMERIC: i32 = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputKind {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RenderKind {
    Canonical,
    Human,
}

#[derive(Parser, Debug)]
#[command(
    name = "polyharm",
    version,
    about = "Exact polyharmonic analysis on the Thurston geometries"
)]
pub struct Cli {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct CommonArgs {
    /// Largest number of τ applications before giving up.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_R, value_parser = clap::value_parser!(u32).range(1..))]
    pub max_r: u32,
    /// Largest number of terms any intermediate expression may have.
    #[arg(long, global = true, default_value_t = DEFAULT_TERM_CAP, value_parser = positive_usize)]
    pub term_cap: usize,
    /// Seed for point sampling; defaults to $POLYHARM_SEED, then a fixed value.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = OutputKind::Text)]
    pub output: OutputKind,
    /// Finite-difference step.
    #[arg(long, global = true, default_value_t = DEFAULT_FD_STEP, value_parser = positive_f64)]
    pub fd_step: f64,
    /// Largest accepted relative error of the finite-difference check.
    #[arg(long, global = true, default_value_t = DEFAULT_FD_TOL)]
    pub fd_tol: f64,
}

fn positive_usize(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

fn positive_f64(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(h) if h > 0.0 && h.is_finite() => Ok(h),
        Ok(_) => Err("must be positive".into()),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Apply τ (optionally several times) and print the result.
    Tau {
        #[arg(long, short)]
        geometry: GeometryId,
        #[arg(long, default_value_t = 1)]
        iterate: u32,
        #[arg(long, value_enum, default_value_t = RenderKind::Canonical)]
        render: RenderKind,
        expr: String,
    },
    /// Compute the proper harmonicity degree.
    Degree {
        #[arg(long, short)]
        geometry: GeometryId,
        #[arg(long, value_enum, default_value_t = RenderKind::Canonical)]
        render: RenderKind,
        expr: String,
    },
    /// Build a member of one of the explicit families.
    Family(FamilyArgs),
    /// Replay the example catalog.
    VerifyPaper {
        /// Catalog file to use instead of the built-in one.
        #[arg(long)]
        catalog: Option<PathBuf>,
        /// Keep only cases of this geometry, or whose id starts with this prefix.
        #[arg(long)]
        only: Option<String>,
        /// Finite-difference points per case.
        #[arg(long, default_value_t = 3)]
        points: usize,
        /// Half-width of the sampling box.
        #[arg(long, default_value_t = CATALOG_SAMPLE_RADIUS, value_parser = positive_f64)]
        radius: f64,
    },
    /// Compare symbolic τ with a finite-difference stencil at random points.
    Crosscheck {
        #[arg(long, short)]
        geometry: GeometryId,
        #[arg(long, default_value_t = 10, value_parser = positive_usize)]
        points: usize,
        /// Half-width of the sampling box.
        #[arg(long, default_value_t = DEFAULT_SAMPLE_RADIUS, value_parser = positive_f64)]
        radius: f64,
        expr: String,
    },
}

#[derive(Args, Debug)]
pub struct FamilyArgs {
    /// sol-harmonic, sol-poly, sol-Fr, sol-product, nil-product, nil-monomial,
    /// nil-B, sl2-axis, sl2-f2 or product-space.
    pub family: String,
    #[arg(short)]
    pub m: Option<u32>,
    #[arg(short)]
    pub n: Option<u32>,
    #[arg(short)]
    pub r: Option<u32>,
    #[arg(short)]
    pub d: Option<u32>,
    #[arg(long)]
    pub alpha: Option<u32>,
    #[arg(long, value_enum)]
    pub axis: Option<AxisArg>,
    /// sol-harmonic: multiply by the other coordinate.
    #[arg(long)]
    pub linear_factor: bool,
    /// nil-product: downgrade to an upper bound when a derivative vanishes.
    #[arg(long)]
    pub lenient: bool,
    /// Comma-separated coefficients.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub a: Vec<String>,
    /// Comma-separated coefficients.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub b: Vec<String>,
    #[arg(long)]
    pub h1: Option<String>,
    /// Polynomial in t.
    #[arg(long, allow_hyphen_values = true)]
    pub poly: Option<String>,
    /// product-space: polynomial in z.
    #[arg(long, allow_hyphen_values = true)]
    pub f: Option<String>,
    /// product-space: polynomial in zc.
    #[arg(long, allow_hyphen_values = true)]
    pub g: Option<String>,
    /// product-space: polynomial P(t).
    #[arg(long, allow_hyphen_values = true)]
    pub p: Option<String>,
    /// product-space: h2xr or s2xr.
    #[arg(long)]
    pub geometry: Option<GeometryId>,
    /// Also run the degree engine on the result.
    #[arg(long)]
    pub certify: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum AxisArg {
    X,
    Y,
}

/// Settings resolved from the command line and the environment.
#[derive(Clone, Debug, PartialEq)]
pub struct CommandConfig {
    pub geometry: Option<GeometryId>,
    pub max_r: u32,
    pub term_cap: usize,
    pub seed: u64,
    pub output: OutputKind,
    pub fd_step: f64,
    pub fd_tol: f64,
}

fn resolve_seed(flag: Option<u64>) -> Result<u64, String> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match std::env::var("POLYHARM_SEED") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| format!("POLYHARM_SEED='{v}' is not an unsigned integer")),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) => EXIT_PARSE,
        Error::ExpressionTooLarge { .. } => EXIT_SIZE_CAP,
        Error::InvalidPoint(_) => EXIT_NUMERIC,
        _ => EXIT_CONSTRUCTOR,
    }
}

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

impl Io<'_> {
    fn fail(&mut self, e: &Error, src: Option<&str>) -> i32 {
        let _ = writeln!(self.err, "error: {e}");
        if let (Error::Parse(pe), Some(src)) = (e, src) {
            let _ = write!(self.err, "{}", caret(src, pe));
        }
        exit_code(e)
    }

    fn json(&mut self, value: &serde_json::Value) {
        let _ = writeln!(
            self.out,
            "{}",
            serde_json::to_string_pretty(value).expect("serializable")
        );
    }
}

fn caret(src: &str, pe: &ParseError) -> String {
    let start = src[..pe.span.start.min(src.len())].chars().count();
    let width = src[pe.span.start.min(src.len())..pe.span.end.min(src.len())]
        .chars()
        .count()
        .max(1);
    format!("  {src}\n  {}{}\n", " ".repeat(start), "^".repeat(width))
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    let mut io = Io { out, err };
    let seed = match resolve_seed(cli.common.seed) {
        Ok(s) => s,
        Err(msg) => {
            let _ = writeln!(io.err, "error: {msg}");
            return EXIT_PARSE;
        }
    };
    let geometry = match &cli.command {
        Command::Tau { geometry, .. }
        | Command::Degree { geometry, .. }
        | Command::Crosscheck { geometry, .. } => Some(*geometry),
        Command::Family(f) => f.geometry,
        Command::VerifyPaper { .. } => None,
    };
    let cfg = CommandConfig {
        geometry,
        max_r: cli.common.max_r,
        term_cap: cli.common.term_cap,
        seed,
        output: cli.common.output,
        fd_step: cli.common.fd_step,
        fd_tol: cli.common.fd_tol,
    };
    match cli.command {
        Command::Tau {
            geometry,
            iterate,
            render,
            expr,
        } => cmd_tau(&mut io, &cfg, geometry, iterate, render, &expr),
        Command::Degree {
            geometry,
            render,
            expr,
        } => cmd_degree(&mut io, &cfg, geometry, render, &expr),
        Command::Family(args) => cmd_family(&mut io, &cfg, &args),
        Command::VerifyPaper {
            catalog,
            only,
            points,
            radius,
        } => cmd_verify_paper(&mut io, &cfg, catalog, only, points, radius),
        Command::Crosscheck {
            geometry,
            points,
            radius,
            expr,
        } => cmd_crosscheck(&mut io, &cfg, geometry, points, radius, &expr),
    }
}

fn format_of(r: RenderKind) -> Format {
    match r {
        RenderKind::Canonical => Format::Canonical,
        RenderKind::Human => Format::Human,
    }
}

fn cmd_tau(
    io: &mut Io,
    cfg: &CommandConfig,
    g: GeometryId,
    iterate: u32,
    render: RenderKind,
    src: &str,
) -> i32 {
    let result = parse_with(src, g.notation())
        .map_err(Error::from)
        .and_then(|f| tau_iter(g, &f, iterate, cfg.term_cap));
    let f = match result {
        Ok(f) => f,
        Err(e) => return io.fail(&e, Some(src)),
    };
    match cfg.output {
        OutputKind::Text => {
            let _ = writeln!(
                io.out,
                "{}",
                render_with(&f, format_of(render), g.notation())
            );
        }
        OutputKind::Json => io.json(&json!({
            "schema_version": SCHEMA_VERSION,
            "command": "tau",
            "geometry": g,
            "iterate": iterate,
            "result": render_with(&f, Format::Canonical, g.notation()),
            "terms": JsonExpression::from(&f),
        })),
    }
    EXIT_OK
}

fn cmd_degree(
    io: &mut Io,
    cfg: &CommandConfig,
    g: GeometryId,
    render: RenderKind,
    src: &str,
) -> i32 {
    let result = parse_with(src, g.notation())
        .map_err(Error::from)
        .and_then(|f| harmonicity_degree(g, &f, cfg.max_r, cfg.term_cap));
    let report = match result {
        Ok(r) => r,
        Err(e) => return io.fail(&e, Some(src)),
    };
    let witness = report
        .witness
        .as_ref()
        .map(|w| render_with(w, format_of(render), g.notation()));
    match cfg.output {
        OutputKind::Text => {
            let chain: Vec<String> = report.chain.iter().map(|c| c.to_string()).collect();
            let _ = writeln!(io.out, "degree: {}", report.degree);
            let _ = writeln!(io.out, "proper: {}", report.proper);
            let _ = writeln!(io.out, "chain: [{}]", chain.join(", "));
            if let Some(w) = &witness {
                let label = if report.proper { "witness" } else { "last iterate" };
                let _ = writeln!(io.out, "{label}: {w}");
            }
        }
        OutputKind::Json => io.json(&json!({
            "schema_version": SCHEMA_VERSION,
            "command": "degree",
            "geometry": g,
            "degree": report.degree.exact(),
            "exceeded": match report.degree { Degree::Exceeded(m) => Some(m), Degree::Exact(_) => None },
            "proper": report.proper,
            "chain": report.chain,
            "witness": witness,
        })),
    }
    match report.degree {
        Degree::Exact(_) => EXIT_OK,
        Degree::Exceeded(_) => EXIT_DEGREE_CAP,
    }
}

fn require<T: Clone>(v: &Option<T>, flag: &str) -> Result<T, Error> {
    v.clone()
        .ok_or_else(|| Error::InvalidParameter(format!("{flag} is required for this family")))
}

fn family_call(a: &FamilyArgs) -> Result<FamilyCall, Error> {
    let axis = |default: AxisName| match a.axis {
        None => default,
        Some(AxisArg::X) => AxisName::X,
        Some(AxisArg::Y) => AxisName::Y,
    };
    Ok(match a.family.as_str() {
        "sol-harmonic" => FamilyCall::SolHarmonic {
            n: require(&a.n, "-n")?,
            axis: axis(AxisName::Y),
            linear_factor: a.linear_factor,
        },
        "sol-poly" => FamilyCall::SolPoly {
            m: require(&a.m, "-m")?,
            n: require(&a.n, "-n")?,
        },
        "sol-Fr" | "sol-fr" => FamilyCall::SolFr {
            r: require(&a.r, "-r")?,
            a: a.a.clone(),
            b: a.b.clone(),
        },
        "sol-product" => FamilyCall::SolProduct {
            a: a.a.clone(),
            b: a.b.clone(),
        },
        "nil-product" => FamilyCall::NilProduct {
            h1: require(&a.h1, "--h1")?,
            d: a.d.unwrap_or(0),
            alpha: a.alpha.unwrap_or(0),
            lenient: a.lenient,
        },
        "nil-monomial" => FamilyCall::NilMonomial {
            m: a.m.unwrap_or(0),
            n: a.n.unwrap_or(0),
            alpha: a.alpha.unwrap_or(0),
        },
        "nil-B" | "nil-b" => FamilyCall::NilB { b: a.b.clone() },
        "sl2-axis" => FamilyCall::Sl2Axis {
            poly: require(&a.poly, "--poly")?,
            axis: match a.axis {
                Some(_) => axis(AxisName::Y),
                None => {
                    return Err(Error::InvalidParameter(
                        "--axis is required for sl2-axis".into(),
                    ))
                }
            },
        },
        "sl2-f2" => FamilyCall::Sl2F2 { b: a.b.clone() },
        "product-space" => FamilyCall::ProductSpace {
            f: a.f.clone().unwrap_or_else(|| "0".into()),
            g: a.g.clone().unwrap_or_else(|| "0".into()),
            p: require(&a.p, "--p")?,
            r: require(&a.r, "-r")?,
        },
        other => {
            return Err(Error::InvalidParameter(format!(
                "unknown family '{other}' (expected sol-harmonic, sol-poly, sol-Fr, sol-product, \
                 nil-product, nil-monomial, nil-B, sl2-axis, sl2-f2 or product-space)"
            )))
        }
    })
}

fn cmd_family(io: &mut Io, cfg: &CommandConfig, args: &FamilyArgs) -> i32 {
    let geometry = cfg.geometry.unwrap_or(GeometryId::H2xR);
    let fam = match family_call(args).and_then(|call| call.build(geometry, cfg.term_cap)) {
        Ok(f) => f,
        Err(e) => return io.fail(&e, None),
    };
    let g = fam.geometry;
    let mut code = EXIT_OK;
    let mut computed = None;
    if args.certify {
        match harmonicity_degree(g, &fam.expr, cfg.max_r, cfg.term_cap) {
            Ok(report) => {
                computed = Some(report.degree);
                code = match report.degree {
                    Degree::Exact(r) if fam.agrees_with(r) => EXIT_OK,
                    Degree::Exact(_) => EXIT_VERIFY,
                    Degree::Exceeded(_) => EXIT_DEGREE_CAP,
                };
            }
            Err(e) => return io.fail(&e, None),
        }
    }
    let expr = render_with(&fam.expr, Format::Canonical, g.notation());
    match cfg.output {
        OutputKind::Text => {
            let _ = writeln!(io.out, "family: {}", args.family);
            let _ = writeln!(io.out, "geometry: {g}");
            let _ = writeln!(io.out, "expression: {expr}");
            let _ = writeln!(io.out, "predicted degree: {}", fam.predicted_degree);
            let _ = writeln!(io.out, "prediction status: {:?}", fam.prediction_status);
            let _ = writeln!(io.out, "source: {}", fam.prediction_source);
            if let Some(d) = computed {
                let _ = writeln!(io.out, "computed degree: {d}");
            }
        }
        OutputKind::Json => io.json(&json!({
            "schema_version": SCHEMA_VERSION,
            "command": "family",
            "family": args.family,
            "geometry": g,
            "expression": expr,
            "predicted_degree": fam.predicted_degree,
            "prediction_status": fam.prediction_status,
            "prediction_source": fam.prediction_source,
            "computed_degree": computed.and_then(Degree::exact),
        })),
    }
    if code == EXIT_VERIFY {
        let _ = writeln!(
            io.err,
            "error: computed degree {} contradicts the prediction {} ({:?})",
            computed.expect("certified"),
            fam.predicted_degree,
            fam.prediction_status
        );
    }
    code
}

fn cmd_verify_paper(
    io: &mut Io,
    cfg: &CommandConfig,
    catalog: Option<PathBuf>,
    only: Option<String>,
    points: usize,
    radius: f64,
) -> i32 {
    let text = match &catalog {
        None => BUILTIN_CATALOG.to_string(),
        Some(path) => match std::fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) => {
                let _ = writeln!(io.err, "error: cannot read {}: {e}", path.display());
                return EXIT_PARSE;
            }
        },
    };
    let cases = match load_catalog(&text) {
        Ok(c) => select(&c, only.as_deref()),
        Err(e) => {
            let _ = writeln!(io.err, "error: {e}");
            return EXIT_PARSE;
        }
    };
    let vcfg = VerifyConfig {
        max_r: cfg.max_r,
        term_cap: cfg.term_cap,
        seed: cfg.seed,
        fd_step: cfg.fd_step,
        fd_tol: cfg.fd_tol,
        points,
        radius,
    };
    let outcomes = verify(&cases, &vcfg);
    let failed: Vec<&str> = outcomes
        .iter()
        .filter(|o| !o.pass)
        .map(|o| o.id.as_str())
        .collect();
    match cfg.output {
        OutputKind::Text => {
            let width = outcomes
                .iter()
                .map(|o| o.id.len())
                .max()
                .unwrap_or(2)
                .max(2);
            let _ = writeln!(
                io.out,
                "{:<width$}  {:>8}  {:>8}  {:<6}  citation",
                "id", "expected", "computed", "result"
            );
            for o in &outcomes {
                let computed = o.computed_degree.map_or("-".to_string(), |d| d.to_string());
                let result = if o.pass { "PASS" } else { "FAIL" };
                let _ = writeln!(
                    io.out,
                    "{:<width$}  {:>8}  {:>8}  {:<6}  {}",
                    o.id, o.expected_degree, computed, result, o.citation
                );
                for f in &o.failures {
                    let _ = writeln!(io.out, "{:<width$}    {f}", "");
                }
            }
            let _ = writeln!(
                io.out,
                "{} of {} cases passed",
                outcomes.len() - failed.len(),
                outcomes.len()
            );
        }
        OutputKind::Json => io.json(&json!({
            "schema_version": SCHEMA_VERSION,
            "command": "verify-paper",
            "seed": cfg.seed,
            "fd_step": cfg.fd_step,
            "fd_tol": cfg.fd_tol,
            "points": points,
            "radius": radius,
            "cases": outcomes,
            "passed": outcomes.len() - failed.len(),
            "failed": failed,
        })),
    }
    if failed.is_empty() {
        EXIT_OK
    } else {
        let _ = writeln!(io.err, "failing cases: {}", failed.join(", "));
        EXIT_VERIFY
    }
}

fn cmd_crosscheck(
    io: &mut Io,
    cfg: &CommandConfig,
    g: GeometryId,
    points: usize,
    radius: f64,
    src: &str,
) -> i32 {
    let result = parse_with(src, g.notation())
        .map_err(Error::from)
        .and_then(|f: Expression| {
            cross_check_within(g, &f, points, cfg.fd_step, cfg.fd_tol, cfg.seed, radius)
        });
    let reports = match result {
        Ok(r) => r,
        Err(e) => return io.fail(&e, Some(src)),
    };
    let all_ok = reports.iter().all(|r| r.within_tol);
    match cfg.output {
        OutputKind::Text => {
            let _ = writeln!(
                io.out,
                "{:>9} {:>9} {:>9}  {:>24}  {:>24}  {:>10}  result",
                "x", "y", "t", "symbolic", "numeric", "rel_error"
            );
            for r in &reports {
                let _ = writeln!(
                    io.out,
                    "{:>9.5} {:>9.5} {:>9.5}  {:>24}  {:>24}  {:>10.3e}  {}",
                    r.point.x,
                    r.point.y,
                    r.point.t,
                    format!("{:.6e}", r.symbolic),
                    format!("{:.6e}", r.numeric),
                    r.rel_error,
                    if r.within_tol { "PASS" } else { "FAIL" }
                );
            }
        }
        OutputKind::Json => {
            let rows: Vec<_> = reports
                .iter()
                .map(|r| {
                    json!({
                        "point": [r.point.x, r.point.y, r.point.t],
                        "symbolic": [r.symbolic.re, r.symbolic.im],
                        "numeric": [r.numeric.re, r.numeric.im],
                        "rel_error": r.rel_error,
                        "within_tol": r.within_tol,
                    })
                })
                .collect();
            io.json(&json!({
                "schema_version": SCHEMA_VERSION,
                "command": "crosscheck",
                "geometry": g,
                "seed": cfg.seed,
                "fd_step": cfg.fd_step,
                "fd_tol": cfg.fd_tol,
                "radius": radius,
                "reports": rows,
            }));
        }
    }
    if all_ok {
        EXIT_OK
    } else {
        let _ = writeln!(
            io.err,
            "error: finite-difference check exceeded tolerance {:e}",
            cfg.fd_tol
        );
        EXIT_NUMERIC
    }
}
