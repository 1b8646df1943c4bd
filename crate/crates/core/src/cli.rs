//! Command-line front end. Every non-usage invocation prints exactly one JSON
//! document on stdout; see the README for the schema.

use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::Value;

use crate::arith::{parse_rational, Rational};
use crate::conics::{
    circle_from_b, circle_from_d, enumerate_primitive_triples, hyperbola_from_pplus, param_convert, ConicParameter, ParamKind,
};
use crate::engine::{integrate_source, Method, VerificationDomain};
use crate::integrate::Antiderivative;
use crate::mercator::{mercator_y_numeric, project, GeoPoint};
use crate::trig::{parse_trig, verify_log_derivative};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "secant", version, about = "Integrate rational trigonometric expressions exactly")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Integrate a rational expression in sin(x), cos(x), ...
    Integrate {
        /// auto, gregory, barrow, weierstrass or modified-weierstrass
        #[arg(long, default_value = "auto")]
        method: String,
        /// Verification interval as LO,HI
        #[arg(long, allow_hyphen_values = true)]
        domain: Option<String>,
        /// Number of verification samples
        #[arg(long, default_value_t = 25)]
        samples: usize,
        /// Integrand; put it after `--` if it starts with a minus sign
        expr: String,
    },
    /// Check whether F = u'/u exactly
    #[command(name = "verify-logderiv")]
    VerifyLogderiv { f: String, u: String },
    /// Rational point on the circle or hyperbola for a parameter
    Param {
        #[arg(long, value_enum)]
        curve: CurveArg,
        #[arg(long, allow_hyphen_values = true)]
        value: String,
    },
    /// Primitive Pythagorean triples with bounded hypotenuse
    Triples {
        #[arg(long)]
        max_hypotenuse: u64,
    },
    /// Convert between the t, s, u, v parameters
    Convert {
        #[arg(long, value_enum)]
        from: ParamArg,
        #[arg(long, value_enum)]
        to: ParamArg,
        #[arg(long, allow_hyphen_values = true)]
        value: String,
    },
    /// Mercator map coordinates of a point on the unit sphere
    Mercator {
        #[arg(long, allow_hyphen_values = true)]
        lat: f64,
        #[arg(long, allow_hyphen_values = true)]
        lon: f64,
        /// Compute the ordinate by quadrature instead of the closed form
        #[arg(long)]
        numeric: bool,
        #[arg(long, requires = "numeric", default_value_t = 1e-10)]
        tol: f64,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CurveArg {
    CircleB,
    CircleD,
    Hyperbola,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ParamArg {
    T,
    S,
    U,
    V,
}

impl From<ParamArg> for ParamKind {
    fn from(p: ParamArg) -> Self {
        match p {
            ParamArg::T => ParamKind::T,
            ParamArg::S => ParamKind::S,
            ParamArg::U => ParamKind::U,
            ParamArg::V => ParamKind::V,
        }
    }
}

#[derive(Serialize)]
struct ErrorDoc<'a> {
    error: &'a str,
    message: String,
}

#[derive(Serialize)]
struct IntegrateDoc {
    input: String,
    requested: String,
    method: String,
    antiderivative: String,
    max_rel_error: f64,
    domain: [f64; 2],
    samples: usize,
}

#[derive(Serialize)]
struct PointDoc {
    curve: &'static str,
    parameter: String,
    x: String,
    y: String,
}

#[derive(Serialize)]
struct ConvertDoc {
    from: &'static str,
    to: &'static str,
    input: String,
    value: String,
}

#[derive(Serialize)]
struct MapDoc {
    x: f64,
    y: f64,
}

/// Renders an antiderivative with `+ C`; deterministic.
pub fn format_antiderivative(f: &Antiderivative) -> String {
    f.to_string()
}

fn domain_error(kind: &str, message: impl ToString) -> (i32, Value) {
    (EXIT_DOMAIN, serde_json::to_value(ErrorDoc { error: kind, message: message.to_string() }).expect("serializable"))
}

fn ok<T: Serialize>(doc: T) -> (i32, Value) {
    (EXIT_OK, serde_json::to_value(doc).expect("serializable"))
}

fn parse_value(text: &str) -> Result<Rational, (i32, Value)> {
    parse_rational(text).ok_or_else(|| domain_error("InvalidRational", format!("not a rational number: {text:?}")))
}

fn parse_domain(text: &str) -> Option<(f64, f64)> {
    let (lo, hi) = text.split_once(',')?;
    Some((lo.trim().replace('\u{2212}', "-").parse().ok()?, hi.trim().replace('\u{2212}', "-").parse().ok()?))
}

fn dispatch(cmd: Command) -> (i32, Value) {
    match cmd {
        Command::Integrate { method, domain, samples, expr } => {
            let Some(m) = Method::from_name(&method) else {
                return domain_error("UnknownMethod", format!("unknown method {method:?}"));
            };
            let mut dom = VerificationDomain { samples, ..VerificationDomain::default() };
            if let Some(text) = domain {
                let Some((lo, hi)) = parse_domain(&text) else {
                    return domain_error("InvalidDomain", format!("expected LO,HI, got {text:?}"));
                };
                dom.lo = lo;
                dom.hi = hi;
            }
            if let Err(e) = VerificationDomain::new(dom.lo, dom.hi, dom.samples, dom.h) {
                return domain_error("InvalidDomain", e);
            }
            let report = integrate_source(&expr, m, &dom);
            match (report.antiderivative, report.verification, report.chosen) {
                (Some(f), Some(v), Some(k)) => ok(IntegrateDoc {
                    input: expr,
                    requested: m.to_string(),
                    method: k.name().to_string(),
                    antiderivative: format_antiderivative(&f),
                    max_rel_error: v.max_rel_error,
                    domain: [v.domain.0, v.domain.1],
                    samples: v.samples,
                }),
                _ => {
                    let e = report.failure.expect("failed report carries an error");
                    domain_error(e.kind_name(), e)
                }
            }
        }
        Command::VerifyLogderiv { f, u } => {
            let parsed = parse_trig(&f).and_then(|fr| parse_trig(&u).map(|ur| (fr, ur)));
            match parsed {
                Ok((fr, ur)) => ok(serde_json::json!({
                    "f": f,
                    "u": u,
                    "holds": verify_log_derivative(&fr, &ur),
                })),
                Err(e) => domain_error("SyntaxError", e),
            }
        }
        Command::Param { curve, value } => {
            let v = match parse_value(&value) {
                Ok(v) => v,
                Err(e) => return e,
            };
            let (name, point) = match curve {
                CurveArg::CircleB => ("circle-b", Ok(circle_from_b(&v))),
                CurveArg::CircleD => ("circle-d", Ok(circle_from_d(&v))),
                CurveArg::Hyperbola => ("hyperbola", hyperbola_from_pplus(&v)),
            };
            match point {
                Ok(p) => ok(PointDoc { curve: name, parameter: v.to_string(), x: p.x.to_string(), y: p.y.to_string() }),
                Err(e) => domain_error("ZeroParameter", e),
            }
        }
        Command::Triples { max_hypotenuse } => {
            let list: Vec<[u64; 3]> = enumerate_primitive_triples(max_hypotenuse)
                .iter()
                .map(|t| {
                    let (x, y, z) = t.as_tuple();
                    [x, y, z].map(|n| n.to_u64().expect("bounded by max_hypotenuse"))
                })
                .collect();
            ok(list)
        }
        Command::Convert { from, to, value } => {
            let v = match parse_value(&value) {
                Ok(v) => v,
                Err(e) => return e,
            };
            let (from, to): (ParamKind, ParamKind) = (from.into(), to.into());
            match param_convert(&ConicParameter { kind: from, value: v.clone() }, to) {
                Ok(p) => ok(ConvertDoc { from: from.name(), to: to.name(), input: v.to_string(), value: p.value.to_string() }),
                Err(e) => domain_error("PoleInConversion", e),
            }
        }
        Command::Mercator { lat, lon, numeric, tol } => {
            let point = project(GeoPoint { lon, lat }, None);
            let point = match (point, numeric) {
                (Ok(p), true) => mercator_y_numeric(lat, tol).map(|y| MapDoc { x: p.x, y }),
                (Ok(p), false) => Ok(MapDoc { x: p.x, y: p.y }),
                (Err(e), _) => Err(e),
            };
            match point {
                Ok(doc) => ok(doc),
                Err(e) => {
                    let kind = match e {
                        crate::mercator::MercatorError::LatitudeOutOfRange { .. } => "LatitudeOutOfRange",
                        crate::mercator::MercatorError::InvalidTolerance { .. } => "InvalidTolerance",
                        crate::mercator::MercatorError::InvalidStep { .. } => "InvalidStep",
                        crate::mercator::MercatorError::ToleranceNotMet { .. } => "ToleranceNotMet",
                    };
                    domain_error(kind, e)
                }
            }
        }
    }
}

/// Runs the CLI on `argv` (including the program name) and returns the exit code.
pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    let (code, doc) = dispatch(cli.command);
    if let Some(msg) = doc.get("message").and_then(Value::as_str) {
        let _ = writeln!(err, "error: {msg}");
    }
    let _ = writeln!(out, "{}", serde_json::to_string(&doc).expect("serializable"));
    code
}
