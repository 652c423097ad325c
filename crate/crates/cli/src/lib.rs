//! Command-line front end for `ratrel-core`.
//!
//! [`run`] takes the full argument vector and two writers and returns the
//! process exit code: 0 on success, 1 when an axiom check or a certification
//! fails, 2 for usage and input errors.

use std::fmt;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use ratrel_core::approx::{
    approx_boost, approx_orthogonal, approx_poincare, observer_with_velocity, ApproxError, OrthogonalSpec,
    PlanarRotation,
};
use ratrel_core::axioms::{run_suite, witness_axthexp_minus, Axiom, CheckConfig};
use ratrel_core::model::{Scenario, ID};
use ratrel_core::sphere::{nearest_rational_direction_certified, DEFAULT_MAX_BITS};
use ratrel_core::{BoostSpec, Model, PoincareSpec, Rational, SpacetimeVec};

pub const OUTPUT_ENV: &str = "RATREL_OUTPUT";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputMode {
    Human,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "ratrel", version, about = "Exact rational special relativity: certified approximations and axiom audits")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, env = OUTPUT_ENV, default_value = "human")]
    pub output: OutputMode,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rational unit vector close to the direction of a target vector.
    Sphere {
        /// Target vector, comma separated fractions.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        target: Vec<Fraction>,
        #[arg(long)]
        eps: Fraction,
    },
    /// Rational Lorentz boost close to the boost of a given speed.
    Boost {
        #[arg(long, allow_hyphen_values = true)]
        speed: Fraction,
        #[arg(long)]
        eps: Fraction,
        #[command(flatten)]
        dim: DimArg,
    },
    /// Exactly orthogonal matrix close to a product of planar rotations on
    /// the d-1 spatial coordinates.
    Ortho {
        /// Rotation plane `i,j` (1-based); repeat for a chain.
        #[arg(long, required = true)]
        plane: Vec<String>,
        /// Rotate axis i toward `(a, b)` in the plane; one per `--plane`.
        #[arg(long, required = true, allow_hyphen_values = true)]
        toward: Vec<String>,
        #[arg(long)]
        eps: Fraction,
        #[command(flatten)]
        dim: DimArg,
    },
    /// Rational Poincare map close to `x -> O B_v O^-1 x + a`.
    Poincare {
        /// JSON file with the factored target; replaces the other target flags.
        #[arg(long, conflicts_with_all = ["speed", "toward", "translation"])]
        spec: Option<PathBuf>,
        #[arg(long, allow_hyphen_values = true, default_value = "0")]
        speed: Fraction,
        /// Boost direction `a,b` in spatial plane (1, 2).
        #[arg(long, allow_hyphen_values = true)]
        toward: Option<String>,
        /// Translation, comma separated fractions.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        translation: Option<Vec<Fraction>>,
        #[arg(long)]
        eps: Fraction,
        #[command(flatten)]
        dim: DimArg,
    },
    /// Rational observer moving with nearly the given velocity.
    Observer {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        velocity: Vec<Fraction>,
        #[arg(long)]
        eps: Fraction,
        #[command(flatten)]
        dim: DimArg,
    },
    /// Observer witnessing the slow-motion axiom for a velocity, seen from an
    /// existing observer.
    Witness {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        velocity: Vec<Fraction>,
        #[arg(long)]
        eps: Fraction,
        /// Observer of the model doing the seeing.
        #[arg(long, default_value = ID)]
        observer: String,
        #[arg(long)]
        scenario: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Model construction and audits.
    #[command(subcommand)]
    Model(ModelCommand),
}

#[derive(Debug, Subcommand)]
pub enum ModelCommand {
    /// Run the axiom checkers.
    Check {
        #[arg(long)]
        scenario: Option<PathBuf>,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Restrict to these axioms; repeatable.
        #[arg(long)]
        axiom: Vec<Axiom>,
        /// Dimension of the built-in scenario.
        #[arg(long, default_value_t = 4, value_parser = parse_dim)]
        dim: usize,
        /// Run samples on one thread.
        #[arg(long)]
        sequential: bool,
    },
    /// Print a scenario file (the built-in one unless `--scenario` is given).
    Show {
        #[arg(long)]
        scenario: Option<PathBuf>,
        #[arg(long, default_value_t = 4, value_parser = parse_dim)]
        dim: usize,
    },
}

#[derive(Debug, Args)]
pub struct DimArg {
    /// Spacetime dimension d >= 2.
    #[arg(long, value_parser = parse_dim)]
    dim: Option<usize>,
}

impl DimArg {
    fn or_default(&self) -> usize {
        self.dim.unwrap_or(4)
    }
}

fn parse_dim(s: &str) -> Result<usize, String> {
    let d: usize = s.parse().map_err(|_| format!("expected an integer, got {s:?}"))?;
    if d < 2 {
        return Err(format!("dimension must be at least 2, got {d}"));
    }
    Ok(d)
}

/// A `p/q` fraction flag value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fraction(pub Rational);

impl std::str::FromStr for Fraction {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.trim().parse().map(Fraction).map_err(|e| format!("{e}"))
    }
}

fn values(xs: &[Fraction]) -> Vec<Rational> {
    xs.iter().map(|f| f.0.clone()).collect()
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Failed(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failed(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Failed(m) => f.write_str(m),
        }
    }
}

fn usage(flag: &str, msg: impl fmt::Display) -> CliError {
    CliError::Usage(format!("{flag}: {msg}"))
}

/// Input errors exit 2; running out of search depth is a certification
/// failure and exits 1.
fn approx_err(flag: &str, e: ApproxError) -> CliError {
    match e {
        ApproxError::SearchExhausted { .. } => CliError::Failed(e.to_string()),
        e => usage(flag, e),
    }
}

fn positive_eps(eps: &Fraction) -> Result<Rational, CliError> {
    if eps.0.is_positive() {
        Ok(eps.0.clone())
    } else {
        Err(usage("--eps", format!("eps must be positive, got {}", eps.0)))
    }
}

fn parse_pair<T: std::str::FromStr>(flag: &str, s: &str) -> Result<[T; 2], CliError>
where
    T::Err: fmt::Display,
{
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 2 {
        return Err(usage(flag, format!("expected two comma-separated values, got {s:?}")));
    }
    let a = parts[0].parse().map_err(|e| usage(flag, e))?;
    let b = parts[1].parse().map_err(|e| usage(flag, e))?;
    Ok([a, b])
}

fn load_model(path: Option<&PathBuf>, dim: usize) -> Result<Model, CliError> {
    match path {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| usage("--scenario", format!("{}: {e}", p.display())))?;
            Model::from_json(&text).map_err(|e| usage("--scenario", e))
        }
        None => Model::default_scenario(dim).map_err(|e| usage("--dim", e)),
    }
}

/// Result of a command: a JSON document, the human rendering, and whether
/// the command reports a failed check.
struct Report {
    doc: Value,
    human: String,
    failed: bool,
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn render_rows(m: &ratrel_core::RationalMatrix) -> String {
    m.rows()
        .iter()
        .map(|r| {
            let cells: Vec<String> = r.iter().map(ToString::to_string).collect();
            format!("  [{}]", cells.join(", "))
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn fracs(xs: &[Rational]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

fn execute(command: &Command) -> Result<Report, CliError> {
    match command {
        Command::Sphere { target, eps } => {
            let eps = positive_eps(eps)?;
            let target = values(target);
            let found = nearest_rational_direction_certified(&target, &eps, DEFAULT_MAX_BITS).map_err(|e| match e {
                ratrel_core::sphere::SphereError::SearchExhausted { .. } => CliError::Failed(e.to_string()),
                e => usage("--target", e),
            })?;
            let human = format!(
                "point: ({})\n|p - target/|target||^2 <= {}\ngrid level: {}",
                fracs(found.point.coords()),
                found.dist_sq_bound,
                found.level
            );
            Ok(Report {
                doc: json!({
                    "command": "sphere",
                    "inputs": { "target": target, "eps": eps },
                    "outputs": { "point": found.point, "dist_sq_bound": found.dist_sq_bound, "level": found.level },
                }),
                human,
                failed: false,
            })
        }
        Command::Boost { speed, eps, dim } => {
            let eps = positive_eps(eps)?;
            let d = dim.or_default();
            let spec = BoostSpec::new(speed.0.clone()).map_err(|e| usage("--speed", e))?;
            let (w, cert) = approx_boost(&spec, &eps, d).map_err(|e| approx_err("--speed", e))?;
            let human = format!(
                "speed w = {} (sqrt(1 - w^2) = {})\nmatrix:\n{}\nerror bound: {}",
                w.w(),
                w.r(),
                render_rows(&cert.output),
                cert.error_bound
            );
            Ok(Report {
                doc: json!({
                    "command": "boost",
                    "inputs": { "speed": speed.0, "eps": eps, "dim": d },
                    "outputs": { "speed": w.w(), "sqrt_one_minus_speed_sq": w.r(), "matrix": cert.output },
                    "certificate": cert,
                }),
                human,
                failed: false,
            })
        }
        Command::Ortho { plane, toward, eps, dim } => {
            let eps = positive_eps(eps)?;
            let d = dim.or_default();
            if plane.len() != toward.len() {
                return Err(usage(
                    "--toward",
                    format!("{} planes but {} directions; give one --toward per --plane", plane.len(), toward.len()),
                ));
            }
            let rotations = plane
                .iter()
                .zip(toward)
                .map(|(p, t)| {
                    let [i, j] = parse_pair::<usize>("--plane", p)?;
                    let [a, b] = parse_pair::<Rational>("--toward", t)?;
                    Ok(PlanarRotation {
                        plane: (i, j),
                        toward: [a, b],
                    })
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            let spec = OrthogonalSpec {
                rotations,
                sign_mask: None,
            };
            let (m, cert) = approx_orthogonal(&spec, &eps, d - 1).map_err(|e| approx_err("--plane", e))?;
            let human = format!("matrix:\n{}\nerror bound: {}", render_rows(&m), cert.error_bound);
            Ok(Report {
                doc: json!({
                    "command": "ortho",
                    "inputs": { "spec": spec, "eps": eps, "dim": d },
                    "outputs": { "matrix": m },
                    "certificate": cert,
                }),
                human,
                failed: false,
            })
        }
        Command::Poincare {
            spec,
            speed,
            toward,
            translation,
            eps,
            dim,
        } => {
            let eps = positive_eps(eps)?;
            let d = dim.or_default();
            let spec = match spec {
                Some(path) => {
                    let text =
                        std::fs::read_to_string(path).map_err(|e| usage("--spec", format!("{}: {e}", path.display())))?;
                    serde_json::from_str::<PoincareSpec>(&text).map_err(|e| usage("--spec", e))?
                }
                None => {
                    let a = match translation {
                        Some(t) => SpacetimeVec::new(values(t)),
                        None => SpacetimeVec::origin(d),
                    };
                    if a.dim() != d {
                        return Err(usage("--translation", format!("expected {d} components, got {}", a.dim())));
                    }
                    match toward {
                        Some(t) => {
                            let dir = parse_pair::<Rational>("--toward", t)?;
                            PoincareSpec::boost_toward(speed.0.clone(), dir, a).map_err(|e| usage("--speed", e))?
                        }
                        None => PoincareSpec {
                            translation: a,
                            boost: BoostSpec::new(speed.0.clone()).map_err(|e| usage("--speed", e))?,
                            ..PoincareSpec::identity(d)
                        },
                    }
                }
            };
            let (map, cert) = approx_poincare(&spec, &eps, d).map_err(|e| approx_err("--spec", e))?;
            let human = format!(
                "linear part:\n{}\ntranslation: {}\nerror bound: {}",
                render_rows(map.linear.matrix()),
                map.translation,
                cert.error_bound
            );
            Ok(Report {
                doc: json!({
                    "command": "poincare",
                    "inputs": { "spec": spec, "eps": eps, "dim": d },
                    "outputs": { "map": map },
                    "certificate": cert,
                }),
                human,
                failed: false,
            })
        }
        Command::Observer { velocity, eps, dim } => {
            let eps = positive_eps(eps)?;
            let v = values(velocity);
            let d = dim.dim.unwrap_or(v.len() + 1);
            if v.len() + 1 != d {
                return Err(usage("--velocity", format!("expected {} components for d = {d}, got {}", d - 1, v.len())));
            }
            let obs = observer_with_velocity(&v, &eps, d).map_err(|e| approx_err("--velocity", e))?;
            let cert = &obs.certificate;
            let human = format!(
                "velocity w = ({})\nlinear part:\n{}\nerror bound: {}\n|v - w| <= {}",
                fracs(&obs.achieved),
                render_rows(obs.map.linear.matrix()),
                cert.error_bound,
                cert.velocity_error_bound.clone().unwrap_or_else(Rational::zero)
            );
            Ok(Report {
                doc: json!({
                    "command": "observer",
                    "inputs": { "velocity": v, "eps": eps, "dim": d },
                    "outputs": { "velocity": obs.achieved, "map": obs.map },
                    "certificate": cert,
                }),
                human,
                failed: false,
            })
        }
        Command::Witness {
            velocity,
            eps,
            observer,
            scenario,
            seed,
        } => {
            let eps = positive_eps(eps)?;
            let v = values(velocity);
            let model = load_model(scenario.as_ref(), v.len() + 1)?;
            if model.dimension() != v.len() + 1 {
                return Err(usage(
                    "--velocity",
                    format!("expected {} components for d = {}, got {}", model.dimension() - 1, model.dimension(), v.len()),
                ));
            }
            let m = model
                .observer(observer)
                .ok_or_else(|| usage("--observer", format!("no observer named '{observer}'")))?;
            let w = witness_axthexp_minus(&model, m, &v, &eps, *seed).map_err(|e| match e {
                ratrel_core::axioms::WitnessError::Approx(e) => approx_err("--velocity", e),
                e => usage("--velocity", e),
            })?;
            let verified = w.verify(m, &v, &eps);
            let human = format!(
                "observer k = m o P*:\n{}\ntranslation: {}\nx = {}\ny = {}\nw = ({})\nlambda = {}\nverified: {}",
                render_rows(&w.observer.linear),
                w.observer.translation,
                w.x,
                w.y,
                fracs(&w.achieved),
                w.lambda,
                match &verified {
                    Ok(()) => "yes".to_string(),
                    Err(r) => format!("no ({r})"),
                }
            );
            Ok(Report {
                doc: json!({
                    "command": "witness",
                    "inputs": { "velocity": v, "eps": eps, "observer": observer, "seed": seed },
                    "outputs": { "witness": w, "verified": verified.is_ok() },
                }),
                human,
                failed: verified.is_err(),
            })
        }
        Command::Model(ModelCommand::Check {
            scenario,
            samples,
            seed,
            axiom,
            dim,
            sequential,
        }) => {
            let model = load_model(scenario.as_ref(), *dim)?;
            let mut config = CheckConfig::new(*samples, *seed);
            if !axiom.is_empty() {
                config.axioms = axiom.clone();
            }
            config.parallel = !sequential;
            let reports = run_suite(&model, &config);
            let failed = reports.iter().any(|r| !r.passed());
            let mut human: Vec<String> = reports
                .iter()
                .map(|r| {
                    let status = if r.passed() { "pass" } else { "FAIL" };
                    let mut line = format!("{:<10} {status}  {} samples", r.axiom.name(), r.samples);
                    if r.skipped > 0 {
                        line.push_str(&format!(" ({} without a simultaneous pair)", r.skipped));
                    }
                    if let Some(c) = &r.light_speed {
                        line.push_str(&format!(", light speed {c}"));
                    }
                    if let (Some(i), Some(w)) = (r.failing_sample, &r.witness) {
                        line.push_str(&format!("\n    sample {i}: {}", to_value(w)));
                    }
                    line
                })
                .collect();
            human.push(if failed {
                "some axioms failed".to_string()
            } else {
                format!("all {} axioms pass", reports.len())
            });
            Ok(Report {
                doc: json!({
                    "command": "model check",
                    "inputs": { "dimension": model.dimension(), "samples": samples, "seed": seed,
                                "scenario": scenario.as_ref().map(|p| p.display().to_string()) },
                    "reports": reports,
                    "all_pass": !failed,
                }),
                human: human.join("\n"),
                failed,
            })
        }
        Command::Model(ModelCommand::Show { scenario, dim }) => {
            let model = load_model(scenario.as_ref(), *dim)?;
            let s: Scenario = model.to_scenario();
            Ok(Report {
                doc: to_value(&s),
                human: s.to_json(),
                failed: false,
            })
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    match execute(&cli.command) {
        Ok(report) => {
            let _ = match cli.output {
                OutputMode::Json => writeln!(out, "{}", serde_json::to_string_pretty(&report.doc).expect("json")),
                OutputMode::Human => writeln!(out, "{}", report.human),
            };
            if report.failed {
                1
            } else {
                0
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if cli.output == OutputMode::Json {
                let doc = json!({ "error": e.to_string(), "exit_code": e.code() });
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("json"));
            }
            e.code()
        }
    }
}
