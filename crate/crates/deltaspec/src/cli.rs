//! Command-line front end. Potentials are passed as inline JSON (either a
//! named spec like `{"kind":"square_well","params":{"depth":10.0}}` or a raw
//! `{"breakpoints":[...],"values":[...]}` object) or as `@path` to a file
//! holding the same JSON.
//!
//! Exit codes: 0 success, 1 domain/precondition error, 2 usage error.

use crate::asymptotics::{
    delta_prediction, low_lying_prediction, resonant_finite_prediction, Convention,
};
use crate::error::{Error, Result};
use crate::harness::{sweep, verify_counting, SweepConfig};
use crate::point::{
    closed_form, exp_moment, harmonic_moment, interface_spectrum, sine_moment, threshold_alpha0,
    InterfaceParams,
};
use crate::potential::{Potential, PotentialSpec};
use crate::spectrum::{
    count_negative, negative_eigenvalues, regge_eigenvalues, resonance_set, theta_eta,
};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::io::Write;

#[derive(Parser)]
#[command(
    name = "deltaspec",
    about = "Negative spectra, resonances and point-interaction limits of 1D Schrödinger operators with piecewise-constant potentials",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Table,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ConventionArg {
    Minus,
    Plus,
}

impl From<ConventionArg> for Convention {
    fn from(c: ConventionArg) -> Convention {
        match c {
            ConventionArg::Minus => Convention::DerivationMinus,
            ConventionArg::Plus => Convention::TheoremPlus,
        }
    }
}

#[derive(Args)]
struct PotentialArg {
    /// Potential as inline JSON or @file.
    #[arg(long)]
    potential: String,
}

#[derive(Subcommand)]
enum Command {
    /// Negative eigenvalues of -d²/dx² + q.
    Eigs {
        #[command(flatten)]
        potential: PotentialArg,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[arg(long, value_enum, default_value = "table")]
        format: OutputFormat,
    },
    /// Positive eigenvalues of the Regge problem on [-1, 1].
    Regge {
        #[command(flatten)]
        potential: PotentialArg,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[arg(long, value_enum, default_value = "table")]
        format: OutputFormat,
    },
    /// Number of negative eigenvalues.
    Count {
        #[command(flatten)]
        potential: PotentialArg,
        /// Also print the Regge / resonance-set cross counts.
        #[arg(long)]
        full: bool,
    },
    /// Couplings in (lo, hi) at which α·V is resonant.
    #[command(allow_negative_numbers = true)]
    Resonances {
        #[command(flatten)]
        potential: PotentialArg,
        #[arg(long, default_value_t = 0.0)]
        lo: f64,
        #[arg(long, default_value_t = 1.0)]
        hi: f64,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, value_enum, default_value = "table")]
        format: OutputFormat,
    },
    /// Interface parameters (θ, η) of the limit point interaction.
    ThetaEta {
        /// Resonant shape V (inline JSON or @file).
        #[arg(long)]
        v: String,
        /// First-order shape U (inline JSON or @file).
        #[arg(long)]
        u: String,
    },
    /// Threshold coupling α₀ of the δ interaction over a background.
    Threshold {
        /// Piecewise-constant background W (inline JSON or @file).
        #[arg(long, conflicts_with = "moment")]
        w: Option<String>,
        /// Analytic background: "sine:b" for b²(1+sin x) or "harmonic:k" for kx².
        #[arg(long)]
        moment: Option<String>,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Asymptotic predictions (coefficients only, no sweep).
    Predict {
        #[command(subcommand)]
        model: PredictCommand,
    },
    /// ε-sweep comparing computed spectra against the predictions.
    Sweep {
        /// δ'-like shape V (inline JSON or @file).
        #[arg(long)]
        v: Option<String>,
        /// δ-like shape U (inline JSON or @file).
        #[arg(long)]
        u: Option<String>,
        /// Background W (inline JSON or @file).
        #[arg(long)]
        w: Option<String>,
        /// Comma-separated decreasing ε values.
        #[arg(long, default_value = "0.08,0.04,0.02,0.01")]
        eps: String,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[arg(long, value_enum, default_value = "minus")]
        convention: ConventionArg,
        #[arg(long, value_enum, default_value = "csv")]
        format: OutputFormat,
        /// Output file (stdout when omitted).
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Interface-model spectrum over a background.
    #[command(allow_negative_numbers = true)]
    Interface {
        /// Background W ≥ 0 (inline JSON or @file); zero when omitted.
        #[arg(long)]
        w: Option<String>,
        /// δ strength α (interface y'(+0) - y'(-0) = α y(0)).
        #[arg(long, conflicts_with_all = ["theta", "eta"])]
        alpha: Option<f64>,
        /// θ of the (θ, η) interface.
        #[arg(long, requires = "eta")]
        theta: Option<f64>,
        /// η of the (θ, η) interface.
        #[arg(long, requires = "theta")]
        eta: Option<f64>,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Runs the full acceptance suite and prints one line per criterion.
    Verify,
}

#[derive(Subcommand)]
enum PredictCommand {
    /// Rates and first-order corrections of the diverging levels.
    LowLying {
        #[arg(long)]
        v: String,
        #[arg(long)]
        u: String,
        #[arg(long, value_enum, default_value = "minus")]
        convention: ConventionArg,
    },
    /// Two-term expansion of the δ-generated level over a background.
    Delta {
        #[arg(long)]
        w: Option<String>,
        #[arg(long)]
        u: String,
    },
    /// Limit of the finite level for a resonant ε⁻² shape.
    Resonant {
        #[arg(long)]
        v: String,
        #[arg(long)]
        u: String,
    },
}

fn parse_potential(text: &str) -> Result<Potential> {
    const OP: &str = "parse_potential";
    let body = if let Some(path) = text.strip_prefix('@') {
        std::fs::read_to_string(path)
            .map_err(|e| Error::invalid(OP, format!("cannot read {path}: {e}")))?
    } else {
        text.to_string()
    };
    let value: serde_json::Value = serde_json::from_str(&body)
        .map_err(|e| Error::invalid(OP, format!("invalid JSON: {e}")))?;
    if value.get("kind").is_some() {
        let spec: PotentialSpec = serde_json::from_value(value)
            .map_err(|e| Error::invalid(OP, format!("invalid potential spec: {e}")))?;
        spec.build()
    } else {
        serde_json::from_value(value)
            .map_err(|e| Error::invalid(OP, format!("invalid potential: {e}")))
    }
}

fn parse_optional_potential(text: Option<&str>) -> Result<Potential> {
    match text {
        Some(t) => parse_potential(t),
        None => Potential::make_piecewise(vec![-1.0, 1.0], vec![0.0]),
    }
}

fn parse_eps_list(text: &str) -> Result<Vec<f64>> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|e| Error::invalid("sweep", format!("bad eps value '{s}': {e}")))
        })
        .collect()
}

fn parse_moment_name(text: &str) -> Result<Box<dyn Fn(f64) -> f64>> {
    const OP: &str = "threshold_alpha0";
    let (name, value) = text.split_once(':').ok_or_else(|| {
        Error::invalid(
            OP,
            format!("moment must be 'sine:b' or 'harmonic:k', got '{text}'"),
        )
    })?;
    let param: f64 = value
        .parse()
        .map_err(|e| Error::invalid(OP, format!("bad moment parameter '{value}': {e}")))?;
    match name {
        "sine" => Ok(Box::new(sine_moment(param))),
        "harmonic" => {
            if param <= 0.0 {
                return Err(Error::invalid(OP, "harmonic moment needs k > 0"));
            }
            Ok(Box::new(harmonic_moment(param)))
        }
        other => Err(Error::invalid(OP, format!("unknown moment '{other}'"))),
    }
}

/// Machine format: 17 significant digits.
fn m17(x: f64) -> String {
    format!("{x:.16e}")
}

fn run_command(command: Command, out: &mut dyn Write) -> Result<()> {
    match command {
        Command::Eigs {
            potential,
            tol,
            format,
        } => {
            let q = parse_potential(&potential.potential)?;
            let results = negative_eigenvalues(&q, tol)?;
            match format {
                OutputFormat::Json => {
                    let doc: Vec<serde_json::Value> = results
                        .iter()
                        .map(|r| {
                            serde_json::json!({
                                "node_index": r.node_index,
                                "omega": r.omega,
                                "lambda": r.lambda(),
                                "mismatch_residual": r.mismatch_residual,
                            })
                        })
                        .collect();
                    writeln!(out, "{}", serde_json::to_string_pretty(&doc).unwrap()).ok();
                }
                OutputFormat::Csv => {
                    writeln!(out, "k,omega,lambda,residual").ok();
                    for r in &results {
                        writeln!(
                            out,
                            "{},{},{},{}",
                            r.node_index,
                            m17(r.omega),
                            m17(r.lambda()),
                            m17(r.mismatch_residual)
                        )
                        .ok();
                    }
                }
                OutputFormat::Table => {
                    if results.is_empty() {
                        writeln!(out, "no negative eigenvalues").ok();
                    }
                    for r in &results {
                        writeln!(
                            out,
                            "k={}  omega={:.6}  lambda={:.6}",
                            r.node_index,
                            r.omega,
                            r.lambda()
                        )
                        .ok();
                    }
                }
            }
        }
        Command::Regge {
            potential,
            tol,
            format,
        } => {
            let q = parse_potential(&potential.potential)?;
            let omegas = regge_eigenvalues(&q, tol)?;
            match format {
                OutputFormat::Json => {
                    writeln!(out, "{}", serde_json::to_string(&omegas).unwrap()).ok();
                }
                OutputFormat::Csv => {
                    writeln!(out, "omega").ok();
                    for w in &omegas {
                        writeln!(out, "{}", m17(*w)).ok();
                    }
                }
                OutputFormat::Table => {
                    if omegas.is_empty() {
                        writeln!(out, "no positive Regge eigenvalues").ok();
                    }
                    for w in &omegas {
                        writeln!(out, "omega={w:.6}").ok();
                    }
                }
            }
        }
        Command::Count { potential, full } => {
            let q = parse_potential(&potential.potential)?;
            if full {
                let report = verify_counting(&q)?;
                writeln!(out, "line operator levels: {}", report.n_t1).ok();
                writeln!(out, "Regge eigenvalues:    {}", report.n_regge).ok();
                writeln!(
                    out,
                    "resonances in (0,1):  {} -> reconciled {} (birth term {})",
                    report.literal_count,
                    report.reconciled,
                    report.reconciled - report.literal_count
                )
                .ok();
                writeln!(
                    out,
                    "moment bound:         {:.6}, holds: {}",
                    report.bound_value, report.bound_holds
                )
                .ok();
                writeln!(out, "consistent:           {}", report.consistent).ok();
                if !report.literal_matches {
                    writeln!(
                        out,
                        "note: the resonance count alone differs from the level count; \
                         the weak-coupling birth term accounts for the difference"
                    )
                    .ok();
                }
            } else {
                writeln!(out, "{}", count_negative(&q)).ok();
            }
        }
        Command::Resonances {
            potential,
            lo,
            hi,
            tol,
            format,
        } => {
            let q = parse_potential(&potential.potential)?;
            let alphas = resonance_set(&q, lo, hi, tol)?;
            match format {
                OutputFormat::Json => {
                    writeln!(out, "{}", serde_json::to_string(&alphas).unwrap()).ok();
                }
                OutputFormat::Csv => {
                    writeln!(out, "alpha").ok();
                    for a in &alphas {
                        writeln!(out, "{}", m17(*a)).ok();
                    }
                }
                OutputFormat::Table => {
                    if alphas.is_empty() {
                        writeln!(out, "no resonant couplings in ({lo}, {hi})").ok();
                    }
                    for a in &alphas {
                        writeln!(out, "alpha={a:.6}").ok();
                    }
                }
            }
        }
        Command::ThetaEta { v, u } => {
            let vp = parse_potential(&v)?;
            let up = parse_potential(&u)?;
            let (theta, eta) = theta_eta(&vp, &up)?;
            writeln!(out, "theta={theta:.6}  eta={eta:.6}").ok();
        }
        Command::Threshold { w, moment, tol } => {
            let result = match (w, moment) {
                (Some(w_text), None) => {
                    let wp = parse_potential(&w_text)?;
                    if wp.min_value() < 0.0 {
                        return Err(Error::domain(
                            "threshold_alpha0",
                            "background W must be nonnegative",
                        ));
                    }
                    let moment_fn = exp_moment(&wp);
                    threshold_alpha0(&moment_fn, tol)?
                }
                (None, Some(m_text)) => {
                    let f = parse_moment_name(&m_text)?;
                    threshold_alpha0(&*f, tol)?
                }
                (None, None) => {
                    return Err(Error::invalid(
                        "threshold_alpha0",
                        "one of --w or --moment is required",
                    ))
                }
                (Some(_), Some(_)) => unreachable!("clap conflicts_with"),
            };
            writeln!(out, "{:.6}", result.alpha0).ok();
        }
        Command::Predict { model } => match model {
            PredictCommand::LowLying { v, u, convention } => {
                let vp = parse_potential(&v)?;
                let up = parse_potential(&u)?;
                let p = low_lying_prediction(&vp, &up, convention.into())?;
                writeln!(out, "k,omega,kappa").ok();
                for k in 0..p.len() {
                    writeln!(out, "{},{},{}", k, m17(p.omegas[k]), m17(p.kappas[k])).ok();
                }
            }
            PredictCommand::Delta { w, u } => {
                let wp = parse_optional_potential(w.as_deref())?;
                let up = parse_potential(&u)?;
                let p = delta_prediction(&wp, &up)?;
                writeln!(
                    out,
                    "lambda0={}  lambda1={}",
                    m17(p.lambda0),
                    m17(p.lambda1)
                )
                .ok();
                writeln!(out, "gamma={}  alpha1={}", m17(p.gamma), m17(p.alpha1)).ok();
                writeln!(
                    out,
                    "psi0={}  dpsi_left={}  dpsi_right={}",
                    m17(p.psi0),
                    m17(p.dpsi_left),
                    m17(p.dpsi_right)
                )
                .ok();
            }
            PredictCommand::Resonant { v, u } => {
                let vp = parse_potential(&v)?;
                let up = parse_potential(&u)?;
                let p = resonant_finite_prediction(&vp, &up)?;
                writeln!(out, "value={}  a={}", m17(p.value), m17(p.threshold_a)).ok();
            }
        },
        Command::Sweep {
            v,
            u,
            w,
            eps,
            tol,
            convention,
            format,
            out: out_path,
        } => {
            let config = SweepConfig {
                v: parse_optional_potential(v.as_deref())?,
                u: parse_optional_potential(u.as_deref())?,
                w: parse_optional_potential(w.as_deref())?,
                eps_list: parse_eps_list(&eps)?,
                tol,
                convention: convention.into(),
            };
            let report = sweep(&config)?;
            let body = match format {
                OutputFormat::Json => report.to_json(),
                OutputFormat::Csv | OutputFormat::Table => report.to_csv(),
            };
            match out_path {
                Some(path) => std::fs::write(&path, body).map_err(|e| {
                    Error::invalid("sweep", format!("cannot write {}: {e}", path.display()))
                })?,
                None => {
                    write!(out, "{body}").ok();
                }
            }
        }
        Command::Interface {
            w,
            alpha,
            theta,
            eta,
            tol,
        } => {
            let wp = parse_optional_potential(w.as_deref())?;
            let params = match (alpha, theta, eta) {
                (Some(a), None, None) => InterfaceParams::Delta { alpha: a },
                (None, Some(t), Some(e)) => InterfaceParams::ThetaEta { theta: t, eta: e },
                _ => {
                    return Err(Error::invalid(
                        "interface_spectrum",
                        "specify either --alpha or both --theta and --eta",
                    ))
                }
            };
            let results = interface_spectrum(&wp, &params, tol)?;
            if results.is_empty() {
                writeln!(out, "no negative eigenvalues").ok();
            }
            for r in &results {
                writeln!(out, "lambda={}  omega={}", m17(r.lambda()), m17(r.omega)).ok();
            }
            if let Some(cf) = closed_form(&params) {
                writeln!(out, "flat-background closed form: {}", m17(cf)).ok();
            }
        }
        Command::Verify => {
            let results = crate::acceptance::run_all();
            let mut all = true;
            for r in &results {
                writeln!(out, "{}", r.line()).ok();
                all &= r.passed;
            }
            if !all {
                return Err(Error::domain(
                    "verify",
                    "one or more acceptance criteria failed",
                ));
            }
        }
    }
    Ok(())
}

/// Parses and dispatches `argv` (including the program name), writing
/// regular output to `out`. Returns the process exit code: 0 on success,
/// 1 on a domain error, 2 on a usage error.
pub fn run<I, S>(argv: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    eprint!("{e}");
                    2
                }
            };
        }
    };
    match run_command(cli.command, out) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}
