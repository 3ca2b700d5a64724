//! Command-line frontend.

mod batch;
mod output;

use std::ffi::OsString;

use clap::{Args, Parser, Subcommand};

pub use batch::{run_family, Family, Suite};
pub use output::{
    CasimirOutput, CasimirRow, CpmOutput, EstimateOutput, IdentityOutput, Render, ShiftRow,
    SpinorTableOutput, VerifyOutput, WeightsOutput,
};

use crate::bochner::{
    cpm_holomorphic_eigenvalue, dolbeault_identities, identity_lines, kirchberg_bound,
    kirchberg_closed_form, weitzenboeck, BochnerError,
};
use crate::clifford::spinor_table;
use crate::gtrep::{build_representation, check_casimir_scalars, GtError};
use crate::linalg::Rational;
use crate::weights::{casimir_eigenvalue, tilde_casimir_eigenvalue, HighestWeight};
use crate::Budget;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "kahlergrad",
    version,
    about = "Exact verification of Clifford homomorphism and Bochner identities for U(m)"
)]
pub struct Cli {
    /// Emit JSON.
    #[arg(long, global = true, conflicts_with = "latex")]
    pub json: bool,
    /// Emit a standalone LaTeX document.
    #[arg(long, global = true)]
    pub latex: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Conformal weights, gamma constants and Casimir eigenvalues of a highest weight.
    Weights {
        /// Comma-separated highest weight, e.g. 2,1,0.
        #[arg(allow_hyphen_values = true)]
        rho: HighestWeight,
    },
    /// Bochner identities of one degree, the Weitzenboeck formula, or the
    /// Dolbeault and spin identities on (0,p)-forms.
    Identity {
        #[arg(allow_hyphen_values = true)]
        rho: HighestWeight,
        /// Degree of the identity.
        #[arg(long, default_value_t = 0)]
        q: u32,
        /// Emit the Weitzenboeck formula instead.
        #[arg(long, conflicts_with = "dolbeault")]
        weitzenboeck: bool,
        /// Emit the identities on (0,p)-forms; the weight must be (1,..,1,0,..,0).
        #[arg(long)]
        dolbeault: bool,
    },
    /// Run verification suites over a family of highest weights.
    Verify(VerifyArgs),
    /// Eigenvalue bound for the Dirac operator on a spin Kähler manifold.
    Estimate {
        /// Complex dimension.
        m: usize,
    },
    /// Conformal weights and gamma constants on (0,p)-forms for every p.
    SpinorTable { m: usize },
    /// Eigenvalue of D_{-i}^*D_{-i} on holomorphic sections over complex projective space.
    Cpm {
        #[arg(allow_hyphen_values = true)]
        rho: HighestWeight,
        #[arg(long)]
        i: usize,
        /// Holomorphic sectional curvature.
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        r: Rational,
    },
    /// Casimir eigenvalues, checked against the matrices of the representation.
    Casimir {
        #[arg(allow_hyphen_values = true)]
        rho: HighestWeight,
        /// Highest degree.
        #[arg(long)]
        q: Option<u32>,
        #[command(flatten)]
        limits: Limits,
    },
}

#[derive(Debug, Clone, Args)]
pub struct Limits {
    /// Term budget for symbolic expansion [default: $KAHLERGRAD_BUDGET or 10000000].
    #[arg(long)]
    pub budget: Option<u64>,
    /// Largest representation dimension that will be built.
    #[arg(long, default_value_t = Budget::DEFAULT_DIM)]
    pub max_dim: u64,
}

impl Limits {
    pub fn budget(&self) -> Budget {
        let mut b = Budget::from_env();
        if let Some(t) = self.budget {
            b.max_terms = t;
        }
        b.max_dim = self.max_dim;
        b
    }
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// Rank, or an inclusive range such as 1-3.
    #[arg(long, default_value = "2", value_parser = parse_range)]
    pub m: (usize, usize),
    /// Weights have entries in -bound..=bound.
    #[arg(long, default_value_t = 1)]
    pub bound: i64,
    /// Highest degree for the degree-dependent identities.
    #[arg(long, default_value_t = 2)]
    pub q: u32,
    /// Suites to run; repeat or separate with commas.
    #[arg(long, value_enum, value_delimiter = ',', default_value = "all")]
    pub suite: Vec<Suite>,
    /// Worker threads; 0 uses all cores.
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
    #[command(flatten)]
    pub limits: Limits,
}

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let parse = |x: &str| x.trim().parse::<usize>().map_err(|e| format!("'{x}': {e}"));
    let (lo, hi) = match s.split_once('-') {
        Some((a, b)) => (parse(a)?, parse(b)?),
        None => {
            let v = parse(s)?;
            (v, v)
        }
    };
    if lo == 0 || lo > hi {
        return Err(format!("invalid range '{s}'"));
    }
    Ok((lo, hi))
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String, code: i32) -> Self {
        Outcome {
            stdout,
            stderr: String::new(),
            code,
        }
    }

    fn usage(msg: impl std::fmt::Display) -> Self {
        Outcome {
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
            code: EXIT_USAGE,
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli),
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_PASS
            };
            let text = e.render().to_string();
            if e.use_stderr() {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code,
                }
            } else {
                Outcome::ok(text, code)
            }
        }
    }
}

fn emit<T: Render>(value: &T, format: Format, code: i32) -> Outcome {
    match format {
        Format::Json => Outcome::ok(value.json() + "\n", code),
        Format::Latex => match value.latex() {
            Some(body) => Outcome::ok(output::latex_document(&body), code),
            None => Outcome::usage("LaTeX output is not available for this command"),
        },
        Format::Text => Outcome::ok(value.text(), code),
    }
}

pub fn execute(cli: &Cli) -> Outcome {
    let format = if cli.json {
        Format::Json
    } else if cli.latex {
        Format::Latex
    } else {
        Format::Text
    };
    match &cli.command {
        Command::Weights { rho } => match WeightsOutput::new(rho) {
            Ok(out) => emit(&out, format, EXIT_PASS),
            Err(e) => Outcome::usage(e),
        },
        Command::Identity {
            rho,
            q,
            weitzenboeck: w,
            dolbeault,
        } => {
            let result = if *w {
                weitzenboeck(rho)
                    .map(|id| IdentityOutput::new(rho, "weitzenboeck", None, None, vec![id]))
            } else if *dolbeault {
                match exterior_degree(rho) {
                    Some(p) => dolbeault_identities(rho.m(), p)
                        .map(|ids| IdentityOutput::new(rho, "dolbeault", None, Some(p), ids)),
                    None => {
                        return Outcome::usage(format!(
                            "{rho} is not the weight of a bundle of (0,p)-forms"
                        ))
                    }
                }
            } else {
                identity_lines(rho, *q)
                    .map(|ids| IdentityOutput::new(rho, "degree", Some(*q), None, ids))
            };
            match result {
                Ok(out) => emit(&out, format, EXIT_PASS),
                Err(e) => Outcome::usage(e),
            }
        }
        Command::Verify(args) => {
            if format == Format::Latex {
                return Outcome::usage("LaTeX output is not available for verify");
            }
            let family = Family {
                m_min: args.m.0,
                m_max: args.m.1,
                bound: args.bound,
                q_max: args.q,
            };
            let suites = Suite::expand(&args.suite);
            let out = run_family(&family, &suites, args.limits.budget(), args.jobs);
            let code = if out.report.all_pass() {
                EXIT_PASS
            } else {
                EXIT_FAIL
            };
            emit(&out, format, code)
        }
        Command::Estimate { m } => match kirchberg_bound(*m) {
            Ok(b) => {
                let out = EstimateOutput::new(b, kirchberg_closed_form(*m));
                let code = if out.bound_coefficient == out.closed_form {
                    EXIT_PASS
                } else {
                    EXIT_FAIL
                };
                emit(&out, format, code)
            }
            Err(e) => Outcome::usage(e),
        },
        Command::SpinorTable { m } => {
            if *m == 0 {
                return Outcome::usage("m must be at least 1");
            }
            match spinor_table(*m) {
                Ok(t) => emit(&SpinorTableOutput::new(t), format, EXIT_PASS),
                Err(e) => Outcome::usage(e),
            }
        }
        Command::Cpm { rho, i, r } => match cpm_holomorphic_eigenvalue(rho, *i, r) {
            Ok(v) => emit(&CpmOutput::new(rho, *i, r.clone(), v), format, EXIT_PASS),
            Err(e @ (BochnerError::NoGradient { .. } | BochnerError::Weight(_))) => {
                Outcome::usage(e)
            }
            Err(e) => Outcome::usage(e),
        },
        Command::Casimir { rho, q, limits } => {
            casimir(rho, q.unwrap_or(2 * rho.m() as u32), limits, format)
        }
    }
}

fn casimir(rho: &HighestWeight, q_max: u32, limits: &Limits, format: Format) -> Outcome {
    let mut rows = Vec::new();
    for q in 0..=q_max {
        match (casimir_eigenvalue(rho, q), tilde_casimir_eigenvalue(rho, q)) {
            (Ok(c), Ok(t)) => rows.push(CasimirRow { q, c, tilde_c: t }),
            (Err(e), _) | (_, Err(e)) => return Outcome::usage(e),
        }
    }
    let check = match build_representation(rho, limits.budget()) {
        Ok(rep) => match check_casimir_scalars(&rep, q_max) {
            Ok(r) => Some(r),
            Err(e) => return Outcome::usage(e),
        },
        Err(GtError::DimensionOverBudget { .. }) => None,
        Err(e) => return Outcome::usage(e),
    };
    let code = match &check {
        Some(r) if !r.all_pass() => EXIT_FAIL,
        _ => EXIT_PASS,
    };
    emit(&CasimirOutput::new(rho, rows, check), format, code)
}

/// `p` when `rho = (1_p, 0_{m-p})`.
fn exterior_degree(rho: &HighestWeight) -> Option<usize> {
    let p = rho.entries().iter().filter(|&&x| x == 1).count();
    (*rho == HighestWeight::exterior(rho.m(), p)).then_some(p)
}

/// Entry point for the binary; returns the process exit code.
pub fn main_with_args(args: impl IntoIterator<Item = OsString>) -> i32 {
    let out = run(args);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    out.code
}
