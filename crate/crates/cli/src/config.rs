//! Argument parsing into a validated [`RunConfig`], and the inverse rendering.

use std::fmt;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Parser, ValueEnum};
use ghm_core::arith::parse_rational;
use ghm_core::{ComplexRational, Rational, DEFAULT_PRECISION};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyKind {
    Muntz,
    Gmuntz,
    Lommel,
    Askey,
    Synthetic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Matrix,
    Det,
    Inverse,
    Bound,
    Eigen,
    Verify,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

macro_rules! value_name {
    ($($t:ty),*) => {$(
        impl fmt::Display for $t {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.to_possible_value().expect("no skipped variants").get_name())
            }
        }
    )*};
}
value_name!(FamilyKind, Command, Format);

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Params {
    Muntz { alphas: Vec<ComplexRational> },
    Gmuntz { a: Rational, b: Rational, c: Rational, alphas: Vec<ComplexRational> },
    Lommel { q: Rational, v: Rational },
    Askey { alpha: Rational, beta: Rational, q: Rational },
    Synthetic { alphas: Vec<ComplexRational> },
}

impl Params {
    pub fn kind(&self) -> FamilyKind {
        match self {
            Params::Muntz { .. } => FamilyKind::Muntz,
            Params::Gmuntz { .. } => FamilyKind::Gmuntz,
            Params::Lommel { .. } => FamilyKind::Lommel,
            Params::Askey { .. } => FamilyKind::Askey,
            Params::Synthetic { .. } => FamilyKind::Synthetic,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub n: usize,
    pub params: Params,
    pub prec: u32,
    pub z0: Option<ComplexRational>,
    pub format: Format,
    pub printed_formulas: bool,
    pub output: Option<PathBuf>,
    /// Fault injection: added to the closed-form `γ_{0,0}`.
    pub perturb: Option<Rational>,
}

impl RunConfig {
    pub fn family(&self) -> FamilyKind {
        self.params.kind()
    }
}

#[derive(Debug, Parser)]
#[command(name = "ghm", version, about = "Exact generalized Hilbert matrix verifier")]
struct Args {
    family: FamilyKind,
    command: Command,
    /// Matrix order minus one; defaults to one less than the exponent count.
    #[arg(long)]
    n: Option<usize>,
    /// Comma-separated complex rationals, e.g. `0,1+i,5/2`.
    #[arg(long, allow_hyphen_values = true)]
    alphas: Option<String>,
    /// gmuntz form coefficients `c·x·ȳ − a(x + ȳ) − b`.
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    c: Option<String>,
    /// Base of the q-families, in (0, 1) for lommel.
    #[arg(long, allow_hyphen_values = true)]
    q: Option<String>,
    /// lommel `V = q^(ν+1)`, in (0, 1).
    #[arg(long = "V", allow_hyphen_values = true)]
    v: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<String>,
    /// Evaluation point for the single-point bounds; real families default to -1.
    #[arg(long, allow_hyphen_values = true)]
    z0: Option<String>,
    /// Working precision in bits for every rounded quantity.
    #[arg(long, default_value_t = DEFAULT_PRECISION)]
    prec: u32,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Also evaluate the verbatim variants of the closed forms and list mismatches as errata.
    #[arg(long)]
    printed_formulas: bool,
    /// Write the report here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, hide = true, allow_hyphen_values = true)]
    perturb: Option<String>,
}

/// Lowest precision accepted; below this the decimal renderings lose meaning.
pub const MIN_PREC: u32 = 64;

pub fn parse_args<S: AsRef<str>>(argv: &[S]) -> Result<RunConfig, CliError> {
    let argv = std::iter::once("ghm").chain(argv.iter().map(AsRef::as_ref));
    let args = Args::try_parse_from(argv).map_err(|e| match e.kind() {
        ErrorKind::UnknownArgument => {
            let flag = e
                .get(clap::error::ContextKind::InvalidArg)
                .map(|v| v.to_string())
                .unwrap_or_else(|| "?".into());
            CliError::UnknownFlag(flag)
        }
        ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => CliError::Help(e.to_string()),
        _ => CliError::Usage(e.to_string()),
    })?;

    let family = args.family;
    let allowed: &[&str] = match family {
        FamilyKind::Muntz | FamilyKind::Synthetic => &["alphas"],
        FamilyKind::Gmuntz => &["a", "b", "c", "alphas"],
        FamilyKind::Lommel => &["q", "V"],
        FamilyKind::Askey => &["alpha", "beta", "q"],
    };
    let given = [
        ("alphas", args.alphas.is_some()),
        ("a", args.a.is_some()),
        ("b", args.b.is_some()),
        ("c", args.c.is_some()),
        ("q", args.q.is_some()),
        ("V", args.v.is_some()),
        ("alpha", args.alpha.is_some()),
        ("beta", args.beta.is_some()),
    ];
    if let Some((flag, _)) = given.iter().find(|(f, set)| *set && !allowed.contains(f)) {
        return Err(CliError::IncompatibleCommand(format!("--{flag} does not apply to {family}")));
    }

    let req = |flag: &str, v: &Option<String>| -> Result<Rational, CliError> {
        let text = v.as_deref().ok_or_else(|| CliError::MissingParameter(format!("--{flag}")))?;
        rational(flag, text)
    };
    let alphas = || -> Result<Vec<ComplexRational>, CliError> {
        let text = args.alphas.as_deref().ok_or_else(|| CliError::MissingParameter("--alphas".into()))?;
        text.split(',').map(|s| complex("alphas", s)).collect()
    };
    let params = match family {
        FamilyKind::Muntz => Params::Muntz { alphas: alphas()? },
        FamilyKind::Synthetic => Params::Synthetic { alphas: alphas()? },
        FamilyKind::Gmuntz => Params::Gmuntz {
            a: req("a", &args.a)?,
            b: req("b", &args.b)?,
            c: req("c", &args.c)?,
            alphas: alphas()?,
        },
        FamilyKind::Lommel => Params::Lommel { q: req("q", &args.q)?, v: req("V", &args.v)? },
        FamilyKind::Askey => {
            Params::Askey { alpha: req("alpha", &args.alpha)?, beta: req("beta", &args.beta)?, q: req("q", &args.q)? }
        }
    };

    let n = match (&params, args.n) {
        (_, Some(n)) => n,
        (Params::Muntz { alphas } | Params::Gmuntz { alphas, .. } | Params::Synthetic { alphas }, None) => {
            alphas.len() - 1
        }
        _ => return Err(CliError::MissingParameter("--n".into())),
    };

    if family == FamilyKind::Synthetic && matches!(args.command, Command::Bound | Command::Eigen) {
        return Err(CliError::IncompatibleCommand(format!(
            "{} needs a Hermitian matrix; synthetic is not",
            args.command
        )));
    }
    if args.prec < MIN_PREC {
        return Err(CliError::Usage(format!("--prec must be at least {MIN_PREC}")));
    }

    Ok(RunConfig {
        command: args.command,
        n,
        params,
        prec: args.prec,
        z0: args.z0.as_deref().map(|s| complex("z0", s)).transpose()?,
        format: args.format,
        printed_formulas: args.printed_formulas,
        output: args.output,
        perturb: args.perturb.as_deref().map(|s| rational("perturb", s)).transpose()?,
    })
}

fn rational(flag: &str, text: &str) -> Result<Rational, CliError> {
    parse_rational(text.trim()).map_err(|e| CliError::MalformedRational(format!("--{flag} {text}: {e}")))
}

fn complex(flag: &str, text: &str) -> Result<ComplexRational, CliError> {
    ComplexRational::parse(text.trim()).map_err(|e| CliError::MalformedRational(format!("--{flag} {text}: {e}")))
}

/// Renders a config back to an argument list that [`parse_args`] accepts.
pub fn to_args(cfg: &RunConfig) -> Vec<String> {
    let mut out = vec![cfg.family().to_string(), cfg.command.to_string()];
    let mut flag = |name: &str, value: String| {
        out.push(format!("--{name}"));
        out.push(value);
    };
    let list = |v: &[ComplexRational]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
    match &cfg.params {
        Params::Muntz { alphas } | Params::Synthetic { alphas } => flag("alphas", list(alphas)),
        Params::Gmuntz { a, b, c, alphas } => {
            flag("a", a.to_string());
            flag("b", b.to_string());
            flag("c", c.to_string());
            flag("alphas", list(alphas));
        }
        Params::Lommel { q, v } => {
            flag("q", q.to_string());
            flag("V", v.to_string());
        }
        Params::Askey { alpha, beta, q } => {
            flag("alpha", alpha.to_string());
            flag("beta", beta.to_string());
            flag("q", q.to_string());
        }
    }
    flag("n", cfg.n.to_string());
    flag("prec", cfg.prec.to_string());
    flag("format", cfg.format.to_string());
    if let Some(z) = &cfg.z0 {
        flag("z0", z.to_string());
    }
    if let Some(p) = &cfg.output {
        flag("output", p.display().to_string());
    }
    if let Some(p) = &cfg.perturb {
        flag("perturb", p.to_string());
    }
    if cfg.printed_formulas {
        out.push("--printed-formulas".into());
    }
    out
}
