use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use hyperlap_core::params::{IdentityId, ParamBinding, Symbol};
use hyperlap_core::Complex64;

#[derive(Debug, Parser)]
#[command(
    name = "hyperlap",
    version,
    about = "Closed-form hypergeometric sums and Laplace transforms, with numerical cross-checks"
)]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Sampler seed (suite, resolve-dixon).
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Tolerance; its meaning depends on the command.
    #[arg(long, global = true, value_parser = parse_positive)]
    pub tol: Option<f64>,
    /// Flat key=value file supplying defaults for any long flag.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Record wall-clock time in the report (breaks byte-identical output).
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a single function value.
    Eval {
        #[command(subcommand)]
        kind: EvalKind,
    },
    /// Check one identity at one parameter point against an oracle.
    Check(CheckArgs),
    /// Sample admissible parameters and check identities in bulk.
    Suite(SuiteArgs),
    /// Decide which printed form of the extended Dixon theorem holds.
    ResolveDixon(DixonArgs),
}

#[derive(Debug, Subcommand)]
pub enum EvalKind {
    /// Γ(z).
    Gamma {
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        z: Complex64,
    },
    /// pFq(num; den; z); --tol is the relative series tolerance.
    Pfq {
        #[arg(long, value_parser = parse_list, allow_hyphen_values = true, default_value = "")]
        num: ComplexList,
        #[arg(long, value_parser = parse_list, allow_hyphen_values = true, default_value = "")]
        den: ComplexList,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        z: Complex64,
        #[arg(long, default_value_t = hyperlap_core::pfq::DEFAULT_MAX_TERMS)]
        max_terms: u64,
    },
    /// Closed-form right-hand side of a cataloged identity.
    ClosedForm {
        #[arg(long, value_parser = parse_identity)]
        id: IdentityId,
        #[command(flatten)]
        params: ParamArgs,
        /// Printed form of the extended Dixon theorem.
        #[arg(long, value_enum, default_value_t = Variant::Eq33)]
        variant: Variant,
    },
    /// Numerical Laplace integral; --tol is the quadrature tolerance.
    LaplaceNumeric(LaplaceNumericArgs),
}

#[derive(Debug, Args)]
pub struct LaplaceNumericArgs {
    /// A cataloged transform, or lap.general / lap.1f1 / lap.2f2 / lap.3f3
    /// together with --v, --w, --num and --den.
    #[arg(long, value_parser = parse_identity, default_value = "lap.general")]
    pub id: IdentityId,
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub v: Option<Complex64>,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub w: Option<Complex64>,
    #[arg(long, value_parser = parse_list, allow_hyphen_values = true)]
    pub num: Option<ComplexList>,
    #[arg(long, value_parser = parse_list, allow_hyphen_values = true)]
    pub den: Option<ComplexList>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Variant {
    Eq33,
    Eq121,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Oracle {
    Series,
    Quadrature,
    Specialization,
    Compositional,
}

#[derive(Debug, Default, Args)]
pub struct ParamArgs {
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub a: Option<Complex64>,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub b: Option<Complex64>,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub c: Option<Complex64>,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub d: Option<Complex64>,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub e: Option<Complex64>,
    /// Laplace variable.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub s: Option<Complex64>,
}

impl ParamArgs {
    pub fn binding(&self) -> ParamBinding {
        let mut p = ParamBinding::new();
        for (sym, v) in Symbol::ALL.into_iter().zip([self.a, self.b, self.c, self.d, self.e]) {
            if let Some(v) = v {
                p.set(sym, v);
            }
        }
        p
    }
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(long, value_parser = parse_identity)]
    pub id: IdentityId,
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, value_enum, default_value_t = Oracle::Series)]
    pub oracle: Oracle,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("selection").required(true).args(["all", "ids"])))]
pub struct SuiteArgs {
    /// Every cataloged identity.
    #[arg(long)]
    pub all: bool,
    /// Comma-separated identity ids.
    #[arg(long, value_delimiter = ',', value_parser = parse_identity)]
    pub ids: Vec<IdentityId>,
    /// Draws per identity and oracle; quadrature uses at most 25.
    #[arg(long, default_value_t = 200)]
    pub n: usize,
    /// Run the Dixon variant experiment even when sum.dixonx is not selected.
    #[arg(long)]
    pub resolve_variant: bool,
    #[command(flatten)]
    pub sampler: SamplerArgs,
    #[arg(long, value_parser = parse_positive)]
    pub tol_series: Option<f64>,
    #[arg(long, value_parser = parse_positive)]
    pub tol_series_unit: Option<f64>,
    #[arg(long, value_parser = parse_positive)]
    pub tol_quadrature: Option<f64>,
    #[arg(long, value_parser = parse_positive)]
    pub tol_specialization: Option<f64>,
    #[arg(long, value_parser = parse_positive)]
    pub tol_compositional: Option<f64>,
}

#[derive(Debug, Args)]
pub struct SamplerArgs {
    /// Add imaginary parts in [-0.5, 0.5] to sampled parameters.
    #[arg(long)]
    pub complex: bool,
    #[arg(long, value_parser = parse_positive)]
    pub pole_margin: Option<f64>,
    #[arg(long)]
    pub max_rejects: Option<usize>,
}

#[derive(Debug, Args)]
pub struct DixonArgs {
    #[arg(long, default_value_t = hyperlap_core::verifier::DIXON_DRAWS)]
    pub n: usize,
    #[command(flatten)]
    pub sampler: SamplerArgs,
}

/// Complex numbers parsed from a comma-separated flag value.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ComplexList(pub Vec<Complex64>);

/// Parses `2`, `-1.5e-3`, `0.5i`, `1.5+0.5i`, `1-i`.
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let t = s.trim();
    let bad = || format!("'{s}' is not a real or complex literal (e.g. 1.5 or 1.5+0.5i)");
    let real = |x: &str| x.parse::<f64>().ok().filter(|v| v.is_finite());
    let Some(body) = t.strip_suffix('i') else {
        return real(t).map(|x| Complex64::new(x, 0.0)).ok_or_else(bad);
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re_part, im_part) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im_part {
        "" | "+" => Some(1.0),
        "-" => Some(-1.0),
        x => real(x),
    };
    match (real(re_part), im) {
        (Some(r), Some(i)) => Ok(Complex64::new(r, i)),
        _ => Err(bad()),
    }
}

pub fn parse_list(s: &str) -> Result<ComplexList, String> {
    if s.trim().is_empty() {
        return Ok(ComplexList::default());
    }
    s.split(',')
        .map(parse_complex)
        .collect::<Result<_, _>>()
        .map(ComplexList)
}

pub fn parse_identity(s: &str) -> Result<IdentityId, String> {
    s.trim().parse().map_err(|_| {
        let known: Vec<&str> = IdentityId::catalog().iter().map(|i| i.name()).collect();
        format!("unknown identity '{s}' (known: {})", known.join(", "))
    })
}

fn parse_positive(s: &str) -> Result<f64, String> {
    match s.trim().parse::<f64>() {
        Ok(x) if x > 0.0 && x.is_finite() => Ok(x),
        _ => Err(format!("'{s}' is not a positive number")),
    }
}
