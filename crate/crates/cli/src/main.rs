//! `gammalg`: batch front end for gammalg-core.
//!
//! Exit status is 0 on success, 1 when a mathematical check fails (the
//! witness is printed), and 2 for usage or input errors.

mod commands;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::{CliError, Output};

#[derive(Parser, Debug)]
#[command(
    name = "gammalg",
    version,
    about = "Exact computer algebra for Gamma-algebras and M2-algebras"
)]
struct Cli {
    /// Ground field: `q` or `fp:<p>`. Files carry their own field; an
    /// explicit flag must agree with it.
    #[arg(long, global = true)]
    field: Option<String>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// Where an algebra comes from.
#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct Source {
    /// Structure-constant JSON file.
    #[arg(long, value_name = "PATH")]
    algebra: Option<PathBuf>,

    /// Catalog algebra: M2, B42, B12, cay-split-null, octonion-split:<v2>,
    /// grassmann:<k>, trunc:<k>.
    #[arg(long, value_name = "NAME")]
    builtin: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct GammaSource {
    #[command(flatten)]
    source: Source,

    /// Replace the (commutative associative) input A by Gamma(A).
    #[arg(long)]
    gamma_of: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Multiply two elements, e.g. `mul --builtin B12 x y`.
    Mul {
        #[command(flatten)]
        source: Source,
        a: String,
        b: String,
    },
    /// Exhaustive identity checks over basis tuples.
    CheckIdentities {
        #[command(flatten)]
        source: GammaSource,
        /// Identity to check; repeatable. Defaults to the whole catalog.
        #[arg(long = "identity", value_name = "NAME")]
        identities: Vec<String>,
    },
    /// Standard monomials of degree `r` in the Plucker coordinates.
    Basis {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        degree: usize,
        /// Keep only monomials whose first column has entries below m.
        #[arg(long, value_name = "M")]
        filter_m: Option<usize>,
    },
    /// Straighten a product like `a(1,4)a(2,3)`.
    Straighten {
        monomial: String,
        /// Number of vectors; defaults to the largest index used.
        #[arg(long)]
        n: Option<usize>,
        /// Multiply by the odd generator v_j and reduce.
        #[arg(long, value_name = "J")]
        odd: Option<usize>,
    },
    /// Envelope of a Gamma-algebra as a structure-constant file.
    Envelope {
        #[command(flatten)]
        source: GammaSource,
        /// Superalgebra to tensor with (catalog name or file); default B42.
        #[arg(long, value_name = "NAME|PATH", conflicts_with = "coordinatized")]
        over: Option<String>,
        /// Emit the coordinatized algebra M2(G0) + G1^2 instead.
        #[arg(long)]
        coordinatized: bool,
    },
    /// Verify the Gamma conditions and the envelope isomorphism.
    IsoCheck {
        #[command(flatten)]
        source: GammaSource,
    },
    /// Normal form of an expression in a free Gamma-algebra, or its value
    /// in a target under an assignment.
    Eval {
        /// Target Gamma-algebra file.
        #[arg(long, value_name = "PATH", conflicts_with = "target_builtin")]
        target: Option<PathBuf>,
        /// Target from the catalog.
        #[arg(long, value_name = "NAME")]
        target_builtin: Option<String>,
        /// Build Gamma(A) from the target first.
        #[arg(long)]
        gamma_of: bool,
        /// Generator images, e.g. `v1=x,v2=y,t1=1`.
        #[arg(long, default_value = "")]
        assign: String,
        /// Number of even generators (at least those used).
        #[arg(long)]
        m: Option<usize>,
        /// Number of odd generators (at least those used).
        #[arg(long)]
        n: Option<usize>,
        expr: String,
    },
    /// Split an algebra containing M2 into associative and Cayley parts.
    Decompose {
        #[command(flatten)]
        source: Source,
        /// Comma-separated images of e11, e12, e21, e22.
        #[arg(long, default_value = "e11,e12,e21,e22")]
        units: String,
    },
    /// Graded dimensions of a free Gamma-algebra.
    Dims {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        max_weight: usize,
        /// Also count normal-form basis monomials and compare.
        #[arg(long)]
        check: bool,
    },
}

fn dispatch(cli: &Cli) -> Result<Output, CliError> {
    let field = cli.field.as_deref();
    match &cli.command {
        Command::Mul { source, a, b } => commands::mul(field, source, a, b),
        Command::CheckIdentities { source, identities } => commands::check_identities(field, source, identities),
        Command::Basis { n, degree, filter_m } => commands::basis(*n, *degree, *filter_m),
        Command::Straighten { monomial, n, odd } => commands::straighten(field, monomial, *n, *odd),
        Command::Envelope {
            source,
            over,
            coordinatized,
        } => commands::envelope(field, source, over.as_deref(), *coordinatized),
        Command::IsoCheck { source } => commands::iso_check(field, source),
        Command::Eval {
            target,
            target_builtin,
            gamma_of,
            assign,
            m,
            n,
            expr,
        } => {
            let source = Source {
                algebra: target.clone(),
                builtin: target_builtin.clone(),
            };
            let target = (target.is_some() || target_builtin.is_some()).then_some(GammaSource {
                source,
                gamma_of: *gamma_of,
            });
            commands::eval(field, target.as_ref(), assign, *m, *n, expr)
        }
        Command::Decompose { source, units } => commands::decompose(field, source, units),
        Command::Dims {
            m,
            n,
            max_weight,
            check,
        } => commands::dims(field, *m, *n, *max_weight, *check),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(out) => {
            let body = match cli.format {
                Format::Text => out.text,
                Format::Json => out.json,
            };
            // a closed pipe (e.g. `| head`) is not an error worth reporting
            let _ = writeln!(std::io::stdout().lock(), "{}", body.trim_end());
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
