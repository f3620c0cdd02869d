//! The `motkit` command-line tool: argument parsing, dispatch, output and
//! exit codes. Commands live in [`commands`], the disk cache in [`cache`].

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use motkit_core::MotkitError;
use serde_json::Value;

pub mod cache;
pub mod commands;

/// Exit code for a refused precondition.
pub const EXIT_REFUSED: i32 = 2;
/// Exit code for an internal failure.
pub const EXIT_FAILURE: i32 = 1;
/// Exit code for malformed invocations (`EX_USAGE`).
pub const EXIT_USAGE: i32 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Clone, Debug, Args)]
pub struct RunConfig {
    /// Cartan type letter (A-G); a rank may be appended, as in `B2`.
    #[arg(long = "type", global = true, default_value = "A")]
    pub cartan: String,
    #[arg(long, global = true, default_value_t = 2)]
    pub rank: usize,
    #[arg(long, global = true, default_value_t = 5)]
    pub prime: u32,
    /// Seed for the randomized decomposition.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Directory caching indecomposable modules.
    #[arg(long, global = true, env = "MOTKIT_CACHE")]
    pub cache: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Produce output even when the category O preconditions fail.
    #[arg(long, global = true)]
    pub force: bool,
}

#[derive(Debug, Parser)]
#[command(name = "motkit", version, about = "Soergel modules, p-canonical bases and motivic bookkeeping")]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Weyl group data: order, degrees, lengths, torsion primes.
    Weyl,
    /// Kazhdan–Lusztig basis elements in the standard basis.
    Kl {
        /// Only this element (a word such as "s1 s2"); all elements otherwise.
        #[arg(long)]
        element: Option<String>,
    },
    /// Hecke character b_{s1}⋯b_{sl} of a Bott–Samelson module.
    Bschar {
        #[arg(long)]
        word: String,
    },
    /// Graded dimensions of the coinvariant algebra over F_p.
    Coinv,
    /// Graded dimensions of a Bott–Samelson module.
    Bs {
        #[arg(long)]
        word: String,
    },
    /// Decompose a Bott–Samelson module into shifted D_x.
    Decompose {
        #[arg(long)]
        word: String,
    },
    /// The p-canonical basis element of a Weyl group element.
    Pcan {
        #[arg(long)]
        element: String,
    },
    /// Graded decomposition matrix (P_x : M_y) of modular category O.
    Decmat,
    /// Multiplicities [M_y : L_x] and their inverse.
    Simples,
    /// Motivic cohomology of a cellular variety.
    Cellmot {
        /// JSON file `{strata: [{label, dim}], closure: [[a, b], ...]}`.
        #[arg(long, conflicts_with = "flag", required_unless_present = "flag")]
        poset: Option<PathBuf>,
        /// Flag variety of a Cartan type, e.g. `A2`.
        #[arg(long)]
        flag: Option<String>,
        /// Also report the projective bundle of this rank.
        #[arg(long)]
        bundle: Option<usize>,
        /// Comma-separated closed strata for a localization check.
        #[arg(long)]
        closed: Option<String>,
    },
    /// Milnor K-group K_n(F_q).
    Milnork {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: usize,
    },
    /// dim Hom(1, 1(i)[j]) for Tate objects over the closure of F_p.
    Tatehom {
        #[arg(long, allow_hyphen_values = true)]
        i: i64,
        #[arg(long, allow_hyphen_values = true)]
        j: i64,
    },
}

/// A failure together with the exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub error: anyhow::Error,
}

impl From<anyhow::Error> for Failure {
    fn from(error: anyhow::Error) -> Self {
        let code = match error.downcast_ref::<MotkitError>() {
            Some(MotkitError::Precondition(_) | MotkitError::WeylTooLarge { .. } | MotkitError::LengthTooLarge { .. }) => EXIT_REFUSED,
            Some(MotkitError::Rejected(_)) => EXIT_REFUSED,
            Some(
                MotkitError::NotPrime(_) | MotkitError::InvalidCartanType { .. } | MotkitError::InvalidWord(_) | MotkitError::OddShift(_),
            ) => EXIT_USAGE,
            _ => EXIT_FAILURE,
        };
        Failure { code, error }
    }
}

impl From<MotkitError> for Failure {
    fn from(e: MotkitError) -> Self {
        anyhow::Error::from(e).into()
    }
}

/// Output of one command: the payload and warnings for stderr.
#[derive(Debug, Default)]
pub struct Report {
    pub payload: Value,
    pub warnings: Vec<String>,
}

/// Render a JSON value as indented `key: value` lines.
pub fn render_table(v: &Value) -> String {
    fn flat(v: &Value) -> bool {
        match v {
            Value::Object(_) => false,
            Value::Array(a) => a.iter().all(flat),
            _ => true,
        }
    }
    fn scalar(v: &Value) -> Option<String> {
        match v {
            Value::Null => Some("-".into()),
            Value::String(s) => Some(s.clone()),
            Value::Object(_) => None,
            _ if flat(v) => Some(serde_json::to_string(v).expect("serializable")),
            _ => None,
        }
    }
    fn walk(v: &Value, indent: usize, out: &mut String) {
        let pad = " ".repeat(indent);
        match v {
            Value::Object(map) => {
                for (k, x) in map {
                    match scalar(x) {
                        Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                        None => {
                            out.push_str(&format!("{pad}{k}:\n"));
                            walk(x, indent + 2, out);
                        }
                    }
                }
            }
            Value::Array(items) => {
                for (i, x) in items.iter().enumerate() {
                    match scalar(x) {
                        Some(s) => out.push_str(&format!("{pad}[{i}] {s}\n")),
                        None => {
                            out.push_str(&format!("{pad}[{i}]\n"));
                            walk(x, indent + 2, out);
                        }
                    }
                }
            }
            other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
        }
    }
    let mut out = String::new();
    walk(v, 0, &mut out);
    out
}

/// Parse `args`, run the command and write to the given streams; returns
/// the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match commands::execute(&cli) {
        Ok(report) => {
            for w in &report.warnings {
                let _ = writeln!(err, "warning: {w}");
            }
            let text = match cli.config.format {
                Format::Json => serde_json::to_string_pretty(&report.payload).expect("serializable") + "\n",
                Format::Table => render_table(&report.payload),
            };
            let _ = out.write_all(text.as_bytes());
            0
        }
        Err(f) => {
            let _ = writeln!(err, "error: {:#}", f.error);
            f.code
        }
    }
}
