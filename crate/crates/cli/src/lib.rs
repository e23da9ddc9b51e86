//! Command-line front end: argument parsing, dispatch and report output.

pub mod commands;
pub mod error;
pub mod registry;
pub mod report;
pub mod suites;

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mzlab_core::finalg::Side;

pub use error::{CliError, Result};
pub use registry::{run_example, EXAMPLES};
pub use report::{Bounds, Claim, Report, Status};

use commands::{OpChoice, OpKindArg, Setting};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "mzlab", version, about = "Exact experiments with Mathieu subspaces and their radicals")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Coefficient ring: q, z, fp:<p> or qlaurent.
    #[arg(long, global = true, default_value = "q")]
    pub ring: String,
    #[arg(long, global = true, value_delimiter = ',', default_value = "x")]
    pub vars: Vec<String>,
    /// Allow negative exponents.
    #[arg(long, global = true)]
    pub laurent: bool,
    #[arg(long, global = true, default_value_t = 12)]
    pub max_degree: i32,
    #[arg(long, global = true, default_value_t = 12)]
    pub max_power: u32,
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct OpArgs {
    /// Images of the variables under phi; the subspace is Im(I - phi).
    #[arg(long, value_name = "IMAGES")]
    pub subspace_from_endo: Option<String>,
    /// Images of the variables under a derivation D; the subspace is Im D.
    #[arg(long, value_name = "IMAGES", conflicts_with = "subspace_from_endo")]
    pub subspace_from_derivation: Option<String>,
    /// Restrict the operator to the principal ideal of this polynomial.
    #[arg(long, value_name = "POLY")]
    pub ideal: Option<String>,
}

impl OpArgs {
    fn choice(&self) -> OpChoice {
        OpChoice {
            endo: self.subspace_from_endo.clone(),
            derivation: self.subspace_from_derivation.clone(),
            ideal: self.ideal.clone(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Left,
    Right,
    TwoSided,
    All,
}

impl SideArg {
    fn sides(self) -> Vec<Side> {
        match self {
            SideArg::Left => vec![Side::Left],
            SideArg::Right => vec![Side::Right],
            SideArg::TwoSided => vec![Side::TwoSided],
            SideArg::All => Side::ALL.to_vec(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Plain,
    Endomorphism,
    Derivation,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rank of the windowed image and membership of the given polynomials.
    Image {
        #[command(flatten)]
        op: OpArgs,
        exprs: Vec<String>,
    },
    /// Membership of a^m in the subspace for m up to the power bound.
    RadicalProbe {
        #[command(flatten)]
        op: OpArgs,
        #[arg(required = true)]
        candidates: Vec<String>,
    },
    /// Decide the Mathieu property of a subspace of a finite algebra.
    MsDecide {
        /// Structure-constant file.
        #[arg(long)]
        algebra: String,
        /// Spanning vectors: rows separated by `;`.
        #[arg(long, default_value = "")]
        subspace: String,
        #[arg(long, value_enum, default_value = "all")]
        side: SideArg,
    },
    /// Search for a translate b a^m c leaving the subspace.
    MsFalsify {
        #[command(flatten)]
        op: OpArgs,
        candidate: String,
        #[arg(long, default_value = "1")]
        left: String,
        #[arg(long, default_value = "1")]
        right: String,
    },
    /// Newton polytope test against constant terms of powers.
    Polytope {
        #[arg(required = true)]
        exprs: Vec<String>,
    },
    /// Generalized eigenspace decomposition of a linear operator on a finite algebra.
    Decompose {
        #[arg(long)]
        algebra: String,
        /// Operator matrix acting on coordinate columns: rows separated by `;`.
        #[arg(long)]
        matrix: String,
        #[arg(long, value_enum, default_value = "plain")]
        kind: KindArg,
        /// Comma-separated eigenvalues, when they should not be searched for.
        #[arg(long)]
        eigenvalues: Option<String>,
    },
    /// Run a registered example.
    Verify { id: String },
    /// List the registered examples.
    ListExamples,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Output {
    Report(Report),
    Listing(Vec<(String, String)>),
}

impl Output {
    pub fn render(&self, format: Format) -> String {
        match (self, format) {
            (Output::Report(r), Format::Json) => r.to_json(),
            (Output::Report(r), Format::Text) => r.to_text(),
            (Output::Listing(items), Format::Json) => {
                let v: Vec<serde_json::Value> =
                    items.iter().map(|(id, s)| serde_json::json!({ "id": id, "summary": s })).collect();
                let mut s = serde_json::to_string_pretty(&v).expect("listing serializes");
                s.push('\n');
                s
            }
            (Output::Listing(items), Format::Text) => {
                items.iter().map(|(id, s)| format!("{id:<8} {s}\n")).collect()
            }
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Output::Report(r) => r.exit_code(),
            Output::Listing(_) => 0,
        }
    }
}

fn echo(args: &[OsString]) -> String {
    args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect::<Vec<_>>().join(" ")
}

pub fn execute(cli: &Cli, command_echo: String) -> Result<Output> {
    let g = &cli.global;
    let setting = || Setting::new(&g.ring, &g.vars, g.laurent, g.max_degree, g.max_power);
    let report = match &cli.command {
        Command::Image { op, exprs } => commands::image(&setting()?, &op.choice(), exprs, command_echo)?,
        Command::RadicalProbe { op, candidates } => {
            commands::radical(&setting()?, &op.choice(), candidates, command_echo)?
        }
        Command::MsFalsify { op, candidate, left, right } => {
            commands::falsify(&setting()?, &op.choice(), candidate, left, right, command_echo)?
        }
        Command::MsDecide { algebra, subspace, side } => {
            let alg = commands::read_algebra(algebra)?;
            commands::ms_decide(&alg, subspace, &side.sides(), command_echo)?
        }
        Command::Polytope { exprs } => commands::polytope(&setting()?, exprs, command_echo)?,
        Command::Decompose { algebra, matrix, kind, eigenvalues } => {
            let alg = commands::read_algebra(algebra)?;
            let kind = match kind {
                KindArg::Plain => OpKindArg::Plain,
                KindArg::Endomorphism => OpKindArg::Endomorphism,
                KindArg::Derivation => OpKindArg::Derivation,
            };
            commands::decompose(&alg, matrix, kind, eigenvalues.as_deref(), command_echo)?
        }
        Command::Verify { id } => run_example(id)?,
        Command::ListExamples => {
            return Ok(Output::Listing(EXAMPLES.iter().map(|e| (e.id.to_string(), e.summary.to_string())).collect()))
        }
    };
    Ok(Output::Report(report))
}

/// Parses `args`, runs the command and writes its output; returns the exit
/// code.
pub fn run(args: Vec<OsString>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match execute(&cli, echo(&args)) {
        Ok(output) => {
            let _ = out.write_all(output.render(cli.global.format).as_bytes());
            output.exit_code()
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (String, String, i32) {
        let args: Vec<OsString> = std::iter::once("mzlab").chain(args.iter().copied()).map(OsString::from).collect();
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(args, &mut out, &mut err);
        (String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap(), code)
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run_str(&["frobnicate"]).2, 2);
        assert_eq!(run_str(&["polytope"]).2, 2);
        let (_, err, code) = run_str(&["verify", "nosuch"]);
        assert_eq!(code, 2);
        assert!(err.contains("nosuch"));
    }

    #[test]
    fn parse_errors_exit_two() {
        let (_, err, code) = run_str(&["polytope", "--vars", "x", "x +"]);
        assert_eq!(code, 2);
        assert!(err.contains("position"));
        assert_eq!(run_str(&["polytope", "--vars", "x", "x^-1"]).2, 2);
    }

    #[test]
    fn window_overflow_exits_three() {
        let (_, _, code) = run_str(&["radical-probe", "--max-degree", "4", "--subspace-from-derivation", "1", "x"]);
        assert_eq!(code, 3);
    }

    #[test]
    fn list_examples_prints_every_id() {
        let (out, _, code) = run_str(&["list-examples"]);
        assert_eq!(code, 0);
        assert!(EXAMPLES.iter().all(|e| out.contains(e.id)));
    }
}
