//! Command-line front end.
//!
//! Exit codes: 0 success or `jordan`, 1 `not_jordan`, 2 budget exhausted,
//! 3 invalid input (arguments, files, field or delta), 4 I/O failure while
//! writing output.

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use fischer_core::incidence::{TauCommutation, DEFAULT_RANK_CAP};
use fischer_core::matsuo::{JordanOptions, Verdict};
use fischer_core::rewrite::{enumerate_normal, MAX_ENUMERATION};
use fischer_core::{FieldSpec, Scalar, TripleSystem};

use crate::families::Family;
use crate::parallel::thread_count;
use crate::pts::{parse_pts, write_pts};
use crate::report::check_jordan;
use crate::survey::survey;

pub const EXIT_NOT_JORDAN: i32 = 1;
pub const EXIT_BUDGET: i32 = 2;
pub const EXIT_INPUT: i32 = 3;
pub const EXIT_IO: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "fischer", version, about = "Fischer spaces and Jordan checks for their Matsuo algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a triple system in .pts format.
    Construct {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        n: Option<usize>,
        /// Output path; stdout if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide whether the Matsuo algebra is Jordan; prints a JSON report.
    CheckJordan {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        algebra: AlgebraArgs,
        /// Also write the report to this path.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Tabulate the implemented families up to a rank.
    Survey {
        #[arg(long, default_value_t = 4)]
        max_rank: usize,
        #[command(flatten)]
        algebra: AlgebraArgs,
        /// Write the table as JSON to this path.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// List the normal-form words over {1..n}, one per line.
    NormalForms {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print structural data: components, rank, planes, tau checks.
    Inspect {
        #[command(flatten)]
        source: Source,
    },
}

#[derive(Debug, Args)]
pub struct Source {
    /// A .pts file.
    #[arg(long, conflicts_with_all = ["family", "n"], required_unless_present = "family")]
    pub input: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub family: Option<Family>,
    #[arg(long)]
    pub n: Option<usize>,
}

#[derive(Debug, Args)]
pub struct AlgebraArgs {
    /// "0" for the rationals, otherwise an odd prime.
    #[arg(long, default_value = "3")]
    pub field: String,
    /// "a" or "a/b", read in the field.
    #[arg(long, default_value = "1/4")]
    pub delta: String,
    /// Maximum number of basis quadruples to evaluate.
    #[arg(long, default_value_t = 1_000_000_000)]
    pub budget: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Random pairs for the Jordan-defect cross-check.
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
}

struct Failure {
    code: i32,
    message: String,
}

fn input_error(message: impl std::fmt::Display) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message: message.to_string(),
    }
}

fn io_error(path: &Path, e: std::io::Error) -> Failure {
    Failure {
        code: EXIT_IO,
        message: format!("{}: {e}", path.display()),
    }
}

impl AlgebraArgs {
    fn parse(&self) -> Result<(FieldSpec, Scalar, JordanOptions), Failure> {
        let field = FieldSpec::from_str(&self.field).map_err(input_error)?;
        let delta = field.parse_scalar(&self.delta).map_err(input_error)?;
        if delta.is_zero() {
            return Err(input_error("delta must be nonzero"));
        }
        let options = JordanOptions {
            budget: self.budget,
            seed: self.seed,
            samples: self.samples,
        };
        Ok((field, delta, options))
    }
}

impl Source {
    /// The system and the family name recorded for it.
    fn load(&self) -> Result<(TripleSystem, String), Failure> {
        if let Some(path) = &self.input {
            let text = std::fs::read_to_string(path)
                .map_err(|e| input_error(format!("{}: {e}", path.display())))?;
            let file = parse_pts(&text).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
            let family = file.manifest.map_or_else(|| "input".to_string(), |m| m.family);
            return Ok((file.system, family));
        }
        let family = self.family.expect("clap requires --family without --input");
        let system = family.build(self.n).map_err(input_error)?;
        Ok((system, family.name().to_string()))
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| io_error(path, e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn verdict_code(v: Verdict) -> i32 {
    match v {
        Verdict::Jordan => 0,
        Verdict::NotJordan => EXIT_NOT_JORDAN,
        Verdict::BudgetExhausted => EXIT_BUDGET,
    }
}

fn execute(command: Command) -> Result<i32, Failure> {
    match command {
        Command::Construct { family, n, out } => {
            let system = family.build(n).map_err(input_error)?;
            emit(out.as_deref(), &write_pts(&system, Some(&family.manifest(n))))?;
            Ok(0)
        }
        Command::CheckJordan {
            source,
            algebra,
            report,
        } => {
            let (field, delta, options) = algebra.parse()?;
            let (system, family) = source.load()?;
            let outcome = check_jordan(&system, &family, field, &delta, options, thread_count())
                .map_err(input_error)?;
            let json = serde_json::to_string_pretty(&outcome.json).expect("report serializes") + "\n";
            print!("{json}");
            if let Some(path) = report {
                std::fs::write(&path, &json).map_err(|e| io_error(&path, e))?;
            }
            Ok(verdict_code(outcome.verdict))
        }
        Command::Survey {
            max_rank,
            algebra,
            report,
        } => {
            if !(2..=4).contains(&max_rank) {
                return Err(input_error("--max-rank must be 2, 3 or 4"));
            }
            let (field, delta, options) = algebra.parse()?;
            let table = survey(max_rank, field, &delta, options, thread_count()).map_err(input_error)?;
            print!("{}", table.to_table());
            if let Some(path) = report {
                let json = serde_json::to_string_pretty(&table).expect("survey serializes") + "\n";
                std::fs::write(&path, json).map_err(|e| io_error(&path, e))?;
            }
            Ok(0)
        }
        Command::NormalForms { n, out } => {
            if n == 0 || n > MAX_ENUMERATION {
                return Err(input_error(format!("--n must lie in 1..={MAX_ENUMERATION}")));
            }
            let words = enumerate_normal(n).map_err(input_error)?;
            let text: String = words.iter().map(|w| format!("{}\n", w.word())).collect();
            emit(out.as_deref(), &text)?;
            Ok(0)
        }
        Command::Inspect { source } => {
            let (system, family) = source.load()?;
            print!("{}", inspect(&system, &family));
            Ok(0)
        }
    }
}

fn inspect(system: &TripleSystem, family: &str) -> String {
    let mut out = format!(
        "family: {family}\npoints: {}\nlines: {}\ncomponents: {}\nrank: {:?}\n",
        system.n_points(),
        system.n_lines(),
        system.connected_components().len(),
        system.rank(DEFAULT_RANK_CAP),
    );
    match system.fischer_plane_classes() {
        Some((da, ag)) => out.push_str(&format!(
            "fischer: yes ({da} DA(2,2) planes, {ag} AG(2,3) planes)\naffine type: {}\n",
            if da == 0 && ag > 0 { "yes" } else { "no" }
        )),
        None => out.push_str("fischer: no\n"),
    }
    let axioms = system.tau_axiom_check();
    match axioms.failure {
        None => out.push_str(&format!("tau axioms: hold ({} pairs)\n", axioms.pairs_checked)),
        Some(f) => out.push_str(&format!("tau axioms: {:?} fails at ({}, {})\n", f.axiom, f.p, f.q)),
    }
    match system.affine_tau_commutation() {
        TauCommutation::Holds => out.push_str("tau commutation: holds\n"),
        TauCommutation::Witness(x, y, z) => {
            out.push_str(&format!("tau commutation: fails at ({x}, {y}, {z})\n"))
        }
    }
    out
}

/// Parses `args` and runs the command; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli.command) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}
