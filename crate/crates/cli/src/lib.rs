//! Command dispatch for the `lca3` binary.
//!
//! Exit codes: 0 for success (valid / equivalent / output produced), 1 for
//! a negative domain answer (inadmissible tuple under `validate`,
//! inequivalent tuples under `eq`, an obstruction conflict under
//! `reduce`), 2 for input errors (unreadable files, malformed documents,
//! inadmissible input where admissibility is a precondition, incompatible
//! collapses, invalid bounds), 3 when the census cap is exceeded. The
//! `LCA3_CENSUS_CAP` environment variable overrides the default cap.

pub mod doc;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use lca3_core::{
    visit_census, Bounds, EnumerateError, InvariantTuple, ReduceError, ValidationReport,
    DEFAULT_CAP,
};

use doc::{
    canonical_json, parse_document, DecompositionDocument, PartialTupleDocument, PlanDocument,
    ReduceDocument, TupleDocument,
};

pub const CAP_ENV_VAR: &str = "LCA3_CENSUS_CAP";

#[derive(Parser)]
#[command(
    name = "lca3",
    version,
    about = "Calculator for the classification invariants of closed Alexandrov 3-spaces \
             with local isometric circle actions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a tuple document against every admissibility rule.
    Validate {
        file: PathBuf,
        /// Coerce zero r/q entries to F-blocks before validating.
        #[arg(long)]
        lenient: bool,
    },
    /// Print the canonical form of a tuple document.
    Normalize {
        file: PathBuf,
        /// Coerce zero r/q entries to F-blocks before canonicalizing.
        #[arg(long)]
        lenient: bool,
    },
    /// Decide equivariant equivalence of two tuple documents.
    Eq { file1: PathBuf, file2: PathBuf },
    /// Split a tuple into its closed-manifold part and suspension summands.
    Reduce { file: PathBuf },
    /// Emit the construction plan of a tuple.
    Assemble { file: PathBuf },
    /// Translate a collapse decomposition into a (partial) tuple.
    Collapse { file: PathBuf },
    /// Stream every equivalence class within bounds as JSON lines.
    Census {
        #[command(flatten)]
        bounds: BoundsArgs,
    },
    /// Generate a seeded random valid tuple.
    Random {
        #[arg(long)]
        seed: u64,
        #[command(flatten)]
        bounds: BoundsArgs,
    },
}

#[derive(Args)]
struct BoundsArgs {
    #[arg(long, default_value_t = 0)]
    max_g: u32,
    #[arg(long, default_value_t = 0)]
    max_f: u32,
    #[arg(long, default_value_t = 0)]
    max_t: u32,
    #[arg(long, default_value_t = 0)]
    max_s: u32,
    #[arg(long, default_value_t = 0)]
    max_n: u32,
    #[arg(long, default_value_t = 2)]
    max_alpha: u32,
    /// Largest admissible r/q entry (even, at least 2).
    #[arg(long, default_value_t = 2)]
    max_singular: u32,
    /// Largest |b|.
    #[arg(long, default_value_t = 0)]
    max_b: u32,
}

impl BoundsArgs {
    fn to_bounds(&self) -> Bounds {
        Bounds {
            max_g: self.max_g,
            max_f: self.max_f,
            max_t: self.max_t,
            max_s: self.max_s,
            max_n: self.max_n,
            max_alpha: self.max_alpha,
            max_singular_entry: self.max_singular,
            max_abs_b: self.max_b,
        }
    }
}

enum Failure {
    /// Exit 1: the domain said no.
    Domain(String),
    /// Exit 2: the input was unusable.
    Input(String),
    /// Exit 3: the enumeration cap was exceeded.
    Cap(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Domain(_) => 1,
            Failure::Input(_) => 2,
            Failure::Cap(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Domain(m) | Failure::Input(m) | Failure::Cap(m) => m,
        }
    }
}

/// Runs the CLI on the given arguments (including the binary name),
/// writing to the process's stdout/stderr, and returns the exit code.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            // clap renders --help/--version as code 0 and usage errors as 2,
            // matching the input-error contract.
            let code = if err.use_stderr() { 2 } else { 0 };
            let _ = err.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            failure.code()
        }
    }
}

fn dispatch(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Validate { file, lenient } => cmd_validate(&file, lenient),
        Command::Normalize { file, lenient } => cmd_normalize(&file, lenient),
        Command::Eq { file1, file2 } => cmd_eq(&file1, &file2),
        Command::Reduce { file } => cmd_reduce(&file),
        Command::Assemble { file } => cmd_assemble(&file),
        Command::Collapse { file } => cmd_collapse(&file),
        Command::Census { bounds } => cmd_census(&bounds.to_bounds()),
        Command::Random { seed, bounds } => cmd_random(seed, &bounds.to_bounds()),
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_tuple(path: &Path) -> Result<InvariantTuple, Failure> {
    let text = read_file(path)?;
    let document: TupleDocument =
        parse_document(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    document
        .to_tuple()
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

/// Loads a tuple that the command needs to be admissible; an inadmissible
/// one is an input error.
fn load_valid_tuple(path: &Path) -> Result<InvariantTuple, Failure> {
    let tuple = load_tuple(path)?;
    let report = tuple.validate();
    if !report.ok() {
        return Err(Failure::Input(format!(
            "{}: not admissible: {report}",
            path.display()
        )));
    }
    Ok(tuple)
}

fn print_report(report: &ValidationReport) {
    for coercion in &report.coercions {
        println!("coerced: {}", coercion.message);
    }
    if report.ok() {
        println!("ok");
    } else {
        for violation in &report.violations {
            println!("{violation}");
        }
    }
}

fn cmd_validate(file: &Path, lenient: bool) -> Result<u8, Failure> {
    let tuple = load_tuple(file)?;
    let report = if lenient {
        tuple.validate_lenient().1
    } else {
        tuple.validate()
    };
    print_report(&report);
    Ok(if report.ok() { 0 } else { 1 })
}

fn cmd_normalize(file: &Path, lenient: bool) -> Result<u8, Failure> {
    let tuple = load_tuple(file)?;
    let tuple = if lenient {
        let (coerced, report) = tuple.validate_lenient();
        if !report.ok() {
            return Err(Failure::Input(format!(
                "{}: not admissible: {report}",
                file.display()
            )));
        }
        coerced
    } else {
        tuple
    };
    let canonical = tuple
        .canonicalize()
        .map_err(|e| Failure::Input(format!("{}: {e}", file.display())))?;
    print!(
        "{}",
        canonical_json(&TupleDocument::from_tuple(canonical.as_tuple()))
    );
    Ok(0)
}

fn cmd_eq(file1: &Path, file2: &Path) -> Result<u8, Failure> {
    let a = load_valid_tuple(file1)?;
    let b = load_valid_tuple(file2)?;
    let equivalent = a.equivalent(&b).expect("both inputs validated");
    if equivalent {
        println!("equivalent");
        Ok(0)
    } else {
        println!("inequivalent");
        Ok(1)
    }
}

fn cmd_reduce(file: &Path) -> Result<u8, Failure> {
    let tuple = load_valid_tuple(file)?;
    match tuple.reduce_to_manifold() {
        Ok(result) => {
            let document = ReduceDocument {
                manifold: TupleDocument::from_manifold(&result.manifold),
                summands: result.summands,
            };
            print!("{}", canonical_json(&document));
            Ok(0)
        }
        Err(err @ ReduceError::ObstructionConflict { .. }) => Err(Failure::Domain(err.to_string())),
        Err(err) => Err(Failure::Input(format!("{}: {err}", file.display()))),
    }
}

fn cmd_assemble(file: &Path) -> Result<u8, Failure> {
    let tuple = load_valid_tuple(file)?;
    let plan = tuple.build_plan().expect("input validated");
    print!("{}", canonical_json(&PlanDocument::from_plan(&plan)));
    Ok(0)
}

fn cmd_collapse(file: &Path) -> Result<u8, Failure> {
    let text = read_file(file)?;
    let document: DecompositionDocument =
        parse_document(&text).map_err(|e| Failure::Input(format!("{}: {e}", file.display())))?;
    let decomposition = document
        .to_decomposition()
        .map_err(|e| Failure::Input(format!("{}: {e}", file.display())))?;
    match decomposition.to_invariants() {
        Ok(partial) => {
            print!(
                "{}",
                canonical_json(&PartialTupleDocument::from_partial(&partial))
            );
            Ok(0)
        }
        Err(err) => Err(Failure::Input(err.to_string())),
    }
}

fn census_cap() -> Result<u64, Failure> {
    match std::env::var(CAP_ENV_VAR) {
        Ok(raw) => raw.trim().parse::<u64>().map_err(|_| {
            Failure::Input(format!(
                "{CAP_ENV_VAR} must be a non-negative integer, got {raw:?}"
            ))
        }),
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_CAP),
        Err(err) => Err(Failure::Input(format!("{CAP_ENV_VAR}: {err}"))),
    }
}

fn cmd_census(bounds: &Bounds) -> Result<u8, Failure> {
    let cap = census_cap()?;
    let stdout = std::io::stdout();
    let mut out = std::io::BufWriter::new(stdout.lock());
    let mut count: u64 = 0;
    let result = visit_census(bounds, cap, |canonical| {
        count += 1;
        let line = canonical_json(&TupleDocument::from_tuple(canonical.as_tuple()));
        out.write_all(line.as_bytes()).expect("stdout");
    });
    out.flush().expect("stdout");
    match result {
        Ok(()) => {
            eprintln!("{count}");
            Ok(0)
        }
        Err(err @ EnumerateError::TooLarge { .. }) => Err(Failure::Cap(err.to_string())),
        Err(err) => Err(Failure::Input(err.to_string())),
    }
}

fn cmd_random(seed: u64, bounds: &Bounds) -> Result<u8, Failure> {
    match lca3_core::random_valid(seed, bounds) {
        Ok(tuple) => {
            print!("{}", canonical_json(&TupleDocument::from_tuple(&tuple)));
            Ok(0)
        }
        Err(err) => Err(Failure::Input(err.to_string())),
    }
}
