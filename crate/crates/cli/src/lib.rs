//! The `mspace` command line.
//!
//! Exit codes: 0 when a decision is true or a suite passes, 1 when it is
//! false or a suite fails, 2 on usage and input errors.

pub mod format;
pub mod report;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use mspace_core::classify::{affine_equivalent, affine_normalize, classify, similar_spaces};
use mspace_core::construct::{alt_space, companion_line, nt_space, p_alt, vee};
use mspace_core::enumerate::EnumOptions;
use mspace_core::spectrum::spectrum_report;
use mspace_core::verify::{run_suite, SuiteArgs, SuiteReport, SUITE_NAMES};
use mspace_core::{AffineSpace, FieldDesc, Matrix, MatrixSubspace, Scalar};
use serde::Serialize;
use thiserror::Error;

use format::{parse_mspace, write_mspace, MSpace, ParseError};
use report::{field_name, CheckReport, ClassifyReport, DecisionReport};

#[derive(Parser, Debug)]
#[command(name = "mspace", version, about = "Classify linear spaces of matrices with trivial spectrum")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: GlobalArgs,
}

#[derive(Args, Debug)]
struct GlobalArgs {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for sampled suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Sample count for sampled suites.
    #[arg(long, global = true, default_value_t = 100)]
    samples: usize,
    /// Worker threads for exhaustive enumeration.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Enumerate past the size guardrail.
    #[arg(long, global = true)]
    force: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Block decomposition of a maximal trivial-spectrum space.
    Classify { file: PathBuf },
    /// Spectrum report: trivial spectrum, witness, total intransitivity, maximality.
    Check { file: PathBuf },
    /// Whether two maximal trivial-spectrum spaces are similar.
    Similar { a: PathBuf, b: PathBuf },
    /// Whether two affine spaces of invertible matrices are equivalent.
    /// A linear file V is read as I + V.
    Equiv { a: PathBuf, b: PathBuf },
    /// Write a standard space as a .mspace file.
    Construct(ConstructArgs),
    /// Run a verification suite, or `all`.
    Verify(VerifyArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Kind {
    Alt,
    Nt,
    Palt,
    Vee,
    Companion,
}

#[derive(Args, Debug)]
struct ConstructArgs {
    kind: Kind,
    /// Input files for `vee`.
    inputs: Vec<PathBuf>,
    /// A prime or Q.
    #[arg(long, default_value = "3")]
    field: String,
    #[arg(long)]
    n: Option<usize>,
    /// Gram matrix for `palt`, rows separated by `;`, e.g. "1 0; 0 1".
    #[arg(long)]
    gram: Option<String>,
    /// Companion line coefficient `a` in [[0, b], [1, a]].
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    /// Companion line coefficient `b` in [[0, b], [1, a]].
    #[arg(long, allow_hyphen_values = true)]
    b: Option<String>,
    /// Write I + V instead of V.
    #[arg(long)]
    affine: bool,
    /// Output path; standard output when absent.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Suite name or `all`.
    name: String,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    q: Option<u64>,
    #[arg(long)]
    max_n: Option<usize>,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
    #[error("{module}: {}: {source}", variant(source))]
    Core { module: &'static str, source: mspace_core::Error },
}

fn variant(e: &mspace_core::Error) -> String {
    let dbg = format!("{e:?}");
    dbg.split(|c: char| !c.is_alphanumeric()).next().unwrap_or_default().to_string()
}

trait Context<T> {
    fn ctx(self, module: &'static str) -> Result<T, CliError>;
}

impl<T> Context<T> for mspace_core::Result<T> {
    fn ctx(self, module: &'static str) -> Result<T, CliError> {
        self.map_err(|source| CliError::Core { module, source })
    }
}

fn read_space(path: &Path) -> Result<MSpace, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
    parse_mspace(&text).map_err(|source| CliError::Parse { path: path.display().to_string(), source })
}

fn read_linear(path: &Path, module: &'static str, opts: &EnumOptions) -> Result<MatrixSubspace, CliError> {
    match read_space(path)? {
        MSpace::Linear(v) => Ok(v),
        MSpace::Affine(a) => affine_normalize(&a, opts).ctx(module),
    }
}

fn parse_field(s: &str) -> Result<FieldDesc, CliError> {
    if s == "Q" {
        return Ok(FieldDesc::rational());
    }
    let p: u64 = s.parse().map_err(|_| CliError::Usage(format!("field must be a prime or Q, got `{s}`")))?;
    FieldDesc::prime(p).ctx("linalg")
}

fn parse_scalar(field: FieldDesc, s: &str) -> Result<Scalar, CliError> {
    field.parse_scalar(s).ok_or_else(|| CliError::Usage(format!("`{s}` is not a value of {field}")))
}

fn parse_gram(field: FieldDesc, s: &str) -> Result<Matrix, CliError> {
    let rows: Vec<Vec<&str>> = s.split(';').map(|r| r.split_whitespace().collect()).collect();
    let m = rows.len();
    if rows.iter().any(|r| r.len() != m) {
        return Err(CliError::Usage(format!("gram `{s}` is not square")));
    }
    let entries = rows.iter().flatten().map(|t| parse_scalar(field, t)).collect::<Result<Vec<_>, _>>()?;
    Matrix::from_scalars(field, m, m, &entries).ctx("linalg")
}

struct Output<'a> {
    out: &'a mut dyn Write,
    json: bool,
}

impl Output<'_> {
    fn emit<T: Serialize>(&mut self, value: &T, text: impl FnOnce() -> String) -> std::io::Result<()> {
        if self.json {
            let s = serde_json::to_string_pretty(value).expect("reports serialize");
            writeln!(self.out, "{s}")
        } else {
            write!(self.out, "{}", text())
        }
    }
}

fn indent(m: &Matrix) -> String {
    m.to_string().lines().map(|l| format!("  {l}\n")).collect()
}

fn suite_text(r: &SuiteReport) -> String {
    let status = if r.passed() { "PASS" } else { "FAIL" };
    let mut s = format!(
        "{}: {status} ({} checks, {} failures, {:.3}s)\n",
        r.suite,
        r.checks_run,
        r.failures.len(),
        r.elapsed.as_secs_f64()
    );
    for f in &r.failures {
        s.push_str(&format!("  input: {}\n    expected: {}\n    actual: {}\n", f.input, f.expected, f.actual));
    }
    s
}

fn io_err(e: std::io::Error) -> CliError {
    CliError::Io { path: "<stdout>".into(), source: e }
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    let g = &cli.global;
    let opts = EnumOptions { jobs: g.jobs.max(1), force: g.force };
    let mut o = Output { out, json: g.json };
    match cli.command {
        Command::Classify { file } => {
            let v = read_linear(&file, "classify", &opts)?;
            let d = classify(&v, &opts).ctx("classify")?;
            let rep = ClassifyReport::new(v.field(), v.n(), &d);
            o.emit(&rep, || {
                let sizes: Vec<String> = d.sizes().iter().map(usize::to_string).collect();
                let mut s = format!("field {}, n = {}\nblocks: {}\n", v.field(), v.n(), sizes.join(" "));
                for (i, b) in d.blocks.iter().enumerate() {
                    s.push_str(&format!("block {} (size {}), gram:\n{}", i + 1, b.size(), indent(b.gram())));
                }
                s.push_str(&format!("basis change S (S^-1 V S is the block model):\n{}", indent(&d.basis_change)));
                s.push_str(&format!("verified: {}\n", d.verified));
                s
            })
            .map_err(io_err)?;
            Ok(0)
        }
        Command::Check { file } => {
            let v = read_linear(&file, "spectrum", &opts)?;
            let r = spectrum_report(&v, &opts).ctx("spectrum")?;
            let rep = CheckReport::new(v.field(), v.n(), v.dim(), &r);
            o.emit(&rep, || {
                let mut s = format!("field {}, n = {}, dim = {}\n", v.field(), v.n(), v.dim());
                s.push_str(&format!("trivial spectrum: {}\n", r.trivial_spectrum));
                if let Some(w) = &r.witness {
                    s.push_str(&format!("witness: M X = X with X = {} and M =\n{}", w.vector, indent(&w.matrix)));
                }
                s.push_str(&format!("totally intransitive: {}\nmaximal: {}\n", r.totally_intransitive, r.maximal));
                if let Some(irr) = r.irreducible {
                    s.push_str(&format!("irreducible: {irr}\n"));
                }
                s
            })
            .map_err(io_err)?;
            Ok(if r.trivial_spectrum { 0 } else { 1 })
        }
        Command::Similar { a, b } => {
            let va = read_linear(&a, "classify", &opts)?;
            let vb = read_linear(&b, "classify", &opts)?;
            let res = similar_spaces(&va, &vb, &opts).ctx("classify")?;
            let rep = DecisionReport { field: field_name(va.field()), n: va.n(), decision: "similar", result: res };
            o.emit(&rep, || format!("similar: {res}\n")).map_err(io_err)?;
            Ok(if res { 0 } else { 1 })
        }
        Command::Equiv { a, b } => {
            let aa = read_space(&a)?.into_affine().ctx("linalg")?;
            let ab = read_space(&b)?.into_affine().ctx("linalg")?;
            let res = affine_equivalent(&aa, &ab, &opts).ctx("classify")?;
            let rep = DecisionReport { field: field_name(aa.field()), n: aa.n(), decision: "equivalent", result: res };
            o.emit(&rep, || format!("equivalent: {res}\n")).map_err(io_err)?;
            Ok(if res { 0 } else { 1 })
        }
        Command::Construct(args) => {
            let space = construct(&args)?;
            let space = if args.affine {
                MSpace::Affine(AffineSpace::new(Matrix::identity(space.field(), space.n()), space).ctx("construct")?)
            } else {
                MSpace::Linear(space)
            };
            let text = write_mspace(&space);
            match &args.output {
                Some(path) => std::fs::write(path, text)
                    .map_err(|source| CliError::Io { path: path.display().to_string(), source })?,
                None => o.out.write_all(text.as_bytes()).map_err(io_err)?,
            }
            Ok(0)
        }
        Command::Verify(args) => {
            let names: Vec<&str> = if args.name == "all" { SUITE_NAMES.to_vec() } else { vec![args.name.as_str()] };
            let sargs = SuiteArgs { n: args.n, q: args.q, max_n: args.max_n, samples: g.samples, seed: g.seed };
            let mut reports = Vec::new();
            for name in names {
                let r = run_suite(name, &sargs, &opts).ctx("verify")?;
                if !o.json {
                    write!(o.out, "{}", suite_text(&r)).map_err(io_err)?;
                }
                reports.push(r);
            }
            if o.json {
                let s = if reports.len() == 1 {
                    serde_json::to_string_pretty(&reports[0])
                } else {
                    serde_json::to_string_pretty(&reports)
                };
                writeln!(o.out, "{}", s.expect("reports serialize")).map_err(io_err)?;
            }
            Ok(if reports.iter().all(SuiteReport::passed) { 0 } else { 1 })
        }
    }
}

fn construct(args: &ConstructArgs) -> Result<MatrixSubspace, CliError> {
    let field = parse_field(&args.field)?;
    let need_n = || args.n.ok_or_else(|| CliError::Usage("--n is required".into()));
    match args.kind {
        Kind::Alt => Ok(alt_space(need_n()?, field)),
        Kind::Nt => Ok(nt_space(need_n()?, field)),
        Kind::Palt => {
            let gram = args.gram.as_deref().ok_or_else(|| CliError::Usage("--gram is required".into()))?;
            p_alt(&parse_gram(field, gram)?).ctx("construct")
        }
        Kind::Companion => {
            let a = parse_scalar(field, args.a.as_deref().unwrap_or("0"))?;
            let b = parse_scalar(field, args.b.as_deref().unwrap_or("0"))?;
            companion_line(&a, &b).ctx("construct")
        }
        Kind::Vee => {
            if args.inputs.len() != 2 {
                return Err(CliError::Usage("vee takes exactly two input files".into()));
            }
            let load = |p: &PathBuf| match read_space(p)? {
                MSpace::Linear(v) => Ok(v),
                MSpace::Affine(_) => Err(CliError::Usage(format!("{}: vee needs linear spaces", p.display()))),
            };
            vee(&load(&args.inputs[0])?, &load(&args.inputs[1])?).ctx("construct")
        }
    }
}

/// Runs the command line `argv` (program name first), writing the report to
/// `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let shown = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{shown}");
                    0
                }
                _ => {
                    let _ = write!(err, "{shown}");
                    2
                }
            };
        }
    };
    match execute(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}
