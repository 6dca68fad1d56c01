//! Command-line front end. [`run`] parses arguments, executes one subcommand
//! and returns the process exit code: 0 on success, 1 when a verification
//! check fails, 2 on usage or input errors.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::{json, Value};

use crate::bases::{dim_report, divfree_basis, divfree_preimage_basis, omega_images, omega_set, zeta_basis};
use crate::error::{Error, Result};
use crate::fock::VectorField;
use crate::json::{complex_field_to_doc, field_to_doc, parse_field, FloatTermDoc, FloatVectorDoc};
use crate::linalg::{Mode, Rational};
use crate::projections::{cyclic_gradient_basis, leray, project_cyclic};
use crate::verify::{run_checks, Check, CheckReport, CHECK_NAMES};
use crate::words::{enumerate_orbit_reps, necklace_count};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Worker count for parallel checks; 0 or unset means one per core.
pub const THREADS_ENV: &str = "FOCK_LERAY_THREADS";

#[derive(Debug, Parser)]
#[command(name = "fock-leray", version, about = "Cyclic gradients, divergence-free fields and the free Leray projection on the full Fock space")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Dimension table for degrees 0..=max-degree
    Dims(DimsArgs),
    /// Necklace counts (and optionally representatives) for lengths 1..=max-length
    Necklaces(NecklacesArgs),
    /// Basis of one homogeneous degree
    Basis(BasisArgs),
    /// Project a vector field read from JSON
    Project(ProjectArgs),
    /// Run verification checks and print their reports
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BasisKind {
    Gradient,
    Divfree,
    Zeta,
    Omega,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProjectionKind {
    Cyclic,
    Leray,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exact,
    Float,
}

#[derive(Debug, Args)]
pub struct DimsArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub max_degree: usize,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct NecklacesArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub max_length: usize,
    /// List canonical representatives instead of counts
    #[arg(long)]
    pub list: bool,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BasisArgs {
    #[arg(long, value_enum)]
    pub kind: BasisKind,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub degree: usize,
    /// Defaults to float for zeta and exact otherwise
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    /// Also emit each vector scaled to unit norm in double precision
    #[arg(long)]
    pub normalized: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ProjectArgs {
    #[arg(long)]
    pub n: usize,
    /// Input field as JSON; `-` reads standard input
    #[arg(long = "in")]
    pub input: String,
    #[arg(long, value_enum)]
    pub kind: ProjectionKind,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("which").required(true).args(["all", "check"])))]
pub struct VerifyArgs {
    /// Run every check
    #[arg(long)]
    pub all: bool,
    /// Run a single named check across degrees
    #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(CHECK_NAMES))]
    pub check: Option<String>,
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    #[arg(long, default_value_t = 3)]
    pub max_degree: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Checks,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

/// Runs with the process's standard streams.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    run_with(args, &mut io::stdout().lock(), &mut io::stderr().lock())
}

pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let pool = match thread_pool() {
        Ok(pool) => pool,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            return EXIT_USAGE;
        }
    };
    match execute(cli.command, &pool, out, err) {
        Ok(()) => EXIT_OK,
        Err(Failure::Checks) => EXIT_CHECK_FAILED,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn thread_pool() -> std::result::Result<rayon::ThreadPool, String> {
    let threads = match std::env::var(THREADS_ENV) {
        Ok(v) if !v.trim().is_empty() => {
            v.trim().parse::<usize>().map_err(|_| format!("{THREADS_ENV} must be a non-negative integer, got {v:?}"))?
        }
        _ => 0,
    };
    rayon::ThreadPoolBuilder::new().num_threads(threads).build().map_err(|e| e.to_string())
}

fn execute(
    command: Command,
    pool: &rayon::ThreadPool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> std::result::Result<(), Failure> {
    match command {
        Command::Dims(a) => emit(a.out.as_ref(), out, &dims(&a)?),
        Command::Necklaces(a) => emit(a.out.as_ref(), out, &necklaces(&a)?),
        Command::Basis(a) => emit(a.out.as_ref(), out, &basis(&a)?),
        Command::Project(a) => emit(a.out.as_ref(), out, &project(&a)?),
        Command::Verify(a) => verify(&a, pool, out, err),
    }
}

fn emit(path: Option<&PathBuf>, out: &mut dyn Write, text: &str) -> std::result::Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn to_json(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents always serialize");
    s.push('\n');
    s
}

pub const DIMS_HEADER: &str = "n,k,ambient,necklaces,dim_cyclic,dim_divfree,dim_vect_leq";

fn dims(a: &DimsArgs) -> Result<String> {
    let rows = (0..=a.max_degree).map(|k| dim_report(a.n, k)).collect::<Result<Vec<_>>>()?;
    Ok(match a.format {
        Format::Json => to_json(&rows),
        Format::Csv => {
            let mut s = format!("{DIMS_HEADER}\n");
            for r in rows {
                s.push_str(&format!(
                    "{},{},{},{},{},{},{}\n",
                    r.n, r.k, r.ambient, r.necklaces, r.dim_cyclic, r.dim_divfree, r.dim_vect_leq
                ));
            }
            s
        }
    })
}

fn necklaces(a: &NecklacesArgs) -> Result<String> {
    let mut rows = Vec::new();
    for len in 1..=a.max_length {
        let count = necklace_count(a.n, len)?;
        let reps = if a.list { Some(enumerate_orbit_reps(a.n, len)?.collect::<Vec<_>>()) } else { None };
        rows.push((len, count, reps));
    }
    Ok(match a.format {
        Format::Json => {
            let docs: Vec<Value> = rows
                .iter()
                .map(|(len, count, reps)| {
                    let mut v = json!({"n": a.n, "length": len, "count": count});
                    if let Some(reps) = reps {
                        v["necklaces"] = reps.iter().map(|w| w.letters().to_vec()).collect::<Vec<_>>().into();
                    }
                    v
                })
                .collect();
            to_json(&docs)
        }
        Format::Csv if a.list => {
            let mut s = String::from("n,length,necklace\n");
            for (len, _, reps) in &rows {
                for w in reps.iter().flatten() {
                    let letters: Vec<String> = w.letters().iter().map(|l| l.to_string()).collect();
                    s.push_str(&format!("{},{},{}\n", a.n, len, letters.join(" ")));
                }
            }
            s
        }
        Format::Csv => {
            let mut s = String::from("n,length,count\n");
            for (len, count, _) in &rows {
                s.push_str(&format!("{},{},{}\n", a.n, len, count));
            }
            s
        }
    })
}

fn unit_doc(v: &VectorField<Rational>) -> FloatVectorDoc {
    let norm = v.squared_norm().to_f64().unwrap_or(f64::NAN).sqrt();
    FloatVectorDoc {
        n: v.n(),
        terms: v
            .terms()
            .iter()
            .map(|((w, d), c)| FloatTermDoc {
                word: w.letters().to_vec(),
                dir: Some(*d),
                re: c.to_f64().unwrap_or(f64::NAN) / norm,
                im: 0.0,
            })
            .collect(),
    }
}

fn exact_element(mut meta: Value, v: &VectorField<Rational>, mode: Mode, normalized: bool) -> Value {
    meta["vector"] = match mode {
        Mode::Exact => serde_json::to_value(field_to_doc(v)),
        Mode::Float => serde_json::to_value(complex_field_to_doc(&v.to_complex())),
    }
    .expect("documents always serialize");
    if normalized {
        meta["normalized"] = serde_json::to_value(unit_doc(v)).expect("documents always serialize");
    }
    meta
}

fn basis(a: &BasisArgs) -> Result<String> {
    let mode = match (a.kind, a.mode) {
        (_, Some(ModeArg::Float)) | (BasisKind::Zeta, None) => Mode::Float,
        (_, Some(ModeArg::Exact)) | (_, None) => Mode::Exact,
    };
    let (n, k) = (a.n, a.degree);
    let elements: Vec<Value> = match a.kind {
        BasisKind::Gradient => cyclic_gradient_basis(n, k)?
            .iter()
            .map(|b| {
                let meta = json!({
                    "representative": b.orbit.representative().letters(),
                    "stabilizer_order": b.orbit.stabilizer_order(),
                    "orbit_size": b.orbit.size(),
                    "squared_norm": b.squared_norm.to_string(),
                });
                exact_element(meta, &b.vector, mode, a.normalized)
            })
            .collect(),
        BasisKind::Divfree => {
            let pre = divfree_preimage_basis(n, k)?;
            divfree_basis(n, k)?
                .iter()
                .zip(&pre)
                .map(|(v, p)| {
                    let preimage = serde_json::to_value(crate::json::fock_to_doc(p)).expect("serializable");
                    exact_element(json!({ "preimage": preimage }), v, mode, a.normalized)
                })
                .collect()
        }
        BasisKind::Omega => omega_set(n, k)?
            .iter()
            .zip(omega_images(n, k)?)
            .map(|(w, v)| exact_element(json!({ "word": w.letters() }), &v, mode, a.normalized))
            .collect(),
        BasisKind::Zeta => zeta_basis(n, k, mode)?
            .iter()
            .map(|z| {
                let mut v = json!({
                    "representative": z.representative.letters(),
                    "period": z.period,
                    "root_index": z.root_index,
                    "vector": complex_field_to_doc(&z.vector),
                });
                if a.normalized {
                    let norm = z.vector.squared_norm().re.sqrt();
                    let unit = z.vector.scale(&num_complex::Complex64::new(1.0 / norm, 0.0));
                    v["normalized"] = serde_json::to_value(complex_field_to_doc(&unit)).expect("serializable");
                }
                v
            })
            .collect(),
    };
    let kind = match a.kind {
        BasisKind::Gradient => "gradient",
        BasisKind::Divfree => "divfree",
        BasisKind::Zeta => "zeta",
        BasisKind::Omega => "omega",
    };
    Ok(to_json(&json!({"kind": kind, "n": n, "degree": k, "mode": mode, "elements": elements})))
}

fn project(a: &ProjectArgs) -> Result<String> {
    let text = if a.input == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| Error::Parse(format!("reading standard input: {e}")))?;
        s
    } else {
        fs::read_to_string(&a.input).map_err(|e| Error::Parse(format!("reading {}: {e}", a.input)))?
    };
    let field = parse_field(&text)?;
    if field.n() != a.n {
        return Err(Error::AlphabetMismatch { left: a.n, right: field.n() });
    }
    let result = match a.kind {
        ProjectionKind::Cyclic => project_cyclic(&field),
        ProjectionKind::Leray => leray(&field),
    };
    Ok(to_json(&field_to_doc(&result)))
}

fn verify(
    a: &VerifyArgs,
    pool: &rayon::ThreadPool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> std::result::Result<(), Failure> {
    let checks = match &a.check {
        Some(name) => Check::family(name, a.n, a.max_degree, a.seed)?,
        None => Check::suite(a.n, a.max_degree, a.seed)?,
    };
    let reports: Vec<CheckReport> = pool.install(|| run_checks(&checks))?;
    emit(a.out.as_ref(), out, &to_json(&reports))?;
    let failed: Vec<&CheckReport> = reports.iter().filter(|r| !r.passed).collect();
    for r in &reports {
        writeln!(err, "{} {}", if r.passed { "PASS" } else { "FAIL" }, r.label())?;
    }
    writeln!(err, "{}/{} checks passed", reports.len() - failed.len(), reports.len())?;
    if failed.is_empty() {
        Ok(())
    } else {
        for r in failed {
            writeln!(err, "witness for {}: {}", r.label(), Value::Object(r.details.clone()))?;
        }
        Err(Failure::Checks)
    }
}
