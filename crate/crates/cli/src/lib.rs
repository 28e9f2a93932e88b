//! Command implementations behind the `xpoly` binary.
//!
//! [`run`] takes the argument list and two writers and returns the process
//! exit code, so the commands can be driven in-process.
//!
//! Exit codes: 0 success, 1 I/O error, 2 ineligible input, 3 verification
//! rejection, 4 construction failure, 5 parse error.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use xpoly::decompose::PartitionBlock;
use xpoly::document::{parse_verify_input, to_off, BlockList, VerifyInput};
use xpoly::{
    cross_partition, enumerate_all, search_partition, simplex_partition, Error, Modulus, Partition, PartitionDocument,
    Policy, SkeletonKind, SkeletonSpec,
};

#[derive(Parser)]
#[command(
    name = "xpoly",
    version,
    about = "Cyclically symmetric surface decompositions of cross polytope and simplex 2-skeleta"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decompose the triangles of beta^k (cross) or Delta^(k-1) (simplex).
    Decompose {
        kind: Kind,
        k: u32,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
        /// Write output here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Use the exact-cover search instead of the closed form.
        #[arg(long)]
        search: bool,
        /// Acceptance policy: genus-le-1 (default for cross), chi-nonneg,
        /// tori-moebius (default for simplex).
        #[arg(long)]
        policy: Option<String>,
    },
    /// Re-certify a partition document or a bare block list (JSON).
    Verify { file: PathBuf },
    /// List the canonical difference cycles mod n.
    Enumerate { n: u32 },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Cross,
    Simplex,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Json,
    Off,
}

enum Failure {
    Io(String),
    Core(Error),
    /// Already explained on stdout; only the exit code is left to set.
    Reported(u8),
    /// The reader went away (`xpoly enumerate 100 | head`); not an error.
    BrokenPipe,
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        if e.kind() == io::ErrorKind::BrokenPipe {
            Failure::BrokenPipe
        } else {
            Failure::Io(e.to_string())
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Io(_) => 1,
            Failure::Reported(code) => *code,
            Failure::BrokenPipe => 0,
            Failure::Core(e) => match e {
                Error::IneligibleK(_) | Error::InvalidSkeleton(_) | Error::InvalidModulus(_) => 2,
                Error::Rejected(_) | Error::ModulusMismatch { .. } | Error::DuplicateCycle(_) => 3,
                Error::ConstructionFailure(_) | Error::NoPartitionFound | Error::SearchGuard { .. } => 4,
                Error::Parse(_) | Error::InvalidGaps { .. } => 5,
                _ => 4,
            },
        }
    }
}

/// Sizes the global rayon pool from `XPOLY_THREADS`; only the first call in a
/// process has an effect.
pub fn configure_threads() {
    if let Some(n) = std::env::var("XPOLY_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        if n > 0 {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}

fn decompose(kind: Kind, k: u32, search: bool, policy: Option<String>) -> Result<Partition, Failure> {
    let kind = match kind {
        Kind::Cross => SkeletonKind::CrossPolytope,
        Kind::Simplex => SkeletonKind::Simplex,
    };
    let policy = match policy {
        Some(name) => Some(name.parse::<Policy>().map_err(|_| {
            Error::InvalidSkeleton(format!(
                "unknown policy `{}` (expected genus-le-1, chi-nonneg or tori-moebius)",
                name
            ))
        })?),
        None => None,
    };
    let chosen = policy.unwrap_or_else(|| Policy::default_for(kind));
    let p = match (kind, search) {
        (SkeletonKind::CrossPolytope, false) => cross_partition(k, chosen)?,
        (SkeletonKind::Simplex, false) => {
            if policy.is_some_and(|p| p != Policy::ToriAndMoebiusStrips) {
                return Err(Error::InvalidSkeleton("the simplex closed form uses policy tori-moebius".into()).into());
            }
            simplex_partition(k)?
        }
        (_, true) => {
            let spec = SkeletonSpec::new(kind, k)?;
            if kind == SkeletonKind::Simplex && !spec.simplex_eligible() {
                return Err(Error::IneligibleK(k).into());
            }
            search_partition(&spec, chosen)?
        }
    };
    Ok(p)
}

fn run_decompose(
    out_w: &mut dyn Write,
    kind: Kind,
    k: u32,
    format: Format,
    out: Option<PathBuf>,
    search: bool,
    policy: Option<String>,
) -> Result<(), Failure> {
    let p = decompose(kind, k, search, policy)?;
    let text = match format {
        Format::Table => PartitionDocument::from_partition(&p).to_table(),
        Format::Json => PartitionDocument::from_partition(&p).to_json(),
        Format::Off => to_off(&p),
    };
    match out {
        Some(path) => fs::write(&path, text).map_err(|e| Failure::Io(format!("{}: {}", path.display(), e))),
        None => {
            out_w.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn print_verdicts(out: &mut dyn Write, list: &BlockList) -> io::Result<()> {
    let Ok(spec) = list.spec() else { return Ok(()) };
    let policy = list.policy();
    for (i, cycles) in list.blocks.iter().enumerate() {
        let names: Vec<String> = cycles.iter().map(|d| d.to_string()).collect();
        let verdict = match PartitionBlock::new(spec.modulus(), cycles) {
            Ok(b) => {
                let ok = policy.accepts(&b.certificate)
                    && b.symmetry.shift_invariant
                    && cycles.iter().all(|d| spec.contains_cycle(d));
                format!("{} [{}]", b.certificate.summary(), if ok { "ok" } else { "FAIL" })
            }
            Err(e) => format!("{} [FAIL]", e),
        };
        writeln!(out, "block {}: {} -> {}", i + 1, names.join(", "), verdict)?;
    }
    Ok(())
}

fn run_verify(out: &mut dyn Write, file: PathBuf) -> Result<(), Failure> {
    let text = fs::read_to_string(&file).map_err(|e| Failure::Io(format!("{}: {}", file.display(), e)))?;
    let input = parse_verify_input(&text)?;
    let list = input.block_list();
    if let VerifyInput::Document(doc) = &input {
        writeln!(
            out,
            "# {} k={} policy {}",
            doc.header.kind, doc.header.k, doc.header.policy
        )?;
    }
    print_verdicts(out, &list)?;
    match list.verify() {
        Ok(p) => {
            writeln!(
                out,
                "ACCEPTED: {} blocks, {} of {} triangles, disjoint and complete",
                p.blocks.len(),
                p.coverage.covered_triangles,
                p.coverage.skeleton_triangles
            )?;
            Ok(())
        }
        Err(e) => {
            writeln!(out, "REJECTED: {}", e)?;
            Err(Failure::Reported(Failure::Core(e).exit_code()))
        }
    }
}

fn run_enumerate(out: &mut dyn Write, n: u32) -> Result<(), Failure> {
    let n = Modulus::new(n)?;
    for d in enumerate_all(n) {
        let chirality = if d.is_achiral() { "achiral" } else { "chiral" };
        writeln!(out, "{:<20} orbit {:>4}  {}", d.to_string(), d.orbit_size(), chirality)?;
    }
    Ok(())
}

/// Parses `args` (program name first) and runs the command, writing normal
/// output to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
                2
            } else {
                let _ = out.write_all(text.as_bytes());
                0
            };
        }
    };
    let result = match cli.command {
        Command::Decompose {
            kind,
            k,
            format,
            out: path,
            search,
            policy,
        } => run_decompose(out, kind, k, format, path, search, policy),
        Command::Verify { file } => run_verify(out, file),
        Command::Enumerate { n } => run_enumerate(out, n),
    };
    match result {
        Ok(()) => 0,
        Err(f) => {
            let _ = match &f {
                Failure::Io(msg) => writeln!(err, "error: {}", msg),
                Failure::Core(e) => writeln!(err, "error: {}", e),
                Failure::Reported(_) | Failure::BrokenPipe => Ok(()),
            };
            f.exit_code()
        }
    }
}
