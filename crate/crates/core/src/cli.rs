//! Command-line driver: `gen`, `verify`, `suite` and `inspect`.
//!
//! Exit statuses: 0 success, 1 verification inequality or failed trials,
//! 2 invalid input, 3 I/O failure.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::cohomology::{cocycle_basis, non_parabolic_punctures, random_parabolic};
use crate::error::{Error, Result};
use crate::io::{write_text, Instance};
use crate::normal_function::build_section;
use crate::pencil::PencilModel;
use crate::poincare_degree::{require_parabolic, verify_theorem};
use crate::random::Rng;
use crate::suite::run_suite;
use crate::symplectic::Ring;

pub const EXIT_OK: i32 = 0;
pub const EXIT_UNEQUAL: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "nf-pairing", version, about = "Intersection pairings of normal functions on pencil models")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate an instance document.
    Gen(GenArgs),
    /// Compare both sides of the pairing identity for one pair of cocycles.
    Verify(VerifyArgs),
    /// Run the randomized property battery.
    Suite(SuiteArgs),
    /// Print a human-readable summary of an instance.
    Inspect(InspectArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RingArg {
    Int,
    Rat,
}

impl From<RingArg> for Ring {
    fn from(r: RingArg) -> Ring {
        match r {
            RingArg::Int => Ring::Integers,
            RingArg::Rat => Ring::Rationals,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Builtin {
    Elliptic12,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, default_value_t = 1)]
    pub genus: i64,
    /// Number of word letters `k`; the pencil has `2k` punctures. Defaults to `2g + 1`.
    #[arg(long)]
    pub half_length: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "int")]
    pub ring: RingArg,
    /// Emit a stored fixture instead of a random instance.
    #[arg(long, value_enum)]
    pub builtin: Option<Builtin>,
    /// Draw a Lefschetz (transvection) pencil; `--half-length` is ignored.
    #[arg(long)]
    pub lefschetz: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub instance: PathBuf,
    /// Indices of the two cocycles to pair.
    #[arg(long, value_delimiter = ',', num_args = 2, default_values_t = [0usize, 1])]
    pub pair: Vec<usize>,
    #[arg(long, default_value_t = 1)]
    pub mesh: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SuiteArgs {
    #[arg(long, default_value_t = 200)]
    pub trials: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "int")]
    pub ring: RingArg,
    #[arg(long, default_value_t = 1)]
    pub mesh: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct InspectArgs {
    pub instance: PathBuf,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Io(_) => EXIT_IO,
        _ => EXIT_INVALID,
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Gen(a) => cmd_gen(a, out),
        Command::Verify(a) => cmd_verify(a, out),
        Command::Suite(a) => cmd_suite(a, out),
        Command::Inspect(a) => cmd_inspect(a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn emit(out: &mut dyn Write, s: &str) -> Result<()> {
    out.write_all(s.as_bytes()).map_err(|e| Error::Io(e.to_string()))
}

fn write_or_print(path: Option<&Path>, text: &str, out: &mut dyn Write) -> Result<()> {
    match path {
        Some(p) => write_text(p, text),
        None => emit(out, text),
    }
}

/// The instance `gen` produces for the given parameters.
pub fn generate(args: &GenArgs) -> Result<Instance> {
    if let Some(Builtin::Elliptic12) = args.builtin {
        return Ok(Instance::builtin_elliptic12());
    }
    if args.genus < 1 {
        return Err(Error::InvalidGenus(args.genus));
    }
    let mut rng = Rng::from_seed(args.seed);
    let pencil = if args.lefschetz {
        PencilModel::random_lefschetz(args.genus, rng.next_u64())?
    } else {
        let k = args.half_length.unwrap_or(2 * args.genus as usize + 1);
        if k == 0 {
            return Err(Error::InvalidParameter("half-length must be positive".into()));
        }
        PencilModel::random_instance(args.genus, k, rng.next_u64())?
    };
    let pencil = Arc::new(pencil);
    let mut inst = Instance::new(pencil.clone(), Some(args.seed));
    for _ in 0..2 {
        let (c, a) = random_parabolic(&pencil, args.ring.into(), &mut rng);
        inst.push(c, Some(a));
    }
    Ok(inst)
}

fn cmd_gen(args: &GenArgs, out: &mut dyn Write) -> Result<i32> {
    let inst = generate(args)?;
    let text = inst.to_json()?;
    write_or_print(args.out.as_deref(), &text, out)?;
    if let Some(p) = &args.out {
        emit(
            out,
            &format!(
                "wrote {} (genus {}, {} punctures, {} cocycles)\n",
                p.display(),
                inst.pencil.genus(),
                inst.pencil.punctures(),
                inst.cocycles.len()
            ),
        )?;
    }
    Ok(EXIT_OK)
}

fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<i32> {
    let inst = Instance::read(&args.instance)?;
    let (i, j) = (args.pair[0], args.pair[1]);
    let n = inst.cocycles.len();
    if i >= n || j >= n {
        return Err(Error::InvalidParameter(format!("pair {i},{j} out of range for {n} cocycles")));
    }
    let get = |k: usize| -> Result<_> {
        let entry = &inst.cocycles[k];
        let a = match &entry.potentials {
            Some(a) => a.clone(),
            None => require_parabolic(&entry.cocycle)?,
        };
        Ok((entry.cocycle.clone(), a))
    };
    let (c1, a1) = get(i)?;
    let (c2, a2) = get(j)?;
    let report = verify_theorem(&c1, &a1, &c2, &a2, args.mesh, inst.seed)?;
    match &args.out {
        Some(p) => {
            write_text(p, &report.to_json())?;
            emit(
                out,
                &format!(
                    "lhs {} rhs {} {}\n",
                    report.lhs,
                    report.rhs,
                    if report.equal { "equal" } else { "NOT EQUAL" }
                ),
            )?;
        }
        None => emit(out, &report.to_json())?,
    }
    Ok(if report.equal { EXIT_OK } else { EXIT_UNEQUAL })
}

fn cmd_suite(args: &SuiteArgs, out: &mut dyn Write) -> Result<i32> {
    if args.trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1".into()));
    }
    if args.mesh == 0 {
        return Err(Error::InvalidParameter("mesh must be at least 1".into()));
    }
    let summary = run_suite(args.seed, args.trials, args.ring.into(), args.mesh);
    let mut text = format!("suite seed {} trials {} ring {}\n", args.seed, args.trials, Ring::from(args.ring));
    for (check, passes) in &summary.check_passes {
        text.push_str(&format!("  {check:<12} {passes}/{}\n", args.trials));
    }
    text.push_str(&format!(
        "passed {}/{}; total {:.0} ms, p50 {:.1} ms, p90 {:.1} ms, max {:.1} ms\n",
        summary.passed,
        summary.trials,
        summary.timing.total_ms,
        summary.timing.p50_ms,
        summary.timing.p90_ms,
        summary.timing.max_ms
    ));
    if !summary.failed_trials.is_empty() {
        text.push_str(&format!("failed trials: {:?}\n", summary.failed_trials));
    }
    emit(out, &text)?;
    if let Some(p) = &args.out {
        write_text(p, &summary.to_json())?;
    }
    Ok(if summary.all_passed() { EXIT_OK } else { EXIT_UNEQUAL })
}

/// The text printed by `inspect`.
pub fn describe(inst: &Instance) -> Result<String> {
    let p = &inst.pencil;
    let mut s = String::new();
    s.push_str(&format!("genus        {}\n", p.genus()));
    s.push_str(&format!("punctures    {}\n", p.punctures()));
    s.push_str(&format!("lefschetz    {}\n", p.is_lefschetz()));
    s.push_str("relation     ok\n");
    s.push_str(&format!("cocycle space dimension {}\n", cocycle_basis(p, Ring::Rationals).len()));
    if let Some(seed) = inst.seed {
        s.push_str(&format!("seed         {seed}\n"));
    }
    for (k, entry) in inst.cocycles.iter().enumerate() {
        let c = &entry.cocycle;
        let bad = non_parabolic_punctures(c, c.ring());
        s.push_str(&format!("\ncocycle {k} ({})\n", c.ring()));
        if bad.is_empty() {
            s.push_str("  parabolic    yes\n");
        } else {
            s.push_str(&format!("  parabolic    no (punctures {bad:?})\n"));
        }
        let section = build_section(c)?;
        s.push_str("  corner values\n");
        for (j, v) in section.corner_values().iter().enumerate() {
            s.push_str(&format!("    S_{j:<3} {v}\n"));
        }
    }
    Ok(s)
}

fn cmd_inspect(args: &InspectArgs, out: &mut dyn Write) -> Result<i32> {
    let inst = Instance::read(&args.instance)?;
    emit(out, &describe(&inst)?)?;
    Ok(EXIT_OK)
}
