//! `flagslice`: batch tables of Iwasawa–Schubert varieties, their
//! intersection points, counts, homology expansions and oracle checks.

mod rows;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use flagslice::homology::{base_cycle_class, total_cycle_class_su, HomologyExpansion, RealForm};
use flagslice::supq::{OrbitDescriptor, SignSequence};
use flagslice::verify::{self, Fault, VerifyOptions};
use flagslice::DimensionSequence;
use serde::Serialize;

const CONFIG_ERROR: u8 = 2;
const VERIFY_FAILED: u8 = 3;

#[derive(Parser)]
#[command(name = "flagslice", version, about = "Schubert varieties meeting base cycles of flag domains")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the varieties meeting the base cycle(s).
    Enumerate(Config),
    /// Each variety with its intersection points as exact flags.
    Points(Config),
    /// Number of varieties.
    Count(Config),
    /// Homology expansion of the base cycle (or of the total cycle for SU(p,q)).
    Homology(Config),
    /// Run the exact-geometry cross-checks.
    Verify(Config),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Form {
    Slnr,
    Slmh,
    Supq,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Clone, Debug)]
struct Config {
    #[arg(long, value_enum)]
    form: Form,
    /// Dimension of ℂⁿ (even for slmh); defaults to the sum of --dims.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    p: Option<usize>,
    #[arg(long)]
    q: Option<usize>,
    /// Dimension sequence, e.g. 2,1,2,1,2; complete flags by default.
    #[arg(long)]
    dims: Option<DimensionSequence>,
    /// SU(p,q) open orbit as a sign sequence, e.g. +-+-+ or (-+)(-+++)(-++).
    #[arg(long)]
    orbit: Option<SignSequence>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, hide = true, value_enum)]
    inject_fault: Option<InjectedFault>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum InjectedFault {
    NegatePredicate,
}

/// A validated configuration.
pub(crate) struct Resolved {
    pub form: RealForm,
    pub dims: DimensionSequence,
    pub orbit: Option<OrbitDescriptor>,
}

fn resolve(cfg: &Config) -> Result<Resolved> {
    let form = match cfg.form {
        Form::Slnr | Form::Slmh => {
            if cfg.p.is_some() || cfg.q.is_some() || cfg.orbit.is_some() {
                bail!("--p, --q and --orbit only apply to --form supq");
            }
            let n = cfg.n.or(cfg.dims.as_ref().map(|d| d.n())).context("--n (or --dims) is required for this form")?;
            if n == 0 {
                bail!("--n must be positive");
            }
            if cfg.form == Form::Slmh {
                if n % 2 != 0 {
                    bail!("--form slmh requires even --n, got {n}");
                }
                RealForm::Slmh { m: n / 2 }
            } else {
                RealForm::Slnr { n }
            }
        }
        Form::Supq => {
            let (p, q) = (cfg.p.context("--p is required for supq")?, cfg.q.context("--q is required for supq")?);
            if q == 0 || q > p {
                bail!("--form supq requires p ≥ q ≥ 1, got p = {p}, q = {q}");
            }
            if cfg.n.is_some_and(|n| n != p + q) {
                bail!("--n must equal p + q");
            }
            RealForm::Supq { p, q }
        }
    };
    let n = form.n();
    let orbit = match (&cfg.orbit, form) {
        (Some(alpha), RealForm::Supq { .. }) => Some(OrbitDescriptor::from_sign_sequence(alpha)?),
        _ => None,
    };
    let dims = match (&cfg.dims, &orbit) {
        (Some(d), Some(o)) if *d != o.dims() => {
            bail!("--dims {d} disagree with the blocks of --orbit ({})", o.dims())
        }
        (Some(d), _) => d.clone(),
        (None, Some(o)) => o.dims(),
        (None, None) => DimensionSequence::ones(n),
    };
    if dims.n() != n {
        bail!("--dims {dims} sum to {}, but n = {n}", dims.n());
    }
    if let (Some(o), RealForm::Supq { p, q }) = (&orbit, form) {
        if (o.p, o.q) != (p, q) {
            bail!("--orbit has {} minus and {} plus signs, expected q = {q} and p = {p}", o.q, o.p);
        }
    }
    if matches!(form, RealForm::Supq { .. }) && orbit.is_none() && !dims.is_complete() {
        bail!("partial flags for supq need --orbit");
    }
    Ok(Resolved { form, dims, orbit })
}

enum Output {
    Table(Box<dyn rows::Table>),
    Homology(HomologyExpansion),
    Report(verify::VerifyReport),
}

fn run(command: &Command) -> Result<(Output, bool)> {
    let cfg = match command {
        Command::Enumerate(c) | Command::Points(c) | Command::Count(c) | Command::Homology(c) | Command::Verify(c) => c,
    };
    let r = resolve(cfg).map_err(|e| e.context(ConfigError))?;
    let lib = |e: flagslice::Error| anyhow::Error::new(e).context(ConfigError);
    Ok(match command {
        Command::Enumerate(_) => (Output::Table(Box::new(rows::enumerate(&r).map_err(lib)?)), true),
        Command::Points(_) => (Output::Table(Box::new(rows::points(&r).map_err(lib)?)), true),
        Command::Count(_) => (Output::Table(Box::new(rows::count(&r).map_err(lib)?)), true),
        Command::Homology(_) => {
            let e = match (r.form, &r.orbit) {
                (RealForm::Supq { p, q }, None) => total_cycle_class_su(p, q),
                _ => base_cycle_class(r.form, &r.dims, r.orbit.as_ref()),
            }
            .map_err(lib)?;
            (Output::Homology(e), true)
        }
        Command::Verify(_) => {
            let opts = VerifyOptions {
                seed: cfg.seed,
                fault: cfg.inject_fault.map(|InjectedFault::NegatePredicate| Fault::NegatePredicate),
                ..Default::default()
            };
            let report = match r.form {
                RealForm::Slnr { n } => verify::verify_slnr(n, &r.dims, &opts),
                RealForm::Slmh { m } => verify::verify_slmh(m, &r.dims, &opts),
                RealForm::Supq { p, q } => verify::verify_supq(p, q, r.orbit.as_ref(), &opts),
            }
            .map_err(lib)?;
            let ok = report.passed();
            (Output::Report(report), ok)
        }
    })
}

/// Marks errors caused by the requested configuration.
#[derive(Debug)]
struct ConfigError;

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("invalid configuration")
    }
}

fn render(output: &Output, format: Format) -> Result<Vec<u8>> {
    fn json<T: Serialize + ?Sized>(v: &T) -> Result<Vec<u8>> {
        let mut buf = serde_json::to_vec_pretty(v)?;
        buf.push(b'\n');
        Ok(buf)
    }
    match (output, format) {
        (Output::Table(t), Format::Json) => t.json(),
        (Output::Table(t), Format::Csv) => t.csv(),
        (Output::Homology(e), Format::Json) => json(e),
        (Output::Homology(e), Format::Csv) => rows::csv_of(&rows::homology_rows(e)),
        (Output::Report(r), Format::Json) => json(r),
        (Output::Report(r), Format::Csv) => rows::csv_of(&rows::check_rows(&r.checks)),
    }
}

fn configure_threads() -> Result<()> {
    if let Ok(v) = std::env::var("FLAGSLICE_THREADS") {
        let threads: usize = v.parse().with_context(|| format!("FLAGSLICE_THREADS={v:?} is not a number"))?;
        rayon::ThreadPoolBuilder::new().num_threads(threads).build_global()?;
    }
    Ok(())
}

/// What a run writes: exit code, stdout bytes, stderr text.
pub(crate) struct Execution {
    pub code: u8,
    pub stdout: Vec<u8>,
    pub stderr: String,
}

impl Execution {
    fn fail(code: u8, stderr: String) -> Self {
        Execution { code, stdout: Vec::new(), stderr }
    }
}

/// Parses `args` (program name first) and runs the command.
pub(crate) fn execute<I, T>(args: I) -> Execution
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code() as u8;
            let text = e.render().to_string();
            return if code == 0 {
                Execution { code, stdout: text.into_bytes(), stderr: String::new() }
            } else {
                Execution::fail(code, text)
            };
        }
    };
    let cfg = match &cli.command {
        Command::Enumerate(c) | Command::Points(c) | Command::Count(c) | Command::Homology(c) | Command::Verify(c) => c,
    };
    let (output, ok) = match run(&cli.command) {
        Ok(x) => x,
        Err(e) => {
            let code = if e.is::<ConfigError>() { CONFIG_ERROR } else { 1 };
            return Execution::fail(code, format!("error: {}\n", e.root_cause()));
        }
    };
    let bytes = match render(&output, cfg.format) {
        Ok(b) => b,
        Err(e) => return Execution::fail(1, format!("error: {e:#}\n")),
    };
    let stdout = match &cfg.out {
        Some(path) => match std::fs::write(path, &bytes) {
            Ok(()) => Vec::new(),
            Err(e) => return Execution::fail(1, format!("error: writing {}: {e}\n", path.display())),
        },
        None => bytes,
    };
    if ok {
        Execution { code: 0, stdout, stderr: String::new() }
    } else {
        Execution { code: VERIFY_FAILED, stdout, stderr: "verification failed\n".into() }
    }
}

fn main() -> ExitCode {
    if let Err(e) = configure_threads() {
        eprintln!("error: {e:#}");
        return ExitCode::from(CONFIG_ERROR);
    }
    let run = execute(std::env::args_os());
    eprint!("{}", run.stderr);
    if let Err(e) = std::io::stdout().lock().write_all(&run.stdout) {
        eprintln!("error: writing stdout: {e}");
        return ExitCode::from(1);
    }
    ExitCode::from(run.code)
}
