use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use kgspec_cli::commands::{
    cmd_check_conditions, cmd_coulomb, cmd_scan, cmd_verify_vnw, CheckConditionsConfig, CommandOutput, Common, CoulombConfig, Formula,
    OutputFormat, PotentialChoice, ScanConfig, SweepKind, VerifyVnwConfig,
};
use kgspec_cli::Result;

/// Embedded eigenvalues and their absence for Klein-Gordon operators.
///
/// Exit codes: 0 success, 1 acceptance miss, 2 parameter or numerical failure.
#[derive(Debug, Parser)]
#[command(name = "kgspec", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Find the embedded vNW eigenvalue and compare it with the closed form
    VerifyVnw(VerifyArgs),
    /// Evaluate condition I and the seminorm conditions for a scalar potential
    CheckConditions(ConditionArgs),
    /// Coulomb bound state, continuum scan and absence audit
    Coulomb(CoulombArgs),
    /// Run theorem audits over a parameter sweep, one JSON line per point
    Scan(ScanArgs),
}

#[derive(Debug, Args)]
struct CommonArgs {
    /// Output directory
    #[arg(long, env = "KGSPEC_OUT_DIR", default_value = ".")]
    out: PathBuf,
    /// Report format; csv also writes tables next to the JSON report
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
    /// Seed for inverse-iteration start vectors
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads for λ scans and sweeps
    #[arg(long, default_value_t = 4)]
    workers: usize,
}

impl CommonArgs {
    fn common(self) -> Common {
        Common {
            out_dir: self.out,
            format: self.format,
            seed: self.seed,
            workers: self.workers,
        }
    }
}

fn parse_window(s: &str) -> std::result::Result<(f64, f64), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected LO,HI, got {s:?}"))?;
    let lo = a.trim().parse::<f64>().map_err(|e| format!("{a:?}: {e}"))?;
    let hi = b.trim().parse::<f64>().map_err(|e| format!("{b:?}: {e}"))?;
    Ok((lo, hi))
}

#[derive(Clone, Debug)]
struct FloatList(Vec<f64>);

fn parse_list(s: &str) -> std::result::Result<FloatList, String> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<f64>().map_err(|e| format!("{t:?}: {e}")))
        .collect::<std::result::Result<_, _>>()
        .map(FloatList)
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 1.0)]
    mass: f64,
    #[arg(long, default_value_t = -80.0, allow_hyphen_values = true)]
    xmin: f64,
    #[arg(long, default_value_t = 80.0)]
    xmax: f64,
    /// Grid spacing
    #[arg(long, default_value_t = 0.005)]
    h: f64,
    /// Window in E~ = E² − m², as LO,HI
    #[arg(long, value_parser = parse_window, default_value = "0.5,1.5", allow_hyphen_values = true)]
    window: (f64, f64),
    /// Largest accepted |E~ − 1|
    #[arg(long, default_value = "1e-3")]
    tol: f64,
    #[arg(long, value_enum, default_value_t = Formula::Derived)]
    formula: Formula,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Debug, Args)]
struct ConditionArgs {
    #[arg(long, value_enum, default_value_t = PotentialChoice::Vnw)]
    potential: PotentialChoice,
    /// Square-well depth
    #[arg(long, default_value_t = 5.0)]
    depth: f64,
    /// Square-well half-width
    #[arg(long, default_value_t = 1.0)]
    half_width: f64,
    /// CSV table with header x,v for --potential custom
    #[arg(long)]
    samples: Option<PathBuf>,
    #[arg(long, default_value_t = 1.0)]
    mass: f64,
    /// Absolute quadrature tolerance
    #[arg(long, default_value = "1e-9")]
    tol: f64,
    /// Window for the suprema in x, as LO,HI
    #[arg(long, value_parser = parse_window, default_value = "-200,200", allow_hyphen_values = true)]
    window: (f64, f64),
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Debug, Args)]
struct CoulombArgs {
    /// Coulomb coupling e
    #[arg(long, default_value_t = -0.1, allow_hyphen_values = true)]
    charge: f64,
    #[arg(long, default_value_t = 0)]
    ell: u32,
    #[arg(long, default_value_t = 1.0)]
    mass: f64,
    /// Inner radius of the radial grid
    #[arg(long, default_value = "1e-3")]
    xmin: f64,
    /// Outer radius of the radial grid
    #[arg(long, default_value_t = 200.0)]
    xmax: f64,
    #[arg(long, default_value_t = 0.0025)]
    h: f64,
    /// Continuum window in E~, as LO,HI
    #[arg(long, value_parser = parse_window, default_value = "0,20")]
    window: (f64, f64),
    /// Energies sampled along the forbidden ray
    #[arg(long, default_value_t = 3)]
    samples: usize,
    /// Inner radius R0 of the pointwise decay checks
    #[arg(long, default_value_t = 1.0)]
    r0: f64,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Debug, Args)]
struct ScanArgs {
    #[arg(long, value_enum, default_value_t = SweepKind::Vnw)]
    kind: SweepKind,
    /// Comma-separated masses
    #[arg(long, value_parser = parse_list, default_value = "1")]
    mass: FloatList,
    /// Comma-separated Coulomb couplings (coulomb sweeps only)
    #[arg(long, value_parser = parse_list, default_value = "-0.1", allow_hyphen_values = true)]
    charge: FloatList,
    /// Comma-separated grid spacings
    #[arg(long, value_parser = parse_list, default_value = "0.005")]
    h: FloatList,
    #[arg(long, default_value_t = 0)]
    ell: u32,
    /// Grid start; defaults to -80 (vnw) or 1e-3 (coulomb)
    #[arg(long, allow_hyphen_values = true)]
    xmin: Option<f64>,
    /// Grid end; defaults to 80 (vnw) or 200 (coulomb)
    #[arg(long)]
    xmax: Option<f64>,
    /// E~ window; defaults to 0.5,1.5 (vnw) or 0,20 (coulomb)
    #[arg(long, value_parser = parse_window, allow_hyphen_values = true)]
    window: Option<(f64, f64)>,
    #[arg(long, value_enum, default_value_t = Formula::Derived)]
    formula: Formula,
    /// Skip the S_λ scan of condition I
    #[arg(long)]
    skip_condition_i: bool,
    /// Energies sampled along the forbidden ray (coulomb sweeps)
    #[arg(long, default_value_t = 3)]
    samples: usize,
    #[command(flatten)]
    common: CommonArgs,
}

fn run(cli: Cli) -> Result<CommandOutput> {
    match cli.command {
        Command::VerifyVnw(a) => cmd_verify_vnw(&VerifyVnwConfig {
            mass: a.mass,
            x_min: a.xmin,
            x_max: a.xmax,
            h: a.h,
            window: a.window,
            tol: a.tol,
            formula: a.formula,
            common: a.common.common(),
        }),
        Command::CheckConditions(a) => cmd_check_conditions(&CheckConditionsConfig {
            potential: a.potential,
            depth: a.depth,
            half_width: a.half_width,
            samples: a.samples,
            mass: a.mass,
            tol: a.tol,
            window: a.window,
            common: a.common.common(),
        }),
        Command::Coulomb(a) => cmd_coulomb(&CoulombConfig {
            charge: a.charge,
            ell: a.ell,
            mass: a.mass,
            r_min: a.xmin,
            r_max: a.xmax,
            h: a.h,
            window: a.window,
            continuum_samples: a.samples,
            r0: a.r0,
            common: a.common.common(),
        }),
        Command::Scan(a) => {
            let coulomb = a.kind == SweepKind::Coulomb;
            cmd_scan(&ScanConfig {
                kind: a.kind,
                masses: a.mass.0,
                charges: a.charge.0,
                hs: a.h.0,
                ell: a.ell,
                x_min: a.xmin.unwrap_or(if coulomb { 1e-3 } else { -80.0 }),
                x_max: a.xmax.unwrap_or(if coulomb { 200.0 } else { 80.0 }),
                window: a.window.unwrap_or(if coulomb { (0.0, 20.0) } else { (0.5, 1.5) }),
                formula: a.formula,
                skip_condition_i: a.skip_condition_i,
                continuum_samples: a.samples,
                common: a.common.common(),
            })
        }
    }
}

/// Parse `args`, run the subcommand and return the process exit code.
fn run_args<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().ansi().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return if e.exit_code() == 0 { 0 } else { 2 };
        }
    };
    match run(cli) {
        Ok(output) => {
            let _ = writeln!(out, "{}", output.summary);
            for f in &output.files {
                let _ = writeln!(out, "wrote {}", f.display());
            }
            output.outcome.exit_code()
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            let mut source = std::error::Error::source(&e);
            while let Some(s) = source {
                let _ = writeln!(err, "  caused by: {s}");
                source = s.source();
            }
            e.exit_code()
        }
    }
}

fn main() -> ExitCode {
    let code = run_args(std::env::args_os(), &mut std::io::stdout().lock(), &mut std::io::stderr().lock());
    ExitCode::from(code)
}
