use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use heatframe::jet::SignConvention;
use heatframe::report::{emit, run, Format, Suite, SuiteConfig};
use heatframe::Error;

#[derive(Parser)]
#[command(name = "heatframe", version, about = "Exact verification of graded heat operators in a nonholonomic frame")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Frame matrix T and vector fields L, with their checks.
    Frame(Common),
    /// Heat operators H and Q, shape constants and bracket expressions.
    Ops(Common),
    /// Structure polynomials of both frames.
    Commute(Common),
    /// Run verification suites.
    Verify {
        /// Comma-separated suites, or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
        #[command(flatten)]
        common: Common,
    },
    /// Derived nonlinear system and its diff against the printed tables.
    ColeHopf(Common),
    /// Bracket tables, closure and projection of the derivation algebra.
    Jets(Common),
    /// Series solution of the heat system.
    SolveSigma {
        /// Comma-separated labels of the imposed operators.
        #[arg(long, default_value = "0,2,4")]
        ops: String,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args)]
struct Common {
    /// Genus 1, 2 or 3; repeat or separate by commas. Defaults to all.
    #[arg(long, value_delimiter = ',')]
    genus: Vec<u8>,
    /// Sign s in psi = s * d ln(phi): `+` or `-`.
    #[arg(long, default_value = "+", allow_hyphen_values = true)]
    convention: String,
    /// Largest jet order on which derivation identities are certified.
    #[arg(long, default_value_t = 6)]
    jet_order: usize,
    /// Lambda-weight truncation of the series solver.
    #[arg(long, default_value_t = 10)]
    max_weight: i32,
    #[arg(long, default_value = "text")]
    format: String,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Informational checks also fail the run.
    #[arg(long)]
    strict: bool,
    /// Omit durations and the timestamp, for byte-stable output.
    #[arg(long)]
    no_timestamp: bool,
}

fn config(common: &Common, suites: Vec<Suite>) -> Result<SuiteConfig, Error> {
    let mut cfg = SuiteConfig {
        suites,
        convention: common.convention.parse::<SignConvention>()?,
        jet_order: common.jet_order,
        max_weight: common.max_weight,
        strict: common.strict,
        timestamps: !common.no_timestamp,
        ..SuiteConfig::default()
    };
    if !common.genus.is_empty() {
        cfg.genera = common.genus.clone();
    }
    Ok(cfg)
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>, Error> {
    s.split(',')
        .map(|x| x.trim().parse::<T>().map_err(|_| Error::InvalidArgument(format!("bad {what} {x:?}"))))
        .collect()
}

fn execute(cli: Cli) -> Result<bool, Error> {
    let (common, cfg) = match &cli.command {
        Command::Frame(c) => (c, config(c, vec![Suite::Frame])?),
        Command::Ops(c) => (c, config(c, vec![Suite::Ops])?),
        Command::Commute(c) => (c, config(c, vec![Suite::Commute])?),
        Command::ColeHopf(c) => (c, config(c, vec![Suite::ColeHopf])?),
        Command::Jets(c) => (c, config(c, vec![Suite::Jets])?),
        Command::Verify { suite, common } => {
            let suites = if suite == "all" { Suite::ALL.to_vec() } else { parse_list::<Suite>(suite, "suite")? };
            (common, config(common, suites)?)
        }
        Command::SolveSigma { ops, common } => {
            let mut cfg = config(common, vec![Suite::Sigma])?;
            cfg.sigma_ops = parse_list::<u8>(ops, "operator label")?;
            (common, cfg)
        }
    };
    let format: Format = common.format.parse()?;
    let result = run(&cfg)?;
    let bytes = emit(&result, format);
    match &common.out {
        Some(path) => fs::write(path, bytes).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?,
        None => std::io::stdout().write_all(bytes.as_bytes()).map_err(|e| Error::Io(e.to_string()))?,
    }
    Ok(result.overall)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match execute(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::InvalidArgument(_) | Error::UnsupportedGenus(_) | Error::InvalidVariable(_) | Error::Parse { .. } => 2,
                Error::Internal(_) | Error::Io(_) => 3,
                _ => 1,
            })
        }
    }
}
