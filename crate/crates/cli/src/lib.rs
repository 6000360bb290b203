//! Command-line dispatch for the rank certification tools.

pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::time::Instant;

use clap::{CommandFactory, Parser, Subcommand};
use legendre_rank::arith::FactorBudget;
use legendre_rank::curve::WeierstrassModel;
use legendre_rank::descent::descent_analysis;
use legendre_rank::local::{surface_fibre_types, Family};
use legendre_rank::mersenne::{compare_estimate, mersenne_exponents};
use legendre_rank::pipeline::{independent_rank_check, neumann_setzer_survey, prove_rank_zero, scan_legendre_fibres, ScanParams};
use legendre_rank::Error;
use serde_json::{json, Value};

pub use report::{emit_report, envelope, parse_report, Format, MersenneReport, Report};

pub const EXIT_OK: u8 = 0;
pub const EXIT_PRECONDITION: u8 = 1;
pub const EXIT_ASSERTION: u8 = 2;
pub const EXIT_USAGE: u8 = 64;

#[derive(Parser, Debug)]
#[command(name = "legendre-rank", version, about = "Rank certificates and fibre scans for the Legendre elliptic surface")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format; defaults to text for `mersenne` and `surface-types`, json otherwise.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<std::path::PathBuf>,
    /// Worker threads for parallel stages.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Trial division limit for factoring.
    #[arg(long, global = true)]
    pub trial_limit: Option<u32>,
    /// Pollard rho iteration budget for factoring.
    #[arg(long, global = true)]
    pub rho_iterations: Option<u64>,
    /// Include wall-clock timings in JSON output (makes output run-dependent).
    #[arg(long, global = true)]
    pub timings: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Rank-zero certificate for y^2 = x(x+1)(x+2^q).
    Prove {
        #[arg(long)]
        q: u32,
    },
    /// Complete 2-descent and point search for y^2 = x(x+1)(x+2^q).
    Confirm {
        #[arg(long)]
        q: u32,
        #[arg(long, default_value_t = 10_000)]
        height: u64,
    },
    /// Classify Legendre fibres b = m/n with max(|m|, n) <= height.
    Scan {
        #[arg(long)]
        height: u64,
        #[arg(long, default_value_t = 100)]
        search_height: u64,
    },
    /// Kodaira types of the singular fibres of a surface.
    SurfaceTypes {
        #[arg(long, value_enum, default_value_t = FamilyArg::Legendre)]
        family: FamilyArg,
    },
    /// Torsion and rank of y^2 = x^3 + b x^2 - 16 x with b^2 + 64 prime.
    NeumannSetzer {
        #[arg(long)]
        limit: i64,
        /// Residue of b modulo 4.
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(i64).range(0..4))]
        residue: i64,
        #[arg(long, default_value_t = 100)]
        search_height: u64,
    },
    /// Mersenne prime exponents up to a limit.
    Mersenne {
        #[arg(long)]
        limit: u32,
        /// Compare the count with the density estimate.
        #[arg(long)]
        estimate: bool,
    },
    /// Descent on a curve with a rational 2-torsion point.
    Descend {
        /// Coefficients a1,a2,a3,a4,a6.
        #[arg(long)]
        curve: String,
        #[arg(long, default_value_t = 100)]
        height: u64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum FamilyArg {
    Legendre,
    NeumannSetzer,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::AssertionFailed(_) | Error::InconsistentData(_) | Error::LocalUndecided { .. } => EXIT_ASSERTION,
        Error::UnsupportedFormat(_) => EXIT_USAGE,
        _ => EXIT_PRECONDITION,
    }
}

fn run(cli: &Cli) -> Result<(Report, Value, Format), Error> {
    let mut budget = FactorBudget::default();
    if let Some(t) = cli.trial_limit {
        budget.trial_limit = t;
    }
    if let Some(r) = cli.rho_iterations {
        budget.rho_iterations = r;
    }
    let b = json!({"trial_limit": budget.trial_limit, "rho_iterations": budget.rho_iterations});
    Ok(match &cli.command {
        Command::Prove { q } => {
            let c = prove_rank_zero(*q, &budget)?;
            (Report::Certificate(Box::new(c)), json!({"command": "prove", "q": q, "budget": b}), Format::Json)
        }
        Command::Confirm { q, height } => {
            let c = independent_rank_check(*q, *height, &budget)?;
            (Report::Confirmation(c), json!({"command": "confirm", "q": q, "height": height, "budget": b}), Format::Json)
        }
        Command::Scan { height, search_height } => {
            if *height < 1 {
                return Err(Error::PreconditionFailed("height must be at least 1".into()));
            }
            let params = ScanParams { height: *height, search_height: *search_height };
            let s = scan_legendre_fibres(&params, &budget);
            (
                Report::Scan(s),
                json!({"command": "scan", "height": height, "search_height": search_height, "budget": b}),
                Format::Json,
            )
        }
        Command::SurfaceTypes { family } => {
            let f = match family {
                FamilyArg::Legendre => Family::Legendre,
                FamilyArg::NeumannSetzer => Family::NeumannSetzer,
            };
            let r = surface_fibre_types(f)?;
            (Report::SurfaceTypes(r), json!({"command": "surface-types", "family": f}), Format::Text)
        }
        Command::NeumannSetzer { limit, residue, search_height } => {
            if *limit < 3 {
                return Err(Error::PreconditionFailed("limit must be at least 3".into()));
            }
            let rs = neumann_setzer_survey(*limit, *residue, *search_height, &budget);
            (
                Report::NeumannSetzer(rs),
                json!({"command": "neumann-setzer", "limit": limit, "residue": residue, "search_height": search_height, "budget": b}),
                Format::Json,
            )
        }
        Command::Mersenne { limit, estimate } => {
            let params = json!({"command": "mersenne", "limit": limit, "estimate": estimate});
            let exponents = mersenne_exponents(*limit)?;
            let estimate = if *estimate { Some(compare_estimate(*limit)?) } else { None };
            (Report::Mersenne(MersenneReport { limit: *limit, exponents, estimate }), params, Format::Text)
        }
        Command::Descend { curve, height } => {
            let w: WeierstrassModel = curve.parse()?;
            let d = descent_analysis(&w, *height, &budget)?;
            (Report::Descent(Box::new(d)), json!({"command": "descend", "curve": curve, "height": height, "budget": b}), Format::Json)
        }
    })
}

/// Parses `args`, runs the command and writes the report; returns the exit code.
pub fn dispatch<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if !e.use_stderr() {
                let _ = write!(out, "{}", e.render());
                return EXIT_OK;
            }
            let _ = write!(err, "{}\n{}", e.render(), Cli::command().render_help());
            return EXIT_USAGE;
        }
    };
    if let Some(n) = cli.threads {
        // A second call in the same process keeps the first pool.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let start = Instant::now();
    let result = run(&cli).and_then(|(report, params, default_format)| {
        let timings = cli.timings.then(|| json!({"total_ms": start.elapsed().as_millis() as u64}));
        emit_report(&report, cli.format.unwrap_or(default_format), &params, timings.as_ref())
    });
    match result {
        Ok(text) => {
            let written = match &cli.output {
                Some(path) => std::fs::write(path, text).map_err(|e| e.to_string()),
                None => out.write_all(text.as_bytes()).map_err(|e| e.to_string()),
            };
            match written {
                Ok(()) => EXIT_OK,
                Err(e) => {
                    let _ = writeln!(err, "error: cannot write report: {e}");
                    EXIT_PRECONDITION
                }
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            let code = exit_code(&e);
            if code == EXIT_USAGE {
                let _ = write!(err, "\n{}", Cli::command().render_help());
            }
            code
        }
    }
}
