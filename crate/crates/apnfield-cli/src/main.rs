//! Command-line front end: every library operation as a subcommand, JSON
//! and CSV report persistence, and one-shot verification recipes.
//!
//! Exit codes: 0 on success, 1 when a verification produced a negative
//! finding (invalid certificate, distribution mismatch, conjecture
//! counterexample), 2 on usage or precondition errors. Errors are emitted
//! as JSON on stderr.

mod papercheck;
mod sboxio;

use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use apnfield::analysis::{
    differential_uniformity_generic, differential_uniformity_quadratic, gamma_rank_detailed,
    walsh_spectrum, walsh_values_with_table,
};
use apnfield::apnfam::{certify, construct_params, pentanomial_function, VectorFunction};
use apnfield::polyzero::{
    cubic_coeff, image_stats, is_irreducible_cubic, trinomial_zero_count_table, zero_distribution,
};
use apnfield::{FieldCtx, FieldElement};

#[derive(Parser)]
#[command(
    name = "apnfield",
    version,
    about = "Finite-field toolkit for zero-free quadratic trinomials and quadratic APN families"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Worker threads for the parallel engines (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Report format where both are supported.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed for randomized probes.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Level {
    Quick,
    Full,
}

#[derive(Subcommand)]
enum Command {
    /// Print a field summary: modulus, generator, cube index.
    Field {
        #[arg(long)]
        n: u32,
        /// Modulus as lowercase hex (bit n set); default: smallest
        /// irreducible of degree n.
        #[arg(long)]
        modulus: Option<String>,
    },
    /// Zero-count distribution of x^(2^s+1) + x + a over all a != 0.
    ScanPa {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        s: u32,
        #[arg(long)]
        modulus: Option<String>,
    },
    /// Image statistics of the non-cube coefficient map.
    ImageA {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        s: u32,
        #[arg(long)]
        modulus: Option<String>,
        /// Where to write the counterexample witness, if one appears.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Bidirectional irreducible-cubic table for x^3 + x + a.
    Cubic {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        modulus: Option<String>,
    },
    /// Search the family coefficients (omega, beta, gamma) and derive the rest.
    FindCoeffs {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        s: u32,
        #[arg(long)]
        modulus: Option<String>,
    },
    /// Build one family member and verify every certification check.
    Certify {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        s: u32,
        /// Explicit delta (hex), must lie outside the half-degree subfield.
        #[arg(long)]
        delta: Option<String>,
        #[arg(long)]
        modulus: Option<String>,
        /// Also write the function table to this S-box file.
        #[arg(long)]
        dump_sbox: Option<PathBuf>,
    },
    /// Walsh spectrum of a family member (--k/--s) or an S-box file.
    Walsh {
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        s: Option<u32>,
        #[arg(long)]
        sbox: Option<PathBuf>,
        #[arg(long)]
        modulus: Option<String>,
        /// Dump every (lambda, mu, value) row as CSV to this path
        /// (2^(2n) rows).
        #[arg(long)]
        dump_csv: Option<PathBuf>,
    },
    /// Differential uniformity of an S-box file.
    Diff {
        #[arg(long)]
        sbox: PathBuf,
        /// Use the quadratic kernel-rank fast path.
        #[arg(long)]
        quadratic: bool,
    },
    /// Graph development rank of a family member (--k/--s) or an S-box file.
    GammaRank {
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        s: Option<u32>,
        #[arg(long)]
        sbox: Option<PathBuf>,
        #[arg(long)]
        modulus: Option<String>,
    },
    /// Run the bundled verification recipes.
    PaperCheck {
        #[arg(long, value_enum, default_value_t = Level::Quick)]
        level: Level,
    },
}

#[derive(Debug)]
pub enum CliError {
    Field(apnfield::Error),
    Io(String),
    Usage(String),
}

impl From<apnfield::Error> for CliError {
    fn from(e: apnfield::Error) -> Self {
        CliError::Field(e)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Field(e) => write!(f, "{e}"),
            CliError::Io(m) | CliError::Usage(m) => write!(f, "{m}"),
        }
    }
}

impl CliError {
    fn kind(&self) -> &'static str {
        match self {
            CliError::Field(e) => e.kind(),
            CliError::Io(_) => "Io",
            CliError::Usage(_) => "Usage",
        }
    }
}

#[derive(Serialize)]
struct ErrorReport<'a> {
    error: ErrorBody<'a>,
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    kind: &'a str,
    message: String,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            emit_error(&CliError::Usage(e.to_string()));
            return ExitCode::from(2);
        }
    };
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            emit_error(&CliError::Usage("--jobs must be at least 1".into()));
            return ExitCode::from(2);
        }
        // Ignore the error if a pool already exists (repeated init in tests).
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }
    match run(&cli) {
        Ok(finding) => {
            if finding {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            emit_error(&e);
            ExitCode::from(2)
        }
    }
}

fn emit_error(e: &CliError) {
    let report = ErrorReport {
        error: ErrorBody {
            kind: e.kind(),
            message: e.to_string(),
        },
    };
    eprintln!("{}", serde_json::to_string(&report).unwrap());
}

fn parse_hex(name: &str, value: &str) -> Result<u64, CliError> {
    u64::from_str_radix(value, 16)
        .map_err(|e| CliError::Usage(format!("--{name} {value:?} is not valid hex: {e}")))
}

fn field_ctx(n: u32, modulus: &Option<String>) -> Result<FieldCtx, CliError> {
    let modulus = modulus
        .as_ref()
        .map(|m| parse_hex("modulus", m))
        .transpose()?;
    Ok(FieldCtx::new(n, modulus)?)
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| CliError::Io(format!("writing {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(content.as_bytes())
                .map_err(|e| CliError::Io(e.to_string()))
        }
    }
}

fn emit_json<T: Serialize>(out: &Option<PathBuf>, value: &T) -> Result<(), CliError> {
    let mut body = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Io(format!("serializing report: {e}")))?;
    body.push('\n');
    emit(out, &body)
}

/// Runs one command; `Ok(true)` means a verification-failure finding.
fn run(cli: &Cli) -> Result<bool, CliError> {
    match &cli.command {
        Command::Field { n, modulus } => {
            let ctx = field_ctx(*n, modulus)?;
            #[derive(Serialize)]
            struct FieldSummary {
                n: u32,
                modulus: String,
                generator: FieldElement,
                group_order: u64,
                cube_index: Option<u64>,
            }
            emit_json(
                &cli.out,
                &FieldSummary {
                    n: ctx.n(),
                    modulus: format!("{:x}", ctx.modulus()),
                    generator: ctx.generator(),
                    group_order: ctx.group_order(),
                    cube_index: ctx.cube_index(),
                },
            )?;
            Ok(false)
        }
        Command::ScanPa { n, s, modulus } => {
            let ctx = field_ctx(*n, modulus)?;
            let dist = zero_distribution(&ctx, *s)?;
            match cli.format {
                Format::Json => emit_json(&cli.out, &dist)?,
                Format::Csv => {
                    let counts = trinomial_zero_count_table(&ctx, *s);
                    let mut body = String::from("n,s,a_hex,zero_count\n");
                    for (a, c) in counts.iter().enumerate().skip(1) {
                        body.push_str(&format!("{n},{s},{a:x},{c}\n"));
                    }
                    emit(&cli.out, &body)?;
                }
            }
            Ok(!dist.matches_closed_form)
        }
        Command::ImageA {
            n,
            s,
            modulus,
            witness,
        } => {
            let ctx = field_ctx(*n, modulus)?;
            let report = image_stats(&ctx, *s)?;
            emit_json(&cli.out, &report)?;
            if let Some(w) = &report.witness {
                let path = witness
                    .clone()
                    .unwrap_or_else(|| PathBuf::from(format!("witness-n{n}-s{s}.json")));
                let body = serde_json::to_string_pretty(w)
                    .map_err(|e| CliError::Io(format!("serializing witness: {e}")))?;
                std::fs::write(&path, body)
                    .map_err(|e| CliError::Io(format!("writing {}: {e}", path.display())))?;
                eprintln!("counterexample witness written to {}", path.display());
            }
            Ok(!report.conjecture_consistent())
        }
        Command::Cubic { n, modulus } => {
            let ctx = field_ctx(*n, modulus)?;
            let size = ctx.size() as usize;
            let mut rootless = vec![false; size];
            for a in ctx.nonzero_elements() {
                rootless[a.raw() as usize] = is_irreducible_cubic(&ctx, a);
            }
            let mut coeff_form = vec![false; size];
            for d in ctx.nonzero_elements() {
                if !ctx.is_cube(d)? {
                    coeff_form[cubic_coeff(&ctx, d)?.raw() as usize] = true;
                }
            }
            let sets_equal = rootless == coeff_form;
            match cli.format {
                Format::Json => {
                    #[derive(Serialize)]
                    struct CubicSummary {
                        n: u32,
                        irreducible_count: u64,
                        coeff_form_count: u64,
                        sets_equal: bool,
                    }
                    emit_json(
                        &cli.out,
                        &CubicSummary {
                            n: *n,
                            irreducible_count: rootless.iter().filter(|&&x| x).count() as u64,
                            coeff_form_count: coeff_form.iter().filter(|&&x| x).count() as u64,
                            sets_equal,
                        },
                    )?;
                }
                Format::Csv => {
                    let mut body = String::from("a_hex,irreducible,coeff_form\n");
                    for a in 1..size {
                        body.push_str(&format!(
                            "{a:x},{},{}\n",
                            u8::from(rootless[a]),
                            u8::from(coeff_form[a])
                        ));
                    }
                    emit(&cli.out, &body)?;
                }
            }
            Ok(!sets_equal)
        }
        Command::FindCoeffs { k, s, modulus } => {
            let ctx = field_ctx(2 * k, modulus)?;
            let params = construct_params(&ctx, *k, *s)?;
            emit_json(&cli.out, &params)?;
            Ok(false)
        }
        Command::Certify {
            k,
            s,
            delta,
            modulus,
            dump_sbox,
        } => {
            let ctx = field_ctx(2 * k, modulus)?;
            let delta = delta
                .as_ref()
                .map(|d| -> Result<FieldElement, CliError> {
                    Ok(ctx.element(parse_hex("delta", d)?)?)
                })
                .transpose()?;
            let (omega, beta, gamma) = apnfield::apnfam::find_beta_gamma(&ctx, *k, *s)?;
            let params = apnfield::apnfam::make_params(&ctx, *k, *s, beta, gamma, omega, delta)?;
            let cert = certify(&ctx, &params);
            if let Some(path) = dump_sbox {
                let f = pentanomial_function(&ctx, &params);
                sboxio::write_sbox(path, &f)?;
            }
            emit_json(&cli.out, &cert)?;
            Ok(!cert.is_valid())
        }
        Command::Walsh {
            k,
            s,
            sbox,
            modulus,
            dump_csv,
        } => {
            let (ctx, f) = function_from_args(*k, *s, sbox, modulus)?;
            let report = walsh_spectrum(&ctx, &f)?;
            if let Some(path) = dump_csv {
                dump_walsh_csv(&ctx, &f, path)?;
            }
            emit_json(&cli.out, &report)?;
            Ok(false)
        }
        Command::Diff { sbox, quadratic } => {
            let f = sboxio::read_sbox(sbox)?;
            let report = if *quadratic {
                differential_uniformity_quadratic(&f)?
            } else {
                differential_uniformity_generic(&f)?
            };
            emit_json(&cli.out, &report)?;
            Ok(false)
        }
        Command::GammaRank { k, s, sbox, modulus } => {
            let (_ctx, f) = function_from_args(*k, *s, sbox, modulus)?;
            check_gamma_memory_budget(f.n())?;
            let report = gamma_rank_detailed(&f)?;
            emit_json(&cli.out, &report)?;
            Ok(false)
        }
        Command::PaperCheck { level } => {
            let summary = papercheck::run(*level == Level::Full);
            emit_json(&cli.out, &summary)?;
            Ok(!summary.all_pass)
        }
    }
}

/// Builds the analyzed function either from family parameters or from an
/// S-box file; exactly one source must be given.
fn function_from_args(
    k: Option<u32>,
    s: Option<u32>,
    sbox: &Option<PathBuf>,
    modulus: &Option<String>,
) -> Result<(FieldCtx, VectorFunction), CliError> {
    match (k, s, sbox) {
        (Some(k), Some(s), None) => {
            let ctx = field_ctx(2 * k, modulus)?;
            let params = construct_params(&ctx, k, s)?;
            let f = pentanomial_function(&ctx, &params);
            Ok((ctx, f))
        }
        (None, None, Some(path)) => {
            let f = sboxio::read_sbox(path)?;
            let ctx = field_ctx(f.n(), modulus)?;
            Ok((ctx, f))
        }
        _ => Err(CliError::Usage(
            "give either --k and --s, or --sbox FILE".into(),
        )),
    }
}

fn dump_walsh_csv(ctx: &FieldCtx, f: &VectorFunction, path: &Path) -> Result<(), CliError> {
    let file = std::fs::File::create(path)
        .map_err(|e| CliError::Io(format!("creating {}: {e}", path.display())))?;
    let mut w = std::io::BufWriter::new(file);
    let tdual = ctx.trace_dual_table();
    writeln!(w, "lambda_hex,mu_hex,walsh_value").map_err(|e| CliError::Io(e.to_string()))?;
    for lambda in 1..ctx.size() {
        let row = walsh_values_with_table(&tdual, f, lambda);
        for (mu, value) in row.iter().enumerate() {
            writeln!(w, "{lambda:x},{mu:x},{value}").map_err(|e| CliError::Io(e.to_string()))?;
        }
    }
    w.flush().map_err(|e| CliError::Io(e.to_string()))
}

/// The rank job's worst-case pivot storage is 2^(4n-3) bytes; refuse to
/// start if that exceeds the cap from APNFIELD_GAMMA_MAX_MIB (default
/// 1024).
fn check_gamma_memory_budget(n: u32) -> Result<(), CliError> {
    let cap_mib = std::env::var("APNFIELD_GAMMA_MAX_MIB")
        .ok()
        .and_then(|v| v.parse::<u64>().ok())
        .unwrap_or(1024);
    if n > 8 {
        // The engine itself rejects; no need to estimate.
        return Ok(());
    }
    let worst_case_mib = (1u64 << (4 * n).saturating_sub(3)) >> 20;
    if worst_case_mib > cap_mib {
        return Err(CliError::Usage(format!(
            "rank job at n = {n} may need {worst_case_mib} MiB, above the \
             APNFIELD_GAMMA_MAX_MIB cap of {cap_mib}"
        )));
    }
    Ok(())
}
