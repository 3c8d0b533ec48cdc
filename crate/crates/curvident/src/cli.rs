//! Command-line front end.
//!
//! Commands: `verify`, `dim-table`, `kernel`, `reduce-check`, `normal-dims`.
//! Reports go to `--out` (or stdout) as JSON (schema `curvident/1`) or CSV.
//!
//! Exit codes:
//! * 0 — run completed and, for `verify`, the observed outcome matches the
//!   vanishing dichotomy for the requested dimension;
//! * 1 — `verify` ran but the outcome contradicts the dichotomy;
//! * 2 — invalid arguments or an I/O failure;
//! * 3 — a rank failed the batch-stabilization certificate.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::identities::{verify_vanishing, IdentityJob};
use crate::invariant::{dim_invariants, membership_check, normal_space_dim, reduction_check};
use crate::report::{
    to_json, DimTableReport, DimTableRow, KernelReport, KernelRow, NormalDimsReport, NormalDimsRow,
    ReduceReport, RunConfig, VerifyReport, SCHEMA,
};

const CLI_DIM_CAP: usize = 6;
const CLI_M_CAP: usize = 8;

#[derive(Parser)]
#[command(
    name = "curvident",
    version,
    about = "Exact verification of dimensional curvature identities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

impl Format {
    fn as_str(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run exact vanishing trials for the (pbar, k) contraction in one dimension.
    Verify {
        #[arg(long)]
        pbar: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        dim: usize,
        /// Signature as "P,M" (positive, negative); defaults to Riemannian.
        #[arg(long)]
        signature: Option<String>,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Table of invariant-space dimensions (exact Gram ranks).
    DimTable {
        #[arg(long, default_value_t = 8)]
        m_max: usize,
        #[arg(long, default_value_t = 8)]
        n_max: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Kernel dimensions at and below the critical dimension, with the
    /// generator membership verdict.
    Kernel {
        #[arg(long)]
        pbar: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Stabilization of invariant dimensions under dimensional reduction.
    ReduceCheck {
        #[arg(long, default_value_t = 8)]
        m_max: usize,
        #[arg(long, default_value_t = 8)]
        n_max: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Dimensions of the normal-tensor spaces (exact nullspace ranks).
    NormalDims {
        #[arg(long, default_value_t = 4)]
        n_max: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

/// Parses, runs, and maps the outcome to a process exit code.
pub fn run_from_args<I>(args: I) -> i32
where
    I: IntoIterator,
    I::Item: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // clap uses 2 for usage errors; keep help/version at 0
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(Error::RankUnstable { first, second }) => {
            eprintln!("error: rank did not stabilize across sample batches ({first} vs {second})");
            3
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn parse_signature(text: Option<&str>, dim: usize) -> Result<(usize, usize)> {
    match text {
        None => Ok((dim, 0)),
        Some(s) => {
            let parts: Vec<&str> = s.split(',').collect();
            if parts.len() != 2 {
                return Err(Error::InvalidArgument(format!(
                    "signature must be \"P,M\", got {s:?}"
                )));
            }
            let p = parts[0].trim().parse::<usize>();
            let m = parts[1].trim().parse::<usize>();
            match (p, m) {
                (Ok(p), Ok(m)) => Ok((p, m)),
                _ => Err(Error::InvalidArgument(format!(
                    "signature must be \"P,M\", got {s:?}"
                ))),
            }
        }
    }
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<()> {
    match out {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(path) => {
            std::fs::write(path, text)?;
            Ok(())
        }
    }
}

fn dispatch(command: Command) -> Result<i32> {
    match command {
        Command::Verify {
            pbar,
            k,
            dim,
            signature,
            trials,
            seed,
            out,
            format,
        } => {
            let sig = parse_signature(signature.as_deref(), dim)?;
            let config = RunConfig {
                command: "verify".into(),
                pbar: Some(pbar),
                k: Some(k),
                dim: Some(dim),
                signature: Some([sig.0, sig.1]),
                trials: Some(trials),
                seed: Some(seed),
                out: out.as_ref().map(|p| p.display().to_string()),
                format: format.as_str().into(),
                ..RunConfig::default()
            };
            let job = IdentityJob::new(pbar, k, dim, sig, trials, seed)?;
            let identity = verify_vanishing(&job)?;
            let expect_identity = dim < job.critical_dim();
            let prediction_matched = identity.identity_holds() == expect_identity;
            let report = VerifyReport {
                schema: SCHEMA,
                config,
                identity,
                prediction_matched,
            };
            let text = match format {
                Format::Json => to_json(&report),
                Format::Csv => report.to_csv(),
            };
            emit(out.as_ref(), &text)?;
            if !prediction_matched {
                eprintln!(
                    "prediction mismatch for (pbar, k) = ({pbar}, {k}) in dimension {dim}: \
                     seed {seed}, {trials} trials (expected {})",
                    if expect_identity {
                        "all trials exactly zero"
                    } else {
                        "a nonzero witness"
                    }
                );
            }
            Ok(if prediction_matched { 0 } else { 1 })
        }
        Command::DimTable {
            m_max,
            n_max,
            out,
            format,
        } => {
            if m_max > CLI_M_CAP || m_max % 2 != 0 {
                return Err(Error::CapExceeded {
                    what: "m-max (must be even)",
                    got: m_max,
                    cap: CLI_M_CAP,
                });
            }
            let config = RunConfig {
                command: "dim-table".into(),
                m_max: Some(m_max),
                n_max: Some(n_max),
                out: out.as_ref().map(|p| p.display().to_string()),
                format: format.as_str().into(),
                ..RunConfig::default()
            };
            let mut rows = Vec::new();
            for m in (2..=m_max).step_by(2) {
                for n in 1..=n_max {
                    rows.push(DimTableRow {
                        m,
                        n,
                        dimension: dim_invariants(m, n)?,
                    });
                }
            }
            let report = DimTableReport {
                schema: SCHEMA,
                config,
                rows,
            };
            let text = match format {
                Format::Json => to_json(&report),
                Format::Csv => report.to_csv(),
            };
            emit(out.as_ref(), &text)?;
            Ok(0)
        }
        Command::Kernel {
            pbar,
            k,
            seed,
            out,
            format,
        } => {
            let config = RunConfig {
                command: "kernel".into(),
                pbar: Some(pbar),
                k: Some(k),
                seed: Some(seed),
                out: out.as_ref().map(|p| p.display().to_string()),
                format: format.as_str().into(),
                ..RunConfig::default()
            };
            if k == 0 && pbar <= 1 {
                return Err(Error::ExceptionalCase(pbar, k));
            }
            let membership = membership_check(pbar, k, seed)?;
            let critical = 2 * k + pbar;
            let report = KernelReport {
                schema: SCHEMA,
                config,
                pbar,
                k,
                kernel: vec![
                    KernelRow {
                        n: critical - 1,
                        dimension: membership.kernel_dimension,
                    },
                    KernelRow {
                        n: critical,
                        dimension: 0,
                    },
                ],
                membership,
            };
            let text = match format {
                Format::Json => to_json(&report),
                Format::Csv => report.to_csv(),
            };
            emit(out.as_ref(), &text)?;
            Ok(0)
        }
        Command::ReduceCheck {
            m_max,
            n_max,
            out,
            format,
        } => {
            if m_max > CLI_M_CAP || m_max % 2 != 0 {
                return Err(Error::CapExceeded {
                    what: "m-max (must be even)",
                    got: m_max,
                    cap: CLI_M_CAP,
                });
            }
            let config = RunConfig {
                command: "reduce-check".into(),
                m_max: Some(m_max),
                n_max: Some(n_max),
                out: out.as_ref().map(|p| p.display().to_string()),
                format: format.as_str().into(),
                ..RunConfig::default()
            };
            let mut reports = Vec::new();
            for m in (2..=m_max).step_by(2) {
                reports.push(reduction_check(m, n_max)?);
            }
            let all_ok = reports.iter().all(|r| r.ok());
            let report = ReduceReport {
                schema: SCHEMA,
                config,
                reports,
                all_ok,
            };
            let text = match format {
                Format::Json => to_json(&report),
                Format::Csv => report.to_csv(),
            };
            emit(out.as_ref(), &text)?;
            Ok(0)
        }
        Command::NormalDims { n_max, out, format } => {
            if n_max > CLI_DIM_CAP || n_max == 0 {
                return Err(Error::CapExceeded {
                    what: "n-max",
                    got: n_max,
                    cap: CLI_DIM_CAP,
                });
            }
            let config = RunConfig {
                command: "normal-dims".into(),
                n_max: Some(n_max),
                out: out.as_ref().map(|p| p.display().to_string()),
                format: format.as_str().into(),
                ..RunConfig::default()
            };
            let mut rows = Vec::new();
            for r in 2..=4 {
                for n in 1..=n_max {
                    rows.push(NormalDimsRow {
                        r,
                        n,
                        dimension: normal_space_dim(n, r)?,
                    });
                }
            }
            let report = NormalDimsReport {
                schema: SCHEMA,
                config,
                rows,
            };
            let text = match format {
                Format::Json => to_json(&report),
                Format::Csv => report.to_csv(),
            };
            emit(out.as_ref(), &text)?;
            Ok(0)
        }
    }
}
