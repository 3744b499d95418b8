//! Command-line front end.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use semihole_core::tables::{marginal_matrix, remove_redundant_rows, MarginalModel};
use semihole_core::{frobenius_number, GeneratorMatrix};

use crate::format::read_matrix;
use crate::oracle::{census, oracle_min_sets};
use crate::parallel::RayonPool;
use crate::pipeline::{self, close_stages, Request, Stage, EXIT_ERROR, EXIT_OK};
use crate::report;

#[derive(Parser, Debug)]
#[command(
    name = "semihole",
    version,
    about = "Holes and saturation points of affine semigroups"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Analyze the semigroup generated by the columns of a matrix file.
    Analyze {
        file: PathBuf,
        #[command(flatten)]
        opts: RunOpts,
    },
    /// Analyze the marginal model of a contingency table.
    Table {
        /// Table sizes such as 2x2x2x2.
        sizes: String,
        /// Margins as digit strings, e.g. 12,13,14,234.
        #[arg(long)]
        margins: String,
        /// Keep linearly dependent rows of the marginal matrix.
        #[arg(long)]
        keep_redundant: bool,
        /// Print the marginal matrix and stop.
        #[arg(long)]
        matrix_only: bool,
        #[command(flatten)]
        opts: RunOpts,
    },
    /// Frobenius number and holes of a numerical semigroup.
    Frobenius {
        #[arg(required = true, num_args = 1..)]
        ints: Vec<i64>,
        #[command(flatten)]
        opts: RunOpts,
    },
    /// Hilbert basis of the saturation only.
    Hilbert {
        file: PathBuf,
        #[command(flatten)]
        opts: RunOpts,
    },
    /// Brute-force census of a box, for debugging.
    #[command(hide = true)]
    Oracle {
        file: PathBuf,
        /// Inclusive bounds per coordinate, e.g. 0:3,0:12.
        #[arg(long = "box")]
        bounds: String,
    },
}

#[derive(Args, Debug, Clone)]
pub struct RunOpts {
    /// Comma-separated subset of hilbert,fundamental,finiteness,holes,saturation,minsets.
    #[arg(long, value_delimiter = ',', value_parser = parse_stage)]
    pub stages: Vec<Stage>,
    /// Degree bound for minimal-set searches when there are infinitely many holes.
    #[arg(long)]
    pub bound: Option<i64>,
    /// Write the JSON report to this path ("-" for standard output).
    #[arg(long)]
    pub json: Option<PathBuf>,
    /// Worker threads (falls back to SEMIHOLE_THREADS, then all cores).
    #[arg(long, env = "SEMIHOLE_THREADS")]
    pub threads: Option<usize>,
    /// Leave timings out of the report.
    #[arg(long)]
    pub no_timings: bool,
}

fn parse_stage(s: &str) -> Result<Stage, String> {
    Stage::parse(s.trim()).ok_or_else(|| format!("unknown stage '{s}'"))
}

fn parse_box(s: &str) -> Result<(Vec<i64>, Vec<i64>), String> {
    let mut lo = Vec::new();
    let mut hi = Vec::new();
    for part in s.split(',') {
        let (l, h) = part
            .split_once(':')
            .ok_or_else(|| format!("--box: expected lo:hi, got '{part}'"))?;
        let l: i64 = l
            .trim()
            .parse()
            .map_err(|_| format!("--box: bad bound '{l}'"))?;
        let h: i64 = h
            .trim()
            .parse()
            .map_err(|_| format!("--box: bad bound '{h}'"))?;
        lo.push(l);
        hi.push(h);
    }
    Ok((lo, hi))
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_ERROR
        }
    }
}

fn execute(cmd: Command, out: &mut dyn Write) -> Result<i32, String> {
    match cmd {
        Command::Analyze { file, opts } => analyze(load(&file)?, opts, false, out),
        Command::Hilbert { file, opts } => {
            let opts = RunOpts {
                stages: vec![Stage::Hilbert],
                ..opts
            };
            analyze(load(&file)?, opts, false, out)
        }
        Command::Table {
            sizes,
            margins,
            keep_redundant,
            matrix_only,
            opts,
        } => {
            let model =
                MarginalModel::parse(&sizes, &margins).map_err(|e| format!("--margins: {e}"))?;
            let mut a = marginal_matrix(&model).map_err(|e| e.to_string())?;
            if !keep_redundant {
                a = remove_redundant_rows(&a).map_err(|e| e.to_string())?;
            }
            if matrix_only {
                out.write_all(crate::format::write_matrix(&a).as_bytes())
                    .map_err(|e| e.to_string())?;
                return Ok(EXIT_OK);
            }
            analyze(a, opts, false, out)
        }
        Command::Frobenius { ints, opts } => {
            // rejects non-positive and non-coprime input up front
            frobenius_number(&ints).map_err(|e| e.to_string())?;
            let a = GeneratorMatrix::from_rows(&[ints]).map_err(|e| e.to_string())?;
            analyze(a, opts, true, out)
        }
        Command::Oracle { file, bounds } => {
            let a = load(&file)?;
            let (lo, hi) = parse_box(&bounds)?;
            if lo.len() != a.dim() {
                return Err(format!("--box: expected {} ranges", a.dim()));
            }
            let cen = census(&a, &lo, &hi).map_err(|e| e.to_string())?;
            let m = oracle_min_sets(&a, &cen, &lo, &hi).map_err(|e| e.to_string())?;
            let nonsat: Vec<_> = cen.non_saturation.iter().cloned().collect();
            let json = serde_json::json!({
                "holes": report::points(&cen.holes()),
                "nonSaturation": report::points(&nonsat),
                "minSS": report::points(&m.min_ss),
                "minSQ": report::points(&m.min_sq),
                "minSQsat": report::points(&m.min_sqsat),
            });
            writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&json).expect("json")
            )
            .map_err(|e| e.to_string())?;
            Ok(EXIT_OK)
        }
    }
}

fn load(path: &Path) -> Result<GeneratorMatrix, String> {
    read_matrix(path).map_err(|e| e.to_string())
}

fn analyze(
    a: GeneratorMatrix,
    opts: RunOpts,
    frobenius: bool,
    out: &mut dyn Write,
) -> Result<i32, String> {
    let mut req = Request::new(a);
    if !opts.stages.is_empty() {
        req.stages = close_stages(opts.stages);
    }
    req.bound = opts.bound;
    req.timings = !opts.no_timings;
    req.frobenius = frobenius;
    let pool = RayonPool::new(opts.threads.unwrap_or(0)).map_err(|e| format!("--threads: {e}"))?;
    let outcome = pipeline::run(&req, &pool);
    let io = |e: std::io::Error| e.to_string();
    match opts.json.as_deref() {
        Some(p) if p == Path::new("-") => out
            .write_all(outcome.report.to_json().as_bytes())
            .map_err(io)?,
        Some(p) => {
            std::fs::write(p, outcome.report.to_json())
                .map_err(|e| format!("--json {}: {e}", p.display()))?;
            out.write_all(outcome.report.to_text().as_bytes())
                .map_err(io)?;
        }
        None => out
            .write_all(outcome.report.to_text().as_bytes())
            .map_err(io)?,
    }
    Ok(outcome.exit_code)
}
