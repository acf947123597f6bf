//! Command-line front end. [`run`] is the whole program minus the
//! process exit, so it can be driven from tests.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::error::{Error, Result};
use crate::gallery::{entry_by_name, list_gallery, CurvatureOracle, LimitOracle};
use crate::jacobi::{solve, solve_m};
use crate::model_space::ModelSpace;
use crate::pipeline::{evaluate_theorem, ingest_samples, Config, Options, TheoremReport};

pub const EXIT_OK: i32 = 0;
/// The model is compact or the integrability hypothesis fails.
pub const EXIT_HYPOTHESIS: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "radialgeo", version, about = "Radial curvature comparison toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate the volume-growth theorem for a configured profile.
    Analyze {
        #[arg(long)]
        config: PathBuf,
        /// CSV of measured ball volumes with header `t,vol`.
        #[arg(long)]
        samples: Option<PathBuf>,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print f, f', m, m' (and optionally ball volumes) on a uniform grid.
    Tabulate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        t_max: f64,
        #[arg(long)]
        step: f64,
        /// Add a `vol_n` column with model ball volumes in dimension `n`.
        #[arg(long)]
        volume: bool,
    },
    /// Built-in profiles with known answers.
    Gallery {
        #[command(subcommand)]
        action: GalleryAction,
    },
}

#[derive(Debug, Subcommand)]
enum GalleryAction {
    /// List entries and their reference values.
    List,
    /// Evaluate the theorem for a gallery entry.
    Analyze {
        name: String,
        #[arg(short = 'n', long = "dim")]
        n: usize,
    },
}

/// Parse `args` (including the program name), run, and return the exit
/// code: 0 on success, 1 when the hypothesis fails or the model is
/// compact, 2 on bad input or a numerical failure.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(stderr, "{text}")
            } else {
                write!(stdout, "{text}")
            };
            return code;
        }
    };
    match dispatch(cli.command, stdout, stderr) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            match e {
                Error::CompactModel { .. } => EXIT_HYPOTHESIS,
                _ => EXIT_INPUT,
            }
        }
    }
}

fn dispatch(command: Command, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Analyze {
            config,
            samples,
            out,
        } => {
            let config = Config::load(&config)?;
            let samples = samples
                .map(|p| ingest_samples(&p, config.n))
                .transpose()?;
            let report = evaluate_theorem(&config.profile, config.n, config.options(), samples.as_ref())?;
            emit_report(&report, out.as_deref(), stdout, stderr)
        }
        Command::Tabulate {
            config,
            t_max,
            step,
            volume,
        } => {
            let config = Config::load(&config)?;
            tabulate(&config, t_max, step, volume, stdout, stderr)?;
            Ok(EXIT_OK)
        }
        Command::Gallery {
            action: GalleryAction::List,
        } => {
            for entry in list_gallery() {
                writeln!(stdout, "{:<28} {}", entry.name, oracle_summary(&entry.oracle))?;
            }
            Ok(EXIT_OK)
        }
        Command::Gallery {
            action: GalleryAction::Analyze { name, n },
        } => {
            let entry = entry_by_name(&name)?;
            let opts = Options::default().with_env()?;
            let report = evaluate_theorem(&entry.profile, n, opts, None)?;
            emit_report(&report, None, stdout, stderr)
        }
    }
}

fn emit_report(
    report: &TheoremReport,
    out: Option<&Path>,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32> {
    let json = report.to_json()?;
    match out {
        Some(path) => std::fs::write(path, json)?,
        None => stdout.write_all(json.as_bytes())?,
    }
    for w in &report.warnings {
        writeln!(stderr, "warning: {w}")?;
    }
    Ok(if report.hypothesis_holds {
        EXIT_OK
    } else {
        EXIT_HYPOTHESIS
    })
}

fn oracle_summary(o: &crate::gallery::Oracle) -> String {
    let limit = |l: &Option<LimitOracle>| match l {
        Some(LimitOracle::Finite(v)) => format!("{v:.12}"),
        Some(LimitOracle::Divergent) => "divergent".into(),
        None => "-".into(),
    };
    let c = match o.total_curvature {
        Some(CurvatureOracle::Finite(v)) => format!("{v:.12}"),
        Some(CurvatureOracle::NegativeInfinite) => "-inf".into(),
        None => "-".into(),
    };
    let mut s = format!(
        "c = {c}, lim f' = {}, lim m' = {}",
        limit(&o.slope),
        limit(&o.m_prime_inf)
    );
    if let Some(z) = o.first_zero {
        s.push_str(&format!(", first zero = {z:.12}"));
    }
    s
}

fn tabulate(
    config: &Config,
    t_max: f64,
    step: f64,
    volume: bool,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<()> {
    if !(t_max > 0.0 && t_max.is_finite()) {
        return Err(Error::Config(format!("--t-max must be positive, got {t_max}")));
    }
    if !(step > 0.0 && step.is_finite()) {
        return Err(Error::Config(format!("--step must be positive, got {step}")));
    }
    let f = solve(&config.profile, t_max, config.tol)?;
    let m = solve_m(&config.profile, t_max, config.tol)?;
    let end = f.reached().min(m.reached());
    let count = (t_max / step + 1e-9).floor() as usize;
    let grid: Vec<f64> = (0..=count)
        .map(|i| i as f64 * step)
        .filter(|&t| t <= end)
        .collect();
    let vols = if volume {
        Some(ModelSpace::new(config.n, f.clone())?.ball_volumes(&grid)?)
    } else {
        None
    };

    let mut wtr = csv::Writer::from_writer(stdout);
    let mut header = vec!["t".to_string(), "f".into(), "fp".into(), "m".into(), "mp".into()];
    if volume {
        header.push(format!("vol_{}", config.n));
    }
    wtr.write_record(&header).map_err(csv_err)?;
    for (i, &t) in grid.iter().enumerate() {
        let (fv, fpv) = f.eval(t)?;
        let (mv, mpv) = m.eval(t)?;
        let mut row = vec![t, fv, fpv, mv, mpv];
        if let Some(v) = &vols {
            row.push(v[i]);
        }
        wtr.write_record(row.iter().map(|x| format!("{x:.12e}"))).map_err(csv_err)?;
    }
    wtr.flush()?;

    if end < t_max {
        let why = match (f.first_zero(), f.blow_up().or(m.blow_up())) {
            (Some(z), _) => format!("f vanishes at t = {z}"),
            (None, Some(b)) => format!("solution exceeds the overflow guard at t = {b}"),
            (None, None) => "integration ended early".into(),
        };
        writeln!(stderr, "note: table stops at t = {end}: {why}")?;
    }
    Ok(())
}

fn csv_err(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::Io(std::io::Error::other(format!("{other:?}"))),
    }
}
