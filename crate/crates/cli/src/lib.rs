//! Command-line front end for `tfd-complexity`: single curves, knob sweeps,
//! the four figure presets and a self-test.

pub mod config;
pub mod figure;
pub mod output;

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use tfd_complexity::checks::{self, Check};
use tfd_complexity::complexity::uniform_grid;
use tfd_complexity::{curve, ComplexityCurve, Error, Knob, Method, ModelParams};

pub use config::{CommonArgs, MethodChoice, RunConfig, TimeUnit, Vary};
pub use figure::FigurePreset;
pub use output::{emit_csv, parse_csv, render_svg, LabeledCurve, CSV_HEADER};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },

    #[error("numeric failure at {}: {source}", describe(params))]
    Numeric { params: ModelParams, source: Error },

    #[error("{failed} of {total} self-test checks failed")]
    SelftestFailed { failed: usize, total: usize },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::SelftestFailed { .. } => 1,
            CliError::Usage(_) => 2,
            CliError::Io { .. } => 3,
            CliError::Numeric { .. } => 4,
        }
    }

    fn from_core(params: ModelParams, source: Error) -> Self {
        if source.is_numeric() {
            CliError::Numeric { params, source }
        } else {
            CliError::Usage(source.to_string())
        }
    }
}

fn describe(p: &ModelParams) -> String {
    format!(
        "beta_omega={}, beta_omega_ref={}, field_ratio={}, lambda_ref={}",
        p.beta_omega, p.beta_omega_ref, p.field_ratio, p.lambda_ref
    )
}

#[derive(Debug, Parser)]
#[command(
    name = "tfdc",
    version,
    about = "Complexity of the thermofield double state of an oscillator in an electric field"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// One ΔC curve; CSV to --out or stdout.
    Curve {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Cartesian product of knob values; one CSV per curve in --out.
    Sweep {
        /// knob=v1,v2,... with knob one of beta-omega, beta-omega-r,
        /// field-ratio, lambda-r. Repeatable; the first is outermost.
        #[arg(long)]
        vary: Vec<Vary>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Parameter family of figure 1, 2, 3 or 4.
    Figure {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=4))]
        id: u8,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Run every invariant check and report each by name.
    Selftest,
}

impl Cli {
    pub fn into_config(self) -> Result<RunConfig, CliError> {
        match self.command {
            CliCommand::Curve { common } => RunConfig::build(config::Command::Curve, &common),
            CliCommand::Sweep { vary, common } => {
                RunConfig::build(config::Command::Sweep(vary), &common)
            }
            CliCommand::Figure { id, common } => {
                let preset = figure::preset(id).expect("id range is checked by clap");
                RunConfig::build(config::Command::Figure(preset), &common)
            }
            CliCommand::Selftest => Ok(RunConfig::selftest()),
        }
    }
}

/// Parses `args`, runs, reports errors on stderr and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let stdout = io::stdout();
    match cli
        .into_config()
        .and_then(|cfg| run(&cfg, &mut stdout.lock()))
    {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("tfdc: {e}");
            e.exit_code()
        }
    }
}

/// Executes `config`; progress lines and single-curve CSV go to `out`.
pub fn run(config: &RunConfig, out: &mut impl Write) -> Result<(), CliError> {
    let stdout_err = |source| CliError::Io {
        path: PathBuf::from("<stdout>"),
        source,
    };
    match &config.command {
        config::Command::Selftest => selftest(out)?,
        config::Command::Curve => {
            let c = evaluate(config)?.remove(0);
            let labels = [legend_label(&c.params, &[Knob::BetaOmega])];
            match &config.output {
                Some(path) => write_file(path, &output::csv_string(&c, config.time_unit))?,
                None => emit_csv(out, &c, config.time_unit).map_err(stdout_err)?,
            }
            write_svg(config, &[c], &labels)?;
        }
        config::Command::Sweep(vary) => {
            let knobs: Vec<Knob> = vary.iter().map(|v| v.knob).collect();
            let dir = config
                .output
                .clone()
                .unwrap_or_else(|| PathBuf::from("sweep"));
            write_family(config, &dir, "sweep", &knobs, &[], out)?;
        }
        config::Command::Figure(preset) => {
            let knobs: Vec<Knob> = preset.vary.iter().map(|(k, _)| *k).collect();
            let dir = config
                .output
                .clone()
                .unwrap_or_else(|| PathBuf::from(format!("figure{}", preset.id)));
            let mut notes = vec![format!("figure {}: {}", preset.id, preset.title)];
            notes.extend(preset.note.map(str::to_string));
            write_family(
                config,
                &dir,
                &format!("figure{}", preset.id),
                &knobs,
                &notes,
                out,
            )?;
        }
    }
    Ok(())
}

/// Curves for every parameter set of `config`, in output order.
pub fn evaluate(config: &RunConfig) -> Result<Vec<ComplexityCurve>, CliError> {
    let grid = uniform_grid(config.theta_max, config.samples);
    let sets = config.parameter_sets()?;
    let schemes = sets
        .iter()
        .map(|p| config.scheme_for(p))
        .collect::<Result<Vec<_>, _>>()?;
    sets.par_iter()
        .zip(schemes.par_iter())
        .map(|(p, &scheme)| curve(p, &grid, scheme).map_err(|e| CliError::from_core(*p, e)))
        .collect()
}

pub fn legend_label(p: &ModelParams, knobs: &[Knob]) -> String {
    knobs
        .iter()
        .map(|k| format!("{}={}", k.symbol(), k.get(p)))
        .collect::<Vec<_>>()
        .join(", ")
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write_svg(
    config: &RunConfig,
    curves: &[ComplexityCurve],
    labels: &[String],
) -> Result<(), CliError> {
    let Some(path) = &config.output_svg else {
        return Ok(());
    };
    let labeled: Vec<LabeledCurve<'_>> = curves
        .iter()
        .zip(labels)
        .map(|(curve, label)| LabeledCurve { label, curve })
        .collect();
    let svg = render_svg(&labeled, config.time_unit).map_err(|e| CliError::Usage(e.to_string()))?;
    write_file(path, &svg)
}

/// One CSV per curve plus `manifest.csv` listing them.
fn write_family(
    config: &RunConfig,
    dir: &Path,
    prefix: &str,
    knobs: &[Knob],
    notes: &[String],
    out: &mut impl Write,
) -> Result<(), CliError> {
    let curves = evaluate(config)?;
    fs::create_dir_all(dir).map_err(|source| CliError::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    let mut manifest = String::new();
    for note in notes {
        manifest.push_str(&format!("# {note}\n"));
    }
    manifest.push_str(&format!("# time_unit={}\n", config.time_unit.as_str()));
    manifest.push_str("file,beta_omega,beta_omega_ref,field_ratio,lambda_ref,method,max_delta_c\n");
    let mut labels = Vec::with_capacity(curves.len());
    for (i, c) in curves.iter().enumerate() {
        let name = format!("{prefix}_{i:02}.csv");
        let path = dir.join(&name);
        write_file(&path, &output::csv_string(c, config.time_unit))?;
        let p = &c.params;
        manifest.push_str(&format!(
            "{name},{},{},{},{},{},{:.14e}\n",
            p.beta_omega,
            p.beta_omega_ref,
            p.field_ratio,
            p.lambda_ref,
            c.scheme.method,
            c.max_delta_c()
        ));
        labels.push(legend_label(p, knobs));
        writeln!(out, "{}  {}", path.display(), labels[i]).map_err(|source| CliError::Io {
            path: PathBuf::from("<stdout>"),
            source,
        })?;
    }
    write_file(&dir.join("manifest.csv"), &manifest)?;
    write_svg(config, &curves, &labels)
}

/// CSV emit/parse round trip on a small curve with a nonzero field.
fn csv_round_trip_check() -> Check {
    let p = ModelParams {
        beta_omega: 1.3,
        beta_omega_ref: 7.0,
        field_ratio: 0.4,
        lambda_ref: 0.8,
    };
    let result = curve(&p, &uniform_grid(6.0, 25), Method::Numeric)
        .map_err(|e| e.to_string())
        .and_then(|c| {
            let parsed = parse_csv(&output::csv_string(&c, TimeUnit::Phase))?;
            if parsed.rows.len() != c.samples.len() {
                return Err("row count differs".to_string());
            }
            let worst = parsed
                .rows
                .iter()
                .zip(&c.samples)
                .flat_map(|(a, b)| {
                    [
                        (a.theta, b.theta),
                        (a.c_plus, b.c_plus),
                        (a.c_minus, b.c_minus),
                        (a.c_total, b.c_total),
                        (a.delta_c, b.delta_c),
                    ]
                })
                .map(|(x, y)| {
                    if y == 0.0 {
                        x.abs()
                    } else {
                        ((x - y) / y).abs()
                    }
                })
                .fold(0.0, f64::max);
            Ok(worst)
        });
    let (passed, detail) = match result {
        Ok(worst) => (
            worst <= 1e-14,
            format!("worst relative {worst:.3e} (tolerance 1e-14)"),
        ),
        Err(e) => (false, e),
    };
    Check {
        module: "cli",
        name: "csv_round_trip",
        passed,
        detail,
    }
}

fn selftest(out: &mut impl Write) -> Result<(), CliError> {
    let mut all = checks::run_all();
    all.push(csv_round_trip_check());
    let failed = all.iter().filter(|c| !c.passed).count();
    let report = |out: &mut dyn Write| -> io::Result<()> {
        for c in &all {
            let status = if c.passed { "PASS" } else { "FAIL" };
            writeln!(out, "{status}  {}::{}  {}", c.module, c.name, c.detail)?;
        }
        writeln!(out, "{} of {} checks passed", all.len() - failed, all.len())
    };
    report(out).map_err(|source| CliError::Io {
        path: PathBuf::from("<stdout>"),
        source,
    })?;
    if failed > 0 {
        return Err(CliError::SelftestFailed {
            failed,
            total: all.len(),
        });
    }
    Ok(())
}
