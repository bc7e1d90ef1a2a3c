//! Run configuration: command-line flags merged over an optional
//! `key=value` file.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, ValueEnum};
use tfd_complexity::complexity::{DEFAULT_SAMPLES, DEFAULT_THETA_MAX};
use tfd_complexity::params::BETA_OMEGA_MAX;
use tfd_complexity::spectrum::in_simple_limit_window;
use tfd_complexity::{DerivedParams, Knob, Method, ModelParams, Scheme};

use crate::figure::FigurePreset;
use crate::CliError;

pub const DEFAULT_KNOBS: ModelParams = ModelParams {
    beta_omega: 1.0,
    beta_omega_ref: 10.0,
    field_ratio: 0.0,
    lambda_ref: 1.0,
};

/// Spectrum method as chosen on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MethodChoice {
    /// `SimpleLimit` inside `λ ≤ 0.2, d̃ ≤ 0.1`, `Numeric` elsewhere.
    Auto,
    Fixed(Method),
}

impl MethodChoice {
    pub fn resolve(self, d: &DerivedParams) -> Method {
        match self {
            MethodChoice::Fixed(m) => m,
            MethodChoice::Auto if in_simple_limit_window(d) => Method::SimpleLimit,
            MethodChoice::Auto => Method::Numeric,
        }
    }
}

impl FromStr for MethodChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s.trim().eq_ignore_ascii_case("auto") {
            return Ok(MethodChoice::Auto);
        }
        s.parse::<Method>().map(MethodChoice::Fixed).map_err(|_| {
            format!("unknown method `{s}` (expected auto, closed-form, numeric, perturbative or simple-limit)")
        })
    }
}

impl fmt::Display for MethodChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MethodChoice::Auto => f.write_str("auto"),
            MethodChoice::Fixed(m) => write!(f, "{m}"),
        }
    }
}

/// Units of the first CSV column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, ValueEnum)]
pub enum TimeUnit {
    /// The phase `θ = ωt`.
    #[default]
    Phase,
    /// `t/β`, i.e. `θ/βω`.
    Beta,
}

impl TimeUnit {
    pub fn as_str(self) -> &'static str {
        match self {
            TimeUnit::Phase => "phase",
            TimeUnit::Beta => "beta",
        }
    }

    pub fn convert(self, theta: f64, beta_omega: f64) -> f64 {
        match self {
            TimeUnit::Phase => theta,
            TimeUnit::Beta => theta / beta_omega,
        }
    }
}

impl FromStr for TimeUnit {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        <TimeUnit as ValueEnum>::from_str(s.trim(), true)
            .map_err(|_| format!("unknown time unit `{s}` (expected phase or beta)"))
    }
}

/// Knob list for `--vary`: `name=v1,v2,...`.
#[derive(Debug, Clone, PartialEq)]
pub struct Vary {
    pub knob: Knob,
    pub values: Vec<f64>,
}

impl FromStr for Vary {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (name, list) = s
            .split_once('=')
            .ok_or_else(|| format!("expected `knob=v1,v2,...`, got `{s}`"))?;
        let knob = parse_knob(name)?;
        let values = list
            .split(',')
            .map(|v| {
                v.trim()
                    .parse::<f64>()
                    .map_err(|e| format!("bad value `{v}` for {name}: {e}"))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if values.is_empty() {
            return Err(format!("no values given for {name}"));
        }
        Ok(Vary { knob, values })
    }
}

/// Accepts both the flag spelling (`beta-omega-r`) and the library name
/// (`beta_omega_ref`).
pub fn parse_knob(name: &str) -> Result<Knob, String> {
    let norm = name.trim().replace('-', "_");
    let alias = match norm.as_str() {
        "beta_omega_r" => "beta_omega_ref",
        "lambda_r" => "lambda_ref",
        other => other,
    };
    alias.parse::<Knob>().map_err(|e| e.to_string())
}

/// Flags shared by every command that evaluates curves.
#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    /// βω of the target oscillator.
    #[arg(long = "beta-omega", allow_negative_numbers = true)]
    pub beta_omega: Option<f64>,
    /// βω_R of the reference oscillator.
    #[arg(long = "beta-omega-r", allow_negative_numbers = true)]
    pub beta_omega_r: Option<f64>,
    /// qE/Ω.
    #[arg(long = "field-ratio", allow_negative_numbers = true)]
    pub field_ratio: Option<f64>,
    /// λ_R.
    #[arg(long = "lambda-r", allow_negative_numbers = true)]
    pub lambda_r: Option<f64>,
    /// Upper end of the phase grid [default: 4π].
    #[arg(long = "theta-max", allow_negative_numbers = true)]
    pub theta_max: Option<f64>,
    /// Number of grid points [default: 401].
    #[arg(long)]
    pub samples: Option<usize>,
    /// auto, closed-form, numeric, perturbative or simple-limit [default: auto].
    #[arg(long)]
    pub method: Option<MethodChoice>,
    /// Units of the first CSV column [default: phase].
    #[arg(long = "time-unit")]
    pub time_unit: Option<TimeUnit>,
    /// CSV file (curve) or output directory (sweep, figure).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write an SVG plot of ΔC.
    #[arg(long)]
    pub svg: Option<PathBuf>,
    /// Use `{1, 1, r}` for the simple-limit `−` spectrum.
    #[arg(long = "strict-paper-spectrum")]
    pub strict_paper_spectrum: bool,
    /// `key=value` file supplying any of the flags above.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

const FILE_KEYS: [&str; 12] = [
    "beta-omega",
    "beta-omega-r",
    "field-ratio",
    "lambda-r",
    "theta-max",
    "samples",
    "method",
    "time-unit",
    "out",
    "svg",
    "strict-paper-spectrum",
    "vary",
];

/// Parsed `key=value` file. Blank lines and `#` comments are skipped;
/// `vary` may repeat.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct FileConfig {
    entries: BTreeMap<String, Vec<String>>,
}

impl FileConfig {
    pub fn parse(text: &str) -> Result<Self, String> {
        let mut entries: BTreeMap<String, Vec<String>> = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("line {}: expected key=value", lineno + 1))?;
            let key = key.trim().trim_start_matches("--").replace('_', "-");
            if !FILE_KEYS.contains(&key.as_str()) {
                return Err(format!("line {}: unknown key `{key}`", lineno + 1));
            }
            let values = entries.entry(key.clone()).or_default();
            if key != "vary" && !values.is_empty() {
                return Err(format!("line {}: duplicate key `{key}`", lineno + 1));
            }
            values.push(value.trim().to_string());
        }
        Ok(Self { entries })
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
    }

    fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>, CliError>
    where
        T::Err: fmt::Display,
    {
        match self.entries.get(key).and_then(|v| v.first()) {
            None => Ok(None),
            Some(raw) => raw
                .parse::<T>()
                .map(Some)
                .map_err(|e| CliError::Usage(format!("config `{key}`: {e}"))),
        }
    }

    fn flag(&self, key: &str) -> Result<bool, CliError> {
        match self
            .entries
            .get(key)
            .and_then(|v| v.first())
            .map(|s| s.as_str())
        {
            None | Some("false") | Some("0") | Some("no") => Ok(false),
            Some("true") | Some("1") | Some("yes") | Some("") => Ok(true),
            Some(other) => Err(CliError::Usage(format!(
                "config `{key}`: expected true or false, got `{other}`"
            ))),
        }
    }

    fn vary(&self) -> Result<Vec<Vary>, CliError> {
        self.entries
            .get("vary")
            .into_iter()
            .flatten()
            .map(|v| v.parse::<Vary>().map_err(CliError::Usage))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Command {
    Curve,
    Sweep(Vec<Vary>),
    Figure(&'static FigurePreset),
    Selftest,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Curve => "curve",
            Command::Sweep(_) => "sweep",
            Command::Figure(_) => "figure",
            Command::Selftest => "selftest",
        }
    }
}

/// Fully resolved, validated run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub knobs: ModelParams,
    pub method: MethodChoice,
    pub theta_max: f64,
    pub samples: usize,
    pub time_unit: TimeUnit,
    /// `None` writes a single curve to stdout.
    pub output: Option<PathBuf>,
    pub output_svg: Option<PathBuf>,
    pub strict_paper_spectrum: bool,
}

impl RunConfig {
    pub fn selftest() -> Self {
        Self {
            command: Command::Selftest,
            knobs: DEFAULT_KNOBS,
            method: MethodChoice::Auto,
            theta_max: DEFAULT_THETA_MAX,
            samples: DEFAULT_SAMPLES,
            time_unit: TimeUnit::Phase,
            output: None,
            output_svg: None,
            strict_paper_spectrum: false,
        }
    }

    /// Merges `args` over the file named by `--config`, if any.
    pub fn build(command: Command, args: &CommonArgs) -> Result<Self, CliError> {
        let file = match &args.config {
            Some(path) => FileConfig::load(path)?,
            None => FileConfig::default(),
        };
        Self::merge(command, args, &file)
    }

    pub fn merge(command: Command, args: &CommonArgs, file: &FileConfig) -> Result<Self, CliError> {
        let command = match command {
            Command::Sweep(vary) if vary.is_empty() => Command::Sweep(file.vary()?),
            other => other,
        };
        let knob_flags = [
            ("beta-omega", args.beta_omega),
            ("beta-omega-r", args.beta_omega_r),
            ("field-ratio", args.field_ratio),
            ("lambda-r", args.lambda_r),
        ];
        let mut resolved = [0.0; 4];
        let defaults = [
            DEFAULT_KNOBS.beta_omega,
            DEFAULT_KNOBS.beta_omega_ref,
            DEFAULT_KNOBS.field_ratio,
            DEFAULT_KNOBS.lambda_ref,
        ];
        for (slot, ((key, flag), default)) in resolved
            .iter_mut()
            .zip(knob_flags.into_iter().zip(defaults))
        {
            *slot = match flag {
                Some(v) => v,
                None => file.get::<f64>(key)?.unwrap_or(default),
            };
        }
        let mut knobs = ModelParams {
            beta_omega: resolved[0],
            beta_omega_ref: resolved[1],
            field_ratio: resolved[2],
            lambda_ref: resolved[3],
        };
        let mut method = match args.method {
            Some(m) => m,
            None => file
                .get::<MethodChoice>("method")?
                .unwrap_or(MethodChoice::Auto),
        };

        if let Command::Figure(preset) = &command {
            let overridden: Vec<&str> = knob_flags
                .iter()
                .filter(|(_, v)| v.is_some())
                .map(|(k, _)| *k)
                .chain(args.method.map(|_| "method"))
                .collect();
            if !overridden.is_empty() {
                return Err(CliError::Usage(format!(
                    "figure presets are fixed; remove --{}",
                    overridden.join(", --")
                )));
            }
            knobs = preset.base;
            method = preset.method;
        }

        let theta_max = match args.theta_max {
            Some(v) => v,
            None => file.get::<f64>("theta-max")?.unwrap_or(DEFAULT_THETA_MAX),
        };
        let samples = match args.samples {
            Some(v) => v,
            None => file.get::<usize>("samples")?.unwrap_or(DEFAULT_SAMPLES),
        };
        let time_unit = match args.time_unit {
            Some(v) => v,
            None => file.get::<TimeUnit>("time-unit")?.unwrap_or_default(),
        };
        let output = match &args.out {
            Some(p) => Some(p.clone()),
            None => file.get::<PathBuf>("out")?,
        };
        let output_svg = match &args.svg {
            Some(p) => Some(p.clone()),
            None => file.get::<PathBuf>("svg")?,
        };
        let strict_paper_spectrum =
            args.strict_paper_spectrum || file.flag("strict-paper-spectrum")?;

        let config = Self {
            command,
            knobs,
            method,
            theta_max,
            samples,
            time_unit,
            output,
            output_svg,
            strict_paper_spectrum,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.samples < 2 {
            return Err(CliError::Usage(format!(
                "--samples must be at least 2, got {}",
                self.samples
            )));
        }
        if !(self.theta_max.is_finite() && self.theta_max > 0.0) {
            return Err(CliError::Usage(format!(
                "--theta-max must be positive and finite, got {}",
                self.theta_max
            )));
        }
        for p in self.parameter_sets()? {
            check_knobs(&p)?;
        }
        Ok(())
    }

    /// Every parameter set the command evaluates, in output order.
    pub fn parameter_sets(&self) -> Result<Vec<ModelParams>, CliError> {
        let vary: Vec<(&str, Vec<f64>)> = match &self.command {
            Command::Curve | Command::Selftest => return Ok(vec![self.knobs]),
            Command::Sweep(vary) => vary
                .iter()
                .map(|v| (v.knob.name(), v.values.clone()))
                .collect(),
            Command::Figure(preset) => preset
                .vary
                .iter()
                .map(|(k, values)| (k.name(), values.to_vec()))
                .collect(),
        };
        if vary.is_empty() {
            return Err(CliError::Usage(
                "sweep needs at least one --vary knob=v1,v2,...".into(),
            ));
        }
        for (i, (name, _)) in vary.iter().enumerate() {
            if vary[..i].iter().any(|(other, _)| other == name) {
                return Err(CliError::Usage(format!("knob {name} is varied twice")));
            }
        }
        for (k, values) in &vary {
            if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
                return Err(CliError::Usage(format!("{k} value {bad} is not finite")));
            }
        }
        tfd_complexity::complexity::sweep_params(&self.knobs, &vary)
            .map_err(|e| CliError::Usage(e.to_string()))
    }

    pub fn scheme_for(&self, p: &ModelParams) -> Result<Scheme, CliError> {
        let d = p.derive().map_err(|e| CliError::Usage(e.to_string()))?;
        Ok(Scheme {
            method: self.method.resolve(&d),
            strict_paper_spectrum: self.strict_paper_spectrum,
        })
    }
}

/// Range guard applied before any evaluation.
pub fn check_knobs(p: &ModelParams) -> Result<(), CliError> {
    if !(p.beta_omega > 0.0 && p.beta_omega <= BETA_OMEGA_MAX) {
        return Err(CliError::Usage(format!(
            "beta-omega = {} is out of range; expected 0 < beta-omega <= {BETA_OMEGA_MAX}",
            p.beta_omega
        )));
    }
    p.validate().map_err(|e| CliError::Usage(e.to_string()))
}
