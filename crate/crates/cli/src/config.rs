//! Command-line flags, config files and the resolved run configuration.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use reservo_core::analysis::{linspace, logspace, ReservoirModel};
use reservo_core::reservoir::{thermal_occupation, ReservoirOptions, SidebandRates};
use reservo_core::{ControlField, GeneratorKind, SpectralDensity, Thermal};

use crate::error::CliError;
use crate::io::load_tabulated;

#[derive(Debug, Parser)]
#[command(name = "reservo", version, about = "Steady states and dynamics of a driven qubit in a structured reservoir")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Steady state at one control point (JSON).
    #[command(args_override_self = true)]
    Steady(SteadyArgs),
    /// Steady states over a grid of omega/delta and phi.
    #[command(args_override_self = true)]
    Sweep(SweepArgs),
    /// Time evolution from an initial state.
    #[command(args_override_self = true)]
    Dynamics(DynamicsArgs),
    /// Fidelity between fixed-dissipator and secular states over (omega/delta, x).
    #[command(args_override_self = true)]
    FidelityMap(FidelityMapArgs),
    /// Thermal occupation compensating a rate ratio x.
    #[command(args_override_self = true)]
    Compensate(CompensateArgs),
    /// Rates, principal-value shifts and the generator at one control point (JSON).
    #[command(args_override_self = true)]
    ShowRates(SteadyArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Steady(_) => "steady",
            Self::Sweep(_) => "sweep",
            Self::Dynamics(_) => "dynamics",
            Self::FidelityMap(_) => "fidelity-map",
            Self::Compensate(_) => "compensate",
            Self::ShowRates(_) => "show-rates",
        }
    }

    pub fn common(&self) -> &Common {
        match self {
            Self::Steady(a) | Self::ShowRates(a) => &a.common,
            Self::Sweep(a) => &a.common,
            Self::Dynamics(a) => &a.common,
            Self::FidelityMap(a) => &a.common,
            Self::Compensate(a) => &a.common,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Generator {
    Fdme,
    MmeSecular,
    MmeNonsecular,
}

impl From<Generator> for GeneratorKind {
    fn from(g: Generator) -> Self {
        match g {
            Generator::Fdme => GeneratorKind::Fdme,
            Generator::MmeSecular => GeneratorKind::MmeSecular,
            Generator::MmeNonsecular => GeneratorKind::MmeNonsecular,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum Unit {
    /// Frequencies, rates and temperatures are multiples of |delta|; times of 1/|delta|.
    #[default]
    Delta,
    /// Values are used as given.
    Absolute,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Analytic,
    NullSpace,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Initial {
    G,
    E,
    Mixed,
    Plus,
    Minus,
}

/// Flags shared by every subcommand.
#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Key-value file (`key = value`, `#` comments); flags given on the command line win.
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub generator: Option<Generator>,
    #[arg(long, value_enum)]
    pub unit: Option<Unit>,
    /// Detuning omega_0 - omega_l (default 1).
    #[arg(long, allow_hyphen_values = true)]
    pub delta: Option<f64>,
    #[arg(long)]
    pub omega: Option<f64>,
    #[arg(long)]
    pub omega_over_delta: Option<f64>,
    /// Laser phase; accepts `pi`, `pi/2`, `3pi/2`, or a comma list where a grid is expected.
    #[arg(long, allow_hyphen_values = true)]
    pub phi: Option<String>,
    /// Laser frequency (default 1e5).
    #[arg(long)]
    pub omega_l: Option<f64>,
    /// Flat spectrum with 2 pi J = gamma_fd.
    #[arg(long)]
    pub gamma_fd: Option<f64>,
    /// Flat spectrum with J = level.
    #[arg(long)]
    pub flat_level: Option<f64>,
    #[arg(long)]
    pub lorentzian_gamma_l: Option<f64>,
    #[arg(long)]
    pub lorentzian_lambda: Option<f64>,
    /// Lorentzian centre (default: the qubit frequency).
    #[arg(long)]
    pub lorentzian_omega_c: Option<f64>,
    /// Two-column CSV of (omega, J) samples.
    #[arg(long, value_name = "PATH")]
    pub tabulated: Option<PathBuf>,
    /// Rate ratio gamma_- / gamma_+ held fixed at every dressed splitting.
    #[arg(long)]
    pub fixed_x: Option<f64>,
    /// Carrier rate for --fixed-x (default 1e-3).
    #[arg(long)]
    pub gamma0: Option<f64>,
    #[arg(long)]
    pub temp: Option<f64>,
    /// Occupation at the qubit frequency, instead of --temp.
    #[arg(long)]
    pub n_fd: Option<f64>,
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub uniform_occupation: Option<bool>,
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub include_lamb: Option<bool>,
    /// Output file (default: stdout).
    #[arg(long, short)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Args)]
pub struct SteadyArgs {
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub common: Common,
    /// omega/delta grid `a:b:n` (linear) or `a:b:nlog` (default 0:100:200log).
    #[arg(long)]
    pub grid_omega: Option<String>,
    #[arg(long, value_enum)]
    pub method: Option<Method>,
}

#[derive(Debug, Clone, Args)]
pub struct DynamicsArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, value_enum)]
    pub initial: Option<Initial>,
    /// Final time, or `auto` for 20 relaxation times.
    #[arg(long)]
    pub tmax: Option<String>,
    #[arg(long)]
    pub n_times: Option<usize>,
    /// Space output times logarithmically over six decades below tmax.
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub log_time: Option<bool>,
}

#[derive(Debug, Clone, Args)]
pub struct FidelityMapArgs {
    #[command(flatten)]
    pub common: Common,
    /// omega/delta grid (default 0:100:200log).
    #[arg(long)]
    pub grid_omega: Option<String>,
    /// log10 x grid `a:b:n` (default -2:2:81).
    #[arg(long, allow_hyphen_values = true)]
    pub grid_x: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct CompensateArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long)]
    pub x: Option<f64>,
    /// omega/delta grid (default 0:5:100).
    #[arg(long)]
    pub grid_omega: Option<String>,
}

const SUBCOMMANDS: [&str; 6] = ["steady", "sweep", "dynamics", "fidelity-map", "compensate", "show-rates"];

/// Parses `args`, splicing in the entries of `--config` ahead of the
/// command-line flags so that later (command-line) values win.
pub fn parse(args: Vec<OsString>) -> Result<Cli, clap::Error> {
    let first = Cli::try_parse_from(&args)?;
    let Some(path) = first.command.common().config.clone() else {
        return Ok(first);
    };
    let text = std::fs::read_to_string(&path).map_err(|e| {
        clap::Error::raw(clap::error::ErrorKind::Io, format!("cannot read config {}: {e}\n", path.display()))
    })?;
    let entries = parse_config_file(&text).map_err(|m| clap::Error::raw(clap::error::ErrorKind::InvalidValue, m + "\n"))?;
    let pos = args
        .iter()
        .position(|a| a.to_str().is_some_and(|s| SUBCOMMANDS.contains(&s)))
        .expect("clap accepted a subcommand");
    let mut merged: Vec<OsString> = args[..=pos].to_vec();
    for (k, v) in entries {
        merged.push(format!("--{k}").into());
        merged.push(v.into());
    }
    merged.extend_from_slice(&args[pos + 1..]);
    Cli::try_parse_from(merged)
}

/// `key = value` lines; blank lines and `#` comments are skipped.
pub fn parse_config_file(text: &str) -> Result<Vec<(String, String)>, String> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| format!("config line {}: expected `key = value`", i + 1))?;
        let key = k.trim().replace('_', "-");
        if key.is_empty() || key == "config" {
            return Err(format!("config line {}: invalid key `{}`", i + 1, k.trim()));
        }
        out.push((key, v.trim().trim_matches('"').to_string()));
    }
    Ok(out)
}

/// Parses `pi`, `-pi/2`, `3pi/4`, `2*pi` or a plain number.
pub fn parse_angle(s: &str) -> Result<f64, CliError> {
    let t = s.trim().replace(' ', "");
    let bad = || CliError::Config(format!("cannot parse angle `{s}`"));
    if let Ok(v) = t.parse::<f64>() {
        return Ok(v);
    }
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.to_string(), b.parse::<f64>().map_err(|_| bad())?),
        None => (t.clone(), 1.0),
    };
    let coeff = num.strip_suffix("pi").ok_or_else(bad)?.trim_end_matches('*');
    let c = match coeff {
        "" | "+" => 1.0,
        "-" => -1.0,
        c => c.parse::<f64>().map_err(|_| bad())?,
    };
    Ok(c * std::f64::consts::PI / den)
}

pub fn parse_angles(s: &str) -> Result<Vec<f64>, CliError> {
    s.split(',').map(parse_angle).collect()
}

/// `a:b:n` gives `n` linear points; `a:b:nlog` gives `n` logarithmic points,
/// where a zero start contributes `0` followed by `n - 1` points over the
/// three decades below `b`.
pub fn parse_grid(s: &str) -> Result<Vec<f64>, CliError> {
    let bad = |why: &str| CliError::Config(format!("grid `{s}`: {why}"));
    let parts: Vec<&str> = s.split(':').map(str::trim).collect();
    let [a, b, n] = parts[..] else {
        return Err(bad("expected a:b:n"));
    };
    let a: f64 = a.parse().map_err(|_| bad("bad start"))?;
    let b: f64 = b.parse().map_err(|_| bad("bad end"))?;
    let (n, log) = match n.strip_suffix("log") {
        Some(n) => (n, true),
        None => (n, false),
    };
    let n: usize = n.parse().map_err(|_| bad("bad count"))?;
    if n == 0 || !a.is_finite() || !b.is_finite() {
        return Err(bad("empty or non-finite"));
    }
    if !log {
        return Ok(linspace(a, b, n));
    }
    if !(b > 0.0) || a < 0.0 || a > b {
        return Err(bad("log grid needs 0 <= a <= b, b > 0"));
    }
    if a == 0.0 {
        let mut g = vec![0.0];
        g.extend(logspace(b.log10() - 3.0, b.log10(), n - 1));
        Ok(g)
    } else {
        Ok(logspace(a.log10(), b.log10(), n))
    }
}

/// Spectral configuration after validation, in absolute units.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "snake_case", tag = "type")]
pub enum Spectrum {
    Flat { level: f64 },
    Lorentzian { gamma_l: f64, lambda: f64, omega_c: f64 },
    Tabulated { path: PathBuf, samples: usize },
    FixedX { x: f64, gamma_0: f64 },
}

/// Everything a run depends on, in absolute units. Embedded in every output.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub version: String,
    pub generator: Option<Generator>,
    pub unit: Unit,
    /// Multiplier applied to frequency-valued inputs.
    pub scale: f64,
    pub delta: f64,
    pub omega: Option<f64>,
    pub phi: Vec<f64>,
    pub omega_l: f64,
    pub omega_0: f64,
    pub spectrum: Option<Spectrum>,
    pub temperature: Option<f64>,
    pub n_fd: Option<f64>,
    pub uniform_occupation: bool,
    pub include_lamb: bool,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub grid_omega_over_delta: Option<Vec<f64>>,
    pub grid_log10_x: Option<Vec<f64>>,
    pub method: Option<Method>,
    pub initial: Option<Initial>,
    pub tmax: Option<String>,
    pub n_times: Option<usize>,
    pub log_time: Option<bool>,
    pub x: Option<f64>,
    #[serde(skip)]
    pub density: Option<SpectralDensity>,
}

pub const DEFAULT_OMEGA_L: f64 = 1e5;
pub const DEFAULT_GAMMA0: f64 = 1e-3;

fn nonneg(v: f64, name: &str) -> Result<f64, CliError> {
    if v >= 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(CliError::Config(format!("--{name} must be finite and nonnegative, got {v}")))
    }
}

fn positive(v: f64, name: &str) -> Result<f64, CliError> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(CliError::Config(format!("--{name} must be positive, got {v}")))
    }
}

impl RunConfig {
    pub fn resolve(cmd: &Command) -> Result<Self, CliError> {
        let c = cmd.common();
        let unit = c.unit.unwrap_or_default();
        let delta_in = c.delta.unwrap_or(1.0);
        if !delta_in.is_finite() {
            return Err(CliError::Config("--delta must be finite".into()));
        }
        let scale = match unit {
            Unit::Delta => {
                if delta_in == 0.0 {
                    return Err(CliError::Config("--unit delta needs a nonzero --delta".into()));
                }
                delta_in.abs()
            }
            Unit::Absolute => 1.0,
        };
        let delta = match unit {
            Unit::Delta => delta_in.signum() * scale,
            Unit::Absolute => delta_in,
        };
        let omega = match (c.omega, c.omega_over_delta) {
            (Some(_), Some(_)) => return Err(CliError::Config("give --omega or --omega-over-delta, not both".into())),
            (Some(o), None) => Some(nonneg(o, "omega")? * scale),
            (None, Some(r)) => Some(nonneg(r, "omega-over-delta")? * delta.abs()),
            (None, None) => None,
        };
        let phi = match &c.phi {
            Some(s) => parse_angles(s)?,
            None => vec![0.0],
        };
        let omega_l = positive(c.omega_l.unwrap_or(DEFAULT_OMEGA_L), "omega-l")? * scale;
        let omega_0 = omega_l + delta;
        if !(omega_0 > 0.0) {
            return Err(CliError::Config("qubit frequency omega_l + delta must be positive".into()));
        }

        let lorentz = [c.lorentzian_gamma_l, c.lorentzian_lambda, c.lorentzian_omega_c];
        let mut specs = Vec::new();
        if let Some(g) = c.gamma_fd {
            specs.push(Spectrum::Flat {
                level: nonneg(g, "gamma-fd")? * scale / std::f64::consts::TAU,
            });
        }
        if let Some(l) = c.flat_level {
            specs.push(Spectrum::Flat {
                level: nonneg(l, "flat-level")? * scale,
            });
        }
        if lorentz.iter().any(Option::is_some) {
            let (Some(gl), Some(lam)) = (lorentz[0], lorentz[1]) else {
                return Err(CliError::Config(
                    "a Lorentzian needs --lorentzian-gamma-l and --lorentzian-lambda".into(),
                ));
            };
            specs.push(Spectrum::Lorentzian {
                gamma_l: positive(gl, "lorentzian-gamma-l")? * scale,
                lambda: positive(lam, "lorentzian-lambda")? * scale,
                omega_c: match lorentz[2] {
                    Some(w) => positive(w, "lorentzian-omega-c")? * scale,
                    None => omega_0,
                },
            });
        }
        let mut tab_density = None;
        if let Some(p) = &c.tabulated {
            let (w, j) = load_tabulated(p)?;
            let n = w.len();
            let w: Vec<f64> = w.into_iter().map(|v| v * scale).collect();
            let j: Vec<f64> = j.into_iter().map(|v| v * scale).collect();
            tab_density = Some(SpectralDensity::tabulated(w, j).map_err(|e| CliError::Config(e.to_string()))?);
            specs.push(Spectrum::Tabulated {
                path: p.clone(),
                samples: n,
            });
        }
        if let Some(x) = c.fixed_x {
            specs.push(Spectrum::FixedX {
                x: nonneg(x, "fixed-x")?,
                gamma_0: nonneg(c.gamma0.unwrap_or(DEFAULT_GAMMA0), "gamma0")? * scale,
            });
        } else if c.gamma0.is_some() {
            return Err(CliError::Config("--gamma0 only applies with --fixed-x".into()));
        }
        if specs.len() > 1 {
            return Err(CliError::Config("give exactly one spectral configuration".into()));
        }
        let spectrum = specs.pop();
        let density = match &spectrum {
            Some(Spectrum::Flat { level }) => Some(SpectralDensity::flat(*level).map_err(cfg_err)?),
            Some(Spectrum::Lorentzian {
                gamma_l,
                lambda,
                omega_c,
            }) => Some(SpectralDensity::lorentzian(*gamma_l, *lambda, *omega_c).map_err(cfg_err)?),
            Some(Spectrum::Tabulated { .. }) => tab_density,
            _ => None,
        };

        let (temperature, n_fd) = match (c.temp, c.n_fd) {
            (Some(_), Some(_)) => return Err(CliError::Config("give --temp or --n-fd, not both".into())),
            (Some(t), None) => (Some(nonneg(t, "temp")? * scale), None),
            (None, Some(n)) => (None, Some(nonneg(n, "n-fd")?)),
            (None, None) => (Some(0.0), None),
        };

        let mut cfg = RunConfig {
            command: cmd.name().to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            generator: c.generator,
            unit,
            scale,
            delta,
            omega,
            phi,
            omega_l,
            omega_0,
            spectrum,
            temperature,
            n_fd,
            uniform_occupation: c.uniform_occupation.unwrap_or(false),
            include_lamb: c.include_lamb.unwrap_or(true),
            format: c.format.unwrap_or(Format::Json),
            out: c.out.clone(),
            grid_omega_over_delta: None,
            grid_log10_x: None,
            method: None,
            initial: None,
            tmax: None,
            n_times: None,
            log_time: None,
            x: None,
            density,
        };
        match cmd {
            Command::Steady(_) | Command::ShowRates(_) => {
                cfg.single_phi()?;
            }
            Command::Sweep(a) => {
                cfg.format = c.format.unwrap_or(Format::Csv);
                cfg.grid_omega_over_delta = Some(parse_grid(a.grid_omega.as_deref().unwrap_or("0:100:200log"))?);
                cfg.method = Some(a.method.unwrap_or(Method::Analytic));
            }
            Command::Dynamics(a) => {
                cfg.single_phi()?;
                cfg.format = c.format.unwrap_or(Format::Csv);
                cfg.initial = Some(a.initial.unwrap_or(Initial::G));
                cfg.tmax = Some(a.tmax.clone().unwrap_or_else(|| "auto".into()));
                cfg.n_times = Some(a.n_times.unwrap_or(400));
                cfg.log_time = Some(a.log_time.unwrap_or(false));
                if cfg.n_times < Some(2) {
                    return Err(CliError::Config("--n-times must be at least 2".into()));
                }
            }
            Command::FidelityMap(a) => {
                cfg.single_phi()?;
                cfg.format = c.format.unwrap_or(Format::Csv);
                cfg.grid_omega_over_delta = Some(parse_grid(a.grid_omega.as_deref().unwrap_or("0:100:200log"))?);
                cfg.grid_log10_x = Some(parse_grid(a.grid_x.as_deref().unwrap_or("-2:2:81"))?);
            }
            Command::Compensate(a) => {
                cfg.single_phi()?;
                cfg.format = c.format.unwrap_or(Format::Csv);
                cfg.x = Some(nonneg(a.x.ok_or_else(|| CliError::Config("compensate needs --x".into()))?, "x")?);
                cfg.grid_omega_over_delta = Some(parse_grid(a.grid_omega.as_deref().unwrap_or("0:5:100"))?);
            }
        }
        Ok(cfg)
    }

    fn single_phi(&self) -> Result<f64, CliError> {
        match self.phi[..] {
            [p] => Ok(p),
            _ => Err(CliError::Config(format!("`{}` takes a single --phi", self.command))),
        }
    }

    pub fn generator_kind(&self) -> Result<GeneratorKind, CliError> {
        self.generator
            .map(Into::into)
            .ok_or_else(|| CliError::Config(format!("`{}` needs --generator", self.command)))
    }

    pub fn field(&self, omega: f64, phi: f64) -> Result<ControlField, CliError> {
        ControlField::new(self.delta, omega, phi, self.omega_l).map_err(cfg_err)
    }

    pub fn single_field(&self) -> Result<ControlField, CliError> {
        let omega = self
            .omega
            .ok_or_else(|| CliError::Config("give --omega or --omega-over-delta".into()))?;
        self.field(omega, self.phi[0])
    }

    pub fn thermal(&self) -> Result<Thermal, CliError> {
        match (self.temperature, self.n_fd) {
            (_, Some(n)) => Thermal::from_occupation(n, self.omega_0).map_err(cfg_err),
            (Some(t), None) => Thermal::new(t).map_err(cfg_err),
            (None, None) => Ok(Thermal::zero()),
        }
    }

    pub fn options(&self) -> ReservoirOptions {
        ReservoirOptions {
            uniform_occupation: self.uniform_occupation,
            ..Default::default()
        }
    }

    pub fn model(&self) -> Result<ReservoirModel, CliError> {
        let spectrum = self.spectrum.as_ref().ok_or_else(|| {
            CliError::Config(
                "missing spectral configuration: give one of --gamma-fd, --flat-level, --lorentzian-*, --tabulated, --fixed-x"
                    .into(),
            )
        })?;
        if let Spectrum::FixedX { x, gamma_0 } = spectrum {
            let n = thermal_occupation(self.omega_0, &self.thermal()?).map_err(cfg_err)?;
            SidebandRates::from_ratio(*x, *gamma_0, n).map_err(cfg_err)?;
            return Ok(ReservoirModel::FixedRatio {
                x: *x,
                gamma_0: *gamma_0,
                n,
            });
        }
        Ok(ReservoirModel::Spectral {
            density: self.density.clone().expect("density resolved with the spectrum"),
            thermal: self.thermal()?,
            options: self.options(),
        })
    }
}

fn cfg_err(e: reservo_core::Error) -> CliError {
    CliError::Config(e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn angles() {
        for (s, v) in [("pi", PI), ("-pi/2", -PI / 2.0), ("3pi/2", 1.5 * PI), ("2*pi", 2.0 * PI), ("0.25", 0.25)] {
            assert!((parse_angle(s).unwrap() - v).abs() < 1e-15, "{s}");
        }
        assert!(parse_angle("tau").is_err());
        assert_eq!(parse_angles("0,pi").unwrap(), vec![0.0, PI]);
    }

    #[test]
    fn grids() {
        assert_eq!(parse_grid("0:1:3").unwrap(), vec![0.0, 0.5, 1.0]);
        let g = parse_grid("0:100:200log").unwrap();
        assert_eq!(g.len(), 200);
        assert_eq!(g[0], 0.0);
        assert!((g[1] - 0.1).abs() < 1e-15 && (g[199] - 100.0).abs() < 1e-12);
        assert_eq!(parse_grid("1:100:3log").unwrap().len(), 3);
        assert!(parse_grid("1:2").is_err());
        assert!(parse_grid("-1:2:3log").is_err());
    }

    #[test]
    fn config_lines() {
        let e = parse_config_file("a_b = 1 # note\n\n# c\nphi = \"pi\"\n").unwrap();
        assert_eq!(e, vec![("a-b".into(), "1".into()), ("phi".into(), "pi".into())]);
        assert!(parse_config_file("nokey\n").is_err());
        assert!(parse_config_file("config = x\n").is_err());
    }
}
