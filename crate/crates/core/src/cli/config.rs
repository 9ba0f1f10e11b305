//! TOML run configuration.
//!
//! Exactly one of `[network]` or `[bogoliubov]` describes the system.
//! Matrices are row-major nested arrays. A minimal mode-model file:
//!
//! ```toml
//! [bogoliubov]
//! k_re = [[1.0, 0.2], [0.2, 1.0]]
//! delta_re = [[0.0, 0.05], [0.05, 0.0]]
//! delta_im = [[0.05, 0.0], [0.0, 0.05]]
//!
//! [lindblad]
//! lambda = [[0.15, 0.0], [0.0, 0.15]]
//!
//! [equilibrium]
//! temperature = 0.5
//! zeta = 0.1
//!
//! [initial]
//! kind = "squeezed_thermal"
//! n1 = 1.0
//! n2 = 1.0
//! r = 0.6
//! ```

use std::path::Path;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::CliError;
use crate::bogoliubov::BogoliubovModel;
use crate::entanglement::SqueezedThermalSpec;
use crate::model::{EquilibriumSpec, LindbladSpec, OscillatorNetwork, UnitSystem};
use crate::scenario::{InitialState, Simulation, TimeGrid};

pub const DEFAULT_TMAX: f64 = 50.0;
pub const DEFAULT_DT: f64 = 0.05;

type Rows = Vec<Vec<f64>>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UnitsConfig {
    #[serde(default = "one")]
    pub hbar: f64,
    #[serde(default = "one")]
    pub kb: f64,
}

fn one() -> f64 {
    1.0
}

impl Default for UnitsConfig {
    fn default() -> Self {
        Self { hbar: 1.0, kb: 1.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetworkConfig {
    pub masses: Vec<f64>,
    pub frequencies: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<Rows>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nu: Option<Rows>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kappa: Option<Rows>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BogoliubovConfig {
    pub k_re: Rows,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_im: Option<Rows>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta_re: Option<Rows>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta_im: Option<Rows>,
    /// Diagonal of Δ̃, real and imaginary parts.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta_tilde_re: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta_tilde_im: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LindbladConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Rows>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Rows>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eta: Option<Rows>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EquilibriumConfig {
    pub temperature: f64,
    /// Network block only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu_tilde: Option<Vec<f64>>,
    /// Sets `Im Δ̃_ℓℓ = ζ` (equivalently `μ̃_kk = ζ/ħ`) for every mode.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zeta: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum InitialConfig {
    SqueezedThermal { n1: f64, n2: f64, r: f64 },
    SteadyState,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    #[serde(default = "default_tmax")]
    pub tmax: f64,
    #[serde(default = "default_dt")]
    pub dt: f64,
}

fn default_tmax() -> f64 {
    DEFAULT_TMAX
}

fn default_dt() -> f64 {
    DEFAULT_DT
}

impl Default for GridConfig {
    fn default() -> Self {
        Self {
            tmax: DEFAULT_TMAX,
            dt: DEFAULT_DT,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    /// Only `"zeta"` is supported.
    pub parameter: String,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub units: UnitsConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub network: Option<NetworkConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bogoliubov: Option<BogoliubovConfig>,
    #[serde(default)]
    pub lindblad: LindbladConfig,
    pub equilibrium: EquilibriumConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial: Option<InitialConfig>,
    #[serde(default)]
    pub grid: GridConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepConfig>,
}

fn invalid(path: &str, message: impl Into<String>) -> CliError {
    CliError::Config {
        path: path.to_string(),
        message: message.into(),
    }
}

fn matrix(path: &str, rows: &Rows, n: usize) -> Result<DMatrix<f64>, CliError> {
    if rows.len() != n {
        return Err(invalid(
            path,
            format!("expected {n} rows, found {}", rows.len()),
        ));
    }
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(invalid(
                &format!("{path}[{i}]"),
                format!("expected {n} entries, found {}", row.len()),
            ));
        }
        if let Some(x) = row.iter().find(|x| !x.is_finite()) {
            return Err(invalid(
                &format!("{path}[{i}]"),
                format!("non-finite entry {x}"),
            ));
        }
    }
    Ok(DMatrix::from_fn(n, n, |r, c| rows[r][c]))
}

fn optional_matrix(path: &str, rows: &Option<Rows>, n: usize) -> Result<DMatrix<f64>, CliError> {
    match rows {
        Some(r) => matrix(path, r, n),
        None => Ok(DMatrix::zeros(n, n)),
    }
}

fn vector(path: &str, v: &[f64], n: usize) -> Result<Vec<f64>, CliError> {
    if v.len() != n {
        return Err(invalid(
            path,
            format!("expected {n} entries, found {}", v.len()),
        ));
    }
    if let Some(x) = v.iter().find(|x| !x.is_finite()) {
        return Err(invalid(path, format!("non-finite entry {x}")));
    }
    Ok(v.to_vec())
}

fn finite(path: &str, x: f64) -> Result<f64, CliError> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(invalid(path, format!("non-finite value {x}")))
    }
}

/// Library errors raised while building the model from one block: malformed
/// input becomes a config error at `path`, physics errors pass through.
fn at(path: &'static str) -> impl Fn(crate::Error) -> CliError {
    move |e| {
        if e.is_structural() {
            invalid(path, e.to_string())
        } else {
            CliError::Physics(e)
        }
    }
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let config: RunConfig = toml::from_str(text).map_err(|e| CliError::Config {
            path: "<config>".into(),
            message: e.to_string().trim_end().to_string(),
        })?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text)
    }

    /// Canonical TOML rendering; two configs with equal contents hash alike
    /// regardless of key order or comments in the source file.
    pub fn canonical(&self) -> String {
        toml::to_string(self).expect("run configuration serializes")
    }

    pub fn modes(&self) -> usize {
        match (&self.network, &self.bogoliubov) {
            (Some(n), _) => n.masses.len(),
            (_, Some(b)) => b.k_re.len(),
            _ => 0,
        }
    }

    pub fn is_mode_model(&self) -> bool {
        self.bogoliubov.is_some()
    }

    /// Structural checks; building the model catches the rest.
    pub fn validate(&self) -> Result<(), CliError> {
        match (&self.network, &self.bogoliubov) {
            (Some(_), Some(_)) => {
                return Err(invalid(
                    "<config>",
                    "both [network] and [bogoliubov] given; use one",
                ))
            }
            (None, None) => {
                return Err(invalid(
                    "<config>",
                    "missing system block: [network] or [bogoliubov]",
                ))
            }
            _ => {}
        }
        if self.modes() == 0 {
            let path = if self.network.is_some() {
                "network.masses"
            } else {
                "bogoliubov.k_re"
            };
            return Err(invalid(path, "at least one oscillator is required"));
        }
        finite("units.hbar", self.units.hbar)?;
        finite("units.kb", self.units.kb)?;
        UnitSystem::new(self.units.hbar, self.units.kb).map_err(at("units"))?;
        finite("equilibrium.temperature", self.equilibrium.temperature)?;
        if let Some(z) = self.equilibrium.zeta {
            finite("equilibrium.zeta", z)?;
        }
        if self.equilibrium.zeta.is_some() && self.equilibrium.mu_tilde.is_some() {
            return Err(invalid(
                "equilibrium",
                "give either mu_tilde or zeta, not both",
            ));
        }
        if let Some(b) = &self.bogoliubov {
            if self.equilibrium.mu_tilde.is_some() {
                return Err(invalid(
                    "equilibrium.mu_tilde",
                    "not used with [bogoliubov]; set equilibrium.zeta or bogoliubov.delta_tilde_im",
                ));
            }
            if self.equilibrium.zeta.is_some()
                && (b.delta_tilde_re.is_some() || b.delta_tilde_im.is_some())
            {
                return Err(invalid(
                    "equilibrium.zeta",
                    "conflicts with bogoliubov.delta_tilde_*",
                ));
            }
        }
        TimeGrid::new(
            finite("grid.tmax", self.grid.tmax)?,
            finite("grid.dt", self.grid.dt)?,
        )
        .map_err(|e| invalid("grid", e.to_string()))?;
        if let Some(InitialConfig::SqueezedThermal { n1, n2, r }) = &self.initial {
            SqueezedThermalSpec::new(*n1, *n2, *r)
                .map_err(|e| invalid("initial", e.to_string()))?;
        }
        if let Some(s) = &self.sweep {
            if s.parameter != "zeta" {
                return Err(invalid(
                    "sweep.parameter",
                    format!("unsupported parameter '{}'; only 'zeta'", s.parameter),
                ));
            }
            if s.values.is_empty() {
                return Err(invalid("sweep.values", "empty"));
            }
            for (i, v) in s.values.iter().enumerate() {
                finite(&format!("sweep.values[{i}]"), *v)?;
            }
            if s.values.windows(2).any(|w| w[0] >= w[1]) {
                return Err(invalid("sweep.values", "must be strictly ascending"));
            }
        }
        // matrix shapes are checked here so that every later failure is physics
        self.simulation(self.equilibrium.zeta)
            .map(|_| ())
            .or_else(|e| match e {
                CliError::Physics(_) => Ok(()),
                other => Err(other),
            })
    }

    pub fn units(&self) -> UnitSystem {
        UnitSystem::new(self.units.hbar, self.units.kb).expect("validated at load")
    }

    pub fn grid(&self) -> TimeGrid {
        TimeGrid::new(self.grid.tmax, self.grid.dt).expect("validated at load")
    }

    pub fn initial_state(&self) -> Result<InitialState, CliError> {
        match &self.initial {
            Some(InitialConfig::SqueezedThermal { n1, n2, r }) => {
                Ok(InitialState::SqueezedThermal(
                    SqueezedThermalSpec::new(*n1, *n2, *r)
                        .map_err(|e| invalid("initial", e.to_string()))?,
                ))
            }
            Some(InitialConfig::SteadyState) => Ok(InitialState::Steady),
            None => Err(invalid("initial", "missing [initial] block")),
        }
    }

    fn lindblad(&self, n: usize) -> Result<LindbladSpec, CliError> {
        let l = &self.lindblad;
        LindbladSpec::new(
            optional_matrix("lindblad.lambda", &l.lambda, n)?,
            optional_matrix("lindblad.alpha", &l.alpha, n)?,
            optional_matrix("lindblad.eta", &l.eta, n)?,
        )
        .map_err(at("lindblad"))
    }

    /// The configured system with its steady-state coupling set to `zeta`
    /// (or as configured when `None`).
    pub fn simulation(&self, zeta: Option<f64>) -> Result<Simulation, CliError> {
        let n = self.modes();
        let units = self.units();
        let lindblad = self.lindblad(n)?;
        let temperature = self.equilibrium.temperature;
        if let Some(net) = &self.network {
            let network = OscillatorNetwork::new(
                vector("network.masses", &net.masses, n)?,
                vector("network.frequencies", &net.frequencies, n)?,
                optional_matrix("network.mu", &net.mu, n)?,
                optional_matrix("network.nu", &net.nu, n)?,
                optional_matrix("network.kappa", &net.kappa, n)?,
            )
            .map_err(at("network"))?;
            let mu_tilde = match (zeta, &self.equilibrium.mu_tilde) {
                (Some(z), _) => vec![z / units.hbar; n],
                (None, Some(mt)) => vector("equilibrium.mu_tilde", mt, n)?,
                (None, None) => vec![0.0; n],
            };
            let equilibrium =
                EquilibriumSpec::new(mu_tilde, temperature).map_err(at("equilibrium"))?;
            return Ok(Simulation {
                network,
                lindblad,
                equilibrium,
                units,
            });
        }

        let b = self
            .bogoliubov
            .as_ref()
            .expect("validated: one system block");
        let complex = |re: &DMatrix<f64>, im: &DMatrix<f64>| re.zip_map(im, Complex64::new);
        let k = complex(
            &matrix("bogoliubov.k_re", &b.k_re, n)?,
            &optional_matrix("bogoliubov.k_im", &b.k_im, n)?,
        );
        let delta = complex(
            &optional_matrix("bogoliubov.delta_re", &b.delta_re, n)?,
            &optional_matrix("bogoliubov.delta_im", &b.delta_im, n)?,
        );
        let delta_tilde = match zeta {
            Some(z) => vec![Complex64::new(0.0, z); n],
            None => {
                let re = match &b.delta_tilde_re {
                    Some(v) => vector("bogoliubov.delta_tilde_re", v, n)?,
                    None => vec![0.0; n],
                };
                let im = match &b.delta_tilde_im {
                    Some(v) => vector("bogoliubov.delta_tilde_im", v, n)?,
                    None => vec![0.0; n],
                };
                re.into_iter()
                    .zip(im)
                    .map(|(r, i)| Complex64::new(r, i))
                    .collect()
            }
        };
        let model = BogoliubovModel::new(k, delta, delta_tilde).map_err(at("bogoliubov"))?;
        Simulation::from_bogoliubov(&model, lindblad, temperature, units).map_err(at("bogoliubov"))
    }
}
