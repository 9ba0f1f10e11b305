//! Configuration-driven front end shared by the `oscnet` binary and tests.
//!
//! Every command renders a complete document in memory so the binary only
//! decides where to write it. Exit codes: 0 success, 2 configuration error,
//! 3 physics error, 4 failed hard constraint in `check`.

pub mod config;
pub mod format;

use std::fmt::Write as _;

use thiserror::Error;

use crate::diffusion::{
    assemble_diffusion, compare_diffusion, einstein_report, phi_psi_gamma_residuals, slot_label,
    verify_cp_constraints, DiffusionSource, TemperatureBound,
};
use crate::dynamics::drift_matrix;
use crate::entanglement::log_negativity;
use crate::model::{p_index, q_index, validate_model, ViolationKind};
use crate::scenario::{sweep, Simulation};
use config::RunConfig;
use format::{number, sha256_hex, Document};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },

    #[error("invalid config at {path}: {message}")]
    Config { path: String, message: String },

    #[error("invalid model:\n  {}", .0.join("\n  "))]
    InvalidModel(Vec<String>),

    #[error(transparent)]
    Physics(#[from] crate::Error),

    #[error("non-finite value {0} in output")]
    NonFinite(f64),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Read { .. } | CliError::Config { .. } => 2,
            CliError::Physics(e) if e.is_structural() => 2,
            CliError::InvalidModel(_) | CliError::Physics(_) | CliError::NonFinite(_) => 3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Check,
    Diffusion,
    Einstein,
    Evolve,
    Sweep,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Check => "check",
            Command::Diffusion => "diffusion",
            Command::Einstein => "einstein",
            Command::Evolve => "evolve",
            Command::Sweep => "sweep",
        }
    }
}

/// Command-line overrides applied on top of the config file.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Overrides {
    pub tmax: Option<f64>,
    pub dt: Option<f64>,
    pub diffusion_source: DiffusionSource,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub document: String,
    pub exit_code: i32,
}

impl Outcome {
    fn success(document: String) -> Self {
        Self {
            document,
            exit_code: 0,
        }
    }
}

/// The config after overrides; this is what gets hashed.
pub fn effective_config(
    mut config: RunConfig,
    overrides: &Overrides,
) -> Result<RunConfig, CliError> {
    if let Some(t) = overrides.tmax {
        config.grid.tmax = t;
    }
    if let Some(dt) = overrides.dt {
        config.grid.dt = dt;
    }
    config.validate()?;
    Ok(config)
}

pub fn run(
    command: Command,
    config: RunConfig,
    overrides: &Overrides,
) -> Result<Outcome, CliError> {
    let config = effective_config(config, overrides)?;
    let source = overrides.diffusion_source;
    match command {
        Command::Check => run_check(&config, source),
        Command::Diffusion => run_diffusion(&config, source).map(Outcome::success),
        Command::Einstein => run_einstein(&config, source).map(Outcome::success),
        Command::Evolve => run_evolve(&config, source).map(Outcome::success),
        Command::Sweep => run_sweep(&config, source).map(Outcome::success),
    }
}

fn provenance(doc: &mut Document, command: Command, config: &RunConfig, source: DiffusionSource) {
    doc.comment(format!(
        "oscnet {} {}",
        env!("CARGO_PKG_VERSION"),
        command.name()
    ));
    doc.comment(format!(
        "config_sha256: {}",
        sha256_hex(config.canonical().as_bytes())
    ));
    doc.comment(format!("diffusion_source: {source}"));
    let time = if config.is_mode_model() {
        "time in units of hbar/[K]: 1/K when energies are given in units of K"
    } else {
        "time in units of 1/[frequencies]"
    };
    doc.comment(format!(
        "units: hbar = {}, kb = {}; {time}",
        config.units.hbar, config.units.kb
    ));
}

/// Validate the configured model. With `allow_unstable` only stability
/// violations are tolerated; they are then reported per sweep point.
fn validated(config: &RunConfig, allow_unstable: bool) -> Result<Simulation, CliError> {
    let sim = config.simulation(config.equilibrium.zeta)?;
    let report = validate_model(&sim.network, &sim.lindblad, &sim.equilibrium)?;
    let fatal: Vec<String> = report
        .violations
        .iter()
        .filter(|v| !(allow_unstable && v.kind == ViolationKind::Stability))
        .map(|v| v.message.clone())
        .collect();
    if fatal.is_empty() {
        Ok(sim)
    } else {
        Err(CliError::InvalidModel(fatal))
    }
}

fn require_two_modes(config: &RunConfig) -> Result<(), CliError> {
    if config.modes() == 2 {
        return Ok(());
    }
    let path = if config.is_mode_model() {
        "bogoliubov"
    } else {
        "network"
    };
    Err(CliError::Config {
        path: path.into(),
        message: format!(
            "entanglement needs exactly two modes, found {}",
            config.modes()
        ),
    })
}

fn pass(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

/// Constraint, Einstein and balance report. Exit code 4 iff a hard
/// constraint fails; the balance residuals are informational.
pub fn run_check(config: &RunConfig, source: DiffusionSource) -> Result<Outcome, CliError> {
    let sim = validated(config, false)?;
    let (net, lind, eq, units) = (&sim.network, &sim.lindblad, &sim.equilibrium, &sim.units);
    let n = sim.modes();
    let mut doc = Document::default();
    provenance(&mut doc, Command::Check, config, source);

    let drift = drift_matrix(net, lind)?;
    let abscissa = drift.spectral_abscissa();
    doc.line(format!(
        "drift: {} (rightmost eigenvalue re={} im={})",
        if drift.is_hurwitz() {
            "Hurwitz"
        } else {
            "not Hurwitz"
        },
        number(abscissa.re)?,
        number(abscissa.im)?
    ));

    let d = assemble_diffusion(net, lind, eq, units, source)?;
    let report = verify_cp_constraints(&d, lind, units)?;
    doc.line("constraints:");
    for c in &report.checks {
        doc.line(format!(
            "  {} k={} j={} lhs={} rhs={} margin={} {}",
            c.kind.name(),
            c.k + 1,
            c.j + 1,
            number(c.lhs)?,
            number(c.rhs)?,
            number(c.margin)?,
            pass(c.pass)
        ));
    }
    doc.line(format!(
        "  D min eigenvalue {} {}",
        number(report.d_min_eigenvalue)?,
        pass(report.d_psd)
    ));
    doc.line(format!(
        "  D + i(hbar/2)L min eigenvalue {} {}",
        number(report.gram_min_eigenvalue)?,
        pass(report.gram_psd)
    ));

    doc.line("einstein:");
    for k in 0..n {
        let e = einstein_report(net, lind, eq, units, k)?;
        let mut line = format!(
            "  oscillator {} effective_friction={} thermal_argument={} regime={} dpp_over_mkt={}",
            k + 1,
            number(e.effective_friction)?,
            number(e.thermal_argument)?,
            if e.regime { "yes" } else { "no" },
            number(e.dpp_over_mkt)?
        );
        if let Some(r) = e.limit_ratio {
            let _ = write!(line, " limit_ratio={}", number(r)?);
        }
        let _ = write!(
            line,
            " lambda_lower_bound={} min_temperature={}",
            number(e.lambda_lower_bound)?,
            bound(e.min_temperature)?
        );
        doc.line(line);
    }

    doc.line("balance residuals (diagnostic):");
    for k in 0..n {
        for j in k..n {
            let b = phi_psi_gamma_residuals(net, lind, eq, units, k, j)?;
            let res = b
                .residuals
                .iter()
                .map(|&r| number(r))
                .collect::<Result<Vec<_>, _>>()?;
            doc.line(format!(
                "  k={} j={} phi={} psi={} gamma_kj={} gamma_jk={} residuals=[{}]",
                k + 1,
                j + 1,
                number(b.phi)?,
                number(b.psi)?,
                number(b.gamma_kj)?,
                number(b.gamma_jk)?,
                res.join(", ")
            ));
        }
    }

    let ok = report.all_pass();
    doc.line(format!("result: {}", pass(ok)));
    Ok(Outcome {
        document: doc.into_string(),
        exit_code: if ok { 0 } else { 4 },
    })
}

fn bound(b: TemperatureBound) -> Result<String, CliError> {
    Ok(match b {
        TemperatureBound::Unconstrained => "unconstrained".into(),
        TemperatureBound::AtLeast(t) => number(t)?,
        TemperatureBound::Unattainable => "unattainable".into(),
    })
}

/// Closed-form against oracle diffusion, one row per upper-triangle entry.
pub fn run_diffusion(config: &RunConfig, source: DiffusionSource) -> Result<String, CliError> {
    let sim = validated(config, false)?;
    let cmp = compare_diffusion(&sim.network, &sim.lindblad, &sim.equilibrium, &sim.units)?;
    let mut doc = Document::default();
    provenance(&mut doc, Command::Diffusion, config, source);
    doc.line("entry,closed_form,oracle,abs_diff,agrees");
    for e in &cmp.entries {
        doc.row([
            e.label.clone(),
            number(e.closed_form)?,
            number(e.oracle)?,
            number(e.abs_diff)?,
            u8::from(e.agrees).to_string(),
        ]);
    }
    Ok(doc.into_string())
}

pub fn run_einstein(config: &RunConfig, source: DiffusionSource) -> Result<String, CliError> {
    let sim = validated(config, false)?;
    let mut doc = Document::default();
    provenance(&mut doc, Command::Einstein, config, source);
    doc.line("oscillator,effective_friction,thermal_argument,regime,dpp_over_mkt,limit_ratio,lambda_lower_bound,min_temperature");
    for k in 0..sim.modes() {
        let e = einstein_report(&sim.network, &sim.lindblad, &sim.equilibrium, &sim.units, k)?;
        doc.row([
            (k + 1).to_string(),
            number(e.effective_friction)?,
            number(e.thermal_argument)?,
            u8::from(e.regime).to_string(),
            number(e.dpp_over_mkt)?,
            e.limit_ratio
                .map(number)
                .transpose()?
                .unwrap_or_else(|| "none".into()),
            number(e.lambda_lower_bound)?,
            bound(e.min_temperature)?,
        ]);
    }
    Ok(doc.into_string())
}

const EVOLVE_HEADER: &str =
    "t,E,sigma_q1q1,sigma_p1p1,sigma_q1p1,sigma_q2q2,sigma_p2p2,sigma_q2p2,sigma_q1q2,sigma_p1p2";

/// Phase-space index pairs of the covariance columns, matching the header.
fn covariance_columns() -> [(usize, usize); 8] {
    let (q1, p1, q2, p2) = (q_index(0), p_index(0), q_index(1), p_index(1));
    [
        (q1, q1),
        (p1, p1),
        (q1, p1),
        (q2, q2),
        (p2, p2),
        (q2, p2),
        (q1, q2),
        (p1, p2),
    ]
}

pub fn run_evolve(config: &RunConfig, source: DiffusionSource) -> Result<String, CliError> {
    require_two_modes(config)?;
    let initial = config.initial_state()?;
    let sim = validated(config, false)?;
    let traj = sim.trajectory(&initial, &config.grid(), source)?;
    let mut doc = Document::default();
    provenance(&mut doc, Command::Evolve, config, source);
    doc.line(EVOLVE_HEADER);
    for (t, s) in traj.times.iter().zip(&traj.states) {
        let mut cells = vec![number(*t)?, number(log_negativity(s)?)?];
        for (r, c) in covariance_columns() {
            cells.push(number(s.get(r, c))?);
        }
        doc.row(cells);
    }
    Ok(doc.into_string())
}

fn is_instability(e: &crate::Error) -> bool {
    matches!(
        e,
        crate::Error::Unstable { .. }
            | crate::Error::UnstableMode { .. }
            | crate::Error::NotHurwitz { .. }
    )
}

/// One row per ζ in the declared (ascending) order. Points without a stable
/// steady state are reported as `unstable`; a trajectory still entangled at
/// `tmax` has `none` as its sudden-death time.
pub fn run_sweep(config: &RunConfig, source: DiffusionSource) -> Result<String, CliError> {
    require_two_modes(config)?;
    let initial = config.initial_state()?;
    let zetas = match &config.sweep {
        Some(s) => s.values.clone(),
        None => {
            return Err(CliError::Config {
                path: "sweep".into(),
                message: "missing [sweep] block".into(),
            })
        }
    };
    validated(config, true)?;
    let build = |zeta: f64| {
        config.simulation(Some(zeta)).map_err(|e| match e {
            CliError::Physics(e) => e,
            other => crate::Error::InvalidArgument(other.to_string()),
        })
    };
    let rows = sweep(build, &initial, &config.grid(), source, &zetas);

    let mut doc = Document::default();
    provenance(&mut doc, Command::Sweep, config, source);
    doc.line("zeta,t_sudden_death,E_initial,E_max");
    for row in rows {
        match row.outcome {
            Ok(stats) => doc.row([
                number(row.zeta)?,
                stats
                    .t_sudden_death
                    .map(number)
                    .transpose()?
                    .unwrap_or_else(|| "none".into()),
                number(stats.e_initial)?,
                number(stats.e_max)?,
            ]),
            Err(e) if is_instability(&e) => doc.row([
                number(row.zeta)?,
                "unstable".into(),
                "unstable".into(),
                "unstable".into(),
            ]),
            Err(e) => return Err(e.into()),
        }
    }
    Ok(doc.into_string())
}

/// Row labels of the covariance columns, e.g. `sigma_q1p1`.
pub fn covariance_column_labels() -> Vec<String> {
    covariance_columns()
        .iter()
        .map(|&(r, c)| format!("sigma_{}{}", slot_label(r), slot_label(c)))
        .collect()
}
