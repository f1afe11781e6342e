//! Config-file schema for the `stefan` CLI: a single TOML document with
//! `problem`, `coefficients`, `numerics`, `command` and `output` blocks.
//!
//! Parsing is strict (unknown keys are rejected) and every validation error
//! names the offending key path, e.g. `problem.bc`.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::coefficients::{
    build_family, CoefficientRole, FamilySpec, PeriodicCoefficient, RobinBc, Structure, TimeFn,
};
use crate::dichotomy::ProblemSetup;
use crate::error::{Error, Result};

/// Fully parsed run configuration; serialized back into every JSON summary
/// for provenance.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub problem: ProblemConfig,
    pub coefficients: CoefficientsConfig,
    #[serde(default)]
    pub numerics: NumericsConfig,
    pub command: CommandConfig,
    #[serde(default)]
    pub output: OutputConfig,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemConfig {
    pub d: f64,
    #[serde(default = "one")]
    pub mu: f64,
    pub h0: f64,
    pub bc: BcConfig,
    #[serde(rename = "T")]
    pub period: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BcConfig {
    pub alpha: f64,
    pub beta: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoefficientsConfig {
    pub a: FamilyConfig,
    pub b: FamilyConfig,
}

/// Family descriptor: `kind`, optional per-coefficient `T` (must equal the
/// problem period when given) and a flat map of named scalar parameters.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyConfig {
    pub kind: String,
    #[serde(rename = "T", default, skip_serializing_if = "Option::is_none")]
    pub period: Option<f64>,
    #[serde(default)]
    pub params: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NumericsConfig {
    #[serde(default = "default_ny")]
    pub ny: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nx: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dt: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_end: Option<f64>,
    #[serde(default = "default_kappa")]
    pub kappa: f64,
    #[serde(default)]
    pub tolerances: TolerancesConfig,
}

impl Default for NumericsConfig {
    fn default() -> Self {
        Self {
            ny: default_ny(),
            nx: None,
            dt: None,
            t_end: None,
            kappa: default_kappa(),
            tolerances: TolerancesConfig::default(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TolerancesConfig {
    #[serde(default = "default_tol_eig")]
    pub tol_eig: f64,
    #[serde(default = "default_tol_mu")]
    pub tol_mu: f64,
    #[serde(default = "default_tol_k")]
    pub tol_k: f64,
    #[serde(default = "default_tol_front")]
    pub tol_front: f64,
    #[serde(default = "default_tol_density")]
    pub tol_density: f64,
}

impl Default for TolerancesConfig {
    fn default() -> Self {
        Self {
            tol_eig: default_tol_eig(),
            tol_mu: default_tol_mu(),
            tol_k: default_tol_k(),
            tol_front: default_tol_front(),
            tol_density: default_tol_density(),
        }
    }
}

/// The subcommand and its parameters, selected by `name`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum CommandConfig {
    Simulate {},
    Eigen {
        ell: f64,
    },
    Hstar {
        #[serde(default = "default_bracket")]
        bracket: [f64; 2],
    },
    Classify {
        #[serde(default = "default_budget")]
        budget_periods: usize,
    },
    CriticalMu {
        #[serde(default = "default_mu_lo")]
        mu_lo: f64,
        #[serde(default = "default_mu_hi")]
        mu_hi: f64,
        #[serde(default = "default_budget")]
        budget_periods: usize,
    },
    SweepD {
        d_grid: Vec<f64>,
        #[serde(default)]
        mu_samples: Vec<f64>,
        #[serde(default = "default_budget")]
        budget_periods: usize,
    },
    Speed {
        #[serde(default)]
        empirical: bool,
        #[serde(default = "default_window")]
        window_fraction: f64,
    },
}

impl CommandConfig {
    pub fn name(&self) -> &'static str {
        match self {
            CommandConfig::Simulate {} => "simulate",
            CommandConfig::Eigen { .. } => "eigen",
            CommandConfig::Hstar { .. } => "hstar",
            CommandConfig::Classify { .. } => "classify",
            CommandConfig::CriticalMu { .. } => "critical-mu",
            CommandConfig::SweepD { .. } => "sweep-d",
            CommandConfig::Speed { .. } => "speed",
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    #[serde(default = "default_out_dir")]
    pub dir: String,
    /// Monitor rows are written every `cadence` accepted steps.
    #[serde(default = "default_cadence")]
    pub cadence: usize,
    /// Also emit space-time fields (eigenfunction, semi-wave profile) as CSV.
    #[serde(default)]
    pub fields: bool,
}

impl Default for OutputConfig {
    fn default() -> Self {
        Self {
            dir: default_out_dir(),
            cadence: default_cadence(),
            fields: false,
        }
    }
}

fn one() -> f64 {
    1.0
}
fn default_ny() -> usize {
    256
}
fn default_kappa() -> f64 {
    0.5
}
fn default_tol_eig() -> f64 {
    1e-8
}
fn default_tol_mu() -> f64 {
    0.01
}
fn default_tol_k() -> f64 {
    1e-6
}
fn default_tol_front() -> f64 {
    1e-6
}
fn default_tol_density() -> f64 {
    1e-6
}
fn default_bracket() -> [f64; 2] {
    [0.05, 64.0]
}
fn default_budget() -> usize {
    200
}
fn default_mu_lo() -> f64 {
    0.125
}
fn default_mu_hi() -> f64 {
    8.0
}
fn default_window() -> f64 {
    0.5
}
fn default_out_dir() -> String {
    "out".into()
}
fn default_cadence() -> usize {
    10
}

impl RunConfig {
    /// Parses and validates a TOML document.
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: RunConfig = toml::from_str(text)
            .map_err(|e| Error::config("<document>", e.message().to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let p = &self.problem;
        require(p.d > 0.0, "problem.d", "diffusion rate must be positive")?;
        require(p.mu >= 0.0, "problem.mu", "mu must be non-negative")?;
        require(p.h0 > 0.0, "problem.h0", "initial habitat must be positive")?;
        require(p.period > 0.0, "problem.T", "period must be positive")?;
        self.bc()?;
        for (path, fam) in [
            ("coefficients.a", &self.coefficients.a),
            ("coefficients.b", &self.coefficients.b),
        ] {
            if let Some(t) = fam.period {
                require(
                    t == p.period,
                    &format!("{path}.T"),
                    &format!("coefficient period {t} differs from problem.T = {}", p.period),
                )?;
            }
        }
        let n = &self.numerics;
        require(n.ny >= 16, "numerics.ny", "need at least 16 grid cells")?;
        if let Some(nx) = n.nx {
            require(nx >= 64, "numerics.nx", "need at least 64 grid cells")?;
        }
        if let Some(dt) = n.dt {
            require(dt > 0.0, "numerics.dt", "time step must be positive")?;
        }
        if let Some(t_end) = n.t_end {
            require(t_end >= 0.0, "numerics.t_end", "t_end must be non-negative")?;
        }
        require(n.kappa > 0.0, "numerics.kappa", "kappa must be positive")?;
        let tol = &n.tolerances;
        for (path, v) in [
            ("numerics.tolerances.tol_eig", tol.tol_eig),
            ("numerics.tolerances.tol_mu", tol.tol_mu),
            ("numerics.tolerances.tol_k", tol.tol_k),
            ("numerics.tolerances.tol_front", tol.tol_front),
            ("numerics.tolerances.tol_density", tol.tol_density),
        ] {
            require(v > 0.0, path, "tolerance must be positive")?;
        }
        require(
            self.output.cadence >= 1,
            "output.cadence",
            "cadence must be at least 1",
        )?;
        match &self.command {
            CommandConfig::Simulate {} => {}
            CommandConfig::Eigen { ell } => {
                require(*ell > 0.0, "command.ell", "domain length must be positive")?;
            }
            CommandConfig::Hstar { bracket } => {
                require(
                    0.0 < bracket[0] && bracket[0] < bracket[1],
                    "command.bracket",
                    "need 0 < lo < hi",
                )?;
            }
            CommandConfig::Classify { budget_periods }
            | CommandConfig::SweepD { budget_periods, .. } => {
                require(
                    *budget_periods >= 1,
                    "command.budget_periods",
                    "budget must be at least one period",
                )?;
            }
            CommandConfig::CriticalMu {
                mu_lo,
                mu_hi,
                budget_periods,
            } => {
                require(
                    0.0 < *mu_lo && mu_lo < mu_hi,
                    "command.mu_lo",
                    "need 0 < mu_lo < mu_hi",
                )?;
                require(
                    *budget_periods >= 1,
                    "command.budget_periods",
                    "budget must be at least one period",
                )?;
            }
            CommandConfig::Speed {
                window_fraction, ..
            } => {
                require(
                    0.0 < *window_fraction && *window_fraction <= 1.0,
                    "command.window_fraction",
                    "window fraction must be in (0, 1]",
                )?;
            }
        }
        if let CommandConfig::SweepD { d_grid, mu_samples, .. } = &self.command {
            require(!d_grid.is_empty(), "command.d_grid", "d grid must be non-empty")?;
            require(
                d_grid.iter().all(|&d| d > 0.0),
                "command.d_grid",
                "all d values must be positive",
            )?;
            require(
                mu_samples.iter().all(|&m| m > 0.0),
                "command.mu_samples",
                "all mu samples must be positive",
            )?;
        }
        Ok(())
    }

    /// Left boundary condition, validated (`alpha + beta = 1`).
    pub fn bc(&self) -> Result<RobinBc<f64>> {
        RobinBc::new(self.problem.bc.alpha, self.problem.bc.beta)
            .map_err(|e| Error::config("problem.bc", e.to_string()))
    }

    /// Builds the growth-rate coefficient `a`.
    pub fn coefficient_a(&self) -> Result<PeriodicCoefficient<f64>> {
        build_coefficient(
            &self.coefficients.a,
            self.problem.period,
            CoefficientRole::Growth,
            "coefficients.a",
        )
    }

    /// Builds the self-limitation coefficient `b`.
    pub fn coefficient_b(&self) -> Result<PeriodicCoefficient<f64>> {
        build_coefficient(
            &self.coefficients.b,
            self.problem.period,
            CoefficientRole::SelfLimitation,
            "coefficients.b",
        )
    }

    /// Time step used by the free-boundary march (default `T/200`).
    pub fn dt(&self) -> f64 {
        self.numerics.dt.unwrap_or(self.problem.period / 200.0)
    }

    /// Final time for `simulate` (default `200 T`).
    pub fn t_end(&self) -> f64 {
        self.numerics.t_end.unwrap_or(200.0 * self.problem.period)
    }

    /// Problem setup shared by `classify`, `critical-mu` and `sweep-d`.
    pub fn problem_setup(&self) -> Result<ProblemSetup<f64>> {
        Ok(ProblemSetup {
            d: self.problem.d,
            h0: self.problem.h0,
            bc: self.bc()?,
            a: self.coefficient_a()?,
            b: self.coefficient_b()?,
            kappa: self.numerics.kappa,
            ny: self.numerics.ny,
            dt: self.dt(),
        })
    }

    /// Time-only closures `(p, q)` for the semi-wave problem.  The speed
    /// characterization assumes spatially homogeneous far-field rates, so
    /// only `constant` and `time-only` families are accepted here.
    pub fn speed_rates(&self) -> Result<(TimeFn<f64>, TimeFn<f64>)> {
        let a = self.coefficient_a()?;
        let b = self.coefficient_b()?;
        for (path, c) in [("coefficients.a", &a), ("coefficients.b", &b)] {
            match c.structure() {
                Structure::Constant | Structure::TimeOnly => {}
                _ => {
                    return Err(Error::config(
                        path,
                        "the speed command needs a constant or time-only family",
                    ))
                }
            }
        }
        let p: TimeFn<f64> = Arc::new(move |t| a.eval(t, 0.0));
        let q: TimeFn<f64> = Arc::new(move |t| b.eval(t, 0.0));
        Ok((p, q))
    }
}

fn require(ok: bool, path: &str, message: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::config(path, message))
    }
}

fn param(fam: &FamilyConfig, path: &str, key: &str) -> Result<f64> {
    fam.params
        .get(key)
        .copied()
        .ok_or_else(|| Error::config(format!("{path}.params.{key}"), "missing parameter"))
}

fn param_or(fam: &FamilyConfig, key: &str, default: f64) -> f64 {
    fam.params.get(key).copied().unwrap_or(default)
}

/// Maps a family descriptor onto a [`FamilySpec`] and builds the coefficient.
pub fn build_coefficient(
    fam: &FamilyConfig,
    period: f64,
    role: CoefficientRole,
    path: &str,
) -> Result<PeriodicCoefficient<f64>> {
    let known: &[&str] = match fam.kind.as_str() {
        "constant" => &["value"],
        "time-only" => &["base", "amplitude"],
        "separable" => &["m_base", "m_amplitude", "scale", "rho", "eps0"],
        "banded" => &[
            "varsigma",
            "gamma",
            "rho",
            "k",
            "x0",
            "spacing",
            "n_bands",
            "eps0",
            "m_base",
            "m_amplitude",
        ],
        other => {
            return Err(Error::config(
                format!("{path}.kind"),
                format!("unknown family kind `{other}` (expected constant | time-only | separable | banded)"),
            ))
        }
    };
    if let Some(unknown) = fam.params.keys().find(|k| !known.contains(&k.as_str())) {
        return Err(Error::config(
            format!("{path}.params.{unknown}"),
            format!("unknown parameter for family kind `{}`", fam.kind),
        ));
    }
    let spec = match fam.kind.as_str() {
        "constant" => FamilySpec::Constant {
            value: param(fam, path, "value")?,
        },
        "time-only" => FamilySpec::TimeOnly {
            base: param(fam, path, "base")?,
            amplitude: param_or(fam, "amplitude", 0.0),
        },
        "separable" => FamilySpec::Separable {
            m_base: param_or(fam, "m_base", 1.0),
            m_amplitude: param_or(fam, "m_amplitude", 0.0),
            scale: param(fam, path, "scale")?,
            rho: param(fam, path, "rho")?,
            eps0: param_or(fam, "eps0", 1e-3),
        },
        "banded" => FamilySpec::Banded {
            varsigma: param(fam, path, "varsigma")?,
            gamma: param(fam, path, "gamma")?,
            rho: param(fam, path, "rho")?,
            k: param(fam, path, "k")?,
            x0: param(fam, path, "x0")?,
            spacing: param(fam, path, "spacing")?,
            n_bands: param_or(fam, "n_bands", 8.0) as usize,
            eps0: param_or(fam, "eps0", 1e-3),
            m_base: param_or(fam, "m_base", 1.0),
            m_amplitude: param_or(fam, "m_amplitude", 0.0),
        },
        _ => unreachable!(),
    };
    build_family(&spec, period, role).map_err(|e| Error::config(path, e.to_string()))
}
