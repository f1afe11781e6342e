//! `stefan` — config-driven CLI for the free-boundary diffusive logistic
//! equation: simulation, periodic principal eigenvalues, critical lengths,
//! spreading-vanishing classification, threshold search and spreading speed.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use stefan_logistic::config::{CommandConfig, RunConfig};
use stefan_logistic::output::{atomic_write, field_csv, monitors_csv, orbit_csv, write_json};
use stefan_logistic::{
    classify, classify_d, criteria_in_d, critical_mu, empirical_speed, find_hstar, simulate,
    solve_semiwave, ClassifyOptions, CriticalMu, CriticalMuOptions, DRow, EigenOptions,
    EigenProblem, Error, Evidence, HstarOptions, Result, SemiWaveProblem, SigmaMembership,
    SolveParams, SpeedOptions, Trajectory, Verdict,
};

#[derive(Parser)]
#[command(
    name = "stefan",
    about = "Free-boundary diffusive logistic equation in a time-periodic environment",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// March the free boundary problem and stream monitor rows to CSV.
    Simulate(Common),
    /// Principal periodic eigenvalue on a fixed interval.
    Eigen(Common),
    /// Critical habitat length h* (root of the eigenvalue in the length).
    Hstar(Common),
    /// Decide spreading vs vanishing for the configured problem.
    Classify(Common),
    /// Bisect the moving parameter to a verified threshold bracket.
    CriticalMu(Common),
    /// Eigenvalue sign and observed verdicts across a diffusion grid.
    SweepD(Common),
    /// Periodic semi-wave speed and the empirical front slope.
    Speed(Common),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Simulate(_) => "simulate",
            Command::Eigen(_) => "eigen",
            Command::Hstar(_) => "hstar",
            Command::Classify(_) => "classify",
            Command::CriticalMu(_) => "critical-mu",
            Command::SweepD(_) => "sweep-d",
            Command::Speed(_) => "speed",
        }
    }

    fn common(&self) -> &Common {
        match self {
            Command::Simulate(c)
            | Command::Eigen(c)
            | Command::Hstar(c)
            | Command::Classify(c)
            | Command::CriticalMu(c)
            | Command::SweepD(c)
            | Command::Speed(c) => c,
        }
    }
}

#[derive(Args)]
struct Common {
    /// TOML run configuration.
    #[arg(long)]
    config: PathBuf,
    /// Output directory (overrides `output.dir` from the config).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads for parameter sweeps (default: all cores).
    #[arg(long)]
    workers: Option<usize>,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter("STEFAN_LOG")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::NoConvergence { .. } => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}

fn run(cli: &Cli) -> Result<u8> {
    let common = cli.command.common();
    let text = std::fs::read_to_string(&common.config)?;
    let cfg = RunConfig::from_toml(&text)?;
    if cfg.command.name() != cli.command.name() {
        return Err(Error::config(
            "command.name",
            format!(
                "config declares `{}` but the `{}` subcommand was invoked",
                cfg.command.name(),
                cli.command.name()
            ),
        ));
    }
    if let Some(n) = common.workers {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Error::config("--workers", e.to_string()))?;
    }
    let out_dir = common
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from(&cfg.output.dir));

    match cfg.command.clone() {
        CommandConfig::Simulate {} => run_simulate(&cfg, &out_dir),
        CommandConfig::Eigen { ell } => run_eigen(&cfg, &out_dir, ell),
        CommandConfig::Hstar { bracket } => run_hstar(&cfg, &out_dir, bracket),
        CommandConfig::Classify { budget_periods } => {
            run_classify(&cfg, &out_dir, budget_periods)
        }
        CommandConfig::CriticalMu {
            mu_lo,
            mu_hi,
            budget_periods,
        } => run_critical_mu(&cfg, &out_dir, mu_lo, mu_hi, budget_periods),
        CommandConfig::SweepD {
            d_grid,
            mu_samples,
            budget_periods,
        } => run_sweep_d(&cfg, &out_dir, &d_grid, &mu_samples, budget_periods),
        CommandConfig::Speed {
            empirical,
            window_fraction,
        } => run_speed(&cfg, &out_dir, empirical, window_fraction),
    }
}

fn verdict_str(v: Verdict) -> &'static str {
    match v {
        Verdict::Spreading => "Spreading",
        Verdict::Vanishing => "Vanishing",
        Verdict::Undecided => "Undecided",
    }
}

fn evidence_str(e: Evidence) -> &'static str {
    match e {
        Evidence::EigenNegativeAtCurrentFront => "eigen-negative-at-current-front",
        Evidence::FrontStalledAndDensityDecayed => "front-stalled-and-density-decayed",
        Evidence::BudgetExhausted => "budget-exhausted",
    }
}

fn solve_params_from(cfg: &RunConfig) -> Result<SolveParams<f64>> {
    SolveParams::new(
        cfg.problem.d,
        cfg.problem.mu,
        cfg.problem.h0,
        cfg.bc()?,
        cfg.coefficient_a()?,
        cfg.coefficient_b()?,
        stefan_logistic::default_u0(cfg.bc()?, cfg.numerics.kappa, cfg.numerics.ny),
        cfg.numerics.ny,
        cfg.dt(),
        cfg.t_end(),
        cfg.output.cadence,
    )
}

fn classify_options(cfg: &RunConfig, budget_periods: usize) -> ClassifyOptions<f64> {
    let tol = &cfg.numerics.tolerances;
    let mut opts = ClassifyOptions::<f64>::default();
    opts.budget_periods = budget_periods;
    opts.tol_front = tol.tol_front;
    opts.tol_density = tol.tol_density;
    opts.hstar.eigen.tol = tol.tol_eig;
    opts
}

fn write_monitors(out_dir: &Path, traj: &Trajectory<f64>) -> Result<()> {
    atomic_write(
        &out_dir.join("monitors.csv"),
        monitors_csv(&traj.monitors).as_bytes(),
    )
}

#[derive(Serialize)]
struct SimulateSummary<'a> {
    t_final: f64,
    h_final: f64,
    hprime_final: f64,
    umax_final: f64,
    classification: Option<&'static str>,
    config: &'a RunConfig,
}

fn run_simulate(cfg: &RunConfig, out_dir: &Path) -> Result<u8> {
    let params = solve_params_from(cfg)?;
    let traj = simulate(params)?;
    write_monitors(out_dir, &traj)?;
    let s = &traj.final_state;
    write_json(
        &out_dir.join("summary.json"),
        &SimulateSummary {
            t_final: s.t,
            h_final: s.h,
            hprime_final: s.hprime,
            umax_final: s.umax(),
            classification: None,
            config: cfg,
        },
    )?;
    Ok(0)
}

#[derive(Serialize)]
struct EigenSummary<'a> {
    lambda1: f64,
    r: f64,
    iterations: usize,
    residual: f64,
    config: &'a RunConfig,
}

fn run_eigen(cfg: &RunConfig, out_dir: &Path, ell: f64) -> Result<u8> {
    let prob = match cfg.numerics.nx {
        Some(nx) => EigenProblem::with_grid(
            cfg.problem.d,
            cfg.coefficient_a()?,
            ell,
            cfg.bc()?,
            nx,
            cfg.numerics.dt.unwrap_or(cfg.problem.period / 200.0),
        )?,
        None => EigenProblem::new(cfg.problem.d, cfg.coefficient_a()?, ell, cfg.bc()?)?,
    };
    let opts = EigenOptions {
        tol: cfg.numerics.tolerances.tol_eig,
        record: cfg.output.fields,
        ..Default::default()
    };
    let res = stefan_logistic::principal_eigenvalue(&prob, &opts)?;
    if let Some(phi) = &res.phi {
        atomic_write(
            &out_dir.join("eigenfunction.csv"),
            field_csv(phi, "phi").as_bytes(),
        )?;
    }
    write_json(
        &out_dir.join("summary.json"),
        &EigenSummary {
            lambda1: res.lambda1,
            r: res.period_map_radius,
            iterations: res.iterations,
            residual: res.residual,
            config: cfg,
        },
    )?;
    Ok(0)
}

#[derive(Serialize)]
struct HstarSummary<'a> {
    hstar: f64,
    lambda_at_root: f64,
    evaluations: usize,
    config: &'a RunConfig,
}

fn run_hstar(cfg: &RunConfig, out_dir: &Path, bracket: [f64; 2]) -> Result<u8> {
    let opts = HstarOptions {
        eigen: EigenOptions {
            tol: cfg.numerics.tolerances.tol_eig,
            record: false,
            ..Default::default()
        },
        ..Default::default()
    };
    let res = find_hstar(
        cfg.problem.d,
        &cfg.coefficient_a()?,
        cfg.bc()?,
        (bracket[0], bracket[1]),
        &opts,
    )?;
    write_json(
        &out_dir.join("summary.json"),
        &HstarSummary {
            hstar: res.hstar,
            lambda_at_root: res.lambda_at_root,
            evaluations: res.evaluations,
            config: cfg,
        },
    )?;
    Ok(0)
}

#[derive(Serialize)]
struct ClassifySummary<'a> {
    verdict: &'static str,
    evidence: &'static str,
    t_decided: Option<f64>,
    h_at_decision: Option<f64>,
    hstar: Option<f64>,
    lambda1_at_h0: f64,
    diagnostic: String,
    config: &'a RunConfig,
}

fn run_classify(cfg: &RunConfig, out_dir: &Path, budget_periods: usize) -> Result<u8> {
    let setup = cfg.problem_setup()?;
    let opts = classify_options(cfg, budget_periods);
    let lambda1_at_h0 = classify_d(
        setup.h0,
        &setup.a,
        setup.bc,
        setup.d,
        &opts.hstar.eigen,
    )?
    .lambda1;
    let (c, traj) = classify(&setup, cfg.problem.mu, &opts)?;
    if let Some(traj) = &traj {
        write_monitors(out_dir, traj)?;
    }
    write_json(
        &out_dir.join("summary.json"),
        &ClassifySummary {
            verdict: verdict_str(c.verdict),
            evidence: evidence_str(c.evidence),
            t_decided: c.t_decided,
            h_at_decision: c.h_at_decision,
            hstar: c.hstar,
            lambda1_at_h0,
            diagnostic: c.diagnostic,
            config: cfg,
        },
    )?;
    Ok(if c.verdict == Verdict::Undecided { 2 } else { 0 })
}

#[derive(Serialize)]
struct CriticalMuSummary<'a> {
    kind: &'static str,
    hstar: f64,
    mu_lo: Option<f64>,
    mu_hi: Option<f64>,
    evaluations: Option<usize>,
    config: &'a RunConfig,
}

fn run_critical_mu(
    cfg: &RunConfig,
    out_dir: &Path,
    mu_lo: f64,
    mu_hi: f64,
    budget_periods: usize,
) -> Result<u8> {
    let setup = cfg.problem_setup()?;
    let opts = CriticalMuOptions {
        classify: classify_options(cfg, budget_periods),
        tol_mu: cfg.numerics.tolerances.tol_mu,
        ..Default::default()
    };
    let res = critical_mu(&setup, (mu_lo, mu_hi), &opts)?;
    let summary = match res {
        CriticalMu::AllMuSpread { hstar } => CriticalMuSummary {
            kind: "all-mu-spread",
            hstar,
            mu_lo: None,
            mu_hi: None,
            evaluations: None,
            config: cfg,
        },
        CriticalMu::Bracket {
            mu_lo,
            mu_hi,
            hstar,
            evaluations,
        } => CriticalMuSummary {
            kind: "bracket",
            hstar,
            mu_lo: Some(mu_lo),
            mu_hi: Some(mu_hi),
            evaluations: Some(evaluations),
            config: cfg,
        },
    };
    write_json(&out_dir.join("summary.json"), &summary)?;
    Ok(0)
}

#[derive(Serialize)]
struct SweepRow {
    d: f64,
    lambda1: f64,
    predicted: &'static str,
    observed: Vec<SweepObservation>,
}

#[derive(Serialize)]
struct SweepObservation {
    mu: f64,
    verdict: &'static str,
}

#[derive(Serialize)]
struct SweepSummary<'a> {
    rows: Vec<SweepRow>,
    config: &'a RunConfig,
}

fn run_sweep_d(
    cfg: &RunConfig,
    out_dir: &Path,
    d_grid: &[f64],
    mu_samples: &[f64],
    budget_periods: usize,
) -> Result<u8> {
    let setup = cfg.problem_setup()?;
    let opts = classify_options(cfg, budget_periods);
    let rows: Vec<DRow<f64>> = criteria_in_d(&setup, d_grid, mu_samples, &opts)?;
    let mut undecided = false;
    let rows: Vec<SweepRow> = rows
        .into_iter()
        .map(|r| SweepRow {
            d: r.d,
            lambda1: r.lambda1,
            predicted: match r.predicted {
                SigmaMembership::SigmaMinus => "sigma-minus",
                SigmaMembership::SigmaPlus => "sigma-plus",
            },
            observed: r
                .observed
                .into_iter()
                .map(|(mu, v)| {
                    undecided |= v == Verdict::Undecided;
                    SweepObservation {
                        mu,
                        verdict: verdict_str(v),
                    }
                })
                .collect(),
        })
        .collect();
    write_json(&out_dir.join("summary.json"), &SweepSummary { rows, config: cfg })?;
    Ok(if undecided { 2 } else { 0 })
}

#[derive(Serialize)]
struct SpeedResiduals {
    fixed_point: f64,
    farfield: f64,
    fit: Option<f64>,
}

#[derive(Serialize)]
struct SpeedSummary<'a> {
    kbar_lower: f64,
    kbar_upper: f64,
    empirical_slope: Option<f64>,
    residuals: SpeedResiduals,
    config: &'a RunConfig,
}

fn run_speed(
    cfg: &RunConfig,
    out_dir: &Path,
    empirical: bool,
    window_fraction: f64,
) -> Result<u8> {
    let (p, q) = cfg.speed_rates()?;
    // space-independent rates: the lower and upper Thm-5.5 profiles coincide
    let prob = SemiWaveProblem::new(cfg.problem.d, cfg.problem.mu, p, q, cfg.problem.period)?;
    let opts = SpeedOptions {
        tol_k: cfg.numerics.tolerances.tol_k,
        record: cfg.output.fields,
        ..Default::default()
    };
    let res = solve_semiwave(&prob, &opts)?;
    atomic_write(&out_dir.join("k0.csv"), orbit_csv(&res.k0, "k0").as_bytes())?;
    if let Some(profile) = &res.profile {
        atomic_write(
            &out_dir.join("profile.csv"),
            field_csv(profile, "w").as_bytes(),
        )?;
    }
    let (empirical_slope, fit) = if empirical {
        let params = solve_params_from(cfg)?;
        let traj = simulate(params)?;
        write_monitors(out_dir, &traj)?;
        let (slope, rms) = empirical_speed(&traj, cfg.problem.period, window_fraction)?;
        (Some(slope), Some(rms))
    } else {
        (None, None)
    };
    write_json(
        &out_dir.join("summary.json"),
        &SpeedSummary {
            kbar_lower: res.kbar,
            kbar_upper: res.kbar,
            empirical_slope,
            residuals: SpeedResiduals {
                fixed_point: res.residual,
                farfield: res.farfield_mismatch,
                fit,
            },
            config: cfg,
        },
    )?;
    Ok(0)
}
