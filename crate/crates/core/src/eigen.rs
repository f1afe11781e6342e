//! Principal eigenvalue of the T-periodic parabolic eigenvalue problem via
//! the Poincare period map: evolve the lambda = 0 equation over one period
//! and power-iterate; `lambda1 = -ln(r)/T` where `r` is the spectral radius.

use crate::coefficients::{PeriodicCoefficient, RobinBc};
use crate::error::{Error, Result};
use crate::field::{resample, uniform_axis, SpaceTimeField};
use crate::scalar::Real;
use crate::stepper::{LeftBc, Splitting, StepInputs, Stepper1d};

/// The T-periodic eigenvalue problem on `(0, ell)` with Robin left boundary
/// and Dirichlet right boundary.
#[derive(Debug, Clone)]
pub struct EigenProblem<T: Real> {
    pub d: T,
    pub a: PeriodicCoefficient<T>,
    pub ell: T,
    pub bc: RobinBc<T>,
    pub nx: usize,
    pub dt: T,
}

impl<T: Real> EigenProblem<T> {
    /// Default grid: `nx = max(64, ceil(32*ell))`, `dt = T/200`.
    pub fn new(d: T, a: PeriodicCoefficient<T>, ell: T, bc: RobinBc<T>) -> Result<Self> {
        let nx = default_nx(ell);
        let dt = a.period() / T::of(200.0);
        Self::with_grid(d, a, ell, bc, nx, dt)
    }

    pub fn with_grid(
        d: T,
        a: PeriodicCoefficient<T>,
        ell: T,
        bc: RobinBc<T>,
        nx: usize,
        dt: T,
    ) -> Result<Self> {
        if !(d > T::zero()) {
            return Err(Error::InvalidParameter(format!("d must be positive: {d}")));
        }
        if !(ell > T::zero()) {
            return Err(Error::InvalidParameter(format!(
                "ell must be positive: {ell}"
            )));
        }
        if nx < 64 {
            return Err(Error::InvalidParameter(format!(
                "grid must resolve the coefficient: nx >= 64, got {nx}"
            )));
        }
        if !(dt > T::zero()) {
            return Err(Error::InvalidParameter(format!("dt must be positive: {dt}")));
        }
        Ok(Self {
            d,
            a,
            ell,
            bc,
            nx,
            dt,
        })
    }
}

pub fn default_nx<T: Real>(ell: T) -> usize {
    let scaled = (T::of(32.0) * ell).ceil().to_usize().unwrap_or(64);
    scaled.max(64)
}

/// Linear solution operator over one period of `phi_t = d phi_xx + a phi`.
pub struct PeriodMap<T> {
    stepper: Stepper1d<T>,
    a_grid: Vec<Vec<T>>,
    b_zero: Vec<T>,
    left: LeftBc<T>,
    d: T,
    dt: T,
    nt: usize,
    period: T,
}

impl<T: Real> PeriodMap<T> {
    pub fn new(p: &EigenProblem<T>) -> Self {
        let period = p.a.period();
        let dx = p.ell / T::from_usize(p.nx).unwrap();
        // Cap the mesh ratio: Crank-Nicolson barely damps the sawtooth mode
        // when dt*d/dx^2 is large, and that spurious mode would otherwise
        // dominate the period-map spectrum whenever e^{-lambda1 T} is small.
        // Keeping 4*dt*d/dx^2 <= 40 bounds its per-step factor by ~0.82.
        let dt_cap = T::of(10.0) * dx * dx / p.d;
        let nt_requested = (period / p.dt).round().to_usize().unwrap().max(1);
        let nt_damped = (period / dt_cap).ceil().to_usize().unwrap().max(1);
        let nt = nt_requested.max(nt_damped);
        let dt = period / T::from_usize(nt).unwrap();
        let xs = uniform_axis(p.ell, p.nx);
        // reaction coefficients frozen at the step midpoint
        let a_grid: Vec<Vec<T>> = (0..nt)
            .map(|i| {
                let t = dt * (T::from_usize(i).unwrap() + T::half());
                xs.iter().map(|&x| p.a.eval(t, x)).collect()
            })
            .collect();
        let left = if p.bc.is_dirichlet() {
            LeftBc::Dirichlet
        } else {
            LeftBc::Robin {
                ratio: p.bc.alpha() / p.bc.beta(),
            }
        };
        Self {
            stepper: Stepper1d::new(p.nx, dx, T::half()),
            a_grid,
            b_zero: vec![T::zero(); p.nx + 1],
            left,
            d: p.d,
            dt,
            nt,
            period,
        }
    }

    pub fn nt(&self) -> usize {
        self.nt
    }

    pub fn period(&self) -> T {
        self.period
    }

    /// Applies the period map in place.
    pub fn apply(&mut self, w: &mut [T]) {
        for i in 0..self.nt {
            let a_row = std::mem::take(&mut self.a_grid[i]);
            self.stepper.step(
                w,
                &StepInputs {
                    dt: self.dt,
                    nu: self.d,
                    left: self.left,
                    right_value: T::zero(),
                    advection: None,
                    reaction: Some((&a_row, &self.b_zero)),
                    splitting: Splitting::Strang,
                },
            );
            self.a_grid[i] = a_row;
        }
    }

    /// Applies the period map with per-step sup-norm renormalization and
    /// returns `ln` of the accumulated growth factor, i.e. `ln ||M w||` for
    /// the incoming sup-normalized `w`. Avoids under/overflow when the decay
    /// over one period is extreme. `w` is left sup-normalized.
    pub fn apply_log(&mut self, w: &mut [T]) -> T {
        let mut log_growth = T::zero();
        for i in 0..self.nt {
            let a_row = std::mem::take(&mut self.a_grid[i]);
            self.stepper.step(
                w,
                &StepInputs {
                    dt: self.dt,
                    nu: self.d,
                    left: self.left,
                    right_value: T::zero(),
                    advection: None,
                    reaction: Some((&a_row, &self.b_zero)),
                    splitting: Splitting::Strang,
                },
            );
            self.a_grid[i] = a_row;
            let s = w.iter().fold(T::zero(), |m, &x| m.max(x.abs()));
            if !(s > T::zero()) || !s.is_finite() {
                return T::nan();
            }
            log_growth += s.ln();
            w.iter_mut().for_each(|x| *x /= s);
        }
        log_growth
    }

    /// One period recording the sup-normalized state before every step plus
    /// the final state, together with the cumulative log scale of each row
    /// (`w_true = e^{log_c} * row`).
    fn apply_recording(&mut self, w: &mut [T]) -> Vec<(Vec<T>, T)> {
        let mut rows = Vec::with_capacity(self.nt + 1);
        let mut log_c = T::zero();
        for i in 0..self.nt {
            rows.push((w.to_vec(), log_c));
            let a_row = std::mem::take(&mut self.a_grid[i]);
            self.stepper.step(
                w,
                &StepInputs {
                    dt: self.dt,
                    nu: self.d,
                    left: self.left,
                    right_value: T::zero(),
                    advection: None,
                    reaction: Some((&a_row, &self.b_zero)),
                    splitting: Splitting::Strang,
                },
            );
            self.a_grid[i] = a_row;
            let s = w.iter().fold(T::zero(), |m, &x| m.max(x.abs()));
            if s > T::zero() && s.is_finite() {
                log_c += s.ln();
                w.iter_mut().for_each(|x| *x /= s);
            }
        }
        rows.push((w.to_vec(), log_c));
        rows
    }
}

#[derive(Debug, Clone)]
pub struct EigenOptions<T> {
    /// Stop when successive radius estimates differ by less than this.
    pub tol: T,
    pub max_iters: usize,
    /// Record the space-time eigenfunction after convergence.
    pub record: bool,
}

impl<T: Real> Default for EigenOptions<T> {
    fn default() -> Self {
        Self {
            tol: T::of(1e-8),
            max_iters: 500,
            record: true,
        }
    }
}

#[derive(Debug, Clone)]
pub struct EigenResult<T> {
    pub lambda1: T,
    /// Spectral radius of the lambda = 0 period map.
    pub period_map_radius: T,
    pub iterations: usize,
    pub residual: T,
    /// Converged eigenvector at t = 0 (sup-normalized); useful as a warm start.
    pub phi0: Vec<T>,
    /// Positive T-periodic eigenfunction on `[0,T] x [0,ell]`, max-normalized.
    pub phi: Option<SpaceTimeField<T>>,
}

fn sup_norm<T: Real>(v: &[T]) -> T {
    v.iter().fold(T::zero(), |m, &x| m.max(x.abs()))
}

pub fn principal_eigenvalue<T: Real>(
    p: &EigenProblem<T>,
    opts: &EigenOptions<T>,
) -> Result<EigenResult<T>> {
    principal_eigenvalue_warm(p, opts, None)
}

/// Power iteration on the period map, optionally warm-started from an
/// eigenvector of a nearby problem (resampled to this grid by the caller).
pub fn principal_eigenvalue_warm<T: Real>(
    p: &EigenProblem<T>,
    opts: &EigenOptions<T>,
    warm: Option<&[T]>,
) -> Result<EigenResult<T>> {
    let mut map = PeriodMap::new(p);
    let n = p.nx;

    let mut v: Vec<T> = match warm {
        Some(w) if w.len() == n + 1 && sup_norm(w) > T::zero() => w.to_vec(),
        _ => vec![T::one(); n + 1],
    };
    let s = sup_norm(&v);
    v.iter_mut().for_each(|x| *x /= s);

    // iterate on rho_j = ln ||M v_j|| (log of the Rayleigh-type growth
    // factor); this converges to ln(r) without under/overflow
    let mut rhos: Vec<T> = Vec::new();
    let mut aitkens: Vec<T> = Vec::new();
    let period = map.period();
    let mut log_radius = T::nan();
    let mut residual = T::infinity();
    let mut converged = false;
    let mut iterations = 0;

    for j in 0..opts.max_iters {
        let rho = map.apply_log(&mut v);
        iterations = j + 1;
        if !rho.is_finite() {
            return Err(Error::NoConvergence {
                iterations,
                last: f64::NAN,
                residual: f64::INFINITY,
            });
        }
        rhos.push(rho);

        if j >= 1 {
            residual = (rhos[j] - rhos[j - 1]).abs();
            if residual < opts.tol {
                log_radius = rho;
                converged = true;
                break;
            }
        }
        // Aitken extrapolation of the geometrically converging log-growth
        // sequence; takes over when the raw sequence is slow (small spectral
        // gap, i.e. large domains).
        if j >= 2 {
            let d1 = rhos[j - 1] - rhos[j - 2];
            let d2 = rhos[j] - rhos[j - 1];
            let denom = d2 - d1;
            let ratio = if d1 != T::zero() { d2 / d1 } else { T::zero() };
            if denom.abs() > T::of(1e-300) && ratio > T::zero() && ratio < T::of(0.9999) {
                let s = rhos[j] - d2 * d2 / denom;
                if let Some(&prev) = aitkens.last() {
                    let diff = (s - prev).abs();
                    if diff < opts.tol {
                        log_radius = s;
                        residual = diff;
                        converged = true;
                        aitkens.push(s);
                        break;
                    }
                }
                aitkens.push(s);
            }
        }
    }

    if !converged {
        let last = *rhos.last().unwrap();
        return Err(Error::NoConvergence {
            iterations,
            last: (-last / period).to_f64().unwrap_or(f64::NAN),
            residual: residual.to_f64().unwrap_or(f64::NAN),
        });
    }

    let lambda1 = -log_radius / period;
    let radius = log_radius.exp();

    let phi = if opts.record {
        let mut w = v.clone();
        let raw = map.apply_recording(&mut w);
        // rescale each row by e^{log_c + lambda1 t} so the field is the
        // T-periodic eigenfunction of the shifted equation
        let nt = raw.len() - 1;
        let mut rows: Vec<Vec<T>> = raw
            .into_iter()
            .enumerate()
            .map(|(i, (mut row, log_c))| {
                let t = period * T::from_usize(i).unwrap() / T::from_usize(nt).unwrap();
                let scale = (log_c + lambda1 * t).exp();
                row.iter_mut().for_each(|x| *x *= scale);
                row
            })
            .collect();
        let peak = rows
            .iter()
            .flat_map(|r| r.iter().copied())
            .fold(T::zero(), |m, x| m.max(x.abs()));
        if peak > T::zero() {
            for row in rows.iter_mut() {
                row.iter_mut().for_each(|x| *x /= peak);
            }
        }
        Some(SpaceTimeField {
            ts: uniform_axis(period, nt),
            xs: uniform_axis(p.ell, p.nx),
            values: rows,
        })
    } else {
        None
    };

    Ok(EigenResult {
        lambda1,
        period_map_radius: radius,
        iterations,
        residual,
        phi0: v,
        phi,
    })
}

#[derive(Debug, Clone)]
pub struct HstarOptions<T> {
    /// Final bracket width relative to the root.
    pub tol_len_rel: T,
    /// Acceptance bound on `|lambda1(h*)|`.
    pub tol_lambda: T,
    pub eigen: EigenOptions<T>,
}

impl<T: Real> Default for HstarOptions<T> {
    fn default() -> Self {
        Self {
            tol_len_rel: T::of(1e-4),
            tol_lambda: T::of(1e-2),
            eigen: EigenOptions {
                record: false,
                ..Default::default()
            },
        }
    }
}

#[derive(Debug, Clone)]
pub struct HstarResult<T> {
    pub hstar: T,
    pub lambda_at_root: T,
    pub evaluations: usize,
}

fn eval_lambda<T: Real>(
    d: T,
    a: &PeriodicCoefficient<T>,
    bc: RobinBc<T>,
    ell: T,
    opts: &EigenOptions<T>,
    warm: Option<(&[T], T)>,
) -> Result<EigenResult<T>> {
    let p = EigenProblem::new(d, a.clone(), ell, bc)?;
    let resampled = warm.map(|(v, len)| resample(v, len, ell, p.nx));
    principal_eigenvalue_warm(&p, opts, resampled.as_deref())
}

/// Locates the critical length `h*` with `lambda1(h*; d, a) = 0` by bisection,
/// using strict monotone decrease of `lambda1` in `ell`.
///
/// Precondition: `lambda1` straddles zero on the bracket.
pub fn find_hstar<T: Real>(
    d: T,
    a: &PeriodicCoefficient<T>,
    bc: RobinBc<T>,
    bracket: (T, T),
    opts: &HstarOptions<T>,
) -> Result<HstarResult<T>> {
    let (mut lo, mut hi) = bracket;
    if !(lo > T::zero() && hi > lo) {
        return Err(Error::InvalidParameter(format!(
            "bracket must satisfy 0 < lo < hi, got ({lo}, {hi})"
        )));
    }
    let mut evals = 0;

    let r_lo = eval_lambda(d, a, bc, lo, &opts.eigen, None)?;
    evals += 1;
    let r_hi = eval_lambda(d, a, bc, hi, &opts.eigen, Some((&r_lo.phi0, lo)))?;
    evals += 1;

    if r_hi.lambda1 > T::zero() {
        return Err(Error::NoSignChange(format!(
            "lambda1({hi}) = {} > 0",
            r_hi.lambda1
        )));
    }
    if r_lo.lambda1 < T::zero() {
        return Err(Error::BracketFailure(format!(
            "lambda1({lo}) = {} already negative; root lies left of the bracket",
            r_lo.lambda1
        )));
    }

    let mut warm_vec = r_hi.phi0;
    let mut warm_len = hi;
    let mut lambda_mid = r_hi.lambda1;
    loop {
        let mid = (lo + hi) * T::half();
        if (hi - lo) < opts.tol_len_rel * mid {
            if lambda_mid.abs() > opts.tol_lambda {
                return Err(Error::NoConvergence {
                    iterations: evals,
                    last: lambda_mid.to_f64().unwrap_or(f64::NAN),
                    residual: (hi - lo).to_f64().unwrap_or(f64::NAN),
                });
            }
            return Ok(HstarResult {
                hstar: mid,
                lambda_at_root: lambda_mid,
                evaluations: evals,
            });
        }
        let r = eval_lambda(d, a, bc, mid, &opts.eigen, Some((&warm_vec, warm_len)))?;
        evals += 1;
        lambda_mid = r.lambda1;
        warm_vec = r.phi0;
        warm_len = mid;
        if r.lambda1 > T::zero() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
}

#[derive(Debug, Clone)]
pub struct LambdaLadderOptions<T> {
    pub eigen: EigenOptions<T>,
    /// Allowed increase between successive ladder values before flagging a
    /// monotonicity violation.
    pub tol_mono: T,
}

impl<T: Real> Default for LambdaLadderOptions<T> {
    fn default() -> Self {
        Self {
            eigen: EigenOptions {
                record: false,
                max_iters: 2000,
                ..Default::default()
            },
            tol_mono: T::of(1e-5),
        }
    }
}

#[derive(Debug, Clone)]
pub struct LambdaLadder<T> {
    pub ells: Vec<T>,
    pub lambdas: Vec<T>,
}

impl<T: Real> LambdaLadder<T> {
    pub fn last(&self) -> T {
        *self.lambdas.last().unwrap()
    }
}

/// Evaluates `lambda1` on the geometric ladder `ell = ell0 * 2^j` up to
/// `ell_max`. The computed sequence must be strictly decreasing; the caller
/// interprets the last value (the large-domain limit exists and the critical
/// length exists iff it is negative).
pub fn lambda_infinity<T: Real>(
    d: T,
    a: &PeriodicCoefficient<T>,
    bc: RobinBc<T>,
    ell0: T,
    ell_max: T,
    opts: &LambdaLadderOptions<T>,
) -> Result<LambdaLadder<T>> {
    if !(ell0 > T::zero() && ell_max >= ell0) {
        return Err(Error::InvalidParameter(format!(
            "need 0 < ell0 <= ell_max, got ({ell0}, {ell_max})"
        )));
    }
    let mut ells = Vec::new();
    let mut lambdas = Vec::new();
    let mut ell = ell0;
    let mut warm: Option<(Vec<T>, T)> = None;
    while ell <= ell_max * (T::one() + T::of(1e-12)) {
        let r = eval_lambda(
            d,
            a,
            bc,
            ell,
            &opts.eigen,
            warm.as_ref().map(|(v, l)| (v.as_slice(), *l)),
        )?;
        if let Some(&prev) = lambdas.last() {
            if r.lambda1 > prev + opts.tol_mono {
                return Err(Error::MonotonicityViolation(format!(
                    "lambda1 increased from {prev} to {} between ell={} and ell={ell}",
                    r.lambda1,
                    ells.last().unwrap()
                )));
            }
        }
        ells.push(ell);
        lambdas.push(r.lambda1);
        warm = Some((r.phi0, ell));
        ell = ell * T::two();
    }
    Ok(LambdaLadder { ells, lambdas })
}

/// Which side of the persistence threshold a diffusion rate falls on for a
/// fixed domain length: `SigmaMinus` iff `lambda1(ell; d, a) <= 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SigmaMembership {
    SigmaMinus,
    SigmaPlus,
}

#[derive(Debug, Clone)]
pub struct DClassification<T> {
    pub d: T,
    pub lambda1: T,
    pub membership: SigmaMembership,
}

/// Pointwise membership by the sign of `lambda1(ell; d, a)`. Sweeps over `d`
/// must use independent evaluations: `lambda1` is not monotone in `d`.
pub fn classify_d<T: Real>(
    ell: T,
    a: &PeriodicCoefficient<T>,
    bc: RobinBc<T>,
    d: T,
    opts: &EigenOptions<T>,
) -> Result<DClassification<T>> {
    if !(d > T::zero()) {
        return Err(Error::InvalidParameter(format!("d must be positive: {d}")));
    }
    let r = eval_lambda(d, a, bc, ell, opts, None)?;
    let membership = if r.lambda1 <= T::zero() {
        SigmaMembership::SigmaMinus
    } else {
        SigmaMembership::SigmaPlus
    };
    Ok(DClassification {
        d,
        lambda1: r.lambda1,
        membership,
    })
}
