//! Periodic semi-wave and spreading-speed bounds: the self-consistent drift
//! `k0(t) = mu * w_x(t, 0)` of the advected logistic problem, and the
//! empirical front-speed fit of a spreading trajectory.

use crate::coefficients::TimeFn;
use crate::error::{Error, Result};
use crate::fbp::Trajectory;
use crate::field::{uniform_axis, SpaceTimeField};
use crate::periodic::{ode_periodic_logistic, PeriodicOrbit};
use crate::scalar::Real;
use crate::stepper::{left_slope, LeftBc, Splitting, StepInputs, Stepper1d};

/// Semi-wave problem `w_t - d w_xx + k(t) w_x = p(t) w - q(t) w^2` on a
/// truncated half-line with `w(t,0) = 0` and far field pinned to the ODE
/// periodic orbit.
#[derive(Clone)]
pub struct SemiWaveProblem<T: Real> {
    pub d: T,
    pub mu: T,
    pub p: TimeFn<T>,
    pub q: TimeFn<T>,
    pub period: T,
    /// Truncation length.
    pub l: T,
    pub nx: usize,
    pub dt: T,
}

impl<T: Real> std::fmt::Debug for SemiWaveProblem<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SemiWaveProblem")
            .field("d", &self.d)
            .field("mu", &self.mu)
            .field("period", &self.period)
            .field("l", &self.l)
            .field("nx", &self.nx)
            .field("dt", &self.dt)
            .finish()
    }
}

fn time_mean<T: Real>(f: &TimeFn<T>, period: T) -> T {
    let n = 1024;
    let h = period / T::from_usize(n).unwrap();
    let mut acc = (f(T::zero()) + f(period)) * T::half();
    for i in 1..n {
        acc += f(h * T::from_usize(i).unwrap());
    }
    acc * h / period
}

impl<T: Real> SemiWaveProblem<T> {
    /// Defaults: `L = 40 sqrt(d/pbar)` (several tail decay lengths),
    /// 16 nodes per decay length, `dt = T/200` (reduced to the upwind CFL).
    pub fn new(d: T, mu: T, p: TimeFn<T>, q: TimeFn<T>, period: T) -> Result<Self> {
        let p_mean = time_mean(&p, period);
        if !(p_mean > T::zero()) {
            return Err(Error::NoPositivePeriodic);
        }
        let decay = (d / p_mean).sqrt();
        let l = T::of(40.0) * decay;
        let nx = (T::of(16.0) * l / decay)
            .round()
            .to_usize()
            .unwrap()
            .max(64);
        let dt = period / T::of(200.0);
        Self::with_grid(d, mu, p, q, period, l, nx, dt)
    }

    #[allow(clippy::too_many_arguments)]
    pub fn with_grid(
        d: T,
        mu: T,
        p: TimeFn<T>,
        q: TimeFn<T>,
        period: T,
        l: T,
        nx: usize,
        dt: T,
    ) -> Result<Self> {
        if !(d > T::zero()) {
            return Err(Error::InvalidParameter(format!("d must be positive: {d}")));
        }
        if !(mu > T::zero()) {
            return Err(Error::InvalidParameter(format!(
                "mu must be positive: {mu}"
            )));
        }
        if !(period > T::zero()) {
            return Err(Error::InvalidParameter(format!(
                "period must be positive: {period}"
            )));
        }
        if !(l > T::zero()) || nx < 64 {
            return Err(Error::InvalidParameter(format!(
                "need l > 0 and nx >= 64, got l = {l}, nx = {nx}"
            )));
        }
        let p_mean = time_mean(&p, period);
        if !(p_mean > T::zero()) {
            return Err(Error::NoPositivePeriodic);
        }
        // sampled positivity of q
        for i in 0..=64 {
            let t = period * T::from_usize(i).unwrap() / T::of(64.0);
            if !(q(t) > T::zero()) {
                return Err(Error::InvalidParameter(format!(
                    "q must be positive on [0,T]; q({t}) = {}",
                    q(t)
                )));
            }
        }
        // explicit upwind CFL against the a priori drift bound 2 sqrt(d pbar)
        let dx = l / T::from_usize(nx).unwrap();
        let k_cap = T::two() * (d * p_mean).sqrt();
        let dt_eff = dt.min(T::of(0.4) * dx / k_cap);
        let nt = (period / dt_eff).ceil().to_usize().unwrap().max(1);
        let dt_eff = period / T::from_usize(nt).unwrap();
        Ok(Self {
            d,
            mu,
            p,
            q,
            period,
            l,
            nx,
            dt: dt_eff,
        })
    }

    pub fn p_mean(&self) -> T {
        time_mean(&self.p, self.period)
    }

    pub fn q_mean(&self) -> T {
        time_mean(&self.q, self.period)
    }
}

#[derive(Debug, Clone)]
pub struct SpeedOptions<T> {
    /// Fixed-point tolerance on `sup_t |k^{j+1} - k^j|`.
    pub tol_k: T,
    pub max_iters: usize,
    /// Period-to-period tolerance for the attractor relaxation.
    pub tol_attract: T,
    pub max_sweeps: usize,
    /// Initial damping factor for the k-update.
    pub omega: T,
    /// Record the converged profile.
    pub record: bool,
}

impl<T: Real> Default for SpeedOptions<T> {
    fn default() -> Self {
        Self {
            tol_k: T::of(1e-6),
            max_iters: 200,
            tol_attract: T::of(1e-8),
            max_sweeps: 5000,
            omega: T::half(),
            record: true,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SpeedResult<T> {
    /// Converged periodic drift sampled on `nt + 1` uniform times.
    pub k0: PeriodicOrbit<T>,
    pub kbar: T,
    /// Converged semi-wave profile over one period (if recorded).
    pub profile: Option<SpaceTimeField<T>>,
    /// Last fixed-point residual `sup_t |k^{j+1} - k^j|`.
    pub residual: T,
    pub iterations: usize,
    /// Far-field certificate: `sup_t |w(t, L/2) - v(t)|`.
    pub farfield_mismatch: T,
}

struct AttractorMarcher<T: Real> {
    stepper: Stepper1d<T>,
    p_row: Vec<Vec<T>>,
    q_row: Vec<Vec<T>>,
    v_end: Vec<T>,
    c_scratch: Vec<T>,
    d: T,
    dt: T,
    nt: usize,
    nx: usize,
}

impl<T: Real> AttractorMarcher<T> {
    fn new(prob: &SemiWaveProblem<T>, v: &PeriodicOrbit<T>) -> Self {
        let nt = (prob.period / prob.dt).round().to_usize().unwrap().max(1);
        let dt = prob.period / T::from_usize(nt).unwrap();
        let dx = prob.l / T::from_usize(prob.nx).unwrap();
        // p, q are space-independent; store per-step constant rows
        let p_row: Vec<Vec<T>> = (0..nt)
            .map(|i| {
                let t = dt * (T::from_usize(i).unwrap() + T::half());
                vec![(prob.p)(t); prob.nx + 1]
            })
            .collect();
        let q_row: Vec<Vec<T>> = (0..nt)
            .map(|i| {
                let t = dt * (T::from_usize(i).unwrap() + T::half());
                vec![(prob.q)(t); prob.nx + 1]
            })
            .collect();
        let v_end: Vec<T> = (0..nt)
            .map(|i| v.eval(dt * T::from_usize(i + 1).unwrap()))
            .collect();
        Self {
            stepper: Stepper1d::new(prob.nx, dx, T::one()),
            p_row,
            q_row,
            v_end,
            c_scratch: vec![T::zero(); prob.nx + 1],
            d: prob.d,
            dt,
            nt,
            nx: prob.nx,
        }
    }

    /// One period; `k` sampled at `nt + 1` uniform times. Optionally records
    /// the state at each step boundary and the left slope at each time.
    fn sweep(
        &mut self,
        w: &mut [T],
        k: &[T],
        mut rows: Option<&mut Vec<Vec<T>>>,
        mut slopes: Option<&mut Vec<T>>,
    ) {
        let dx = self.stepper.dx();
        if let Some(r) = rows.as_deref_mut() {
            r.push(w.to_vec());
        }
        if let Some(s) = slopes.as_deref_mut() {
            s.push(left_slope(w, dx));
        }
        for i in 0..self.nt {
            let c = (k[i] + k[i + 1]) * T::half();
            self.c_scratch.iter_mut().for_each(|x| *x = c);
            let p_row = std::mem::take(&mut self.p_row[i]);
            let q_row = std::mem::take(&mut self.q_row[i]);
            self.stepper.step(
                w,
                &StepInputs {
                    dt: self.dt,
                    nu: self.d,
                    left: LeftBc::Dirichlet,
                    right_value: self.v_end[i],
                    advection: Some(&self.c_scratch),
                    reaction: Some((&p_row, &q_row)),
                    splitting: Splitting::Lie,
                },
            );
            self.p_row[i] = p_row;
            self.q_row[i] = q_row;
            if let Some(r) = rows.as_deref_mut() {
                r.push(w.to_vec());
            }
            if let Some(s) = slopes.as_deref_mut() {
                s.push(left_slope(w, dx));
            }
        }
        debug_assert_eq!(w.len(), self.nx + 1);
    }
}

/// Fixed-point iteration for the self-consistent periodic drift
/// `k0(t) = mu * w_x(t, 0)` of Prop-5.1 type, with adaptive damping.
pub fn solve_semiwave<T: Real>(
    prob: &SemiWaveProblem<T>,
    opts: &SpeedOptions<T>,
) -> Result<SpeedResult<T>> {
    let period = prob.period;
    let p_mean = prob.p_mean();
    let q_mean = prob.q_mean();
    let k_cap = T::two() * (prob.d * p_mean).sqrt();

    // far-field target: the spatially homogeneous periodic orbit
    let p_fn = |t: T| (prob.p)(t);
    let q_fn = |t: T| (prob.q)(t);
    let v = ode_periodic_logistic(&p_fn, &q_fn, period, 4096)?;

    let mut marcher = AttractorMarcher::new(prob, &v);
    let nt = marcher.nt;

    // initial drift guess: below both the flux scale and the cap
    let k_init = (prob.mu * p_mean / q_mean).min((prob.d * p_mean).sqrt());
    let mut k = vec![k_init; nt + 1];

    // initial profile: ramp up to the far-field orbit over a few decay
    // lengths, then follow v
    let ramp = T::of(4.0) * (prob.d / p_mean).sqrt();
    let mut w: Vec<T> = (0..=prob.nx)
        .map(|i| {
            let x = prob.l * T::from_usize(i).unwrap() / T::from_usize(prob.nx).unwrap();
            v.eval(T::zero()) * (x / ramp).min(T::one())
        })
        .collect();
    w[0] = T::zero();

    let mut omega = opts.omega;
    let mut residual = T::infinity();
    let mut prev_residual = T::infinity();
    let mut cap_violations = 0usize;
    let mut iterations = 0usize;
    let mut converged = false;

    for _ in 0..opts.max_iters {
        iterations += 1;

        // relax to the periodic attractor for the current drift
        let mut settled = false;
        let mut prev = w.clone();
        for _ in 0..opts.max_sweeps {
            marcher.sweep(&mut w, &k, None, None);
            let diff = w
                .iter()
                .zip(&prev)
                .map(|(&a, &b)| (a - b).abs())
                .fold(T::zero(), T::max);
            if diff < opts.tol_attract {
                settled = true;
                break;
            }
            prev.copy_from_slice(&w);
        }
        if !settled {
            return Err(Error::NoConvergence {
                iterations,
                last: f64::NAN,
                residual: f64::NAN,
            });
        }

        // next drift from the left flux over one period
        let mut slopes = Vec::with_capacity(nt + 1);
        marcher.sweep(&mut w, &k, None, Some(&mut slopes));
        let mut k_new: Vec<T> = slopes.iter().map(|&s| prob.mu * s).collect();

        // the existence bound: raw iterates above 2 sqrt(d pbar) are clamped
        // (the true drift lies strictly below); persistent violation of the
        // clamp signals a genuinely supercritical configuration
        let kbar_raw = {
            let inner: T = k_new[1..nt].iter().copied().sum();
            (inner + (k_new[0] + k_new[nt]) * T::half()) / T::from_usize(nt).unwrap()
        };
        if kbar_raw >= k_cap {
            cap_violations += 1;
            if cap_violations > 25 {
                return Err(Error::SupercriticalDrift(format!(
                    "mean drift {kbar_raw} >= 2 sqrt(d pbar) = {k_cap} after {cap_violations} clamped iterates"
                )));
            }
            omega = (omega * T::half()).max(T::of(0.05));
            let clamp = k_cap * T::of(0.999);
            for kn in k_new.iter_mut() {
                *kn = kn.min(clamp);
            }
        } else {
            cap_violations = 0;
        }

        residual = k
            .iter()
            .zip(&k_new)
            .map(|(&a, &b)| (a - b).abs())
            .fold(T::zero(), T::max);
        if residual < opts.tol_k {
            k = k_new;
            converged = true;
            break;
        }
        // adaptive damping: back off when the residual grows, speed up on
        // monotone progress
        if residual > prev_residual {
            omega = (omega * T::half()).max(T::of(0.05));
        } else {
            omega = (omega * T::of(1.2)).min(T::one());
        }
        prev_residual = residual;
        for (ki, &kn) in k.iter_mut().zip(&k_new) {
            *ki += omega * (kn - *ki);
        }
    }

    if !converged {
        return Err(Error::NoConvergence {
            iterations,
            last: f64::NAN,
            residual: residual.to_f64().unwrap_or(f64::NAN),
        });
    }

    let kbar = {
        let inner: T = k[1..nt].iter().copied().sum();
        (inner + (k[0] + k[nt]) * T::half()) / T::from_usize(nt).unwrap()
    };
    if !(kbar > T::zero() && kbar < k_cap) {
        return Err(Error::SupercriticalDrift(format!(
            "converged mean drift {kbar} outside (0, {k_cap})"
        )));
    }

    // final recorded period + far-field certificate at L/2
    let mut rows = Vec::with_capacity(nt + 1);
    marcher.sweep(&mut w, &k, Some(&mut rows), None);
    let mid = prob.nx / 2;
    let mut farfield_mismatch = T::zero();
    for (i, row) in rows.iter().enumerate() {
        let t = period * T::from_usize(i).unwrap() / T::from_usize(nt).unwrap();
        farfield_mismatch = farfield_mismatch.max((row[mid] - v.eval(t)).abs());
    }
    let profile = if opts.record {
        Some(SpaceTimeField {
            ts: uniform_axis(period, nt),
            xs: uniform_axis(prob.l, prob.nx),
            values: rows,
        })
    } else {
        None
    };

    Ok(SpeedResult {
        k0: PeriodicOrbit { period, values: k },
        kbar,
        profile,
        residual,
        iterations,
        farfield_mismatch,
    })
}

/// Least-squares slope of `h(t)` over the final window of a spreading run.
/// The window must span at least 10 periods.
pub fn empirical_speed<T: Real>(
    traj: &Trajectory<T>,
    period: T,
    window_fraction: T,
) -> Result<(T, T)> {
    if !(window_fraction > T::zero() && window_fraction <= T::one()) {
        return Err(Error::InvalidParameter(format!(
            "window fraction must be in (0, 1], got {window_fraction}"
        )));
    }
    let t_final = traj.final_state.t;
    let t_start = t_final * (T::one() - window_fraction);
    if t_final - t_start < T::of(10.0) * period {
        return Err(Error::TooShort(format!(
            "final window spans {} < 10 periods",
            (t_final - t_start) / period
        )));
    }
    let pts: Vec<(T, T)> = traj
        .monitors
        .iter()
        .filter(|r| r.t >= t_start)
        .map(|r| (r.t, r.h))
        .collect();
    if pts.len() < 3 {
        return Err(Error::TooShort(format!(
            "only {} monitor rows in the final window",
            pts.len()
        )));
    }
    let n = T::from_usize(pts.len()).unwrap();
    let (st, sh): (T, T) = pts
        .iter()
        .fold((T::zero(), T::zero()), |(a, b), &(t, h)| (a + t, b + h));
    let (tm, hm) = (st / n, sh / n);
    let mut num = T::zero();
    let mut den = T::zero();
    for &(t, h) in &pts {
        num += (t - tm) * (h - hm);
        den += (t - tm) * (t - tm);
    }
    if den == T::zero() {
        return Err(Error::TooShort("degenerate time window".into()));
    }
    let slope = num / den;
    let mut ss = T::zero();
    for &(t, h) in &pts {
        let r = h - hm - slope * (t - tm);
        ss += r * r;
    }
    let rms = (ss / n).sqrt();
    Ok((slope, rms))
}
