//! T-periodic positive states of the fixed-domain logistic problems, the
//! half-line periodic state by domain truncation, and the periodic logistic
//! ODE orbit in closed form.

use crate::coefficients::{AsymptoticProfile, PeriodicCoefficient, RobinBc};
use crate::error::{Error, Result};
use crate::field::{uniform_axis, SpaceTimeField};
use crate::scalar::Real;
use crate::stepper::{LeftBc, Splitting, StepInputs, Stepper1d};

/// Fixed-domain periodic boundary-value problem on `(0, ell)`:
/// `v_t = d v_xx + a v - b v^2`, Robin at 0, `v(t, ell) = theta`.
#[derive(Debug, Clone)]
pub struct PeriodicBvp<T: Real> {
    pub d: T,
    pub a: PeriodicCoefficient<T>,
    pub b: PeriodicCoefficient<T>,
    pub bc: RobinBc<T>,
    pub ell: T,
    /// Dirichlet value at the right end; 0 for the half-line truncations,
    /// an upper-solution trace otherwise.
    pub theta: T,
    pub nx: usize,
    pub dt: T,
}

impl<T: Real> PeriodicBvp<T> {
    pub fn new(
        d: T,
        a: PeriodicCoefficient<T>,
        b: PeriodicCoefficient<T>,
        bc: RobinBc<T>,
        ell: T,
        theta: T,
    ) -> Result<Self> {
        let nx = crate::eigen::default_nx(ell);
        let dt = a.period() / T::of(200.0);
        Self::with_grid(d, a, b, bc, ell, theta, nx, dt)
    }

    #[allow(clippy::too_many_arguments)]
    pub fn with_grid(
        d: T,
        a: PeriodicCoefficient<T>,
        b: PeriodicCoefficient<T>,
        bc: RobinBc<T>,
        ell: T,
        theta: T,
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
        if !(theta >= T::zero()) {
            return Err(Error::InvalidParameter(format!(
                "theta must be nonnegative: {theta}"
            )));
        }
        if a.period() != b.period() {
            return Err(Error::InvalidParameter(format!(
                "a and b must share the period: {} vs {}",
                a.period(),
                b.period()
            )));
        }
        if nx < 16 {
            return Err(Error::InvalidParameter(format!("nx too small: {nx}")));
        }
        if !(dt > T::zero()) {
            return Err(Error::InvalidParameter(format!("dt must be positive: {dt}")));
        }
        if !(b.lower_bound() > T::zero()) {
            return Err(Error::InvalidParameter(
                "b must have a positive infimum".into(),
            ));
        }
        Ok(Self {
            d,
            a,
            b,
            bc,
            ell,
            theta,
            nx,
            dt,
        })
    }

    /// Constant upper solution of the maximum-principle bound.
    pub fn upper_constant(&self) -> T {
        self.theta.max(self.a.sup_norm() / self.b.lower_bound())
    }
}

/// A converged T-periodic space-time state.
#[derive(Debug, Clone)]
pub struct PeriodicState<T> {
    pub field: SpaceTimeField<T>,
    /// Sup distance between the first and last recorded time rows.
    pub residual: T,
    /// Number of period-map sweeps performed.
    pub iterations: usize,
}

#[derive(Debug, Clone)]
pub struct PeriodicOptions<T> {
    /// Stop when successive period snapshots differ by less than this.
    pub tol_per: T,
    pub max_sweeps: usize,
    /// A zero-limit state (theta = 0) below this is reported as Degenerate.
    pub tol_degenerate: T,
}

impl<T: Real> Default for PeriodicOptions<T> {
    fn default() -> Self {
        Self {
            tol_per: T::of(1e-8),
            max_sweeps: 5000,
            tol_degenerate: T::of(1e-6),
        }
    }
}

/// One-period nonlinear march (backward Euler diffusion + exact logistic
/// reaction), reused across sweeps.
struct PeriodSweeper<T> {
    stepper: Stepper1d<T>,
    a_grid: Vec<Vec<T>>,
    b_grid: Vec<Vec<T>>,
    left: LeftBc<T>,
    d: T,
    dt: T,
    nt: usize,
    theta: T,
}

impl<T: Real> PeriodSweeper<T> {
    fn new(p: &PeriodicBvp<T>) -> Self {
        let period = p.a.period();
        let nt = (period / p.dt).round().to_usize().unwrap().max(1);
        let dt = period / T::from_usize(nt).unwrap();
        let dx = p.ell / T::from_usize(p.nx).unwrap();
        let xs = uniform_axis(p.ell, p.nx);
        let sample = |c: &PeriodicCoefficient<T>| -> Vec<Vec<T>> {
            (0..nt)
                .map(|i| {
                    let t = dt * (T::from_usize(i).unwrap() + T::half());
                    xs.iter().map(|&x| c.eval(t, x)).collect()
                })
                .collect()
        };
        let left = if p.bc.is_dirichlet() {
            LeftBc::Dirichlet
        } else {
            LeftBc::Robin {
                ratio: p.bc.alpha() / p.bc.beta(),
            }
        };
        Self {
            stepper: Stepper1d::new(p.nx, dx, T::one()),
            a_grid: sample(&p.a),
            b_grid: sample(&p.b),
            left,
            d: p.d,
            dt,
            nt,
            theta: p.theta,
        }
    }

    fn sweep(&mut self, w: &mut [T], mut record: Option<&mut Vec<Vec<T>>>) {
        if let Some(rows) = record.as_deref_mut() {
            rows.push(w.to_vec());
        }
        for i in 0..self.nt {
            let a_row = std::mem::take(&mut self.a_grid[i]);
            let b_row = std::mem::take(&mut self.b_grid[i]);
            self.stepper.step(
                w,
                &StepInputs {
                    dt: self.dt,
                    nu: self.d,
                    left: self.left,
                    right_value: self.theta,
                    advection: None,
                    reaction: Some((&a_row, &b_row)),
                    splitting: Splitting::Lie,
                },
            );
            self.a_grid[i] = a_row;
            self.b_grid[i] = b_row;
            if let Some(rows) = record.as_deref_mut() {
                rows.push(w.to_vec());
            }
        }
    }
}

fn sup_diff<T: Real>(x: &[T], y: &[T]) -> T {
    x.iter()
        .zip(y)
        .map(|(&a, &b)| (a - b).abs())
        .fold(T::zero(), T::max)
}

/// Monotone period-map iteration from the constant upper solution: the
/// period snapshots decrease and converge to the maximal T-periodic solution.
pub fn solve_periodic_bvp<T: Real>(
    p: &PeriodicBvp<T>,
    opts: &PeriodicOptions<T>,
) -> Result<PeriodicState<T>> {
    let mut sweeper = PeriodSweeper::new(p);
    let upper = p.upper_constant();
    let mut w = vec![upper; p.nx + 1];
    w[p.nx] = p.theta;
    if p.bc.is_dirichlet() {
        w[0] = T::zero();
    }

    let mut prev = w.clone();
    let mut iterations = 0;
    let mut converged = false;
    let mut diff = T::infinity();
    for _ in 0..opts.max_sweeps {
        sweeper.sweep(&mut w, None);
        iterations += 1;
        let prev_max = prev.iter().fold(T::zero(), |m, &x| m.max(x));
        let new_max = w.iter().fold(T::zero(), |m, &x| m.max(x));
        if new_max > prev_max + T::of(1e-12) {
            return Err(Error::MonotonicityViolation(format!(
                "period snapshot max increased from {prev_max} to {new_max} at sweep {iterations}"
            )));
        }
        diff = sup_diff(&w, &prev);
        if diff < opts.tol_per {
            converged = true;
            break;
        }
        prev.copy_from_slice(&w);
    }
    if !converged {
        return Err(Error::NoConvergence {
            iterations,
            last: w
                .iter()
                .fold(T::zero(), |m, &x| m.max(x))
                .to_f64()
                .unwrap_or(f64::NAN),
            residual: diff.to_f64().unwrap_or(f64::NAN),
        });
    }

    let max_val = w.iter().fold(T::zero(), |m, &x| m.max(x));
    if p.theta == T::zero() && max_val < opts.tol_degenerate {
        return Err(Error::Degenerate);
    }

    // record the converged period
    let mut rows = Vec::with_capacity(sweeper.nt + 1);
    sweeper.sweep(&mut w, Some(&mut rows));
    let residual = sup_diff(&rows[0], &rows[rows.len() - 1]);
    let period = p.a.period();
    Ok(PeriodicState {
        field: SpaceTimeField {
            ts: uniform_axis(period, sweeper.nt),
            xs: uniform_axis(p.ell, p.nx),
            values: rows,
        },
        residual,
        iterations,
    })
}

#[derive(Debug, Clone)]
pub struct HalflineOptions<T> {
    /// Starting truncation length.
    pub l0: T,
    /// Largest truncation length before giving up.
    pub l_max: T,
    /// Nodes per unit length (dx is kept fixed across the ladder so nodes
    /// are shared).
    pub nodes_per_unit: usize,
    pub dt: T,
    /// Truncation tolerance on the inner half-domain.
    pub tol_trunc: T,
    /// Slack factor widening the asymptotic band.
    pub band_slack: T,
    pub periodic: PeriodicOptions<T>,
}

impl<T: Real> HalflineOptions<T> {
    pub fn new(period: T) -> Self {
        Self {
            l0: T::of(10.0),
            l_max: T::of(160.0),
            nodes_per_unit: 32,
            dt: period / T::of(200.0),
            tol_trunc: T::of(1e-5),
            band_slack: T::of(0.2),
            periodic: PeriodicOptions::default(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct HalflineState<T> {
    pub state: PeriodicState<T>,
    pub l_final: T,
    pub tail_band_ok: bool,
    /// Worst observed `U/x^rho` over the checked tail region.
    pub tail_range: (T, T),
}

/// Half-line periodic state by truncation: solve the zero-Dirichlet problem
/// on increasing lengths `L, 2L, ...` until the inner half-domain stops
/// moving, then check the declared asymptotic band on the tail.
pub fn solve_halfline_state<T: Real>(
    d: T,
    a: &PeriodicCoefficient<T>,
    b: &PeriodicCoefficient<T>,
    bc: RobinBc<T>,
    profile: &AsymptoticProfile<T>,
    opts: &HalflineOptions<T>,
) -> Result<HalflineState<T>> {
    let solve_at = |ell: T| -> Result<PeriodicState<T>> {
        let nx = (T::from_usize(opts.nodes_per_unit).unwrap() * ell)
            .round()
            .to_usize()
            .unwrap()
            .max(16);
        let p = PeriodicBvp::with_grid(
            d,
            a.clone(),
            b.clone(),
            bc,
            ell,
            T::zero(),
            nx,
            opts.dt,
        )?;
        solve_periodic_bvp(&p, &opts.periodic)
    };

    let mut ell = opts.l0;
    let mut current = solve_at(ell)?;
    loop {
        let next_ell = ell * T::two();
        if next_ell > opts.l_max * (T::one() + T::of(1e-12)) {
            return Err(Error::NoConvergence {
                iterations: 0,
                last: ell.to_f64().unwrap_or(f64::NAN),
                residual: f64::NAN,
            });
        }
        let next = solve_at(next_ell)?;

        // shared nodes: dx is fixed, so node j of the shorter run is node j
        // of the longer one; times coincide since dt is fixed
        let n_shared = current.field.xs.len();
        let mut increase_ok = true;
        let mut inner_diff = T::zero();
        let n_inner = n_shared / 2;
        for (row_s, row_l) in current.field.values.iter().zip(&next.field.values) {
            for j in 0..n_shared {
                if row_l[j] < row_s[j] - T::of(1e-10) {
                    increase_ok = false;
                }
                if j <= n_inner {
                    inner_diff = inner_diff.max((row_l[j] - row_s[j]).abs());
                }
            }
        }
        if !increase_ok {
            return Err(Error::MonotonicityViolation(format!(
                "truncated state decreased when extending L from {ell} to {next_ell}"
            )));
        }
        if inner_diff < opts.tol_trunc {
            current = next;
            ell = next_ell;
            break;
        }
        current = next;
        ell = next_ell;
    }

    // asymptotic band check on [L/2, L - boundary layer]
    let period = a.period();
    let n_t = 64;
    let sample_min_max = |f: &dyn Fn(T) -> T| -> (T, T) {
        let mut lo = T::infinity();
        let mut hi = T::neg_infinity();
        for i in 0..=n_t {
            let t = period * T::from_usize(i).unwrap() / T::from_usize(n_t).unwrap();
            let v = f(t);
            lo = lo.min(v);
            hi = hi.max(v);
        }
        (lo, hi)
    };
    let (a_inf_min, _) = sample_min_max(&|t| profile.a_inf(t));
    let (_, a_sup_max) = sample_min_max(&|t| profile.a_sup(t));
    let (b_inf_min, _) = sample_min_max(&|t| profile.b_inf(t));
    let (_, b_sup_max) = sample_min_max(&|t| profile.b_sup(t));
    let band_lo = (a_inf_min / b_sup_max) * (T::one() - opts.band_slack);
    let band_hi = (a_sup_max / b_inf_min) * (T::one() + opts.band_slack);

    // the artificial Dirichlet end contaminates a layer of width O(sqrt(d/a))
    let layer = T::of(6.0) * (d / a_inf_min).sqrt();
    let x_lo = ell * T::half();
    let x_hi = ell - layer;
    let mut tail_lo = T::infinity();
    let mut tail_hi = T::neg_infinity();
    if x_hi > x_lo {
        for (i, row) in current.field.values.iter().enumerate() {
            if i + 1 == current.field.values.len() {
                break; // last row duplicates the first by periodicity
            }
            for (j, &x) in current.field.xs.iter().enumerate() {
                if x >= x_lo && x <= x_hi {
                    let scaled = row[j] / x.powf(profile.rho);
                    tail_lo = tail_lo.min(scaled);
                    tail_hi = tail_hi.max(scaled);
                }
            }
        }
    }
    let tail_band_ok =
        x_hi > x_lo && tail_lo >= band_lo && tail_hi <= band_hi && tail_lo.is_finite();
    if !tail_band_ok {
        return Err(Error::TailOutOfBand(format!(
            "tail range [{tail_lo}, {tail_hi}] outside band [{band_lo}, {band_hi}] at L={ell}"
        )));
    }

    Ok(HalflineState {
        state: current,
        l_final: ell,
        tail_band_ok,
        tail_range: (tail_lo, tail_hi),
    })
}

/// Positive T-periodic orbit of a scalar ODE, sampled on a uniform grid.
#[derive(Debug, Clone)]
pub struct PeriodicOrbit<T> {
    pub period: T,
    /// Values at `n+1` uniform times including both endpoints.
    pub values: Vec<T>,
}

impl<T: Real> PeriodicOrbit<T> {
    pub fn eval(&self, t: T) -> T {
        let n = self.values.len() - 1;
        let tau = (t / self.period).fract();
        let tau = if tau < T::zero() { tau + T::one() } else { tau };
        let pos = tau * T::from_usize(n).unwrap();
        let j = pos.floor().to_usize().unwrap().min(n - 1);
        let f = pos - T::from_usize(j).unwrap();
        self.values[j] * (T::one() - f) + self.values[j + 1] * f
    }

    pub fn mean(&self) -> T {
        let n = self.values.len() - 1;
        let inner: T = self.values[1..n].iter().copied().sum();
        (inner + (self.values[0] + self.values[n]) * T::half()) / T::from_usize(n).unwrap()
    }

    pub fn min(&self) -> T {
        self.values.iter().copied().fold(T::infinity(), T::min)
    }

    pub fn max(&self) -> T {
        self.values.iter().copied().fold(T::neg_infinity(), T::max)
    }
}

/// Unique positive T-periodic solution of `v' = p(t) v - q(t) v^2` through
/// the substitution `z = 1/v` (linear ODE), quadratures by the composite
/// trapezoid rule on `n` panels.
pub fn ode_periodic_logistic<T: Real>(
    p: &dyn Fn(T) -> T,
    q: &dyn Fn(T) -> T,
    period: T,
    n: usize,
) -> Result<PeriodicOrbit<T>> {
    if !(period > T::zero()) {
        return Err(Error::InvalidParameter(format!(
            "period must be positive: {period}"
        )));
    }
    if n < 8 {
        return Err(Error::InvalidParameter(format!(
            "quadrature grid too coarse: {n}"
        )));
    }
    let h = period / T::from_usize(n).unwrap();
    let ts: Vec<T> = (0..=n).map(|i| h * T::from_usize(i).unwrap()).collect();
    let ps: Vec<T> = ts.iter().map(|&t| p(t)).collect();
    let qs: Vec<T> = ts.iter().map(|&t| q(t)).collect();
    if qs.iter().any(|&v| !(v > T::zero())) {
        return Err(Error::InvalidParameter(
            "q must be positive on [0, T]".into(),
        ));
    }

    // cumulative P(t) = int_0^t p
    let mut cap_p = vec![T::zero(); n + 1];
    for i in 1..=n {
        cap_p[i] = cap_p[i - 1] + (ps[i - 1] + ps[i]) * T::half() * h;
    }
    let p_mean = cap_p[n] / period;
    if !(p_mean > T::zero()) {
        return Err(Error::NoPositivePeriodic);
    }

    // cumulative Q(t) = int_0^t q e^P
    let integrand: Vec<T> = (0..=n).map(|i| qs[i] * cap_p[i].exp()).collect();
    let mut cap_q = vec![T::zero(); n + 1];
    for i in 1..=n {
        cap_q[i] = cap_q[i - 1] + (integrand[i - 1] + integrand[i]) * T::half() * h;
    }

    let z0 = cap_q[n] / (cap_p[n].exp() - T::one());
    let values: Vec<T> = (0..=n)
        .map(|i| cap_p[i].exp() / (z0 + cap_q[i]))
        .collect();
    Ok(PeriodicOrbit { period, values })
}
