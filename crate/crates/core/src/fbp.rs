//! Free-boundary solver: front-fixing transform `y = x/h(t)`,
//! `w(t,y) = u(t,x)` turns the moving-habitat problem into a fixed-domain
//! parabolic equation with a metric diffusion factor and an advection term,
//! plus the explicit Stefan update of the front.

use crate::coefficients::{PeriodicCoefficient, RobinBc};
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::stepper::{right_slope, trapezoid, LeftBc, Splitting, StepInputs, Stepper1d};

/// Full parameter set for one trajectory.
#[derive(Debug, Clone)]
pub struct SolveParams<T: Real> {
    pub d: T,
    /// Stefan moving parameter; 0 freezes the boundary.
    pub mu: T,
    pub h0: T,
    pub bc: RobinBc<T>,
    pub a: PeriodicCoefficient<T>,
    pub b: PeriodicCoefficient<T>,
    /// Initial profile on the reference grid `y in [0,1]`, length `ny + 1`.
    pub u0: Vec<T>,
    pub ny: usize,
    /// Accepted time step (already reduced to the stability budget and
    /// snapped to divide the period).
    pub dt: T,
    pub t_end: T,
    /// Monitor cadence in steps.
    pub monitor_every: usize,
}

/// Default initial profile: compatible with the boundary operator at both
/// ends (`kappa*cos(pi y/2)` for Neumann-type, `kappa*sin(pi y)` for
/// Dirichlet).
pub fn default_u0<T: Real>(bc: RobinBc<T>, kappa: T, ny: usize) -> Vec<T> {
    let mut u0: Vec<T> = (0..=ny)
        .map(|i| {
            let y = T::from_usize(i).unwrap() / T::from_usize(ny).unwrap();
            if bc.is_dirichlet() {
                kappa * (T::pi() * y).sin()
            } else {
                kappa * (T::pi() * y * T::half()).cos()
            }
        })
        .collect();
    u0[ny] = T::zero();
    u0
}

impl<T: Real> SolveParams<T> {
    /// Validates and finalizes the parameters: checks the initial profile's
    /// sign and compatibility, reduces `dt` to the stability budget, and
    /// snaps it so an integer number of steps spans one period.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        d: T,
        mu: T,
        h0: T,
        bc: RobinBc<T>,
        a: PeriodicCoefficient<T>,
        b: PeriodicCoefficient<T>,
        mut u0: Vec<T>,
        ny: usize,
        dt: T,
        t_end: T,
        monitor_every: usize,
    ) -> Result<Self> {
        if !(d > T::zero()) {
            return Err(Error::InvalidParameter(format!("d must be positive: {d}")));
        }
        if !(mu >= T::zero()) {
            return Err(Error::InvalidParameter(format!(
                "mu must be nonnegative: {mu}"
            )));
        }
        if !(h0 > T::zero()) {
            return Err(Error::InvalidParameter(format!(
                "h0 must be positive: {h0}"
            )));
        }
        if ny < 16 {
            return Err(Error::InvalidParameter(format!("ny too small: {ny}")));
        }
        if u0.len() != ny + 1 {
            return Err(Error::InvalidParameter(format!(
                "u0 must have ny+1 = {} samples, got {}",
                ny + 1,
                u0.len()
            )));
        }
        if !(t_end >= T::zero()) {
            return Err(Error::InvalidParameter(format!(
                "t_end must be nonnegative: {t_end}"
            )));
        }
        if !(dt > T::zero()) {
            return Err(Error::InvalidParameter(format!("dt must be positive: {dt}")));
        }
        if a.period() != b.period() {
            return Err(Error::InvalidParameter(format!(
                "a and b must share the period: {} vs {}",
                a.period(),
                b.period()
            )));
        }
        if u0.iter().any(|&v| v < T::zero()) {
            return Err(Error::InvalidParameter(
                "u0 must be nonnegative".into(),
            ));
        }
        let u0_scale = u0.iter().fold(T::zero(), |m, &v| m.max(v)).max(T::one());
        if u0[ny].abs() <= T::of(1e-12) * u0_scale {
            u0[ny] = T::zero();
        } else {
            return Err(Error::InvalidParameter(format!(
                "u0 must vanish at the front: u0(1) = {}",
                u0[ny]
            )));
        }
        if u0[1..ny].iter().any(|&v| !(v > T::zero())) {
            return Err(Error::InvalidParameter(
                "u0 must be positive in the interior".into(),
            ));
        }
        let dy = T::one() / T::from_usize(ny).unwrap();
        // discrete compatibility B[u0](0) = 0
        let slope0 = crate::stepper::left_slope(&u0, dy) / h0;
        let compat = bc.alpha() * u0[0] - bc.beta() * slope0;
        let scale = u0.iter().fold(T::zero(), |m, &v| m.max(v)).max(T::one());
        if compat.abs() > T::of(0.05) * scale {
            return Err(Error::InvalidParameter(format!(
                "u0 incompatible with the boundary operator: B[u0](0) = {compat}"
            )));
        }

        let m_bound = bound_m(&u0, &a, &b);
        // stability budget: advection CFL (|xi| <= mu M / h0) and reaction
        // accuracy; the front only grows, so h0 is the conservative length
        let mut dt_eff = dt;
        if mu > T::zero() {
            let cfl = T::of(0.4) * dy * h0 / (mu * m_bound).max(T::of(1e-30));
            dt_eff = dt_eff.min(cfl);
        }
        let sup_a = a.sup_norm();
        if sup_a > T::zero() {
            dt_eff = dt_eff.min(T::half() / sup_a);
        }
        // snap so steps tile the period exactly (period-aligned snapshots)
        let period = a.period();
        let nt = (period / dt_eff).ceil().to_usize().unwrap().max(1);
        let dt_eff = period / T::from_usize(nt).unwrap();

        Ok(Self {
            d,
            mu,
            h0,
            bc,
            a,
            b,
            u0,
            ny,
            dt: dt_eff,
            t_end,
            monitor_every: monitor_every.max(1),
        })
    }

    /// A priori bound `M = max(||u0||_inf, sup a / b1)` of (2.2).
    pub fn m_bound(&self) -> T {
        bound_m(&self.u0, &self.a, &self.b)
    }
}

fn bound_m<T: Real>(u0: &[T], a: &PeriodicCoefficient<T>, b: &PeriodicCoefficient<T>) -> T {
    let u0_max = u0.iter().fold(T::zero(), |m, &v| m.max(v));
    u0_max.max(a.sup_norm() / b.lower_bound())
}

/// Instantaneous trajectory state on the reference grid.
#[derive(Debug, Clone)]
pub struct FbpState<T> {
    pub t: T,
    pub h: T,
    pub hprime: T,
    /// `w(t, y) = u(t, h y)`; `w[ny] = 0`.
    pub w: Vec<T>,
    /// Cumulative reaction integral for the Stefan identity.
    pub reaction_integral: T,
}

impl<T: Real> FbpState<T> {
    pub fn umax(&self) -> T {
        self.w.iter().fold(T::zero(), |m, &v| m.max(v))
    }

    /// Total mass `int_0^h u dx = h * int_0^1 w dy`.
    pub fn mass(&self, ny: usize) -> T {
        let dy = T::one() / T::from_usize(ny).unwrap();
        self.h * trapezoid(&self.w, dy)
    }
}

/// One monitor row; `residual` is the running Stefan-identity defect (0 when
/// the identity does not apply, i.e. non-Neumann BC or `mu = 0`).
#[derive(Debug, Clone, Copy)]
pub struct MonitorRow<T> {
    pub t: T,
    pub h: T,
    pub hprime: T,
    pub umax: T,
    pub mass: T,
    pub residual: T,
}

/// A completed run: monitor rows, period-aligned snapshots, final state.
#[derive(Debug, Clone)]
pub struct Trajectory<T> {
    pub monitors: Vec<MonitorRow<T>>,
    /// `(t, h, w)` recorded whenever `t` crosses a multiple of the period.
    pub snapshots: Vec<(T, T, Vec<T>)>,
    pub final_state: FbpState<T>,
    pub stopped_early: bool,
}

/// Time-marcher owning the scratch buffers; one instance per trajectory.
pub struct FbpSolver<T: Real> {
    params: SolveParams<T>,
    stepper: Stepper1d<T>,
    dy: T,
    m_bound: T,
    ys: Vec<T>,
    a_row: Vec<T>,
    b_row: Vec<T>,
    c_row: Vec<T>,
}

impl<T: Real> FbpSolver<T> {
    pub fn new(params: SolveParams<T>) -> Self {
        let ny = params.ny;
        let dy = T::one() / T::from_usize(ny).unwrap();
        let ys = (0..=ny)
            .map(|i| T::from_usize(i).unwrap() * dy)
            .collect();
        let m_bound = params.m_bound();
        Self {
            stepper: Stepper1d::new(ny, dy, T::one()),
            dy,
            m_bound,
            ys,
            a_row: vec![T::zero(); ny + 1],
            b_row: vec![T::zero(); ny + 1],
            c_row: vec![T::zero(); ny + 1],
            params,
        }
    }

    pub fn params(&self) -> &SolveParams<T> {
        &self.params
    }

    pub fn initial_state(&self) -> FbpState<T> {
        let mut w = self.params.u0.clone();
        if self.params.bc.is_dirichlet() {
            w[0] = T::zero();
        }
        FbpState {
            t: T::zero(),
            h: self.params.h0,
            hprime: self.front_speed(&w, self.params.h0),
            w,
            reaction_integral: T::zero(),
        }
    }

    /// Stefan condition: `h' = -mu w_y(t,1) / h` (3-point one-sided slope).
    fn front_speed(&self, w: &[T], h: T) -> T {
        -self.params.mu * right_slope(w, self.dy) / h
    }

    /// Advances one `dt` in place.
    pub fn step(&mut self, state: &mut FbpState<T>) -> Result<()> {
        let p = &self.params;
        let dt = p.dt;
        let h = state.h;
        let t = state.t;

        // (i) front velocity from the current profile
        let mut hprime = self.front_speed(&state.w, h);
        if hprime < -T::of(1e-8) {
            return Err(Error::FrontCollapse {
                t: t.to_f64().unwrap_or(f64::NAN),
                hprime: hprime.to_f64().unwrap_or(f64::NAN),
            });
        }
        hprime = hprime.max(T::zero());

        // (ii) explicit front update
        let h_new = h + dt * hprime;

        // coefficients frozen at (t, h y); transported velocity c = -xi
        for i in 0..=p.ny {
            let x = h * self.ys[i];
            self.a_row[i] = p.a.eval(t, x);
            self.b_row[i] = p.b.eval(t, x);
            self.c_row[i] = -self.ys[i] * hprime / h;
        }

        // (iii) advect (explicit upwind) + diffuse (implicit) + react (exact)
        let left = if p.bc.is_dirichlet() {
            LeftBc::Dirichlet
        } else {
            // alpha w0 - (beta/h) w_y(0) = 0 on the reference grid
            LeftBc::Robin {
                ratio: p.bc.alpha() * h_new / p.bc.beta(),
            }
        };
        self.stepper.step(
            &mut state.w,
            &StepInputs {
                dt,
                nu: p.d / (h_new * h_new),
                left,
                right_value: T::zero(),
                advection: Some(&self.c_row),
                reaction: Some((&self.a_row, &self.b_row)),
                splitting: Splitting::Lie,
            },
        );

        // invariant audit
        let mut wmin = T::infinity();
        let mut wmax = T::neg_infinity();
        for &v in state.w.iter() {
            wmin = wmin.min(v);
            wmax = wmax.max(v);
        }
        if wmin < -T::of(1e-12) || wmax > T::two() * self.m_bound || !wmax.is_finite() {
            return Err(Error::StabilityViolation {
                t: t.to_f64().unwrap_or(f64::NAN),
                detail: format!("w range [{wmin}, {wmax}] outside [0, 2M] with M={}", self.m_bound),
            });
        }

        // cumulative reaction integral int int (a u - b u^2) dx ds,
        // rectangle rule in time on the pre-step profile
        let mut f = vec![T::zero(); p.ny + 1];
        for i in 0..=p.ny {
            let u = state.w[i];
            f[i] = self.a_row[i] * u - self.b_row[i] * u * u;
        }
        state.reaction_integral += dt * h * trapezoid(&f, self.dy);

        state.t = t + dt;
        state.h = h_new;
        state.hprime = hprime;
        Ok(())
    }

    fn monitor_row(&self, state: &FbpState<T>, baseline: T) -> MonitorRow<T> {
        let p = &self.params;
        let mass = state.mass(p.ny);
        let residual = if p.bc.alpha() == T::zero() && p.mu > T::zero() {
            mass + (p.d / p.mu) * state.h - baseline - state.reaction_integral
        } else {
            T::zero()
        };
        MonitorRow {
            t: state.t,
            h: state.h,
            hprime: state.hprime,
            umax: state.umax(),
            mass,
            residual,
        }
    }

    /// Marches until `t_end` or until `stop` returns true; monitors at the
    /// configured cadence (plus first and last), snapshots at period marks.
    pub fn simulate(
        &mut self,
        stop: &mut dyn FnMut(&FbpState<T>) -> bool,
    ) -> Result<Trajectory<T>> {
        let mut state = self.initial_state();
        let p_dt = self.params.dt;
        let t_end = self.params.t_end;
        let every = self.params.monitor_every;
        let period = self.params.a.period();
        let steps_per_period = (period / p_dt).round().to_usize().unwrap().max(1);

        let baseline = if self.params.mu > T::zero() {
            state.mass(self.params.ny) + (self.params.d / self.params.mu) * state.h
        } else {
            T::zero()
        };

        let mut monitors = vec![self.monitor_row(&state, baseline)];
        let mut snapshots = vec![(state.t, state.h, state.w.clone())];
        let mut stopped_early = false;

        let total_steps = (t_end / p_dt).round().to_usize().unwrap_or(0);
        for k in 1..=total_steps {
            self.step(&mut state)?;
            let at_monitor = k % every == 0 || k == total_steps;
            if at_monitor {
                monitors.push(self.monitor_row(&state, baseline));
            }
            if k % steps_per_period == 0 {
                snapshots.push((state.t, state.h, state.w.clone()));
            }
            if stop(&state) {
                if !at_monitor {
                    monitors.push(self.monitor_row(&state, baseline));
                }
                stopped_early = true;
                break;
            }
        }

        Ok(Trajectory {
            monitors,
            snapshots,
            final_state: state,
            stopped_early,
        })
    }
}

/// Convenience: run to `t_end` with no extra stop rule.
pub fn simulate<T: Real>(params: SolveParams<T>) -> Result<Trajectory<T>> {
    FbpSolver::new(params).simulate(&mut |_| false)
}

/// Max over monitor rows of the discrete Stefan identity defect
/// `|[mass + (d/mu) h](t) - [.](0) - int int (a u - b u^2)|`.
pub fn stefan_identity_residual<T: Real>(
    traj: &Trajectory<T>,
    params: &SolveParams<T>,
) -> Result<T> {
    if params.bc.alpha() != T::zero() {
        return Err(Error::UnsupportedBc(format!(
            "the Stefan identity needs a zero-flux left end (alpha = 0), got alpha = {}",
            params.bc.alpha()
        )));
    }
    if !(params.mu > T::zero()) {
        return Err(Error::UnsupportedBc("mu must be positive".into()));
    }
    Ok(traj
        .monitors
        .iter()
        .fold(T::zero(), |m, r| m.max(r.residual.abs())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::PeriodicCoefficient;

    fn constant(value: f64) -> PeriodicCoefficient<f64> {
        PeriodicCoefficient::constant(value, 1.0).unwrap()
    }

    fn params(
        d: f64,
        mu: f64,
        h0: f64,
        bc: RobinBc<f64>,
        a: PeriodicCoefficient<f64>,
        b: PeriodicCoefficient<f64>,
        t_end: f64,
    ) -> SolveParams<f64> {
        let ny = 256;
        let u0 = default_u0(bc, 0.5, ny);
        SolveParams::new(d, mu, h0, bc, a, b, u0, ny, 1.0 / 200.0, t_end, 10).unwrap()
    }

    #[test]
    fn frozen_boundary_when_mu_is_zero() {
        let p = params(
            1.0,
            0.0,
            2.0,
            RobinBc::neumann(),
            constant(1.0),
            constant(1.0),
            3.0,
        );
        let traj = simulate(p).unwrap();
        for row in &traj.monitors {
            assert_eq!(row.h, 2.0);
            assert_eq!(row.hprime, 0.0);
        }
    }

    #[test]
    fn zero_length_run_returns_initial_state_only() {
        let p = params(
            1.0,
            1.0,
            2.0,
            RobinBc::neumann(),
            constant(1.0),
            constant(1.0),
            0.0,
        );
        let traj = simulate(p).unwrap();
        assert_eq!(traj.monitors.len(), 1);
        assert_eq!(traj.final_state.t, 0.0);
        assert_eq!(traj.monitors[0].residual, 0.0);
    }

    /// mu = 0, a = b = 0, Dirichlet: pure heat equation on the fixed domain;
    /// the max decays at the exact rate d (pi/h0)^2.
    #[test]
    fn heat_oracle_fixed_domain() {
        let h0 = 2.0;
        let p = params(
            1.0,
            0.0,
            h0,
            RobinBc::dirichlet(),
            constant(0.0),
            constant(0.0),
            0.5,
        );
        let kappa = 0.5;
        let traj = simulate(p).unwrap();
        let rate = std::f64::consts::PI.powi(2) / (h0 * h0);
        let exact = kappa * (-rate * 0.5f64).exp();
        let got = traj.final_state.umax();
        // backward Euler at dt = 5e-3: first-order in time
        assert!(
            (got - exact).abs() / exact < 0.05,
            "umax {got} vs exact {exact}"
        );
        // monotone decay of the max along monitors
        for pair in traj.monitors.windows(2) {
            assert!(pair[1].umax <= pair[0].umax + 1e-12);
        }
    }

    #[test]
    fn spreading_run_crosses_twice_hstar() {
        // h0 = 2 > h* = pi/2 for a = b = d = 1 Neumann: spreading for any mu
        let p = params(
            1.0,
            1.0,
            2.0,
            RobinBc::neumann(),
            constant(1.0),
            constant(1.0),
            30.0,
        );
        let m = p.m_bound();
        let mu = p.mu;
        let traj = simulate(p).unwrap();
        let hstar = std::f64::consts::FRAC_PI_2;
        assert!(
            traj.final_state.h > 2.0 * hstar,
            "h stalled at {}",
            traj.final_state.h
        );
        // invariants along the trajectory
        let dy = 1.0 / 256.0;
        for pair in traj.monitors.windows(2) {
            assert!(pair[1].h >= pair[0].h);
        }
        for row in &traj.monitors {
            assert!(row.umax <= m + 10.0 * dy, "umax {} vs M {m}", row.umax);
            assert!(row.hprime >= 0.0 && row.hprime <= mu * m + 1e-6);
        }
        // away from the front the density approaches a/b = 1
        let w = &traj.final_state.w;
        for (i, &v) in w.iter().enumerate() {
            let y = i as f64 / 256.0;
            if y < 0.5 {
                assert!((v - 1.0).abs() < 0.05, "y={y}: {v}");
            }
        }
    }

    #[test]
    fn vanishing_run_decays() {
        // h0 well below h*, tiny mu: the front stalls and u decays
        let p = params(
            1.0,
            1e-3,
            0.3 * std::f64::consts::FRAC_PI_2,
            RobinBc::neumann(),
            constant(1.0),
            constant(1.0),
            50.0,
        );
        let traj = simulate(p).unwrap();
        assert!(
            traj.final_state.hprime < 1e-6,
            "h' = {}",
            traj.final_state.hprime
        );
        assert!(
            traj.final_state.umax() < 1e-6,
            "umax = {}",
            traj.final_state.umax()
        );
        // positivity throughout
        for row in &traj.monitors {
            assert!(row.umax >= 0.0);
        }
    }

    #[test]
    fn stefan_identity_without_reaction() {
        // a = b = 0: mass + (d/mu) h is conserved exactly in the continuum
        let p = params(
            1.0,
            1.0,
            2.0,
            RobinBc::neumann(),
            constant(0.0),
            constant(0.0),
            1.0,
        );
        let traj = simulate(p.clone()).unwrap();
        let res = stefan_identity_residual(&traj, &p).unwrap();
        assert!(res < 1e-3, "residual {res}");
    }

    #[test]
    fn stefan_identity_rejects_nonzero_alpha() {
        let p = params(
            1.0,
            1.0,
            2.0,
            RobinBc::dirichlet(),
            constant(0.0),
            constant(0.0),
            0.1,
        );
        let traj = simulate(p.clone()).unwrap();
        let err = stefan_identity_residual(&traj, &p).unwrap_err();
        assert!(matches!(err, Error::UnsupportedBc(_)), "{err}");
    }

    #[test]
    fn stefan_identity_residual_shrinks_with_refinement() {
        // first-order convergence of the conservation defect
        let run = |ny: usize, dt: f64| {
            let bc = RobinBc::neumann();
            let u0 = default_u0(bc, 0.5, ny);
            let p = SolveParams::new(
                1.0,
                1.0,
                2.0,
                bc,
                constant(1.0),
                constant(1.0),
                u0,
                ny,
                dt,
                1.0,
                10,
            )
            .unwrap();
            let traj = simulate(p.clone()).unwrap();
            stefan_identity_residual(&traj, &p).unwrap()
        };
        let coarse = run(64, 1.0 / 100.0);
        let fine = run(256, 1.0 / 400.0);
        assert!(
            fine < 0.6 * coarse,
            "no refinement gain: coarse {coarse}, fine {fine}"
        );
    }

    #[test]
    fn comparison_principle_in_initial_data() {
        // doubling u0 cannot shrink the front or the solution
        let bc = RobinBc::neumann();
        let run = |kappa: f64| {
            let ny = 128;
            let u0 = default_u0(bc, kappa, ny);
            let p = SolveParams::new(
                1.0,
                1.0,
                1.0,
                bc,
                constant(1.0),
                constant(1.0),
                u0,
                ny,
                1.0 / 100.0,
                5.0,
                10,
            )
            .unwrap();
            simulate(p).unwrap()
        };
        let small = run(0.25);
        let large = run(0.5);
        let slack = 1e-2; // O(dy + dt) discretization slack
        for (rs, rl) in small.monitors.iter().zip(&large.monitors) {
            assert!(rl.h >= rs.h - slack, "t={}: {} < {}", rs.t, rl.h, rs.h);
            assert!(rl.umax >= rs.umax - slack);
        }
    }

    #[test]
    fn manufactured_solution_convergence_orders() {
        // mu = 0, b = 0, a = d (pi/(2 h0))^2 - 1 makes
        // u = e^{-t} cos(pi x /(2 h0)) exact (Neumann left, Dirichlet front)
        let h0 = 1.0;
        let d = 1.0;
        let a_const = d * (std::f64::consts::PI / (2.0 * h0)).powi(2) - 1.0;
        let bc = RobinBc::neumann();
        let err_at = |ny: usize, dt: f64, t_end: f64| -> f64 {
            let u0: Vec<f64> = (0..=ny)
                .map(|i| {
                    let y = i as f64 / ny as f64;
                    (std::f64::consts::FRAC_PI_2 * y).cos()
                })
                .collect();
            let p = SolveParams::new(
                d,
                0.0,
                h0,
                bc,
                constant(a_const),
                constant(0.0),
                u0,
                ny,
                dt,
                t_end,
                1000,
            )
            .unwrap();
            let traj = simulate(p).unwrap();
            let decay = (-t_end as f64).exp();
            traj.final_state
                .w
                .iter()
                .enumerate()
                .map(|(i, &v)| {
                    let y = i as f64 / ny as f64;
                    (v - decay * (std::f64::consts::FRAC_PI_2 * y).cos()).abs()
                })
                .fold(0.0, f64::max)
        };
        // temporal order (spatial error negligible at ny = 512)
        let e_dt_coarse = err_at(512, 0.02, 0.5);
        let e_dt_fine = err_at(512, 0.005, 0.5);
        let p_t = (e_dt_coarse / e_dt_fine).log2() / 2.0;
        assert!(p_t >= 0.9, "temporal order {p_t}");
        // spatial order: run with tiny dt so time error is negligible
        let e_dx_coarse = err_at(16, 5e-6, 0.05);
        let e_dx_fine = err_at(32, 5e-6, 0.05);
        let p_x = (e_dx_coarse / e_dx_fine).log2();
        assert!(p_x >= 1.9, "spatial order {p_x}");
    }

    #[test]
    fn rejects_incompatible_initial_data() {
        let bc = RobinBc::dirichlet();
        let ny = 64;
        // cos profile does not vanish at x = 0: incompatible with Dirichlet
        let mut u0: Vec<f64> = (0..=ny)
            .map(|i| {
                let y = i as f64 / ny as f64;
                (std::f64::consts::FRAC_PI_2 * y).cos()
            })
            .collect();
        u0[ny] = 0.0;
        let err = SolveParams::new(
            1.0,
            1.0,
            1.0,
            bc,
            constant(1.0),
            constant(1.0),
            u0,
            ny,
            1e-2,
            1.0,
            10,
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvalidParameter(_)), "{err}");
    }
}
