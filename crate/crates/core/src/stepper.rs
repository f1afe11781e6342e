//! Shared semi-implicit stepper for the 1-D parabolic problems: theta-scheme
//! diffusion (tridiagonal solve), explicit upwind advection, and an exact
//! per-node logistic reaction sub-step.

use crate::scalar::Real;
use crate::tridiag::TridiagSolver;

/// Left boundary condition at node 0.
#[derive(Debug, Clone, Copy)]
pub enum LeftBc<T> {
    /// Homogeneous Dirichlet: `w(0) = 0`.
    Dirichlet,
    /// Robin via a second-order ghost node: `w_x(0) = ratio * w(0)`.
    ///
    /// For `B[u] = alpha*u - beta*u_x = 0` the ratio is `alpha/beta`; on the
    /// front-fixed grid it picks up a factor `h`.
    Robin { ratio: T },
}

/// How the reaction sub-step is composed with diffusion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Splitting {
    /// Diffusion then full reaction step. Monotone with theta = 1.
    Lie,
    /// Half reaction, diffusion, half reaction. Second order with theta = 1/2.
    Strang,
}

/// Per-step inputs. Coefficient slices are per-node (length `n + 1`).
pub struct StepInputs<'a, T> {
    pub dt: T,
    /// Diffusion coefficient (already including any metric factor).
    pub nu: T,
    pub left: LeftBc<T>,
    /// Dirichlet value at the right end after the step.
    pub right_value: T,
    /// Signed advection velocity `c` in `w_t + c*w_x = ...`; `None` disables
    /// the advection sub-step.
    pub advection: Option<&'a [T]>,
    /// Logistic reaction coefficients `(a, b)` frozen over the step.
    pub reaction: Option<(&'a [T], &'a [T])>,
    pub splitting: Splitting,
}

/// Exact solution map of `w' = a*w - b*w^2` over one step.
///
/// Unconditionally positivity-preserving for `w >= 0`, `b >= 0`.
pub fn logistic_step<T: Real>(w: T, a: T, b: T, dt: T) -> T {
    if w == T::zero() {
        return T::zero();
    }
    if (a * dt).abs() < T::of(1e-12) {
        // degenerate growth-free limit
        w / (T::one() + b * w * dt)
    } else {
        w * a / (b * w + (a - b * w) * (-a * dt).exp())
    }
}

/// Uniform-grid stepper on `[0, len]` with `n` intervals (`n + 1` nodes).
pub struct Stepper1d<T> {
    n: usize,
    dx: T,
    theta: T,
    solver: TridiagSolver<T>,
    lower: Vec<T>,
    diag: Vec<T>,
    upper: Vec<T>,
    rhs: Vec<T>,
    sol: Vec<T>,
    scratch: Vec<T>,
}

impl<T: Real> Stepper1d<T> {
    /// `theta = 1` gives backward Euler, `theta = 1/2` Crank-Nicolson.
    pub fn new(n: usize, dx: T, theta: T) -> Self {
        assert!(n >= 3, "need at least 3 intervals");
        Self {
            n,
            dx,
            theta,
            solver: TridiagSolver::new(n),
            lower: vec![T::zero(); n],
            diag: vec![T::zero(); n],
            upper: vec![T::zero(); n],
            rhs: vec![T::zero(); n],
            sol: vec![T::zero(); n],
            scratch: vec![T::zero(); n + 1],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dx(&self) -> T {
        self.dx
    }

    /// Advances `w` (length `n + 1`) by one step in place.
    pub fn step(&mut self, w: &mut [T], inp: &StepInputs<T>) {
        debug_assert_eq!(w.len(), self.n + 1);

        if let Some(c) = inp.advection {
            self.advect(w, c, inp.dt);
        }

        match inp.splitting {
            Splitting::Lie => {
                self.diffuse(w, inp);
                if let Some((a, b)) = inp.reaction {
                    Self::react(w, a, b, inp.dt);
                }
            }
            Splitting::Strang => {
                if let Some((a, b)) = inp.reaction {
                    Self::react(w, a, b, inp.dt * T::half());
                }
                self.diffuse(w, inp);
                if let Some((a, b)) = inp.reaction {
                    Self::react(w, a, b, inp.dt * T::half());
                }
            }
        }

        // re-impose boundary values after the sub-steps
        w[self.n] = inp.right_value;
        if matches!(inp.left, LeftBc::Dirichlet) {
            w[0] = T::zero();
        }
    }

    fn react(w: &mut [T], a: &[T], b: &[T], dt: T) {
        for i in 0..w.len() {
            w[i] = logistic_step(w[i], a[i], b[i], dt);
        }
    }

    /// Explicit first-order upwind for `w_t + c*w_x = 0` on interior nodes.
    fn advect(&mut self, w: &mut [T], c: &[T], dt: T) {
        let n = self.n;
        let r = dt / self.dx;
        let prev = &mut self.scratch;
        prev.copy_from_slice(w);
        for i in 1..n {
            let ci = c[i];
            let dwdx = if ci >= T::zero() {
                prev[i] - prev[i - 1]
            } else {
                prev[i + 1] - prev[i]
            };
            w[i] = prev[i] - r * ci * dwdx;
        }
    }

    fn diffuse(&mut self, w: &mut [T], inp: &StepInputs<T>) {
        let n = self.n;
        let r = inp.dt * inp.nu / (self.dx * self.dx);
        let th = self.theta;
        let ex = T::one() - th;
        let two = T::two();

        let (first, robin_ratio) = match inp.left {
            LeftBc::Dirichlet => (1usize, T::zero()),
            LeftBc::Robin { ratio } => (0usize, ratio),
        };
        let m = n - first; // unknowns: nodes first..n-1

        let lower = &mut self.lower[..m];
        let diag = &mut self.diag[..m];
        let upper = &mut self.upper[..m];
        let rhs = &mut self.rhs[..m];

        for (row, i) in (first..n).enumerate() {
            if i == 0 {
                // ghost node: w[-1] = w[1] - 2*dx*ratio*w[0]
                let g = T::one() + self.dx * robin_ratio;
                lower[row] = T::zero();
                diag[row] = T::one() + two * th * r * g;
                upper[row] = -two * th * r;
                rhs[row] = w[0] + ex * r * (two * w[1] - two * g * w[0]);
            } else {
                lower[row] = -th * r;
                diag[row] = T::one() + two * th * r;
                upper[row] = -th * r;
                let wl = w[i - 1];
                let wr = w[i + 1];
                rhs[row] = w[i] + ex * r * (wl - two * w[i] + wr);
                if i == 1 && first == 1 {
                    // homogeneous left Dirichlet: nothing to add
                    lower[row] = T::zero();
                }
                if i == n - 1 {
                    upper[row] = T::zero();
                    rhs[row] += th * r * inp.right_value;
                    // the explicit part above already used the old w[n]
                }
            }
        }

        let sol = &mut self.sol[..m];
        self.solver.solve(lower, diag, upper, rhs, sol);
        w[first..n].copy_from_slice(sol);
    }
}

/// Second-order one-sided derivative at the right end (3-point stencil).
pub fn right_slope<T: Real>(w: &[T], dx: T) -> T {
    let n = w.len() - 1;
    (T::of(3.0) * w[n] - T::of(4.0) * w[n - 1] + w[n - 2]) / (T::two() * dx)
}

/// Second-order one-sided derivative at the left end.
pub fn left_slope<T: Real>(w: &[T], dx: T) -> T {
    (-T::of(3.0) * w[0] + T::of(4.0) * w[1] - w[2]) / (T::two() * dx)
}

/// Composite trapezoid of nodal values on a uniform grid.
pub fn trapezoid<T: Real>(w: &[T], dx: T) -> T {
    let inner: T = w[1..w.len() - 1].iter().copied().sum();
    (inner + (w[0] + w[w.len() - 1]) * T::half()) * dx
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn logistic_step_matches_closed_form() {
        // w' = w - w^2, w(0)=0.5 -> w(t) = 1/(1+e^{-t})
        let w1 = logistic_step(0.5, 1.0, 1.0, 0.3);
        assert_relative_eq!(w1, 1.0 / (1.0 + (-0.3f64).exp()), epsilon = 1e-14);
        // a = 0 limit: w' = -b w^2 -> w(t) = w0/(1+b w0 t)
        let w2 = logistic_step(0.5, 0.0, 2.0, 0.3);
        assert_relative_eq!(w2, 0.5 / (1.0 + 2.0 * 0.5 * 0.3), epsilon = 1e-10);
        // b = 0: pure exponential
        let w3 = logistic_step(0.5, -2.0, 0.0, 0.3);
        assert_relative_eq!(w3, 0.5 * (-0.6f64).exp(), epsilon = 1e-14);
        // positivity under strongly negative growth
        assert!(logistic_step(1e-8, -50.0, 1.0, 1.0) > 0.0);
    }

    /// Heat equation on [0, pi], Dirichlet both ends: u = e^{-t} sin x.
    #[test]
    fn heat_dirichlet_decay_rate() {
        let n = 128;
        let dx = std::f64::consts::PI / n as f64;
        let mut st = Stepper1d::new(n, dx, 0.5);
        let mut w: Vec<f64> = (0..=n).map(|i| (i as f64 * dx).sin()).collect();
        let dt = 1e-3;
        let steps = 500;
        for _ in 0..steps {
            st.step(
                &mut w,
                &StepInputs {
                    dt,
                    nu: 1.0,
                    left: LeftBc::Dirichlet,
                    right_value: 0.0,
                    advection: None,
                    reaction: None,
                    splitting: Splitting::Lie,
                },
            );
        }
        let t = dt * steps as f64;
        for i in 0..=n {
            let exact = (-t as f64).exp() * (i as f64 * dx).sin();
            assert!(
                (w[i] - exact).abs() < 5e-5,
                "node {i}: {} vs {exact}",
                w[i]
            );
        }
    }

    /// Neumann left on [0, pi/2]: u = e^{-t} cos x satisfies u_x(0) = 0.
    #[test]
    fn heat_neumann_left_decay_rate() {
        let n = 128;
        let len = std::f64::consts::FRAC_PI_2;
        let dx = len / n as f64;
        let mut st = Stepper1d::new(n, dx, 0.5);
        let mut w: Vec<f64> = (0..=n).map(|i| (i as f64 * dx).cos()).collect();
        let dt = 1e-3;
        for _ in 0..500 {
            st.step(
                &mut w,
                &StepInputs {
                    dt,
                    nu: 1.0,
                    left: LeftBc::Robin { ratio: 0.0 },
                    right_value: 0.0,
                    advection: None,
                    reaction: None,
                    splitting: Splitting::Lie,
                },
            );
        }
        let t = 0.5;
        for i in 0..=n {
            let exact = (-t as f64).exp() * (i as f64 * dx).cos();
            assert!(
                (w[i] - exact).abs() < 5e-5,
                "node {i}: {} vs {exact}",
                w[i]
            );
        }
    }

    /// Pure advection of a smooth bump keeps values bounded and moves it the
    /// right way under the upwind CFL.
    #[test]
    fn upwind_advection_is_stable_and_directional() {
        let n = 200;
        let dx = 1.0 / n as f64;
        let mut st = Stepper1d::new(n, dx, 1.0);
        let bump = |x: f64| ((-(x - 0.3) * (x - 0.3)) / 0.005f64).exp();
        let mut w: Vec<f64> = (0..=n).map(|i| bump(i as f64 * dx)).collect();
        let c = vec![1.0; n + 1];
        let dt = 0.4 * dx;
        for _ in 0..250 {
            st.step(
                &mut w,
                &StepInputs {
                    dt,
                    nu: 0.0,
                    left: LeftBc::Dirichlet,
                    right_value: 0.0,
                    advection: Some(&c),
                    reaction: None,
                    splitting: Splitting::Lie,
                },
            );
        }
        // travelled distance 0.1: peak should now be right of 0.35
        let (imax, _) = w
            .iter()
            .enumerate()
            .fold((0, f64::MIN), |acc, (i, &v)| if v > acc.1 { (i, v) } else { acc });
        assert!(imax as f64 * dx > 0.35);
        assert!(w.iter().all(|&v| (-1e-12..=1.0 + 1e-12).contains(&v)));
    }

    #[test]
    fn one_sided_slopes_are_second_order() {
        let n = 32;
        let dx = 1.0 / n as f64;
        let w: Vec<f64> = (0..=n).map(|i| (i as f64 * dx).powi(2)).collect();
        // d/dx x^2 = 2 at x=1, 0 at x=0; stencils are exact for quadratics
        assert_relative_eq!(right_slope(&w, dx), 2.0, epsilon = 1e-12);
        assert_relative_eq!(left_slope(&w, dx), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn trapezoid_integrates_linear_exactly() {
        let n = 10;
        let dx = 0.1;
        let w: Vec<f64> = (0..=n).map(|i| i as f64 * dx).collect();
        assert_relative_eq!(trapezoid(&w, dx), 0.5, epsilon = 1e-14);
    }
}
