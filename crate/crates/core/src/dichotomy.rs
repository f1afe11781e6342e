//! Spreading-vanishing classification and the sharp threshold in the moving
//! parameter: stop rules built on the eigenvalue criterion (front past the
//! critical length) and on sustained front stall with density decay.

use crate::coefficients::{PeriodicCoefficient, RobinBc};
use crate::eigen::{
    classify_d, find_hstar, EigenOptions, HstarOptions, SigmaMembership,
};
use crate::error::{Error, Result};
use crate::fbp::{default_u0, FbpSolver, SolveParams, Trajectory};
use crate::scalar::Real;
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Spreading,
    Vanishing,
    Undecided,
}

/// Which rule produced the verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Evidence {
    /// The front passed `h* + delta`, where `lambda1 < 0` holds by
    /// monotonicity, so the front cannot stay bounded.
    EigenNegativeAtCurrentFront,
    /// Front velocity and density stayed below tolerance for a full period.
    FrontStalledAndDensityDecayed,
    BudgetExhausted,
}

#[derive(Debug, Clone)]
pub struct Classification<T> {
    pub verdict: Verdict,
    pub evidence: Evidence,
    pub t_decided: Option<T>,
    pub h_at_decision: Option<T>,
    /// Critical length used by the stop rule, when one exists.
    pub hstar: Option<T>,
    pub diagnostic: String,
}

/// Everything needed to launch trajectories except the moving parameter.
#[derive(Debug, Clone)]
pub struct ProblemSetup<T: Real> {
    pub d: T,
    pub h0: T,
    pub bc: RobinBc<T>,
    pub a: PeriodicCoefficient<T>,
    pub b: PeriodicCoefficient<T>,
    /// Amplitude of the default compatible initial profile.
    pub kappa: T,
    pub ny: usize,
    pub dt: T,
}

impl<T: Real> ProblemSetup<T> {
    pub fn solve_params(&self, mu: T, t_end: T) -> Result<SolveParams<T>> {
        SolveParams::new(
            self.d,
            mu,
            self.h0,
            self.bc,
            self.a.clone(),
            self.b.clone(),
            default_u0(self.bc, self.kappa, self.ny),
            self.ny,
            self.dt,
            t_end,
            10,
        )
    }
}

#[derive(Debug, Clone)]
pub struct ClassifyOptions<T> {
    /// Simulated-time budget in periods (wall-clock free, deterministic).
    pub budget_periods: usize,
    /// Spreading margin over h*, relative to h*.
    pub delta_rel: T,
    pub tol_front: T,
    pub tol_density: T,
    /// Largest length probed when searching for `lambda1 < 0`.
    pub l_max: T,
    pub hstar: HstarOptions<T>,
}

impl<T: Real> Default for ClassifyOptions<T> {
    fn default() -> Self {
        Self {
            budget_periods: 200,
            delta_rel: T::of(1e-2),
            tol_front: T::of(1e-6),
            tol_density: T::of(1e-6),
            l_max: T::of(256.0),
            hstar: HstarOptions::default(),
        }
    }
}

/// Locates h* for the setup, or `None` if no probed length up to `l_max`
/// has a negative eigenvalue (then spreading is impossible at this scale).
pub fn locate_hstar<T: Real>(
    setup: &ProblemSetup<T>,
    opts: &ClassifyOptions<T>,
) -> Result<Option<T>> {
    let eigen_opts = EigenOptions {
        record: false,
        ..Default::default()
    };
    let lam = |ell: T| -> Result<T> {
        Ok(classify_d(ell, &setup.a, setup.bc, setup.d, &eigen_opts)?.lambda1)
    };

    // walk up from h0 until lambda1 < 0
    let mut ell_neg = setup.h0;
    let mut found_neg = false;
    while ell_neg <= opts.l_max * (T::one() + T::of(1e-12)) {
        if lam(ell_neg)? < T::zero() {
            found_neg = true;
            break;
        }
        ell_neg = ell_neg * T::two();
    }
    if !found_neg {
        return Ok(None);
    }
    // walk down until lambda1 > 0 (always happens: d pi^2/l^2 dominates)
    let mut ell_pos = ell_neg * T::half();
    while lam(ell_pos)? < T::zero() {
        ell_pos = ell_pos * T::half();
        if ell_pos < T::of(1e-6) {
            return Err(Error::BracketFailure(
                "could not find a length with positive lambda1".into(),
            ));
        }
    }
    let r = find_hstar(
        setup.d,
        &setup.a,
        setup.bc,
        (ell_pos, ell_neg),
        &opts.hstar,
    )?;
    Ok(Some(r.hstar))
}

/// Classifies one trajectory given a precomputed h* (avoids re-deriving it
/// inside bisection loops).
pub fn classify_with_hstar<T: Real>(
    setup: &ProblemSetup<T>,
    mu: T,
    hstar: T,
    opts: &ClassifyOptions<T>,
) -> Result<(Classification<T>, Trajectory<T>)> {
    let period = setup.a.period();
    let t_end = period * T::from_usize(opts.budget_periods).unwrap();
    let params = setup.solve_params(mu, t_end)?;
    let mut solver = FbpSolver::new(params);

    let h_spread = hstar * (T::one() + opts.delta_rel);
    let mut fired: Option<Evidence> = None;
    let mut stall_start: Option<T> = None;
    let traj = solver.simulate(&mut |state| {
        if state.h > h_spread {
            fired = Some(Evidence::EigenNegativeAtCurrentFront);
            return true;
        }
        if state.hprime < opts.tol_front && state.umax() < opts.tol_density {
            match stall_start {
                None => stall_start = Some(state.t),
                Some(start) => {
                    if state.t - start >= period {
                        fired = Some(Evidence::FrontStalledAndDensityDecayed);
                        return true;
                    }
                }
            }
        } else {
            stall_start = None;
        }
        false
    })?;

    let s = &traj.final_state;
    let classification = match fired {
        Some(Evidence::EigenNegativeAtCurrentFront) => Classification {
            verdict: Verdict::Spreading,
            evidence: Evidence::EigenNegativeAtCurrentFront,
            t_decided: Some(s.t),
            h_at_decision: Some(s.h),
            hstar: Some(hstar),
            diagnostic: format!("front passed h* + delta = {h_spread}"),
        },
        Some(Evidence::FrontStalledAndDensityDecayed) => Classification {
            verdict: Verdict::Vanishing,
            evidence: Evidence::FrontStalledAndDensityDecayed,
            t_decided: Some(s.t),
            h_at_decision: Some(s.h),
            hstar: Some(hstar),
            diagnostic: format!(
                "h' and max u below {} / {} for one period",
                opts.tol_front, opts.tol_density
            ),
        },
        _ => Classification {
            verdict: Verdict::Undecided,
            evidence: Evidence::BudgetExhausted,
            t_decided: None,
            h_at_decision: Some(s.h),
            hstar: Some(hstar),
            diagnostic: format!("no rule fired within {} periods", opts.budget_periods),
        },
    };
    Ok((classification, traj))
}

/// Full classification: locate h*, then march with both stop rules.
pub fn classify<T: Real>(
    setup: &ProblemSetup<T>,
    mu: T,
    opts: &ClassifyOptions<T>,
) -> Result<(Classification<T>, Option<Trajectory<T>>)> {
    match locate_hstar(setup, opts)? {
        None => Ok((
            Classification {
                verdict: Verdict::Undecided,
                evidence: Evidence::BudgetExhausted,
                t_decided: None,
                h_at_decision: None,
                hstar: None,
                diagnostic: format!(
                    "no probed length up to {} has lambda1 < 0",
                    opts.l_max
                ),
            },
            None,
        )),
        Some(hstar) => {
            let (c, traj) = classify_with_hstar(setup, mu, hstar, opts)?;
            Ok((c, Some(traj)))
        }
    }
}

/// Result of the threshold search in the moving parameter.
#[derive(Debug, Clone)]
pub enum CriticalMu<T> {
    /// `h0 >= h*`: spreading for every positive mu, no threshold exists.
    AllMuSpread { hstar: T },
    /// Final bracket with verified opposite verdicts at the endpoints.
    Bracket {
        mu_lo: T,
        mu_hi: T,
        hstar: T,
        evaluations: usize,
    },
}

#[derive(Debug, Clone)]
pub struct CriticalMuOptions<T> {
    pub classify: ClassifyOptions<T>,
    /// Stop when `mu_hi / mu_lo < 1 + tol_mu`.
    pub tol_mu: T,
    /// Cap on bracket expansion doublings per side.
    pub max_doublings: usize,
}

impl<T: Real> Default for CriticalMuOptions<T> {
    fn default() -> Self {
        Self {
            classify: ClassifyOptions::default(),
            tol_mu: T::of(0.01),
            max_doublings: 12,
        }
    }
}

/// Bisects the moving parameter between a verified Vanishing run and a
/// verified Spreading run; monotonicity in mu follows from the comparison
/// principle, so a crossed pair is reported as a resolution fault.
pub fn critical_mu<T: Real>(
    setup: &ProblemSetup<T>,
    bracket: (T, T),
    opts: &CriticalMuOptions<T>,
) -> Result<CriticalMu<T>> {
    let hstar = locate_hstar(setup, &opts.classify)?.ok_or_else(|| {
        Error::BracketFailure(
            "no critical length exists: lambda1 >= 0 at every probed length".into(),
        )
    })?;
    if setup.h0 >= hstar {
        return Ok(CriticalMu::AllMuSpread { hstar });
    }

    let mut evaluations = 0usize;
    let mut max_vanishing = T::neg_infinity();
    let mut min_spreading = T::infinity();
    let mut probe = |mu: T| -> Result<Verdict> {
        evaluations += 1;
        // near the threshold the dynamics slow down arbitrarily; escalate
        // the simulated-time budget before declaring the probe hopeless
        let mut verdict = Verdict::Undecided;
        for factor in [1usize, 2, 4] {
            let local = ClassifyOptions {
                budget_periods: opts.classify.budget_periods * factor,
                ..opts.classify.clone()
            };
            let (c, _) = classify_with_hstar(setup, mu, hstar, &local)?;
            verdict = c.verdict;
            if verdict != Verdict::Undecided {
                break;
            }
        }
        match verdict {
            Verdict::Undecided => Err(Error::BudgetExceeded(format!(
                "probe at mu = {mu} undecided within {} periods",
                opts.classify.budget_periods * 4
            ))),
            v => {
                match v {
                    Verdict::Vanishing => max_vanishing = max_vanishing.max(mu),
                    Verdict::Spreading => min_spreading = min_spreading.min(mu),
                    Verdict::Undecided => unreachable!(),
                }
                if max_vanishing > min_spreading {
                    return Err(Error::MonotonicityViolation(format!(
                        "vanishing at mu = {max_vanishing} above spreading at mu = {min_spreading}"
                    )));
                }
                Ok(v)
            }
        }
    };

    let (mut lo, mut hi) = bracket;
    if !(lo > T::zero() && hi > lo) {
        return Err(Error::InvalidParameter(format!(
            "mu bracket must satisfy 0 < lo < hi, got ({lo}, {hi})"
        )));
    }

    // expand until the ends classify differently
    let mut k = 0;
    while probe(lo)? != Verdict::Vanishing {
        hi = hi.min(lo); // a spreading lo tightens the upper side
        lo = lo * T::half();
        k += 1;
        if k > opts.max_doublings {
            return Err(Error::BracketFailure(format!(
                "no vanishing verdict down to mu = {lo}"
            )));
        }
    }
    let mut k = 0;
    while probe(hi)? != Verdict::Spreading {
        lo = lo.max(hi); // a vanishing hi tightens the lower side
        hi = hi * T::two();
        k += 1;
        if k > opts.max_doublings {
            return Err(Error::BracketFailure(format!(
                "no spreading verdict up to mu = {hi}"
            )));
        }
    }

    // geometric bisection
    while hi / lo >= T::one() + opts.tol_mu {
        let mid = (lo * hi).sqrt();
        match probe(mid)? {
            Verdict::Spreading => hi = mid,
            Verdict::Vanishing => lo = mid,
            Verdict::Undecided => unreachable!(),
        }
    }

    Ok(CriticalMu::Bracket {
        mu_lo: lo,
        mu_hi: hi,
        hstar,
        evaluations,
    })
}

/// One row of the diffusion-rate criteria table.
#[derive(Debug, Clone)]
pub struct DRow<T> {
    pub d: T,
    pub lambda1: T,
    pub predicted: SigmaMembership,
    pub observed: Vec<(T, Verdict)>,
}

/// For each diffusion rate: the eigenvalue sign at the initial length
/// (predicting the persistence set membership) and, for each sampled mu,
/// the observed classification.
pub fn criteria_in_d<T: Real>(
    setup: &ProblemSetup<T>,
    d_grid: &[T],
    mu_samples: &[T],
    opts: &ClassifyOptions<T>,
) -> Result<Vec<DRow<T>>> {
    let eigen_opts = EigenOptions {
        record: false,
        ..Default::default()
    };
    // rows are independent simulations; aggregation is by grid index, so the
    // result does not depend on scheduling order
    d_grid
        .par_iter()
        .map(|&d| {
            let e = classify_d(setup.h0, &setup.a, setup.bc, d, &eigen_opts)?;
            let mut observed = Vec::with_capacity(mu_samples.len());
            for &mu in mu_samples {
                let sub = ProblemSetup {
                    d,
                    ..setup.clone()
                };
                let (c, _) = classify(&sub, mu, opts)?;
                observed.push((mu, c.verdict));
            }
            Ok(DRow {
                d,
                lambda1: e.lambda1,
                predicted: e.membership,
                observed,
            })
        })
        .collect()
}
