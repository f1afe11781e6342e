//! Numerical library for a free-boundary diffusive logistic equation in a
//! heterogeneous time-periodic environment: front-fixing simulation of the
//! moving habitat, periodic principal eigenvalues and critical thresholds,
//! spreading-vanishing classification, and semi-wave spreading-speed bounds.

pub mod coefficients;
pub mod config;
pub mod dichotomy;
pub mod eigen;
pub mod error;
pub mod fbp;
pub mod field;
pub mod output;
pub mod periodic;
pub mod scalar;
pub mod speed;
pub mod stepper;
pub mod tridiag;

pub use coefficients::{
    build_family, check_h1, check_h2, AsymptoticProfile, CoefficientRole, FamilySpec,
    PeriodicCoefficient, RobinBc,
};
pub use dichotomy::{
    classify, classify_with_hstar, criteria_in_d, critical_mu, locate_hstar, Classification,
    ClassifyOptions, CriticalMu, CriticalMuOptions, DRow, Evidence, ProblemSetup, Verdict,
};
pub use eigen::{
    classify_d, find_hstar, lambda_infinity, principal_eigenvalue, EigenOptions, EigenProblem,
    EigenResult, HstarOptions, HstarResult, LambdaLadder, LambdaLadderOptions, SigmaMembership,
};
pub use error::{Error, Result};
pub use fbp::{
    default_u0, simulate, stefan_identity_residual, FbpSolver, FbpState, MonitorRow, SolveParams,
    Trajectory,
};
pub use field::SpaceTimeField;
pub use periodic::{
    ode_periodic_logistic, solve_halfline_state, solve_periodic_bvp, HalflineOptions,
    HalflineState, PeriodicBvp, PeriodicOptions, PeriodicOrbit, PeriodicState,
};
pub use scalar::Real;
pub use speed::{empirical_speed, solve_semiwave, SemiWaveProblem, SpeedOptions, SpeedResult};

/// Concrete double-precision aliases; the solvers themselves are generic
/// over [`Real`].
pub type Coefficient = PeriodicCoefficient<f64>;
pub type Robin = RobinBc<f64>;
pub type Profile = AsymptoticProfile<f64>;
