//! Default numerical settings shared across modules.

/// θ grids stay this far away from the poles of 1/sinθ.
pub const THETA_EDGE: f64 = 1e-3;

/// Step for centered finite differences in θ.
pub const THETA_FD_STEP: f64 = 1e-3;

/// Hypergeometric series cutoffs.
pub const HYP_MAX_TERMS: usize = 10_000;
pub const HYP_REL_TOL: f64 = 1e-12;

/// Parameters closer than this to a non-positive integer count as terminating.
pub const TERMINATION_TOL: f64 = 1e-9;

/// Default radial window and resolution.
pub const RHO_MIN: f64 = 1e-4;
pub const RHO_MAX: f64 = 5.0;
pub const RHO_POINTS: usize = 2000;

/// Shooting defaults.
pub const SHOOT_RHO_START: f64 = 1e-4;
pub const SHOOT_RHO_END: f64 = 5.0;
pub const SHOOT_RHO_END_EXTENDED: f64 = 8.0;
pub const SHOOT_MIN_SEPARATION: f64 = 1e6;
pub const SHOOT_SCAN_STEP: f64 = 0.05;
pub const SHOOT_ABS_TOL: f64 = 1e-11;
pub const SHOOT_SECANT_WIDTH: f64 = 1e-4;
pub const SHOOT_MAX_BISECTIONS: usize = 200;

/// Integrator tolerances used by the oracle.
pub const ODE_RTOL: f64 = 1e-12;
pub const ODE_ATOL: f64 = 1e-14;

/// ħc in eV·m, used only for usual-units output.
pub const HBAR_C_EV_M: f64 = 1.973_269_804e-7;
