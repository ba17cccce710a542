//! High-precision evaluation of the generating functions at real points,
//! singularities and growth constants.

mod hp;
mod jet;
mod outer;
mod solve;
mod sp;
mod tree;

pub use hp::{check_digits, HighPrecisionValue, DEFAULT_DIGITS, MIN_DIGITS};
pub use jet::Jet;
pub use outer::{eval_dtilde, gamma_outer_ex, gamma_outer_rd, outer_r, outer_sigma, outer_tau, psi_outer, rho_dtilde};
pub use solve::{bracketed_newton, Root};
pub use sp::{
    b_bic_jet, b_jet, branch_point_sp, cascade_jets, d_jet, eval_a, eval_ahat, eval_b, eval_d, eval_e, eval_r,
    gamma_ex_k4, gamma_rd_k4, inv_e, psi_f_sp, r_jet, rho_a, rho_d, solve_t0, BranchPoint, CascadeJets, T0,
};
pub use tree::{tree_fraction, Analytic, RealFunction, TreeFraction};

use serde::Serialize;

/// How a growth constant was located.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Method {
    BranchPoint,
    TreeFunctionSingularity,
    ClosedForm,
    CompositionCritical,
}

#[derive(Clone, Debug, Serialize)]
pub struct GrowthResult {
    pub gamma: HighPrecisionValue,
    pub rho: HighPrecisionValue,
    pub method: Method,
    pub residual: HighPrecisionValue,
}

impl GrowthResult {
    pub fn new(rho: HighPrecisionValue, method: Method, residual: HighPrecisionValue) -> Self {
        GrowthResult { gamma: rho.recip(), rho, method, residual }
    }
}
