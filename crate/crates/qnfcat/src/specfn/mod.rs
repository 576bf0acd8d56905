//! Complex special functions: multi-branch Lambert W and complex log-Gamma.
//!
//! Everything here is a pure function of its arguments.

mod gamma;
mod lambert;

use num_complex::Complex64;
use thiserror::Error;

pub use gamma::{gamma, log_gamma, LANCZOS_G, LANCZOS_TERMS};
pub use lambert::{
    branch_of, lambert_w, lambert_w_comtet, lambert_w_derivative, LAMBERT_MAX_ITER,
};

/// Integer label of a Lambert W branch.
pub type BranchIndex = i64;

/// Failures of the special-function layer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecFnError {
    #[error("argument {z} is not finite")]
    NonFinite { z: Complex64 },
    #[error("W_{branch}(0) is undefined off the principal branch")]
    Domain { branch: BranchIndex },
    #[error("Halley iteration for W_{branch}({z}) did not converge after {iterations} steps")]
    NonConvergence {
        branch: BranchIndex,
        z: Complex64,
        iterations: usize,
    },
    #[error("W' is singular at z = {z} on branch {branch}")]
    Singular { branch: BranchIndex, z: Complex64 },
    #[error("Comtet expansion supports 1, 2 or 3 terms, got {terms}")]
    ComtetTerms { terms: u32 },
    #[error("Gamma has a pole at {z}")]
    Pole { z: Complex64 },
}
