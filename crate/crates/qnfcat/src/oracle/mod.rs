//! Numerical amplitudes and pole finding, independent of the closed forms.
//!
//! Piecewise potentials use exact transfer matrices. Smooth potentials are
//! integrated with an adaptive Dormand-Prince scheme, either between
//! convergent Jost-series boundary data at `±a/2` (the default, usable deep
//! in the complex plane) or from a plain truncation at `±L`.

mod ode;
mod poles;
mod transfer;

use num_complex::Complex64;
use thiserror::Error;

use crate::potentials::{
    principal_sqrt, PhysicalConstants, PotentialError, PotentialSpec, ScatteringAmplitudes,
};

pub use poles::{find_poles, find_zeros, refine_pole, refine_pole_pair, Pole, PoleReport, Zero, ZeroSearch};
pub use transfer::{transfer_matrix, TransferResult};
pub(crate) use poles::{find_zeros_excluding, singular_points};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error(transparent)]
    Potential(#[from] PotentialError),
    #[error("invalid search region: {reason}")]
    InvalidRegion { reason: &'static str },
    #[error("solution growth e^{exponent} exceeds the floating-point range")]
    Overflow { exponent: f64 },
    #[error("integrator step underflow at x = {x}")]
    StepUnderflow { x: f64 },
    #[error("Jost data singular at k = {k}")]
    Singular { k: Complex64 },
    #[error("Jost series did not converge")]
    SeriesDiverged,
    #[error("Newton iteration from {guess} did not converge")]
    NoConvergence { guess: Complex64 },
    #[error("refinement collapsed onto the trivial zero")]
    TrivialZero,
}

/// Rectangle in the search variable, `k` or `k̄` for asymmetric potentials.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchRegion {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
    /// Grid points per unit of `k a`.
    pub grid_density: f64,
}

/// Radius around `k = 0` that is never searched.
pub const ORIGIN_EXCLUSION: f64 = 1e-6;
const MAX_GRID: f64 = 4e6;

impl SearchRegion {
    pub fn new(re_min: f64, re_max: f64, im_min: f64, im_max: f64) -> Self {
        SearchRegion {
            re_min,
            re_max,
            im_min,
            im_max,
            grid_density: 8.0,
        }
    }

    pub fn with_density(mut self, grid_density: f64) -> Self {
        self.grid_density = grid_density;
        self
    }

    pub fn contains(&self, z: Complex64) -> bool {
        z.re >= self.re_min && z.re <= self.re_max && z.im >= self.im_min && z.im <= self.im_max
    }

    pub fn validate(&self, length: f64) -> Result<(), OracleError> {
        let all = [self.re_min, self.re_max, self.im_min, self.im_max, self.grid_density];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(OracleError::InvalidRegion {
                reason: "non-finite bound",
            });
        }
        if self.re_min >= self.re_max || self.im_min >= self.im_max {
            return Err(OracleError::InvalidRegion {
                reason: "empty rectangle",
            });
        }
        if self.grid_density < 1.0 {
            return Err(OracleError::InvalidRegion {
                reason: "grid density below 1",
            });
        }
        let per = self.grid_density * length;
        let n = (self.re_max - self.re_min) * per * (self.im_max - self.im_min) * per;
        if n > MAX_GRID {
            return Err(OracleError::InvalidRegion {
                reason: "grid too large",
            });
        }
        Ok(())
    }
}

/// Integration settings for smooth potentials.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeSettings {
    pub mode: OdeMode,
    pub rtol: f64,
    pub atol: f64,
    /// Largest step in units of `a`; `None` means 0.05.
    pub max_step: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OdeMode {
    JostMatched,
    /// Plain boundary condition `e^{-ik₊x}` at `x = L` (relative to the
    /// potential's centre), read off at `-L`.
    Truncated { half_width: f64 },
}

impl Default for OdeSettings {
    fn default() -> Self {
        OdeSettings {
            mode: OdeMode::JostMatched,
            rtol: 1e-12,
            atol: 1e-14,
            max_step: None,
        }
    }
}

/// `L = a · max(20, 2 + |Im k| a · safety)` for the truncated mode.
pub fn truncation_half_width(a: f64, k: Complex64, safety: f64) -> f64 {
    a * (20.0f64).max(2.0 + k.im.abs() * a * safety)
}

/// Numerical `t` and `r` at incidence wavenumber `k = k₋∞`, with `k₊∞` the
/// principal root (as for the closed forms).
pub fn numeric_amplitude(
    spec: &PotentialSpec,
    k: Complex64,
    c: &PhysicalConstants,
) -> Result<ScatteringAmplitudes, OracleError> {
    let (vm, vp) = spec.asymptotic_limits()?;
    let k_plus = if vm == vp {
        k
    } else {
        principal_sqrt(k * k - c.beta() * (vp - vm))
    };
    numeric_amplitude_with(spec, k, k_plus, c, &OdeSettings::default())
}

/// Numerical amplitudes for an explicit pair `(k₋∞, k₊∞)`.
pub fn numeric_amplitude_with(
    spec: &PotentialSpec,
    k_minus: Complex64,
    k_plus: Complex64,
    c: &PhysicalConstants,
    settings: &OdeSettings,
) -> Result<ScatteringAmplitudes, OracleError> {
    let (t_raw, r) = raw_amplitudes(spec, k_minus, k_plus, c, settings)?;
    Ok(ScatteringAmplitudes {
        t: t_raw * k_plus.sqrt() / k_minus.sqrt(),
        r: Some(r),
        k_minus_inf: k_minus,
        k_plus_inf: k_plus,
    })
}

/// Unnormalized `t` (unit incident coefficient) and `r`.
pub(crate) fn raw_amplitudes(
    spec: &PotentialSpec,
    k_minus: Complex64,
    k_plus: Complex64,
    c: &PhysicalConstants,
    settings: &OdeSettings,
) -> Result<(Complex64, Complex64), OracleError> {
    spec.validate()?;
    c.validate()?;
    if !spec.is_scattering() {
        return Err(PotentialError::NotScattering { name: spec.name() }.into());
    }
    if k_minus == Complex64::new(0.0, 0.0) || k_plus == Complex64::new(0.0, 0.0) {
        return Err(PotentialError::ZeroWavenumber.into());
    }
    if let Some(tr) = transfer_matrix(spec, k_minus, k_plus, c) {
        return Ok((tr.t_raw, tr.r));
    }
    let amp = ode::ode_amplitudes(spec, k_minus, k_plus, c, settings)?;
    Ok((amp.t_raw, amp.r))
}
