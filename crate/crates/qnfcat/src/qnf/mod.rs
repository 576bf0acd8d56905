//! Quasi-normal wavenumbers: closed-form towers, transcendental roots,
//! perturbative and large-n estimates, energies and offset+gap fits.
//!
//! A QNF is a pole of `t` with `Im k ≥ 0`. For potentials with different
//! asymptotic levels the reported `k` is `k₊∞`; both sides are stored, and
//! the pole searches run in `k̄ = (k₋∞ + k₊∞)/2`, which maps to the pair
//! `k∓∞ = k̄ ± Δ/(4k̄)` with `Δ = β (V₊ - V₋)` and has no branch cuts.

mod asymptotic;
mod closed;
mod fit;
mod perturbative;
mod transcendental;

use num_complex::Complex64;
use thiserror::Error;

use crate::oracle::OracleError;
use crate::potentials::{PhysicalConstants, PotentialError, PotentialSpec};
use crate::specfn::SpecFnError;

pub use asymptotic::asymptotic_qnfs;
pub use closed::closed_form_qnfs;
pub use fit::{fit_offset_gap, AsymptoticFit, FitModel, FitVerdict};
pub use perturbative::{perturbative_qnfs, Regime};
pub use transcendental::{rect_imaginary_roots, transcendental_qnfs, Search};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Which root of a `±` pair a result belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SignChoice {
    Plus,
    Minus,
    Unsigned,
}

impl SignChoice {
    pub fn name(self) -> &'static str {
        match self {
            SignChoice::Plus => "+",
            SignChoice::Minus => "-",
            SignChoice::Unsigned => "none",
        }
    }

    pub(crate) fn factor(self) -> f64 {
        match self {
            SignChoice::Minus => -1.0,
            _ => 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    ClosedForm,
    Transcendental,
    Perturbative,
    Asymptotic,
    Oracle,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::ClosedForm => "closed_form",
            Method::Transcendental => "transcendental",
            Method::Perturbative => "perturbative",
            Method::Asymptotic => "asymptotic",
            Method::Oracle => "oracle",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Classification {
    /// Purely imaginary with `Im k > 0`.
    DampedMode,
    /// Purely imaginary with `Im k < 0`.
    BoundState,
    ComplexQnf,
    /// The formal `k = 0` solution.
    TrivialZero,
}

impl Classification {
    pub fn name(self) -> &'static str {
        match self {
            Classification::DampedMode => "damped_mode",
            Classification::BoundState => "bound_state",
            Classification::ComplexQnf => "complex_qnf",
            Classification::TrivialZero => "trivial_zero",
        }
    }
}

/// One quasi-normal wavenumber.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QnfResult {
    /// `k₊∞`; equal to the common wavenumber for symmetric potentials.
    pub k: Complex64,
    pub k_minus_inf: Complex64,
    pub k_plus_inf: Complex64,
    pub branch: Option<i64>,
    pub sign: SignChoice,
    pub method: Method,
    pub residual: f64,
    pub classification: Classification,
    /// Order of the pole of `t`; 0 when Gamma-function poles cancel and the
    /// formal root is not a pole at all.
    pub pole_order: u32,
}

impl QnfResult {
    /// Not the trivial zero and an actual pole of `t`.
    pub fn is_physical(&self) -> bool {
        self.classification != Classification::TrivialZero && self.pole_order > 0
    }

    /// `k̄ = (k₋∞ + k₊∞)/2`.
    pub fn k_bar(&self) -> Complex64 {
        0.5 * (self.k_minus_inf + self.k_plus_inf)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QnfError {
    #[error("{name} is not handled here; use {hint}")]
    Unsupported {
        name: &'static str,
        hint: &'static str,
    },
    #[error("index range invalid: {reason}")]
    InvalidRange { reason: &'static str },
    #[error("regime {regime} does not apply to {name}")]
    RegimeMismatch {
        regime: &'static str,
        name: &'static str,
    },
    #[error("fit needs at least {need} consecutive entries, got {have}")]
    InsufficientData { have: usize, need: usize },
    #[error("sign choice {0} is not valid for this potential")]
    Sign(&'static str),
    #[error(transparent)]
    Potential(#[from] PotentialError),
    #[error(transparent)]
    SpecFn(#[from] SpecFnError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// Trivial-zero radius in units of the inverse length scale.
pub const TRIVIAL_RADIUS: f64 = 1e-8;

/// Classifies `k` for a potential of length scale `length`.
pub fn classify(k: Complex64, length: f64) -> Classification {
    if k.norm() * length < TRIVIAL_RADIUS {
        return Classification::TrivialZero;
    }
    if k.re.abs() <= 1e-10 * k.norm().max(1.0 / length) {
        if k.im > 0.0 {
            Classification::DampedMode
        } else {
            Classification::BoundState
        }
    } else {
        Classification::ComplexQnf
    }
}

/// `E = k²/β + offset`; the offset is the asymptotic level on the side `k`
/// refers to. In relativistic mode this is `ω² = k² + offset`.
pub fn qnf_energy(k: Complex64, c: &PhysicalConstants, offset: f64) -> Complex64 {
    k * k / c.beta() + offset
}

/// Natural length of a spec, used for trivial-zero and deduplication radii.
pub fn length_scale(spec: &PotentialSpec, c: &PhysicalConstants) -> f64 {
    match *spec {
        PotentialSpec::Delta { alpha } => {
            let k0 = 0.5 * c.beta() * alpha;
            if k0 != 0.0 {
                1.0 / k0.abs()
            } else {
                1.0
            }
        }
        PotentialSpec::Step { .. } => 1.0,
        _ => spec.width().unwrap_or(1.0),
    }
}

/// `β (V₊ - V₋)`.
pub(crate) fn level_gap(spec: &PotentialSpec, c: &PhysicalConstants) -> Result<f64, PotentialError> {
    let (vm, vp) = spec.asymptotic_limits()?;
    Ok(c.beta() * (vp - vm))
}

/// `(k₋∞, k₊∞)` from the mean wavenumber.
pub fn wavenumber_pair(
    spec: &PotentialSpec,
    k_bar: Complex64,
    c: &PhysicalConstants,
) -> Result<(Complex64, Complex64), PotentialError> {
    let delta = level_gap(spec, c)?;
    if delta == 0.0 {
        return Ok((k_bar, k_bar));
    }
    let d = delta / (4.0 * k_bar);
    Ok((k_bar + d, k_bar - d))
}

/// Inverse of [`wavenumber_pair`] on the sheet where `k̄ ≈ k₊∞` for large `k`.
pub fn k_bar_from_plus(
    spec: &PotentialSpec,
    k_plus: Complex64,
    c: &PhysicalConstants,
) -> Result<Complex64, PotentialError> {
    let delta = level_gap(spec, c)?;
    if delta == 0.0 {
        return Ok(k_plus);
    }
    let k_minus = paired_root(k_plus, delta);
    Ok(0.5 * (k_plus + k_minus))
}

/// Root of `w² = k² + d` continued from `w ≈ k`.
pub(crate) fn paired_root(k: Complex64, d: f64) -> Complex64 {
    if k == Complex64::new(0.0, 0.0) {
        return Complex64::new(d, 0.0).sqrt();
    }
    k * (1.0 + d / (k * k)).sqrt()
}

/// Root with `Im ≥ 0`, and `Re ≥ 0` on the real axis.
pub(crate) fn upper_sqrt(z: Complex64) -> Complex64 {
    let r = z.sqrt();
    if r.im < 0.0 || (r.im == 0.0 && r.re < 0.0) {
        -r
    } else {
        r
    }
}

/// `|A + B| / (|A| + |B|)`.
pub(crate) fn relative(a: Complex64, b: Complex64) -> f64 {
    let den = a.norm() + b.norm();
    if den == 0.0 {
        0.0
    } else {
        (a + b).norm() / den
    }
}

fn nonpositive_integer_distance(z: Complex64) -> f64 {
    let n = (-z.re).round().max(0.0);
    (z + n).norm()
}

/// Residual of the defining pole condition at `(k₋∞, k₊∞)`, scaled so that
/// it is dimensionless and insensitive to the size of the individual terms.
pub fn pole_residual(
    spec: &PotentialSpec,
    k_minus: Complex64,
    k_plus: Complex64,
    c: &PhysicalConstants,
) -> Result<f64, QnfError> {
    let beta = c.beta();
    let k = k_minus;
    let r = match *spec {
        PotentialSpec::Delta { alpha } => {
            let k0 = 0.5 * beta * alpha;
            (k - I * k0).norm() / k0.abs().max(k.norm())
        }
        PotentialSpec::DoubleDelta { alpha, a } => {
            let k0 = 0.5 * beta * alpha;
            relative((k - I * k0).powi(2), k0 * k0 * (-4.0 * I * k * a).exp())
        }
        PotentialSpec::AsymDoubleDelta {
            alpha_plus,
            alpha_minus,
            a,
        } => {
            let kp = 0.5 * beta * alpha_plus;
            let km = 0.5 * beta * alpha_minus;
            relative((k - I * kp) * (k - I * km), kp * km * (-4.0 * I * k * a).exp())
        }
        PotentialSpec::Step { .. } => {
            return Err(QnfError::Unsupported {
                name: "step",
                hint: "nothing: the step has no QNFs",
            })
        }
        PotentialSpec::RectBarrier { v0, a } => {
            let q = (k * k - beta * v0).sqrt();
            relative(
                (k + q).powi(2) * (2.0 * I * q * a).exp(),
                -(k - q).powi(2) * (-2.0 * I * q * a).exp(),
            )
        }
        PotentialSpec::AsymRectBarrier { v1, v2, a, .. } => {
            let k2 = (k * k - beta * (v2 - v1)).sqrt();
            let (k1, k3) = (k_minus, k_plus);
            relative(
                k2 * (k3 + k1) * (2.0 * k2 * a).cos(),
                I * (k2 * k2 + k1 * k3) * (2.0 * k2 * a).sin(),
            )
        }
        _ => {
            let eq = crate::potentials::as_eckart(spec)
                .ok_or(PotentialError::NotScattering { name: spec.name() })?;
            let s = crate::potentials::principal_sqrt(Complex64::new(0.25 - beta * eq.v0 * eq.a * eq.a, 0.0));
            let z = I * 0.5 * (k_minus + k_plus) * eq.a;
            let gamma = nonpositive_integer_distance(z + 0.5 + s).min(nonpositive_integer_distance(z + 0.5 - s));
            let delta = beta * (eq.v_plus - eq.v_minus);
            let pair = (k_minus * k_minus - k_plus * k_plus - delta).norm() * eq.a * eq.a
                / (1.0 + delta.abs() * eq.a * eq.a);
            gamma.max(pair)
        }
    };
    Ok(r)
}

/// Physical entries only, deduplicated at `tol` and sorted by `(Im k, Re k)`.
pub fn physical(results: &[QnfResult], tol: f64) -> Vec<QnfResult> {
    let mut out: Vec<QnfResult> = Vec::new();
    for r in results.iter().filter(|r| r.is_physical()) {
        if out.iter().all(|o| (o.k - r.k).norm() > tol) {
            out.push(*r);
        }
    }
    sort_results(&mut out);
    out
}

pub(crate) fn sort_results(v: &mut [QnfResult]) {
    v.sort_by(|a, b| {
        a.k.im
            .total_cmp(&b.k.im)
            .then(a.k.re.total_cmp(&b.k.re))
    });
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classification_rules() {
        assert_eq!(classify(Complex64::new(0.0, 2.0), 1.0), Classification::DampedMode);
        assert_eq!(classify(Complex64::new(0.0, -2.0), 1.0), Classification::BoundState);
        assert_eq!(classify(Complex64::new(1.0, 2.0), 1.0), Classification::ComplexQnf);
        assert_eq!(classify(Complex64::new(1e-10, 0.0), 1.0), Classification::TrivialZero);
    }

    #[test]
    fn energies() {
        let c = PhysicalConstants::default();
        assert_eq!(qnf_energy(Complex64::new(0.0, 0.0), &c, 0.0), Complex64::new(0.0, 0.0));
        let e = qnf_energy(Complex64::new(0.0, 1.5), &c, 0.0);
        assert!((e - Complex64::new(-1.125, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn pair_round_trip() {
        let c = PhysicalConstants::default();
        let spec = PotentialSpec::Tanh {
            v_minus: 0.0,
            v_plus: 2.0,
            a: 1.0,
        };
        let kb = Complex64::new(0.3, 1.7);
        let (km, kp) = wavenumber_pair(&spec, kb, &c).unwrap();
        assert!((km * km - kp * kp - 4.0).norm() < 1e-13);
        let back = k_bar_from_plus(&spec, kp, &c).unwrap();
        assert!((back - kb).norm() < 1e-13);
    }
}
