use num_complex::Complex64;

use super::{
    classify, length_scale, pole_residual, upper_sqrt, Method, QnfError, QnfResult, SignChoice, I,
};
use crate::potentials::{PhysicalConstants, PotentialSpec};
use crate::specfn::lambert_w;

/// Perturbative regimes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    /// Lowest double-delta QNF for small separation, error `O(a²)`.
    SmallSeparation,
    /// Near-symmetric double delta, error `O((k₊-k₋)²)`.
    NearSymmetricOrder0,
    /// Near-symmetric double delta, error `O((k₊-k₋)⁴)`.
    NearSymmetricOrder2,
    /// Lower imaginary-axis root of a repulsive barrier, relative error `O((k0a)⁶)`.
    SmallK0aSeries,
    /// Imaginary-axis root of an asymmetric barrier for small `a`.
    SmallAAsymRect,
}

impl Regime {
    pub fn name(self) -> &'static str {
        match self {
            Regime::SmallSeparation => "small_separation",
            Regime::NearSymmetricOrder0 => "near_symmetric_order0",
            Regime::NearSymmetricOrder2 => "near_symmetric_order2",
            Regime::SmallK0aSeries => "small_k0a_series",
            Regime::SmallAAsymRect => "small_a_asym_rect",
        }
    }
}

/// Largest `k0 a` accepted by [`Regime::SmallK0aSeries`].
pub const SERIES_K0A_MAX: f64 = 0.5;

/// Perturbative QNF estimate. `n` and `sign` select the Lambert-W branch in
/// the near-symmetric regimes and are ignored elsewhere.
pub fn perturbative_qnfs(
    spec: &PotentialSpec,
    regime: Regime,
    n: i64,
    sign: SignChoice,
    c: &PhysicalConstants,
) -> Result<QnfResult, QnfError> {
    spec.validate()?;
    c.validate()?;
    let beta = c.beta();
    let mismatch = QnfError::RegimeMismatch {
        regime: regime.name(),
        name: spec.name(),
    };
    let (k_minus, k_plus, branch, used_sign) = match regime {
        Regime::SmallSeparation | Regime::NearSymmetricOrder0 | Regime::NearSymmetricOrder2 => {
            let (kp, km, a) = match *spec {
                PotentialSpec::AsymDoubleDelta {
                    alpha_plus,
                    alpha_minus,
                    a,
                } => (0.5 * beta * alpha_plus, 0.5 * beta * alpha_minus, a),
                PotentialSpec::DoubleDelta { alpha, a } => {
                    (0.5 * beta * alpha, 0.5 * beta * alpha, a)
                }
                _ => return Err(mismatch),
            };
            if regime == Regime::SmallSeparation {
                let k = I * (kp + km + 4.0 * kp * km * a);
                (k, k, None, SignChoice::Unsigned)
            } else {
                if sign == SignChoice::Unsigned {
                    return Err(QnfError::Sign(sign.name()));
                }
                let c0 = 2.0 * a * Complex64::new(kp * km, 0.0).sqrt() * ((kp + km) * a).exp();
                let w = lambert_w(n, sign.factor() * c0)?;
                let mut brace = 0.5 * (kp + km) - w / (2.0 * a);
                if regime == Regime::NearSymmetricOrder2 {
                    brace -= a * (kp - km).powi(2) / (4.0 * w * (1.0 + w));
                }
                let k = I * brace;
                (k, k, Some(n), sign)
            }
        }
        Regime::SmallK0aSeries => {
            let PotentialSpec::RectBarrier { v0, a } = *spec else {
                return Err(mismatch);
            };
            if v0 <= 0.0 {
                return Err(mismatch);
            }
            let k0 = (beta * v0).sqrt();
            let x = k0 * a;
            if x > SERIES_K0A_MAX {
                return Err(mismatch);
            }
            let x2 = x * x;
            let k = I * k0 * x * (1.0 + 2.0 / 3.0 * x2 + 0.8 * x2 * x2);
            (k, k, None, SignChoice::Unsigned)
        }
        Regime::SmallAAsymRect => {
            let PotentialSpec::AsymRectBarrier { v1, v2, v3, a } = *spec else {
                return Err(mismatch);
            };
            let p = beta * (v2 - v1);
            let q = beta * (v2 - v3);
            let s = p + q;
            if s == 0.0 {
                return Err(mismatch);
            }
            let rho = (p - q) / s;
            let k2sq = -rho * rho / (4.0 * a * a) - 2.0 * p * q / s - p * q * a * a;
            // The estimate fixes k₂² only; the sheet of each outer wavenumber
            // is the one that satisfies the matching condition.
            let k1 = upper_sqrt(Complex64::new(k2sq + p, 0.0));
            let k3 = upper_sqrt(Complex64::new(k2sq + q, 0.0));
            let (k1, k3) = [(k1, k3), (-k1, k3), (k1, -k3), (-k1, -k3)]
                .into_iter()
                .map(|(m, pl)| (pole_residual(spec, m, pl, c).unwrap_or(f64::INFINITY), m, pl))
                .min_by(|x, y| x.0.total_cmp(&y.0))
                .map(|(_, m, pl)| (m, pl))
                .expect("four candidates");
            (k1, k3, None, SignChoice::Unsigned)
        }
    };
    Ok(QnfResult {
        k: k_plus,
        k_minus_inf: k_minus,
        k_plus_inf: k_plus,
        branch,
        sign: used_sign,
        method: Method::Perturbative,
        residual: pole_residual(spec, k_minus, k_plus, c)?,
        classification: classify(k_plus, length_scale(spec, c)),
        pole_order: 1,
    })
}
