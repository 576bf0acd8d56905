use std::f64::consts::PI;

use num_complex::Complex64;

use super::{classify, length_scale, pole_residual, Method, QnfError, QnfResult, SignChoice, I};
use crate::potentials::{as_eckart, principal_sqrt, PhysicalConstants, PotentialError, PotentialSpec};
use crate::specfn::lambert_w;

/// Large-`|n|` estimate of the `n`-th QNF.
///
/// Double delta: `sign` is required (`+` ↔ `s = 0`, `-` ↔ `s = 1`) and
/// `k ≈ (2n+s)π/2a - i ln(2k0a)/2a + (i/2a) ln[2k0a + ln(2k0a) + i(2n+s)π]`.
/// Rectangular barrier: `q ≈ -i W_n(k0a/2)/a` (repulsive) or
/// `-i W_n(-i|k0|a/2)/a` (attractive). Eckart family: `k ≈ i(n + ½ ± s)/a`,
/// tanh: `k ≈ i n/a`. Accuracy improves with `|n|`; `|n| ≥ 3` is a
/// reasonable floor.
pub fn asymptotic_qnfs(
    spec: &PotentialSpec,
    n: i64,
    sign: SignChoice,
    c: &PhysicalConstants,
) -> Result<QnfResult, QnfError> {
    spec.validate()?;
    c.validate()?;
    let beta = c.beta();
    let nf = n as f64;
    let (k, branch, used) = match *spec {
        PotentialSpec::DoubleDelta { alpha, a } => {
            let s = match sign {
                SignChoice::Plus => 0.0,
                SignChoice::Minus => 1.0,
                SignChoice::Unsigned => return Err(QnfError::Sign(sign.name())),
            };
            let x = Complex64::new(beta * alpha * a, 0.0);
            let l = x.ln();
            let m = (2.0 * nf + s) * PI;
            let k = m / (2.0 * a) - I * l / (2.0 * a) + I / (2.0 * a) * (x + l + I * m).ln();
            (k, Some(n), sign)
        }
        PotentialSpec::RectBarrier { v0, a } => {
            if v0 == 0.0 {
                return Err(QnfError::Unsupported {
                    name: spec.name(),
                    hint: "a nonzero barrier height",
                });
            }
            let k0a = (beta * v0.abs()).sqrt() * a;
            let arg = if v0 > 0.0 {
                Complex64::new(0.5 * k0a, 0.0)
            } else {
                Complex64::new(0.0, -0.5 * k0a)
            };
            let q = -I * lambert_w(n, arg)? / a;
            let k = q * (1.0 + beta * v0 / (q * q)).sqrt();
            (k, Some(n), SignChoice::Unsigned)
        }
        PotentialSpec::AsymDoubleDelta { .. }
        | PotentialSpec::AsymRectBarrier { .. }
        | PotentialSpec::Delta { .. }
        | PotentialSpec::Step { .. } => {
            return Err(QnfError::Unsupported {
                name: spec.name(),
                hint: "closed_form_qnfs or transcendental_qnfs",
            })
        }
        _ => {
            let eq = as_eckart(spec).ok_or(PotentialError::NotScattering { name: spec.name() })?;
            if eq.v0 == 0.0 {
                if n < 1 {
                    return Err(QnfError::InvalidRange {
                        reason: "tanh-type towers start at n = 1",
                    });
                }
                (I * nf / eq.a, Some(n), SignChoice::Unsigned)
            } else {
                if n < 0 {
                    return Err(QnfError::InvalidRange {
                        reason: "Eckart-type towers start at n = 0",
                    });
                }
                if sign == SignChoice::Unsigned {
                    return Err(QnfError::Sign(sign.name()));
                }
                let s = principal_sqrt(Complex64::new(0.25 - beta * eq.v0 * eq.a * eq.a, 0.0));
                (I * (nf + 0.5 + sign.factor() * s) / eq.a, Some(n), sign)
            }
        }
    };
    Ok(QnfResult {
        k,
        k_minus_inf: k,
        k_plus_inf: k,
        branch,
        sign: used,
        method: Method::Asymptotic,
        residual: pole_residual(spec, k, k, c).unwrap_or(f64::NAN),
        classification: classify(k, length_scale(spec, c)),
        pole_order: 1,
    })
}
