use std::ops::RangeInclusive;

use num_complex::Complex64;

use super::{
    classify, length_scale, pole_residual, Classification, Method, QnfError, QnfResult,
    SignChoice, I,
};
use crate::potentials::{as_eckart, principal_sqrt, PhysicalConstants, PotentialError, PotentialSpec};
use crate::specfn::lambert_w;

/// Deduplication radius for the double-delta tower.
const DEDUP: f64 = 1e-9;

/// QNFs with closed forms, one entry per `(n, sign)` in `n_range`.
///
/// Delta gives its single root regardless of the range, the step gives an
/// empty list, and the Eckart family (tanh, sech², Eckart, Pöschl-Teller,
/// Rosen-Morse and the other members) needs `n ≥ 0`, or `n ≥ 1` when the
/// `sech²` part vanishes. Formal roots at which Gamma poles cancel are kept
/// with `pole_order = 0`; see [`QnfResult::is_physical`].
pub fn closed_form_qnfs(
    spec: &PotentialSpec,
    n_range: RangeInclusive<i64>,
    c: &PhysicalConstants,
) -> Result<Vec<QnfResult>, QnfError> {
    spec.validate()?;
    c.validate()?;
    if n_range.is_empty() {
        return Err(QnfError::InvalidRange {
            reason: "empty range",
        });
    }
    let beta = c.beta();
    let mut out = Vec::new();
    match *spec {
        PotentialSpec::Delta { alpha } => {
            let k0 = 0.5 * beta * alpha;
            if k0 != 0.0 {
                let k = I * k0;
                out.push(symmetric(spec, k, None, SignChoice::Unsigned, 1, c)?);
            }
        }
        PotentialSpec::Step { .. } => {}
        PotentialSpec::DoubleDelta { alpha, a } => {
            let k0 = 0.5 * beta * alpha;
            if k0 == 0.0 {
                return Ok(out);
            }
            let z = 2.0 * k0 * a * (2.0 * k0 * a).exp();
            for n in n_range {
                for sign in [SignChoice::Plus, SignChoice::Minus] {
                    let w = lambert_w(n, Complex64::new(sign.factor() * z, 0.0))?;
                    let k = I * (k0 - w / (2.0 * a));
                    if out.iter().any(|r: &QnfResult| (r.k - k).norm() < DEDUP) {
                        continue;
                    }
                    let order = if (1.0 + w).norm() < 1e-7 { 2 } else { 1 };
                    out.push(symmetric(spec, k, Some(n), sign, order, c)?);
                }
            }
        }
        PotentialSpec::AsymDoubleDelta { .. }
        | PotentialSpec::RectBarrier { .. }
        | PotentialSpec::AsymRectBarrier { .. } => {
            return Err(QnfError::Unsupported {
                name: spec.name(),
                hint: "transcendental_qnfs",
            })
        }
        _ => {
            let eq = as_eckart(spec).ok_or(PotentialError::NotScattering { name: spec.name() })?;
            let tanh_like = eq.v0 == 0.0;
            let first = if tanh_like { 1 } else { 0 };
            if *n_range.start() < first {
                return Err(QnfError::InvalidRange {
                    reason: if tanh_like {
                        "tanh-type towers start at n = 1"
                    } else {
                        "Eckart-type towers start at n = 0"
                    },
                });
            }
            let a = eq.a;
            let delta = beta * (eq.v_plus - eq.v_minus);
            let s = principal_sqrt(Complex64::new(0.25 - beta * eq.v0 * a * a, 0.0));
            let signs: &[SignChoice] = if tanh_like {
                &[SignChoice::Unsigned]
            } else {
                &[SignChoice::Plus, SignChoice::Minus]
            };
            for n in n_range {
                for &sign in signs {
                    // Tanh: k̄ = i n/a, which is the `-` root with s = 1/2.
                    let shift = if tanh_like {
                        Complex64::new(0.0, 0.0)
                    } else {
                        0.5 + sign.factor() * s
                    };
                    let nf = n as f64;
                    let k_bar = I * (nf + shift) / a;
                    out.push(eckart_entry(k_bar, n, sign, shift, a, delta, s));
                }
            }
        }
    }
    Ok(out)
}

fn symmetric(
    spec: &PotentialSpec,
    k: Complex64,
    branch: Option<i64>,
    sign: SignChoice,
    pole_order: u32,
    c: &PhysicalConstants,
) -> Result<QnfResult, QnfError> {
    let length = length_scale(spec, c);
    let classification = classify(k, length);
    let trivial = classification == Classification::TrivialZero;
    Ok(QnfResult {
        k,
        k_minus_inf: k,
        k_plus_inf: k,
        branch,
        sign,
        method: Method::ClosedForm,
        residual: pole_residual(spec, k, k, c)?,
        classification,
        pole_order: if trivial { 0 } else { pole_order },
    })
}

fn eckart_entry(
    k_bar: Complex64,
    n: i64,
    sign: SignChoice,
    shift: Complex64,
    a: f64,
    delta: f64,
    s: Complex64,
) -> QnfResult {
    let nf = n as f64;
    let zero = Complex64::new(0.0, 0.0);
    if k_bar.norm() * a < super::TRIVIAL_RADIUS {
        return QnfResult {
            k: zero,
            k_minus_inf: zero,
            k_plus_inf: zero,
            branch: Some(n),
            sign,
            method: Method::ClosedForm,
            residual: 0.0,
            classification: Classification::TrivialZero,
            pole_order: 0,
        };
    }
    let d = delta / (4.0 * k_bar);
    let (k_minus, k_plus) = (k_bar + d, k_bar - d);
    let z = I * k_bar * a;
    let own = (z + shift + nf).norm();
    let pair = (k_minus * k_minus - k_plus * k_plus - delta).norm() * a * a
        / (1.0 + delta.abs() * a * a);
    let residual = (own / z.norm().max(1.0)).max(pair);
    let order = gamma_pole_order(z, s, I * k_plus * a, I * k_minus * a);
    QnfResult {
        k: k_plus,
        k_minus_inf: k_minus,
        k_plus_inf: k_plus,
        branch: Some(n),
        sign,
        method: Method::ClosedForm,
        residual,
        classification: classify(k_plus, a),
        pole_order: order,
    }
}

fn at_gamma_pole(w: Complex64) -> bool {
    let r = w.re.round();
    r <= 0.0 && (w - r).norm() < 1e-9 * w.norm().max(1.0)
}

/// Order of the pole of
/// `Γ(z + ½ + s) Γ(z + ½ - s) / (Γ(i k₊ a) Γ(i k₋ a))` at `z = i k̄ a`.
fn gamma_pole_order(z: Complex64, s: Complex64, zp: Complex64, zm: Complex64) -> u32 {
    let count = |w: Complex64| at_gamma_pole(w) as i32;
    let order = count(z + 0.5 + s) + count(z + 0.5 - s) - count(zp) - count(zm);
    order.max(0) as u32
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c() -> PhysicalConstants {
        PhysicalConstants::default()
    }

    #[test]
    fn tanh_double_poles() {
        let spec = PotentialSpec::Tanh {
            v_minus: 0.0,
            v_plus: 2.0,
            a: 1.0,
        };
        let r = closed_form_qnfs(&spec, 1..=3, &c()).unwrap();
        assert_eq!(r.len(), 3);
        assert!((r[0].k - Complex64::new(0.0, 2.0)).norm() < 1e-14);
        // At n = 1, Γ(ik₊a) = Γ(-2) and Γ(ik₋a) = Γ(0) cancel both orders.
        assert!(r[0].k_minus_inf.norm() < 1e-14);
        assert_eq!(r[0].pole_order, 0);
        assert!(r[1..].iter().all(|q| q.pole_order == 2));
    }

    #[test]
    fn reflectionless_sech2_has_no_true_poles_above_axis() {
        let spec = PotentialSpec::Sech2 { v0: -1.0, a: 1.0 };
        let r = closed_form_qnfs(&spec, 0..=5, &c()).unwrap();
        assert_eq!(r.len(), 12);
        assert!((r[0].k - Complex64::new(0.0, 2.0)).norm() < 1e-14);
        assert!(r
            .iter()
            .filter(|q| q.k.im > 0.0)
            .all(|q| q.pole_order == 0));
        let bound: Vec<_> = r.iter().filter(|q| q.pole_order > 0).collect();
        assert_eq!(bound.len(), 1);
        assert_eq!(bound[0].classification, Classification::BoundState);
    }

    #[test]
    fn tanh_rejects_n_zero() {
        let spec = PotentialSpec::Tanh {
            v_minus: 0.0,
            v_plus: 2.0,
            a: 1.0,
        };
        assert!(matches!(
            closed_form_qnfs(&spec, 0..=3, &c()),
            Err(QnfError::InvalidRange { .. })
        ));
    }
}
