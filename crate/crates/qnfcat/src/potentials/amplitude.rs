use std::f64::consts::PI;

use num_complex::Complex64;

use super::{as_eckart, principal_sqrt, PhysicalConstants, PotentialError, PotentialSpec};
use crate::specfn::{log_gamma, SpecFnError};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Complex transmission data at one wavenumber.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatteringAmplitudes {
    pub t: Complex64,
    /// Only the numeric oracle reports a reflection amplitude.
    pub r: Option<Complex64>,
    pub k_minus_inf: Complex64,
    pub k_plus_inf: Complex64,
}

/// Closed-form `t` at incidence wavenumber `k = k₋∞`.
///
/// `k₊∞` is the principal root of `k² - β (V₊ - V₋)`; it equals `k` exactly
/// for potentials with equal asymptotic levels. The formulas are valid for
/// complex `k`. A pole of `t` is reported as [`PotentialError::AtPole`].
pub fn transmission_amplitude(
    spec: &PotentialSpec,
    k: Complex64,
    c: &PhysicalConstants,
) -> Result<ScatteringAmplitudes, PotentialError> {
    let (vm, vp) = spec.asymptotic_limits()?;
    let k_plus = if vm == vp {
        k
    } else {
        principal_sqrt(k * k - c.beta() * (vp - vm))
    };
    amplitude_pair(spec, k, k_plus, c)
}

/// Closed-form `t` for an explicit pair `(k₋∞, k₊∞)`.
///
/// The caller is responsible for `k₋² - k₊² = β (V₊ - V₋)`; passing the pair
/// directly selects the Riemann sheet, which matters when continuing `t` to
/// its poles.
pub fn amplitude_pair(
    spec: &PotentialSpec,
    k_minus: Complex64,
    k_plus: Complex64,
    c: &PhysicalConstants,
) -> Result<ScatteringAmplitudes, PotentialError> {
    spec.validate()?;
    c.validate()?;
    if !spec.is_scattering() {
        return Err(PotentialError::NotScattering { name: spec.name() });
    }
    if k_minus == Complex64::new(0.0, 0.0) || k_plus == Complex64::new(0.0, 0.0) {
        return Err(PotentialError::ZeroWavenumber);
    }
    let beta = c.beta();
    let k = k_minus;
    let t = match *spec {
        PotentialSpec::Delta { alpha } => {
            let k0 = 0.5 * beta * alpha;
            ratio(k, k - I * k0, k)?
        }
        PotentialSpec::DoubleDelta { alpha, a } => {
            let k0 = 0.5 * beta * alpha;
            let den = (k - I * k0).powi(2) + k0 * k0 * (-4.0 * I * k * a).exp();
            ratio(k * k, den, k)?
        }
        PotentialSpec::AsymDoubleDelta {
            alpha_plus,
            alpha_minus,
            a,
        } => {
            let kp = 0.5 * beta * alpha_plus;
            let km = 0.5 * beta * alpha_minus;
            let den = (k - I * kp) * (k - I * km) + kp * km * (-4.0 * I * k * a).exp();
            ratio(k * k, den, k)?
        }
        PotentialSpec::Step { .. } => {
            ratio(2.0 * k_minus.sqrt() * k_plus.sqrt(), k_minus + k_plus, k)?
        }
        PotentialSpec::RectBarrier { v0, a } => {
            let q = principal_sqrt(k * k - beta * v0);
            interval_amplitude(k, q, k, a)?
        }
        PotentialSpec::AsymRectBarrier { v1, v2, a, .. } => {
            let k2 = principal_sqrt(k * k - beta * (v2 - v1));
            interval_amplitude(k_minus, k2, k_plus, a)?
        }
        _ => {
            let eq = as_eckart(spec).ok_or(PotentialError::NotScattering { name: spec.name() })?;
            let t = eckart_amplitude(eq.v0, eq.a, k_minus, k_plus, beta)?;
            t * (I * (k_plus - k_minus) * eq.shift).exp()
        }
    };
    Ok(ScatteringAmplitudes {
        t,
        r: None,
        k_minus_inf: k_minus,
        k_plus_inf: k_plus,
    })
}

fn ratio(num: Complex64, den: Complex64, k: Complex64) -> Result<Complex64, PotentialError> {
    let t = num / den;
    if den == Complex64::new(0.0, 0.0) || !t.re.is_finite() || !t.im.is_finite() {
        return Err(PotentialError::AtPole { k });
    }
    Ok(t)
}

/// Constant region of half-width `a` between media with wavenumbers `k1`, `k3`.
fn interval_amplitude(
    k1: Complex64,
    k2: Complex64,
    k3: Complex64,
    a: f64,
) -> Result<Complex64, PotentialError> {
    // Even in k2; pick the root with Im ≥ 0 so e^{2ik2a} is the small factor.
    let k2 = if k2.im < 0.0 { -k2 } else { k2 };
    let small = (2.0 * I * k2 * a).exp();
    let num = 4.0 * k2 * k1.sqrt() * k3.sqrt() * (I * (k1 + k3) * a).exp() * small;
    let den = (k1 + k2) * (k3 + k2) * small * small - (k1 - k2) * (k3 - k2);
    ratio(num, den, k1)
}

fn eckart_amplitude(
    v0: f64,
    a: f64,
    k_minus: Complex64,
    k_plus: Complex64,
    beta: f64,
) -> Result<Complex64, PotentialError> {
    let s = principal_sqrt(Complex64::new(0.25 - beta * v0 * a * a, 0.0));
    let kbar = 0.5 * (k_minus + k_plus);
    let z = I * kbar * a;
    let num = [z + 0.5 + s, z + 0.5 - s];
    let den = [I * k_plus * a, I * k_minus * a];
    let mut acc = Complex64::new(0.0, 0.0);
    for w in num {
        match log_gamma(w) {
            Ok(l) => acc += l,
            Err(SpecFnError::Pole { .. }) => return Err(PotentialError::AtPole { k: k_minus }),
            Err(e) => return Err(e.into()),
        }
    }
    for w in den {
        match log_gamma(w) {
            Ok(l) => acc -= l,
            Err(SpecFnError::Pole { .. }) => return Ok(Complex64::new(0.0, 0.0)),
            Err(e) => return Err(e.into()),
        }
    }
    let pre = -I / (k_plus.sqrt() * k_minus.sqrt() * a);
    let t = pre * acc.exp();
    if !t.re.is_finite() || !t.im.is_finite() {
        return Err(PotentialError::AtPole { k: k_minus });
    }
    Ok(t)
}

/// `T_step = 4 k1 k3 / (k1 + k3)²`.
pub fn step_bound(k1: f64, k3: f64) -> f64 {
    4.0 * k1 * k3 / ((k1 + k3) * (k1 + k3))
}

/// Closed-form transmission probability at real energy `E`.
///
/// `E` must lie strictly above both asymptotic levels.
pub fn transmission_probability(
    spec: &PotentialSpec,
    energy: f64,
    c: &PhysicalConstants,
) -> Result<f64, PotentialError> {
    spec.validate()?;
    c.validate()?;
    let (vm, vp) = spec.asymptotic_limits()?;
    let limit = vm.max(vp);
    if energy.is_nan() || energy <= limit {
        return Err(PotentialError::Regime { energy, limit });
    }
    let beta = c.beta();
    let k_minus = (beta * (energy - vm)).sqrt();
    let k_plus = (beta * (energy - vp)).sqrt();
    let k = k_minus;
    let t = match *spec {
        PotentialSpec::Delta { alpha } => {
            let k0 = 0.5 * beta * alpha;
            1.0 / (1.0 + k0 * k0 / (k * k))
        }
        PotentialSpec::DoubleDelta { alpha, a } => {
            let k0 = 0.5 * beta * alpha;
            let (s, co) = (2.0 * k * a).sin_cos();
            let b = k * co + k0 * s;
            1.0 / (1.0 + 4.0 * k0 * k0 / k.powi(4) * b * b)
        }
        PotentialSpec::AsymDoubleDelta {
            alpha_plus,
            alpha_minus,
            a,
        } => {
            let kp = 0.5 * beta * alpha_plus;
            let km = 0.5 * beta * alpha_minus;
            let (s, co) = (2.0 * k * a).sin_cos();
            let d = kp - km;
            1.0 / (1.0 + d * d / (k * k) + 4.0 * kp * km / k.powi(4) * (k * co + kp * s) * (k * co + km * s))
        }
        PotentialSpec::Step { .. } => step_bound(k_minus, k_plus),
        PotentialSpec::RectBarrier { v0, a } => {
            let q2 = k * k - beta * v0;
            let k02 = beta * v0;
            let sq = sin_over_q_sq(q2, a);
            k * k / (k * k + 0.25 * k02 * k02 * sq)
        }
        PotentialSpec::AsymRectBarrier { v2, a, .. } => {
            let k1 = k_minus;
            let k3 = k_plus;
            let k22 = beta * (energy - v2);
            let sq = sin_over_q_sq(k22, a);
            let w = k1 * k1 * k3 * k3 + k22 * (k22 - k1 * k1 - k3 * k3);
            4.0 * k1 * k3 / ((k1 + k3) * (k1 + k3) + w * sq)
        }
        _ => {
            let eq = as_eckart(spec).ok_or(PotentialError::NotScattering { name: spec.name() })?;
            eckart_probability(eq.v0, eq.a, k_minus, k_plus, beta)
        }
    };
    Ok(t)
}

/// `(sin(2qa)/q)²` from `q²`, real whether `q` is real or imaginary.
fn sin_over_q_sq(q2: f64, a: f64) -> f64 {
    let x2 = 4.0 * a * a * q2;
    let sinc = if x2.abs() < 1e-8 {
        1.0 - x2 / 6.0
    } else if q2 > 0.0 {
        let x = x2.sqrt();
        x.sin() / x
    } else {
        let x = (-x2).sqrt();
        x.sinh() / x
    };
    4.0 * a * a * sinc * sinc
}

fn eckart_probability(v0: f64, a: f64, k_minus: f64, k_plus: f64, beta: f64) -> f64 {
    let xm = PI * k_minus * a;
    let xp = PI * k_plus * a;
    let xb = 0.5 * (xm + xp);
    // sinh(xm) sinh(xp) / sinh²(xb) with the common e^{2 xb} cancelled.
    let one_minus = |x: f64| -(-2.0 * x).exp_m1();
    let r = one_minus(xm) * one_minus(xp) / (one_minus(xb) * one_minus(xb));
    let s = principal_sqrt(Complex64::new(0.25 - beta * v0 * a * a, 0.0));
    let cos2 = (PI * s).cos().powi(2).re;
    let inv_sinh = 2.0 * (-xb).exp() / one_minus(xb);
    r / (1.0 + cos2 * inv_sinh * inv_sinh)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit() -> PhysicalConstants {
        PhysicalConstants::default()
    }

    #[test]
    fn delta_examples() {
        let c = unit();
        let free = transmission_amplitude(&PotentialSpec::Delta { alpha: 0.0 }, Complex64::new(0.7, 0.2), &c)
            .unwrap();
        assert_eq!(free.t, Complex64::new(1.0, 0.0));
        let d = PotentialSpec::Delta { alpha: 1.0 };
        let t = transmission_amplitude(&d, Complex64::new(1.0, 0.0), &c).unwrap().t;
        assert!((t - Complex64::new(0.5, 0.5)).norm() < 1e-15);
        assert!((transmission_probability(&d, 0.5, &c).unwrap() - 0.5).abs() < 1e-15);
        assert!(matches!(
            transmission_amplitude(&d, Complex64::new(0.0, 1.0), &c),
            Err(PotentialError::AtPole { .. })
        ));
    }

    #[test]
    fn zero_wavenumber_rejected() {
        let r = transmission_amplitude(&PotentialSpec::Step { v0: 0.0 }, Complex64::new(0.0, 0.0), &unit());
        assert_eq!(r, Err(PotentialError::ZeroWavenumber));
    }

    #[test]
    fn regime_enforced() {
        let s = PotentialSpec::Step { v0: 2.0 };
        assert!(matches!(
            transmission_probability(&s, 1.0, &unit()),
            Err(PotentialError::Regime { .. })
        ));
    }

    #[test]
    fn rect_at_top_of_barrier_is_finite() {
        let s = PotentialSpec::RectBarrier { v0: 1.0, a: 1.0 };
        let t = transmission_probability(&s, 1.0, &unit()).unwrap();
        // k² = 2, k0⁴ a² = 4.
        assert!((t - 2.0 / 6.0).abs() < 1e-14);
    }

    #[test]
    fn tanh_symmetric_is_transparent() {
        let s = PotentialSpec::Tanh {
            v_minus: 0.4,
            v_plus: 0.4,
            a: 2.0,
        };
        assert!((transmission_probability(&s, 1.3, &unit()).unwrap() - 1.0).abs() < 1e-15);
    }
}
