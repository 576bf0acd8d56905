//! Direct integration of `ψ'' = [β (V - V₊) - k₊²] ψ` for the smooth
//! (Eckart-family) potentials.

use num_complex::Complex64;

use super::{OdeMode, OdeSettings, OracleError};
use crate::potentials::{as_eckart, evaluate, PhysicalConstants, PotentialSpec};

const I: Complex64 = Complex64::new(0.0, 1.0);
const MAX_TERMS: usize = 5000;
const MAX_STEPS: usize = 2_000_000;

type State = [Complex64; 2];

/// Raw amplitudes from the ODE.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct OdeAmplitudes {
    pub t_raw: Complex64,
    pub r: Complex64,
}

/// Dormand-Prince 5(4) with the usual step control, from `x0` to `x1`.
pub(crate) fn dopri5(
    f: &dyn Fn(f64, &State) -> State,
    x0: f64,
    x1: f64,
    y0: State,
    rtol: f64,
    atol: f64,
    max_step: f64,
) -> Result<State, OracleError> {
    const C: [f64; 7] = [0.0, 0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0];
    const A: [[f64; 6]; 7] = [
        [0.0; 6],
        [0.2, 0.0, 0.0, 0.0, 0.0, 0.0],
        [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
        [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
        [
            19372.0 / 6561.0,
            -25360.0 / 2187.0,
            64448.0 / 6561.0,
            -212.0 / 729.0,
            0.0,
            0.0,
        ],
        [
            9017.0 / 3168.0,
            -355.0 / 33.0,
            46732.0 / 5247.0,
            49.0 / 176.0,
            -5103.0 / 18656.0,
            0.0,
        ],
        [
            35.0 / 384.0,
            0.0,
            500.0 / 1113.0,
            125.0 / 192.0,
            -2187.0 / 6784.0,
            11.0 / 84.0,
        ],
    ];
    const E: [f64; 7] = [
        71.0 / 57600.0,
        0.0,
        -71.0 / 16695.0,
        71.0 / 1920.0,
        -17253.0 / 339200.0,
        22.0 / 525.0,
        -1.0 / 40.0,
    ];
    let span = x1 - x0;
    if span == 0.0 {
        return Ok(y0);
    }
    let dir = span.signum();
    let max_step = max_step.min(span.abs());
    let mut h = (0.01 * span.abs()).min(max_step) * dir;
    let mut x = x0;
    let mut y = y0;
    let mut k = [[Complex64::new(0.0, 0.0); 2]; 7];
    k[0] = f(x, &y);
    for _ in 0..MAX_STEPS {
        if (x1 - x) * dir <= 0.0 {
            return Ok(y);
        }
        if (x + h - x1) * dir > 0.0 {
            h = x1 - x;
        }
        for s in 1..7 {
            let mut ys = y;
            for (j, kj) in k.iter().enumerate().take(s) {
                let aij = A[s][j];
                if aij != 0.0 {
                    ys[0] += h * aij * kj[0];
                    ys[1] += h * aij * kj[1];
                }
            }
            k[s] = f(x + C[s] * h, &ys);
        }
        let mut y_new = y;
        for (j, kj) in k.iter().enumerate().take(6) {
            y_new[0] += h * A[6][j] * kj[0];
            y_new[1] += h * A[6][j] * kj[1];
        }
        let mut err: f64 = 0.0;
        for i in 0..2 {
            let mut e = Complex64::new(0.0, 0.0);
            for (j, kj) in k.iter().enumerate() {
                e += h * E[j] * kj[i];
            }
            let scale = atol + rtol * y[i].norm().max(y_new[i].norm());
            err = err.max(e.norm() / scale);
        }
        if !err.is_finite() {
            return Err(OracleError::Overflow { exponent: f64::INFINITY });
        }
        if err <= 1.0 {
            x += h;
            y = y_new;
            k[0] = k[6];
        }
        let factor = if err == 0.0 {
            5.0
        } else {
            (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
        };
        h = (h * factor).abs().min(max_step) * dir;
        if h.abs() < 1e-14 * span.abs() {
            return Err(OracleError::StepUnderflow { x });
        }
    }
    Err(OracleError::StepUnderflow { x })
}

/// `e^{λ(x-s)} Σ c_j τ^j` and its derivative at `τ = e^{2σ(x-s)/a}`, where
/// `c_j (4j/a)(j/a + σλ) = Σ_{m=1..j} w_m c_{j-m}` and `c_0 = 1`.
fn jost_series(
    lambda: Complex64,
    sigma: f64,
    w: &dyn Fn(usize) -> f64,
    a: f64,
    y: f64,
) -> Result<State, OracleError> {
    let tau = (2.0 * sigma * y / a).exp();
    let mut coeffs = vec![Complex64::new(1.0, 0.0)];
    let mut sum = Complex64::new(1.0, 0.0);
    let mut dsum = lambda;
    let mut power = 1.0;
    let mut small = 0;
    for j in 1..MAX_TERMS {
        let jf = j as f64;
        let den = (4.0 * jf / a) * (jf / a + sigma * lambda);
        if den.norm() == 0.0 {
            return Err(OracleError::Singular {
                k: I * lambda * sigma,
            });
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for m in 1..=j {
            acc += w(m) * coeffs[j - m];
        }
        let cj = acc / den;
        coeffs.push(cj);
        power *= tau;
        let term = cj * power;
        sum += term;
        dsum += term * (lambda + 2.0 * sigma * jf / a);
        if term.norm() <= 1e-18 * sum.norm().max(1e-300) {
            small += 1;
            if small >= 4 {
                let e = (lambda * y).exp();
                return Ok([e * sum, e * dsum]);
            }
        } else {
            small = 0;
        }
        if !term.is_finite() {
            break;
        }
    }
    Err(OracleError::SeriesDiverged)
}

/// Amplitudes of an Eckart-family potential by integration.
pub(crate) fn ode_amplitudes(
    spec: &PotentialSpec,
    k_minus: Complex64,
    k_plus: Complex64,
    c: &PhysicalConstants,
    settings: &OdeSettings,
) -> Result<OdeAmplitudes, OracleError> {
    let eq = as_eckart(spec).ok_or(crate::potentials::PotentialError::NotScattering { name: spec.name() })?;
    let beta = c.beta();
    let (a, s) = (eq.a, eq.shift);
    let (_, v_plus) = spec.asymptotic_limits()?;
    let kp2 = k_plus * k_plus;
    let spec = *spec;
    // Work in y = x - s; V is evaluated at the true position.
    let rhs = move |y: f64, st: &State| -> State {
        let v = evaluate(&spec, y + s).unwrap_or(f64::NAN);
        [st[1], (beta * (v - v_plus) - kp2) * st[0]]
    };
    let max_step = settings.max_step.unwrap_or(0.05) * a;
    let solve = |y0: f64, y1: f64, st: State| {
        dopri5(&rhs, y0, y1, st, settings.rtol, settings.atol, max_step)
    };
    match settings.mode {
        OdeMode::Truncated { half_width } => {
            let l = half_width;
            let growth = (k_plus.im.abs() + k_minus.im.abs()) * l;
            if growth > 690.0 {
                return Err(OracleError::Overflow { exponent: growth });
            }
            let start = [(-I * k_plus * l).exp(), -I * k_plus * (-I * k_plus * l).exp()];
            let st = solve(l, -l, start)?;
            let amp_a = 0.5 * (st[0] + I * st[1] / k_minus) * (-I * k_minus * l).exp();
            let amp_b = 0.5 * (st[0] - I * st[1] / k_minus) * (I * k_minus * l).exp();
            Ok(OdeAmplitudes {
                t_raw: (I * (k_plus - k_minus) * s).exp() / amp_a,
                r: amp_b / amp_a * (-2.0 * I * k_minus * s).exp(),
            })
        }
        OdeMode::JostMatched => {
            let dv = beta * (eq.v_plus - eq.v_minus);
            let v0 = beta * eq.v0;
            let w_right = move |m: usize| {
                let mf = m as f64;
                let sign = if m.is_multiple_of(2) { 1.0 } else { -1.0 };
                sign * (dv - 4.0 * mf * v0)
            };
            let w_left = move |m: usize| {
                let mf = m as f64;
                let sign = if m.is_multiple_of(2) { -1.0 } else { 1.0 };
                sign * (dv + 4.0 * mf * v0)
            };
            let x = 0.5 * a;
            let f_plus = jost_series(-I * k_plus, -1.0, &w_right, a, x)?;
            let f_minus = jost_series(I * k_minus, 1.0, &w_left, a, -x)?;
            let g_minus = jost_series(-I * k_minus, 1.0, &w_left, a, -x)?;
            let fp = solve(x, 0.0, f_plus)?;
            let fm = solve(-x, 0.0, f_minus)?;
            let gm = solve(-x, 0.0, g_minus)?;
            let w_pm = fp[0] * fm[1] - fp[1] * fm[0];
            let w_pg = fp[0] * gm[1] - fp[1] * gm[0];
            let t_raw = 2.0 * I * k_minus * (-I * (k_minus - k_plus) * s).exp() / w_pm;
            let r = -(-2.0 * I * k_minus * s).exp() * w_pg / w_pm;
            Ok(OdeAmplitudes { t_raw, r })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dopri_harmonic() {
        let f = |_x: f64, y: &State| [y[1], -y[0]];
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let y = dopri5(&f, 0.0, 3.0, [one, zero], 1e-12, 1e-14, 0.1).unwrap();
        assert!((y[0] - 3f64.cos()).norm() < 1e-10);
        let back = dopri5(&f, 3.0, 0.0, y, 1e-12, 1e-14, 0.1).unwrap();
        assert!((back[0] - one).norm() < 1e-10);
    }
}
