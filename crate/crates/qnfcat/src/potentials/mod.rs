//! Potential catalog: parameter containers, pointwise evaluation, asymptotic
//! wavenumbers, closed-form amplitudes, resonance families and the
//! (Möbius)² canonical form of the Eckart family.
//!
//! Wave conventions: outgoing waves are `e^{-ik|x|}`, incidence is from the
//! left, and the independent wavenumber of every amplitude is `k₋∞`. Bound
//! states sit at `Im k < 0`, quasi-normal wavenumbers at `Im k > 0`.

mod amplitude;
mod canonical;
mod resonance;

use num_complex::Complex64;
use thiserror::Error;

use crate::specfn::SpecFnError;

pub use amplitude::{
    amplitude_pair, step_bound, transmission_amplitude, transmission_probability,
    ScatteringAmplitudes,
};
pub use canonical::{
    as_eckart, canonicalize, hua_as_tietz, Canonical, EckartEquivalent, Mobius2Form,
};
pub use resonance::{resonances, ResonanceEntry, ResonanceKind};

/// Kinematic regime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Mode {
    /// `E = ħ²k²/2m`.
    #[default]
    Nonrelativistic,
    /// `ω² = k² + V`, i.e. `ħ²/2m → 1` and `E → ω²`.
    Relativistic,
}

/// Units of action and mass plus the kinematic regime.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    pub hbar: f64,
    pub mass: f64,
    pub mode: Mode,
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self {
            hbar: 1.0,
            mass: 1.0,
            mode: Mode::Nonrelativistic,
        }
    }
}

impl PhysicalConstants {
    /// Conversion factor `k² = β (E - V)`: `2m/ħ²`, or 1 in relativistic mode.
    pub fn beta(&self) -> f64 {
        match self.mode {
            Mode::Nonrelativistic => 2.0 * self.mass / (self.hbar * self.hbar),
            Mode::Relativistic => 1.0,
        }
    }

    pub fn validate(&self) -> Result<(), PotentialError> {
        if !(self.hbar > 0.0 && self.hbar.is_finite()) {
            return Err(PotentialError::InvalidParameter {
                name: "hbar",
                reason: "must be positive and finite",
            });
        }
        if !(self.mass > 0.0 && self.mass.is_finite()) {
            return Err(PotentialError::InvalidParameter {
                name: "mass",
                reason: "must be positive and finite",
            });
        }
        Ok(())
    }
}

/// Denominator choice of the Tietz family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TietzKind {
    Sinh,
    Cosh,
    Exp,
}

impl TietzKind {
    pub fn name(self) -> &'static str {
        match self {
            TietzKind::Sinh => "sinh",
            TietzKind::Cosh => "cosh",
            TietzKind::Exp => "exp",
        }
    }
}

/// One catalog potential with its physical parameters.
///
/// Energies are `v*`/`alpha*` fields, lengths are `a`, `b`, `d`, `l`, `x0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PotentialSpec {
    /// `α δ(x)`.
    Delta { alpha: f64 },
    /// `α [δ(x - a) + δ(x + a)]`.
    DoubleDelta { alpha: f64, a: f64 },
    /// `α₋ δ(x - a) + α₊ δ(x + a)`.
    AsymDoubleDelta {
        alpha_plus: f64,
        alpha_minus: f64,
        a: f64,
    },
    /// `V0` for `x > 0`, zero otherwise.
    Step { v0: f64 },
    /// `V0` on `|x| ≤ a`.
    RectBarrier { v0: f64, a: f64 },
    /// `V1 | V2 | V3` with interfaces at `∓a`.
    AsymRectBarrier { v1: f64, v2: f64, v3: f64, a: f64 },
    /// `(V₋ + V₊)/2 + (V₊ - V₋)/2 · tanh(x/a)`.
    Tanh { v_minus: f64, v_plus: f64, a: f64 },
    /// `V0 sech²(x/a)`.
    Sech2 { v0: f64, a: f64 },
    /// Tanh plus `V0 sech²(x/a)`.
    Eckart {
        v_minus: f64,
        v_plus: f64,
        v0: f64,
        a: f64,
    },
    /// `A0 + overall·M² + linear·M`, `M = (E1 + F1 u)/(E2 + F2 u)`, `u = e^{-2x/a}`.
    Mobius2(Mobius2Form),
    /// `V0 (1 - e^{-(x - x0)/a})²`.
    Morse { v0: f64, x0: f64, a: f64 },
    /// `V0 sech²(x/a)` under its historical name.
    PoschlTellerSech2 { v0: f64, a: f64 },
    /// `A e^{-2x/b}/(1 - e^{-x/b})² + B e^{-x/b}/(1 - e^{-x/b})` on `x > 0`.
    ManningRosen { a_coef: f64, b_coef: f64, b: f64 },
    /// `V0 e^{-x/a}/(1 - e^{-x/a})` on `x > 0`.
    Hulthen { v0: f64, a: f64 },
    /// `V0 [sinh((x - x0)/a) / {sinh, cosh, exp}(x/a)]²`.
    Tietz {
        v0: f64,
        x0: f64,
        a: f64,
        kind: TietzKind,
    },
    /// `V0 [(1 - e^{-2x/a}) / (1 - q e^{-2x/a})]²`.
    Hua { v0: f64, q: f64, a: f64 },
    /// `A + B tanh(x/d) + C sech²(x/d)`.
    RosenMorse {
        a_coef: f64,
        b_coef: f64,
        c_coef: f64,
        d: f64,
    },
    /// `V0 cosh²μ [tanh((x - μL)/L) + tanh μ]²`.
    MorseFeshbach { v0: f64, mu: f64, l: f64 },
    /// `-A ξ/(1 - ξ) - B ξ/(1 - ξ)²` with `ξ = -e^{2x/a}`.
    Eckart1930 { a_coef: f64, b_coef: f64, a: f64 },
}

/// Failures of the potential layer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum PotentialError {
    #[error("x = {x} lies outside the domain of {name}")]
    Domain { name: &'static str, x: f64 },
    #[error("{name} does not define a scattering problem")]
    NotScattering { name: &'static str },
    #[error("{name} is not in the Eckart family")]
    NotInFamily { name: &'static str },
    #[error("transmission amplitude has a pole at k = {k}")]
    AtPole { k: Complex64 },
    #[error("wavenumber must be nonzero")]
    ZeroWavenumber,
    #[error("energy {energy} is below the asymptotic level {limit}")]
    Regime { energy: f64, limit: f64 },
    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter {
        name: &'static str,
        reason: &'static str,
    },
    #[error(transparent)]
    SpecFn(#[from] SpecFnError),
}

impl PotentialSpec {
    /// Type tag used by the config schema.
    pub fn name(&self) -> &'static str {
        match self {
            PotentialSpec::Delta { .. } => "delta",
            PotentialSpec::DoubleDelta { .. } => "double-delta",
            PotentialSpec::AsymDoubleDelta { .. } => "asym-double-delta",
            PotentialSpec::Step { .. } => "step",
            PotentialSpec::RectBarrier { .. } => "rect-barrier",
            PotentialSpec::AsymRectBarrier { .. } => "asym-rect-barrier",
            PotentialSpec::Tanh { .. } => "tanh",
            PotentialSpec::Sech2 { .. } => "sech2",
            PotentialSpec::Eckart { .. } => "eckart",
            PotentialSpec::Mobius2(_) => "mobius2",
            PotentialSpec::Morse { .. } => "morse",
            PotentialSpec::PoschlTellerSech2 { .. } => "poschl-teller",
            PotentialSpec::ManningRosen { .. } => "manning-rosen",
            PotentialSpec::Hulthen { .. } => "hulthen",
            PotentialSpec::Tietz { .. } => "tietz",
            PotentialSpec::Hua { .. } => "hua",
            PotentialSpec::RosenMorse { .. } => "rosen-morse",
            PotentialSpec::MorseFeshbach { .. } => "morse-feshbach",
            PotentialSpec::Eckart1930 { .. } => "eckart-1930",
        }
    }

    /// Length scale of the potential, if it has one.
    pub fn width(&self) -> Option<f64> {
        match *self {
            PotentialSpec::Delta { .. } | PotentialSpec::Step { .. } => None,
            PotentialSpec::DoubleDelta { a, .. }
            | PotentialSpec::AsymDoubleDelta { a, .. }
            | PotentialSpec::RectBarrier { a, .. }
            | PotentialSpec::AsymRectBarrier { a, .. }
            | PotentialSpec::Tanh { a, .. }
            | PotentialSpec::Sech2 { a, .. }
            | PotentialSpec::Eckart { a, .. }
            | PotentialSpec::Morse { a, .. }
            | PotentialSpec::PoschlTellerSech2 { a, .. }
            | PotentialSpec::Hulthen { a, .. }
            | PotentialSpec::Tietz { a, .. }
            | PotentialSpec::Hua { a, .. }
            | PotentialSpec::Eckart1930 { a, .. } => Some(a),
            PotentialSpec::Mobius2(f) => Some(f.a),
            PotentialSpec::ManningRosen { b, .. } => Some(b),
            PotentialSpec::RosenMorse { d, .. } => Some(d),
            PotentialSpec::MorseFeshbach { l, .. } => Some(l),
        }
    }

    /// Checks finiteness and positivity of length scales.
    pub fn validate(&self) -> Result<(), PotentialError> {
        let values: Vec<f64> = match *self {
            PotentialSpec::Delta { alpha } => vec![alpha],
            PotentialSpec::DoubleDelta { alpha, a } => vec![alpha, a],
            PotentialSpec::AsymDoubleDelta {
                alpha_plus,
                alpha_minus,
                a,
            } => vec![alpha_plus, alpha_minus, a],
            PotentialSpec::Step { v0 } => vec![v0],
            PotentialSpec::RectBarrier { v0, a } => vec![v0, a],
            PotentialSpec::AsymRectBarrier { v1, v2, v3, a } => vec![v1, v2, v3, a],
            PotentialSpec::Tanh { v_minus, v_plus, a } => vec![v_minus, v_plus, a],
            PotentialSpec::Sech2 { v0, a } | PotentialSpec::PoschlTellerSech2 { v0, a } => {
                vec![v0, a]
            }
            PotentialSpec::Eckart {
                v_minus,
                v_plus,
                v0,
                a,
            } => vec![v_minus, v_plus, v0, a],
            PotentialSpec::Mobius2(f) => {
                vec![f.a0, f.e1, f.f1, f.e2, f.f2, f.a, f.overall, f.linear]
            }
            PotentialSpec::Morse { v0, x0, a } => vec![v0, x0, a],
            PotentialSpec::ManningRosen { a_coef, b_coef, b } => vec![a_coef, b_coef, b],
            PotentialSpec::Hulthen { v0, a } => vec![v0, a],
            PotentialSpec::Tietz { v0, x0, a, .. } => vec![v0, x0, a],
            PotentialSpec::Hua { v0, q, a } => vec![v0, q, a],
            PotentialSpec::RosenMorse {
                a_coef,
                b_coef,
                c_coef,
                d,
            } => vec![a_coef, b_coef, c_coef, d],
            PotentialSpec::MorseFeshbach { v0, mu, l } => vec![v0, mu, l],
            PotentialSpec::Eckart1930 { a_coef, b_coef, a } => vec![a_coef, b_coef, a],
        };
        if values.iter().any(|v| !v.is_finite()) {
            return Err(PotentialError::InvalidParameter {
                name: self.name(),
                reason: "parameters must be finite",
            });
        }
        if let Some(w) = self.width() {
            if w <= 0.0 {
                return Err(PotentialError::InvalidParameter {
                    name: "a",
                    reason: "length scale must be positive",
                });
            }
        }
        if let PotentialSpec::Mobius2(f) = self {
            if f.e1 * f.f2 - f.e2 * f.f1 == 0.0 {
                return Err(PotentialError::InvalidParameter {
                    name: "mobius2",
                    reason: "E1 F2 - E2 F1 must be nonzero",
                });
            }
            if f.e2 == 0.0 && f.f2 == 0.0 {
                return Err(PotentialError::InvalidParameter {
                    name: "mobius2",
                    reason: "E2 and F2 cannot both vanish",
                });
            }
        }
        Ok(())
    }

    /// Open interval on which the potential is finite.
    pub fn domain(&self) -> (f64, f64) {
        let full = (f64::NEG_INFINITY, f64::INFINITY);
        match *self {
            PotentialSpec::ManningRosen { .. } | PotentialSpec::Hulthen { .. } => {
                (0.0, f64::INFINITY)
            }
            PotentialSpec::Tietz {
                kind: TietzKind::Sinh,
                ..
            } => (0.0, f64::INFINITY),
            PotentialSpec::Hua { q, a, .. } if q > 0.0 => (0.5 * a * q.ln(), f64::INFINITY),
            PotentialSpec::Mobius2(f) => match f.pole() {
                Some(xp) => (xp, f64::INFINITY),
                None => full,
            },
            _ => full,
        }
    }

    /// Whether the potential has finite limits at both infinities and no poles.
    pub fn is_scattering(&self) -> bool {
        match *self {
            PotentialSpec::Morse { .. }
            | PotentialSpec::ManningRosen { .. }
            | PotentialSpec::Hulthen { .. } => false,
            PotentialSpec::Tietz { kind, .. } => kind == TietzKind::Cosh,
            PotentialSpec::Hua { q, .. } => q < 0.0,
            PotentialSpec::Mobius2(f) => f.is_scattering(),
            _ => true,
        }
    }

    /// `(V(-∞), V(+∞))`.
    pub fn asymptotic_limits(&self) -> Result<(f64, f64), PotentialError> {
        if !self.is_scattering() {
            return Err(PotentialError::NotScattering { name: self.name() });
        }
        Ok(match *self {
            PotentialSpec::Delta { .. }
            | PotentialSpec::DoubleDelta { .. }
            | PotentialSpec::AsymDoubleDelta { .. }
            | PotentialSpec::RectBarrier { .. }
            | PotentialSpec::Sech2 { .. }
            | PotentialSpec::PoschlTellerSech2 { .. } => (0.0, 0.0),
            PotentialSpec::Step { v0 } => (0.0, v0),
            PotentialSpec::AsymRectBarrier { v1, v3, .. } => (v1, v3),
            PotentialSpec::Tanh {
                v_minus, v_plus, ..
            }
            | PotentialSpec::Eckart {
                v_minus, v_plus, ..
            } => (v_minus, v_plus),
            _ => {
                let eq = as_eckart(self).ok_or(PotentialError::NotScattering { name: self.name() })?;
                (eq.v_minus, eq.v_plus)
            }
        })
    }

    /// Whether the two asymptotic levels differ.
    pub fn is_asymmetric(&self) -> bool {
        self.asymptotic_limits().map(|(l, r)| l != r).unwrap_or(false)
    }
}

/// `V(x)` from the defining formula; delta terms contribute zero off their support.
pub fn evaluate(spec: &PotentialSpec, x: f64) -> Result<f64, PotentialError> {
    let (lo, hi) = spec.domain();
    if !(x > lo && x < hi) {
        return Err(PotentialError::Domain {
            name: spec.name(),
            x,
        });
    }
    let sech2 = |y: f64| {
        let c = y.cosh();
        1.0 / (c * c)
    };
    let v = match *spec {
        PotentialSpec::Delta { .. }
        | PotentialSpec::DoubleDelta { .. }
        | PotentialSpec::AsymDoubleDelta { .. } => 0.0,
        PotentialSpec::Step { v0 } => {
            if x > 0.0 {
                v0
            } else {
                0.0
            }
        }
        PotentialSpec::RectBarrier { v0, a } => {
            if x.abs() <= a {
                v0
            } else {
                0.0
            }
        }
        PotentialSpec::AsymRectBarrier { v1, v2, v3, a } => {
            if x < -a {
                v1
            } else if x > a {
                v3
            } else {
                v2
            }
        }
        PotentialSpec::Tanh { v_minus, v_plus, a } => {
            0.5 * (v_minus + v_plus) + 0.5 * (v_plus - v_minus) * (x / a).tanh()
        }
        PotentialSpec::Sech2 { v0, a } | PotentialSpec::PoschlTellerSech2 { v0, a } => {
            v0 * sech2(x / a)
        }
        PotentialSpec::Eckart {
            v_minus,
            v_plus,
            v0,
            a,
        } => {
            0.5 * (v_minus + v_plus) + 0.5 * (v_plus - v_minus) * (x / a).tanh() + v0 * sech2(x / a)
        }
        PotentialSpec::Mobius2(f) => f.evaluate(x).ok_or(PotentialError::Domain {
            name: spec.name(),
            x,
        })?,
        PotentialSpec::Morse { v0, x0, a } => {
            let s = 1.0 - (-(x - x0) / a).exp();
            v0 * s * s
        }
        PotentialSpec::ManningRosen { a_coef, b_coef, b } => {
            let e = (-x / b).exp();
            let d = 1.0 - e;
            a_coef * e * e / (d * d) + b_coef * e / d
        }
        PotentialSpec::Hulthen { v0, a } => {
            let e = (-x / a).exp();
            v0 * e / (1.0 - e)
        }
        PotentialSpec::Tietz { v0, x0, a, kind } => {
            let num = ((x - x0) / a).sinh();
            let den = match kind {
                TietzKind::Sinh => (x / a).sinh(),
                TietzKind::Cosh => (x / a).cosh(),
                TietzKind::Exp => (x / a).exp(),
            };
            let r = num / den;
            v0 * r * r
        }
        PotentialSpec::Hua { v0, q, a } => {
            let u = (-2.0 * x / a).exp();
            let r = (1.0 - u) / (1.0 - q * u);
            v0 * r * r
        }
        PotentialSpec::RosenMorse {
            a_coef,
            b_coef,
            c_coef,
            d,
        } => a_coef + b_coef * (x / d).tanh() + c_coef * sech2(x / d),
        PotentialSpec::MorseFeshbach { v0, mu, l } => {
            let s = ((x - mu * l) / l).tanh() + mu.tanh();
            let c = mu.cosh();
            v0 * c * c * s * s
        }
        PotentialSpec::Eckart1930 { a_coef, b_coef, a } => {
            let xi = -(2.0 * x / a).exp();
            let d = 1.0 - xi;
            -a_coef * xi / d - b_coef * xi / (d * d)
        }
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(PotentialError::Domain {
            name: spec.name(),
            x,
        })
    }
}

/// `(k₋∞, k₊∞) = √(β (E - V±∞))` on the principal branch.
pub fn asymptotic_wavenumbers(
    spec: &PotentialSpec,
    energy: Complex64,
    c: &PhysicalConstants,
) -> Result<(Complex64, Complex64), PotentialError> {
    let (vm, vp) = spec.asymptotic_limits()?;
    let beta = c.beta();
    Ok((
        principal_sqrt(beta * (energy - vm)),
        principal_sqrt(beta * (energy - vp)),
    ))
}

/// Principal square root with real arguments taken from the upper side of the cut.
pub(crate) fn principal_sqrt(z: Complex64) -> Complex64 {
    let z = if z.im == 0.0 {
        Complex64::new(z.re, 0.0)
    } else {
        z
    };
    let r = z.sqrt();
    Complex64::new(r.re, if r.im == 0.0 { 0.0 } else { r.im })
}

#[cfg(test)]
mod tests {
    use super::*;

    const UNIT: PhysicalConstants = PhysicalConstants {
        hbar: 1.0,
        mass: 1.0,
        mode: Mode::Nonrelativistic,
    };

    #[test]
    fn pointwise_examples() {
        let s = PotentialSpec::Sech2 { v0: -1.7, a: 2.0 };
        assert_eq!(evaluate(&s, 0.0).unwrap(), -1.7);
        let t = PotentialSpec::Tanh {
            v_minus: 0.5,
            v_plus: 3.0,
            a: 1.0,
        };
        assert_eq!(evaluate(&t, 0.0).unwrap(), 1.75);
        let e = PotentialSpec::Eckart {
            v_minus: 1.0,
            v_plus: 3.0,
            v0: -2.0,
            a: 1.0,
        };
        assert!((evaluate(&e, 40.0).unwrap() - 3.0).abs() < 1e-15);
        assert!((evaluate(&e, -40.0).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn domain_errors() {
        let h = PotentialSpec::Hulthen { v0: 1.0, a: 1.0 };
        assert!(matches!(evaluate(&h, 0.0), Err(PotentialError::Domain { .. })));
        assert!(evaluate(&h, 0.1).is_ok());
        let mr = PotentialSpec::ManningRosen {
            a_coef: 1.0,
            b_coef: 2.0,
            b: 1.0,
        };
        assert!(evaluate(&mr, -1.0).is_err());
    }

    #[test]
    fn wavenumber_examples() {
        let one = Complex64::new(1.0, 0.0);
        let (km, kp) = asymptotic_wavenumbers(&PotentialSpec::Step { v0: 0.0 }, one, &UNIT).unwrap();
        assert_eq!(km, Complex64::new(2f64.sqrt(), 0.0));
        assert_eq!(kp, km);
        let t = PotentialSpec::Tanh {
            v_minus: 0.0,
            v_plus: 2.0,
            a: 1.0,
        };
        let (km, kp) = asymptotic_wavenumbers(&t, one, &UNIT).unwrap();
        assert_eq!(km, Complex64::new(2f64.sqrt(), 0.0));
        assert_eq!(kp, Complex64::new(0.0, 2f64.sqrt()));
        let e = PotentialSpec::Eckart {
            v_minus: 1.0,
            v_plus: 3.0,
            v0: 0.3,
            a: 1.0,
        };
        let (km, kp) = asymptotic_wavenumbers(&e, Complex64::new(5.0, 0.0), &UNIT).unwrap();
        assert!((km - 8f64.sqrt()).norm() < 1e-15);
        assert!((kp - 2.0).norm() < 1e-15);
    }

    #[test]
    fn non_scattering_is_typed() {
        let m = PotentialSpec::Morse {
            v0: 1.0,
            x0: 0.0,
            a: 1.0,
        };
        assert_eq!(
            asymptotic_wavenumbers(&m, Complex64::new(1.0, 0.0), &UNIT),
            Err(PotentialError::NotScattering { name: "morse" })
        );
    }

    #[test]
    fn relativistic_beta_is_one() {
        let c = PhysicalConstants {
            hbar: 3.0,
            mass: 7.0,
            mode: Mode::Relativistic,
        };
        assert_eq!(c.beta(), 1.0);
        assert_eq!(UNIT.beta(), 2.0);
    }
}
