use super::{PotentialError, PotentialSpec, TietzKind};

/// `V(x) = A0 + overall·M² + linear·M` with `M = (E1 + F1 u)/(E2 + F2 u)` and
/// `u = e^{-2x/a}`.
///
/// `linear` is zero for genuine squares; it carries the limiting members of the
/// family (pure tanh, Hulthen) that are first-order in `M`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mobius2Form {
    pub a0: f64,
    pub e1: f64,
    pub f1: f64,
    pub e2: f64,
    pub f2: f64,
    pub a: f64,
    pub overall: f64,
    pub linear: f64,
}

impl Mobius2Form {
    /// `None` at the pole.
    pub fn evaluate(&self, x: f64) -> Option<f64> {
        // Evaluate in whichever of e^{∓2x/a} stays bounded.
        let (num, den) = if x >= 0.0 {
            let u = (-2.0 * x / self.a).exp();
            (self.e1 + self.f1 * u, self.e2 + self.f2 * u)
        } else {
            let v = (2.0 * x / self.a).exp();
            (self.e1 * v + self.f1, self.e2 * v + self.f2)
        };
        if den == 0.0 {
            return None;
        }
        let m = num / den;
        let v = self.a0 + self.overall * m * m + self.linear * m;
        v.is_finite().then_some(v)
    }

    /// Location of the pole when `E2` and `F2` have opposite signs.
    pub fn pole(&self) -> Option<f64> {
        (self.e2 * self.f2 < 0.0).then(|| -0.5 * self.a * (-self.e2 / self.f2).ln())
    }

    /// No pole and finite, distinct-or-equal limits at both ends.
    pub fn is_scattering(&self) -> bool {
        self.e2 != 0.0 && self.f2 != 0.0 && self.e2 * self.f2 > 0.0
    }

    /// `(V(-∞), V(+∞))` for scattering forms.
    pub fn limits(&self) -> Option<(f64, f64)> {
        if !self.is_scattering() {
            return None;
        }
        let at = |m: f64| self.a0 + self.overall * m * m + self.linear * m;
        Some((at(self.f1 / self.f2), at(self.e1 / self.e2)))
    }
}

/// Canonical (Möbius)² representative with `V_spec(x) = form(x - shift)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Canonical {
    pub form: Mobius2Form,
    pub shift: f64,
    /// Set for limiting members that do not define a scattering problem
    /// (poles, or a side that diverges).
    pub degenerate: bool,
}

/// Standard Eckart parameters with `V_spec(x) = V_eckart(x - shift)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EckartEquivalent {
    pub v_minus: f64,
    pub v_plus: f64,
    pub v0: f64,
    pub a: f64,
    pub shift: f64,
}

/// Maps an Eckart-family or historical potential onto (Möbius)² form.
pub fn canonicalize(spec: &PotentialSpec) -> Result<Canonical, PotentialError> {
    let plain = |form: Mobius2Form| Canonical {
        form,
        shift: 0.0,
        degenerate: !form.is_scattering(),
    };
    Ok(match *spec {
        PotentialSpec::Tanh { v_minus, v_plus, a } => {
            plain(from_rosen_morse(0.5 * (v_minus + v_plus), 0.5 * (v_plus - v_minus), 0.0, a))
        }
        PotentialSpec::Sech2 { v0, a } | PotentialSpec::PoschlTellerSech2 { v0, a } => {
            plain(from_rosen_morse(0.0, 0.0, v0, a))
        }
        PotentialSpec::Eckart {
            v_minus,
            v_plus,
            v0,
            a,
        } => plain(from_rosen_morse(
            0.5 * (v_minus + v_plus),
            0.5 * (v_plus - v_minus),
            v0,
            a,
        )),
        PotentialSpec::RosenMorse {
            a_coef,
            b_coef,
            c_coef,
            d,
        } => plain(from_rosen_morse(a_coef, b_coef, c_coef, d)),
        PotentialSpec::Eckart1930 { a_coef, b_coef, a } => {
            plain(from_rosen_morse(0.5 * a_coef, 0.5 * a_coef, 0.25 * b_coef, a))
        }
        PotentialSpec::MorseFeshbach { v0, mu, l } => {
            let d = mu.tanh();
            let c = mu.cosh();
            let form = Mobius2Form {
                a0: 0.0,
                e1: 1.0 + d,
                f1: d - 1.0,
                e2: 1.0,
                f2: 1.0,
                a: l,
                overall: v0 * c * c,
                linear: 0.0,
            };
            Canonical {
                form,
                shift: mu * l,
                degenerate: false,
            }
        }
        PotentialSpec::Mobius2(form) => plain(form),
        PotentialSpec::Morse { v0, x0, a } => plain(Mobius2Form {
            a0: 0.0,
            e1: 1.0,
            f1: -(x0 / a).exp(),
            e2: 1.0,
            f2: 0.0,
            a: 2.0 * a,
            overall: v0,
            linear: 0.0,
        }),
        PotentialSpec::ManningRosen { a_coef, b_coef, b } => {
            // A w² + B w with w = u/(1 - u), u = e^{-x/b}.
            let form = if a_coef == 0.0 {
                Mobius2Form {
                    a0: 0.0,
                    e1: 0.0,
                    f1: 1.0,
                    e2: 1.0,
                    f2: -1.0,
                    a: 2.0 * b,
                    overall: 0.0,
                    linear: b_coef,
                }
            } else {
                let h = b_coef / (2.0 * a_coef);
                Mobius2Form {
                    a0: -b_coef * h / 2.0,
                    e1: h,
                    f1: 1.0 - h,
                    e2: 1.0,
                    f2: -1.0,
                    a: 2.0 * b,
                    overall: a_coef,
                    linear: 0.0,
                }
            };
            plain(form)
        }
        PotentialSpec::Hulthen { v0, a } => plain(Mobius2Form {
            a0: 0.0,
            e1: 0.0,
            f1: 1.0,
            e2: 1.0,
            f2: -1.0,
            a: 2.0 * a,
            overall: 0.0,
            linear: v0,
        }),
        PotentialSpec::Tietz { v0, x0, a, kind } => {
            let (e2, f2) = match kind {
                TietzKind::Sinh => (1.0, -1.0),
                TietzKind::Cosh => (1.0, 1.0),
                TietzKind::Exp => (2.0, 0.0),
            };
            plain(Mobius2Form {
                a0: 0.0,
                e1: (-x0 / a).exp(),
                f1: -(x0 / a).exp(),
                e2,
                f2,
                a,
                overall: v0,
                linear: 0.0,
            })
        }
        PotentialSpec::Hua { v0, q, a } => plain(Mobius2Form {
            a0: 0.0,
            e1: 1.0,
            f1: -1.0,
            e2: 1.0,
            f2: -q,
            a,
            overall: v0,
            linear: 0.0,
        }),
        PotentialSpec::Delta { .. }
        | PotentialSpec::DoubleDelta { .. }
        | PotentialSpec::AsymDoubleDelta { .. }
        | PotentialSpec::Step { .. }
        | PotentialSpec::RectBarrier { .. }
        | PotentialSpec::AsymRectBarrier { .. } => {
            return Err(PotentialError::NotInFamily { name: spec.name() })
        }
    })
}

/// `A + B tanh(x/a) + C sech²(x/a)` as a perfect square in `u`, or as the
/// linear form when `C = 0`.
fn from_rosen_morse(a_coef: f64, b_coef: f64, c_coef: f64, a: f64) -> Mobius2Form {
    if c_coef == 0.0 {
        // tanh(x/a) = (1 - u)/(1 + u).
        return Mobius2Form {
            a0: a_coef,
            e1: 1.0,
            f1: -1.0,
            e2: 1.0,
            f2: 1.0,
            a,
            overall: 0.0,
            linear: b_coef,
        };
    }
    // (A - A0)(1+u)² + B(1-u²) + 4Cu must be a perfect square in u.
    let y = -(b_coef * b_coef + 4.0 * c_coef * c_coef) / (4.0 * c_coef);
    let r = y + b_coef;
    let p = y - b_coef;
    let q = 2.0 * y + 4.0 * c_coef;
    let scale = r.abs().max(p.abs());
    let sign = if p.abs() >= r.abs() { p.signum() } else { r.signum() };
    let e1 = (r.abs() / scale).sqrt();
    let f1 = (p.abs() / scale).sqrt() * if q * sign < 0.0 { -1.0 } else { 1.0 };
    Mobius2Form {
        a0: a_coef - y,
        e1,
        f1,
        e2: 1.0,
        f2: 1.0,
        a,
        overall: sign * scale,
        linear: 0.0,
    }
}

/// Standard Eckart parameters for any scattering member of the family.
pub fn as_eckart(spec: &PotentialSpec) -> Option<EckartEquivalent> {
    let direct = |v_minus, v_plus, v0, a, shift| EckartEquivalent {
        v_minus,
        v_plus,
        v0,
        a,
        shift,
    };
    match *spec {
        PotentialSpec::Tanh { v_minus, v_plus, a } => Some(direct(v_minus, v_plus, 0.0, a, 0.0)),
        PotentialSpec::Sech2 { v0, a } | PotentialSpec::PoschlTellerSech2 { v0, a } => {
            Some(direct(0.0, 0.0, v0, a, 0.0))
        }
        PotentialSpec::Eckart {
            v_minus,
            v_plus,
            v0,
            a,
        } => Some(direct(v_minus, v_plus, v0, a, 0.0)),
        PotentialSpec::RosenMorse {
            a_coef,
            b_coef,
            c_coef,
            d,
        } => Some(direct(a_coef - b_coef, a_coef + b_coef, c_coef, d, 0.0)),
        PotentialSpec::Eckart1930 { a_coef, b_coef, a } => {
            Some(direct(0.0, a_coef, 0.25 * b_coef, a, 0.0))
        }
        PotentialSpec::MorseFeshbach { v0, mu, l } => {
            // V1 (τ + D)² = V1 (1 + D²) + 2 D V1 τ - V1 sech².
            let d = mu.tanh();
            let v1 = v0 * mu.cosh().powi(2);
            let mean = v1 * (1.0 + d * d);
            let half = 2.0 * d * v1;
            Some(direct(mean - half, mean + half, -v1, l, mu * l))
        }
        _ => {
            let canon = canonicalize(spec).ok()?;
            let mut eq = mobius_to_eckart(&canon.form)?;
            eq.shift += canon.shift;
            Some(eq)
        }
    }
}

fn mobius_to_eckart(f: &Mobius2Form) -> Option<EckartEquivalent> {
    if !f.is_scattering() {
        return None;
    }
    let p = f.e1 / f.e2;
    let q = f.f1 / f.f2;
    let c = 0.5 * (p + q);
    let d = 0.5 * (p - q);
    let mean = f.a0 + f.overall * (c * c + d * d) + f.linear * c;
    let half = 2.0 * f.overall * c * d + f.linear * d;
    Some(EckartEquivalent {
        v_minus: mean - half,
        v_plus: mean + half,
        v0: -f.overall * d * d,
        a: f.a,
        shift: 0.5 * f.a * (f.f2 / f.e2).ln(),
    })
}

/// Hua's potential rewritten as a Tietz potential:
/// `V_hua(x) = V_tietz(x - shift)`.
///
/// `q > 0` uses `tanh θ = (1 - q)/(1 + q)` and the sinh denominator; `q < 0`
/// uses `tanh θ = (1 + q)/(1 - q)` and the cosh denominator. `q = 0` is the
/// Morse-type limit and has no Tietz form.
pub fn hua_as_tietz(v0: f64, q: f64, a: f64) -> Option<(PotentialSpec, f64)> {
    if q == 0.0 || !q.is_finite() {
        return None;
    }
    let (ratio, scale, kind) = if q > 0.0 {
        ((1.0 - q) / (1.0 + q), 1.0 + q, TietzKind::Sinh)
    } else {
        ((1.0 + q) / (1.0 - q), 1.0 - q, TietzKind::Cosh)
    };
    let theta = ratio.atanh();
    // 1 - e^{-2y} = 2 e^{-y} sinh y, hence the factor 4.
    let v1 = 4.0 * v0 * theta.cosh().powi(2) / (scale * scale);
    Some((
        PotentialSpec::Tietz {
            v0: v1,
            x0: theta * a,
            a,
            kind,
        },
        -theta * a,
    ))
}
