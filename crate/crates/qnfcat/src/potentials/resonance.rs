use std::f64::consts::PI;

use super::{transmission_probability, PhysicalConstants, PotentialError, PotentialSpec};

/// How a resonance entry was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ResonanceKind {
    /// `T = 1` holds exactly at the entry.
    Exact,
    /// Local maximum of `T` near the asymptotic resonance condition.
    Approximate,
    /// A condition on a potential parameter making `T = 1` at all energies.
    ParameterCondition,
    /// `T` reaches the step bound `4 k1 k3 / (k1 + k3)²`.
    Pseudo,
}

impl ResonanceKind {
    pub fn name(self) -> &'static str {
        match self {
            ResonanceKind::Exact => "exact",
            ResonanceKind::Approximate => "approximate",
            ResonanceKind::ParameterCondition => "parameter_condition",
            ResonanceKind::Pseudo => "pseudo",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResonanceEntry {
    pub n: i64,
    /// Incidence-side wavenumber `k₋∞`.
    pub k: Option<f64>,
    pub energy: Option<f64>,
    /// `V0` value for parameter conditions.
    pub parameter: Option<f64>,
    /// `T` at the entry's energy.
    pub transmission: Option<f64>,
    pub kind: ResonanceKind,
}

const SCAN: usize = 64;

/// Transmission resonances with indices up to `n_max`.
///
/// Potentials without a resonance family (including the non-scattering
/// variants) give an empty list.
pub fn resonances(
    spec: &PotentialSpec,
    n_max: u32,
    c: &PhysicalConstants,
) -> Result<Vec<ResonanceEntry>, PotentialError> {
    spec.validate()?;
    c.validate()?;
    if n_max == 0 {
        return Err(PotentialError::InvalidParameter {
            name: "n_max",
            reason: "must be at least 1",
        });
    }
    let beta = c.beta();
    let mut out = Vec::new();
    match *spec {
        PotentialSpec::RectBarrier { v0, a } => {
            for n in 1..=n_max as i64 {
                let q = n as f64 * PI / (2.0 * a);
                let energy = v0 + q * q / beta;
                if energy <= 0.0 {
                    continue;
                }
                out.push(ResonanceEntry {
                    n,
                    k: Some((beta * energy).sqrt()),
                    energy: Some(energy),
                    parameter: None,
                    transmission: Some(transmission_probability(spec, energy, c)?),
                    kind: ResonanceKind::Exact,
                });
            }
        }
        PotentialSpec::DoubleDelta { alpha, a } => {
            let k0 = 0.5 * beta * alpha;
            for n in 0..n_max as i64 {
                for theta in double_delta_roots(n, k0, a) {
                    let k = theta / (2.0 * a);
                    let energy = k * k / beta;
                    out.push(ResonanceEntry {
                        n,
                        k: Some(k),
                        energy: Some(energy),
                        parameter: None,
                        transmission: Some(transmission_probability(spec, energy, c)?),
                        kind: ResonanceKind::Exact,
                    });
                }
            }
        }
        PotentialSpec::AsymDoubleDelta { a, .. } => {
            for n in 0..n_max as i64 {
                let lo = (n as f64 * PI).max(1e-9) / (2.0 * a);
                let hi = (n + 1) as f64 * PI / (2.0 * a);
                let t_of = |k: f64| transmission_probability(spec, k * k / beta, c).unwrap_or(0.0);
                let k = golden_max(t_of, lo, hi);
                let energy = k * k / beta;
                out.push(ResonanceEntry {
                    n,
                    k: Some(k),
                    energy: Some(energy),
                    parameter: None,
                    transmission: Some(transmission_probability(spec, energy, c)?),
                    kind: ResonanceKind::Approximate,
                });
            }
        }
        PotentialSpec::AsymRectBarrier { v1, v2, v3, a } => {
            for n in 1..=n_max as i64 {
                let k2 = n as f64 * PI / (2.0 * a);
                let energy = v2 + k2 * k2 / beta;
                if energy <= v1.max(v3) {
                    continue;
                }
                out.push(ResonanceEntry {
                    n,
                    k: Some((beta * (energy - v1)).sqrt()),
                    energy: Some(energy),
                    parameter: None,
                    transmission: Some(transmission_probability(spec, energy, c)?),
                    kind: ResonanceKind::Pseudo,
                });
            }
        }
        PotentialSpec::Sech2 { a, .. }
        | PotentialSpec::PoschlTellerSech2 { a, .. }
        | PotentialSpec::Eckart { a, .. } => {
            for n in 1..=n_max as i64 {
                let nf = n as f64;
                out.push(ResonanceEntry {
                    n,
                    k: None,
                    energy: None,
                    parameter: Some(-nf * (nf + 1.0) / (beta * a * a)),
                    transmission: None,
                    kind: ResonanceKind::ParameterCondition,
                });
            }
        }
        _ => {}
    }
    Ok(out)
}

/// Roots of `k cos θ + k0 sin θ` with `θ = 2ka` in `(nπ, (n+1)π)`.
fn double_delta_roots(n: i64, k0: f64, a: f64) -> Vec<f64> {
    let f = |th: f64| th / (2.0 * a) * th.cos() + k0 * th.sin();
    let df = |th: f64| (th.cos() / (2.0 * a)) - th / (2.0 * a) * th.sin() + k0 * th.cos();
    let lo = n as f64 * PI;
    let lo = if n == 0 { 1e-9 } else { lo };
    let hi = (n + 1) as f64 * PI;
    let mut roots = Vec::new();
    let mut x0 = lo;
    let mut f0 = f(x0);
    for i in 1..=SCAN {
        let x1 = lo + (hi - lo) * i as f64 / SCAN as f64;
        let f1 = f(x1);
        if f0 == 0.0 && i > 1 {
            roots.push(x0);
        } else if f0 * f1 < 0.0 {
            let (mut l, mut r, mut fl) = (x0, x1, f0);
            for _ in 0..60 {
                let m = 0.5 * (l + r);
                let fm = f(m);
                if fm * fl <= 0.0 {
                    r = m;
                } else {
                    l = m;
                    fl = fm;
                }
            }
            let mut th = 0.5 * (l + r);
            for _ in 0..3 {
                let d = df(th);
                if d == 0.0 {
                    break;
                }
                let next = th - f(th) / d;
                if next > x0 && next < x1 {
                    th = next;
                }
            }
            roots.push(th);
        }
        x0 = x1;
        f0 = f1;
    }
    roots
}

fn golden_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..200 {
        if hi - lo <= 1e-14 * hi.abs().max(1.0) {
            break;
        }
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = f(x1);
        }
    }
    0.5 * (lo + hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rect_first_resonance() {
        let c = PhysicalConstants::default();
        let r = resonances(&PotentialSpec::RectBarrier { v0: 1.0, a: 1.0 }, 1, &c).unwrap();
        assert_eq!(r.len(), 1);
        assert!((r[0].energy.unwrap() - (1.0 + PI * PI / 8.0)).abs() < 1e-15);
        assert!((r[0].transmission.unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn empty_families() {
        let c = PhysicalConstants::default();
        for s in [
            PotentialSpec::Step { v0: 1.0 },
            PotentialSpec::Delta { alpha: 2.0 },
            PotentialSpec::Tanh {
                v_minus: 0.0,
                v_plus: 1.0,
                a: 1.0,
            },
        ] {
            assert!(resonances(&s, 10, &c).unwrap().is_empty());
        }
    }
}
