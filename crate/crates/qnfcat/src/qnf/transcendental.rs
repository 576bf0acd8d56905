use num_complex::Complex64;

use super::{
    classify, length_scale, pole_residual, sort_results, wavenumber_pair, Method, QnfError,
    QnfResult, SignChoice, I,
};
use crate::oracle::{find_zeros_excluding, singular_points, SearchRegion};
use crate::potentials::{amplitude_pair, PhysicalConstants, PotentialError, PotentialSpec};

/// Where to look for roots.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Search {
    /// Scalar root bracketing along `k = i y`, both half-axes.
    ImaginaryAxis,
    /// Complex grid search in `k̄` with Newton polishing.
    Region(SearchRegion),
}

/// Largest `|k| a` examined by the imaginary-axis scans.
const AXIS_LIMIT: f64 = 50.0;
const AXIS_SAMPLES: usize = 4000;

/// QNFs defined by transcendental pole conditions: rectangular barriers and
/// the asymmetric double delta.
pub fn transcendental_qnfs(
    spec: &PotentialSpec,
    search: &Search,
    c: &PhysicalConstants,
) -> Result<Vec<QnfResult>, QnfError> {
    spec.validate()?;
    c.validate()?;
    match spec {
        PotentialSpec::RectBarrier { .. }
        | PotentialSpec::AsymRectBarrier { .. }
        | PotentialSpec::AsymDoubleDelta { .. }
        | PotentialSpec::DoubleDelta { .. } => {}
        _ => {
            return Err(QnfError::Unsupported {
                name: spec.name(),
                hint: "closed_form_qnfs",
            })
        }
    }
    let mut out = match search {
        Search::ImaginaryAxis => axis_roots(spec, c)?,
        Search::Region(region) => region_roots(spec, region, c)?,
    };
    sort_results(&mut out);
    Ok(out)
}

fn result(
    spec: &PotentialSpec,
    k_minus: Complex64,
    k_plus: Complex64,
    pole_order: u32,
    c: &PhysicalConstants,
) -> Result<QnfResult, QnfError> {
    Ok(QnfResult {
        k: k_plus,
        k_minus_inf: k_minus,
        k_plus_inf: k_plus,
        branch: None,
        sign: SignChoice::Unsigned,
        method: Method::Transcendental,
        residual: pole_residual(spec, k_minus, k_plus, c)?,
        classification: classify(k_plus, length_scale(spec, c)),
        pole_order,
    })
}

fn region_roots(
    spec: &PotentialSpec,
    region: &SearchRegion,
    c: &PhysicalConstants,
) -> Result<Vec<QnfResult>, QnfError> {
    let length = length_scale(spec, c);
    let g = |kb: Complex64| -> Option<Complex64> {
        let (km, kp) = wavenumber_pair(spec, kb, c).ok()?;
        match amplitude_pair(spec, km, kp, c) {
            Ok(amp) => {
                let g = kp.sqrt() / (km.sqrt() * amp.t);
                g.is_finite().then_some(g)
            }
            Err(PotentialError::AtPole { .. }) => Some(Complex64::new(0.0, 0.0)),
            Err(_) => None,
        }
    };
    let (singular, essential) = singular_points(spec, region, c);
    let search = find_zeros_excluding(&g, region, length, &singular, &essential)?;
    search
        .zeros
        .iter()
        .map(|z| {
            let (km, kp) = wavenumber_pair(spec, z.z, c)?;
            result(spec, km, kp, z.multiplicity, c)
        })
        .collect()
}

fn axis_roots(spec: &PotentialSpec, c: &PhysicalConstants) -> Result<Vec<QnfResult>, QnfError> {
    let beta = c.beta();
    let mut out = Vec::new();
    match *spec {
        PotentialSpec::RectBarrier { v0, a } => {
            if v0 > 0.0 {
                let k0 = (beta * v0).sqrt();
                let roots = rect_imaginary_roots(k0 * a);
                let order = if roots.len() == 1 { 2 } else { 1 };
                for y in roots {
                    let k = I * (y / a) * y.tanh();
                    out.push(result(spec, k, k, order, c)?);
                }
            } else if v0 < 0.0 {
                for kappa in finite_well_roots((-beta * v0).sqrt(), a) {
                    let k = -I * kappa;
                    out.push(result(spec, k, k, 1, c)?);
                }
            }
        }
        PotentialSpec::DoubleDelta { alpha, a } => {
            let k0 = 0.5 * beta * alpha;
            for y in double_delta_axis(k0, k0, a) {
                let k = I * y;
                out.push(result(spec, k, k, 1, c)?);
            }
        }
        PotentialSpec::AsymDoubleDelta {
            alpha_plus,
            alpha_minus,
            a,
        } => {
            let kp = 0.5 * beta * alpha_plus;
            let km = 0.5 * beta * alpha_minus;
            for y in double_delta_axis(kp, km, a) {
                let k = I * y;
                out.push(result(spec, k, k, 1, c)?);
            }
        }
        PotentialSpec::AsymRectBarrier { v1, v2, v3, a } => {
            let k12 = beta * (v2 - v1);
            let k23 = beta * (v2 - v3);
            for (kappa, s1, s3) in asym_rect_axis(k12, k23, a) {
                let k1 = I * s1 * (kappa * kappa - k12).sqrt();
                let k3 = I * s3 * (kappa * kappa - k23).sqrt();
                out.push(result(spec, k1, k3, 1, c)?);
            }
        }
        _ => unreachable!("filtered by the caller"),
    }
    Ok(out)
}

/// Roots `y = |q| a` of `y = k0a cosh y`: the imaginary-axis QNFs of a
/// repulsive rectangular barrier, with `k = i (y/a) tanh y`.
///
/// Two roots below the merge point `k0a ≈ 0.6627`, one at it, none above.
pub fn rect_imaginary_roots(k0a: f64) -> Vec<f64> {
    if k0a.is_nan() || k0a <= 0.0 {
        return Vec::new();
    }
    let f = |y: f64| y - k0a * y.cosh();
    let peak = (1.0 / k0a).asinh();
    let top = f(peak);
    if top.abs() <= 1e-15 * peak {
        return vec![peak];
    }
    if top < 0.0 {
        return Vec::new();
    }
    let mut hi = 2.0 * peak.max(1.0);
    while f(hi) > 0.0 {
        hi *= 2.0;
    }
    vec![bisect(&f, 0.0, peak), bisect(&f, peak, hi)]
}

/// `κ` of the bound states of a finite well of depth `K²/β` and half-width `a`.
fn finite_well_roots(big_k: f64, a: f64) -> Vec<f64> {
    let kappa = |q: f64| (big_k * big_k - q * q).max(0.0).sqrt();
    let even = |q: f64| q * (q * a).sin() - kappa(q) * (q * a).cos();
    let odd = |q: f64| q * (q * a).cos() + kappa(q) * (q * a).sin();
    let n = 200.max((64.0 * big_k * a) as usize);
    let lo = 1e-12 * big_k;
    let hi = big_k * (1.0 - 1e-12);
    let mut out = Vec::new();
    for f in [&even as &dyn Fn(f64) -> f64, &odd] {
        for q in scan_roots(f, lo, hi, n, false) {
            out.push(kappa(q));
        }
    }
    out.retain(|&k| k > 1e-8 / a);
    out.sort_by(|x, y| y.total_cmp(x));
    out
}

/// Nontrivial `y` with `(y - k₊)(y - k₋) = k₊ k₋ e^{4 y a}`, i.e. `k = i y`.
fn double_delta_axis(kp: f64, km: f64, a: f64) -> Vec<f64> {
    if kp == 0.0 || km == 0.0 {
        let y = kp + km;
        return if y != 0.0 { vec![y] } else { Vec::new() };
    }
    // Divide by e^{2ya} to keep both sides finite over the scan.
    let h = |y: f64| (y - kp) * (y - km) * (-2.0 * y * a).exp() - kp * km * (2.0 * y * a).exp();
    let limit = AXIS_LIMIT / a;
    let floor = 1e-6 / a;
    let mut out = scan_roots(&h, floor, limit, AXIS_SAMPLES, true);
    out.extend(scan_roots(&|y| h(-y), floor, limit, AXIS_SAMPLES, true).into_iter().map(|y| -y));
    out.retain(|y| y.abs() > 1e-8 / a);
    out
}

/// Roots `(κ, σ1, σ3)` of `tanh(2κa)(κ² + σ1σ3 κ1κ3) = κ(σ1κ1 + σ3κ3)`,
/// `κj = √(κ² - k_{j2}²)`, for `k1 = iσ1κ1`, `k3 = iσ3κ3`. A negative sign
/// puts that side on the lower sheet.
fn asym_rect_axis(k12: f64, k23: f64, a: f64) -> Vec<(f64, f64, f64)> {
    let floor = k12.max(k23).max(0.0).sqrt();
    let mut out = Vec::new();
    for (s1, s3) in [(1.0, 1.0), (-1.0, 1.0), (1.0, -1.0), (-1.0, -1.0)] {
        let f = |u: f64| {
            let kappa = floor + u;
            let k1 = (kappa * kappa - k12).max(0.0).sqrt();
            let k3 = (kappa * kappa - k23).max(0.0).sqrt();
            (2.0 * kappa * a).tanh() * (kappa * kappa + s1 * s3 * k1 * k3) - kappa * (s1 * k1 + s3 * k3)
        };
        for u in scan_roots(&f, 1e-9 / a, AXIS_LIMIT / a, AXIS_SAMPLES, true) {
            out.push((floor + u, s1, s3));
        }
    }
    out
}

/// Sign changes of `f` on `[lo, hi]`, refined by bisection.
fn scan_roots(f: &dyn Fn(f64) -> f64, lo: f64, hi: f64, n: usize, log: bool) -> Vec<f64> {
    let at = |i: usize| {
        let t = i as f64 / n as f64;
        if log {
            lo * (hi / lo).powf(t)
        } else {
            lo + (hi - lo) * t
        }
    };
    let mut roots = Vec::new();
    let mut x0 = at(0);
    let mut f0 = f(x0);
    for i in 1..=n {
        let x1 = at(i);
        let f1 = f(x1);
        if f0 == 0.0 {
            roots.push(x0);
        } else if f0 * f1 < 0.0 {
            roots.push(bisect(f, x0, x1));
        }
        x0 = x1;
        f0 = f1;
    }
    roots
}

fn bisect(f: &dyn Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let mut flo = f(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rect_roots_count() {
        assert_eq!(rect_imaginary_roots(0.3).len(), 2);
        assert!(rect_imaginary_roots(0.7).is_empty());
        for y in rect_imaginary_roots(0.5) {
            assert!((y - 0.5 * y.cosh()).abs() < 1e-14);
        }
    }

    #[test]
    fn finite_well_single_state() {
        // Shallow well: exactly one even state.
        let r = finite_well_roots(0.5, 1.0);
        assert_eq!(r.len(), 1);
    }
}
