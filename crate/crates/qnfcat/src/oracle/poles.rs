use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use super::{raw_amplitudes, OdeSettings, OracleError, SearchRegion, ORIGIN_EXCLUSION};
use crate::potentials::{as_eckart, PhysicalConstants, PotentialSpec};
use crate::qnf::{
    classify, k_bar_from_plus, length_scale, wavenumber_pair, Method, QnfResult, SignChoice,
};

/// Largest accepted `|g|` at a refined zero.
pub const ACCEPT: f64 = 1e-8;
/// Zeros closer than this (in units of `1/a`) are merged.
pub const DEDUP: f64 = 1e-6;

type Func<'a> = &'a (dyn Fn(Complex64) -> Option<Complex64> + Sync);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Zero {
    pub z: Complex64,
    pub residual: f64,
    pub multiplicity: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ZeroSearch {
    pub zeros: Vec<Zero>,
    /// Argument-principle count of zeros inside the region, with known
    /// singular points (including `0`) removed. `None` when a zero or pole
    /// sits too close to the contour.
    pub count_check: Option<i64>,
    pub warnings: Vec<String>,
}

/// Grid scan, Newton polishing and an argument-principle count for the zeros
/// of `g` in `region`. `length` sets the grid spacing and the radii. The
/// origin is treated as a possible pole of `g`.
pub fn find_zeros(
    g: Func<'_>,
    region: &SearchRegion,
    length: f64,
) -> Result<ZeroSearch, OracleError> {
    find_zeros_excluding(g, region, length, &[Complex64::new(0.0, 0.0)], &[])
}

/// As [`find_zeros`], with known poles or fixed zeros `singular` divided out
/// before the scan, and `essential` points that are never sampled nearby.
pub(crate) fn find_zeros_excluding(
    g: Func<'_>,
    region: &SearchRegion,
    length: f64,
    singular: &[Complex64],
    essential: &[Complex64],
) -> Result<ZeroSearch, OracleError> {
    region.validate(length)?;
    let scale = 1.0 / length;
    let h = scale / region.grid_density;
    let nx = ((region.re_max - region.re_min) / h).ceil() as usize + 1;
    let ny = ((region.im_max - region.im_min) / h).ceil() as usize + 1;
    let point = |i: usize, j: usize| {
        Complex64::new(
            region.re_min + (region.re_max - region.re_min) * i as f64 / (nx - 1) as f64,
            region.im_min + (region.im_max - region.im_min) * j as f64 / (ny - 1) as f64,
        )
    };
    let excluded = |z: Complex64| {
        essential
            .iter()
            .any(|e| (z - e).norm() < ORIGIN_EXCLUSION * scale)
    };

    let factors = singular_orders(g, region, h, singular, scale);
    let unresolved = factors.iter().any(|f| f.order.is_none());
    let known: Vec<(Complex64, i32)> = factors
        .iter()
        .filter_map(|f| f.order.map(|m| (f.at, m as i32)))
        .filter(|f| f.1 != 0)
        .collect();
    // The boundary count divides out the points in or next to the region;
    // the scan and the Newton steps only those within a few cells, since the
    // full product varies too fast to seed from.
    let band: Vec<(Complex64, i32)> = known
        .iter()
        .copied()
        .filter(|(s, _)| distance_to_region(*s, region) < 2.0 * h)
        .collect();
    let gt = |z: Complex64| regularized(g, &band, z);
    let local = |z: Complex64, r: f64| -> Vec<(Complex64, i32)> {
        known.iter().copied().filter(|(s, _)| (z - s).norm() < r).collect()
    };

    let values: Vec<Option<f64>> = (0..nx * ny)
        .into_par_iter()
        .map(|idx| {
            let z = point(idx % nx, idx / nx);
            if excluded(z) {
                return None;
            }
            regularized(g, &local(z, 3.0 * h), z).map(|v| v.norm())
        })
        .collect();
    let at = |i: usize, j: usize| values[j * nx + i];
    let mut seeds = Vec::new();
    for j in 0..ny {
        for i in 0..nx {
            let Some(v) = at(i, j) else { continue };
            let mut is_min = true;
            for dj in -1i64..=1 {
                for di in -1i64..=1 {
                    if di == 0 && dj == 0 {
                        continue;
                    }
                    let (ii, jj) = (i as i64 + di, j as i64 + dj);
                    if ii < 0 || jj < 0 || ii >= nx as i64 || jj >= ny as i64 {
                        continue;
                    }
                    if let Some(w) = at(ii as usize, jj as usize) {
                        if w < v {
                            is_min = false;
                        }
                    }
                }
            }
            if is_min {
                seeds.push(point(i, j));
            }
        }
    }
    let refined: Vec<Zero> = seeds
        .par_iter()
        .filter_map(|&s| {
            let near = local(s, 4.0 * h);
            let gl = |z: Complex64| regularized(g, &near, z);
            let z = refine_zero(&gl, s, length, h)?;
            let residual = g(z.z)?.norm();
            Some(Zero { residual, ..z })
        })
        .collect();
    let slack = 1e-9 * scale;
    let mut zeros: Vec<Zero> = Vec::new();
    for z in refined {
        let inside = z.z.re >= region.re_min - slack
            && z.z.re <= region.re_max + slack
            && z.z.im >= region.im_min - slack
            && z.z.im <= region.im_max + slack;
        let on_singular = known.iter().any(|(s, _)| (z.z - s).norm() < DEDUP * scale);
        if !inside || excluded(z.z) || on_singular || z.residual.is_nan() || z.residual >= ACCEPT {
            continue;
        }
        if let Some(old) = zeros
            .iter_mut()
            .find(|o| (o.z - z.z).norm() < DEDUP * scale)
        {
            if z.residual < old.residual {
                *old = z;
            }
            continue;
        }
        zeros.push(z);
    }
    zeros.sort_by(|a, b| a.z.im.total_cmp(&b.z.im).then(a.z.re.total_cmp(&b.z.re)));

    let near_boundary = |p: Complex64, r: f64| {
        let inside = region.contains(p);
        let margin = (p.re - region.re_min)
            .abs()
            .min((region.re_max - p.re).abs())
            .min((p.im - region.im_min).abs())
            .min((region.im_max - p.im).abs());
        inside || margin < r
    };
    let blocked = essential.iter().any(|e| near_boundary(*e, 2.0 * ORIGIN_EXCLUSION * scale))
        || (unresolved
            && factors
                .iter()
                .any(|f| f.order.is_none() && near_boundary(f.at, 2.0 * h)));
    let count_check = if blocked {
        None
    } else {
        boundary_count(&gt, region, h, essential)
    };
    let mut warnings = Vec::new();
    if let Some(n) = count_check {
        let found: i64 = zeros.iter().map(|z| z.multiplicity as i64).sum();
        if n != found {
            warnings.push(format!(
                "region-too-coarse: argument principle counts {n} zeros, grid search found {found}; increase grid_density"
            ));
        }
    } else {
        warnings.push("argument-principle count unavailable: contour passes too close to a zero or pole".into());
    }
    Ok(ZeroSearch {
        zeros,
        count_check,
        warnings,
    })
}

fn distance_to_region(z: Complex64, region: &SearchRegion) -> f64 {
    let c = Complex64::new(
        z.re.clamp(region.re_min, region.re_max),
        z.im.clamp(region.im_min, region.im_max),
    );
    (z - c).norm()
}

fn regularized(g: Func<'_>, factors: &[(Complex64, i32)], z: Complex64) -> Option<Complex64> {
    let mut v = g(z)?;
    for &(s, m) in factors {
        v *= (z - s).powi(-m);
    }
    v.is_finite().then_some(v)
}

struct SingularFactor {
    at: Complex64,
    order: Option<i64>,
}

/// Order of `g` at each singular point close enough to the region to matter.
fn singular_orders(
    g: Func<'_>,
    region: &SearchRegion,
    h: f64,
    singular: &[Complex64],
    scale: f64,
) -> Vec<SingularFactor> {
    let pad = 4.0 * h;
    let near: Vec<Complex64> = singular
        .iter()
        .copied()
        .filter(|s| {
            s.is_finite()
                && s.re >= region.re_min - pad
                && s.re <= region.re_max + pad
                && s.im >= region.im_min - pad
                && s.im <= region.im_max + pad
        })
        .collect();
    near.iter()
        .enumerate()
        .map(|(i, &s)| {
            let mut radius = (1e-3 * scale).min(h / 8.0);
            for (j, &o) in near.iter().enumerate() {
                if i != j {
                    radius = radius.min(0.3 * (s - o).norm());
                }
            }
            SingularFactor {
                at: s,
                order: (radius > 0.0).then(|| circle_winding(g, s, radius)).flatten(),
            }
        })
        .collect()
}

fn derivative(g: Func<'_>, z: Complex64, dh: f64) -> Option<Complex64> {
    let hp = g(z + dh)?;
    let hm = g(z - dh)?;
    Some((hp - hm) / (2.0 * dh))
}

/// Newton from `seed`, then contour moments when the zero is multiple.
fn refine_zero(g: Func<'_>, seed: Complex64, length: f64, h: f64) -> Option<Zero> {
    let scale = 1.0 / length;
    let dh = 1e-6 * scale;
    let mut z = seed;
    for _ in 0..100 {
        let gz = g(z)?;
        if gz == Complex64::new(0.0, 0.0) {
            break;
        }
        let d = derivative(g, z, dh)?;
        if d == Complex64::new(0.0, 0.0) || !d.is_finite() {
            break;
        }
        let mut step = gz / d;
        if step.norm() > 2.0 * h {
            step *= 2.0 * h / step.norm();
        }
        z -= step;
        if step.norm() < 1e-15 * z.norm().max(scale) {
            break;
        }
    }
    let rho = (0.25 * h).min(1e-2 * scale);
    let m = circle_winding(g, z, rho)?;
    if m <= 0 {
        return None;
    }
    if m >= 2 {
        for _ in 0..3 {
            z = moment_center(g, z, rho, m as f64)?;
        }
    }
    let residual = g(z)?.norm();
    Some(Zero {
        z,
        residual,
        multiplicity: m as u32,
    })
}

/// Centre of an `m`-fold zero from the first moment of `log g` on a circle.
fn moment_center(g: Func<'_>, c0: Complex64, rho: f64, m: f64) -> Option<Complex64> {
    let n = 256;
    let mut acc = Complex64::new(0.0, 0.0);
    let mut prev_arg = 0.0;
    let mut unwrapped = 0.0;
    for j in 0..n {
        let theta = 2.0 * PI * j as f64 / n as f64;
        let e = Complex64::from_polar(1.0, theta);
        let v = g(c0 + rho * e)?;
        let arg = v.arg();
        if j == 0 {
            unwrapped = arg;
        } else {
            let mut d = arg - prev_arg;
            d -= 2.0 * PI * (d / (2.0 * PI)).round();
            unwrapped += d;
        }
        prev_arg = arg;
        let p = Complex64::new(v.norm().ln() - m * rho.ln(), unwrapped - m * theta);
        acc += p * e;
    }
    let s1 = c0 * m - rho * acc / n as f64;
    Some(s1 / m)
}

fn circle_winding(g: Func<'_>, c0: Complex64, rho: f64) -> Option<i64> {
    let path = |t: f64| c0 + rho * Complex64::from_polar(1.0, 2.0 * PI * t);
    winding(g, &path, 64)
}

/// Winding number of `g` along the closed path `p(t)`, `t ∈ [0, 1]`.
fn winding(g: Func<'_>, p: &dyn Fn(f64) -> Complex64, base: usize) -> Option<i64> {
    let mut total = 0.0;
    let mut t0 = 0.0;
    let mut g0 = g(p(0.0))?;
    for i in 1..=base {
        let t1 = i as f64 / base as f64;
        let g1 = g(p(t1))?;
        total += arg_change(g, p, t0, t1, g0, g1, 0)?;
        t0 = t1;
        g0 = g1;
    }
    let turns = total / (2.0 * PI);
    let n = turns.round();
    ((turns - n).abs() < 0.05).then_some(n as i64)
}

fn arg_change(
    g: Func<'_>,
    p: &dyn Fn(f64) -> Complex64,
    t0: f64,
    t1: f64,
    g0: Complex64,
    g1: Complex64,
    depth: u32,
) -> Option<f64> {
    if g0 == Complex64::new(0.0, 0.0) || g1 == Complex64::new(0.0, 0.0) {
        return None;
    }
    let d = (g1 / g0).arg();
    if d.abs() < PI / 4.0 {
        return Some(d);
    }
    if depth > 24 {
        return None;
    }
    let tm = 0.5 * (t0 + t1);
    let gm = g(p(tm))?;
    Some(arg_change(g, p, t0, tm, g0, gm, depth + 1)? + arg_change(g, p, tm, t1, gm, g1, depth + 1)?)
}

/// Winding of `g` around the region boundary. Samples are spaced at most
/// `h`, and closer near essential points, where accumulating poles make the
/// phase turn on the scale of the distance to them.
fn boundary_count(
    g: Func<'_>,
    region: &SearchRegion,
    h: f64,
    essential: &[Complex64],
) -> Option<i64> {
    let corners = [
        Complex64::new(region.re_min, region.im_min),
        Complex64::new(region.re_max, region.im_min),
        Complex64::new(region.re_max, region.im_max),
        Complex64::new(region.re_min, region.im_max),
        Complex64::new(region.re_min, region.im_min),
    ];
    let spacing = |z: Complex64, h: f64| {
        essential
            .iter()
            .fold(h, |m, e| m.min(0.2 * (z - e).norm()))
            .max(1e-6 * h)
    };
    let samples = |h: f64| {
        let mut pts = Vec::new();
        for w in corners.windows(2) {
            let (a, b) = (w[0], w[1]);
            let len = (b - a).norm();
            let mut s = 0.0;
            while s < len {
                pts.push(a + (b - a) * (s / len));
                s += spacing(a + (b - a) * (s / len), h);
            }
        }
        pts
    };
    // Per-segment phase checks can alias; accept only a count that survives
    // halving the spacing.
    let mut step = 0.5 * h;
    let mut prev = polyline_winding(g, &samples(step));
    for _ in 0..6 {
        step *= 0.5;
        let next = polyline_winding(g, &samples(step));
        if next.is_some() && next == prev {
            return next;
        }
        prev = next;
    }
    None
}

fn polyline_winding(g: Func<'_>, pts: &[Complex64]) -> Option<i64> {
    let n = pts.len();
    let mut total = 0.0;
    let mut g0 = g(pts[0])?;
    for i in 0..n {
        let (a, b) = (pts[i], pts[(i + 1) % n]);
        let seg = |t: f64| a + (b - a) * t;
        let g1 = g(b)?;
        total += arg_change(g, &seg, 0.0, 1.0, g0, g1, 0)?;
        g0 = g1;
    }
    let turns = total / (2.0 * PI);
    let k = turns.round();
    ((turns - k).abs() < 0.05).then_some(k as i64)
}

/// A pole of `t` found by the oracle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pole {
    /// `k₊∞`, as for [`QnfResult::k`].
    pub k: Complex64,
    pub k_minus_inf: Complex64,
    pub k_plus_inf: Complex64,
    /// Location in the search variable (`k̄` for asymmetric potentials).
    pub search_k: Complex64,
    /// `|1/t|` at the pole, using the unnormalized `t`.
    pub residual: f64,
    pub multiplicity_hint: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PoleReport {
    pub poles: Vec<Pole>,
    pub region: SearchRegion,
    pub count_check: Option<i64>,
    pub warnings: Vec<String>,
}

fn inverse_t<'a>(
    spec: &'a PotentialSpec,
    c: &'a PhysicalConstants,
) -> impl Fn(Complex64) -> Option<Complex64> + Sync + 'a {
    let settings = OdeSettings::default();
    move |z: Complex64| {
        let (km, kp) = wavenumber_pair(spec, z, c).ok()?;
        let (t, _) = raw_amplitudes(spec, km, kp, c, &settings).ok()?;
        // A landed-on pole makes t = 1/0, which is NaN in complex arithmetic.
        if !t.is_finite() {
            return Some(Complex64::new(0.0, 0.0));
        }
        let g = 1.0 / t;
        g.is_finite().then_some(g)
    }
}

/// Points in the search plane where `1/t` may have poles or fixed zeros:
/// `k₋∞ = 0`, `k₊∞ = 0`, and `k±∞ = i j/a` for the smooth potentials. The
/// second list holds the origin of the `k̄` plane, an essential singularity
/// when the asymptotic levels differ.
pub(crate) fn singular_points(
    spec: &PotentialSpec,
    region: &SearchRegion,
    c: &PhysicalConstants,
) -> (Vec<Complex64>, Vec<Complex64>) {
    let pad = 4.0 / length_scale(spec, c);
    let near = |p: &Complex64| {
        p.re >= region.re_min - pad
            && p.re <= region.re_max + pad
            && p.im >= region.im_min - pad
            && p.im <= region.im_max + pad
    };
    let zero = Complex64::new(0.0, 0.0);
    let delta = crate::qnf::level_gap(spec, c).unwrap_or(0.0);
    let mut pts = Vec::new();
    let essential = if delta == 0.0 {
        pts.push(zero);
        Vec::new()
    } else {
        vec![zero]
    };
    let from_plus = |kp: Complex64| {
        let r = (kp * kp + delta).sqrt();
        [(kp + r) / 2.0, (kp - r) / 2.0]
    };
    let from_minus = |km: Complex64| {
        let r = (km * km - delta).sqrt();
        [(km + r) / 2.0, (km - r) / 2.0]
    };
    if delta != 0.0 {
        pts.extend(from_plus(zero));
        pts.extend(from_minus(zero));
    }
    if let Some(eq) = as_eckart(spec) {
        let reach = [region.re_min, region.re_max, region.im_min, region.im_max]
            .iter()
            .fold(0.0f64, |m, v| m.max(v.abs()));
        let reach = 2.0 * reach + delta.abs().sqrt();
        // Images of k±∞ = i j/a pile up at the origin, |k̄| ≈ Δa/4j. List
        // them down to a quarter of the region's distance from the origin;
        // the rest are left to the graded boundary sampling.
        let gap = Complex64::new(
            0.0f64.clamp(region.re_min, region.re_max),
            0.0f64.clamp(region.im_min, region.im_max),
        )
        .norm();
        let low = 0.25 * gap.max(1e-3 / eq.a);
        let jmax = (reach * eq.a).max(delta.abs() * eq.a / (4.0 * low)).min(2e4).ceil() as usize + 1;
        for j in 1..=jmax {
            let kappa = Complex64::new(0.0, j as f64 / eq.a);
            if delta == 0.0 {
                pts.push(kappa);
            } else {
                pts.extend(from_plus(kappa));
                pts.extend(from_minus(kappa));
            }
        }
    }
    let mut out: Vec<Complex64> = Vec::new();
    for p in pts.into_iter().filter(near) {
        if out.iter().all(|o| (o - p).norm() > 1e-12) {
            out.push(p);
        }
    }
    (out, essential)
}

/// Poles of the numerical `t` in `region`. The region is in `k` for
/// symmetric potentials and in `k̄ = (k₋∞ + k₊∞)/2` otherwise.
pub fn find_poles(
    spec: &PotentialSpec,
    region: &SearchRegion,
    c: &PhysicalConstants,
) -> Result<PoleReport, OracleError> {
    spec.validate()?;
    c.validate()?;
    if !spec.is_scattering() {
        return Err(crate::potentials::PotentialError::NotScattering { name: spec.name() }.into());
    }
    let length = length_scale(spec, c);
    let g = inverse_t(spec, c);
    let (singular, essential) = singular_points(spec, region, c);
    let search = find_zeros_excluding(&g, region, length, &singular, &essential)?;
    let mut poles = Vec::new();
    for z in &search.zeros {
        let (km, kp) = wavenumber_pair(spec, z.z, c)?;
        poles.push(Pole {
            k: kp,
            k_minus_inf: km,
            k_plus_inf: kp,
            search_k: z.z,
            residual: z.residual,
            multiplicity_hint: z.multiplicity,
        });
    }
    Ok(PoleReport {
        poles,
        region: *region,
        count_check: search.count_check,
        warnings: search.warnings,
    })
}

/// Polishes a pole of the numerical `t` starting from `guess = k₊∞`.
pub fn refine_pole(
    spec: &PotentialSpec,
    guess: Complex64,
    c: &PhysicalConstants,
) -> Result<QnfResult, OracleError> {
    let start = k_bar_from_plus(spec, guess, c)?;
    refine_from(spec, start, guess, c)
}

/// [`refine_pole`] seeded from both asymptotic wavenumbers, for guesses whose
/// `k₋∞` lies on the lower sheet.
pub fn refine_pole_pair(
    spec: &PotentialSpec,
    k_minus: Complex64,
    k_plus: Complex64,
    c: &PhysicalConstants,
) -> Result<QnfResult, OracleError> {
    refine_from(spec, 0.5 * (k_minus + k_plus), k_plus, c)
}

fn refine_from(
    spec: &PotentialSpec,
    start: Complex64,
    guess: Complex64,
    c: &PhysicalConstants,
) -> Result<QnfResult, OracleError> {
    spec.validate()?;
    c.validate()?;
    let length = length_scale(spec, c);
    let g = inverse_t(spec, c);
    // Stay clear of the origin and the k± = 0 images when a is small.
    let h = (0.1 / length).min(0.1 * start.norm().max(1e-3 / length));
    let zero = refine_zero(&g, start, length, h)
        .filter(|z| z.residual < ACCEPT)
        .ok_or(OracleError::NoConvergence { guess })?;
    if zero.z.norm() * length < crate::qnf::TRIVIAL_RADIUS {
        return Err(OracleError::TrivialZero);
    }
    let (km, kp) = wavenumber_pair(spec, zero.z, c)?;
    Ok(QnfResult {
        k: kp,
        k_minus_inf: km,
        k_plus_inf: kp,
        branch: None,
        sign: SignChoice::Unsigned,
        method: Method::Oracle,
        residual: zero.residual,
        classification: classify(kp, length),
        pole_order: zero.multiplicity,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_zeros_and_count() {
        let g = |z: Complex64| Some((z - Complex64::new(1.0, 1.0)) * (z - Complex64::new(-2.0, 0.5)).powi(2));
        let region = SearchRegion::new(-3.0, 3.0, 0.1, 2.0);
        let s = find_zeros(&g, &region, 1.0).unwrap();
        assert_eq!(s.zeros.len(), 2);
        assert_eq!(s.count_check, Some(3));
        let double = s.zeros.iter().find(|z| z.multiplicity == 2).unwrap();
        assert!((double.z - Complex64::new(-2.0, 0.5)).norm() < 1e-10);
    }
}
