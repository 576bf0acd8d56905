use std::f64::consts::{E, PI};

use num_complex::Complex64;

use super::{BranchIndex, SpecFnError};

/// Hard cap on Halley steps per seed.
pub const LAMBERT_MAX_ITER: usize = 100;

const INV_E: f64 = 0.367_879_441_171_442_33;
const TWO_PI: f64 = 2.0 * PI;
const BRANCH_POINT_RADIUS: f64 = 0.3;
const ORIGIN_RADIUS: f64 = 0.3;

/// Lambert W on branch `branch`: the `w` with `w·e^w = z`.
///
/// Seeds come from the branch-point series near `-1/e`, the Taylor series near
/// the origin on branch 0, and the Comtet form `L1 - ln L1` elsewhere. Each
/// seed is refined with Halley's method and the result is only accepted when
/// its unwinding number confirms the requested branch. Cuts follow the
/// principal logarithm; a real argument is treated as lying on the upper side.
pub fn lambert_w(branch: BranchIndex, z: Complex64) -> Result<Complex64, SpecFnError> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(SpecFnError::NonFinite { z });
    }
    let z = upper_side(z);
    if z == Complex64::new(0.0, 0.0) {
        return if branch == 0 {
            Ok(z)
        } else {
            Err(SpecFnError::Domain { branch })
        };
    }

    let real_result = on_real_branch(branch, z);
    for seed in seeds(branch, z) {
        let Some(mut w) = halley(z, seed) else {
            continue;
        };
        if real_result {
            match halley(z, Complex64::new(w.re, 0.0)) {
                Some(wr) => w = Complex64::new(wr.re, 0.0),
                None => continue,
            }
        }
        if accepts(branch, z, w) {
            return Ok(w);
        }
    }
    Err(SpecFnError::NonConvergence {
        branch,
        z,
        iterations: LAMBERT_MAX_ITER,
    })
}

/// `dW/dz = W / (z (1 + W))` on the given branch.
pub fn lambert_w_derivative(branch: BranchIndex, z: Complex64) -> Result<Complex64, SpecFnError> {
    if z == Complex64::new(0.0, 0.0) {
        return Err(SpecFnError::Singular { branch, z });
    }
    let w = lambert_w(branch, z)?;
    let one_plus = w + 1.0;
    if one_plus.norm() < 1e-14 {
        return Err(SpecFnError::Singular { branch, z });
    }
    Ok(w / (z * one_plus))
}

/// Leading terms of the Comtet expansion of `W_n(z)`.
///
/// With `L1 = ln z + 2πi n`: one term gives `L1`, two give `L1 - ln L1`, three
/// give `L1 - ln(L1 - ln L1)`. Meaningful once `|L1|` is large (say above 5).
pub fn lambert_w_comtet(
    branch: BranchIndex,
    z: Complex64,
    terms: u32,
) -> Result<Complex64, SpecFnError> {
    if !(1..=3).contains(&terms) {
        return Err(SpecFnError::ComtetTerms { terms });
    }
    let z = upper_side(z);
    if z == Complex64::new(0.0, 0.0) {
        return Err(SpecFnError::Domain { branch });
    }
    let l1 = z.ln() + Complex64::new(0.0, TWO_PI * branch as f64);
    Ok(match terms {
        1 => l1,
        2 => l1 - l1.ln(),
        _ => l1 - (l1 - l1.ln()).ln(),
    })
}

/// Branch label of a value `w` with `w·e^w = z`, from the unwinding identity
/// `ln w + w = ln z + 2πi n`.
///
/// The identity fails only for real `W_{-1}(x)`, `x ∈ [-1/e, 0)`, which is
/// reported as `-1` whenever `w < -1`.
pub fn branch_of(w: Complex64, z: Complex64) -> BranchIndex {
    let z = upper_side(z);
    let w = upper_side(w);
    if z.im == 0.0 && (-INV_E..0.0).contains(&z.re) && w.im == 0.0 && w.re < -1.0 {
        return -1;
    }
    ((w.ln() + w - z.ln()).im / TWO_PI).round() as BranchIndex
}

fn upper_side(z: Complex64) -> Complex64 {
    if z.im == 0.0 {
        Complex64::new(z.re, 0.0)
    } else {
        z
    }
}

fn on_real_branch(branch: BranchIndex, z: Complex64) -> bool {
    z.im == 0.0
        && match branch {
            0 => z.re >= -INV_E,
            -1 => z.re >= -INV_E && z.re < 0.0,
            _ => false,
        }
}

fn accepts(branch: BranchIndex, z: Complex64, w: Complex64) -> bool {
    if residual(z, w) > 1e-12 * z.norm().max(1.0) {
        return false;
    }
    if branch_of(w, z) == branch {
        return true;
    }
    // Both real branches meet at w = -1 when z sits on the branch point.
    branch == -1 && on_real_branch(-1, z) && w.im == 0.0 && w.re <= -1.0 + 1e-6
}

fn residual(z: Complex64, w: Complex64) -> f64 {
    (w * w.exp() - z).norm()
}

fn seeds(branch: BranchIndex, z: Complex64) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(6);
    let near_branch_point = (z + INV_E).norm() < BRANCH_POINT_RADIUS;
    let touches_branch_point = match branch {
        0 => true,
        -1 => z.im >= 0.0,
        1 => z.im < 0.0,
        _ => false,
    };
    if near_branch_point && touches_branch_point {
        let mut p = (2.0 * (E * z + 1.0)).sqrt();
        if branch != 0 {
            p = -p;
        }
        out.push(-1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0 - p * 43.0 / 540.0))));
    }
    if branch == 0 && z.norm() < ORIGIN_RADIUS {
        out.push(z * (1.0 + z * (-1.0 + z * (1.5 - z * 8.0 / 3.0))));
    }
    if branch == -1 && on_real_branch(-1, z) {
        let l1 = (-z.re).ln();
        out.push(Complex64::new(l1 - (-l1).ln(), 0.0));
    }
    let l1 = z.ln() + Complex64::new(0.0, TWO_PI * branch as f64);
    if l1.norm() > 0.0 {
        out.push(l1 - l1.ln());
        out.push(l1 - (l1 - l1.ln()).ln());
    }
    if branch == 0 {
        if (1.0 + z).norm() > 0.0 {
            out.push((1.0 + z).ln());
        }
        out.push(Complex64::new(0.5, 0.0));
    } else {
        out.push(l1);
    }
    out.retain(|w| w.re.is_finite() && w.im.is_finite());
    out
}

/// Halley's method on `w e^w - z`, written with the common factor `e^w`
/// divided out so large `|w|` cannot overflow.
fn halley(z: Complex64, seed: Complex64) -> Option<Complex64> {
    let mut w = seed;
    let target = 1e-15 * z.norm().max(1.0);
    for _ in 0..LAMBERT_MAX_ITER {
        let f = w - z * (-w).exp();
        let wp1 = w + 1.0;
        if wp1.norm() == 0.0 {
            break;
        }
        let step = f / (wp1 - (w + 2.0) * f / (2.0 * wp1));
        let next = w - step;
        if !next.re.is_finite() || !next.im.is_finite() {
            return None;
        }
        w = next;
        if step.norm() <= 1e-15 * (1.0 + w.norm()) || residual(z, w) <= target {
            break;
        }
    }
    (residual(z, w) <= 1e-12 * z.norm().max(1.0)).then_some(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn trivial_values() {
        assert_eq!(lambert_w(0, c(0.0, 0.0)).unwrap(), c(0.0, 0.0));
        let w = lambert_w(0, c(E, 0.0)).unwrap();
        assert!((w - 1.0).norm() < 1e-15);
        let w = lambert_w(-1, c(-INV_E, 0.0)).unwrap();
        assert!((w + 1.0).norm() < 1e-7, "{w}");
    }

    #[test]
    fn zero_off_principal_is_domain_error() {
        assert_eq!(
            lambert_w(3, c(0.0, 0.0)),
            Err(SpecFnError::Domain { branch: 3 })
        );
    }

    #[test]
    fn real_branches_stay_real() {
        for x in [-0.36, -0.2, -0.01, -1e-8] {
            let w0 = lambert_w(0, c(x, 0.0)).unwrap();
            let wm = lambert_w(-1, c(x, 0.0)).unwrap();
            assert_eq!(w0.im, 0.0);
            assert_eq!(wm.im, 0.0);
            assert!(w0.re >= -1.0 && wm.re <= -1.0);
        }
    }

    #[test]
    fn comtet_two_terms_formula() {
        let got = lambert_w_comtet(5, c(1.0, 0.0), 2).unwrap();
        let l1 = c(0.0, 10.0 * PI);
        assert!((got - (l1 - l1.ln())).norm() < 1e-15);
        assert!(lambert_w_comtet(1, c(1.0, 0.0), 4).is_err());
    }

    #[test]
    fn derivative_at_e() {
        let d = lambert_w_derivative(0, c(E, 0.0)).unwrap();
        assert!((d - 1.0 / (2.0 * E)).norm() < 1e-15);
        assert!(lambert_w_derivative(0, c(0.0, 0.0)).is_err());
    }
}
