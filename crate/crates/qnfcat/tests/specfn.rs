use std::f64::consts::{E, PI};

use num_complex::Complex64;
use proptest::prelude::*;
use qnfcat::specfn::{
    branch_of, gamma, lambert_w, lambert_w_comtet, lambert_w_derivative, log_gamma, SpecFnError,
};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Stirling series after shifting the argument to `Re z > 20`; the shift uses
/// a sum of logs so the result lands on the continuous sheet.
fn stirling_log_gamma(z: Complex64) -> Complex64 {
    let mut shift = Complex64::new(0.0, 0.0);
    let mut w = z;
    while w.re < 20.0 {
        shift += w.ln();
        w += 1.0;
    }
    let inv = 1.0 / w;
    let inv2 = inv * inv;
    let series = inv
        * (1.0 / 12.0
            + inv2 * (-1.0 / 360.0 + inv2 * (1.0 / 1260.0 + inv2 * (-1.0 / 1680.0 + inv2 / 1188.0))));
    (w - 0.5) * w.ln() - w + 0.5 * (2.0 * PI).ln() + series - shift
}

fn wrap(im: f64) -> f64 {
    let r = im - 2.0 * PI * (im / (2.0 * PI)).round();
    r.abs()
}

#[test]
fn w0_of_inverse_e() {
    let w = lambert_w(0, c(1.0 / E, 0.0)).unwrap();
    assert_eq!(w.im, 0.0);
    assert!((w.re - 0.278_464_542_761_074).abs() < 1e-14, "{w}");
    assert!(format!("{:.4}", w.re).starts_with("0.2785"));
}

#[test]
fn branch_one_at_one() {
    let w = lambert_w(1, c(1.0, 0.0)).unwrap();
    assert!((w * w.exp() - 1.0).norm() < 1e-12);
    assert!(w.im > PI && w.im < 3.0 * PI, "{w}");
}

#[test]
fn branch_point_value() {
    let w0 = lambert_w(0, c(-1.0 / E, 0.0)).unwrap();
    assert!((w0 + 1.0).norm() < 1e-7, "{w0}");
}

#[test]
fn derivative_matches_finite_difference() {
    let h = 1e-6;
    for n in [-2, -1, 0, 1, 3] {
        for &(r, th) in &[(1e-2, 0.7), (0.5, 2.0), (3.0, -1.2), (10.0, 0.0), (90.0, 1.4)] {
            let z = Complex64::from_polar(r, th);
            if n != 0 && th == 0.0 {
                continue;
            }
            let hz = h * r;
            let fd = (lambert_w(n, z + hz).unwrap() - lambert_w(n, z - hz).unwrap()) / (2.0 * hz);
            let d = lambert_w_derivative(n, z).unwrap();
            assert!((d - fd).norm() < 1e-6 * d.norm(), "n={n} z={z}: {d} vs {fd}");
        }
    }
}

#[test]
fn derivative_diverges_at_branch_point() {
    let mut last = 0.0;
    for eps in [1e-1, 1e-2, 1e-3, 1e-4] {
        let z = c(-1.0 / E + eps, 0.0);
        let d = lambert_w_derivative(0, z).unwrap();
        let h = eps * 1e-4;
        let fd = (lambert_w(0, z + h).unwrap() - lambert_w(0, z - h).unwrap()) / (2.0 * h);
        assert!((d - fd).norm() < 1e-5 * d.norm(), "eps={eps}: {d} vs {fd}");
        assert!(d.norm() > last);
        last = d.norm();
    }
    assert!(last > 50.0);
}

#[test]
fn comtet_improves_with_branch() {
    let rel = |n: i64| {
        let exact = lambert_w(n, c(1.0, 0.0)).unwrap();
        (lambert_w_comtet(n, c(1.0, 0.0), 2).unwrap() - exact).norm() / exact.norm()
    };
    assert!(rel(50) < rel(5));
    let big = c(1e6, 0.0);
    let exact = lambert_w(0, big).unwrap();
    let approx = lambert_w_comtet(0, big, 2).unwrap();
    assert!((approx - exact).norm() / exact.norm() < 2e-2);
    let three = lambert_w_comtet(0, big, 3).unwrap();
    assert!((three - exact).norm() < (approx - exact).norm());
    assert_eq!(
        lambert_w_comtet(0, big, 0),
        Err(SpecFnError::ComtetTerms { terms: 0 })
    );
}

#[test]
fn branch_strips_are_ordered() {
    for z in [c(2.0, 1.0), c(-3.0, 0.5), c(0.1, -4.0), c(-0.2, 1e-3)] {
        let ims: Vec<f64> = (-4..=4).map(|n| lambert_w(n, z).unwrap().im).collect();
        for pair in ims.windows(2) {
            assert!(pair[1] > pair[0], "{z}: {ims:?}");
        }
    }
}

#[test]
fn gamma_one_plus_i_modulus() {
    let g = gamma(c(1.0, 1.0)).unwrap();
    let want = PI / PI.sinh();
    assert!((g.norm_sqr() - want).abs() < 1e-13 * want);
    let oracle = stirling_log_gamma(c(1.0, 1.0));
    assert!((log_gamma(c(1.0, 1.0)).unwrap() - oracle).norm() < 1e-13);
}

#[test]
fn gamma_on_imaginary_axis() {
    let mut x = 0.1;
    while x <= 10.0 {
        let g = gamma(c(0.0, x)).unwrap().norm_sqr();
        let want = PI / (x * (PI * x).sinh());
        assert!((g / want - 1.0).abs() < 1e-10, "x={x}");
        x += 0.1;
    }
}

#[test]
fn log_gamma_matches_stirling_oracle() {
    for re in [-7.3, -2.5, -0.4, 0.2, 0.5, 1.7, 6.0, 33.0] {
        for im in [-40.0, -3.0, -0.1, 0.0, 0.3, 2.0, 15.0, 60.0] {
            let z = c(re, im);
            let got = log_gamma(z).unwrap();
            let want = stirling_log_gamma(z);
            assert!(
                (got - want).norm() < 1e-12 * want.norm().max(1.0),
                "z={z}: {got} vs {want}"
            );
        }
    }
}

proptest! {
    #[test]
    fn lambert_residual_and_branch(n in -12i64..=12, lr in -3.0f64..6.0, th in -3.0f64..3.0) {
        let z = Complex64::from_polar(10f64.powf(lr), th);
        let w = lambert_w(n, z).unwrap();
        prop_assert!((w * w.exp() - z).norm() <= 1e-12 * z.norm().max(1.0));
        prop_assert_eq!(branch_of(w, z), n);
        prop_assert!(w.re.is_finite() && w.im.is_finite());
    }

    #[test]
    fn real_branches_straddle_minus_one(x in -0.367_879f64..-1e-12) {
        let w0 = lambert_w(0, c(x, 0.0)).unwrap();
        let wm = lambert_w(-1, c(x, 0.0)).unwrap();
        prop_assert_eq!(w0.im, 0.0);
        prop_assert_eq!(wm.im, 0.0);
        prop_assert!(w0.re >= -1.0 && -1.0 >= wm.re);
        prop_assert!((w0.re * w0.re.exp() - x).abs() <= 1e-12);
        prop_assert!((wm.re * wm.re.exp() - x).abs() <= 1e-12);
    }

    #[test]
    fn log_gamma_recurrence(r in 0.5f64..100.0, th in -3.1f64..3.1) {
        let z = Complex64::from_polar(r, th);
        prop_assume!(!(z.im.abs() < 1e-9 && z.re < 0.0));
        let lhs = log_gamma(z + 1.0).unwrap();
        let rhs = log_gamma(z).unwrap() + z.ln();
        prop_assert!((lhs - rhs).norm() <= 1e-12 * lhs.norm().max(1.0), "{} vs {}", lhs, rhs);
    }

    #[test]
    fn log_gamma_reflection(re in -6.0f64..6.0, im in -8.0f64..8.0) {
        let z = c(re, im);
        prop_assume!(im.abs() > 1e-3 || (re - re.round()).abs() > 1e-3);
        let lhs = log_gamma(z).unwrap() + log_gamma(1.0 - z).unwrap();
        let rhs = (PI / (PI * z).sin()).ln();
        prop_assert!((lhs.re - rhs.re).abs() < 1e-10 * rhs.norm().max(1.0));
        prop_assert!(wrap(lhs.im - rhs.im) < 1e-10 * rhs.norm().max(1.0));
    }
}
