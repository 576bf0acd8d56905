use std::f64::consts::PI;

use num_complex::Complex64;

use super::SpecFnError;

/// Lanczos shift `g`.
pub const LANCZOS_G: f64 = 607.0 / 128.0;
/// Number of Lanczos coefficients.
pub const LANCZOS_TERMS: usize = 15;

// Godfrey's coefficients for g = 607/128.
#[allow(clippy::excessive_precision)]
const LANCZOS_COEFF: [f64; LANCZOS_TERMS] = [
    0.999_999_999_999_997_091_82,
    57.156_235_665_862_923_517,
    -59.597_960_355_475_491_248,
    14.136_097_974_741_747_174,
    -0.491_913_816_097_620_199_78,
    0.339_946_499_848_118_886_99e-4,
    0.465_236_289_270_485_756_65e-4,
    -0.983_744_753_048_795_646_77e-4,
    0.158_088_703_224_912_488_84e-3,
    -0.210_264_441_724_104_883_19e-3,
    0.217_439_618_115_212_643_20e-3,
    -0.164_318_106_536_763_890_22e-3,
    0.844_182_239_838_527_432_93e-4,
    -0.261_908_384_015_814_086_70e-4,
    0.368_991_826_595_316_227_04e-5,
];

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_7;
const LN_PI: f64 = 1.144_729_885_849_400_2;

/// Principal branch of `ln Γ(z)`: analytic off the non-positive real axis,
/// real for real `z > 0`, and continuous from above onto the negative axis.
pub fn log_gamma(z: Complex64) -> Result<Complex64, SpecFnError> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(SpecFnError::NonFinite { z });
    }
    if z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round() {
        return Err(SpecFnError::Pole { z });
    }
    if z.re >= 0.5 {
        return Ok(lanczos(z));
    }
    // Reflection: Γ(z)Γ(1-z) = π / sin(πz).
    Ok(LN_PI - ln_sin_pi(z) - lanczos(1.0 - z))
}

/// `Γ(z) = exp(ln Γ(z))`.
pub fn gamma(z: Complex64) -> Result<Complex64, SpecFnError> {
    log_gamma(z).map(|l| l.exp())
}

fn lanczos(z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(LANCZOS_COEFF[0], 0.0);
    for (k, c) in LANCZOS_COEFF.iter().enumerate().skip(1) {
        acc += c / (z + k as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    (z + 0.5) * t.ln() - t + LN_SQRT_2PI + acc.ln() - z.ln()
}

/// `ln sin(πz)` continued through the upper (or lower) half plane from the
/// positive imaginary (or negative imaginary) direction. Real `z` is treated
/// as lying on the upper side.
fn ln_sin_pi(z: Complex64) -> Complex64 {
    let i = Complex64::i();
    let ln2 = std::f64::consts::LN_2;
    if z.im >= 0.0 {
        -i * PI * z + Complex64::new(-ln2, PI / 2.0) + ln_1p(-(2.0 * i * PI * z).exp())
    } else {
        i * PI * z + Complex64::new(-ln2, -PI / 2.0) + ln_1p(-(-2.0 * i * PI * z).exp())
    }
}

fn ln_1p(w: Complex64) -> Complex64 {
    if w.norm() < 1e-8 {
        w - w * w / 2.0
    } else {
        (1.0 + w).ln()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn gamma_one_is_one() {
        assert!(log_gamma(c(1.0, 0.0)).unwrap().norm() < 1e-15);
    }

    #[test]
    fn gamma_half_is_sqrt_pi() {
        let got = log_gamma(c(0.5, 0.0)).unwrap();
        assert!((got - c(0.5 * LN_PI, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn poles_are_detected() {
        for n in 0..5 {
            let z = c(-(n as f64), 0.0);
            assert_eq!(log_gamma(z), Err(SpecFnError::Pole { z }));
        }
    }

    #[test]
    fn negative_axis_from_above() {
        // Γ(-1/2) = -2√π, so ln Γ carries -iπ on the continuous sheet.
        let got = log_gamma(c(-0.5, 0.0)).unwrap();
        let want = c((2.0 * PI.sqrt()).ln(), -PI);
        assert!((got - want).norm() < 1e-14, "{got}");
    }

    #[test]
    fn large_imaginary_part_is_finite() {
        for y in [25.0, 200.0, 1500.0] {
            let g = log_gamma(c(-3.3, y)).unwrap();
            let h = log_gamma(c(-2.3, y)).unwrap();
            let rec = h - g - c(-3.3, y).ln();
            assert!(rec.norm() < 1e-10 * h.norm().max(1.0), "y={y}: {rec}");
        }
    }
}
