use num_complex::Complex64;

use crate::potentials::{PhysicalConstants, PotentialSpec};

const I: Complex64 = Complex64::new(0.0, 1.0);

type Mat = [[Complex64; 2]; 2];

/// Result of propagating `e^{-ik₊x}` from the right edge to the left edge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransferResult {
    /// Amplitude for unit incident coefficient, without flux normalization.
    pub t_raw: Complex64,
    pub r: Complex64,
    /// Determinant of the accumulated `(ψ, ψ')` transfer matrix.
    pub det: Complex64,
}

enum Piece {
    /// Free propagation over `len` with wavenumber `q`.
    Free { q: Complex64, len: f64 },
    /// `ψ'` jump of `g ψ`.
    Kick { g: f64 },
}

/// Right-to-left sequence of pieces plus the edges `(x_left, x_right)`.
fn layout(
    spec: &PotentialSpec,
    k_minus: Complex64,
    c: &PhysicalConstants,
) -> Option<(Vec<Piece>, f64, f64)> {
    let beta = c.beta();
    let k = k_minus;
    let pieces = match *spec {
        PotentialSpec::Delta { alpha } => (vec![Piece::Kick { g: beta * alpha }], 0.0, 0.0),
        PotentialSpec::DoubleDelta { alpha, a } => (
            vec![
                Piece::Kick { g: beta * alpha },
                Piece::Free { q: k, len: 2.0 * a },
                Piece::Kick { g: beta * alpha },
            ],
            -a,
            a,
        ),
        PotentialSpec::AsymDoubleDelta {
            alpha_plus,
            alpha_minus,
            a,
        } => (
            vec![
                Piece::Kick {
                    g: beta * alpha_minus,
                },
                Piece::Free { q: k, len: 2.0 * a },
                Piece::Kick {
                    g: beta * alpha_plus,
                },
            ],
            -a,
            a,
        ),
        PotentialSpec::Step { .. } => (Vec::new(), 0.0, 0.0),
        PotentialSpec::RectBarrier { v0, a } => (
            vec![Piece::Free {
                q: (k * k - beta * v0).sqrt(),
                len: 2.0 * a,
            }],
            -a,
            a,
        ),
        PotentialSpec::AsymRectBarrier { v1, v2, a, .. } => (
            vec![Piece::Free {
                q: (k * k - beta * (v2 - v1)).sqrt(),
                len: 2.0 * a,
            }],
            -a,
            a,
        ),
        _ => return None,
    };
    Some(pieces)
}

fn mul(a: &Mat, b: &Mat) -> Mat {
    let mut m = [[Complex64::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            m[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    m
}

/// `sin(z)/z`, finite at 0.
fn sinc(z: Complex64) -> Complex64 {
    if z.norm() < 1e-4 {
        let z2 = z * z;
        1.0 - z2 / 6.0 + z2 * z2 / 120.0
    } else {
        z.sin() / z
    }
}

/// Transfer-matrix amplitudes of a piecewise potential at `(k₋∞, k₊∞)`.
///
/// Returns `None` for potentials that are not piecewise.
pub fn transfer_matrix(
    spec: &PotentialSpec,
    k_minus: Complex64,
    k_plus: Complex64,
    c: &PhysicalConstants,
) -> Option<TransferResult> {
    let (pieces, x_left, x_right) = layout(spec, k_minus, c)?;
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let mut m: Mat = [[one, zero], [zero, one]];
    for p in &pieces {
        let step: Mat = match *p {
            Piece::Free { q, len } => {
                let (s, cs) = ((q * len).sin(), (q * len).cos());
                [[cs, -len * sinc(q * len)], [q * s, cs]]
            }
            Piece::Kick { g } => [[one, zero], [Complex64::new(-g, 0.0), one]],
        };
        m = mul(&step, &m);
    }
    let psi_r = (-I * k_plus * x_right).exp();
    let dpsi_r = -I * k_plus * psi_r;
    let psi = m[0][0] * psi_r + m[0][1] * dpsi_r;
    let dpsi = m[1][0] * psi_r + m[1][1] * dpsi_r;
    let a = 0.5 * (psi + I * dpsi / k_minus) * (I * k_minus * x_left).exp();
    let b = 0.5 * (psi - I * dpsi / k_minus) * (-I * k_minus * x_left).exp();
    Some(TransferResult {
        t_raw: 1.0 / a,
        r: b / a,
        det: m[0][0] * m[1][1] - m[0][1] * m[1][0],
    })
}
