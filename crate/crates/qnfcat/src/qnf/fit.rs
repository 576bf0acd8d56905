use num_complex::Complex64;

use super::{QnfError, QnfResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FitModel {
    /// `k_n = offset + n · gap`.
    Linear,
    /// `k_n = offset + n · gap + c ln n`.
    LinearPlusLog,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FitVerdict {
    CleanOffsetGap,
    LogarithmicSubleading,
    Inconclusive,
}

impl FitVerdict {
    pub fn name(self) -> &'static str {
        match self {
            FitVerdict::CleanOffsetGap => "clean_offset_gap",
            FitVerdict::LogarithmicSubleading => "logarithmic_subleading",
            FitVerdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticFit {
    pub model: FitModel,
    pub offset: Complex64,
    pub gap: Complex64,
    pub log_coefficient: Option<Complex64>,
    /// `|k_n - model(n)|` in tower order.
    pub residuals: Vec<f64>,
    pub max_residual: f64,
    /// Decay exponent `p` of the second differences, `|Δ²k_n| ~ n^{-p}`.
    pub decay_exponent: Option<f64>,
    pub verdict: FitVerdict,
}

pub const MIN_ENTRIES: usize = 5;

/// Least-squares offset+gap fit over a tower indexed by `branch`.
///
/// Verdict: `clean_offset_gap` when the linear law holds to rounding, or
/// when the misfit is a power-law correction (second differences decaying
/// like `n^{-3}` or faster); `logarithmic_subleading` when the second
/// differences decay like `n^{-2}` and a `ln n` term lowers the residuals;
/// `inconclusive` otherwise.
pub fn fit_offset_gap(tower: &[QnfResult], model: FitModel) -> Result<AsymptoticFit, QnfError> {
    let mut pts: Vec<(i64, Complex64)> = Vec::with_capacity(tower.len());
    for q in tower {
        let n = q.branch.ok_or(QnfError::InvalidRange {
            reason: "tower entries need branch indices",
        })?;
        pts.push((n, q.k));
    }
    pts.sort_by_key(|p| p.0);
    if pts.windows(2).any(|w| w[0].0 == w[1].0) {
        return Err(QnfError::InvalidRange {
            reason: "duplicate branch index; fit one sign at a time",
        });
    }
    if pts.len() < MIN_ENTRIES {
        return Err(QnfError::InsufficientData {
            have: pts.len(),
            need: MIN_ENTRIES,
        });
    }
    let log_ok = pts.iter().all(|p| p.0 > 0);
    if model == FitModel::LinearPlusLog && !log_ok {
        return Err(QnfError::InvalidRange {
            reason: "ln n needs n ≥ 1",
        });
    }
    let ns: Vec<f64> = pts.iter().map(|p| p.0 as f64).collect();
    let ks: Vec<Complex64> = pts.iter().map(|p| p.1).collect();
    let ones = vec![1.0; ns.len()];
    let logs: Vec<f64> = ns.iter().map(|n| n.abs().max(1.0).ln()).collect();

    let (lin_coef, lin_res) = lstsq(&[&ones, &ns], &ks);
    let scale = ks.iter().fold(1.0f64, |m, k| m.max(k.norm()));
    let tol = 1e-11 * scale;
    let lin_max = max(&lin_res);

    let (log_coef, log_res) = if log_ok {
        let (c, r) = lstsq(&[&ones, &ns, &logs], &ks);
        (Some(c), Some(r))
    } else {
        (None, None)
    };

    let consecutive = pts.windows(2).all(|w| w[1].0 == w[0].0 + 1);
    let decay = if consecutive { second_difference_decay(&ns, &ks, tol) } else { None };
    let verdict = if lin_max <= tol {
        FitVerdict::CleanOffsetGap
    } else {
        match decay {
            Some(p) if p >= 2.5 => FitVerdict::CleanOffsetGap,
            Some(p) if p < 2.5 && log_res.as_ref().is_some_and(|r| max(r) < 0.5 * lin_max) => {
                FitVerdict::LogarithmicSubleading
            }
            _ => FitVerdict::Inconclusive,
        }
    };
    let fit = match model {
        FitModel::Linear => AsymptoticFit {
            model,
            offset: lin_coef[0],
            gap: lin_coef[1],
            log_coefficient: None,
            max_residual: lin_max,
            residuals: lin_res,
            decay_exponent: decay,
            verdict,
        },
        FitModel::LinearPlusLog => {
            let c = log_coef.expect("checked above");
            let r = log_res.expect("checked above");
            AsymptoticFit {
                model,
                offset: c[0],
                gap: c[1],
                log_coefficient: Some(c[2]),
                max_residual: max(&r),
                residuals: r,
                decay_exponent: decay,
                verdict,
            }
        }
    };
    Ok(fit)
}

fn max(v: &[f64]) -> f64 {
    v.iter().copied().fold(0.0, f64::max)
}

/// Slope of `ln|Δ²k_n|` against `ln n`, negated. `Some(∞)` when all second
/// differences are below `tol`.
fn second_difference_decay(ns: &[f64], ks: &[Complex64], tol: f64) -> Option<f64> {
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for i in 1..ks.len() - 1 {
        let d = (ks[i + 1] - 2.0 * ks[i] + ks[i - 1]).norm();
        if d > tol && ns[i] > 0.0 {
            xs.push(ns[i].ln());
            ys.push(d.ln());
        }
    }
    if xs.is_empty() {
        return Some(f64::INFINITY);
    }
    if xs.len() < 3 {
        return None;
    }
    let m = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / m;
    let my = ys.iter().sum::<f64>() / m;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    Some(-sxy / sxx)
}

/// Real design matrix, complex data; modified Gram-Schmidt QR.
/// Returns the coefficients and `|residual|` per row.
fn lstsq(cols: &[&[f64]], y: &[Complex64]) -> (Vec<Complex64>, Vec<f64>) {
    let m = y.len();
    let p = cols.len();
    let mut q: Vec<Vec<f64>> = cols.iter().map(|c| c.to_vec()).collect();
    let mut r = vec![vec![0.0; p]; p];
    for j in 0..p {
        for i in 0..j {
            let d: f64 = (0..m).map(|t| q[i][t] * q[j][t]).sum();
            r[i][j] = d;
            let (head, tail) = q.split_at_mut(j);
            for (qj, qi) in tail[0].iter_mut().zip(&head[i]) {
                *qj -= d * qi;
            }
        }
        let norm = (0..m).map(|t| q[j][t] * q[j][t]).sum::<f64>().sqrt();
        r[j][j] = norm;
        for v in q[j].iter_mut() {
            *v /= norm;
        }
    }
    let qty: Vec<Complex64> = (0..p)
        .map(|j| (0..m).map(|t| q[j][t] * y[t]).sum())
        .collect();
    let mut coef = vec![Complex64::new(0.0, 0.0); p];
    for j in (0..p).rev() {
        let mut acc = qty[j];
        for k in j + 1..p {
            acc -= r[j][k] * coef[k];
        }
        coef[j] = acc / r[j][j];
    }
    let res = (0..m)
        .map(|t| {
            let model: Complex64 = (0..p).map(|j| cols[j][t] * coef[j]).sum();
            (y[t] - model).norm()
        })
        .collect();
    (coef, res)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qnf::{Classification, Method, SignChoice};

    fn entry(n: i64, k: Complex64) -> QnfResult {
        QnfResult {
            k,
            k_minus_inf: k,
            k_plus_inf: k,
            branch: Some(n),
            sign: SignChoice::Unsigned,
            method: Method::ClosedForm,
            residual: 0.0,
            classification: Classification::ComplexQnf,
            pole_order: 1,
        }
    }

    #[test]
    fn exact_line() {
        let tower: Vec<_> = (5..=15)
            .map(|n| entry(n, Complex64::new(0.3, 0.5 + n as f64)))
            .collect();
        let f = fit_offset_gap(&tower, FitModel::Linear).unwrap();
        assert_eq!(f.verdict, FitVerdict::CleanOffsetGap);
        assert!((f.gap - Complex64::new(0.0, 1.0)).norm() < 1e-13);
    }

    #[test]
    fn log_tower() {
        let tower: Vec<_> = (5..=15)
            .map(|n| {
                let nf = n as f64;
                entry(n, Complex64::new(nf, 0.5 * nf.ln() + 0.1 / nf))
            })
            .collect();
        let f = fit_offset_gap(&tower, FitModel::LinearPlusLog).unwrap();
        assert_eq!(f.verdict, FitVerdict::LogarithmicSubleading);
    }

    #[test]
    fn too_short() {
        let tower: Vec<_> = (1..=4).map(|n| entry(n, Complex64::new(n as f64, 0.0))).collect();
        assert!(matches!(
            fit_offset_gap(&tower, FitModel::Linear),
            Err(QnfError::InsufficientData { .. })
        ));
    }
}
