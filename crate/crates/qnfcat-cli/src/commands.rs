use std::ops::RangeInclusive;

use num_complex::Complex64;
use qnfcat::oracle::{find_poles, numeric_amplitude, SearchRegion};
use qnfcat::potentials::{
    as_eckart, canonicalize, Canonical, evaluate, resonances, transmission_amplitude, transmission_probability,
    PhysicalConstants, PotentialError, PotentialSpec, TietzKind,
};
use qnfcat::qnf::{
    asymptotic_qnfs, classify, closed_form_qnfs, fit_offset_gap, length_scale, perturbative_qnfs,
    qnf_energy, transcendental_qnfs, Classification, FitModel, Method, QnfError, QnfResult, Regime,
    Search, SignChoice,
};

use crate::error::CliError;
use crate::grid::linspace;
use crate::table::{Cell, Table};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QnfMethod {
    Auto,
    ClosedForm,
    Transcendental,
    Perturbative,
    Asymptotic,
    Oracle,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Command {
    Eval {
        x: Option<Vec<f64>>,
    },
    Transmission {
        energy: Option<Vec<f64>>,
    },
    Qnf {
        n: Option<RangeInclusive<i64>>,
        method: QnfMethod,
        region: Option<SearchRegion>,
        regime: Option<Regime>,
        physical_only: bool,
    },
    Resonances {
        n_max: u32,
    },
    Verify {
        energy: Option<Vec<f64>>,
        region: Option<SearchRegion>,
    },
    Fit {
        n: Option<RangeInclusive<i64>>,
        sign: Option<SignChoice>,
        model: FitModel,
    },
    Catalog,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Eval { .. } => "eval",
            Command::Transmission { .. } => "transmission",
            Command::Qnf { .. } => "qnf",
            Command::Resonances { .. } => "resonances",
            Command::Verify { .. } => "verify",
            Command::Fit { .. } => "fit",
            Command::Catalog => "catalog",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    /// Optional only for `catalog`.
    pub spec: Option<PotentialSpec>,
    pub constants: PhysicalConstants,
    pub command: Command,
    pub format: Format,
    pub output: Option<std::path::PathBuf>,
}

pub struct Outcome {
    pub table: Table,
    /// Set by `verify` when a check exceeds its tolerance.
    pub failed: bool,
}

fn need_spec(config: &RunConfig) -> Result<&PotentialSpec, CliError> {
    config
        .spec
        .as_ref()
        .ok_or_else(|| CliError::Schema(format!("`{}` needs a potential (--type or --config)", config.command.name())))
}

pub fn execute(config: &RunConfig) -> Result<Outcome, CliError> {
    let c = &config.constants;
    let table = match &config.command {
        Command::Eval { x } => eval_table(need_spec(config)?, x.as_deref(), c)?,
        Command::Transmission { energy } => transmission_table(need_spec(config)?, energy.as_deref(), c)?,
        Command::Qnf {
            n,
            method,
            region,
            regime,
            physical_only,
        } => qnf_table(need_spec(config)?, n.clone(), *method, *region, *regime, *physical_only, c)?,
        Command::Resonances { n_max } => resonance_table(need_spec(config)?, *n_max, c)?,
        Command::Verify { energy, region } => {
            return verify(need_spec(config)?, energy.as_deref(), *region, c);
        }
        Command::Fit { n, sign, model } => fit_table(need_spec(config)?, n.clone(), *sign, *model, c)?,
        Command::Catalog => catalog_table(config.spec.as_ref())?,
    };
    Ok(Outcome { table, failed: false })
}

fn width(spec: &PotentialSpec, c: &PhysicalConstants) -> f64 {
    length_scale(spec, c)
}

/// Default x grid: 101 points on `[-5w, 5w]` clipped to the domain.
fn default_x(spec: &PotentialSpec, c: &PhysicalConstants) -> Vec<f64> {
    let w = width(spec, c);
    let (lo, hi) = spec.domain();
    let start = if lo.is_finite() { lo + 1e-2 * w } else { -5.0 * w };
    let stop = if hi.is_finite() { hi - 1e-2 * w } else { start.max(-5.0 * w) + 10.0 * w };
    linspace(start, stop, 101)
}

fn eval_table(spec: &PotentialSpec, x: Option<&[f64]>, c: &PhysicalConstants) -> Result<Table, CliError> {
    let xs = x.map_or_else(|| default_x(spec, c), <[f64]>::to_vec);
    let mut t = Table::new(&["x", "V"]);
    for x in xs {
        let v = evaluate(spec, x).map_err(|e| CliError::numeric("evaluate", e))?;
        t.push(vec![x.into(), v.into()]);
    }
    Ok(t)
}

/// 50 energies above the higher asymptotic level, up to ten natural units.
fn default_energies(spec: &PotentialSpec, c: &PhysicalConstants) -> Result<Vec<f64>, CliError> {
    let (vm, vp) = spec.asymptotic_limits()?;
    let w = width(spec, c);
    let unit = 1.0 / (c.beta() * w * w);
    Ok(linspace(0.02, 10.0, 50)
        .into_iter()
        .map(|s| vm.max(vp) + s * unit)
        .collect())
}

fn incidence_k(spec: &PotentialSpec, energy: f64, c: &PhysicalConstants) -> Result<f64, CliError> {
    let (vm, _) = spec.asymptotic_limits()?;
    Ok((c.beta() * (energy - vm)).sqrt())
}

fn transmission_table(
    spec: &PotentialSpec,
    energy: Option<&[f64]>,
    c: &PhysicalConstants,
) -> Result<Table, CliError> {
    let es = match energy {
        Some(e) => e.to_vec(),
        None => default_energies(spec, c)?,
    };
    let mut t = Table::new(&["E", "k_minus", "T", "t_abs2", "t_arg"]);
    for e in es {
        let big_t = transmission_probability(spec, e, c).map_err(|err| CliError::numeric("transmission", err))?;
        let k = incidence_k(spec, e, c)?;
        let amp = transmission_amplitude(spec, Complex64::new(k, 0.0), c)
            .map_err(|err| CliError::numeric("transmission", err))?;
        t.push(vec![
            e.into(),
            k.into(),
            big_t.into(),
            amp.t.norm_sqr().into(),
            amp.t.arg().into(),
        ]);
    }
    Ok(t)
}

const QNF_COLUMNS: [&str; 10] = [
    "n",
    "sign",
    "method",
    "re_k",
    "im_k",
    "residual",
    "classification",
    "re_E",
    "im_E",
    "pole_order",
];

fn qnf_row(q: &QnfResult, v_plus: f64, c: &PhysicalConstants) -> Vec<Cell> {
    let e = qnf_energy(q.k_plus_inf, c, v_plus);
    vec![
        q.branch.into(),
        q.sign.name().into(),
        q.method.name().into(),
        q.k.re.into(),
        q.k.im.into(),
        q.residual.into(),
        q.classification.name().into(),
        e.re.into(),
        e.im.into(),
        i64::from(q.pole_order).into(),
    ]
}

fn is_closed_form_family(spec: &PotentialSpec) -> bool {
    matches!(
        spec,
        PotentialSpec::Delta { .. } | PotentialSpec::DoubleDelta { .. } | PotentialSpec::Step { .. }
    ) || as_eckart(spec).is_some()
}

fn tanh_like(spec: &PotentialSpec) -> bool {
    as_eckart(spec).is_some_and(|e| e.v0 == 0.0)
}

fn default_n(spec: &PotentialSpec) -> RangeInclusive<i64> {
    if tanh_like(spec) {
        1..=5
    } else {
        0..=5
    }
}

fn signs_for(spec: &PotentialSpec) -> Vec<SignChoice> {
    match spec {
        PotentialSpec::DoubleDelta { .. } | PotentialSpec::AsymDoubleDelta { .. } => {
            vec![SignChoice::Plus, SignChoice::Minus]
        }
        _ if as_eckart(spec).is_some() && !tanh_like(spec) => vec![SignChoice::Plus, SignChoice::Minus],
        _ => vec![SignChoice::Unsigned],
    }
}

pub fn regime_from_name(s: &str) -> Option<Regime> {
    [
        Regime::SmallSeparation,
        Regime::NearSymmetricOrder0,
        Regime::NearSymmetricOrder2,
        Regime::SmallK0aSeries,
        Regime::SmallAAsymRect,
    ]
    .into_iter()
    .find(|r| r.name() == s)
}

#[allow(clippy::too_many_arguments)]
fn qnf_table(
    spec: &PotentialSpec,
    n: Option<RangeInclusive<i64>>,
    method: QnfMethod,
    region: Option<SearchRegion>,
    regime: Option<Regime>,
    physical_only: bool,
    c: &PhysicalConstants,
) -> Result<Table, CliError> {
    let (_, v_plus) = spec.asymptotic_limits()?;
    let n_range = n.unwrap_or_else(|| default_n(spec));
    let mut region = region;
    let method = match method {
        QnfMethod::Auto if is_closed_form_family(spec) => QnfMethod::ClosedForm,
        QnfMethod::Auto => {
            let l = length_scale(spec, c);
            region.get_or_insert(SearchRegion::new(-10.0 / l, 10.0 / l, 0.02 / l, 4.0 / l));
            QnfMethod::Transcendental
        }
        m => m,
    };
    let results: Vec<QnfResult> = match method {
        QnfMethod::ClosedForm => closed_form_qnfs(spec, n_range, c)?,
        QnfMethod::Transcendental => {
            let search = region.map_or(Search::ImaginaryAxis, Search::Region);
            transcendental_qnfs(spec, &search, c)?
        }
        QnfMethod::Perturbative => {
            let regime = regime.ok_or_else(|| {
                CliError::Argument("perturbative method needs --regime".into())
            })?;
            match regime {
                Regime::NearSymmetricOrder0 | Regime::NearSymmetricOrder2 => {
                    let mut out = Vec::new();
                    for n in n_range {
                        for sign in [SignChoice::Plus, SignChoice::Minus] {
                            out.push(perturbative_qnfs(spec, regime, n, sign, c)?);
                        }
                    }
                    out
                }
                _ => vec![perturbative_qnfs(spec, regime, 0, SignChoice::Unsigned, c)?],
            }
        }
        QnfMethod::Asymptotic => {
            let mut out = Vec::new();
            for n in n_range {
                for sign in signs_for(spec) {
                    out.push(asymptotic_qnfs(spec, n, sign, c)?);
                }
            }
            out
        }
        QnfMethod::Oracle => {
            let region = region.ok_or_else(|| CliError::Argument("oracle method needs --region".into()))?;
            oracle_results(spec, &region, c)?
        }
        QnfMethod::Auto => unreachable!("resolved above"),
    };
    let mut t = Table::new(&QNF_COLUMNS);
    for q in results.iter().filter(|q| !physical_only || q.is_physical()) {
        t.push(qnf_row(q, v_plus, c));
    }
    Ok(t)
}

fn oracle_results(
    spec: &PotentialSpec,
    region: &SearchRegion,
    c: &PhysicalConstants,
) -> Result<Vec<QnfResult>, CliError> {
    let report = find_poles(spec, region, c)?;
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    let length = length_scale(spec, c);
    Ok(report
        .poles
        .iter()
        .map(|p| QnfResult {
            k: p.k,
            k_minus_inf: p.k_minus_inf,
            k_plus_inf: p.k_plus_inf,
            branch: None,
            sign: SignChoice::Unsigned,
            method: Method::Oracle,
            residual: p.residual,
            classification: classify(p.k, length),
            pole_order: p.multiplicity_hint,
        })
        .collect())
}

fn resonance_table(spec: &PotentialSpec, n_max: u32, c: &PhysicalConstants) -> Result<Table, CliError> {
    let entries = resonances(spec, n_max, c).map_err(|e| CliError::numeric("resonances", e))?;
    let mut t = Table::new(&["n", "kind", "k", "E", "parameter", "T"]);
    for r in entries {
        t.push(vec![
            r.n.into(),
            r.kind.name().into(),
            r.k.into(),
            r.energy.into(),
            r.parameter.into(),
            r.transmission.into(),
        ]);
    }
    Ok(t)
}

struct Check {
    name: &'static str,
    value: f64,
    tolerance: f64,
    detail: String,
}

impl Check {
    fn pass(&self) -> bool {
        self.value <= self.tolerance
    }
}

fn verify(
    spec: &PotentialSpec,
    energy: Option<&[f64]>,
    region: Option<SearchRegion>,
    c: &PhysicalConstants,
) -> Result<Outcome, CliError> {
    let mut checks = Vec::new();
    if as_eckart(spec).is_some() || !spec.is_scattering() {
        if let Ok(canon) = canonicalize(spec) {
            let xs = default_x(spec, c);
            let dev = canonical_deviation(spec, &canon, &xs)?;
            checks.push(Check {
                name: "canonical_form",
                value: dev,
                tolerance: 1e-12,
                detail: format!("sup |V - V_mobius2|/max(1, |V|) over {} points", xs.len()),
            });
        }
    }
    if spec.is_scattering() {
        let es = match energy {
            Some(e) => e.to_vec(),
            None => default_energies(spec, c)?,
        };
        let mut amp_dev: f64 = 0.0;
        let mut flux_dev: f64 = 0.0;
        let mut bound_dev: f64 = 0.0;
        for &e in &es {
            let k = Complex64::new(incidence_k(spec, e, c)?, 0.0);
            let exact = transmission_amplitude(spec, k, c).map_err(|err| CliError::numeric("transmission", err))?;
            let numeric = numeric_amplitude(spec, k, c)?;
            amp_dev = amp_dev.max((exact.t - numeric.t).norm() / exact.t.norm().max(1e-300));
            let big_t = transmission_probability(spec, e, c).map_err(|err| CliError::numeric("transmission", err))?;
            flux_dev = flux_dev.max((big_t - exact.t.norm_sqr()).abs());
            bound_dev = bound_dev.max((-big_t).max(big_t - 1.0).max(0.0));
        }
        checks.push(Check {
            name: "amplitude_vs_oracle",
            value: amp_dev,
            tolerance: 1e-8,
            detail: format!("max relative |t - t_oracle| over {} energies", es.len()),
        });
        checks.push(Check {
            name: "probability_vs_amplitude",
            value: flux_dev,
            tolerance: 1e-10,
            detail: "max |T - |t|^2|".into(),
        });
        checks.push(Check {
            name: "probability_in_unit_interval",
            value: bound_dev,
            tolerance: 1e-12,
            detail: "max distance of T outside [0, 1]".into(),
        });
        if let Some(region) = region {
            checks.extend(qnf_checks(spec, &region, c)?);
        }
    } else if region.is_some() {
        return Err(PotentialError::NotScattering { name: spec.name() }.into());
    }
    let mut t = Table::new(&["check", "value", "tolerance", "status", "detail"]);
    let mut failed = false;
    for ch in &checks {
        failed |= !ch.pass();
        t.push(vec![
            ch.name.into(),
            ch.value.into(),
            ch.tolerance.into(),
            if ch.pass() { "pass" } else { "fail" }.into(),
            ch.detail.clone().into(),
        ]);
    }
    Ok(Outcome { table: t, failed })
}

/// Analytic QNFs in `region` (search variable `k̄`).
fn analytic_in_region(
    spec: &PotentialSpec,
    region: &SearchRegion,
    c: &PhysicalConstants,
) -> Result<Vec<QnfResult>, CliError> {
    let all = match spec {
        PotentialSpec::DoubleDelta { a, .. } => {
            let reach = region.re_min.abs().max(region.re_max.abs());
            let n = (reach * 2.0 * a / std::f64::consts::PI).ceil() as i64 + 2;
            closed_form_qnfs(spec, -n..=n, c)?
        }
        PotentialSpec::Delta { .. } => closed_form_qnfs(spec, 0..=0, c)?,
        _ if as_eckart(spec).is_some() => {
            let a = as_eckart(spec).map(|e| e.a).unwrap_or(1.0);
            let n = (region.im_max.abs().max(region.im_min.abs()) * a).ceil() as i64 + 3;
            closed_form_qnfs(spec, default_n(spec).start().to_owned()..=n, c)?
        }
        _ => transcendental_qnfs(spec, &Search::Region(*region), c)?,
    };
    let mut out: Vec<QnfResult> = Vec::new();
    for q in all {
        if !q.is_physical() || !region.contains(q.k_bar()) {
            continue;
        }
        if out.iter().all(|o| (o.k - q.k).norm() > 1e-9 * q.k.norm().max(1.0)) {
            out.push(q);
        }
    }
    Ok(out)
}

fn qnf_checks(spec: &PotentialSpec, region: &SearchRegion, c: &PhysicalConstants) -> Result<Vec<Check>, CliError> {
    let analytic = analytic_in_region(spec, region, c)?;
    let report = find_poles(spec, region, c)?;
    let mut max_dist: f64 = 0.0;
    let mut unmatched = 0usize;
    for q in &analytic {
        let d = report
            .poles
            .iter()
            .map(|p| (p.k - q.k).norm())
            .fold(f64::INFINITY, f64::min);
        if d > 1e-6 {
            unmatched += 1;
        } else {
            max_dist = max_dist.max(d);
        }
    }
    let mut extra = 0usize;
    for p in &report.poles {
        if classify(p.k, length_scale(spec, c)) == Classification::TrivialZero {
            continue;
        }
        if analytic.iter().all(|q| (p.k - q.k).norm() > 1e-6) {
            extra += 1;
        }
    }
    let residual = analytic.iter().map(|q| q.residual).fold(0.0, f64::max);
    let mut checks = vec![
        Check {
            name: "qnf_residual",
            value: residual,
            tolerance: 1e-10,
            detail: format!("max pole-condition residual over {} QNFs in the region", analytic.len()),
        },
        Check {
            name: "qnf_vs_oracle",
            value: if unmatched + extra > 0 { f64::INFINITY } else { max_dist },
            tolerance: 1e-8,
            detail: format!(
                "max |analytic - oracle|; {} analytic, {} oracle, {unmatched} analytic unmatched, {extra} oracle unmatched",
                analytic.len(),
                report.poles.len()
            ),
        },
    ];
    if let Some(count) = report.count_check {
        let found: i64 = report.poles.iter().map(|p| i64::from(p.multiplicity_hint)).sum();
        checks.push(Check {
            name: "argument_count",
            value: (count - found).abs() as f64,
            tolerance: 0.0,
            detail: format!("boundary winding {count}, poles found {found}"),
        });
    }
    Ok(checks)
}

fn fit_table(
    spec: &PotentialSpec,
    n: Option<RangeInclusive<i64>>,
    sign: Option<SignChoice>,
    model: FitModel,
    c: &PhysicalConstants,
) -> Result<Table, CliError> {
    let n_range = n.unwrap_or(5..=15);
    let sign = sign.unwrap_or_else(|| signs_for(spec)[0]);
    if !matches!(spec, PotentialSpec::DoubleDelta { .. }) && as_eckart(spec).is_none() {
        return Err(QnfError::Unsupported {
            name: spec.name(),
            hint: "a double-delta or Eckart-family potential",
        }
        .into());
    }
    let tower: Vec<QnfResult> = closed_form_qnfs(spec, n_range.clone(), c)?
        .into_iter()
        .filter(|q| q.sign == sign)
        .collect();
    let fit = fit_offset_gap(&tower, model)?;
    let model_name = match model {
        FitModel::Linear => "linear",
        FitModel::LinearPlusLog => "linear_plus_log",
    };
    let mut t = Table::new(&[
        "model",
        "sign",
        "n_min",
        "n_max",
        "re_offset",
        "im_offset",
        "re_gap",
        "im_gap",
        "re_log",
        "im_log",
        "max_residual",
        "decay_exponent",
        "verdict",
    ]);
    t.push(vec![
        model_name.into(),
        sign.name().into(),
        (*n_range.start()).into(),
        (*n_range.end()).into(),
        fit.offset.re.into(),
        fit.offset.im.into(),
        fit.gap.re.into(),
        fit.gap.im.into(),
        fit.log_coefficient.map(|l| l.re).into(),
        fit.log_coefficient.map(|l| l.im).into(),
        fit.max_residual.into(),
        fit.decay_exponent.into(),
        fit.verdict.name().into(),
    ]);
    Ok(t)
}

/// Representatives of every family member with the canonicalization result.
fn catalog_specs() -> Vec<PotentialSpec> {
    vec![
        PotentialSpec::Tanh {
            v_minus: 0.0,
            v_plus: 2.0,
            a: 1.0,
        },
        PotentialSpec::Sech2 { v0: 1.0, a: 1.0 },
        PotentialSpec::Eckart {
            v_minus: 0.0,
            v_plus: 2.0,
            v0: -1.0,
            a: 1.0,
        },
        PotentialSpec::RosenMorse {
            a_coef: 1.0,
            b_coef: 1.0,
            c_coef: -1.0,
            d: 1.0,
        },
        PotentialSpec::MorseFeshbach {
            v0: 1.0,
            mu: 0.3,
            l: 1.0,
        },
        PotentialSpec::Eckart1930 {
            a_coef: 1.0,
            b_coef: 2.0,
            a: 1.0,
        },
        PotentialSpec::PoschlTellerSech2 { v0: -1.0, a: 1.0 },
        PotentialSpec::Morse {
            v0: 1.0,
            x0: 0.5,
            a: 1.0,
        },
        PotentialSpec::ManningRosen {
            a_coef: 1.0,
            b_coef: -2.0,
            b: 1.0,
        },
        PotentialSpec::Hulthen { v0: -1.0, a: 1.0 },
        PotentialSpec::Tietz {
            v0: 1.0,
            x0: 0.5,
            a: 1.0,
            kind: TietzKind::Sinh,
        },
        PotentialSpec::Tietz {
            v0: 1.0,
            x0: 0.5,
            a: 1.0,
            kind: TietzKind::Cosh,
        },
        PotentialSpec::Tietz {
            v0: 1.0,
            x0: 0.5,
            a: 1.0,
            kind: TietzKind::Exp,
        },
        PotentialSpec::Hua { v0: 1.0, q: 0.5, a: 1.0 },
        PotentialSpec::Hua { v0: 1.0, q: -2.0, a: 1.0 },
    ]
}

/// `sup |V - V_canon| / max(1, |V|)` over `xs`.
fn canonical_deviation(spec: &PotentialSpec, canon: &Canonical, xs: &[f64]) -> Result<f64, CliError> {
    let mut dev: f64 = 0.0;
    for &x in xs {
        let v = evaluate(spec, x).map_err(|e| CliError::numeric("evaluate", e))?;
        match canon.form.evaluate(x - canon.shift) {
            Some(w) => dev = dev.max((v - w).abs() / v.abs().max(1.0)),
            None => return Ok(f64::INFINITY),
        }
    }
    Ok(dev)
}

fn catalog_table(only: Option<&PotentialSpec>) -> Result<Table, CliError> {
    let specs = match only {
        Some(s) => vec![*s],
        None => catalog_specs(),
    };
    let mut t = Table::new(&[
        "type",
        "parameters",
        "scattering",
        "A0",
        "E1",
        "F1",
        "E2",
        "F2",
        "a",
        "overall",
        "linear",
        "shift",
        "eckart_V_minus",
        "eckart_V_plus",
        "eckart_V0",
        "max_rel_deviation",
    ]);
    let c = PhysicalConstants::default();
    for spec in specs {
        let canon = canonicalize(&spec).map_err(|e| CliError::numeric("canonicalize", e))?;
        let xs = default_x(&spec, &c);
        let dev = canonical_deviation(&spec, &canon, &xs)?;
        let eq = as_eckart(&spec);
        let f = canon.form;
        t.push(vec![
            spec.name().into(),
            parameters(&spec).into(),
            spec.is_scattering().into(),
            f.a0.into(),
            f.e1.into(),
            f.f1.into(),
            f.e2.into(),
            f.f2.into(),
            f.a.into(),
            f.overall.into(),
            f.linear.into(),
            canon.shift.into(),
            eq.map(|e| e.v_minus).into(),
            eq.map(|e| e.v_plus).into(),
            eq.map(|e| e.v0).into(),
            dev.into(),
        ]);
    }
    Ok(t)
}

fn parameters(spec: &PotentialSpec) -> String {
    crate::schema::spec_to_fields(spec)
        .into_iter()
        .filter(|(k, _)| k != "type")
        .map(|(k, v)| match v {
            crate::schema::Value::Num(x) => format!("{k}={x}"),
            crate::schema::Value::Text(s) => format!("{k}={s}"),
        })
        .collect::<Vec<_>>()
        .join(";")
}
