//! Key-value schema for potential specs and physical constants.
//!
//! A spec is a flat table with a `type` discriminator and the parameter keys
//! listed in [`fields`]. Constants sit in an optional `[constants]` table
//! with keys `hbar`, `mass` and `mode`.

use std::collections::BTreeMap;

use qnfcat::potentials::{Mobius2Form, Mode, PhysicalConstants, PotentialSpec, TietzKind};

use crate::error::CliError;

/// A parsed scalar.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Num(f64),
    Text(String),
}

pub type Fields = BTreeMap<String, Value>;

/// All `type` tags, in catalog order.
pub const TYPES: [&str; 19] = [
    "delta",
    "double-delta",
    "asym-double-delta",
    "step",
    "rect-barrier",
    "asym-rect-barrier",
    "tanh",
    "sech2",
    "eckart",
    "mobius2",
    "morse",
    "poschl-teller",
    "manning-rosen",
    "hulthen",
    "tietz",
    "hua",
    "rosen-morse",
    "morse-feshbach",
    "eckart-1930",
];

/// Parameter keys of a `type`, in emission order.
pub fn fields(kind: &str) -> Option<&'static [&'static str]> {
    Some(match kind {
        "delta" => &["alpha"],
        "double-delta" => &["alpha", "a"],
        "asym-double-delta" => &["alpha_plus", "alpha_minus", "a"],
        "step" => &["V0"],
        "rect-barrier" => &["V0", "a"],
        "asym-rect-barrier" => &["V1", "V2", "V3", "a"],
        "tanh" => &["V_minus", "V_plus", "a"],
        "sech2" | "poschl-teller" | "hulthen" => &["V0", "a"],
        "eckart" => &["V_minus", "V_plus", "V0", "a"],
        "mobius2" => &["A0", "E1", "F1", "E2", "F2", "a", "overall", "linear"],
        "morse" => &["V0", "x0", "a"],
        "manning-rosen" => &["A", "B", "b"],
        "tietz" => &["V0", "x0", "a", "kind"],
        "hua" => &["V0", "q", "a"],
        "rosen-morse" => &["A", "B", "C", "d"],
        "morse-feshbach" => &["V0", "mu", "L"],
        "eckart-1930" => &["A", "B", "a"],
        _ => return None,
    })
}

/// Alternative keys given as wavenumbers, `alpha = 2 k0/β`.
fn wavenumber_alias(kind: &str, key: &str) -> Option<&'static str> {
    match (kind, key) {
        ("delta" | "double-delta", "k0") => Some("alpha"),
        ("asym-double-delta", "k_plus") => Some("alpha_plus"),
        ("asym-double-delta", "k_minus") => Some("alpha_minus"),
        _ => None,
    }
}

fn num(f: &Fields, key: &str) -> Result<f64, CliError> {
    match f.get(key) {
        Some(Value::Num(v)) => Ok(*v),
        Some(Value::Text(_)) => Err(CliError::Schema(format!("field `{key}` must be a number"))),
        None => Err(CliError::Schema(format!("missing field `{key}`"))),
    }
}

/// Builds a spec from its fields. `type` must be present; unknown keys are
/// rejected.
pub fn spec_from_fields(fields_in: &Fields, c: &PhysicalConstants) -> Result<PotentialSpec, CliError> {
    let kind = match fields_in.get("type") {
        Some(Value::Text(t)) => t.as_str(),
        Some(Value::Num(_)) => return Err(CliError::Schema("field `type` must be a string".into())),
        None => return Err(CliError::Schema("missing field `type`".into())),
    };
    let allowed = fields(kind).ok_or_else(|| {
        CliError::Schema(format!("unknown type `{kind}`; expected one of {}", TYPES.join(", ")))
    })?;
    let mut f = Fields::new();
    for (key, value) in fields_in {
        if key == "type" {
            continue;
        }
        if let Some(target) = wavenumber_alias(kind, key) {
            if fields_in.contains_key(target) {
                return Err(CliError::Schema(format!("give either `{key}` or `{target}`, not both")));
            }
            let Value::Num(k) = value else {
                return Err(CliError::Schema(format!("field `{key}` must be a number")));
            };
            f.insert(target.to_string(), Value::Num(2.0 * k / c.beta()));
        } else if allowed.contains(&key.as_str()) {
            f.insert(key.clone(), value.clone());
        } else {
            return Err(CliError::Schema(format!(
                "unknown field `{key}` for type `{kind}`; expected {}",
                allowed.join(", ")
            )));
        }
    }
    let spec = match kind {
        "delta" => PotentialSpec::Delta { alpha: num(&f, "alpha")? },
        "double-delta" => PotentialSpec::DoubleDelta {
            alpha: num(&f, "alpha")?,
            a: num(&f, "a")?,
        },
        "asym-double-delta" => PotentialSpec::AsymDoubleDelta {
            alpha_plus: num(&f, "alpha_plus")?,
            alpha_minus: num(&f, "alpha_minus")?,
            a: num(&f, "a")?,
        },
        "step" => PotentialSpec::Step { v0: num(&f, "V0")? },
        "rect-barrier" => PotentialSpec::RectBarrier {
            v0: num(&f, "V0")?,
            a: num(&f, "a")?,
        },
        "asym-rect-barrier" => PotentialSpec::AsymRectBarrier {
            v1: num(&f, "V1")?,
            v2: num(&f, "V2")?,
            v3: num(&f, "V3")?,
            a: num(&f, "a")?,
        },
        "tanh" => PotentialSpec::Tanh {
            v_minus: num(&f, "V_minus")?,
            v_plus: num(&f, "V_plus")?,
            a: num(&f, "a")?,
        },
        "sech2" => PotentialSpec::Sech2 {
            v0: num(&f, "V0")?,
            a: num(&f, "a")?,
        },
        "poschl-teller" => PotentialSpec::PoschlTellerSech2 {
            v0: num(&f, "V0")?,
            a: num(&f, "a")?,
        },
        "hulthen" => PotentialSpec::Hulthen {
            v0: num(&f, "V0")?,
            a: num(&f, "a")?,
        },
        "eckart" => PotentialSpec::Eckart {
            v_minus: num(&f, "V_minus")?,
            v_plus: num(&f, "V_plus")?,
            v0: num(&f, "V0")?,
            a: num(&f, "a")?,
        },
        "mobius2" => PotentialSpec::Mobius2(Mobius2Form {
            a0: num(&f, "A0")?,
            e1: num(&f, "E1")?,
            f1: num(&f, "F1")?,
            e2: num(&f, "E2")?,
            f2: num(&f, "F2")?,
            a: num(&f, "a")?,
            overall: num(&f, "overall")?,
            linear: f.get("linear").map_or(Ok(0.0), |_| num(&f, "linear"))?,
        }),
        "morse" => PotentialSpec::Morse {
            v0: num(&f, "V0")?,
            x0: num(&f, "x0")?,
            a: num(&f, "a")?,
        },
        "manning-rosen" => PotentialSpec::ManningRosen {
            a_coef: num(&f, "A")?,
            b_coef: num(&f, "B")?,
            b: num(&f, "b")?,
        },
        "tietz" => {
            let kind = match f.get("kind") {
                Some(Value::Text(k)) => match k.as_str() {
                    "sinh" => TietzKind::Sinh,
                    "cosh" => TietzKind::Cosh,
                    "exp" => TietzKind::Exp,
                    other => {
                        return Err(CliError::Schema(format!(
                            "field `kind` must be sinh, cosh or exp, got `{other}`"
                        )))
                    }
                },
                Some(Value::Num(_)) => return Err(CliError::Schema("field `kind` must be a string".into())),
                None => return Err(CliError::Schema("missing field `kind`".into())),
            };
            PotentialSpec::Tietz {
                v0: num(&f, "V0")?,
                x0: num(&f, "x0")?,
                a: num(&f, "a")?,
                kind,
            }
        }
        "hua" => PotentialSpec::Hua {
            v0: num(&f, "V0")?,
            q: num(&f, "q")?,
            a: num(&f, "a")?,
        },
        "rosen-morse" => PotentialSpec::RosenMorse {
            a_coef: num(&f, "A")?,
            b_coef: num(&f, "B")?,
            c_coef: num(&f, "C")?,
            d: num(&f, "d")?,
        },
        "morse-feshbach" => PotentialSpec::MorseFeshbach {
            v0: num(&f, "V0")?,
            mu: num(&f, "mu")?,
            l: num(&f, "L")?,
        },
        "eckart-1930" => PotentialSpec::Eckart1930 {
            a_coef: num(&f, "A")?,
            b_coef: num(&f, "B")?,
            a: num(&f, "a")?,
        },
        _ => unreachable!("checked against fields()"),
    };
    spec.validate()?;
    Ok(spec)
}

/// Inverse of [`spec_from_fields`], with canonical keys (no aliases).
pub fn spec_to_fields(spec: &PotentialSpec) -> Fields {
    let values: Vec<f64> = match *spec {
        PotentialSpec::Delta { alpha } => vec![alpha],
        PotentialSpec::DoubleDelta { alpha, a } => vec![alpha, a],
        PotentialSpec::AsymDoubleDelta {
            alpha_plus,
            alpha_minus,
            a,
        } => vec![alpha_plus, alpha_minus, a],
        PotentialSpec::Step { v0 } => vec![v0],
        PotentialSpec::RectBarrier { v0, a } => vec![v0, a],
        PotentialSpec::AsymRectBarrier { v1, v2, v3, a } => vec![v1, v2, v3, a],
        PotentialSpec::Tanh { v_minus, v_plus, a } => vec![v_minus, v_plus, a],
        PotentialSpec::Sech2 { v0, a }
        | PotentialSpec::PoschlTellerSech2 { v0, a }
        | PotentialSpec::Hulthen { v0, a } => vec![v0, a],
        PotentialSpec::Eckart {
            v_minus,
            v_plus,
            v0,
            a,
        } => vec![v_minus, v_plus, v0, a],
        PotentialSpec::Mobius2(m) => vec![m.a0, m.e1, m.f1, m.e2, m.f2, m.a, m.overall, m.linear],
        PotentialSpec::Morse { v0, x0, a } => vec![v0, x0, a],
        PotentialSpec::ManningRosen { a_coef, b_coef, b } => vec![a_coef, b_coef, b],
        PotentialSpec::Tietz { v0, x0, a, .. } => vec![v0, x0, a],
        PotentialSpec::Hua { v0, q, a } => vec![v0, q, a],
        PotentialSpec::RosenMorse {
            a_coef,
            b_coef,
            c_coef,
            d,
        } => vec![a_coef, b_coef, c_coef, d],
        PotentialSpec::MorseFeshbach { v0, mu, l } => vec![v0, mu, l],
        PotentialSpec::Eckart1930 { a_coef, b_coef, a } => vec![a_coef, b_coef, a],
    };
    let kind = spec.name();
    let mut out = Fields::new();
    out.insert("type".into(), Value::Text(kind.into()));
    let keys = fields(kind).expect("every spec name is a schema type");
    for (key, v) in keys.iter().zip(values) {
        out.insert((*key).into(), Value::Num(v));
    }
    if let PotentialSpec::Tietz { kind, .. } = *spec {
        out.insert("kind".into(), Value::Text(kind.name().into()));
    }
    out
}

/// Constants from their fields; missing keys take the defaults.
pub fn constants_from_fields(f: &Fields) -> Result<PhysicalConstants, CliError> {
    let mut c = PhysicalConstants::default();
    for (key, value) in f {
        match (key.as_str(), value) {
            ("hbar", Value::Num(v)) => c.hbar = *v,
            ("mass", Value::Num(v)) => c.mass = *v,
            ("mode", Value::Text(m)) => {
                c.mode = match m.as_str() {
                    "nonrelativistic" => Mode::Nonrelativistic,
                    "relativistic" => Mode::Relativistic,
                    other => {
                        return Err(CliError::Schema(format!(
                            "field `mode` must be nonrelativistic or relativistic, got `{other}`"
                        )))
                    }
                }
            }
            ("hbar" | "mass", _) => return Err(CliError::Schema(format!("field `{key}` must be a number"))),
            ("mode", _) => return Err(CliError::Schema("field `mode` must be a string".into())),
            _ => {
                return Err(CliError::Schema(format!(
                    "unknown field `{key}` in constants; expected hbar, mass, mode"
                )))
            }
        }
    }
    c.validate()?;
    Ok(c)
}

pub fn mode_name(mode: Mode) -> &'static str {
    match mode {
        Mode::Nonrelativistic => "nonrelativistic",
        Mode::Relativistic => "relativistic",
    }
}

/// Spec and constants from TOML text.
pub fn parse_toml(text: &str) -> Result<(Fields, Fields), CliError> {
    let table: toml::Table = text.parse().map_err(|e: toml::de::Error| {
        let at = e
            .span()
            .map(|s| {
                let line = text[..s.start].lines().count().max(1);
                format!(" (line {line})")
            })
            .unwrap_or_default();
        CliError::Schema(format!("config parse error{at}: {}", e.message()))
    })?;
    let mut spec = Fields::new();
    let mut constants = Fields::new();
    for (key, value) in &table {
        if key == "constants" {
            let toml::Value::Table(t) = value else {
                return Err(CliError::Schema("`constants` must be a table".into()));
            };
            for (k, v) in t {
                constants.insert(k.clone(), scalar(k, v)?);
            }
        } else {
            spec.insert(key.clone(), scalar(key, value)?);
        }
    }
    Ok((spec, constants))
}

fn scalar(key: &str, v: &toml::Value) -> Result<Value, CliError> {
    match v {
        toml::Value::Float(x) => Ok(Value::Num(*x)),
        toml::Value::Integer(i) => Ok(Value::Num(*i as f64)),
        toml::Value::String(s) => Ok(Value::Text(s.clone())),
        _ => Err(CliError::Schema(format!("field `{key}` must be a number or a string"))),
    }
}

/// TOML text that [`parse_toml`] reads back to the same spec and constants.
pub fn to_toml(spec: &PotentialSpec, c: &PhysicalConstants) -> String {
    let mut table = toml::Table::new();
    for (key, value) in spec_to_fields(spec) {
        let v = match value {
            Value::Num(x) => toml::Value::Float(x),
            Value::Text(s) => toml::Value::String(s),
        };
        table.insert(key, v);
    }
    let mut ct = toml::Table::new();
    ct.insert("hbar".into(), toml::Value::Float(c.hbar));
    ct.insert("mass".into(), toml::Value::Float(c.mass));
    ct.insert("mode".into(), toml::Value::String(mode_name(c.mode).into()));
    table.insert("constants".into(), toml::Value::Table(ct));
    toml::to_string(&table).expect("plain scalars serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn text(s: &str) -> Value {
        Value::Text(s.into())
    }

    #[test]
    fn delta_from_k0_alias() {
        let mut f = Fields::new();
        f.insert("type".into(), text("delta"));
        f.insert("k0".into(), Value::Num(1.0));
        let spec = spec_from_fields(&f, &PhysicalConstants::default()).unwrap();
        assert_eq!(spec, PotentialSpec::Delta { alpha: 1.0 });
    }

    #[test]
    fn unknown_keys_are_named() {
        let (f, _) = parse_toml("type = \"sech2\"\nV0 = 1\na = 1\nb = 2\n").unwrap();
        let err = spec_from_fields(&f, &PhysicalConstants::default()).unwrap_err();
        assert!(err.to_string().contains("`b`"), "{err}");
    }

    #[test]
    fn missing_keys_are_named() {
        let (f, _) = parse_toml("type = \"eckart\"\nV_minus = 0\nV_plus = 2\na = 1\n").unwrap();
        let err = spec_from_fields(&f, &PhysicalConstants::default()).unwrap_err();
        assert!(err.to_string().contains("`V0`"), "{err}");
    }

    #[test]
    fn parse_errors_carry_the_line() {
        let err = parse_toml("type = \"delta\"\nalpha = = 1\n").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
    }

    #[test]
    fn hua_with_negative_q_is_accepted() {
        let (f, _) = parse_toml("type = \"hua\"\nV0 = 1.5\nq = -2\na = 1\n").unwrap();
        let spec = spec_from_fields(&f, &PhysicalConstants::default()).unwrap();
        assert!(spec.is_scattering());
    }

    #[test]
    fn every_type_round_trips() {
        let c = PhysicalConstants {
            hbar: 0.5,
            mass: 3.0,
            mode: Mode::Relativistic,
        };
        for kind in TYPES {
            let mut f = Fields::new();
            f.insert("type".into(), text(kind));
            for (i, key) in fields(kind).unwrap().iter().enumerate() {
                let v = if *key == "kind" {
                    text("cosh")
                } else {
                    Value::Num(0.25 + i as f64 * 0.75)
                };
                f.insert((*key).into(), v);
            }
            let spec = spec_from_fields(&f, &c).unwrap();
            let (sf, cf) = parse_toml(&to_toml(&spec, &c)).unwrap();
            assert_eq!(spec_from_fields(&sf, &c).unwrap(), spec, "{kind}");
            assert_eq!(constants_from_fields(&cf).unwrap(), c);
        }
    }
}
