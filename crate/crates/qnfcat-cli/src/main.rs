use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qnfcat::potentials::PhysicalConstants;
use qnfcat::qnf::{FitModel, SignChoice};
use qnfcat_cli::commands::{regime_from_name, Command, Format, QnfMethod, RunConfig};
use qnfcat_cli::error::CliError;
use qnfcat_cli::grid::{parse_grid, parse_range, parse_region};
use qnfcat_cli::schema::{constants_from_fields, parse_toml, spec_from_fields, Fields, Value};

#[derive(Parser)]
#[command(name = "qnfcat", version, about = "Scattering data and quasi-normal frequencies of 1D potentials")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Tabulate V(x).
    Eval {
        #[command(flatten)]
        common: Common,
        /// `start:stop:count` or a comma list.
        #[arg(long, allow_hyphen_values = true)]
        x: Option<String>,
    },
    /// Tabulate T(E) and the complex amplitude.
    Transmission {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        energy: Option<String>,
    },
    /// Quasi-normal frequencies.
    Qnf {
        #[command(flatten)]
        common: Common,
        /// Branch range `lo..hi` (inclusive) or a single index.
        #[arg(long, allow_hyphen_values = true)]
        n: Option<String>,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
        /// `re_min,re_max,im_min,im_max` in the mean wavenumber. Without it,
        /// `auto` searches `[-10, 10] x [0.02, 4]` in units of the inverse length.
        #[arg(long, allow_hyphen_values = true)]
        region: Option<String>,
        /// Perturbative regime name, e.g. `small_separation`.
        #[arg(long)]
        regime: Option<String>,
        /// Drop trivial zeros and cancelled formal roots.
        #[arg(long)]
        physical: bool,
    },
    /// Transmission resonances.
    Resonances {
        #[command(flatten)]
        common: Common,
        #[arg(long = "n-max", default_value_t = 10)]
        n_max: u32,
    },
    /// Cross-check closed forms against the numerical oracle; exits 2 on failure.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        energy: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        region: Option<String>,
    },
    /// Offset-plus-gap fit of a QNF tower.
    Fit {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        n: Option<String>,
        #[arg(long, value_enum)]
        sign: Option<SignArg>,
        #[arg(long, value_enum, default_value_t = ModelArg::Linear)]
        model: ModelArg,
    },
    /// Canonical forms of the Eckart-family variants.
    Catalog {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Auto,
    ClosedForm,
    Transcendental,
    Perturbative,
    Asymptotic,
    Oracle,
}

#[derive(Clone, Copy, ValueEnum)]
enum SignArg {
    Plus,
    Minus,
    None,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    Linear,
    LinearPlusLog,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Args)]
struct Common {
    /// TOML file with the spec and an optional `[constants]` table; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
    /// Write here instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
    #[command(flatten)]
    spec: SpecArgs,
}

#[derive(Args)]
#[command(next_help_heading = "Potential")]
struct SpecArgs {
    #[arg(long = "type")]
    kind: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    alpha: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    k0: Option<f64>,
    #[arg(long = "alpha_plus", alias = "alpha-plus", allow_negative_numbers = true)]
    alpha_plus: Option<f64>,
    #[arg(long = "alpha_minus", alias = "alpha-minus", allow_negative_numbers = true)]
    alpha_minus: Option<f64>,
    #[arg(long = "k_plus", alias = "k-plus", allow_negative_numbers = true)]
    k_plus: Option<f64>,
    #[arg(long = "k_minus", alias = "k-minus", allow_negative_numbers = true)]
    k_minus: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    a: Option<f64>,
    #[arg(long = "V0", allow_negative_numbers = true)]
    v0: Option<f64>,
    #[arg(long = "V1", allow_negative_numbers = true)]
    v1: Option<f64>,
    #[arg(long = "V2", allow_negative_numbers = true)]
    v2: Option<f64>,
    #[arg(long = "V3", allow_negative_numbers = true)]
    v3: Option<f64>,
    #[arg(long = "V_minus", allow_negative_numbers = true)]
    v_minus: Option<f64>,
    #[arg(long = "V_plus", allow_negative_numbers = true)]
    v_plus: Option<f64>,
    #[arg(long = "A0", allow_negative_numbers = true)]
    a0: Option<f64>,
    #[arg(long = "E1", allow_negative_numbers = true)]
    e1: Option<f64>,
    #[arg(long = "F1", allow_negative_numbers = true)]
    f1: Option<f64>,
    #[arg(long = "E2", allow_negative_numbers = true)]
    e2: Option<f64>,
    #[arg(long = "F2", allow_negative_numbers = true)]
    f2: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    overall: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    linear: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    x0: Option<f64>,
    #[arg(long = "A", allow_negative_numbers = true)]
    a_coef: Option<f64>,
    #[arg(long = "B", allow_negative_numbers = true)]
    b_coef: Option<f64>,
    #[arg(long = "C", allow_negative_numbers = true)]
    c_coef: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    b: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    d: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    q: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    mu: Option<f64>,
    #[arg(long = "L", allow_negative_numbers = true)]
    l: Option<f64>,
    /// Tietz variant: sinh, cosh or exp.
    #[arg(long = "kind")]
    tietz_kind: Option<String>,
    #[arg(long, help_heading = "Constants")]
    hbar: Option<f64>,
    #[arg(long, help_heading = "Constants")]
    mass: Option<f64>,
    /// nonrelativistic or relativistic.
    #[arg(long, help_heading = "Constants")]
    mode: Option<String>,
}

const ALIASES: [(&str, &str); 3] = [("alpha", "k0"), ("alpha_plus", "k_plus"), ("alpha_minus", "k_minus")];

impl SpecArgs {
    fn spec_fields(&self) -> Fields {
        let nums = [
            ("alpha", self.alpha),
            ("k0", self.k0),
            ("alpha_plus", self.alpha_plus),
            ("alpha_minus", self.alpha_minus),
            ("k_plus", self.k_plus),
            ("k_minus", self.k_minus),
            ("a", self.a),
            ("V0", self.v0),
            ("V1", self.v1),
            ("V2", self.v2),
            ("V3", self.v3),
            ("V_minus", self.v_minus),
            ("V_plus", self.v_plus),
            ("A0", self.a0),
            ("E1", self.e1),
            ("F1", self.f1),
            ("E2", self.e2),
            ("F2", self.f2),
            ("overall", self.overall),
            ("linear", self.linear),
            ("x0", self.x0),
            ("A", self.a_coef),
            ("B", self.b_coef),
            ("C", self.c_coef),
            ("b", self.b),
            ("d", self.d),
            ("q", self.q),
            ("mu", self.mu),
            ("L", self.l),
        ];
        let mut f: Fields = nums
            .into_iter()
            .filter_map(|(k, v)| v.map(|v| (k.to_string(), Value::Num(v))))
            .collect();
        if let Some(t) = &self.kind {
            f.insert("type".into(), Value::Text(t.clone()));
        }
        if let Some(k) = &self.tietz_kind {
            f.insert("kind".into(), Value::Text(k.clone()));
        }
        f
    }

    fn constant_fields(&self) -> Fields {
        let mut f = Fields::new();
        if let Some(h) = self.hbar {
            f.insert("hbar".into(), Value::Num(h));
        }
        if let Some(m) = self.mass {
            f.insert("mass".into(), Value::Num(m));
        }
        if let Some(m) = &self.mode {
            f.insert("mode".into(), Value::Text(m.clone()));
        }
        f
    }
}

/// Config-file fields overlaid with flags. A flag that sets one key of an
/// alias pair displaces the other key from the file.
fn merge(mut base: Fields, flags: Fields) -> Fields {
    for (key, value) in flags {
        for (x, y) in ALIASES {
            if key == x {
                base.remove(y);
            } else if key == y {
                base.remove(x);
            }
        }
        base.insert(key, value);
    }
    base
}

fn resolve(common: &Common, command: Command, spec_optional: bool) -> Result<RunConfig, CliError> {
    let (file_spec, file_constants) = match &common.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
                path: path.display().to_string(),
                source,
            })?;
            parse_toml(&text).map_err(|e| CliError::Schema(format!("{}: {e}", path.display())))?
        }
        None => (Fields::new(), Fields::new()),
    };
    let constants: PhysicalConstants =
        constants_from_fields(&merge(file_constants, common.spec.constant_fields()))?;
    let fields = merge(file_spec, common.spec.spec_fields());
    let spec = if spec_optional && fields.is_empty() {
        None
    } else {
        Some(spec_from_fields(&fields, &constants)?)
    };
    Ok(RunConfig {
        spec,
        constants,
        command,
        format: match common.format {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        },
        output: common.output.clone(),
    })
}

fn grid(s: &Option<String>, what: &str) -> Result<Option<Vec<f64>>, CliError> {
    s.as_deref().map(|s| parse_grid(s, what)).transpose()
}

fn region(s: &Option<String>) -> Result<Option<qnfcat::oracle::SearchRegion>, CliError> {
    s.as_deref().map(parse_region).transpose()
}

fn range(s: &Option<String>) -> Result<Option<std::ops::RangeInclusive<i64>>, CliError> {
    s.as_deref().map(parse_range).transpose()
}

fn build(cmd: &Cmd) -> Result<RunConfig, CliError> {
    match cmd {
        Cmd::Eval { common, x } => resolve(common, Command::Eval { x: grid(x, "x")? }, false),
        Cmd::Transmission { common, energy } => resolve(
            common,
            Command::Transmission {
                energy: grid(energy, "energy")?,
            },
            false,
        ),
        Cmd::Qnf {
            common,
            n,
            method,
            region: reg,
            regime,
            physical,
        } => {
            let regime = regime
                .as_deref()
                .map(|r| regime_from_name(r).ok_or_else(|| CliError::Argument(format!("unknown regime `{r}`"))))
                .transpose()?;
            let method = match method {
                MethodArg::Auto => QnfMethod::Auto,
                MethodArg::ClosedForm => QnfMethod::ClosedForm,
                MethodArg::Transcendental => QnfMethod::Transcendental,
                MethodArg::Perturbative => QnfMethod::Perturbative,
                MethodArg::Asymptotic => QnfMethod::Asymptotic,
                MethodArg::Oracle => QnfMethod::Oracle,
            };
            resolve(
                common,
                Command::Qnf {
                    n: range(n)?,
                    method,
                    region: region(reg)?,
                    regime,
                    physical_only: *physical,
                },
                false,
            )
        }
        Cmd::Resonances { common, n_max } => resolve(common, Command::Resonances { n_max: *n_max }, false),
        Cmd::Verify {
            common,
            energy,
            region: reg,
        } => resolve(
            common,
            Command::Verify {
                energy: grid(energy, "energy")?,
                region: region(reg)?,
            },
            false,
        ),
        Cmd::Fit { common, n, sign, model } => resolve(
            common,
            Command::Fit {
                n: range(n)?,
                sign: sign.map(|s| match s {
                    SignArg::Plus => SignChoice::Plus,
                    SignArg::Minus => SignChoice::Minus,
                    SignArg::None => SignChoice::Unsigned,
                }),
                model: match model {
                    ModelArg::Linear => FitModel::Linear,
                    ModelArg::LinearPlusLog => FitModel::LinearPlusLog,
                },
            },
            false,
        ),
        Cmd::Catalog { common } => resolve(common, Command::Catalog, true),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let result = qnfcat_cli::configure_threads()
        .and_then(|()| build(&cli.command))
        .and_then(|config| qnfcat_cli::run(&config));
    match result {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            let mut source = std::error::Error::source(&e);
            while let Some(s) = source {
                eprintln!("  caused by: {s}");
                source = s.source();
            }
            ExitCode::from(1)
        }
    }
}
