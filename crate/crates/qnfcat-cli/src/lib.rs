//! Library side of the `qnfcat` binary: schema, commands and output.

pub mod commands;
pub mod error;
pub mod grid;
pub mod schema;
pub mod table;

use std::io::Write;
use std::path::Path;

use serde_json::{json, Map, Value as Json};

use commands::{Format, Outcome, RunConfig};
use error::CliError;
use schema::{mode_name, spec_to_fields, Value};

fn envelope(config: &RunConfig) -> Map<String, Json> {
    let mut m = Map::new();
    m.insert("tool".into(), json!("qnfcat"));
    m.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    m.insert("command".into(), json!(config.command.name()));
    let spec = config.spec.as_ref().map_or(Json::Null, |s| {
        let mut obj = Map::new();
        for (k, v) in spec_to_fields(s) {
            let v = match v {
                Value::Num(x) => table::Cell::Float(x).to_json(),
                Value::Text(t) => json!(t),
            };
            obj.insert(k, v);
        }
        Json::Object(obj)
    });
    m.insert("spec".into(), spec);
    let c = &config.constants;
    m.insert(
        "constants".into(),
        json!({
            "hbar": table::Cell::Float(c.hbar).to_json(),
            "mass": table::Cell::Float(c.mass).to_json(),
            "mode": mode_name(c.mode),
        }),
    );
    m
}

/// Encodes the outcome in the requested format.
pub fn render(config: &RunConfig, outcome: &Outcome) -> Result<String, CliError> {
    match config.format {
        Format::Csv => outcome.table.to_csv(),
        Format::Json => Ok(outcome.table.to_json(envelope(config))),
    }
}

/// Writes via a sibling temporary file and a rename, so readers never see a
/// partial file.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let io = |source| CliError::Io {
        path: path.display().to_string(),
        source,
    };
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let name = path.file_name().ok_or_else(|| {
        CliError::Argument(format!("output path `{}` has no file name", path.display()))
    })?;
    let tmp = dir.join(format!(".{}.{}.tmp", name.to_string_lossy(), std::process::id()));
    let result = std::fs::File::create(&tmp)
        .and_then(|mut f| {
            f.write_all(contents.as_bytes())?;
            f.sync_all()
        })
        .and_then(|()| std::fs::rename(&tmp, path));
    if result.is_err() {
        let _ = std::fs::remove_file(&tmp);
    }
    result.map_err(io)
}

/// Sizes the global thread pool from `QNFCAT_THREADS` when set.
pub fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("QNFCAT_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Argument(format!("QNFCAT_THREADS must be a positive integer, got `{raw}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::numeric("thread pool", e))
}

/// Runs the command and delivers its output. Returns whether `verify`
/// reported a failed check.
pub fn run(config: &RunConfig) -> Result<bool, CliError> {
    let outcome = commands::execute(config)?;
    let text = render(config, &outcome)?;
    match &config.output {
        Some(path) => write_atomic(path, &text)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|()| out.flush())
                .map_err(|source| CliError::Io {
                    path: "<stdout>".into(),
                    source,
                })?;
        }
    }
    Ok(outcome.failed)
}
