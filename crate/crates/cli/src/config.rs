//! Parameter resolution: command-line flags override the config file, which
//! overrides built-in defaults.

use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{Map, Value};

use crate::error::CliError;

/// Reads a JSON or TOML (by extension) config file into a JSON object.
pub fn load(path: Option<&Path>) -> Result<Map<String, Value>, CliError> {
    let Some(path) = path else {
        return Ok(Map::new());
    };
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let value: Value = if path.extension().is_some_and(|e| e == "toml") {
        let table: toml::Table = toml::from_str(&text)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        serde_json::to_value(table).map_err(|e| CliError::Config(e.to_string()))?
    } else {
        serde_json::from_str(&text).map_err(|e| {
            CliError::Config(format!(
                "{}: line {} column {}: {e}",
                path.display(),
                e.line(),
                e.column()
            ))
        })?
    };
    match value {
        Value::Object(map) => Ok(map),
        _ => Err(CliError::Config(format!(
            "{}: expected a table of parameters",
            path.display()
        ))),
    }
}

/// Merges defaults, file values and flags (unset flags are skipped during
/// serialisation) and deserialises the result, rejecting unknown keys.
pub fn resolve<P, A>(file: &Map<String, Value>, flags: &A) -> Result<P, CliError>
where
    P: DeserializeOwned + Serialize + Default,
    A: Serialize,
{
    let mut merged = match serde_json::to_value(P::default()) {
        Ok(Value::Object(m)) => m,
        _ => unreachable!("parameter structs serialise to objects"),
    };
    for (k, v) in file {
        merged.insert(k.clone(), v.clone());
    }
    if let Ok(Value::Object(m)) = serde_json::to_value(flags) {
        for (k, v) in m {
            merged.insert(k, v);
        }
    }
    serde_json::from_value(Value::Object(merged))
        .map_err(|e| CliError::Config(format!("parameters: {e}")))
}
