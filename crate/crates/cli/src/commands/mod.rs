//! One module per subcommand. Each defines its clap arguments (every field
//! optional so unset flags fall through to the config file), a parameter
//! struct with defaults, and a runner producing a [`Report`].

use std::path::Path;
use std::time::Instant;

use lpcoh_core::group::{GeneratingSet, GroupElement, GroupSpec};
use serde::de::{DeserializeOwned, Deserializer};
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::config;
use crate::error::CliError;
use crate::report::Report;

pub mod algebra;
pub mod amenability;
pub mod cohomology;
pub mod density;
pub mod dirichlet;
pub mod group;

pub type Result<T, E = CliError> = std::result::Result<T, E>;

pub struct Context {
    file: Map<String, Value>,
    command: Option<String>,
    pub seed: u64,
    started: Instant,
}

impl Context {
    /// `seed` and `command` in the file are metadata; everything else is a
    /// subcommand parameter.
    pub fn new(mut file: Map<String, Value>, seed: Option<u64>) -> Result<Self> {
        let file_seed = match file.remove("seed") {
            None => None,
            Some(v) => Some(v.as_u64().ok_or_else(|| {
                CliError::Config(format!("seed must be a non-negative integer, got {v}"))
            })?),
        };
        let command = match file.remove("command") {
            None => None,
            Some(Value::String(s)) => Some(s),
            Some(v) => {
                return Err(CliError::Config(format!(
                    "command must be a string, got {v}"
                )))
            }
        };
        Ok(Context {
            file,
            command,
            seed: seed.or(file_seed).unwrap_or(0),
            started: Instant::now(),
        })
    }

    pub fn params<P, A>(&self, name: &str, flags: &A) -> Result<P>
    where
        P: DeserializeOwned + Serialize + Default,
        A: Serialize,
    {
        if let Some(c) = &self.command {
            if c != name {
                return Err(CliError::Config(format!(
                    "config file is for {c:?}, not {name:?}"
                )));
            }
        }
        config::resolve(&self.file, flags)
    }

    pub fn report(&self, name: &str, params: &impl Serialize) -> Report {
        Report::new(name, self.seed, params, self.started)
    }
}

/// Accepts a single value or a list.
pub fn one_or_many<'de, D, T>(d: D) -> std::result::Result<Vec<T>, D::Error>
where
    D: Deserializer<'de>,
    T: Deserialize<'de>,
{
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Either<T> {
        One(T),
        Many(Vec<T>),
    }
    Ok(match Either::deserialize(d)? {
        Either::One(x) => vec![x],
        Either::Many(v) => v,
    })
}

pub fn sorted<T: PartialOrd + Clone>(xs: &[T]) -> Vec<T> {
    let mut v = xs.to_vec();
    v.sort_by(|a, b| a.partial_cmp(b).expect("finite parameters"));
    v.dedup_by(|a, b| a == b);
    v
}

pub fn parse_group(s: &str) -> Result<GroupSpec> {
    Ok(s.parse()?)
}

pub fn parse_gens(group: &GroupSpec, gens: Option<&[String]>) -> Result<GeneratingSet> {
    Ok(match gens {
        None => GeneratingSet::standard(group),
        Some(list) => GeneratingSet::custom(
            group,
            list.iter()
                .map(|s| group.parse_element(s))
                .collect::<lpcoh_core::Result<_>>()?,
        )?,
    })
}

/// `g`, or the first standard generator.
pub fn parse_g(group: &GroupSpec, g: Option<&str>) -> Result<GroupElement> {
    match g {
        Some(s) => Ok(group.parse_element(s)?),
        None => GeneratingSet::standard(group)
            .elements()
            .first()
            .cloned()
            .ok_or_else(|| CliError::Config(format!("{group} has no generators"))),
    }
}

pub fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| {
        CliError::Config(format!(
            "{}: line {} column {}: {e}",
            path.display(),
            e.line(),
            e.column()
        ))
    })
}

pub fn check_p(p: f64) -> Result<()> {
    if p.is_finite() && p > 1.0 {
        Ok(())
    } else {
        Err(CliError::Config(format!(
            "p must be a finite number greater than 1, got {p}"
        )))
    }
}

/// `n^{(1-p)/p}`.
pub fn power_law(n: f64, p: f64) -> f64 {
    n.powf((1.0 - p) / p)
}
