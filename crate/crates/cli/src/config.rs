//! `key = value` run configuration, merged under command-line flags.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use horoflow::models::{ModelDescriptor, ModelId};
use horoflow::FlowKind;

use crate::CliError;

pub const KNOWN_KEYS: [&str; 12] = [
    "model", "A", "seed", "flow", "dt", "d_alpha", "d_beta", "steps", "lift", "start", "fiber", "bins",
];

/// Values gathered from a config file and flags, before validation.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RawConfig {
    values: BTreeMap<String, String>,
}

impl RawConfig {
    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut values = BTreeMap::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("config line {}: expected `key = value`", n + 1)))?;
            let key = key.trim();
            if !KNOWN_KEYS.contains(&key) {
                return Err(CliError::Usage(format!("config line {}: unknown key `{key}`", n + 1)));
            }
            values.insert(key.to_string(), value.trim().to_string());
        }
        Ok(Self { values })
    }

    /// Flag values win over file values.
    pub fn set(&mut self, key: &str, value: Option<String>) {
        debug_assert!(KNOWN_KEYS.contains(&key));
        if let Some(v) = value {
            self.values.insert(key.to_string(), v);
        }
    }

    fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    fn number<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>, CliError> {
        self.get(key)
            .map(|v| {
                v.parse::<T>()
                    .map_err(|_| CliError::Usage(format!("`{key}`: cannot parse `{v}`")))
            })
            .transpose()
    }

    fn positive(&self, key: &str) -> Result<Option<f64>, CliError> {
        match self.number::<f64>(key)? {
            Some(x) if !(x.is_finite() && x > 0.0) => Err(CliError::Usage(format!("`{key}` must be positive and finite"))),
            other => Ok(other),
        }
    }

    fn nonzero(&self, key: &str) -> Result<Option<f64>, CliError> {
        match self.number::<f64>(key)? {
            Some(x) if !(x.is_finite() && x != 0.0) => Err(CliError::Usage(format!("`{key}` must be finite and nonzero"))),
            other => Ok(other),
        }
    }

    pub fn validate(&self) -> Result<RunConfig, CliError> {
        let id: ModelId = self
            .get("model")
            .ok_or_else(|| CliError::Usage("missing `model`".into()))?
            .parse()
            .map_err(|e: horoflow::ModelError| CliError::Usage(e.to_string()))?;
        let matrix = self.get("A").map(parse_matrix).transpose()?;
        if matrix.is_some() && id != ModelId::T3A {
            return Err(CliError::Usage("`A` only applies to model t3a".into()));
        }
        let seed = self.number::<u64>("seed")?.unwrap_or(0);
        let steps = self.number::<u64>("steps")?.unwrap_or(1000);

        let flow_name = self.get("flow").unwrap_or(if id == ModelId::T3A { "sol3u" } else { "u" });
        let flow = match flow_name {
            "u" => FlowKind::HorocycleU {
                dt: self.nonzero("dt")?.unwrap_or(0.01),
            },
            "d" => FlowKind::GeodesicD {
                dt: self.nonzero("dt")?.unwrap_or(0.01),
            },
            "b" => FlowKind::BorelB {
                d_alpha: self.positive("d_alpha")?.unwrap_or(1.01),
                d_beta: self.number::<f64>("d_beta")?.unwrap_or(0.01),
            },
            "sol3u" => FlowKind::Sol3U {
                d_beta: self.nonzero("d_beta")?.unwrap_or(0.037),
            },
            other => return Err(CliError::Usage(format!("unknown flow `{other}` (u, d, b, sol3u)"))),
        };
        flow.validate().map_err(|e| CliError::Usage(e.to_string()))?;

        let lift = match self.get("lift") {
            None if id == ModelId::T3A => LiftChoice::Sol,
            None | Some("frame") => LiftChoice::Frame,
            Some("sol") if id == ModelId::T3A => LiftChoice::Sol,
            Some(other) => return Err(CliError::Usage(format!("lift `{other}` is not available for {id}"))),
        };
        let start = self.get("start").map(|s| parse_numbers(s, "start")).transpose()?;
        let fiber = self.get("fiber").map(|s| parse_numbers(s, "fiber")).transpose()?;
        let bins = self
            .get("bins")
            .map(|s| {
                s.split([',', ' '])
                    .filter(|t| !t.is_empty())
                    .map(|t| match t.parse::<usize>() {
                        Ok(n) if n > 0 => Ok(n),
                        _ => Err(CliError::Usage(format!("`bins`: bad cell count `{t}`"))),
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .transpose()?;
        Ok(RunConfig {
            model: ModelDescriptor { id, matrix, seed },
            flow,
            steps,
            seed,
            lift,
            start,
            fiber,
            bins,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LiftChoice {
    Sol,
    Frame,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub model: ModelDescriptor,
    pub flow: FlowKind,
    pub steps: u64,
    pub seed: u64,
    pub lift: LiftChoice,
    pub start: Option<Vec<f64>>,
    pub fiber: Option<Vec<f64>>,
    pub bins: Option<Vec<usize>>,
}

pub fn parse_numbers(s: &str, what: &str) -> Result<Vec<f64>, CliError> {
    s.split([',', ' '])
        .filter(|t| !t.is_empty())
        .map(|t| match t.parse::<f64>() {
            Ok(x) if x.is_finite() => Ok(x),
            _ => Err(CliError::Usage(format!("`{what}`: bad number `{t}`"))),
        })
        .collect()
}

/// `"a b c d"` as the integer matrix `(a, b; c, d)`.
pub fn parse_matrix(s: &str) -> Result<[[i64; 2]; 2], CliError> {
    let v: Vec<i64> = s
        .split([',', ' '])
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<i64>().map_err(|_| CliError::Usage(format!("`A`: bad integer `{t}`"))))
        .collect::<Result<_, _>>()?;
    match v.as_slice() {
        [a, b, c, d] => Ok([[*a, *b], [*c, *d]]),
        _ => Err(CliError::Usage(format!("`A` needs 4 integers, got {}", v.len()))),
    }
}

/// Output path, `None` meaning standard output.
pub fn output_target(path: &Option<PathBuf>) -> Option<&Path> {
    path.as_deref().filter(|p| p.as_os_str() != "-")
}
