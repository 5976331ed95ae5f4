//! Job configuration: flags, the line-based `key=value` config file, and
//! validation. A flag always wins over a file entry.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::str::FromStr;

use thiserror::Error;

use symcrys_core::rootdata::{DominantWeight, RootDatum, RootDatumError};
use symcrys_core::Rat;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("missing required option `{0}`")]
    Missing(&'static str),
    #[error("invalid value for `{key}`: {detail}")]
    Invalid { key: &'static str, detail: String },
    #[error("cannot read config file {path}: {detail}")]
    File { path: String, detail: String },
    #[error("config line {line} is not `key=value`: {text}")]
    BadLine { line: usize, text: String },
    #[error("unknown config key `{0}`")]
    UnknownKey(String),
    #[error(transparent)]
    RootDatum(#[from] RootDatumError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Binfty,
    CrystalB,
    GlobalBasis,
    VerifyUq,
    VerifyVtheta,
    VerifyHecke,
    DimFormula,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Binfty => "binfty",
            Command::CrystalB => "crystal-b",
            Command::GlobalBasis => "global-basis",
            Command::VerifyUq => "verify-uq",
            Command::VerifyVtheta => "verify-vtheta",
            Command::VerifyHecke => "verify-hecke",
            Command::DimFormula => "dim-formula",
        }
    }
}

impl FromStr for Command {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "binfty" => Ok(Command::Binfty),
            "crystal-b" => Ok(Command::CrystalB),
            "global-basis" => Ok(Command::GlobalBasis),
            "verify-uq" => Ok(Command::VerifyUq),
            "verify-vtheta" => Ok(Command::VerifyVtheta),
            "verify-hecke" => Ok(Command::VerifyHecke),
            "dim-formula" => Ok(Command::DimFormula),
            other => Err(format!(
                "unknown command `{other}` (expected binfty, crystal-b, global-basis, \
                 verify-uq, verify-vtheta, verify-hecke or dim-formula)"
            )),
        }
    }
}

/// Root-datum construction request.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KindSpec {
    OddWindow {
        radius: i64,
    },
    FinitePath {
        labels: Vec<i64>,
    },
    AffineCycle {
        ell: i64,
    },
    DoubledOrbit {
        ell: Option<i64>,
        window: i64,
        relation: Option<i64>,
    },
}

/// Dominant-weight request.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LambdaSpec {
    Zero,
    DoubledOrbitPreset,
    Explicit(Vec<(i64, i64)>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Dot,
    Json,
    Text,
}

/// Which carrier a graph/global-basis command runs on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CarrierChoice {
    Uq,
    Vtheta,
}

/// A validated job.
#[derive(Debug, Clone, PartialEq)]
pub struct JobConfig {
    pub command: Command,
    pub kind: KindSpec,
    pub lambda: LambdaSpec,
    pub depth: u32,
    pub carrier: CarrierChoice,
    pub formats: Vec<Format>,
    pub out: Option<PathBuf>,
    /// Hecke degree and exponent bound.
    pub hecke_n: usize,
    pub hecke_bound: i64,
    /// Optional numeric Hecke parameters; generic indeterminates otherwise.
    pub hecke_params: Option<(Rat, Rat)>,
    /// Dimension-formula node witness (application order) and raising word.
    pub witness: Vec<i64>,
    pub eseq: Vec<i64>,
    pub threads: usize,
}

impl JobConfig {
    /// Builds the root datum this job runs over.
    pub fn root_datum(&self) -> Result<RootDatum, ConfigError> {
        Ok(match &self.kind {
            KindSpec::OddWindow { radius } => RootDatum::odd_window(*radius)?,
            KindSpec::FinitePath { labels } => RootDatum::finite_a_path(labels)?,
            KindSpec::AffineCycle { ell } => RootDatum::affine_cycle(*ell)?,
            KindSpec::DoubledOrbit {
                ell,
                window,
                relation,
            } => RootDatum::doubled_orbit(*ell, *window, *relation)?,
        })
    }

    pub fn dominant_weight(&self, rd: &RootDatum) -> Result<DominantWeight, ConfigError> {
        Ok(match &self.lambda {
            LambdaSpec::Zero => DominantWeight::zero(),
            LambdaSpec::DoubledOrbitPreset => DominantWeight::doubled_orbit_preset(rd)?,
            LambdaSpec::Explicit(pairs) => DominantWeight::new(pairs.iter().copied(), rd)?,
        })
    }

    /// Key/value echo for document metadata (deterministic order).
    pub fn echo(&self) -> BTreeMap<String, String> {
        let mut m = BTreeMap::new();
        m.insert("command".into(), self.command.name().to_string());
        let kind = match &self.kind {
            KindSpec::OddWindow { radius } => format!("odd-window radius={radius}"),
            KindSpec::FinitePath { labels } => format!(
                "finite-path labels={}",
                labels
                    .iter()
                    .map(|l| l.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            ),
            KindSpec::AffineCycle { ell } => format!("affine-cycle ell={ell}"),
            KindSpec::DoubledOrbit {
                ell,
                window,
                relation,
            } => format!(
                "doubled-orbit ell={} window={} relation={}",
                ell.map(|l| l.to_string())
                    .unwrap_or_else(|| "infinite".into()),
                window,
                relation
                    .map(|e| format!("p0^2=p1^{e}"))
                    .unwrap_or_else(|| "generic".into()),
            ),
        };
        m.insert("kind".into(), kind);
        let lambda = match &self.lambda {
            LambdaSpec::Zero => "zero".to_string(),
            LambdaSpec::DoubledOrbitPreset => "doubled-orbit-preset".to_string(),
            LambdaSpec::Explicit(pairs) => pairs
                .iter()
                .map(|(i, v)| format!("{i}:{v}"))
                .collect::<Vec<_>>()
                .join(","),
        };
        m.insert("lambda".into(), lambda);
        m.insert("depth".into(), self.depth.to_string());
        if matches!(self.command, Command::VerifyHecke) {
            m.insert("n".into(), self.hecke_n.to_string());
            m.insert("exp-bound".into(), self.hecke_bound.to_string());
            if let Some((p0, p1)) = &self.hecke_params {
                m.insert("p0".into(), p0.to_string());
                m.insert("p1".into(), p1.to_string());
            } else {
                m.insert("params".into(), "generic".into());
            }
        }
        if matches!(self.command, Command::DimFormula) {
            m.insert("witness".into(), join_i64(&self.witness));
            m.insert("eseq".into(), join_i64(&self.eseq));
        }
        m
    }
}

fn join_i64(v: &[i64]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// Raw option bag: merged view of command line and config file.
#[derive(Debug, Clone, Default)]
pub struct RawOptions {
    pub entries: BTreeMap<String, String>,
}

pub const KNOWN_KEYS: &[&str] = &[
    "command",
    "kind",
    "radius",
    "labels",
    "ell",
    "window",
    "relation",
    "lambda",
    "depth",
    "carrier",
    "format",
    "out",
    "n",
    "exp-bound",
    "p0",
    "p1",
    "witness",
    "eseq",
    "threads",
];

impl RawOptions {
    pub fn from_file(path: &std::path::Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError::File {
            path: path.display().to_string(),
            detail: e.to_string(),
        })?;
        let mut entries = BTreeMap::new();
        for (k, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(ConfigError::BadLine {
                    line: k + 1,
                    text: line.to_string(),
                });
            };
            let key = key.trim().to_string();
            if !KNOWN_KEYS.contains(&key.as_str()) {
                return Err(ConfigError::UnknownKey(key));
            }
            entries.insert(key, value.trim().to_string());
        }
        Ok(RawOptions { entries })
    }

    /// Flag values override file values.
    pub fn overlay(mut self, flags: BTreeMap<String, String>) -> Self {
        for (k, v) in flags {
            self.entries.insert(k, v);
        }
        self
    }

    fn get(&self, key: &'static str) -> Option<&str> {
        self.entries.get(key).map(|s| s.as_str())
    }

    fn parse<T: FromStr>(&self, key: &'static str) -> Result<Option<T>, ConfigError>
    where
        T::Err: std::fmt::Display,
    {
        match self.get(key) {
            None => Ok(None),
            Some(s) => s.parse::<T>().map(Some).map_err(|e| ConfigError::Invalid {
                key,
                detail: e.to_string(),
            }),
        }
    }

    fn parse_i64_list(&self, key: &'static str) -> Result<Option<Vec<i64>>, ConfigError> {
        match self.get(key) {
            None => Ok(None),
            Some(s) if s.trim().is_empty() => Ok(Some(Vec::new())),
            Some(s) => {
                let mut out = Vec::new();
                for part in s.split(',') {
                    out.push(
                        part.trim()
                            .parse::<i64>()
                            .map_err(|e| ConfigError::Invalid {
                                key,
                                detail: format!("`{part}`: {e}"),
                            })?,
                    );
                }
                Ok(Some(out))
            }
        }
    }

    /// Validates and assembles the job.
    pub fn into_job(self) -> Result<JobConfig, ConfigError> {
        let command: Command = self
            .parse::<Command>("command")?
            .ok_or(ConfigError::Missing("command"))?;
        let kind = match self.get("kind").unwrap_or("odd-window") {
            "odd-window" => KindSpec::OddWindow {
                radius: self.parse::<i64>("radius")?.unwrap_or(3),
            },
            "finite-path" => KindSpec::FinitePath {
                labels: self
                    .parse_i64_list("labels")?
                    .ok_or(ConfigError::Missing("labels"))?,
            },
            "affine-cycle" => KindSpec::AffineCycle {
                ell: self
                    .parse::<i64>("ell")?
                    .ok_or(ConfigError::Missing("ell"))?,
            },
            "doubled-orbit" => KindSpec::DoubledOrbit {
                ell: self.parse::<i64>("ell")?,
                window: self.parse::<i64>("window")?.unwrap_or(2),
                relation: self.parse::<i64>("relation")?,
            },
            other => {
                return Err(ConfigError::Invalid {
                    key: "kind",
                    detail: format!(
                        "unknown kind `{other}` (expected odd-window, finite-path, \
                         affine-cycle or doubled-orbit)"
                    ),
                })
            }
        };
        let lambda = match self.get("lambda").unwrap_or("zero") {
            "zero" => LambdaSpec::Zero,
            "preset" | "doubled-orbit-preset" => LambdaSpec::DoubledOrbitPreset,
            explicit => {
                let mut pairs = Vec::new();
                for part in explicit.split(',') {
                    let Some((i, v)) = part.split_once(':') else {
                        return Err(ConfigError::Invalid {
                            key: "lambda",
                            detail: format!(
                                "`{part}` is not index:value (or use `zero` / `preset`)"
                            ),
                        });
                    };
                    let parse = |s: &str| -> Result<i64, ConfigError> {
                        s.trim().parse().map_err(|e| ConfigError::Invalid {
                            key: "lambda",
                            detail: format!("`{s}`: {e}"),
                        })
                    };
                    pairs.push((parse(i)?, parse(v)?));
                }
                LambdaSpec::Explicit(pairs)
            }
        };
        let formats = match self.get("format") {
            None => vec![Format::Json],
            Some(s) => {
                let mut out = Vec::new();
                for part in s.split(',') {
                    out.push(match part.trim() {
                        "dot" => Format::Dot,
                        "json" => Format::Json,
                        "text" => Format::Text,
                        other => {
                            return Err(ConfigError::Invalid {
                                key: "format",
                                detail: format!("unknown format `{other}`"),
                            })
                        }
                    });
                }
                out
            }
        };
        let carrier = match self.get("carrier") {
            None => {
                if command == Command::Binfty || command == Command::VerifyUq {
                    CarrierChoice::Uq
                } else {
                    CarrierChoice::Vtheta
                }
            }
            Some("uq") => CarrierChoice::Uq,
            Some("vtheta") => CarrierChoice::Vtheta,
            Some(other) => {
                return Err(ConfigError::Invalid {
                    key: "carrier",
                    detail: format!("unknown carrier `{other}` (expected uq or vtheta)"),
                })
            }
        };
        let hecke_params = match (self.get("p0"), self.get("p1")) {
            (None, None) => None,
            (p0, p1) => {
                let parse = |key: &'static str, s: Option<&str>| -> Result<Rat, ConfigError> {
                    let s = s.ok_or(ConfigError::Missing(key))?;
                    parse_rat(s).ok_or_else(|| ConfigError::Invalid {
                        key,
                        detail: format!("`{s}` is not an exact rational"),
                    })
                };
                Some((parse("p0", p0)?, parse("p1", p1)?))
            }
        };
        let depth = self.parse::<u32>("depth")?.unwrap_or(2);
        Ok(JobConfig {
            command,
            kind,
            lambda,
            depth,
            carrier,
            formats,
            out: self.get("out").map(PathBuf::from),
            hecke_n: self.parse::<usize>("n")?.unwrap_or(2),
            hecke_bound: self.parse::<i64>("exp-bound")?.unwrap_or(2),
            hecke_params,
            witness: self.parse_i64_list("witness")?.unwrap_or_default(),
            eseq: self.parse_i64_list("eseq")?.unwrap_or_default(),
            threads: self.parse::<usize>("threads")?.unwrap_or(0),
        })
    }
}

/// Exact rational literal `p` or `p/q`.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        None => s.parse::<i64>().ok().map(|n| Rat::from_integer(n.into())),
        Some((num, den)) => {
            let n: i64 = num.trim().parse().ok()?;
            let d: i64 = den.trim().parse().ok()?;
            if d == 0 {
                return None;
            }
            Some(Rat::new(n.into(), d.into()))
        }
    }
}
